#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mfdbsde::app {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

struct Moments {
  double mean = 0.0;
  double sd = 0.0;
};

template <class Get>
Moments moments(std::size_t n, Get get) {
  Moments m;
  for (std::size_t p = 0; p < n; ++p) m.mean += get(p);
  m.mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t p = 0; p < n; ++p) ss += (get(p) - m.mean) * (get(p) - m.mean);
  m.sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  return m;
}

}  // namespace

void write_solution_csv(std::ostream& os, const TripleProcess& sol, const TimeGrid& grid) {
  const std::size_t n = sol.n_particles();
  const std::size_t N = sol.n_steps();
  const std::size_t m = sol.n_atoms();
  os << "t,y_mean,y_std,z_mean,z_std";
  for (std::size_t j = 0; j < m; ++j) os << ",k" << (j + 1) << "_mean,k" << (j + 1) << "_std";
  os << '\n';
  for (std::size_t i = 0; i <= N; ++i) {
    const std::size_t step = (i == N && N > 0) ? N - 1 : i;
    const Moments y = moments(n, [&](std::size_t p) { return sol.y(p, i); });
    const Moments z = moments(n, [&](std::size_t p) { return sol.z(p, step); });
    os << fmt17(grid.node(i)) << ',' << fmt17(y.mean) << ',' << fmt17(y.sd) << ','
       << fmt17(z.mean) << ',' << fmt17(z.sd);
    for (std::size_t j = 0; j < m; ++j) {
      const Moments k = moments(n, [&](std::size_t p) { return sol.k(p, step, j); });
      os << ',' << fmt17(k.mean) << ',' << fmt17(k.sd);
    }
    os << '\n';
  }
}

void write_sweep_csv(std::ostream& os, const SweepResult& sweep) {
  os << "delta,converged,iters,observed_ratio,theoretical_factor\n";
  for (const SweepRow& r : sweep.rows) {
    os << fmt17(r.delta) << ',' << (r.converged ? "true" : "false") << ',' << r.iters << ','
       << fmt17(r.observed_ratio) << ',' << fmt17(r.theoretical_factor) << '\n';
  }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace mfdbsde::app
