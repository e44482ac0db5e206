#include "mfdbsde/solver.hpp"

#include <cmath>
#include <string>

#include "mfdbsde/levy_sim.hpp"
#include "mfdbsde/parallel.hpp"

namespace mfdbsde {

namespace {

double implicit_weight(DriverRule r) {
  switch (r) {
    case DriverRule::left: return 1.0;
    case DriverRule::right: return 0.0;
    case DriverRule::trapezoid: return 0.5;
  }
  return 0.5;
}

}  // namespace

EmpiricalMeasure empirical_law(const TripleProcess& proc, std::size_t node) {
  const std::size_t n = proc.n_particles();
  const std::size_t N = proc.n_steps();
  const std::size_t m = proc.n_atoms();
  if (node > N) throw std::out_of_range("empirical law: node out of range");
  const std::size_t step = (node == N && N > 0) ? N - 1 : node;
  std::vector<double> pts(2 * n), marks(n * m);
  for (std::size_t p = 0; p < n; ++p) {
    pts[2 * p] = proc.y(p, node);
    pts[2 * p + 1] = N > 0 ? proc.z(p, step) : 0.0;
    for (std::size_t j = 0; j < m; ++j) marks[p * m + j] = N > 0 ? proc.k(p, step, j) : 0.0;
  }
  return EmpiricalMeasure(2, std::move(pts), {}, m, std::move(marks));
}

BackwardSolver::BackwardSolver(ProblemSpec problem, const PathEnsemble& ensemble,
                               RegressionConfig reg)
    : problem_(std::move(problem)),
      ens_(ensemble),
      reg_(reg),
      gen_(problem_.generator, problem_.delay, problem_.levy, problem_.grid.dt()),
      lags_(problem_.grid.steps_for(problem_.delay.delta())) {
  problem_.validate();
  if (!(ens_.grid() == problem_.grid)) {
    throw std::invalid_argument("solver: ensemble grid differs from the problem grid");
  }
  if (ens_.n_atoms() != problem_.levy.size()) {
    throw std::invalid_argument("solver: ensemble atom count differs from the Levy model");
  }
  if (!(reg_.ridge >= 0.0)) throw ConfigError("regression: ridge must be >= 0");

  const std::size_t n = ens_.n_particles();
  const std::size_t N = ens_.n_steps();
  const std::size_t m = ens_.n_atoms();
  const std::size_t q = PolynomialBasis::full_size(1 + m, reg_.degree);
  const std::size_t needed = reg_.min_particles_per_coeff * q * (1 + m);
  if (n < needed || n < 2) {
    throw ConfigError("regression underdetermined: " + std::to_string(n) +
                      " particles for " + std::to_string(q * (1 + m)) +
                      " coefficients (need at least " + std::to_string(needed) + ")");
  }

  b_.assign(n * (N + 1), 0.0);
  counts_.assign(n * (N + 1) * m, 0.0);
  xi_.assign(n, 0.0);
  parallel_for(n, [&](std::size_t p) {
    double b = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      b += ens_.dB(p, i);
      b_[p * (N + 1) + i + 1] = b;
      for (std::size_t j = 0; j < m; ++j) {
        counts_[(p * (N + 1) + i + 1) * m + j] =
            counts_[(p * (N + 1) + i) * m + j] + ens_.jumps(p, i, j);
      }
    }
    const std::span<const double> cT(&counts_[(p * (N + 1) + N) * m], m);
    xi_[p] = problem_.terminal(b, cT, problem_.levy, problem_.grid.horizon());
  });

  steps_.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const Eigen::MatrixXd s = state(i);
    Step& st = steps_[i];
    st.basis = PolynomialBasis(s, reg_.degree);
    const Eigen::MatrixXd X = st.basis.design(s);
    st.value = GramSolver(X, reg_.ridge);
    st.increments = GramSolver(increment_design(X, i), reg_.ridge);
  }
}

Eigen::MatrixXd BackwardSolver::state(std::size_t node) const {
  const std::size_t n = ens_.n_particles();
  const std::size_t N = ens_.n_steps();
  const std::size_t m = ens_.n_atoms();
  Eigen::MatrixXd s(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(1 + m));
  for (std::size_t p = 0; p < n; ++p) {
    const auto r = static_cast<Eigen::Index>(p);
    s(r, 0) = b_[p * (N + 1) + node];
    for (std::size_t j = 0; j < m; ++j) {
      s(r, static_cast<Eigen::Index>(1 + j)) = counts_[(p * (N + 1) + node) * m + j];
    }
  }
  return s;
}

// [X * dB, X * dN~_1, ..., X * dN~_m], one block per martingale increment.
Eigen::MatrixXd BackwardSolver::increment_design(const Eigen::MatrixXd& X,
                                                 std::size_t step) const {
  const std::size_t n = ens_.n_particles();
  const std::size_t m = ens_.n_atoms();
  const Eigen::Index q = X.cols();
  const double dt = problem_.grid.dt();
  Eigen::MatrixXd W(X.rows(), q * static_cast<Eigen::Index>(1 + m));
  parallel_for(n, [&](std::size_t p) {
    const auto r = static_cast<Eigen::Index>(p);
    const double db = ens_.dB(p, step);
    for (Eigen::Index c = 0; c < q; ++c) W(r, c) = X(r, c) * db;
    for (std::size_t j = 0; j < m; ++j) {
      const double dn =
          compensated_increment(ens_.jumps(p, step, j), problem_.levy.atom(j).intensity, dt);
      const Eigen::Index off = q * static_cast<Eigen::Index>(1 + j);
      for (Eigen::Index c = 0; c < q; ++c) W(r, off + c) = X(r, c) * dn;
    }
  });
  return W;
}

TripleProcess BackwardSolver::zero_triple() const {
  return TripleProcess(ens_.n_particles(), ens_.n_steps(), ens_.n_atoms());
}

std::vector<double> BackwardSolver::driver_values(const TripleProcess& frozen) const {
  const std::size_t n = ens_.n_particles();
  const std::size_t N = ens_.n_steps();
  std::vector<double> F((N + 1) * n, 0.0);
  if (!generator_depends_on_solution(problem_.generator)) return F;
  if (frozen.n_particles() != n || frozen.n_steps() != N || frozen.n_atoms() != ens_.n_atoms()) {
    throw std::invalid_argument("solver: frozen iterate shape differs from the ensemble");
  }
  const double dt = problem_.grid.dt();
  const EmpiricalMeasure no_law = dirac_law(ens_.n_atoms());
  for (std::size_t i = 0; i <= N; ++i) {
    EmpiricalMeasure law;
    if (gen_.needs_law()) law = empirical_law(frozen, i);
    const auto prepared = gen_.prepare(gen_.needs_law() ? law : no_law);
    const double t = problem_.grid.node(i);
    parallel_for(n, [&](std::size_t p) {
      thread_local SegmentTriple seg;
      fill_segment(frozen, p, i, lags_, dt, seg);
      seg.base_time = t;
      F[i * n + p] = gen_.evaluate(t, seg, prepared);
    });
  }
  return F;
}

PhiOutput BackwardSolver::apply(const TripleProcess& frozen) const {
  const std::size_t n = ens_.n_particles();
  const std::size_t N = ens_.n_steps();
  const std::size_t m = ens_.n_atoms();
  const double dt = problem_.grid.dt();
  const double theta = implicit_weight(reg_.driver_rule);
  const auto ni = static_cast<Eigen::Index>(n);

  const std::vector<double> F = driver_values(frozen);

  PhiOutput out;
  out.triple = zero_triple();
  TripleProcess& res = out.triple;

  Eigen::VectorXd y_next(ni);
  for (std::size_t p = 0; p < n; ++p) {
    y_next(static_cast<Eigen::Index>(p)) = xi_[p];
    res.y(p, N) = xi_[p];
  }

  Eigen::MatrixXd rhs(ni, 2);
  for (std::size_t ii = N; ii-- > 0;) {
    const Step& st = steps_[ii];
    const Eigen::MatrixXd X = st.basis.design(state(ii));
    rhs.col(0) = y_next;
    for (std::size_t p = 0; p < n; ++p) {
      rhs(static_cast<Eigen::Index>(p), 1) =
          y_next(static_cast<Eigen::Index>(p)) + (1.0 - theta) * dt * F[(ii + 1) * n + p];
    }
    const Eigen::MatrixXd fit = X * st.value.coefficients(X, rhs);
    const Eigen::VectorXd resid = y_next - fit.col(0);

    const Eigen::MatrixXd W = increment_design(X, ii);
    const Eigen::VectorXd c2 = st.increments.coefficients(W, resid);
    const Eigen::Index q = X.cols();
    const Eigen::VectorXd zc = X * c2.segment(0, q);
    Eigen::MatrixXd kc(ni, static_cast<Eigen::Index>(m));
    for (std::size_t j = 0; j < m; ++j) {
      kc.col(static_cast<Eigen::Index>(j)) =
          X * c2.segment(q * static_cast<Eigen::Index>(1 + j), q);
    }

    for (std::size_t p = 0; p < n; ++p) {
      const auto r = static_cast<Eigen::Index>(p);
      const double y = fit(r, 1) + theta * dt * F[ii * n + p];
      res.y(p, ii) = y;
      res.z(p, ii) = zc(r);
      for (std::size_t j = 0; j < m; ++j) res.k(p, ii, j) = kc(r, static_cast<Eigen::Index>(j));
      y_next(r) = y;
    }
  }

  out.pathwise_y0.assign(n, 0.0);
  double sum = 0.0;
  for (std::size_t p = 0; p < n; ++p) {
    double g = xi_[p];
    for (std::size_t i = 0; i < N; ++i) {
      g += dt * (theta * F[i * n + p] + (1.0 - theta) * F[(i + 1) * n + p]);
    }
    out.pathwise_y0[p] = g;
    sum += g;
  }
  out.y0_mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double g : out.pathwise_y0) ss += (g - out.y0_mean) * (g - out.y0_mean);
  const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  out.y0_standard_error = std::sqrt(var / static_cast<double>(n));
  return out;
}

TripleProcess apply_phi(const ProblemSpec& problem, const TripleProcess& frozen,
                        const PathEnsemble& ensemble, const RegressionConfig& reg) {
  return BackwardSolver(problem, ensemble, reg).apply(frozen).triple;
}

PhiOutput apply_phi_detailed(const ProblemSpec& problem, const TripleProcess& frozen,
                             const PathEnsemble& ensemble, const RegressionConfig& reg) {
  return BackwardSolver(problem, ensemble, reg).apply(frozen);
}

}  // namespace mfdbsde
