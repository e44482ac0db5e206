#include "config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "mfdbsde/solver.hpp"

namespace mfdbsde::app {

using nlohmann::json;

namespace {

std::string escape_token(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') {
      out += "~0";
    } else if (c == '/') {
      out += "~1";
    } else {
      out += c;
    }
  }
  return out;
}

struct Frame {
  bool object = false;
  bool expect_key = true;
  std::string key;
  std::size_t index = 0;
};

std::string frame_path(const std::vector<Frame>& st) {
  std::string p;
  for (const Frame& f : st) {
    p += '/';
    p += f.object ? escape_token(f.key) : std::to_string(f.index);
  }
  return p;
}

}  // namespace

std::map<std::string, std::size_t> locate_pointers(const std::string& text) {
  std::map<std::string, std::size_t> out;
  std::vector<Frame> st;
  std::size_t line = 1;
  out[""] = 1;
  auto value_start = [&]() {
    if (!st.empty() && !st.back().object) out.emplace(frame_path(st), line);
  };
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    switch (c) {
      case '\n': ++line; break;
      case '{':
        value_start();
        st.push_back(Frame{true, true, {}, 0});
        break;
      case '[':
        value_start();
        st.push_back(Frame{false, false, {}, 0});
        break;
      case '}':
      case ']':
        if (!st.empty()) st.pop_back();
        break;
      case ':':
        if (!st.empty()) st.back().expect_key = false;
        break;
      case ',':
        if (!st.empty()) {
          if (st.back().object) st.back().expect_key = true;
          else ++st.back().index;
        }
        break;
      case '"': {
        std::string s;
        std::size_t j = i + 1;
        for (; j < text.size() && text[j] != '"'; ++j) {
          if (text[j] == '\\' && j + 1 < text.size()) {
            ++j;
            switch (text[j]) {
              case 'n': s += '\n'; break;
              case 't': s += '\t'; break;
              default: s += text[j]; break;
            }
          } else {
            if (text[j] == '\n') ++line;
            s += text[j];
          }
        }
        if (!st.empty() && st.back().object && st.back().expect_key) {
          st.back().key = s;
          out.emplace(frame_path(st), line);
        } else {
          value_start();
        }
        i = j;
        break;
      }
      default:
        if (c == '-' || (c >= '0' && c <= '9') || c == 't' || c == 'f' || c == 'n') {
          value_start();
          while (i + 1 < text.size() && std::string_view(",]}\n \t\r").find(text[i + 1]) ==
                                            std::string_view::npos) {
            ++i;
          }
        }
        break;
    }
  }
  return out;
}

namespace {

class Doc {
 public:
  Doc(std::string source, std::map<std::string, std::size_t> lines)
      : source_(std::move(source)), lines_(std::move(lines)) {}

  [[noreturn]] void fail(const std::string& ptr, const std::string& msg) const {
    std::string p = ptr;
    std::size_t line = 0;
    for (;;) {
      auto it = lines_.find(p);
      if (it != lines_.end()) {
        line = it->second;
        break;
      }
      if (p.empty()) break;
      p = p.substr(0, p.rfind('/'));
    }
    std::ostringstream os;
    os << source_;
    if (line > 0) os << ':' << line;
    os << ": " << (ptr.empty() ? "/" : ptr) << ": " << msg;
    throw ConfigFileError(os.str());
  }

 private:
  std::string source_;
  std::map<std::string, std::size_t> lines_;
};

/// Typed view of one JSON object that rejects unknown keys on finish().
class Obj {
 public:
  Obj(const Doc& doc, const json& j, std::string ptr) : doc_(doc), j_(j), ptr_(std::move(ptr)) {
    if (!j_.is_object()) doc_.fail(ptr_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  std::string at(const std::string& key) const { return ptr_ + "/" + escape_token(key); }
  const Doc& doc() const { return doc_; }
  const std::string& ptr() const { return ptr_; }

  const json* get(const std::string& key) {
    used_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, std::optional<double> def = std::nullopt) {
    const json* v = get(key);
    if (!v) {
      if (!def) doc_.fail(at(key), "required number is missing");
      return *def;
    }
    if (!v->is_number()) doc_.fail(at(key), "expected a number");
    const double x = v->get<double>();
    if (!std::isfinite(x)) doc_.fail(at(key), "expected a finite number");
    return x;
  }

  std::uint64_t integer(const std::string& key, std::optional<std::uint64_t> def = std::nullopt) {
    const json* v = get(key);
    if (!v) {
      if (!def) doc_.fail(at(key), "required integer is missing");
      return *def;
    }
    if (v->is_number_unsigned()) return v->get<std::uint64_t>();
    if (v->is_number_integer()) doc_.fail(at(key), "expected a nonnegative integer");
    if (v->is_number_float()) {
      const double x = v->get<double>();
      if (x >= 0.0 && x == std::floor(x) && x < 9007199254740992.0) {
        return static_cast<std::uint64_t>(x);
      }
    }
    doc_.fail(at(key), "expected a nonnegative integer");
  }

  bool boolean(const std::string& key, bool def) {
    const json* v = get(key);
    if (!v) return def;
    if (!v->is_boolean()) doc_.fail(at(key), "expected true or false");
    return v->get<bool>();
  }

  std::string string(const std::string& key, std::optional<std::string> def = std::nullopt) {
    const json* v = get(key);
    if (!v) {
      if (!def) doc_.fail(at(key), "required string is missing");
      return *def;
    }
    if (!v->is_string()) doc_.fail(at(key), "expected a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& key) {
    const json* v = get(key);
    std::vector<double> out;
    if (!v) return out;
    if (!v->is_array()) doc_.fail(at(key), "expected an array of numbers");
    for (std::size_t i = 0; i < v->size(); ++i) {
      if (!(*v)[i].is_number()) doc_.fail(at(key) + "/" + std::to_string(i), "expected a number");
      out.push_back((*v)[i].get<double>());
    }
    return out;
  }

  Obj child(const std::string& key) {
    const json* v = get(key);
    if (!v) doc_.fail(at(key), "required section is missing");
    return Obj(doc_, *v, at(key));
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!used_.count(it.key())) doc_.fail(at(it.key()), "unknown key");
    }
  }

 private:
  const Doc& doc_;
  const json& j_;
  std::string ptr_;
  std::set<std::string> used_;
};

const json kEmpty = json::object();

DelayMeasure parse_delay(Obj o) {
  const std::string kind = o.string("kind", "dirac");
  DelayMeasure d = DelayMeasure::dirac();
  try {
    if (kind == "dirac") {
      if (o.has("delta") && o.number("delta") != 0.0) {
        o.doc().fail(o.at("delta"), "a dirac delay measure has delta = 0");
      }
      o.get("delta");
    } else if (kind == "uniform") {
      d = DelayMeasure::uniform(o.number("delta"), o.number("atom_at_zero", 0.0));
    } else if (kind == "piecewise") {
      std::vector<double> cells = o.numbers("cell_masses");
      if (cells.empty()) o.doc().fail(o.at("cell_masses"), "at least one cell mass is required");
      d = DelayMeasure::piecewise(o.number("delta"), o.number("atom_at_zero", 0.0),
                                  std::move(cells));
    } else {
      o.doc().fail(o.at("kind"), "unknown delay kind '" + kind +
                                     "' (expected dirac, uniform or piecewise)");
    }
  } catch (const std::invalid_argument& e) {
    o.doc().fail(o.ptr(), e.what());
  }
  o.finish();
  return d;
}

LevyModel parse_levy(const Doc& doc, const json* arr, const std::string& ptr) {
  if (!arr) return LevyModel{};
  if (!arr->is_array()) doc.fail(ptr, "expected an array of jump atoms");
  std::vector<JumpAtom> atoms;
  for (std::size_t i = 0; i < arr->size(); ++i) {
    Obj a(doc, (*arr)[i], ptr + "/" + std::to_string(i));
    JumpAtom at{a.number("size"), a.number("intensity")};
    a.finish();
    atoms.push_back(at);
  }
  try {
    return LevyModel(std::move(atoms));
  } catch (const std::invalid_argument& e) {
    doc.fail(ptr, e.what());
  }
}

EmpiricalMeasure parse_reference(Obj o, std::size_t m) {
  const json* pts = o.get("points");
  if (!pts || !pts->is_array() || pts->empty()) {
    o.doc().fail(o.at("points"), "expected a nonempty array of [y, z] pairs");
  }
  std::vector<double> flat;
  for (std::size_t i = 0; i < pts->size(); ++i) {
    const json& p = (*pts)[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      o.doc().fail(o.at("points") + "/" + std::to_string(i), "expected [y, z]");
    }
    flat.push_back(p[0].get<double>());
    flat.push_back(p[1].get<double>());
  }
  const std::size_t n = pts->size();
  std::vector<double> weights = o.numbers("weights");
  if (!weights.empty() && weights.size() != n) {
    o.doc().fail(o.at("weights"), "one weight per point is required");
  }
  std::vector<double> marks(n * m, 0.0);
  if (const json* mk = o.get("marks")) {
    if (!mk->is_array() || mk->size() != n) {
      o.doc().fail(o.at("marks"), "one mark row per point is required");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const json& r = (*mk)[i];
      if (!r.is_array() || r.size() != m) {
        o.doc().fail(o.at("marks") + "/" + std::to_string(i), "one mark per jump atom is required");
      }
      for (std::size_t j = 0; j < m; ++j) {
        if (!r[j].is_number()) {
          o.doc().fail(o.at("marks") + "/" + std::to_string(i) + "/" + std::to_string(j),
                       "expected a number");
        }
        marks[i * m + j] = r[j].get<double>();
      }
    }
  }
  o.finish();
  try {
    return EmpiricalMeasure(2, std::move(flat), std::move(weights), m, std::move(marks));
  } catch (const std::invalid_argument& e) {
    o.doc().fail(o.at("points"), e.what());
  }
}

GeneratorSpec parse_generator(Obj o, std::size_t m) {
  const std::string kind = o.string("kind");
  GeneratorSpec g;
  if (kind == "zero") {
    g = ZeroGen{};
  } else if (kind == "linear_state") {
    LinearStateGen s;
    s.a = o.number("a", 0.0);
    s.b = o.number("b", 0.0);
    s.k_weights = o.numbers("k_weights");
    if (s.k_weights.size() > m) o.doc().fail(o.at("k_weights"), "more weights than jump atoms");
    g = s;
  } else if (kind == "delayed_average") {
    g = DelayedAverageGen{o.number("a")};
  } else if (kind == "mean_field_moment") {
    MeanFieldMomentGen s;
    s.a = o.number("a");
    const std::string mom = o.string("moment", "mean_y");
    if (mom == "mean_y") {
      s.moment = Moment::mean_y;
    } else if (mom == "mean_z") {
      s.moment = Moment::mean_z;
    } else if (mom == "mean_k") {
      s.moment = Moment::mean_k;
    } else {
      o.doc().fail(o.at("moment"), "unknown moment '" + mom + "' (mean_y, mean_z, mean_k)");
    }
    s.atom = o.integer("atom", 0);
    if (s.moment == Moment::mean_k && s.atom >= m) {
      o.doc().fail(o.at("atom"), "atom index out of range");
    }
    g = s;
  } else if (kind == "mean_field_mnorm") {
    MeanFieldMNormGen s;
    s.a = o.number("a");
    s.quad_order = o.integer("quad_order", 12);
    if (s.quad_order == 0 || s.quad_order > 64) {
      o.doc().fail(o.at("quad_order"), "quadrature order must be in [1, 64]");
    }
    s.reference = o.has("reference") ? parse_reference(o.child("reference"), m) : dirac_law(m);
    g = s;
  } else {
    o.doc().fail(o.at("kind"), "unknown generator kind '" + kind + "'");
  }
  o.finish();
  return g;
}

TerminalCondition parse_terminal(Obj o, std::size_t m) {
  const std::string kind = o.string("kind");
  TerminalCondition t;
  if (kind == "constant") {
    t = TerminalCondition::constant(o.number("c"));
  } else if (kind == "linear") {
    const double c0 = o.number("c0", 0.0);
    const double cb = o.number("cb", 0.0);
    std::vector<double> cj = o.numbers("cj");
    if (cj.size() > m) o.doc().fail(o.at("cj"), "more coefficients than jump atoms");
    t = TerminalCondition::linear(c0, cb, std::move(cj));
  } else if (kind == "brownian") {
    t = TerminalCondition::brownian(o.number("scale", 1.0));
  } else if (kind == "compensated_count") {
    const auto atom = static_cast<std::size_t>(o.integer("atom", 0));
    if (atom >= m) o.doc().fail(o.at("atom"), "atom index out of range");
    t = TerminalCondition::compensated_count(atom, o.number("scale", 1.0));
  } else if (kind == "brownian_square") {
    t = TerminalCondition::brownian_square(o.number("scale", 1.0));
  } else if (kind == "call") {
    t = TerminalCondition::call(o.number("strike"));
  } else {
    o.doc().fail(o.at("kind"), "unknown terminal kind '" + kind + "'");
  }
  o.finish();
  return t;
}

DriverRule parse_rule(Obj& o) {
  const std::string r = o.string("driver_rule", "trapezoid");
  if (r == "left") return DriverRule::left;
  if (r == "right") return DriverRule::right;
  if (r == "trapezoid") return DriverRule::trapezoid;
  o.doc().fail(o.at("driver_rule"), "unknown driver rule '" + r + "' (left, right, trapezoid)");
}

}  // namespace

RunConfig parse_config(const std::string& text, const std::string& source) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigFileError(source + ": " + e.what());
  }
  const Doc doc(source, locate_pointers(text));
  Obj root(doc, j, "");

  Obj pr = root.child("problem");
  const double horizon = pr.number("horizon");
  const std::uint64_t n_steps = pr.integer("n_steps");
  if (!(horizon > 0.0)) doc.fail(pr.at("horizon"), "must be > 0");
  if (n_steps == 0) doc.fail(pr.at("n_steps"), "must be > 0");
  const TimeGrid grid(horizon, n_steps);

  DelayMeasure delay =
      pr.has("delay") ? parse_delay(pr.child("delay")) : DelayMeasure::dirac();
  try {
    grid.steps_for(delay.delta());
  } catch (const std::invalid_argument& e) {
    doc.fail("/problem/delay/delta", e.what());
  }
  if (delay.delta() > horizon) doc.fail("/problem/delay/delta", "delay exceeds the horizon");

  LevyModel levy = parse_levy(doc, pr.get("levy"), pr.at("levy"));
  GeneratorSpec gen = parse_generator(pr.child("generator"), levy.size());
  TerminalCondition term = parse_terminal(pr.child("terminal"), levy.size());

  double lipschitz = 1.0;
  if (const json* c = pr.get("lipschitz_C")) {
    if (c->is_string() && c->get<std::string>() == "analytic") {
      lipschitz = analytic_lipschitz_constant(gen, delay, levy);
      if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
        doc.fail(pr.at("lipschitz_C"),
                 "no positive finite analytic constant for this generator; give a number");
      }
    } else if (c->is_number()) {
      lipschitz = c->get<double>();
    } else {
      doc.fail(pr.at("lipschitz_C"), "expected a number or \"analytic\"");
    }
  }
  if (!(lipschitz > 0.0) || !std::isfinite(lipschitz)) {
    doc.fail(pr.at("lipschitz_C"), "must be positive and finite");
  }
  const double zero_c = pr.number("zero_bound_c", 1.0);
  if (!(zero_c >= 0.0)) doc.fail(pr.at("zero_bound_c"), "must be >= 0");
  pr.finish();

  RunConfig cfg{ProblemSpec{grid, delay, levy, term, gen, lipschitz, zero_c}, {}, {}, {}, {}, {},
                source};
  try {
    cfg.problem.validate();
  } catch (const std::invalid_argument& e) {
    doc.fail("/problem", e.what());
  }

  Obj so(doc, j.contains("solver") ? j["solver"] : kEmpty, "/solver");
  root.get("solver");
  cfg.sim.n_particles = so.integer("n_particles", 10000);
  cfg.sim.seed = so.integer("seed", 1);
  cfg.sim.antithetic = so.boolean("antithetic", false);
  if (cfg.sim.n_particles < 2) doc.fail(so.at("n_particles"), "at least 2 particles are required");
  cfg.regression.degree = so.integer("degree", 2);
  cfg.regression.ridge = so.number("ridge", 0.0);
  if (!(cfg.regression.ridge >= 0.0)) doc.fail(so.at("ridge"), "must be >= 0");
  cfg.regression.min_particles_per_coeff = so.integer("min_particles_per_coeff", 10);
  cfg.regression.driver_rule = parse_rule(so);
  cfg.picard.rho = so.number("rho", 2.0);
  cfg.picard.tol = so.number("tol", 1e-6);
  cfg.picard.max_iters = so.integer("max_iters", 50);
  if (const json* b = so.get("beta_override"); b && !b->is_null()) {
    cfg.picard.beta_override = so.number("beta_override");
  }
  cfg.picard.divergence_factor = so.number("divergence_factor", 1e8);
  so.finish();
  if (!(cfg.picard.rho > delay.atom_at_zero())) {
    doc.fail(so.at("rho"), "rho must exceed the delay atom at zero (" +
                               std::to_string(delay.atom_at_zero()) + ")");
  }
  try {
    check_picard_config(cfg.picard, delay);
  } catch (const ConfigError& e) {
    doc.fail("/solver", e.what());
  }

  Obj va(doc, j.contains("validation") ? j["validation"] : kEmpty, "/validation");
  root.get("validation");
  cfg.validation.pairs = va.integer("pairs", 256);
  cfg.validation.seed = va.integer("seed", cfg.validation.seed);
  cfg.validation.law_points = va.integer("law_points", 16);
  cfg.validation.terminal_samples = va.integer("terminal_samples", 20000);
  cfg.validation.eps_stat = va.number("eps_stat", 1e-6);
  if (cfg.validation.law_points == 0) doc.fail(va.at("law_points"), "must be > 0");
  if (!(cfg.validation.eps_stat >= 0.0)) doc.fail(va.at("eps_stat"), "must be >= 0");
  va.finish();

  Obj ou(doc, j.contains("output") ? j["output"] : kEmpty, "/output");
  root.get("output");
  cfg.output.dir = ou.string("dir", cfg.output.dir.string());
  cfg.output.solution_csv = ou.string("solution_csv", cfg.output.solution_csv);
  cfg.output.report = ou.string("report", cfg.output.report);
  cfg.output.sweep_csv = ou.string("sweep_csv", cfg.output.sweep_csv);
  ou.finish();

  root.finish();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigFileError(path.string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

void apply_overrides(RunConfig& cfg, const Overrides& ov) {
  if (ov.seed) cfg.sim.seed = *ov.seed;
  if (ov.particles) {
    if (*ov.particles < 2) throw ConfigFileError("--particles: at least 2 particles are required");
    cfg.sim.n_particles = *ov.particles;
  }
  if (ov.out_dir) cfg.output.dir = *ov.out_dir;
}

}  // namespace mfdbsde::app
