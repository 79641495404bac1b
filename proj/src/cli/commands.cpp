#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "cfet/cli.hpp"
#include "cfet/lie/hall_basis.hpp"
#include "cfet/magnus/magnus.hpp"
#include "cfet/models.hpp"

namespace cfet::cli {

namespace {

ConfigDocument require_config(const Options& opt, const char* command) {
  if (!opt.config) throw ConfigError(std::string(command) + ": --config <path> is required");
  return ConfigDocument::load(*opt.config);
}

// Writes to --out if given, else to `fallback`.
class Sink {
 public:
  Sink(const Options& opt, std::ostream& fallback) : os_(&fallback) {
    if (opt.out) {
      file_.open(*opt.out, std::ios::binary);
      if (!file_) throw ConfigError("cannot write '" + *opt.out + "'");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

std::uint64_t seed_of(const Options& opt, const ConfigDocument& doc) {
  if (opt.seed_given) return opt.seed;
  const auto& r = doc.root();
  if (r.contains("seed")) {
    if (!r["seed"].is_number_unsigned()) doc.fail("seed", "'seed' must be a non-negative integer");
    return r["seed"].get<std::uint64_t>();
  }
  return 0;
}

std::vector<std::string> observable_list(const ConfigDocument& doc) {
  std::vector<std::string> obs;
  const auto& r = doc.root();
  if (!r.contains("observables")) return obs;
  if (!r["observables"].is_array()) doc.fail("observables", "'observables' must be an array");
  for (const auto& o : r["observables"]) {
    if (!o.is_string()) doc.fail("observables", "observable names must be strings");
    obs.push_back(o.get<std::string>());
  }
  return obs;
}

const Json& null_json() {
  static const Json j;
  return j;
}

const Json& member(const Json& obj, const char* key) {
  return obj.contains(key) ? obj.at(key) : null_json();
}

}  // namespace

// ---------------------------------------------------------------- propagate

int cmd_propagate(const Options& opt, std::ostream& out, std::ostream& log) {
  const ConfigDocument doc = require_config(opt, "propagate");
  const Json& r = doc.root();
  const Json& plan_node = doc.object(r, "plan");
  stepper::StepPlan plan;
  plan.t0 = doc.number(plan_node, "t0", 0.0);
  plan.T = doc.number(plan_node, "T");
  if (!(plan.T > plan.t0)) doc.fail("T", "plan: T must exceed t0");
  plan.record_stride = static_cast<int>(doc.integer(plan_node, "record_stride", 1));
  if (plan.record_stride < 1) doc.fail("record_stride", "record_stride must be >= 1");
  if (plan_node.contains("adaptive")) {
    const Json& a = doc.object(plan_node, "adaptive");
    stepper::AdaptivePolicy pol;
    pol.target = doc.number(a, "target", pol.target);
    pol.macro_steps = static_cast<int>(doc.integer(a, "macro_steps", pol.macro_steps));
    pol.ratio = doc.number(a, "ratio", pol.ratio);
    pol.safety = doc.number(a, "safety", pol.safety);
    pol.initial_dt = doc.number(a, "initial_dt", pol.initial_dt);
    if (!(pol.target > 0)) doc.fail("target", "adaptive target must be positive");
    if (pol.macro_steps < 1) doc.fail("macro_steps", "macro_steps must be >= 1");
    plan.adaptive = pol;
  } else {
    plan.dt = doc.number(plan_node, "dt");
    if (!(plan.dt > 0)) doc.fail("dt", "plan: dt must be positive");
  }

  if (!r.contains("scheme")) doc.fail("scheme", "missing 'scheme'");
  const CfetIntegrator integ(resolve_scheme(doc, r["scheme"], "scheme"));
  const auto backend = resolve_backend(doc, doc.string(r, "backend", "krylov:20"), "backend");
  const ModelInstance mi = build_model(doc, doc.object(r, "model"), member(r, "initial"),
                                       observable_list(doc), plan.t0, seed_of(opt, doc));

  const bool ip = r.contains("interaction_picture") && r["interaction_picture"].is_boolean() &&
                  r["interaction_picture"].get<bool>();
  std::shared_ptr<stepper::InteractionPicture> frame;
  if (ip) {
    try {
      frame = stepper::interaction_picture(*mi.generator);
    } catch (const std::invalid_argument& e) {
      doc.fail("interaction_picture", e.what());
    }
  }
  const Generator& gen = frame ? static_cast<const Generator&>(*frame) : *mi.generator;
  const Vector v0 = frame ? frame->to_interaction(plan.t0, mi.initial) : mi.initial;

  stepper::PropagateOptions po;
  po.observable = [&](double t, const Vector& v) {
    return mi.observe(t, frame ? frame->to_lab(t, v) : v);
  };
  const auto rec = stepper::propagate(gen, integ, backend, plan, v0, po);

  Sink sink(opt, out);
  std::ostream& os = *sink;
  os << "t";
  for (const auto& c : mi.columns) os << ',' << c;
  os << ",norm,cumulative_matvecs\n";
  for (std::size_t k = 0; k < rec.times.size(); ++k) {
    os << format_double(rec.times[k]);
    for (double x : rec.observables[k]) os << ',' << format_double(x);
    os << ',' << format_double(rec.norms[k]) << ',' << rec.matvecs[k] << '\n';
  }
  if (mi.type == "oscillator") {
    const Vector lab = frame ? frame->to_lab(plan.T, rec.final_state) : rec.final_state;
    const auto leak = models::truncation_leakage(lab);
    if (leak.warning)
      log << "warning: " << format_double(leak.top_occupation)
          << " of the norm sits in the top 10% of Fock levels; the truncation is too small\n";
  }
  log << "steps " << rec.steps << ", samples " << rec.samples << ", matvecs "
      << rec.total_matvecs << (rec.partial_final_step ? ", partial final step" : "") << '\n';
  return 0;
}

// ---------------------------------------------------------------- bench

namespace {

struct Axis {
  std::string name;
  std::vector<Json> values;
};

struct GridPoint {
  Json model;
  Json scheme;
  std::string backend;
  std::optional<int> K;
  double dt = 0.0;
  std::string parameters;
};

struct BenchRow {
  std::string scheme, backend;
  double dt = 0.0;
  int K = 0;
  double error = 0.0;
  long matvecs = 0;
  long long wall_ns = 0;
  std::string parameters;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

expm::ExpmBackend reference_backend(const Generator& gen, double t0) {
  const Sample s = gen.sample(t0);
  if (gen.skew_hermitian() && gen.spectral_bounds(s)) return expm::ExpmBackend::chebyshev();
  if (gen.dimension() <= 512) return expm::ExpmBackend::dense();
  return expm::ExpmBackend::krylov(std::min(60, gen.dimension()));
}

}  // namespace

int cmd_bench(const Options& opt, std::ostream& out, std::ostream& log) {
  const ConfigDocument doc = require_config(opt, "bench");
  const Json& r = doc.root();
  const Json& model = doc.object(r, "model");
  const double t0 = doc.number(r, "t0", 0.0);
  const double T = doc.number(r, "T");
  if (!(T > t0)) doc.fail("T", "T must exceed t0");
  const std::string reference = doc.string(r, "reference");
  if (reference != "oracle" && reference != "richardson")
    doc.fail("reference", "reference must be 'oracle' or 'richardson'");
  const int checkpoints = static_cast<int>(doc.integer(r, "checkpoints", 10));
  if (checkpoints < 1) doc.fail("checkpoints", "checkpoints must be >= 1");
  const std::uint64_t seed = seed_of(opt, doc);
  const auto obs = std::vector<std::string>{};

  if (!r.contains("axes") || !r["axes"].is_array() || r["axes"].empty())
    doc.fail("axes", "bench needs a non-empty 'axes' array");
  std::vector<Axis> axes;
  for (const auto& a : r["axes"]) {
    Axis ax{doc.string(a, "name"), {}};
    if (!a.contains("values") || !a["values"].is_array() || a["values"].empty())
      doc.fail("values", "axis '" + ax.name + "' needs a non-empty 'values' array");
    for (const auto& v : a["values"]) ax.values.push_back(v);
    if (ax.name != "scheme" && ax.name != "backend" && ax.name != "dt" && ax.name != "K" &&
        ax.name.rfind("model.", 0) != 0)
      doc.fail("name", "unknown axis '" + ax.name + "'");
    if (ax.name == "dt" || ax.name == "K" || ax.name.rfind("model.", 0) == 0)
      for (const auto& v : ax.values)
        if (!v.is_number() || !std::isfinite(v.get<double>()))
          doc.fail("values", "axis '" + ax.name + "' values must be finite numbers");
    axes.push_back(std::move(ax));
  }
  auto has_axis = [&](const std::string& n) {
    for (const auto& a : axes)
      if (a.name == n) return true;
    return false;
  };
  if (!has_axis("scheme") && !r.contains("scheme")) doc.fail("scheme", "no scheme given");
  if (!has_axis("dt") && !r.contains("dt")) doc.fail("dt", "no dt given");

  // combinatorial expansion, first axis outermost
  std::vector<GridPoint> points;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    GridPoint g;
    g.model = model;
    g.scheme = r.contains("scheme") ? r["scheme"] : Json();
    g.backend = doc.string(r, "backend", "krylov:20");
    g.dt = doc.number(r, "dt", 0.0);
    std::string params;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      const Json& v = axes[a].values[idx[a]];
      const std::string& n = axes[a].name;
      if (n == "scheme")
        g.scheme = v;
      else if (n == "backend")
        g.backend = v.get<std::string>();
      else if (n == "dt")
        g.dt = v.get<double>();
      else if (n == "K")
        g.K = v.get<int>();
      else {
        g.model = with_parameter(g.model, n.substr(6), v);
        params += (params.empty() ? "" : ";") + n.substr(6) + "=" + format_double(v.get<double>());
      }
    }
    g.parameters = params;
    if (!(g.dt > 0)) doc.fail("dt", "dt must be positive");
    points.push_back(std::move(g));
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].values.size()) break;
      idx[a] = 0;
      if (a == 0) {
        a = axes.size() + 1;
        break;
      }
    }
    if (a == axes.size() + 1 || axes.empty()) break;
  }

  // validate everything up front so configuration errors exit 1 before any work
  std::vector<CfetScheme> schemes;
  std::vector<expm::ExpmBackend> backends;
  for (const auto& g : points) {
    schemes.push_back(resolve_scheme(doc, g.scheme, "scheme"));
    auto b = resolve_backend(doc, g.backend, "backend");
    if (g.K) {
      if (b.kind != expm::BackendKind::Krylov) doc.fail("K", "K axis needs a krylov backend");
      if (*g.K < 1) doc.fail("K", "K must be >= 1");
      b.K = *g.K;
    }
    backends.push_back(b);
    const auto mi = build_model(doc, g.model, member(r, "initial"), obs, t0, seed);
    if (reference == "oracle" && !mi.exact_state && !mi.exact_final_population)
      doc.fail("reference", "model '" + mi.type +
                                "' has no closed-form oracle; use \"reference\": \"richardson\"");
  }

  std::vector<BenchRow> rows(points.size());
  run_pool(static_cast<int>(points.size()), opt.workers, [&](int i) {
    const GridPoint& g = points[i];
    const auto mi = build_model(doc, g.model, member(r, "initial"), obs, t0, seed);
    const CfetIntegrator integ(schemes[i]);
    const auto& backend = backends[i];
    const long n = std::max(1L, std::lround((T - t0) / g.dt));
    const double dt = (T - t0) / n;
    const long stride = std::max(1L, n / checkpoints);

    std::vector<std::pair<long, Vector>> ref;  // Richardson reference at checkpoints
    if (!mi.exact_state && !mi.exact_final_population) {
      const CfetIntegrator high(scheme_lookup("CF8:11"));
      const auto rb = reference_backend(*mi.generator, t0);
      Vector v = mi.initial;
      for (long k = 0; k < n; ++k) {
        stepper::advance(*mi.generator, high, rb, t0 + k * dt, t0 + (k + 1) * dt, 4, v);
        if ((k + 1) % stride == 0 || k + 1 == n) ref.emplace_back(k + 1, v);
      }
    }

    StepStats stats;
    Vector v = mi.initial;
    double err = 0.0;
    std::size_t next_ref = 0;
    const auto start = std::chrono::steady_clock::now();
    std::vector<std::pair<long, Vector>> states;
    for (long k = 0; k < n; ++k) {
      integ.step(*mi.generator, t0 + k * dt, dt, v, backend, &stats);
      if ((k + 1) % stride == 0 || k + 1 == n) states.emplace_back(k + 1, v);
    }
    const auto stop = std::chrono::steady_clock::now();
    for (const auto& [k, s] : states) {
      const double t = t0 + k * dt;
      if (mi.exact_state) {
        err = std::max(err, (s - mi.exact_state(t)).norm());
      } else if (mi.exact_final_population) {
        if (k == n) err = std::abs(std::norm(s[0]) - *mi.exact_final_population);
      } else {
        while (next_ref < ref.size() && ref[next_ref].first < k) ++next_ref;
        err = std::max(err, (s - ref[next_ref].second).norm());
      }
    }
    BenchRow& row = rows[i];
    row.scheme = schemes[i].name();
    row.backend = backend.str();
    row.dt = dt;
    row.K = backend.kind == expm::BackendKind::Krylov ? backend.K : 0;
    row.error = err;
    row.matvecs = stats.matvecs;
    row.wall_ns = std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
    row.parameters = g.parameters;
  });

  Sink sink(opt, out);
  std::ostream& os = *sink;
  os << "scheme,backend,dt,K,error,matvecs,wallclock_ns,parameters\n";
  for (const auto& row : rows)
    os << csv_field(row.scheme) << ',' << csv_field(row.backend) << ',' << format_double(row.dt)
       << ',' << row.K << ',' << format_double(row.error) << ',' << row.matvecs << ','
       << row.wall_ns << ',' << csv_field(row.parameters) << '\n';

  Json meta;
  meta["reference"] = reference == "oracle"
                          ? "closed-form oracle"
                          : "Richardson reference: CF8:11 at dt/4 (Chebyshev, dense or Krylov(60))";
  meta["error"] = "max over checkpoints of the 2-norm state deviation; for a single-pulse "
                  "single-spin chain the deviation of the final flip probability";
  meta["checkpoints"] = checkpoints;
  meta["points"] = points.size();
  if (opt.out) {
    std::ofstream m(*opt.out + ".meta.json");
    m << meta.dump(2) << '\n';
  } else {
    log << "# " << meta.dump() << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- verify

namespace {

// Magnus coefficients through degree 8 in Hall order.
const std::vector<std::pair<const char*, const char*>>& magnus_reference() {
  static const std::vector<std::pair<const char*, const char*>> table{
      {"A1", "1"},
      {"[A1,A2]", "-1/6"},
      {"[A2,A3]", "-1/30"},
      {"[A3,A4]", "-1/70"},
      {"[A1,[A1,A3]]", "1/60"},
      {"[A2,[A1,A2]]", "-1/60"},
      {"[A2,[A1,A4]]", "1/140"},
      {"[A2,[A2,A3]]", "-1/210"},
      {"[A3,[A1,A3]]", "-1/420"},
      {"[A4,[A1,A2]]", "-1/210"},
      {"[A1,[A1,[A1,A2]]]", "1/360"},
      {"[A1,[A1,[A1,A4]]]", "-1/840"},
      {"[A2,[A1,[A1,A3]]]", "1/504"},
      {"[A2,[A2,[A1,A2]]]", "-1/840"},
      {"[A3,[A1,[A1,A2]]]", "1/2520"},
      {"[[A1,A2],[A1,A3]]", "-1/504"},
      {"[A1,[A1,[A1,[A1,A3]]]]", "-1/2520"},
      {"[A2,[A1,[A1,[A1,A2]]]]", "1/2520"},
      {"[[A1,A2],[A1,[A1,A2]]]", "-1/7560"},
      {"[A1,[A1,[A1,[A1,[A1,A2]]]]]", "-1/15120"},
  };
  return table;
}

double tolerance_for(const CfetScheme& s, bool registered) {
  if (s.exact()) return 0.0;
  if (!registered) return 1e-10;
  if (s.name() == "CF8:11") return 1e-10;
  if (s.name() == "CF6:5b") return 1e-11;
  return 1e-12;
}

}  // namespace

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& log) {
  std::vector<std::pair<CfetScheme, bool>> schemes;
  for (const auto& n : scheme_names()) schemes.emplace_back(scheme_lookup(n), true);
  if (opt.config) {
    const ConfigDocument doc = ConfigDocument::load(*opt.config);
    const Json& r = doc.root();
    if (r.contains("schemes")) {
      if (!r["schemes"].is_array()) doc.fail("schemes", "'schemes' must be an array");
      for (const auto& s : r["schemes"]) schemes.emplace_back(resolve_scheme(doc, s, "schemes"), false);
    } else {
      schemes.emplace_back(resolve_scheme(doc, r, "name"), false);
    }
  }

  Sink sink(opt, out);
  std::ostream& os = *sink;
  std::vector<std::string> failures;

  // Magnus coefficients
  const auto mag = magnus::magnus_expand(8);
  const auto& basis = mag.omega.basis();
  std::map<std::string, Rational> reference;
  for (const auto& [name, value] : magnus_reference()) reference[name] = parse_rational(value);
  os << "Magnus coefficients through degree 8 (A_1..A_4)\n";
  int nonzero = 0;
  std::map<int, bool> matches;
  for (int i = 0; i < basis.size(); ++i) {
    if (basis.degree(i) > 8) continue;
    const Rational c = mag.omega.coefficient(i);
    const auto it = reference.find(basis.str(i));
    const Rational want = it == reference.end() ? Rational(0) : it->second;
    const bool ok = c == want;
    matches[i] = ok;
    if (c != 0) {
      ++nonzero;
      os << "  " << basis.str(i) << " -> " << c << (ok ? "" : "  MISMATCH, expected " + want.get_str())
         << '\n';
    } else if (!ok) {
      os << "  " << basis.str(i) << " -> 0  MISMATCH, expected " << want << '\n';
    }
    if (!ok) failures.push_back("Magnus coefficient of " + basis.str(i));
  }
  os << "  " << nonzero << " nonzero coefficients (reference " << reference.size() << ")\n";
  if (nonzero != static_cast<int>(reference.size())) failures.push_back("Magnus coefficient count");

  // Hall counts
  os << "Hall basis sizes (order: full / relevant)\n";
  const int full_want[] = {2, 7, 22, 70, 225};
  const int rel_want[] = {1, 2, 7, 22, 73};
  for (int k = 0; k < 5; ++k) {
    const int N = 2 * (k + 1);
    const int full = lie::HallBasis::build(N, N)->size();
    const int rel = static_cast<int>(lie::filter_relevant(*lie::HallBasis::build(N / 2, N), N).size());
    const bool ok = full == full_want[k] && rel == rel_want[k];
    os << "  N=" << N << ": " << full << " / " << rel << (ok ? "" : "  MISMATCH") << '\n';
    if (!ok) failures.push_back("Hall count at N=" + std::to_string(N));
  }

  // order conditions
  os << "Order-condition residuals (max |p_k - c_k|)\n";
  const auto table_basis = lie::HallBasis::build(4, 8);
  const auto relevant8 = lie::filter_relevant(*table_basis, 8);
  bool cf8_ok = true;
  for (const auto& [s, registered] : schemes) {
    const auto res = magnus::order_residuals(s, s.order());
    const double tol = tolerance_for(s, registered);
    const double worst = res.max_abs();
    const bool ok = s.exact() ? (res.exact && worst == 0.0) : worst <= tol;
    os << "  " << s.name() << " (order " << s.order() << ", " << s.stages() << " stages): "
       << (res.exact ? "exact " : "") << format_double(worst) << "  tol "
       << (s.exact() ? std::string("0") : format_double(tol)) << (ok ? "  pass" : "  FAIL") << '\n';
    if (!ok) failures.push_back("order conditions of " + s.name());
    if (s.name() == "CF8:11" && registered) cf8_ok = ok;
  }

  int hall_ok = 0;
  for (int e : relevant8) {
    const auto j = basis.find(table_basis->commutator(e));
    if (cf8_ok && j && matches.count(*j) && matches[*j]) ++hall_ok;
  }
  const bool pass = failures.empty();
  os << hall_ok << "/" << relevant8.size() << " Hall elements @ N=8, residuals "
     << (pass ? "pass" : "FAIL") << '\n';
  if (!pass) {
    for (const auto& f : failures) log << "verification failure: " << f << '\n';
    throw VerificationFailure(std::to_string(failures.size()) + " verification check(s) failed");
  }
  return 0;
}

// ---------------------------------------------------------------- stability

namespace {

std::vector<double> axis_values(const ConfigDocument& doc, const Json& r, const std::string& key) {
  if (!r.contains(key)) doc.fail(key, "missing axis '" + key + "'");
  const Json& a = r[key];
  std::vector<double> v;
  if (a.is_array()) {
    for (const auto& x : a) {
      if (!x.is_number()) doc.fail(key, "axis '" + key + "' values must be numbers");
      v.push_back(x.get<double>());
    }
  } else if (a.is_object()) {
    const double from = doc.number(a, "from"), to = doc.number(a, "to"), step = doc.number(a, "step");
    if (!(step > 0) || to < from) doc.fail(key, "axis '" + key + "' needs from <= to and step > 0");
    const long n = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
    if (n > 1000000) doc.fail(key, "axis '" + key + "' is too long");
    for (long k = 0; k < n; ++k) v.push_back(from + k * step);
  } else {
    doc.fail(key, "axis '" + key + "' must be an array or {from, to, step}");
  }
  if (v.empty()) doc.fail(key, "axis '" + key + "' is empty");
  for (double x : v)
    if (!std::isfinite(x)) doc.fail(key, "axis '" + key + "' values must be finite");
  return v;
}

}  // namespace

int cmd_stability(const Options& opt, std::ostream& out, std::ostream&) {
  const ConfigDocument doc = require_config(opt, "stability");
  const Json& r = doc.root();
  const auto xs = axis_values(doc, r, "x");
  const auto ys = axis_values(doc, r, "y");
  for (double x : xs)
    if (!(x > 0)) doc.fail("x", "x = (omega0/drive)^2 must be positive");
  const double drive = doc.number(r, "drive", 1.0);
  if (!(drive > 0)) doc.fail("drive", "drive must be positive");
  const CfetScheme scheme = r.contains("scheme") ? resolve_scheme(doc, r["scheme"], "scheme")
                                                 : scheme_lookup("CF6:5Opt");
  const auto backend = resolve_backend(doc, doc.string(r, "backend", "dense"), "backend");
  const int steps = static_cast<int>(doc.integer(r, "steps", 200));
  if (steps < 1) doc.fail("steps", "steps must be >= 1");
  const double tol = doc.number(r, "tolerance", 1e-7);

  struct Cell {
    double x, y, modulus;
    bool stable;
  };
  std::vector<Cell> cells;
  for (double y : ys)
    for (double x : xs) cells.push_back({x, y, 0.0, false});
  run_pool(static_cast<int>(cells.size()), opt.workers, [&](int i) {
    models::OscillatorParams p;
    p.drive = drive;
    p.omega0 = std::sqrt(cells[i].x) * drive;
    p.xi = cells[i].y * drive * drive;
    const auto f = models::floquet_stability(p, scheme, backend, steps, tol);
    cells[i].modulus = f.max_modulus;
    cells[i].stable = f.stable;
  });
  Sink sink(opt, out);
  std::ostream& os = *sink;
  os << "x,y,max_abs_lambda,stable\n";
  for (const auto& c : cells)
    os << format_double(c.x) << ',' << format_double(c.y) << ',' << format_double(c.modulus)
       << ',' << (c.stable ? 1 : 0) << '\n';
  return 0;
}

// ---------------------------------------------------------------- schemes

int cmd_schemes(const Options& opt, std::ostream& out, std::ostream&) {
  Sink sink(opt, out);
  std::ostream& os = *sink;
  if (opt.name) {
    CfetScheme s = [&] {
      try {
        return scheme_lookup(*opt.name);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }();
    os << (opt.dump ? dump_scheme(s) : s.name()) << '\n';
    return 0;
  }
  if (opt.dump) {
    Json all = Json::array();
    for (const auto& n : scheme_names()) all.push_back(Json::parse(dump_scheme(scheme_lookup(n))));
    os << all.dump(2) << '\n';
    return 0;
  }
  os << "name,order,stages,symmetric,quadrature_points\n";
  for (const auto& n : scheme_names()) {
    const auto s = scheme_lookup(n);
    os << s.name() << ',' << s.order() << ',' << s.stages() << ',' << (s.symmetric() ? 1 : 0)
       << ',' << s.quadrature_points() << '\n';
  }
  return 0;
}

}  // namespace cfet::cli
