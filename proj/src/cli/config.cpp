#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "cfet/cli.hpp"
#include "cfet/models.hpp"

namespace cfet::cli {

ConfigDocument ConfigDocument::parse(const std::string& text, const std::string& source) {
  ConfigDocument d;
  d.text_ = text;
  d.source_ = source;
  try {
    d.root_ = Json::parse(text);
  } catch (const Json::parse_error& e) {
    // nlohmann reports "at line L, column C"
    throw ConfigError(source + ": " + e.what());
  }
  if (!d.root_.is_object()) throw ConfigError(source + ":1: top level must be an object");
  return d;
}

ConfigDocument ConfigDocument::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path);
}

int ConfigDocument::line_of(const std::string& key) const {
  const auto pos = text_.find("\"" + key + "\"");
  if (pos == std::string::npos) return 0;
  int line = 1;
  for (std::size_t i = 0; i < pos; ++i)
    if (text_[i] == '\n') ++line;
  return line;
}

void ConfigDocument::fail(const std::string& key, const std::string& message) const {
  const int line = line_of(key);
  throw ConfigError(source_ + ":" + (line ? std::to_string(line) + ":" : "") + " " + message);
}

double ConfigDocument::number(const Json& obj, const std::string& key) const {
  if (!obj.is_object() || !obj.contains(key)) fail(key, "missing number '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number()) fail(key, "'" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(key, "'" + key + "' must be finite");
  return x;
}

double ConfigDocument::number(const Json& obj, const std::string& key, double fallback) const {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return number(obj, key);
}

long ConfigDocument::integer(const Json& obj, const std::string& key) const {
  if (!obj.is_object() || !obj.contains(key)) fail(key, "missing integer '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) fail(key, "'" + key + "' must be an integer");
  return v.get<long>();
}

long ConfigDocument::integer(const Json& obj, const std::string& key, long fallback) const {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return integer(obj, key);
}

std::string ConfigDocument::string(const Json& obj, const std::string& key) const {
  if (!obj.is_object() || !obj.contains(key)) fail(key, "missing string '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_string()) fail(key, "'" + key + "' must be a string");
  return v.get<std::string>();
}

std::string ConfigDocument::string(const Json& obj, const std::string& key,
                                   const std::string& fallback) const {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return string(obj, key);
}

const Json& ConfigDocument::object(const Json& obj, const std::string& key) const {
  if (!obj.is_object() || !obj.contains(key)) fail(key, "missing object '" + key + "'");
  const auto& v = obj.at(key);
  if (!v.is_object()) fail(key, "'" + key + "' must be an object");
  return v;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CfetScheme resolve_scheme(const ConfigDocument& doc, const Json& node, const std::string& key) {
  try {
    if (node.is_string()) return scheme_lookup(node.get<std::string>());
    if (node.is_object()) return load_scheme(node.dump());
  } catch (const std::invalid_argument& e) {
    doc.fail(key, e.what());
  }
  doc.fail(key, "'" + key + "' must be a registered scheme name or a scheme document");
}

expm::ExpmBackend resolve_backend(const ConfigDocument& doc, const std::string& text,
                                  const std::string& key) {
  try {
    return expm::ExpmBackend::parse(text);
  } catch (const std::invalid_argument& e) {
    doc.fail(key, e.what());
  }
}

Json with_parameter(const Json& model, const std::string& path, const Json& value) {
  Json m = model;
  Json* node = &m;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string part = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (dot == std::string::npos) {
      (*node)[part] = value;
      break;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
  return m;
}

namespace {

const Complex I(0.0, 1.0);

Vector random_state(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Vector v(n);
  for (int k = 0; k < n; ++k) {
    const double re = g(rng);
    const double im = g(rng);
    v[k] = Complex(re, im);
  }
  return v / v.norm();
}

Vector explicit_state(const ConfigDocument& doc, const Json& init, int n) {
  if (!init.contains("re") || !init["re"].is_array()) doc.fail("re", "vector state needs 're'");
  const auto& re = init["re"];
  if (static_cast<int>(re.size()) != n)
    doc.fail("re", "vector state has " + std::to_string(re.size()) + " entries, model needs " +
                       std::to_string(n));
  Vector v = Vector::Zero(n);
  for (int k = 0; k < n; ++k) v[k] = re[k].get<double>();
  if (init.contains("im")) {
    const auto& im = init["im"];
    if (!im.is_array() || static_cast<int>(im.size()) != n)
      doc.fail("im", "'im' must match 're' in length");
    for (int k = 0; k < n; ++k) v[k] += I * im[k].get<double>();
  }
  return v;
}

Vector make_initial(const ConfigDocument& doc, const Json& init, int n, std::uint64_t seed,
                    const std::function<std::optional<Vector>(const std::string&)>& special) {
  const std::string type = init.is_null() ? "basis" : doc.string(init, "type");
  if (type == "basis") {
    const long k = init.is_null() ? 0 : doc.integer(init, "index", 0);
    if (k < 0 || k >= n) doc.fail("index", "basis index out of range");
    Vector v = Vector::Zero(n);
    v[k] = 1.0;
    return v;
  }
  if (type == "random") return random_state(n, seed);
  if (type == "vector") return explicit_state(doc, init, n);
  if (auto v = special(type)) return *v;
  doc.fail("type", "initial state type '" + type + "' is not available for this model");
}

void validate_observables(const ConfigDocument& doc, const std::vector<std::string>& obs,
                          const std::vector<std::string>& allowed, int dim) {
  for (const auto& o : obs) {
    if (o.rfind("population:", 0) == 0) {
      int k = -1;
      try {
        k = std::stoi(o.substr(11));
      } catch (...) {
      }
      if (k < 0 || k >= dim) doc.fail("observables", "bad population index in '" + o + "'");
      continue;
    }
    bool ok = false;
    for (const auto& a : allowed) ok = ok || a == o;
    if (!ok) doc.fail("observables", "unknown observable '" + o + "' for this model");
  }
}

double population(const Vector& v, const std::string& name) {
  return std::norm(v[std::stoi(name.substr(11))]);
}

}  // namespace

ModelInstance build_model(const ConfigDocument& doc, const Json& model, const Json& initial,
                          const std::vector<std::string>& observables, double t0,
                          std::uint64_t seed) {
  if (!model.is_object()) doc.fail("model", "'model' must be an object");
  ModelInstance mi;
  mi.type = doc.string(model, "type");
  std::vector<std::string> obs = observables;
  std::function<std::optional<Vector>(const std::string&)> special = [](const std::string&) {
    return std::optional<Vector>();
  };
  // per-model scalar observables: name -> f(t, state)
  std::vector<std::pair<std::string, std::function<double(double, const Vector&)>>> named;
  std::vector<std::string> expanded;  // names that expand into several columns
  std::function<void(std::vector<std::string>&, std::vector<double>&, double, const Vector&)>
      expander;

  try {
    if (mi.type == "two_level") {
      models::TwoLevelParams p{doc.number(model, "delta"), doc.number(model, "V"),
                               doc.number(model, "omega")};
      mi.generator = models::two_level_generator(p);
      if (obs.empty()) obs = {"population:1", "transition_exact"};
      mi.initial = make_initial(doc, initial, 2, seed, special);
      const Vector v0 = mi.initial;
      const Matrix u0inv = models::two_level_exact(p, t0).adjoint();
      mi.exact_state = [p, v0, u0inv](double t) -> Vector {
        return models::two_level_exact(p, t) * (u0inv * v0);
      };
      auto exact = mi.exact_state;
      named.emplace_back("transition_exact",
                         [exact](double t, const Vector&) { return std::norm(exact(t)[1]); });
    } else if (mi.type == "spin_chain") {
      models::SpinChainParams p;
      p.spins = static_cast<int>(doc.integer(model, "spins"));
      p.delta = doc.number(model, "delta");
      p.J = doc.number(model, "J", 0.0);
      const Json& pulse = doc.object(model, "pulse");
      p.pulse.V = doc.number(pulse, "V");
      p.pulse.tau = doc.number(pulse, "tau");
      p.pulse.omega = doc.number(pulse, "omega");
      p.pulse.centers.clear();
      if (pulse.contains("centers")) {
        if (!pulse["centers"].is_array()) doc.fail("centers", "'centers' must be an array");
        for (const auto& c : pulse["centers"]) p.pulse.centers.push_back(c.get<double>());
      } else {
        const double spacing = doc.number(pulse, "spacing");
        const long count = doc.integer(pulse, "count");
        if (count < 1) doc.fail("count", "'count' must be >= 1");
        for (long k = 0; k < count; ++k) p.pulse.centers.push_back(k * spacing);
      }
      const std::string assembly = doc.string(model, "assembly", "auto");
      models::Assembly a = models::Assembly::Auto;
      if (assembly == "sparse")
        a = models::Assembly::Sparse;
      else if (assembly == "matrix_free")
        a = models::Assembly::MatrixFree;
      else if (assembly != "auto")
        doc.fail("assembly", "assembly must be auto, sparse or matrix_free");
      mi.generator = models::spin_chain(p, a);
      const int S = p.spins;
      special = [S](const std::string& type) -> std::optional<Vector> {
        if (type == "all_down") return models::all_down(S);
        return std::nullopt;
      };
      if (obs.empty()) obs = {"sigma_z_bar"};
      mi.initial = make_initial(doc, initial.is_null() ? Json{{"type", "all_down"}} : initial,
                                1 << S, seed, special);
      named.emplace_back("sigma_z_bar",
                         [S](double, const Vector& v) { return models::sigma_z_bar(v, S); });
      if (S == 1 && p.pulse.centers.size() == 1 && mi.initial.size() == 2 &&
          std::norm(mi.initial[1]) == 1.0)
        mi.exact_final_population =
            models::rosen_zener_pinf(p.delta, p.pulse.omega, p.pulse.V, p.pulse.tau);
    } else if (mi.type == "oscillator" || mi.type == "mathieu") {
      models::OscillatorParams p;
      p.drive = doc.number(model, "drive", 1.0);
      if (model.contains("x")) {
        p.omega0 = std::sqrt(doc.number(model, "x")) * p.drive;
        p.xi = doc.number(model, "y") * p.drive * p.drive;
      } else {
        p.omega0 = doc.number(model, "omega0");
        p.xi = doc.number(model, "xi");
      }
      if (mi.type == "mathieu") {
        mi.generator = models::mathieu_classical(p);
        if (obs.empty()) obs = {"q", "qdot"};
        if (initial.is_null()) doc.fail("initial", "mathieu needs an explicit initial vector");
        mi.initial = make_initial(doc, initial, 2, seed, special);
        named.emplace_back("q", [](double, const Vector& v) { return v[0].real(); });
        named.emplace_back("qdot", [](double, const Vector& v) { return v[1].real(); });
      } else {
        p.levels = static_cast<int>(doc.integer(model, "levels", 50));
        mi.generator = models::quantum_oscillator(p);
        special = [p, &doc, &initial](const std::string& type) -> std::optional<Vector> {
          if (type != "coherent") return std::nullopt;
          auto c = models::coherent_state(doc.number(initial, "q"), doc.number(initial, "p", 0.0),
                                          p);
          if (c.flagged)
            doc.fail("coherent", "coherent state loses " + format_double(c.weight_loss) +
                                     " of its weight to the Fock truncation");
          return c.state;
        };
        if (obs.empty()) obs = {"q", "p", "leakage"};
        mi.initial = make_initial(doc, initial, p.levels, seed, special);
        const double w0 = p.omega0;
        named.emplace_back("q", [w0](double, const Vector& v) {
          return models::position_expectation(v, w0);
        });
        named.emplace_back("p", [w0](double, const Vector& v) {
          return models::momentum_expectation(v, w0);
        });
        named.emplace_back("leakage", [](double, const Vector& v) {
          return models::truncation_leakage(v).top_occupation;
        });
      }
    } else if (mi.type == "hydrogen") {
      models::HydrogenParams p;
      p.n_max = static_cast<int>(doc.integer(model, "n_max"));
      if (model.contains("field")) {
        const Json& f = doc.object(model, "field");
        p.field.amplitude = doc.number(f, "amplitude", p.field.amplitude);
        p.field.frequency = doc.number(f, "frequency", p.field.frequency);
        p.field.a = doc.number(f, "a", p.field.a);
        p.field.b = doc.number(f, "b", p.field.b);
        p.field.t0 = doc.number(f, "t0", p.field.t0);
      }
      mi.generator = models::hydrogen(p);
      if (obs.empty()) obs = {"P_n"};
      mi.initial = make_initial(doc, initial, mi.generator->dimension(), seed, special);
      const int nmax = p.n_max;
      expanded.push_back("P_n");
      expander = [nmax](std::vector<std::string>& cols, std::vector<double>& vals, double,
                        const Vector& v) {
        const auto pn = models::shell_populations(v, nmax);
        for (int n = 1; n <= nmax; ++n) {
          cols.push_back("P_" + std::to_string(n));
          vals.push_back(pn[n - 1]);
        }
      };
    } else {
      doc.fail("type", "unknown model type '" + mi.type + "'");
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    doc.fail("model", e.what());
  }

  std::vector<std::string> allowed = expanded;
  for (const auto& [n, f] : named) allowed.push_back(n);
  validate_observables(doc, obs, allowed, mi.generator->dimension());

  // column names from a probe evaluation
  for (const auto& o : obs) {
    if (std::find(expanded.begin(), expanded.end(), o) != expanded.end()) {
      std::vector<double> dummy;
      expander(mi.columns, dummy, t0, mi.initial);
    } else {
      mi.columns.push_back(o);
    }
  }
  mi.observe = [obs, named, expanded, expander](double t, const Vector& v) {
    std::vector<double> out;
    std::vector<std::string> cols;
    for (const auto& o : obs) {
      if (o.rfind("population:", 0) == 0) {
        out.push_back(population(v, o));
      } else if (std::find(expanded.begin(), expanded.end(), o) != expanded.end()) {
        expander(cols, out, t, v);
      } else {
        for (const auto& [n, f] : named)
          if (n == o) out.push_back(f(t, v));
      }
    }
    return out;
  };
  return mi;
}

void run_pool(int count, int workers, const std::function<void(int)>& job) {
  workers = std::max(1, std::min(workers, count));
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    while (true) {
      {
        std::lock_guard<std::mutex> lock(mu);
        if (error) return;
      }
      const int i = next++;
      if (i >= count) return;
      try {
        job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace cfet::cli
