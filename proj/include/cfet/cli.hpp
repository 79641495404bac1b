#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cfet/expm/expm.hpp"
#include "cfet/generator.hpp"
#include "cfet/scheme.hpp"
#include "cfet/stepper.hpp"

namespace cfet::cli {

using Json = nlohmann::ordered_json;

// Invalid configuration or arguments (exit 1). what() carries "config:LINE: ..." when the
// offending key can be located in the document.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};
// A verification run found a failing check (exit 3).
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Parsed document plus its source text, for line-anchored diagnostics.
class ConfigDocument {
 public:
  static ConfigDocument parse(const std::string& text, const std::string& source = "config");
  static ConfigDocument load(const std::string& path);

  const Json& root() const { return root_; }
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;
  int line_of(const std::string& key) const;

  // Typed accessors that fail with the line of `key`.
  double number(const Json& obj, const std::string& key) const;
  double number(const Json& obj, const std::string& key, double fallback) const;
  long integer(const Json& obj, const std::string& key) const;
  long integer(const Json& obj, const std::string& key, long fallback) const;
  std::string string(const Json& obj, const std::string& key) const;
  std::string string(const Json& obj, const std::string& key, const std::string& fallback) const;
  const Json& object(const Json& obj, const std::string& key) const;

 private:
  Json root_;
  std::string text_;
  std::string source_;
};

// Model instance with its initial state, observables and oracle.
struct ModelInstance {
  std::string type;
  std::shared_ptr<const Generator> generator;
  Vector initial;
  std::vector<std::string> columns;  // observable column names
  std::function<std::vector<double>(double t, const Vector& lab_state)> observe;
  // Closed-form lab-frame state at t, when the model has one.
  std::function<Vector(double t)> exact_state;
  // Closed-form final transition probability (Rosen-Zener single spin), compared with the
  // population of basis state 0 at the end.
  std::optional<double> exact_final_population;
};

// model: the "model" object; initial: the "initial" object (may be null); observables list.
ModelInstance build_model(const ConfigDocument& doc, const Json& model, const Json& initial,
                          const std::vector<std::string>& observables, double t0,
                          std::uint64_t seed);
// Applies "name": value overrides such as "model.delta" to a model object.
Json with_parameter(const Json& model, const std::string& path, const Json& value);

CfetScheme resolve_scheme(const ConfigDocument& doc, const Json& node, const std::string& key);
expm::ExpmBackend resolve_backend(const ConfigDocument& doc, const std::string& text,
                                  const std::string& key);

std::string format_double(double v);  // 17 significant digits

struct Options {
  std::optional<std::string> config;
  std::optional<std::string> out;
  int workers = 1;
  std::uint64_t seed = 0;
  bool seed_given = false;
  bool dump = false;
  std::optional<std::string> name;
};

int cmd_propagate(const Options& opt, std::ostream& out, std::ostream& log);
int cmd_bench(const Options& opt, std::ostream& out, std::ostream& log);
int cmd_verify(const Options& opt, std::ostream& out, std::ostream& log);
int cmd_stability(const Options& opt, std::ostream& out, std::ostream& log);
int cmd_schemes(const Options& opt, std::ostream& out, std::ostream& log);

// Runs jobs 0..count-1 on `workers` threads. The first exception is rethrown after all
// workers stop.
void run_pool(int count, int workers, const std::function<void(int)>& job);

}  // namespace cfet::cli
