#include "cfet/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <stdexcept>

namespace cfet {

namespace {

const Coefficient kZero{};

}  // namespace

CfetScheme::CfetScheme(std::string name, int order, std::vector<std::vector<Coefficient>> f,
                       bool symmetric)
    : name_(std::move(name)), order_(order), f_(std::move(f)), symmetric_(symmetric) {
  if (order_ < 2 || order_ % 2 != 0)
    throw std::invalid_argument("scheme '" + name_ + "': order must be even and >= 2");
  if (f_.empty()) throw std::invalid_argument("scheme '" + name_ + "': no stages");
  for (const auto& row : f_) columns_ = std::max(columns_, static_cast<int>(row.size()));
  if (columns_ == 0) throw std::invalid_argument("scheme '" + name_ + "': empty rows");
  for (auto& row : f_) row.resize(columns_, Coefficient(0));
}

const Coefficient& CfetScheme::f(int i, int n) const {
  if (i < 1 || i > stages()) throw std::out_of_range("stage index out of range");
  if (n < 1) throw std::out_of_range("Legendre index must be >= 1");
  if (n > columns_) return kZero;
  return f_[i - 1][n - 1];
}

bool CfetScheme::exact() const {
  for (const auto& row : f_)
    for (const auto& c : row)
      if (!c.is_exact()) return false;
  return true;
}

int CfetScheme::highest_index() const {
  int top = 1;
  for (const auto& row : f_)
    for (int n = 1; n <= columns_; ++n)
      if (row[n - 1].value != 0.0) top = std::max(top, n);
  return top;
}

int CfetScheme::quadrature_points() const { return std::max(order_ / 2, highest_index()); }

CfetScheme symmetric_scheme(std::string name, int order, int stages,
                            std::vector<std::vector<Coefficient>> leading_rows) {
  const int lead = (stages + 1) / 2;
  if (static_cast<int>(leading_rows.size()) != lead)
    throw std::invalid_argument("scheme '" + name + "': expected " + std::to_string(lead) +
                                " leading rows");
  std::vector<std::vector<Coefficient>> rows = leading_rows;
  if (stages % 2 == 1) {
    const auto& center = rows.back();
    for (std::size_t n = 2; n <= center.size(); n += 2)
      if (center[n - 1].value != 0.0)
        throw std::invalid_argument("scheme '" + name +
                                    "': center row must vanish on even Legendre indices");
  }
  for (int i = stages / 2; i >= 1; --i) {
    std::vector<Coefficient> mirrored = leading_rows[i - 1];
    for (std::size_t n = 2; n <= mirrored.size(); n += 2) mirrored[n - 1] = -mirrored[n - 1];
    rows.push_back(std::move(mirrored));
  }
  return CfetScheme(std::move(name), order, std::move(rows), true);
}

double symmetry_defect(const CfetScheme& scheme) {
  double worst = 0.0;
  const int s = scheme.stages();
  for (int i = 1; i <= s; ++i)
    for (int n = 1; n <= scheme.columns(); ++n) {
      double sign = n % 2 == 1 ? 1.0 : -1.0;
      worst = std::max(worst, std::abs(scheme.value(s - i + 1, n) - sign * scheme.value(i, n)));
    }
  return worst;
}

double sum_rule_defect(const CfetScheme& scheme) {
  double sum = 0.0;
  for (int i = 1; i <= scheme.stages(); ++i) sum += scheme.value(i, 1);
  return sum - 1.0;
}

std::string dump_scheme(const CfetScheme& scheme) {
  nlohmann::ordered_json doc;
  doc["name"] = scheme.name();
  doc["order"] = scheme.order();
  doc["stages"] = scheme.stages();
  doc["symmetric"] = scheme.symmetric();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : scheme.rows()) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& c : row) {
      if (c.exact)
        r.push_back(c.exact->get_str());
      else
        r.push_back(c.value);
    }
    rows.push_back(std::move(r));
  }
  doc["f"] = std::move(rows);
  return doc.dump();
}

CfetScheme load_scheme(const std::string& document) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(document);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("scheme document: ") + e.what());
  }
  for (const char* key : {"name", "order", "stages", "symmetric", "f"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("scheme document: missing field '") + key + "'");
  std::string name = doc["name"].get<std::string>();
  int order = doc["order"].get<int>();
  int stages = doc["stages"].get<int>();
  bool symmetric = doc["symmetric"].get<bool>();
  const auto& f = doc["f"];
  if (!f.is_array() || static_cast<int>(f.size()) != stages)
    throw std::invalid_argument("scheme '" + name + "': f must have " + std::to_string(stages) +
                                " rows");
  std::vector<std::vector<Coefficient>> rows;
  for (const auto& row : f) {
    if (!row.is_array()) throw std::invalid_argument("scheme '" + name + "': row is not an array");
    std::vector<Coefficient> r;
    for (const auto& c : row) {
      if (c.is_string())
        r.emplace_back(parse_rational(c.get<std::string>()));
      else if (c.is_number())
        r.emplace_back(c.get<double>());
      else
        throw std::invalid_argument("scheme '" + name + "': coefficient must be number or \"p/q\"");
    }
    rows.push_back(std::move(r));
  }
  CfetScheme scheme(name, order, std::move(rows), symmetric);
  double defect = sum_rule_defect(scheme);
  if (std::abs(defect) > 1e-12)
    throw std::invalid_argument("scheme '" + name + "': sum rule violated, sum_i f_i1 - 1 = " +
                                std::to_string(defect));
  if (symmetric && symmetry_defect(scheme) > 1e-12)
    throw std::invalid_argument("scheme '" + name + "': marked symmetric but rows do not mirror");
  return scheme;
}

}  // namespace cfet
