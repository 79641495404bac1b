#include "cfet/lie/hall_basis.hpp"

#include "cfet/lie/lie_element.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace cfet::lie {

HallBasis::HallBasis(int generators, int max_degree, Grading grading)
    : generators_(generators), max_degree_(max_degree), grading_(grading) {}

std::shared_ptr<const HallBasis> HallBasis::build(int generators, int max_degree,
                                                  Grading grading) {
  if (generators < 1) throw std::invalid_argument("Hall basis needs at least one generator");
  if (max_degree < 1) throw std::invalid_argument("Hall basis needs max degree >= 1");
  std::shared_ptr<HallBasis> basis(new HallBasis(generators, max_degree, grading));
  basis->enumerate();
  basis->tabulate();
  return basis;
}

void HallBasis::enumerate() {
  for (int n = 1; n <= generators_; ++n) {
    int w = grading_ == Grading::Legendre ? n : 1;
    if (w <= max_degree_) elements_.push_back({n, -1, -1, w, 1});
  }
  // Lower levels are final before a level is built, so indices already encode the Hall
  // order of the operands and each level sorts lexicographically on (left, right).
  for (int level = 2; level <= max_degree_; ++level) {
    int existing = size();
    std::vector<std::pair<int, int>> found;
    for (int x = 0; x < existing; ++x) {
      for (int y = x + 1; y < existing; ++y) {
        const auto& ex = elements_[x];
        const auto& ey = elements_[y];
        if (ex.leaves + ey.leaves != level) continue;
        if (ex.degree + ey.degree > max_degree_) continue;
        if (ey.generator == 0 && ey.left > x) continue;
        found.emplace_back(x, y);
      }
    }
    std::sort(found.begin(), found.end());
    for (auto [x, y] : found) {
      pair_index_[{x, y}] = size();
      elements_.push_back(
          {0, x, y, elements_[x].degree + elements_[y].degree, level});
    }
  }
}

void HallBasis::tabulate() {
  const auto n = static_cast<std::size_t>(size());
  table_.assign(n * n, {});
  done_.assign(n * n, 0);
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (degree(i) + degree(j) <= max_degree_) rewrite(i, j);
}

const std::vector<HallTerm>& HallBasis::rewrite(int i, int j) {
  const std::size_t key = static_cast<std::size_t>(i) * size() + j;
  if (done_[key] == 1) return table_[key];
  if (done_[key] == 2) throw std::logic_error("cyclic Hall rewrite");
  done_[key] = 2;

  auto general = [this](int a, int b) -> std::vector<HallTerm> {
    if (a == b) return {};
    if (a < b) return rewrite(a, b);
    auto terms = rewrite(b, a);
    for (auto& t : terms) t.coefficient = -t.coefficient;
    return terms;
  };

  std::vector<HallTerm> result;
  const auto& hj = elements_[j];
  if (hj.generator > 0 || hj.left <= i) {
    auto idx = find_pair(i, j);
    if (!idx) throw std::logic_error("missing Hall element " + str(i) + " / " + str(j));
    result.push_back({*idx, 1});
  } else {
    // [h_i,[y,z]] = [[h_i,y],z] + [y,[h_i,z]]
    const int y = hj.left, z = hj.right;
    std::map<int, std::int64_t> acc;
    for (const auto& t : general(i, y))
      for (const auto& u : general(t.element, z)) acc[u.element] += t.coefficient * u.coefficient;
    for (const auto& t : general(i, z))
      for (const auto& u : general(y, t.element)) acc[u.element] += t.coefficient * u.coefficient;
    for (auto [e, c] : acc)
      if (c != 0) result.push_back({e, c});
  }
  table_[key] = std::move(result);
  done_[key] = 1;
  return table_[key];
}

std::vector<HallTerm> HallBasis::bracket(int i, int j) const {
  if (i == j || degree(i) + degree(j) > max_degree_) return {};
  if (i < j) return table_[static_cast<std::size_t>(i) * size() + j];
  auto terms = table_[static_cast<std::size_t>(j) * size() + i];
  for (auto& t : terms) t.coefficient = -t.coefficient;
  return terms;
}

std::optional<int> HallBasis::generator_index(int n) const {
  for (int i = 0; i < size() && elements_[i].leaves == 1; ++i)
    if (elements_[i].generator == n) return i;
  return std::nullopt;
}

std::optional<int> HallBasis::find_pair(int left, int right) const {
  auto it = pair_index_.find({left, right});
  if (it == pair_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> HallBasis::find(const Commutator& c) const {
  if (c.is_generator()) return generator_index(c.index());
  auto l = find(c.left());
  if (!l) return std::nullopt;
  auto r = find(c.right());
  if (!r) return std::nullopt;
  return find_pair(*l, *r);
}

Commutator HallBasis::commutator(int i) const {
  const auto& e = elements_.at(i);
  if (e.generator > 0) return Commutator::generator(e.generator);
  return Commutator::bracket(commutator(e.left), commutator(e.right));
}

std::vector<int> HallBasis::leaves(int i) const {
  const auto& e = elements_.at(i);
  if (e.generator > 0) return {e.generator};
  auto out = leaves(e.left);
  auto r = leaves(e.right);
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::string HallBasis::dump() const {
  std::ostringstream os;
  for (int i = 0; i < size(); ++i) os << str(i) << '\n';
  return os.str();
}

bool is_odd(const HallBasis& basis, int i) { return basis.degree(i) % 2 == 1; }

bool satisfies_leaf_bound(const HallBasis& basis, int i) {
  auto l = basis.leaves(i);
  int total = std::accumulate(l.begin(), l.end(), 0);
  int top = *std::max_element(l.begin(), l.end());
  return top <= 1 + (total - top);
}

namespace {

int max_leaf(const HallBasis& basis, int i) {
  auto l = basis.leaves(i);
  return *std::max_element(l.begin(), l.end());
}

void require_legendre_even(const HallBasis& basis, int N, int needed_degree) {
  if (basis.grading() != Grading::Legendre)
    throw std::invalid_argument("relevance filters need Legendre grading");
  if (N < 2 || N % 2 != 0) throw std::invalid_argument("order N must be even and >= 2");
  if (needed_degree > basis.max_degree())
    throw std::invalid_argument("basis degree " + std::to_string(basis.max_degree()) +
                                " too small for order " + std::to_string(N));
}

}  // namespace

std::vector<int> filter_relevant(const HallBasis& basis, int N) {
  require_legendre_even(basis, N, N);
  std::vector<int> out;
  for (int i = 0; i < basis.size(); ++i)
    if (is_odd(basis, i) && basis.degree(i) <= N && max_leaf(basis, i) <= N / 2)
      out.push_back(i);
  return out;
}

std::vector<int> filter_error_terms(const HallBasis& basis, int N) {
  require_legendre_even(basis, N, N + 1);
  std::vector<int> out;
  for (int i = 0; i < basis.size(); ++i)
    if (basis.degree(i) == N + 1 && max_leaf(basis, i) <= N / 2 + 1) out.push_back(i);
  return out;
}

LieElement<Rational> rewrite_to_hall(const Commutator& c, const BasisPtr& basis) {
  int deg = basis->grading() == Grading::Legendre ? c.degree() : c.leaf_count();
  if (deg > basis->max_degree())
    throw std::invalid_argument("degree overflow: " + c.str() + " has degree " +
                                std::to_string(deg) + " > " +
                                std::to_string(basis->max_degree()));
  if (c.is_generator()) return LieElement<Rational>::generator(basis, c.index());
  return bracket(rewrite_to_hall(c.left(), basis), rewrite_to_hall(c.right(), basis));
}

}  // namespace cfet::lie
