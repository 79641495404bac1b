#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfet/lie/commutator.hpp"

namespace cfet::lie {

// Legendre: leaf A_n weighs n. Length: every leaf weighs 1 (degree = leaf count).
enum class Grading { Legendre, Length };

struct HallElement {
  int generator = 0;  // > 0 for A_n
  int left = -1;      // basis indices of the bracket operands
  int right = -1;
  int degree = 0;
  int leaves = 0;
};

// Integer structure constant: one Hall coordinate of a rewritten bracket.
struct HallTerm {
  int element;
  std::int64_t coefficient;
};

class HallBasis {
 public:
  static std::shared_ptr<const HallBasis> build(int generators, int max_degree,
                                                Grading grading = Grading::Legendre);

  int generators() const { return generators_; }
  int max_degree() const { return max_degree_; }
  Grading grading() const { return grading_; }
  int size() const { return static_cast<int>(elements_.size()); }
  const HallElement& operator[](int i) const { return elements_.at(i); }
  int degree(int i) const { return elements_[i].degree; }

  // Index of A_n, if present.
  std::optional<int> generator_index(int n) const;
  // Index of the Hall element [left, right], if that bracket is itself a Hall element.
  std::optional<int> find_pair(int left, int right) const;
  std::optional<int> find(const Commutator& c) const;

  Commutator commutator(int i) const;
  std::string str(int i) const { return commutator(i).str(); }
  std::vector<int> leaves(int i) const;
  std::string dump() const;

  // Hall coordinates of [h_i, h_j]. Empty when the bracket vanishes or exceeds max_degree.
  std::vector<HallTerm> bracket(int i, int j) const;

  bool same_as(const HallBasis& other) const {
    return generators_ == other.generators_ && max_degree_ == other.max_degree_ &&
           grading_ == other.grading_;
  }

 private:
  HallBasis(int generators, int max_degree, Grading grading);
  void enumerate();
  void tabulate();
  const std::vector<HallTerm>& rewrite(int i, int j);

  int generators_;
  int max_degree_;
  Grading grading_;
  std::vector<HallElement> elements_;
  std::map<std::pair<int, int>, int> pair_index_;
  // table_[i * size + j] for i < j; filled eagerly so the basis is immutable afterwards.
  std::vector<std::vector<HallTerm>> table_;
  std::vector<char> done_;
};

using BasisPtr = std::shared_ptr<const HallBasis>;

// Time-reversal parity: odd Legendre degree.
bool is_odd(const HallBasis& basis, int i);
// Largest leaf index does not exceed 1 + the sum of the others.
bool satisfies_leaf_bound(const HallBasis& basis, int i);

// Elements that produce order conditions for an order-N scheme: odd degree <= N over
// A_1..A_{N/2}. Sorted in Hall order.
std::vector<int> filter_relevant(const HallBasis& basis, int N);
// Elements of degree N+1 over A_1..A_{N/2+1}: the leading error term of an order-N scheme.
std::vector<int> filter_error_terms(const HallBasis& basis, int N);

}  // namespace cfet::lie
