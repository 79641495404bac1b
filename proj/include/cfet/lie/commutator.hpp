#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace cfet::lie {

// Nested commutator of generators A_1..A_G as an immutable binary tree.
class Commutator {
 public:
  static Commutator generator(int n);
  static Commutator bracket(Commutator left, Commutator right);
  // Parses bracket notation such as "[A1,[A1,A2]]".
  static Commutator parse(std::string_view text);

  bool is_generator() const;
  int index() const;
  const Commutator& left() const;
  const Commutator& right() const;

  // Legendre grading: sum of leaf indices.
  int degree() const;
  int leaf_count() const;
  std::vector<int> leaves() const;

  std::string str() const;
  bool operator==(const Commutator& other) const;

 private:
  struct Node;
  explicit Commutator(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Commutator::Node {
  int index = 0;  // generator index, 0 for a bracket
  int degree = 0;
  int leaves = 0;
  std::shared_ptr<Commutator> left, right;
};

inline bool Commutator::is_generator() const { return node_->index > 0; }
inline int Commutator::index() const { return node_->index; }
inline int Commutator::degree() const { return node_->degree; }
inline int Commutator::leaf_count() const { return node_->leaves; }

}  // namespace cfet::lie
