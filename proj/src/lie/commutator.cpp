#include "cfet/lie/commutator.hpp"

#include <cctype>
#include <stdexcept>

namespace cfet::lie {

Commutator Commutator::generator(int n) {
  if (n < 1) throw std::invalid_argument("generator index must be >= 1");
  auto node = std::make_shared<Node>();
  node->index = n;
  node->degree = n;
  node->leaves = 1;
  return Commutator(std::move(node));
}

Commutator Commutator::bracket(Commutator left, Commutator right) {
  auto node = std::make_shared<Node>();
  node->degree = left.degree() + right.degree();
  node->leaves = left.leaf_count() + right.leaf_count();
  node->left = std::make_shared<Commutator>(std::move(left));
  node->right = std::make_shared<Commutator>(std::move(right));
  return Commutator(std::move(node));
}

const Commutator& Commutator::left() const {
  if (is_generator()) throw std::logic_error("generator has no children");
  return *node_->left;
}

const Commutator& Commutator::right() const {
  if (is_generator()) throw std::logic_error("generator has no children");
  return *node_->right;
}

std::vector<int> Commutator::leaves() const {
  if (is_generator()) return {index()};
  auto out = left().leaves();
  auto r = right().leaves();
  out.insert(out.end(), r.begin(), r.end());
  return out;
}

std::string Commutator::str() const {
  if (is_generator()) return "A" + std::to_string(index());
  return "[" + left().str() + "," + right().str() + "]";
}

bool Commutator::operator==(const Commutator& other) const {
  if (node_ == other.node_) return true;
  if (is_generator() || other.is_generator()) return index() == other.index();
  return left() == other.left() && right() == other.right();
}

namespace {

struct Parser {
  std::string_view text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("commutator parse error at offset " + std::to_string(pos) + ": " +
                                what + " in '" + std::string(text) + "'");
  }

  void expect(char c) {
    skip_space();
    if (pos >= text.size() || text[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  Commutator parse() {
    skip_space();
    if (pos >= text.size()) fail("unexpected end");
    if (text[pos] == '[') {
      ++pos;
      Commutator l = parse();
      expect(',');
      Commutator r = parse();
      expect(']');
      return Commutator::bracket(std::move(l), std::move(r));
    }
    if (text[pos] != 'A') fail("expected generator");
    ++pos;
    if (pos < text.size() && text[pos] == '_') ++pos;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) fail("missing generator index");
    return Commutator::generator(std::stoi(std::string(text.substr(start, pos - start))));
  }
};

}  // namespace

Commutator Commutator::parse(std::string_view text) {
  Parser p{text};
  Commutator c = p.parse();
  p.skip_space();
  if (p.pos != text.size()) p.fail("trailing characters");
  return c;
}

}  // namespace cfet::lie
