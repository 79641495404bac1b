#include <algorithm>
#include <functional>
#include <regex>
#include <stdexcept>

#include "cfet/magnus/magnus.hpp"
#include "cfet/quad/legendre.hpp"

namespace cfet::magnus {

namespace {

using lie::Commutator;

Commutator relabel(const Commutator& c, const std::vector<int>& map) {
  if (c.is_generator()) return Commutator::generator(map.at(c.index()));
  return Commutator::bracket(relabel(c.left(), map), relabel(c.right(), map));
}

// Z(t_{map[1]}, ..., t_{map[k]})
LieElement<Rational> relabel(const LieElement<Rational>& z, const std::vector<int>& map) {
  LieElement<Rational> out(z.basis_ptr());
  for (const auto& [k, c] : z.terms())
    out += c * lie::rewrite_to_hall(relabel(z.basis().commutator(k), map), z.basis_ptr());
  return out;
}

void compositions(int total, int parts, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& f) {
  if (parts == 1) {
    cur.push_back(total);
    f(cur);
    cur.pop_back();
    return;
  }
  for (int first = 1; first <= total - parts + 1; ++first) {
    cur.push_back(first);
    compositions(total - first, parts - 1, cur, f);
    cur.pop_back();
  }
}

// Permutations of 1..n increasing inside consecutive blocks of the given sizes.
std::vector<std::vector<int>> shuffles(int n, const std::vector<int>& blocks) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  std::vector<std::vector<int>> out;
  do {
    bool ok = true;
    int pos = 0;
    for (int b : blocks) {
      for (int i = pos + 1; i < pos + b; ++i)
        if (p[i - 1] > p[i]) ok = false;
      pos += b;
    }
    if (ok) out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

std::string TimeLabeledSeries::str() const {
  static const std::regex gen("A([0-9]+)");
  return std::regex_replace(value.str(), gen, "A(t_$1)");
}

TimeLabeledSeries zrec_expand(int n) {
  if (n < 1 || n > 3) throw std::invalid_argument("zrec_expand: need 1 <= n <= 3");
  auto basis = lie::HallBasis::build(n, n, lie::Grading::Length);
  // z[k] = Z_k(t_1..t_k) with label t_j carried by generator A_j.
  std::vector<LieElement<Rational>> z(n + 1, LieElement<Rational>(basis));
  z[1] = LieElement<Rational>::generator(basis, 1);
  Rational factorial(1);
  for (int k = 1; k < n; ++k) {
    // Z_{k+1}(t_0, t_1..t_k); label t_j sits on generator j+1.
    LieElement<Rational> next(basis);
    factorial = 1;
    for (int m = 1; m <= k; ++m) {
      factorial *= m + 1;
      const Rational pref = Rational(m % 2 == 1 ? 1 : -1) / factorial;
      std::vector<int> cur;
      compositions(k + 1, m + 1, cur, [&](const std::vector<int>& parts) {
        std::vector<int> blocks = parts;
        blocks[0] -= 1;
        for (const auto& pi : shuffles(k, blocks)) {
          std::vector<int> args{0};
          args.insert(args.end(), pi.begin(), pi.end());
          int pos = 0;
          LieElement<Rational> acc(basis);
          for (std::size_t j = 0; j < parts.size(); ++j) {
            std::vector<int> map(parts[j] + 1, 0);
            for (int i = 1; i <= parts[j]; ++i) map[i] = args[pos + i - 1] + 1;
            pos += parts[j];
            auto factor = relabel(z[parts[j]], map);
            acc = j == 0 ? factor : bracket(acc, factor);
          }
          next += pref * acc;
        }
      });
    }
    z[k + 1] = next;
  }
  return {n, z[n]};
}

LieElement<Rational> simplex_integral(const TimeLabeledSeries& z, const BasisPtr& basis) {
  const int n = z.n;
  const int G = basis->generators();
  LieElement<Rational> out(basis);
  for (const auto& [k, c] : z.value.terms()) {
    const Commutator tree = z.value.basis().commutator(k);
    std::vector<int> a(n + 1, 1);
    // every assignment t_j -> A_{a_j} P_{a_j - 1}(t_j)
    while (true) {
      int deg = 0;
      for (int j = 1; j <= n; ++j) deg += a[j];
      if (deg <= basis->max_degree()) {
        // innermost t_n first: I(t) = int_0^t P(s) I_next(s) ds
        Poly<Rational> inner = Poly<Rational>::constant(Rational(1));
        for (int j = n; j >= 1; --j) inner = (quad::legendre_poly(a[j] - 1) * inner).integral();
        const Rational weight = inner.at_one();
        if (sgn(weight) != 0) out += (c * weight) * lie::rewrite_to_hall(relabel(tree, a), basis);
      }
      int j = 1;
      while (j <= n && a[j] == G) a[j++] = 1;
      if (j > n) break;
      ++a[j];
    }
  }
  return out;
}

}  // namespace cfet::magnus
