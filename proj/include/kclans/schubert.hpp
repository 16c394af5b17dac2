#pragma once

// Equivariant Schubert classes on G/B, G = GL(n): restrictions to fixed
// points (Billey / Andersen-Jantzen-Soergel), Euler classes of tangent
// spaces, and expansion of point classes in the Schubert basis.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "kclans/exactalg.hpp"
#include "kclans/weyl.hpp"

namespace kclans {

// (length, lex) order on permutations
struct LengthLexLess {
  bool operator()(const Permutation& a, const Permutation& b) const {
    const int la = length(a), lb = length(b);
    if (la != lb) return la < lb;
    return a < b;
  }
};

using SchubertExpansion = std::map<Permutation, Poly, LengthLexLess>;

// xi^v(u) for every v, from one reduced word of u. Each letter either is
// skipped or extends a reduced prefix x to x s_a, contributing beta_j.
inline std::map<Permutation, Poly> billey_all(const Permutation& u, const std::vector<int>& word) {
  const int n = u.size();
  if (from_word(n, word) != u || static_cast<int>(word.size()) != length(u))
    throw Error("billey: word is not a reduced word of " + u.to_string());
  std::map<Permutation, Poly> state{{Permutation::identity(n), Poly(1L)}};
  Permutation prefix = Permutation::identity(n);
  for (int a : word) {
    const Poly beta = weight_poly(act_on_weight(prefix, Weight::simple_root(n, a)));
    std::vector<std::pair<Permutation, Poly>> grown;
    for (const auto& [x, val] : state)
      if (x(a) < x(a + 1)) grown.emplace_back(x.times_simple(a), val * beta);
    for (auto& [x, val] : grown) {
      auto [it, inserted] = state.emplace(x, val);
      if (!inserted) it->second += val;
    }
    prefix = prefix.times_simple(a);
  }
  for (auto it = state.begin(); it != state.end();) it = it->second.is_zero() ? state.erase(it) : std::next(it);
  return state;
}

inline std::map<Permutation, Poly> billey_all(const Permutation& u) { return billey_all(u, reduced_word(u)); }

inline Poly billey_xi(const Permutation& v, const Permutation& u) {
  if (v.size() != u.size()) throw Error("billey_xi: size mismatch");
  auto all = billey_all(u);
  auto it = all.find(v);
  return it == all.end() ? Poly() : it->second;
}

// Apply w0 to a polynomial in the simple roots: a_i -> -a_{n-i}.
inline Poly twist_by_w0(const Poly& f, int n) {
  Poly out;
  for (const auto& [m, c] : f.terms()) {
    Monomial t;
    for (int i = 1; i < n; ++i) t.exps[n - i - 1] = m.exps[i - 1];
    out.add_term(t, m.degree() % 2 ? Rational(-c) : c);
  }
  return out;
}

// Restriction of [Y_w]_T to the fixed point u.
inline Poly schubert_restriction(const Permutation& w, const Permutation& u) {
  const int n = w.size();
  if (u.size() != n) throw Error("schubert_restriction: size mismatch");
  const Permutation w0 = Permutation::longest(n);
  return twist_by_w0(billey_xi(w0 * w, w0 * u), n);
}

// Factors of the diagonal value: -gamma for gamma > 0 with w^-1 gamma > 0.
inline std::vector<LinearForm> schubert_diagonal_factors(const Permutation& w) {
  const int n = w.size();
  const Permutation wi = w.inverse();
  std::vector<LinearForm> out;
  for (const auto& g : positive_roots(n))
    if (act_on_weight(wi, g).is_positive_root()) out.push_back(weight_to_alpha(-g));
  return out;
}

// Weights of T_u(G/B): u applied to the negative roots.
inline std::vector<LinearForm> euler_factors(const Permutation& u) {
  std::vector<LinearForm> out;
  for (const auto& g : positive_roots(u.size())) out.push_back(weight_to_alpha(act_on_weight(u, -g)));
  return out;
}

inline Poly product_of(const std::vector<LinearForm>& fs) {
  Poly p(1L);
  for (const auto& f : fs) p *= f.to_poly();
  return p;
}

inline Poly euler_class(const Permutation& u) { return product_of(euler_factors(u)); }

// Divides by each linear factor in turn; throws when a division is inexact.
inline Poly divide_by_factors(Poly p, const std::vector<LinearForm>& fs) {
  for (const auto& f : fs) {
    auto q = p.divide_exact(f.to_poly());
    if (!q) throw InternalError("inexact division by " + f.to_string());
    p = std::move(*q);
  }
  return p;
}

// All restriction values for one n, indexed by position in a (length, lex)
// listing of S_n. Memory grows like (n!)^2; intended for n <= 6.
class SchubertTable {
public:
  explicit SchubertTable(int n) : n_(n) {
    if (n < 1 || n > 7) throw Error("Schubert tables are supported for 1 <= n <= 7");
    perms_ = all_permutations(n);
    std::sort(perms_.begin(), perms_.end(), LengthLexLess{});
    for (std::size_t k = 0; k < perms_.size(); ++k) index_.emplace(perms_[k], static_cast<int>(k));
    const Permutation w0 = Permutation::longest(n);
    above_.resize(perms_.size());
    diag_.resize(perms_.size());
    for (std::size_t k = 0; k < perms_.size(); ++k) {
      const Permutation& u = perms_[k];
      for (auto& [x, val] : billey_all(w0 * u)) {
        // x = w0 w
        above_[k].emplace_back(index_.at(w0 * x), twist_by_w0(val, n));
      }
      std::sort(above_[k].begin(), above_[k].end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      diag_[k] = schubert_diagonal_factors(u);
    }
  }

  int n() const { return n_; }
  const std::vector<Permutation>& permutations() const { return perms_; }
  int index_of(const Permutation& w) const { return index_.at(w); }
  // nonzero S_w(u) for the u at `index`, sorted by index of w (all w >= u)
  const std::vector<std::pair<int, Poly>>& row(int index) const { return above_[index]; }
  const std::vector<LinearForm>& diagonal_factors(int index) const { return diag_[index]; }
  Poly value(const Permutation& w, const Permutation& u) const {
    const int wi = index_of(w);
    for (const auto& [k, val] : above_[index_of(u)])
      if (k == wi) return val;
    return Poly();
  }

  // Solves sum_w c_w S_w(u) = r(u) for all u, top down.
  // r maps an index to the right-hand side (zero when absent).
  SchubertExpansion solve(const std::vector<Poly>& rhs) const {
    const int N = static_cast<int>(perms_.size());
    std::vector<Poly> c(N);
    for (int k = N - 1; k >= 0; --k) {
      ProductSum sum;
      sum.add(rhs[k]);
      for (const auto& [w, val] : above_[k])
        if (w != k) sum.add(c[w], val, true);
      Poly acc = sum.result();
      if (acc.is_zero()) continue;
      c[k] = divide_by_factors(std::move(acc), diag_[k]);
    }
    SchubertExpansion out;
    for (int k = 0; k < N; ++k)
      if (!c[k].is_zero()) out.emplace(perms_[k], std::move(c[k]));
    return out;
  }

  // Numeric version of `solve` at a point, for identity testing.
  std::vector<Rational> solve_at(const std::vector<Rational>& rhs, std::span<const Rational> point) const {
    const int N = static_cast<int>(perms_.size());
    std::vector<Rational> c(N);
    for (int k = N - 1; k >= 0; --k) {
      Rational acc = rhs[k];
      for (const auto& [w, val] : above_[k])
        if (w != k) acc -= c[w] * val.evaluate(point);
      Rational d = 1;
      for (const auto& f : diag_[k]) d *= f.evaluate(point);
      if (d == 0) throw Error("evaluation point lies on a root hyperplane");
      c[k] = acc / d;
    }
    return c;
  }

private:
  int n_;
  std::vector<Permutation> perms_;
  std::map<Permutation, int> index_;
  std::vector<std::vector<std::pair<int, Poly>>> above_;
  std::vector<std::vector<LinearForm>> diag_;
};

inline const SchubertTable& schubert_table(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SchubertTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<SchubertTable>(n);
  return *slot;
}

// [yB]_T = sum_w m_{yw} [Y_w]_T
inline SchubertExpansion point_class_expansion(const Permutation& y) {
  const SchubertTable& t = schubert_table(y.size());
  std::vector<Poly> rhs(t.permutations().size());
  rhs[t.index_of(y)] = euler_class(y);
  return t.solve(rhs);
}

struct PositivityReport {
  bool positive = true;
  // first offending term: monomial with its coefficient
  std::optional<std::pair<Monomial, Rational>> witness;
};

// Every coefficient a nonnegative integer.
inline PositivityReport positivity_check(const Poly& f) {
  PositivityReport r;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const Rational& c = it->second;
    if (c < 0 || c.get_den() != 1) {
      r.positive = false;
      r.witness = std::make_pair(it->first, c);
      break;
    }
  }
  return r;
}

}  // namespace kclans
