#pragma once

// Type A Weyl group combinatorics: permutations of 1..n in one-line
// notation, weights in the epsilon basis, parabolic subgroups and the
// Demazure product.

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "kclans/error.hpp"

namespace kclans {

class Permutation {
public:
  Permutation() = default;

  explicit Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
    std::vector<bool> seen(entries_.size() + 1, false);
    for (int e : entries_) {
      if (e < 1 || e > static_cast<int>(entries_.size()) || seen[e])
        throw Error("not a permutation of 1..n: " + to_string());
      seen[e] = true;
    }
  }

  static Permutation identity(int n) {
    std::vector<int> e(n);
    std::iota(e.begin(), e.end(), 1);
    return Permutation(std::move(e), Unchecked{});
  }

  // s_i = (i, i+1), 1 <= i < n
  static Permutation simple(int n, int i) {
    check_simple_index(n, i);
    auto w = identity(n);
    std::swap(w.entries_[i - 1], w.entries_[i]);
    return w;
  }

  static Permutation longest(int n) {
    std::vector<int> e(n);
    for (int i = 0; i < n; ++i) e[i] = n - i;
    return Permutation(std::move(e), Unchecked{});
  }

  int size() const { return static_cast<int>(entries_.size()); }
  // one-based: w(i)
  int operator()(int i) const { return entries_[i - 1]; }
  const std::vector<int>& entries() const { return entries_; }

  Permutation inverse() const {
    std::vector<int> inv(entries_.size());
    for (int i = 0; i < size(); ++i) inv[entries_[i] - 1] = i + 1;
    return Permutation(std::move(inv), Unchecked{});
  }

  // w * s_i: swaps positions i and i+1.
  Permutation times_simple(int i) const {
    check_simple_index(size(), i);
    Permutation w = *this;
    std::swap(w.entries_[i - 1], w.entries_[i]);
    return w;
  }

  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (entries_[i] != i + 1) return false;
    return true;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(entries_[i]);
    }
    return out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
  struct Unchecked {};
  Permutation(std::vector<int> entries, Unchecked) : entries_(std::move(entries)) {}

  static void check_simple_index(int n, int i) {
    if (i < 1 || i >= n)
      throw Error("simple reflection index " + std::to_string(i) + " out of range for n=" + std::to_string(n));
  }

  std::vector<int> entries_;
};

inline std::ostream& operator<<(std::ostream& os, const Permutation& w) {
  return os << '(' << w.to_string() << ')';
}

struct PermutationHash {
  std::size_t operator()(const Permutation& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (int e : w.entries()) h = (h ^ static_cast<std::size_t>(e)) * 0x100000001b3ull;
    return h;
  }
};

// (u o v)(i) = u(v(i))
inline Permutation compose(const Permutation& u, const Permutation& v) {
  if (u.size() != v.size())
    throw Error("compose: size mismatch " + std::to_string(u.size()) + " vs " + std::to_string(v.size()));
  std::vector<int> out(u.size());
  for (int i = 1; i <= u.size(); ++i) out[i - 1] = u(v(i));
  return Permutation(std::move(out));
}

inline Permutation operator*(const Permutation& u, const Permutation& v) { return compose(u, v); }

inline int length(const Permutation& w) {
  int inv = 0;
  const auto& e = w.entries();
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (e[i] > e[j]) ++inv;
  return inv;
}

// A set of simple reflection indices {i : 1 <= i < n}. n is not stored;
// callers validate against their ambient rank.
class SimpleReflectionSet {
public:
  SimpleReflectionSet() = default;
  SimpleReflectionSet(std::initializer_list<int> indices) {
    for (int i : indices) insert(i);
  }
  explicit SimpleReflectionSet(std::span<const int> indices) {
    for (int i : indices) insert(i);
  }
  static SimpleReflectionSet all(int n) {
    SimpleReflectionSet s;
    for (int i = 1; i < n; ++i) s.insert(i);
    return s;
  }

  void insert(int i) {
    if (i < 1 || i > 63) throw Error("simple reflection index out of range: " + std::to_string(i));
    mask_ |= bit(i);
  }
  void erase(int i) { mask_ &= ~bit(i); }
  bool contains(int i) const { return i >= 1 && i <= 63 && (mask_ & bit(i)) != 0; }
  int size() const { return std::popcount(mask_); }
  bool empty() const { return mask_ == 0; }
  int max_index() const { return mask_ == 0 ? 0 : 63 - std::countl_zero(mask_); }

  std::vector<int> indices() const {
    std::vector<int> out;
    for (int i = 1; i <= 63; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  // throws unless every index lies in 1..n-1
  void validate(int n) const {
    if (max_index() >= n)
      throw Error("simple reflection s" + std::to_string(max_index()) + " invalid for n=" + std::to_string(n));
  }

  // pairwise |i - j| >= 2
  bool commuting() const { return (mask_ & (mask_ << 1)) == 0; }

  SimpleReflectionSet operator&(SimpleReflectionSet o) const { return from_mask(mask_ & o.mask_); }
  SimpleReflectionSet operator|(SimpleReflectionSet o) const { return from_mask(mask_ | o.mask_); }
  SimpleReflectionSet operator-(SimpleReflectionSet o) const { return from_mask(mask_ & ~o.mask_); }
  bool subset_of(SimpleReflectionSet o) const { return (mask_ & ~o.mask_) == 0; }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (int i : indices()) {
      if (!first) out += ',';
      out += std::to_string(i);
      first = false;
    }
    return out + "}";
  }

  friend bool operator==(SimpleReflectionSet, SimpleReflectionSet) = default;
  friend auto operator<=>(SimpleReflectionSet, SimpleReflectionSet) = default;

private:
  static std::uint64_t bit(int i) { return std::uint64_t{1} << i; }
  static SimpleReflectionSet from_mask(std::uint64_t m) {
    SimpleReflectionSet s;
    s.mask_ = m;
    return s;
  }
  std::uint64_t mask_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, SimpleReflectionSet s) { return os << s.to_string(); }

// Right descent set {i : w(i) > w(i+1)}.
inline SimpleReflectionSet descent_set(const Permutation& w) {
  SimpleReflectionSet d;
  for (int i = 1; i < w.size(); ++i)
    if (w(i) > w(i + 1)) d.insert(i);
  return d;
}

// Tableau (rank matrix) criterion: u <= w iff for all i, j
// #{a <= i : u(a) >= j} <= #{a <= i : w(a) >= j}.
inline bool bruhat_leq(const Permutation& u, const Permutation& w) {
  const int n = u.size();
  if (w.size() != n) throw Error("bruhat_leq: size mismatch");
  std::vector<int> cu(n + 2, 0), cw(n + 2, 0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= u(i); ++j) ++cu[j];
    for (int j = 1; j <= w(i); ++j) ++cw[j];
    for (int j = 1; j <= n; ++j)
      if (cu[j] > cw[j]) return false;
  }
  return true;
}

// Strips the leftmost descent repeatedly; the word is read left to right,
// so the product s_{a1} ... s_{al} equals w.
inline std::vector<int> reduced_word(const Permutation& w) {
  std::vector<int> rev;
  Permutation cur = w;
  for (;;) {
    int i = 1;
    while (i < cur.size() && cur(i) < cur(i + 1)) ++i;
    if (i >= cur.size()) break;
    rev.push_back(i);
    cur = cur.times_simple(i);
  }
  return {rev.rbegin(), rev.rend()};
}

inline Permutation from_word(int n, std::span<const int> word) {
  auto w = Permutation::identity(n);
  for (int i : word) w = w.times_simple(i);
  return w;
}

// Demazure product w * s_i.
inline Permutation monoid_star(const Permutation& w, int i) {
  return w(i) < w(i + 1) ? w.times_simple(i) : w;
}

struct ParabolicData {
  std::vector<Permutation> elements;       // W_I, sorted by (length, lex)
  Permutation longest;                     // w_I
  std::vector<Permutation> min_coset_reps; // W^I, sorted lexicographically
};

inline void sort_by_length(std::vector<Permutation>& ws) {
  std::vector<std::pair<int, Permutation>> keyed;
  keyed.reserve(ws.size());
  for (auto& w : ws) keyed.emplace_back(length(w), std::move(w));
  std::sort(keyed.begin(), keyed.end());
  ws.clear();
  for (auto& [l, w] : keyed) ws.push_back(std::move(w));
}

inline std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  std::vector<int> e(n);
  std::iota(e.begin(), e.end(), 1);
  do {
    out.emplace_back(e);
  } while (std::next_permutation(e.begin(), e.end()));
  return out;
}

// Elements of W_I by closure under right multiplication by s_i, i in I.
inline std::vector<Permutation> parabolic_subgroup(SimpleReflectionSet I, int n) {
  I.validate(n);
  std::set<Permutation> seen{Permutation::identity(n)};
  std::vector<Permutation> frontier{Permutation::identity(n)};
  const auto gens = I.indices();
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& w : frontier)
      for (int i : gens) {
        auto ws = w.times_simple(i);
        if (seen.insert(ws).second) next.push_back(std::move(ws));
      }
    frontier = std::move(next);
  }
  std::vector<Permutation> out(seen.begin(), seen.end());
  sort_by_length(out);
  return out;
}

inline ParabolicData parabolic_data(SimpleReflectionSet I, int n) {
  ParabolicData d;
  d.elements = parabolic_subgroup(I, n);
  d.longest = d.elements.back();
  for (auto& w : all_permutations(n)) {
    bool minimal = true;
    for (int i : I.indices())
      if (w(i) > w(i + 1)) { minimal = false; break; }
    if (minimal) d.min_coset_reps.push_back(std::move(w));
  }
  return d;
}

inline Permutation longest_element(SimpleReflectionSet I, int n) {
  I.validate(n);
  // Reverse each maximal run of consecutive indices.
  auto w = Permutation::identity(n);
  std::vector<int> e = w.entries();
  int i = 1;
  while (i < n) {
    if (!I.contains(i)) { ++i; continue; }
    int j = i;
    while (j < n && I.contains(j)) ++j;
    std::reverse(e.begin() + (i - 1), e.begin() + j);
    i = j;
  }
  return Permutation(std::move(e));
}

// Weight sum c_i eps_i.
struct Weight {
  std::vector<int> coords;

  static Weight zero(int n) { return {std::vector<int>(n, 0)}; }
  // eps_i - eps_j
  static Weight root(int n, int i, int j) {
    Weight w = zero(n);
    w.coords[i - 1] += 1;
    w.coords[j - 1] -= 1;
    return w;
  }
  static Weight simple_root(int n, int i) { return root(n, i, i + 1); }

  int size() const { return static_cast<int>(coords.size()); }
  bool is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
  }
  bool is_root() const {
    int plus = 0, minus = 0;
    for (int c : coords) {
      if (c == 1) ++plus;
      else if (c == -1) ++minus;
      else if (c != 0) return false;
    }
    return plus == 1 && minus == 1;
  }
  // positive root: the +1 coordinate precedes the -1
  bool is_positive_root() const {
    if (!is_root()) return false;
    for (int c : coords) {
      if (c == 1) return true;
      if (c == -1) return false;
    }
    return false;
  }
  Weight operator-() const {
    Weight w = *this;
    for (int& c : w.coords) c = -c;
    return w;
  }
  std::string to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
    os << ']';
    return os.str();
  }

  friend bool operator==(const Weight&, const Weight&) = default;
  friend auto operator<=>(const Weight&, const Weight&) = default;
};

// w . eps_i = eps_{w(i)}
inline Weight act_on_weight(const Permutation& w, const Weight& lambda) {
  if (w.size() != lambda.size()) throw Error("act_on_weight: size mismatch");
  Weight out = Weight::zero(w.size());
  for (int i = 1; i <= w.size(); ++i) out.coords[w(i) - 1] = lambda.coords[i - 1];
  return out;
}

inline std::vector<Weight> positive_roots(int n) {
  std::vector<Weight> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) out.push_back(Weight::root(n, i, j));
  return out;
}

inline std::vector<Weight> all_roots(int n) {
  std::vector<Weight> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) out.push_back(Weight::root(n, i, j));
  return out;
}

// Positive roots of the Levi factor of P_J: eps_i - eps_j with i < j and
// every s_k (i <= k < j) in J.
inline std::vector<Weight> levi_positive_roots(SimpleReflectionSet J, int n) {
  std::vector<Weight> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n && J.contains(j - 1); ++j) out.push_back(Weight::root(n, i, j));
  return out;
}

// Roots of k = gl(p) + gl(q): both indices <= p or both > p.
inline std::vector<Weight> roots_of_K(int n, int p) {
  if (p < 0 || p > n) throw Error("roots_of_K: need 0 <= p <= n");
  std::vector<Weight> out;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j && ((i <= p) == (j <= p))) out.push_back(Weight::root(n, i, j));
  return out;
}

// Accepts "2,4,1,3", "(2,4,1,3)", "(24|13)"; bars are ignored.
inline Permutation parse_permutation(std::string_view text) {
  std::vector<int> entries;
  std::string token;
  const bool has_comma = text.find(',') != std::string_view::npos;
  auto flush = [&] {
    if (!token.empty()) {
      entries.push_back(std::stoi(token));
      token.clear();
    }
  };
  for (char c : text) {
    if (c == '(' || c == ')' || c == ' ' || c == '\t') continue;
    if (c == '|' || c == ',') { flush(); continue; }
    if (c < '0' || c > '9') throw Error("bad character in permutation: " + std::string(text));
    token += c;
    if (!has_comma) flush();
  }
  flush();
  return Permutation(std::move(entries));
}

}  // namespace kclans
