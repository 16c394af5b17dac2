#pragma once

// Closure order on K-orbits of signature (p, q).
//
// For a non-closed v pick a descent s with v = u * s. Then
// X_v = pi^{-1}(pi(X_u)) for pi : G/B -> G/P_s, and two orbits have the same
// image in G/P_s iff x * s = y * s. So
//   below(v) = { w : w * s in { y * s : y in below(u) } }.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kclans/clan.hpp"
#include "kclans/error.hpp"

namespace kclans {

class Bitset {
public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  std::size_t size() const { return n_; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  Bitset operator&(const Bitset& o) const {
    Bitset r = *this;
    for (std::size_t k = 0; k < words_.size(); ++k) r.words_[k] &= o.words_[k];
    return r;
  }
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      std::uint64_t w = words_[k];
      while (w) {
        const int b = std::countr_zero(w);
        f(k * 64 + static_cast<std::size_t>(b));
        w &= w - 1;
      }
    }
  }
  friend bool operator==(const Bitset&, const Bitset&) = default;

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

class OrbitPoset {
public:
  OrbitPoset(int p, int q) : p_(p), q_(q), clans_(enumerate_clans(p, q)) {
    const int N = static_cast<int>(clans_.size());
    const int n = p + q;
    for (int k = 0; k < N; ++k) index_.emplace(clans_[k], k);
    act_.assign(N, std::vector<int>(n, 0));
    dims_.resize(N);
    for (int k = 0; k < N; ++k) {
      dims_[k] = orbit_dimension(clans_[k]);
      for (int i = 1; i < n; ++i) act_[k][i] = index_.at(monoid_act(clans_[k], i));
    }
    std::vector<int> order(N);
    for (int k = 0; k < N; ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dims_[a] < dims_[b]; });
    below_.assign(N, Bitset(N));
    for (int k : order) below_[k] = compute_below(k);
  }

  int p() const { return p_; }
  int q() const { return q_; }
  int size() const { return static_cast<int>(clans_.size()); }
  const std::vector<Clan>& clans() const { return clans_; }
  const Clan& clan(int k) const { return clans_[k]; }
  int dimension(int k) const { return dims_[k]; }

  int index_of(const Clan& c) const {
    auto it = index_.find(c);
    if (it == index_.end())
      throw Error("clan " + c.to_string() + " not of signature (" + std::to_string(p_) + "," + std::to_string(q_) + ")");
    return it->second;
  }

  // X_y subset X_v
  bool leq(const Clan& y, const Clan& v) const { return below_[index_of(v)].test(index_of(y)); }
  bool leq(int y, int v) const { return below_[v].test(y); }

  std::vector<int> below(int v) const {
    std::vector<int> out;
    below_[v].for_each([&](std::size_t k) { out.push_back(static_cast<int>(k)); });
    return out;
  }
  std::vector<Clan> below(const Clan& v) const {
    std::vector<Clan> out;
    for (int k : below(index_of(v))) out.push_back(clans_[k]);
    return out;
  }

  // Covers y < v with nothing strictly between.
  std::vector<std::pair<int, int>> covers_within(const std::vector<int>& nodes) const {
    std::vector<std::pair<int, int>> out;
    for (int v : nodes)
      for (int y : nodes) {
        if (y == v || !leq(y, v)) continue;
        bool cover = true;
        for (int z : nodes)
          if (z != y && z != v && leq(y, z) && leq(z, v)) { cover = false; break; }
        if (cover) out.emplace_back(y, v);
      }
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  Bitset compute_below(int k) {
    const Clan& v = clans_[k];
    const int N = size();
    Bitset result(N);
    auto d = find_descent(v);
    if (!d) {
      result.set(k);
      return result;
    }
    const int s = d->index;
    bool first = true;
    for (const Clan& u : d->predecessors) {
      const int ui = index_of(u);
      if (act_[ui][s] != k) throw InternalError("descent predecessor does not act to " + v.to_string());
      Bitset images(N);
      below_[ui].for_each([&](std::size_t y) { images.set(static_cast<std::size_t>(act_[y][s])); });
      Bitset cur(N);
      for (int w = 0; w < N; ++w)
        if (images.test(static_cast<std::size_t>(act_[w][s]))) cur.set(w);
      if (first) {
        result = std::move(cur);
        first = false;
      } else if (!(result == cur)) {
        throw InternalError("closure order depends on the choice of predecessor of " + v.to_string());
      }
    }
    return result;
  }

  int p_, q_;
  std::vector<Clan> clans_;
  std::map<Clan, int> index_;
  std::vector<std::vector<int>> act_;
  std::vector<int> dims_;
  std::vector<Bitset> below_;
};

// One-shot comparison; builds the whole poset for the signature.
inline bool closure_leq(const Clan& y, const Clan& v) {
  if (y.p() != v.p() || y.q() != v.q()) throw Error("closure_leq: signatures differ");
  return OrbitPoset(v.p(), v.q()).leq(y, v);
}

}  // namespace kclans
