#pragma once

// Resolutions Z = G_{v0} x^B P_I/B -> X_v, v = v0 * w_I, for smooth v0 and
// commuting I. Fixed points are triples [x0, x1, x2] in the presentation
// G_{v0} x^{P_tau} P_tau x^B P_I/B with tau = tau(v0).

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "kclans/clan.hpp"
#include "kclans/error.hpp"
#include "kclans/orbit_poset.hpp"
#include "kclans/weyl.hpp"

namespace kclans {

// Shared, lazily built closure posets.
inline const OrbitPoset& orbit_poset(int p, int q) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<OrbitPoset>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, q}];
  if (!slot) slot = std::make_unique<OrbitPoset>(p, q);
  return *slot;
}

struct ResolutionSpec {
  Clan v0;
  BlockStructure blocks;
  SimpleReflectionSet I;
  Clan v;
  SimpleReflectionSet tau_v0;
  int n = 0, p = 0, q = 0;

  int dimension() const { return orbit_dimension(v0) + I.size(); }
};

inline ResolutionSpec build_spec(const Clan& v0, SimpleReflectionSet I) {
  ResolutionSpec s;
  s.v0 = v0;
  s.n = v0.size();
  s.p = v0.p();
  s.q = v0.q();
  I.validate(s.n);
  auto bs = is_smooth(v0);
  if (!bs) throw Error("v0 = " + v0.to_string() + " is not smooth");
  if (!I.commuting()) throw Error("I = " + I.to_string() + " contains non-commuting reflections");
  s.tau_v0 = tau(v0);
  const auto clash = I & s.tau_v0;
  if (!clash.empty()) throw Error("I meets tau(v0): " + clash.to_string() + " lies in tau(" + v0.to_string() + ")");
  for (int i : I.indices())
    if (!bs->is_boundary(i)) throw Error("s" + std::to_string(i) + " does not straddle two blocks of v0");
  s.blocks = *bs;
  s.I = I;
  s.v = monoid_act_set(v0, I);
  if (orbit_dimension(s.v) != orbit_dimension(v0) + I.size())
    throw InternalError("dimension of v0 * w_I is not l(v0) + |I| for " + v0.to_string());
  return s;
}

// ---- smallness ---------------------------------------------------------

struct SmallnessReport {
  bool small = true;
  std::vector<std::string> violations;  // pattern certificate
  std::vector<Clan> codimension_witnesses;  // y covered by v0 with l(y * w_I) < l(y) + |I|
};

namespace detail {

inline bool block_is_signs(const Clan& v, const Block& b) {
  for (int i = b.begin; i < b.end; ++i)
    if (!is_sign(v[i])) return false;
  return true;
}

// Configuration of a block seen from the boundary: its two entries nearest
// to the cut, ordered outward. Returns "aa" for a mate pair, "ae" for a
// number followed by the sign `sign`, "" otherwise.
inline std::string edge_shape(const Clan& v, int near, int far, int sign) {
  if (far < 1 || far > v.size() || is_sign(v[near])) return "";
  if (v.mate(near) == far) return "aa";
  if (v[far] == sign) return "ae";
  return "";
}

}  // namespace detail

// Pattern form of the criterion: at each cut i|i+1 with s_i in I, v0 must
// avoid e|aa, aa|e, e|ae, ea|e. In e|ae and ea|e both signs are the same;
// with opposite signs the resolution is small.
inline std::vector<std::string> smallness_violations(const ResolutionSpec& s) {
  std::vector<std::string> out;
  for (int i : s.I.indices()) {
    const Block& left = s.blocks.block_of(i);
    const Block& right = s.blocks.block_of(i + 1);
    const bool left_sign = detail::block_is_signs(s.v0, left);
    const bool right_sign = detail::block_is_signs(s.v0, right);
    const std::string r = detail::edge_shape(s.v0, i + 1, i + 2, s.v0[i]);
    const std::string l = detail::edge_shape(s.v0, i, i - 1, s.v0[i + 1]);
    auto at = [&](const std::string& pat) { return pat + " at s" + std::to_string(i); };
    if (left_sign && r == "aa") out.push_back(at("e|aa"));
    if (left_sign && r == "ae") out.push_back(at("e|ae"));
    if (right_sign && l == "aa") out.push_back(at("aa|e"));
    if (right_sign && l == "ae") out.push_back(at("ea|e"));
  }
  return out;
}

// Codimension form: l(y * w_I) = l(y) + |I| for all y <= v0 of codimension one.
inline std::vector<Clan> smallness_codimension_witnesses(const ResolutionSpec& s) {
  const OrbitPoset& poset = orbit_poset(s.p, s.q);
  const int top = orbit_dimension(s.v0);
  std::vector<Clan> bad;
  for (const Clan& y : poset.below(s.v0)) {
    if (poset.dimension(poset.index_of(y)) != top - 1) continue;
    if (orbit_dimension(monoid_act_set(y, s.I)) != top - 1 + s.I.size()) bad.push_back(y);
  }
  return bad;
}

inline SmallnessReport is_small(const ResolutionSpec& s) {
  SmallnessReport r;
  r.violations = smallness_violations(s);
  r.codimension_witnesses = smallness_codimension_witnesses(s);
  const bool by_pattern = r.violations.empty();
  const bool by_codim = r.codimension_witnesses.empty();
  if (by_pattern != by_codim)
    throw InternalError("smallness tests disagree for v0 = " + s.v0.to_string() + ", I = " + s.I.to_string());
  r.small = by_pattern;
  return r;
}

// ---- fixed points ------------------------------------------------------

// Permutations whose k-th block holds p_k values <= p; with `increasing`,
// only those sorted within each block (minimal W_tau coset representatives).
inline std::vector<Permutation> block_permutations(const BlockStructure& bs, int n, int p, bool increasing) {
  std::vector<Permutation> out;
  std::vector<int> entries(n);
  std::vector<bool> used(n + 1, false);
  // Fill block by block; choose the low and high values as increasing
  // subsets, then (unless `increasing`) all orderings inside the block.
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == bs.blocks.size()) {
      out.emplace_back(entries);
      return;
    }
    const Block& b = bs.blocks[k];
    std::vector<int> chosen;
    auto pick = [&](auto&& pself, int lo, int hi, int count, auto&& then) -> void {
      if (count == 0) {
        then();
        return;
      }
      for (int x = lo; x <= hi; ++x) {
        if (used[x]) continue;
        used[x] = true;
        chosen.push_back(x);
        pself(pself, x + 1, hi, count - 1, then);
        chosen.pop_back();
        used[x] = false;
      }
    };
    pick(pick, 1, p, b.p, [&] {
      pick(pick, p + 1, n, b.q, [&] {
        std::vector<int> vals = chosen;
        std::sort(vals.begin(), vals.end());
        do {
          std::copy(vals.begin(), vals.end(), entries.begin() + (b.begin - 1));
          self(self, k + 1);
        } while (!increasing && std::next_permutation(vals.begin(), vals.end()));
      });
    });
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Permutation> W_of_v0(const Clan& v0) {
  auto bs = is_smooth(v0);
  if (!bs) throw Error("v0 = " + v0.to_string() + " is not smooth");
  return block_permutations(*bs, v0.size(), v0.p(), false);
}

inline std::vector<Permutation> W_of_v0_min(const Clan& v0) {
  auto bs = is_smooth(v0);
  if (!bs) throw Error("v0 = " + v0.to_string() + " is not smooth");
  return block_permutations(*bs, v0.size(), v0.p(), true);
}

// true iff each block of w has the sign counts of the matching block of v0
inline bool in_W_of_v0(const ResolutionSpec& s, const Permutation& w) {
  for (const Block& b : s.blocks.blocks) {
    int low = 0;
    for (int i = b.begin; i < b.end; ++i)
      if (w(i) <= s.p) ++low;
    if (low != b.p) return false;
  }
  return true;
}

struct ZFixedPoint {
  Permutation x0, x1, x2;
  friend bool operator==(const ZFixedPoint&, const ZFixedPoint&) = default;
  friend auto operator<=>(const ZFixedPoint&, const ZFixedPoint&) = default;
};

inline Permutation mu_image(const ZFixedPoint& x) { return x.x0 * x.x1 * x.x2; }

inline std::uint64_t z_fixed_point_count(const ResolutionSpec& s) {
  std::uint64_t levi = 1;
  for (const Block& b : s.blocks.blocks)
    for (int k = 2; k <= b.size(); ++k) levi *= static_cast<std::uint64_t>(k);
  return W_of_v0_min(s.v0).size() * levi * (std::uint64_t{1} << s.I.size());
}

// Sorted by (x0, x1, x2).
inline std::vector<ZFixedPoint> z_fixed_points(const ResolutionSpec& s) {
  const auto x0s = W_of_v0_min(s.v0);
  const auto x1s = parabolic_subgroup(s.tau_v0, s.n);
  const auto x2s = parabolic_subgroup(s.I, s.n);
  std::vector<ZFixedPoint> out;
  out.reserve(x0s.size() * x1s.size() * x2s.size());
  for (const auto& a : x0s)
    for (const auto& b : x1s)
      for (const auto& c : x2s) out.push_back({a, b, c});
  std::sort(out.begin(), out.end());
  return out;
}

inline void check_fixed_point(const ResolutionSpec& s, const ZFixedPoint& x) {
  if (x.x0.size() != s.n || x.x1.size() != s.n || x.x2.size() != s.n) throw Error("fixed point has wrong size");
  if (!in_W_of_v0(s, x.x0) || !descent_set(x.x0).subset_of(SimpleReflectionSet::all(s.n) - s.tau_v0))
    throw Error("x0 = " + x.x0.to_string() + " is not a minimal representative in W(v0)");
  auto in_parabolic = [&](const Permutation& w, SimpleReflectionSet J) {
    for (int i : reduced_word(w))
      if (!J.contains(i)) return false;
    return true;
  };
  if (!in_parabolic(x.x1, s.tau_v0)) throw Error("x1 = " + x.x1.to_string() + " is not in W_tau(v0)");
  if (!in_parabolic(x.x2, s.I)) throw Error("x2 = " + x.x2.to_string() + " is not in W_I");
}

// Negative roots of the Levi of P_J.
inline std::vector<Weight> levi_negative_roots(SimpleReflectionSet J, int n) {
  std::vector<Weight> out;
  for (const auto& r : levi_positive_roots(J, n)) out.push_back(-r);
  return out;
}

// Weights of T_x Z:
//   Phi_K minus x0.(Phi+ u Phi-_tau),  x0 x1.Phi-_tau,  x0 x1 x2.Phi-_I.
inline std::vector<Weight> tangent_weights(const ResolutionSpec& s, const ZFixedPoint& x) {
  check_fixed_point(s, x);
  const int n = s.n;
  std::set<Weight> parabolic;
  for (const auto& r : positive_roots(n)) parabolic.insert(act_on_weight(x.x0, r));
  for (const auto& r : levi_negative_roots(s.tau_v0, n)) parabolic.insert(act_on_weight(x.x0, r));
  std::vector<Weight> out;
  for (const auto& r : roots_of_K(n, s.p))
    if (!parabolic.count(r)) out.push_back(r);
  const Permutation x01 = x.x0 * x.x1;
  for (const auto& r : levi_negative_roots(s.tau_v0, n)) out.push_back(act_on_weight(x01, r));
  const Permutation x012 = x01 * x.x2;
  for (const auto& r : levi_negative_roots(s.I, n)) out.push_back(act_on_weight(x012, r));
  std::sort(out.begin(), out.end());
  if (static_cast<int>(out.size()) != s.dimension())
    throw InternalError("tangent space at a fixed point has the wrong dimension");
  for (const auto& w : out)
    if (w.is_zero()) throw InternalError("zero tangent weight");
  return out;
}

// X_v^T = W(v0) W_I, sorted.
inline std::vector<Permutation> target_fixed_points(const ResolutionSpec& s) {
  std::set<Permutation> pts;
  const auto wi = parabolic_subgroup(s.I, s.n);
  for (const auto& w : W_of_v0(s.v0))
    for (const auto& x : wi) pts.insert(w * x);
  return {pts.begin(), pts.end()};
}

inline SimpleReflectionSet I_y(const ResolutionSpec& s, const Permutation& y) {
  SimpleReflectionSet out;
  for (int i : s.I.indices())
    if ((y(i) <= s.p) == (y(i + 1) <= s.p)) out.insert(i);
  return out;
}

// Splits w in W(v0) as x0 * x1 with x0 sorted within blocks.
inline std::pair<Permutation, Permutation> split_block_sorted(const ResolutionSpec& s, const Permutation& w) {
  std::vector<int> e = w.entries();
  for (const Block& b : s.blocks.blocks) std::sort(e.begin() + (b.begin - 1), e.begin() + (b.end - 1));
  Permutation x0(std::move(e));
  return {x0, x0.inverse() * w};
}

struct FiberFixedPoints {
  SimpleReflectionSet I_y;
  std::vector<ZFixedPoint> points;
};

inline FiberFixedPoints fiber_fixed_points(const ResolutionSpec& s, const Permutation& y) {
  if (y.size() != s.n) throw Error("permutation " + y.to_string() + " has the wrong size");
  FiberFixedPoints f;
  f.I_y = I_y(s, y);
  for (const auto& x2 : parabolic_subgroup(s.I, s.n)) {
    const Permutation w = y * x2.inverse();
    if (!in_W_of_v0(s, w)) continue;
    auto [x0, x1] = split_block_sorted(s, w);
    f.points.push_back({x0, x1, x2});
  }
  if (f.points.empty()) throw Error("y = " + y.to_string() + " is not a fixed point of X_v");
  std::sort(f.points.begin(), f.points.end());
  if (f.points.size() != (std::size_t{1} << f.I_y.size()))
    throw InternalError("fiber over " + y.to_string() + " does not have 2^|I_y| fixed points");
  return f;
}

// Fiber over K y B/B is (P^1)^k with k = |I n tau(y)|.
inline int fiber_type_over_orbit(const ResolutionSpec& s, const Clan& y) {
  if (y.p() != s.p || y.q() != s.q || !orbit_poset(s.p, s.q).leq(y, s.v0))
    throw Error("y = " + y.to_string() + " is not below v0 = " + s.v0.to_string());
  return (s.I & tau(y)).size();
}

struct AlternativePresentation {
  Clan v0_prime;
  SimpleReflectionSet I_prime;
  SimpleReflectionSet M;
};

inline AlternativePresentation alternative_presentation(const ResolutionSpec& s, SimpleReflectionSet N) {
  if (!N.subset_of(s.I)) throw Error("N = " + N.to_string() + " is not contained in I");
  for (int i : N.indices())
    if (root_type(s.v0, i) != RootType::NoncompactImaginary)
      throw Error("s" + std::to_string(i) + " is not noncompact imaginary for v0");
  if (!is_small(s).small) throw Error("alternative presentations need a small resolution");
  const SimpleReflectionSet tv = tau(s.v);
  if (!((tv & s.tau_v0) | s.I).subset_of(tv) || !tv.subset_of((tv & s.tau_v0) | s.I) || !(s.I & s.tau_v0).empty())
    throw InternalError("tau(v) is not (tau(v) n tau(v0)) u I for " + s.v.to_string());
  AlternativePresentation a;
  a.v0_prime = monoid_act_set(s.v0, N);
  a.I_prime = s.I - N;
  a.M = tau(a.v0_prime) & tv;
  const ResolutionSpec other = build_spec(a.v0_prime, a.I_prime);
  if (other.v != s.v) throw InternalError("alternative presentation changes the target");
  return a;
}

// Closed u <= v whose fixed points have trivial fiber (I_w empty).
inline std::vector<Clan> closed_orbits_in_birational_locus(const ResolutionSpec& s) {
  const OrbitPoset& poset = orbit_poset(s.p, s.q);
  const auto fixed = target_fixed_points(s);
  const std::set<Permutation> fixed_set(fixed.begin(), fixed.end());
  std::vector<Clan> out;
  for (const Clan& u : poset.clans()) {
    if (!u.is_closed()) continue;
    const Permutation wu = w_u(u);
    const bool below = poset.leq(u, s.v);
    if (below != (fixed_set.count(wu) == 1))
      throw InternalError("closure order and fixed points disagree on " + u.to_string());
    if (!below) continue;
    const bool trivial = I_y(s, wu).empty();
    if (trivial != (fiber_fixed_points(s, wu).points.size() == 1))
      throw InternalError("fiber count disagrees with I_y at " + wu.to_string());
    if (trivial) out.push_back(u);
  }
  return out;
}

}  // namespace kclans
