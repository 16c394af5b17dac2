#include <gtest/gtest.h>

#include <set>

#include "kclans/resolution.hpp"

using namespace kclans;

namespace {

Clan C(std::string_view s) { return parse_clan(s); }
Permutation P(std::vector<int> e) { return Permutation(std::move(e)); }

std::multiset<Weight> as_multiset(const std::vector<Weight>& ws) { return {ws.begin(), ws.end()}; }

// Cocharacter form of the weights. gamma is dominant (weakly decreasing)
// and its equal runs are exactly the blocks of J; <eps_i - eps_j, x.g> =
// g_{x^-1(i)} - g_{x^-1(j)}.
std::vector<int> dominant_cocharacter(SimpleReflectionSet J, int n) {
  std::vector<int> g(n);
  int value = 100;
  for (int i = 1; i <= n; ++i) {
    if (i > 1 && !J.contains(i - 1)) value -= 1;
    g[i - 1] = value;
  }
  return g;
}

int pair(const Weight& a, const Permutation& x, const std::vector<int>& g) {
  int total = 0;
  const Permutation xi = x.inverse();
  for (int i = 1; i <= a.size(); ++i) total += a.coords[i - 1] * g[xi(i) - 1];
  return total;
}

std::multiset<Weight> oracle_weights(const ResolutionSpec& s, const ZFixedPoint& x) {
  const int n = s.n;
  const auto g1 = dominant_cocharacter(s.tau_v0, n);  // J_1 = tau(v0)
  const auto chi1 = g1;                              // I_1 = tau(v0)
  const auto regular = dominant_cocharacter({}, n);  // J_2 = J_3 = empty
  const auto chi2 = dominant_cocharacter(s.I, n);    // I_2 = I
  std::multiset<Weight> out;
  for (const auto& a : roots_of_K(n, s.p))
    if (pair(a, x.x0, g1) < 0) out.insert(a);
  const Permutation x01 = x.x0 * x.x1, x012 = x01 * x.x2;
  for (const auto& a : all_roots(n)) {
    if (pair(a, x.x0, chi1) >= 0 && pair(a, x01, regular) < 0) out.insert(a);
    if (pair(a, x01, chi2) >= 0 && pair(a, x012, regular) < 0) out.insert(a);
  }
  return out;
}

ResolutionSpec spec_1122() { return build_spec(C("1122"), {2}); }
ResolutionSpec spec_gl8() { return build_spec(C("(1,+,1,2,2,3,-,3)"), {3, 5}); }

}  // namespace

TEST(Resolution, BuildSpec) {
  const auto s = spec_1122();
  EXPECT_EQ(s.v, C("1212"));
  const auto g = spec_gl8();
  EXPECT_EQ(g.v, C("(1,+,2,1,3,2,-,3)"));
  EXPECT_EQ(g.tau_v0, (SimpleReflectionSet{1, 2, 4, 6, 7}));
  EXPECT_EQ(tau(g.v), (SimpleReflectionSet{1, 3, 5, 7}));
  EXPECT_THROW(build_spec(C("1122"), {1}), Error);
  EXPECT_THROW(build_spec(C("1212"), {}), Error);
  EXPECT_THROW(build_spec(C("+-+-"), {1, 2}), Error);
  EXPECT_THROW(build_spec(C("1122"), {4}), Error);
}

TEST(Resolution, Smallness) {
  EXPECT_TRUE(is_small(spec_1122()).small);
  EXPECT_TRUE(is_small(spec_gl8()).small);
  const auto bad = is_small(build_spec(C("+-11"), {2}));
  EXPECT_FALSE(bad.small);
  ASSERT_EQ(bad.violations.size(), 1u);
  EXPECT_EQ(bad.violations[0], "e|aa at s2");
  EXPECT_FALSE(bad.codimension_witnesses.empty());
}

TEST(Resolution, WOfV0) {
  const auto m = W_of_v0_min(C("1122"));
  EXPECT_EQ(m, (std::vector<Permutation>{P({1, 3, 2, 4}), P({1, 4, 2, 3}), P({2, 3, 1, 4}), P({2, 4, 1, 3})}));
  EXPECT_EQ(W_of_v0_min(C("(1,+,1,2,2,3,-,3)")).size(), 144u);
  // one block: the sorted representative only; the whole block set is W
  EXPECT_EQ(W_of_v0_min(C("11")), (std::vector<Permutation>{P({1, 2})}));
  EXPECT_EQ(W_of_v0(C("11")), (std::vector<Permutation>{P({1, 2}), P({2, 1})}));
  // brute-force filter of S_n
  for (auto v0 : {C("1122"), C("1+1-"), C("+-11"), C("(1,+,1,2,2)")}) {
    const auto s = build_spec(v0, {});
    std::vector<Permutation> brute;
    for (const auto& w : all_permutations(v0.size()))
      if (in_W_of_v0(s, w)) brute.push_back(w);
    EXPECT_EQ(W_of_v0(v0), brute);
  }
}

TEST(Resolution, ZFixedPointCounts) {
  EXPECT_EQ(z_fixed_points(spec_1122()).size(), 32u);
  EXPECT_EQ(z_fixed_point_count(spec_1122()), 32u);
  const auto g = spec_gl8();
  EXPECT_EQ(z_fixed_point_count(g), 41472u);
  EXPECT_EQ(z_fixed_points(g).size(), 41472u);
  const auto tiny = build_spec(C("+-"), {1});
  const auto pts = z_fixed_points(tiny);
  ASSERT_EQ(pts.size(), 2u);
  EXPECT_EQ(pts[0], (ZFixedPoint{P({1, 2}), P({1, 2}), P({1, 2})}));
  EXPECT_EQ(pts[1], (ZFixedPoint{P({1, 2}), P({1, 2}), P({2, 1})}));
}

TEST(Resolution, TangentWeightsExamples) {
  const auto tiny = build_spec(C("+-"), {1});
  const auto e = P({1, 2}), s1 = P({2, 1});
  EXPECT_EQ(tangent_weights(tiny, {e, e, e}), std::vector<Weight>{Weight::root(2, 2, 1)});
  EXPECT_EQ(tangent_weights(tiny, {e, e, s1}), std::vector<Weight>{Weight::root(2, 1, 2)});

  const auto s = spec_1122();
  const auto id = Permutation::identity(4);
  const auto w = tangent_weights(s, {P({1, 3, 2, 4}), id, id});
  const std::multiset<Weight> want{Weight::root(4, 2, 1), Weight::root(4, 4, 3), Weight::root(4, 3, 1),
                                   Weight::root(4, 4, 2), Weight::root(4, 2, 3)};
  EXPECT_EQ(as_multiset(w), want);
  EXPECT_THROW(tangent_weights(s, {P({3, 1, 2, 4}), id, id}), Error);
}

TEST(Resolution, TangentWeightsMatchCocharacterForm) {
  for (const auto& s : {spec_1122(), build_spec(C("+-"), {1}), build_spec(C("(1,+,1,2,2,3,3)"), {3, 5}),
                        build_spec(C("(-,1,+,1,+)"), {1, 4})}) {
    for (const auto& x : z_fixed_points(s)) {
      const auto w = tangent_weights(s, x);
      EXPECT_EQ(static_cast<int>(w.size()), orbit_dimension(s.v0) + s.I.size());
      EXPECT_EQ(as_multiset(w), oracle_weights(s, x));
    }
  }
}

TEST(Resolution, MuImage) {
  const auto id = Permutation::identity(4);
  EXPECT_EQ(mu_image({id, id, id}), id);
  EXPECT_EQ(mu_image({P({1, 3, 2, 4}), id, P({1, 3, 2, 4})}), id);
  std::set<Permutation> images;
  for (const auto& x : z_fixed_points(spec_1122())) images.insert(mu_image(x));
  EXPECT_EQ(images.size(), 24u);
}

TEST(Resolution, FiberFixedPoints) {
  const auto s = spec_1122();
  const auto a = fiber_fixed_points(s, P({3, 1, 2, 4}));
  EXPECT_EQ(a.I_y, (SimpleReflectionSet{2}));
  EXPECT_EQ(a.points.size(), 2u);
  const auto b = fiber_fixed_points(s, P({1, 3, 2, 4}));
  EXPECT_TRUE(b.I_y.empty());
  EXPECT_EQ(b.points.size(), 1u);
  const auto g7 = build_spec(C("(1,+,1,2,2,3,3)"), {3, 5});
  EXPECT_EQ(fiber_fixed_points(g7, P({3, 4, 6, 7, 1, 2, 5})).points.size(), 4u);
  EXPECT_EQ(fiber_fixed_points(g7, P({3, 6, 4, 7, 1, 5, 2})).points.size(), 1u);
  const auto c = fiber_fixed_points(g7, P({3, 6, 7, 4, 1, 5, 2}));
  ASSERT_EQ(c.points.size(), 1u);
  // y lies in X_v but not in X_{v0}; its only preimage is [y s_3, s_3]
  EXPECT_EQ(c.points[0].x2, Permutation::simple(7, 3));
  EXPECT_EQ(c.points[0].x0, P({3, 4, 6, 1, 7, 2, 5}));
  EXPECT_THROW(fiber_fixed_points(build_spec(C("(+,1,1,-)"), {1}), P({4, 3, 2, 1})), Error);
}

TEST(Resolution, FiberPartitionMatchesFilteredZ) {
  for (const auto& s : {spec_1122(), build_spec(C("(1,+,1,2,2,3,3)"), {3, 5}), build_spec(C("(-,1,+,1,+)"), {1, 4})}) {
    std::map<Permutation, std::vector<ZFixedPoint>> by_image;
    for (const auto& x : z_fixed_points(s)) by_image[mu_image(x)].push_back(x);
    const auto targets = target_fixed_points(s);
    EXPECT_EQ(targets.size(), by_image.size());
    std::uint64_t total = 0;
    for (const auto& y : targets) {
      auto f = fiber_fixed_points(s, y);
      auto& filtered = by_image[y];
      std::sort(filtered.begin(), filtered.end());
      EXPECT_EQ(f.points, filtered);
      total += std::uint64_t{1} << f.I_y.size();
    }
    EXPECT_EQ(total, z_fixed_points(s).size());
  }
}

TEST(Resolution, FiberTypes) {
  const auto g = spec_gl8();
  EXPECT_EQ(fiber_type_over_orbit(g, C("11++--22")), 2);
  EXPECT_EQ(fiber_type_over_orbit(g, C("11+-+-22")), 0);
  EXPECT_EQ(fiber_type_over_orbit(g, C("++--++--")), 2);
  EXPECT_THROW(fiber_type_over_orbit(g, C("(1,2,3,4,4,3,2,1)")), Error);
}

TEST(Resolution, AlternativePresentation) {
  const auto s7 = build_spec(C("(+,-,+,1,2,2,1)"), {1, 3});
  const auto a = alternative_presentation(s7, {1});
  EXPECT_EQ(a.v0_prime, C("(3,3,+,1,2,2,1)"));
  EXPECT_EQ(a.I_prime, (SimpleReflectionSet{3}));
  EXPECT_EQ(a.M, (SimpleReflectionSet{1, 5, 6}));
  const auto s2 = build_spec(C("+-"), {1});
  const auto b = alternative_presentation(s2, {1});
  EXPECT_EQ(b.v0_prime, C("11"));
  EXPECT_TRUE(b.I_prime.empty());
  EXPECT_EQ(b.M, (SimpleReflectionSet{1}));
  const auto c = alternative_presentation(s7, {});
  EXPECT_EQ(c.v0_prime, s7.v0);
  EXPECT_EQ(c.I_prime, s7.I);
  EXPECT_EQ(c.M, s7.tau_v0 & tau(s7.v));
  EXPECT_THROW(alternative_presentation(s7, {3}), Error);
}

TEST(Resolution, BirationalLocus1122) {
  const auto s = spec_1122();
  const auto got = closed_orbits_in_birational_locus(s);
  // exhaustive: closed u with a single fixed point over w_u
  std::vector<Clan> want;
  for (const auto& u : enumerate_clans(2, 2))
    if (u.is_closed() && fiber_fixed_points(s, w_u(u)).points.size() == 1) want.push_back(u);
  EXPECT_EQ(got, want);
  EXPECT_EQ(got, (std::vector<Clan>{C("--++"), C("-+-+"), C("+-+-"), C("++--")}));
}
