#include <gtest/gtest.h>

#include <set>

#include "kclans/clan.hpp"
#include "kclans/orbit_poset.hpp"

using namespace kclans;

namespace {

Clan C(std::string_view s) { return parse_clan(s); }

// Brute force count: choose 2k pair positions, match them, then place signs.
long long count_clans(int p, int q) {
  const int n = p + q;
  auto binom = [](int a, int b) -> long long {
    if (b < 0 || b > a) return 0;
    long long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  long long total = 0;
  for (int k = 0; 2 * k <= n; ++k) {
    long long matchings = 1;
    for (int j = 2 * k - 1; j > 0; j -= 2) matchings *= j;
    total += binom(n, 2 * k) * matchings * binom(n - 2 * k, p - k);
  }
  return total;
}

}  // namespace

TEST(Clan, ParseAndCanonicalize) {
  const Clan a = parse_clan("(1,+,2,1,2,-,+)", 4, 3);
  const Clan b = parse_clan("(2,+,1,2,1,-,+)");
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.p(), 4);
  EXPECT_EQ(a.q(), 3);
  EXPECT_EQ(format_clan(a), "(1,+,2,1,2,-,+)");
  EXPECT_THROW(parse_clan("(1,1,2)"), Error);
  EXPECT_THROW(parse_clan("(1,+,1)", 1, 2), Error);
  EXPECT_THROW(parse_clan("(1,x,1)"), Error);
  EXPECT_THROW(parse_clan("(1,1,1)"), Error);
  EXPECT_EQ(parse_clan("(1+1|2332|4−4)"), parse_clan("(1,+,1,2,3,3,2,4,-,4)"));
}

TEST(Clan, RoundTripOnEnumeration) {
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) {
      if (p + q == 0) continue;
      for (const auto& c : enumerate_clans(p, q)) {
        EXPECT_EQ(parse_clan(format_clan(c), p, q), c);
        EXPECT_EQ(parse_clan(c.to_compact_string()), c);
      }
    }
}

TEST(Clan, Enumeration) {
  const auto v11 = enumerate_clans(1, 1);
  const std::set<Clan> s11(v11.begin(), v11.end());
  EXPECT_EQ(s11, (std::set<Clan>{C("+-"), C("-+"), C("11")}));
  EXPECT_EQ(enumerate_clans(2, 2).size(), 21u);
  const auto v10 = enumerate_clans(1, 0);
  ASSERT_EQ(v10.size(), 1u);
  EXPECT_EQ(v10[0], C("+"));
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) {
      if (p + q == 0) continue;
      const auto all = enumerate_clans(p, q);
      const std::set<Clan> uniq(all.begin(), all.end());
      EXPECT_EQ(uniq.size(), all.size());
      EXPECT_EQ(static_cast<long long>(all.size()), count_clans(p, q)) << p << "," << q;
      for (const auto& c : all) {
        EXPECT_EQ(c.p(), p);
        EXPECT_EQ(c.q(), q);
      }
    }
}

TEST(Clan, Phi) {
  EXPECT_TRUE(phi(C("+-")).is_identity());
  EXPECT_EQ(phi(C("11")), Permutation::simple(2, 1));
  EXPECT_EQ(phi(C("1212")), Permutation({3, 4, 1, 2}));
}

TEST(Clan, RootTypes) {
  EXPECT_EQ(root_type(C("+-"), 1), RootType::NoncompactImaginary);
  EXPECT_EQ(root_type(C("++"), 1), RootType::CompactImaginary);
  EXPECT_EQ(root_type(C("1212"), 2), RootType::ComplexDescent);
  EXPECT_EQ(root_type(C("11"), 1), RootType::Real);
  EXPECT_EQ(root_type(C("1122"), 2), RootType::ComplexAscent);
  EXPECT_THROW(root_type(C("11"), 2), Error);
}

TEST(Clan, MonoidAction) {
  EXPECT_EQ(monoid_act(C("+-+-"), 2), C("+11-"));
  EXPECT_EQ(monoid_act(C("11+-"), 2), C("1+1-"));
  EXPECT_EQ(monoid_act(C("1122"), 2), C("1212"));
  EXPECT_EQ(monoid_act_set(C("1212"), {}), C("1212"));
  EXPECT_EQ(monoid_act_set(C("1122"), {2}), C("1212"));
  EXPECT_EQ(monoid_act_set(C("1+12233"), {3, 5}), C("1+21323"));
}

TEST(Clan, MonoidIdempotent) {
  for (auto [p, q] : {std::pair{2, 2}, std::pair{2, 1}, std::pair{3, 2}})
    for (const auto& v : enumerate_clans(p, q))
      for (int i = 1; i < v.size(); ++i) {
        const Clan w = monoid_act(v, i);
        EXPECT_EQ(monoid_act(w, i), w);
      }
}

TEST(Clan, Tau) {
  EXPECT_EQ(tau(C("1212")), (SimpleReflectionSet{2}));
  const auto t = tau(C("(1,+,1,2,3,3,2,4,-,4)"));
  EXPECT_EQ(SimpleReflectionSet::all(10) - t, (SimpleReflectionSet{3, 7}));
  EXPECT_EQ(tau(C("++++")), SimpleReflectionSet::all(4));
  for (const auto& v : enumerate_clans(2, 2))
    for (int i = 1; i < 4; ++i) {
      const RootType rt = root_type(v, i);
      const bool fixed = rt == RootType::Real || rt == RootType::CompactImaginary || rt == RootType::ComplexDescent;
      EXPECT_EQ(tau(v).contains(i), fixed);
      EXPECT_EQ(tau(v).contains(i), monoid_act(v, i) == v);
    }
}

TEST(Clan, OrbitDimension) {
  EXPECT_EQ(orbit_dimension(C("+-")), 0);
  EXPECT_EQ(orbit_dimension(C("1122")), 4);
  EXPECT_EQ(orbit_dimension(C("1212")), 5);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) {
      if (p + q == 0 || p + q > 6) continue;
      const int n = p + q;
      EXPECT_EQ(orbit_dimension(max_clan(p, q)), n * (n - 1) / 2);
      for (const auto& v : enumerate_clans(p, q))
        for (int i = 1; i < n; ++i) {
          const Clan w = monoid_act(v, i);
          if (w != v) EXPECT_EQ(orbit_dimension(w), orbit_dimension(v) + 1);
        }
    }
}

TEST(Clan, MaxClan) {
  EXPECT_EQ(max_clan(2, 1), C("1+1"));
  EXPECT_EQ(max_clan(2, 2), C("1221"));
  EXPECT_EQ(max_clan(1, 0), C("+"));
  EXPECT_EQ(max_clan(1, 3), C("1--1"));
  // the open orbit is the unique maximum
  const OrbitPoset poset(2, 2);
  for (const auto& c : poset.clans()) EXPECT_TRUE(poset.leq(c, max_clan(2, 2)));
}

TEST(Clan, Smoothness) {
  const auto bs = is_smooth(C("(1,+,1,2,3,3,2,4,-,4)"));
  ASSERT_TRUE(bs.has_value());
  EXPECT_EQ(format_blocks(C("(1,+,1,2,3,3,2,4,-,4)"), *bs), "(1,+,1|2,3,3,2|4,-,4)");
  EXPECT_FALSE(is_smooth(C("1212")).has_value());
  const auto closed = is_smooth(C("+-+"));
  ASSERT_TRUE(closed.has_value());
  EXPECT_EQ(closed->blocks.size(), 3u);
  // equal adjacent signs merge into one maximal clan block
  const auto merged = is_smooth(C("++-"));
  ASSERT_TRUE(merged.has_value());
  EXPECT_EQ(merged->blocks.size(), 2u);
  // interior reflections of the blocks are exactly tau
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q) {
      if (p + q == 0) continue;
      for (const auto& v : enumerate_clans(p, q))
        if (auto b = is_smooth(v)) EXPECT_EQ(b->interior(), tau(v)) << v;
    }
}

TEST(Clan, WU) {
  EXPECT_EQ(w_u(C("++-+--+")), Permutation({1, 2, 5, 3, 6, 7, 4}));
  EXPECT_EQ(w_u(C("+-")), Permutation({1, 2}));
  EXPECT_EQ(w_u(C("-+")), Permutation({2, 1}));
  EXPECT_THROW(w_u(C("11")), Error);
}

TEST(Poset, Trivial) {
  EXPECT_TRUE(closure_leq(C("+-"), C("11")));
  EXPECT_TRUE(closure_leq(C("-+"), C("11")));
  EXPECT_FALSE(closure_leq(C("11"), C("+-")));
  EXPECT_TRUE(closure_leq(C("+-+-"), C("1122")));
  EXPECT_TRUE(closure_leq(C("+--+"), C("1122")));
  EXPECT_TRUE(closure_leq(C("+--+"), C("+-11")));
}

TEST(Poset, LowerIntervalOf1122) {
  const OrbitPoset poset(2, 2);
  const auto nodes = poset.below(poset.index_of(C("1122")));
  std::set<Clan> got;
  for (int k : nodes) got.insert(poset.clan(k));
  const std::set<Clan> want{C("+-+-"), C("+--+"), C("-++-"), C("-+-+"), C("+-11"),
                            C("11+-"), C("11-+"), C("-+11"), C("1122")};
  EXPECT_EQ(got, want);
  std::set<std::pair<Clan, Clan>> covers;
  for (auto [y, v] : poset.covers_within(nodes)) covers.emplace(poset.clan(y), poset.clan(v));
  // product of two copies of {+-, -+} < 11
  std::set<std::pair<Clan, Clan>> expected;
  const std::vector<std::string> block{"+-", "-+", "11"};
  for (const auto& a : block)
    for (const auto& b : block)
      for (const auto& c : block)
        for (const auto& d : block) {
          const bool first = a == c && b != d && d == "11";
          const bool second = b == d && a != c && c == "11";
          auto cat = [](const std::string& x, const std::string& y) { return C(x + (y == "11" ? "22" : y)); };
          if (first || second) expected.emplace(cat(a, b), cat(c, d));
        }
  EXPECT_EQ(expected.size(), 12u);
  EXPECT_EQ(covers, expected);
}

TEST(Poset, CoversRaiseDimensionAndAreTransitive) {
  for (auto [p, q] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 1}}) {
    const OrbitPoset poset(p, q);
    std::vector<int> all(poset.size());
    for (int k = 0; k < poset.size(); ++k) all[k] = k;
    for (auto [y, v] : poset.covers_within(all)) EXPECT_LT(poset.dimension(y), poset.dimension(v));
    for (int a = 0; a < poset.size(); ++a)
      for (int b = 0; b < poset.size(); ++b) {
        if (!poset.leq(a, b)) continue;
        EXPECT_LE(poset.dimension(a), poset.dimension(b));
        if (a != b) EXPECT_FALSE(poset.leq(b, a));
        for (int c = 0; c < poset.size(); ++c)
          if (poset.leq(b, c)) EXPECT_TRUE(poset.leq(a, c));
      }
    // weak order steps are closure relations
    for (int k = 0; k < poset.size(); ++k)
      for (int i = 1; i < p + q; ++i) EXPECT_TRUE(poset.leq(poset.clan(k), monoid_act(poset.clan(k), i)));
  }
}

TEST(Poset, BlockwiseClosure) {
  // y <= (v1|v2) forces y = (y1|y2) with y_i <= v_i in the factor posets
  const std::vector<std::pair<int, int>> sigs{{1, 1}, {2, 1}, {1, 2}, {2, 2}};
  for (auto [p1, q1] : sigs)
    for (auto [p2, q2] : sigs) {
      if (p1 + q1 + p2 + q2 > 6) continue;
      const OrbitPoset left(p1, q1), right(p2, q2), whole(p1 + p2, q1 + q2);
      const int n1 = p1 + q1;
      for (const auto& a : left.clans())
        for (const auto& b : right.clans()) {
          std::vector<int> tok = a.tokens();
          for (int t : b.tokens()) tok.push_back(t < 0 ? t : t + a.max_id());
          const Clan v(tok);
          for (int y : whole.below(whole.index_of(v))) {
            const Clan& yc = whole.clan(y);
            bool closed_cut = true;
            for (int i = 1; i <= n1; ++i)
              if (yc.mate(i) > n1) closed_cut = false;
            ASSERT_TRUE(closed_cut) << yc << " <= " << v;
            const Clan y1 = sub_clan(yc, 1, n1 + 1), y2 = sub_clan(yc, n1 + 1, yc.size() + 1);
            ASSERT_EQ(y1.p(), p1) << yc << " <= " << v;
            EXPECT_TRUE(left.leq(y1, a));
            EXPECT_TRUE(right.leq(y2, b));
          }
        }
    }
}
