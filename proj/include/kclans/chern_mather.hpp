#pragma once

// Localization pushforward of c^T(TZ) ∩ [Z]_T along the resolution
// Z -> X_v, and its expansion in the Schubert basis of G/B.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "kclans/resolution.hpp"
#include "kclans/schubert.hpp"

namespace kclans {

struct LocalizedClass {
  std::map<Permutation, RationalFunction> contributions;
  friend bool operator==(const LocalizedClass&, const LocalizedClass&) = default;
};

inline std::vector<LinearForm> tangent_forms(const ResolutionSpec& s, const ZFixedPoint& x) {
  std::vector<LinearForm> out;
  for (const auto& w : tangent_weights(s, x)) out.push_back(weight_to_alpha(w));
  return out;
}

// C(x) = prod(1 + beta) / prod(beta)
inline RationalFunction chern_factor(const ZFixedPoint& x, const ResolutionSpec& s) {
  Poly num(1L);
  RationalFunction r;
  std::vector<LinearForm> forms = tangent_forms(s, x);
  for (const auto& f : forms) num *= f.to_poly() + 1L;
  r = RationalFunction(num);
  for (const auto& f : forms) r.divide_by(f);
  return r;
}

// 1 / prod(beta)
inline RationalFunction multiplicity_factor(const ZFixedPoint& x, const ResolutionSpec& s) {
  RationalFunction r(Poly(1L));
  for (const auto& f : tangent_forms(s, x)) r.divide_by(f);
  return r;
}

namespace detail {

// pairwise sum keeps intermediate denominators small
inline RationalFunction tree_sum(std::vector<RationalFunction> terms) {
  if (terms.empty()) return RationalFunction();
  while (terms.size() > 1) {
    std::vector<RationalFunction> next;
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back((terms[i] + terms[i + 1]).simplified());
    if (terms.size() % 2) next.push_back(std::move(terms.back()));
    terms = std::move(next);
  }
  return terms.front().simplified();
}

// Runs f(k) for k in [0, count) on `threads` workers with a static split.
template <class F>
void parallel_for(std::size_t count, int threads, F&& f) {
  threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (threads == 1) {
    for (std::size_t k = 0; k < count; ++k) f(k);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t k = t; k < count; k += threads) f(k);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

template <class Factor>
LocalizedClass pushforward(const ResolutionSpec& s, int threads, Factor factor) {
  const auto ys = target_fixed_points(s);
  std::vector<RationalFunction> b(ys.size());
  parallel_for(ys.size(), threads, [&](std::size_t k) {
    std::vector<RationalFunction> terms;
    for (const auto& x : fiber_fixed_points(s, ys[k]).points) terms.push_back(factor(x, s));
    b[k] = tree_sum(std::move(terms));
  });
  LocalizedClass out;
  for (std::size_t k = 0; k < ys.size(); ++k) out.contributions.emplace(ys[k], std::move(b[k]));
  return out;
}

}  // namespace detail

inline LocalizedClass pushforward_chern(const ResolutionSpec& s, int threads = 1) {
  return detail::pushforward(s, threads, chern_factor);
}

inline LocalizedClass pushforward_fundamental(const ResolutionSpec& s, int threads = 1) {
  return detail::pushforward(s, threads, multiplicity_factor);
}

// Restriction of the class to the fixed point u of G/B: b_u * e(u).
inline Poly restriction_at(const RationalFunction& b, const Permutation& u) {
  RationalFunction r = b;
  for (const auto& f : euler_factors(u)) r.multiply_by(f);
  auto p = r.simplified().as_polynomial();
  if (!p) throw InternalError("restriction at " + u.to_string() + " is not a polynomial: " + r.to_string());
  return *p;
}

inline SchubertExpansion expand_localized(const LocalizedClass& c, int n, int threads = 1) {
  const SchubertTable& t = schubert_table(n);
  std::vector<Poly> rhs(t.permutations().size());
  std::vector<std::pair<int, const RationalFunction*>> jobs;
  for (const auto& [y, b] : c.contributions) jobs.emplace_back(t.index_of(y), &b);
  detail::parallel_for(jobs.size(), threads, [&](std::size_t k) {
    rhs[jobs[k].first] = restriction_at(*jobs[k].second, t.permutations()[jobs[k].first]);
  });
  return t.solve(rhs);
}

// Same coefficients through point classes: sum_y b_y m_{yw}. Slow; used as a cross-check.
inline std::optional<SchubertExpansion> expand_via_point_classes(const LocalizedClass& c) {
  std::map<Permutation, RationalFunction, LengthLexLess> acc;
  for (const auto& [y, b] : c.contributions)
    for (const auto& [w, m] : point_class_expansion(y)) {
      RationalFunction term = b;
      term.multiply_by(m);
      acc[w] = (acc[w] + term).simplified();
    }
  SchubertExpansion out;
  for (auto& [w, r] : acc) {
    auto p = r.as_polynomial();
    if (!p) return std::nullopt;
    if (!p->is_zero()) out.emplace(w, *p);
  }
  return out;
}

struct CoefficientVerdict {
  Permutation w;
  PositivityReport report;
};

struct ConjectureReport {
  bool pass = true;
  std::vector<CoefficientVerdict> coefficients;  // in expansion order
};

inline ConjectureReport check_expansion(const SchubertExpansion& e) {
  ConjectureReport r;
  for (const auto& [w, c] : e) {
    r.coefficients.push_back({w, positivity_check(c)});
    if (!r.coefficients.back().report.positive) r.pass = false;
  }
  return r;
}

struct ChernMatherOptions {
  int threads = 1;
  std::uint64_t seed = 20240601;
  int evaluation_checks = 2;
};

struct ChernMatherResult {
  ResolutionSpec spec;
  bool small = true;
  // "Chern-Mather class", or the weaker label when the resolution is not small
  std::string label;
  LocalizedClass localized;
  SchubertExpansion expansion;
  ConjectureReport positivity;
};

inline const char* kChernMatherLabel = "Chern-Mather class";
inline const char* kPushforwardLabel = "pushforward class, not certified Chern-Mather";

// Compares the symbolic coefficients with a numeric solve at random points,
// using the uncancelled b_y. Throws InternalError on mismatch.
inline void check_by_evaluation(const LocalizedClass& c, const SchubertExpansion& e, int n, std::uint64_t seed,
                                int rounds) {
  const SchubertTable& t = schubert_table(n);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-97, 97), den(1, 13);
  int done = 0;
  for (int attempt = 0; done < rounds && attempt < 50 * rounds; ++attempt) {
    std::vector<Rational> pt;
    for (int i = 0; i + 1 < n; ++i) {
      Rational r(num(rng), den(rng));
      r.canonicalize();
      pt.push_back(r);
    }
    bool generic = true;
    for (const auto& g : positive_roots(n))
      if (weight_to_alpha(g).evaluate(pt) == 0) generic = false;
    if (!generic) continue;
    std::vector<Rational> rhs(t.permutations().size());
    for (const auto& [y, b] : c.contributions) {
      auto v = b.evaluate(pt);
      if (!v) {
        generic = false;
        break;
      }
      rhs[t.index_of(y)] = *v * euler_class(y).evaluate(pt);
    }
    if (!generic) continue;
    const auto vals = t.solve_at(rhs, pt);
    for (std::size_t k = 0; k < vals.size(); ++k) {
      auto it = e.find(t.permutations()[k]);
      const Rational sym = it == e.end() ? Rational(0) : it->second.evaluate(pt);
      if (sym != vals[k])
        throw InternalError("coefficient at " + t.permutations()[k].to_string() + " fails the evaluation check");
    }
    ++done;
  }
  if (done < rounds) throw InternalError("no generic evaluation point found");
}

inline ChernMatherResult chern_mather(const ResolutionSpec& s, const ChernMatherOptions& opt = {}) {
  ChernMatherResult r;
  r.spec = s;
  r.small = is_small(s).small;
  r.label = r.small ? kChernMatherLabel : kPushforwardLabel;
  r.localized = pushforward_chern(s, opt.threads);
  r.expansion = expand_localized(r.localized, s.n, opt.threads);
  if (opt.evaluation_checks > 0) check_by_evaluation(r.localized, r.expansion, s.n, opt.seed, opt.evaluation_checks);
  r.positivity = check_expansion(r.expansion);
  return r;
}

inline SchubertExpansion fundamental_class(const ResolutionSpec& s, int threads = 1) {
  return expand_localized(pushforward_fundamental(s, threads), s.n, threads);
}

inline ConjectureReport verify_conjecture(const ResolutionSpec& s, const ChernMatherOptions& opt = {}) {
  return chern_mather(s, opt).positivity;
}

// alpha -> 0
inline std::map<Permutation, Rational, LengthLexLess> non_equivariant_limit(const SchubertExpansion& e) {
  std::map<Permutation, Rational, LengthLexLess> out;
  for (const auto& [w, c] : e) {
    const Rational k = c.constant_term();
    if (k != 0) out.emplace(w, k);
  }
  return out;
}

}  // namespace kclans
