#pragma once

// JSON forms of the engine's values. Every to_json has a matching reader
// so reports can be reloaded and compared.

#include <json.hpp>

#include "kclans/chern_mather.hpp"

namespace kclans::io {

using Json = nlohmann::ordered_json;

// integers that fit stay numbers; larger ones become decimal strings
inline Json integer_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

inline mpz_class integer_from_json(const Json& j) {
  if (j.is_number_integer()) return mpz_class(j.get<long>());
  if (j.is_string()) return mpz_class(j.get<std::string>());
  throw Error("expected an integer in JSON, got " + j.dump());
}

inline Json to_json(const Permutation& w) { return w.to_string(); }
inline Permutation permutation_from_json(const Json& j) { return parse_permutation(j.get<std::string>()); }

inline Json to_json(const Clan& c) { return c.to_string(); }
inline Clan clan_from_json(const Json& j) { return parse_clan(j.get<std::string>()); }

inline Json to_json(SimpleReflectionSet s) { return s.indices(); }
inline SimpleReflectionSet reflections_from_json(const Json& j) {
  SimpleReflectionSet s;
  for (const auto& i : j) s.insert(i.get<int>());
  return s;
}

inline Json to_json(const Weight& w) { return w.coords; }
inline Weight weight_from_json(const Json& j) { return Weight{j.get<std::vector<int>>()}; }

// [{exps, num, den}] over `vars` variables, highest term first
inline Json to_json(const Poly& p, int vars) {
  Json out = Json::array();
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    std::vector<int> exps(vars);
    for (int i = 0; i < vars; ++i) exps[i] = it->first.exps[i];
    out.push_back({{"exps", exps}, {"num", integer_json(it->second.get_num())}, {"den", integer_json(it->second.get_den())}});
  }
  return out;
}

inline Poly poly_from_json(const Json& j) {
  Poly p;
  for (const auto& t : j) {
    Monomial m;
    const auto exps = t.at("exps").get<std::vector<int>>();
    if (static_cast<int>(exps.size()) > kMaxVars) throw Error("too many variables in JSON polynomial");
    for (std::size_t i = 0; i < exps.size(); ++i) m.exps[i] = static_cast<std::uint8_t>(exps[i]);
    Rational c(integer_from_json(t.at("num")), integer_from_json(t.at("den")));
    c.canonicalize();
    p.add_term(m, c);
  }
  return p;
}

inline Json to_json(const RationalFunction& r, int vars) {
  Json den = Json::array();
  for (const auto& [f, m] : r.denominator())
    den.push_back({{"form", f.coeffs}, {"constant", f.constant}, {"power", m}});
  return {{"text", r.to_string()}, {"numerator", to_json(r.numerator(), vars)}, {"denominator", den}};
}

inline RationalFunction rational_function_from_json(const Json& j) {
  RationalFunction r(poly_from_json(j.at("numerator")));
  for (const auto& d : j.at("denominator")) {
    LinearForm f{d.at("form").get<std::vector<int>>(), d.at("constant").get<int>()};
    for (int k = 0; k < d.at("power").get<int>(); ++k) r.divide_by(f);
  }
  return r;
}

inline Json to_json(const SchubertExpansion& e, int vars) {
  Json out = Json::array();
  for (const auto& [w, c] : e) out.push_back({{"w", to_json(w)}, {"coeff", c.to_string()}, {"terms", to_json(c, vars)}});
  return out;
}

inline SchubertExpansion expansion_from_json(const Json& j) {
  SchubertExpansion e;
  for (const auto& row : j) e.emplace(permutation_from_json(row.at("w")), poly_from_json(row.at("terms")));
  return e;
}

inline Json blocks_json(const ResolutionSpec& s) {
  Json out = Json::array();
  for (const auto& b : s.blocks.blocks) out.push_back(sub_clan(s.v0, b.begin, b.end).to_string());
  return out;
}

inline Json to_json(const ResolutionSpec& s, bool small) {
  return {{"v0", format_blocks(s.v0, s.blocks)}, {"blocks", blocks_json(s)}, {"I", to_json(s.I)},
          {"v", to_json(s.v)},  {"small", small},                            {"dimension", s.dimension()}};
}

inline ResolutionSpec spec_from_json(const Json& j) {
  ResolutionSpec s = build_spec(clan_from_json(j.at("v0")), reflections_from_json(j.at("I")));
  if (j.contains("v") && clan_from_json(j.at("v")) != s.v) throw Error("JSON spec: v does not match v0 and I");
  return s;
}

inline Json to_json(const ResolutionSpec& s, const ZFixedPoint& x) {
  Json weights = Json::array();
  for (const auto& w : tangent_weights(s, x)) weights.push_back(to_json(w));
  return {{"x0", to_json(x.x0)}, {"x1", to_json(x.x1)}, {"x2", to_json(x.x2)}, {"image", to_json(mu_image(x))},
          {"weights", weights}};
}

inline ZFixedPoint fixed_point_from_json(const Json& j) {
  return {permutation_from_json(j.at("x0")), permutation_from_json(j.at("x1")), permutation_from_json(j.at("x2"))};
}

struct FiberRow {
  Clan orbit;
  int k = 0;
  friend bool operator==(const FiberRow&, const FiberRow&) = default;
};

inline Json to_json(const FiberRow& r) {
  return {{"orbit", to_json(r.orbit)}, {"k", r.k}, {"euler", 1L << r.k}};
}

inline FiberRow fiber_row_from_json(const Json& j) {
  FiberRow r{clan_from_json(j.at("orbit")), j.at("k").get<int>()};
  if (j.contains("euler") && j.at("euler").get<long>() != (1L << r.k)) throw Error("JSON fiber row: euler is not 2^k");
  return r;
}

inline Json to_json(const LocalizedClass& c, int vars) {
  Json out = Json::array();
  for (const auto& [y, b] : c.contributions) out.push_back({{"y", to_json(y)}, {"value", to_json(b, vars)}});
  return out;
}

inline LocalizedClass localized_from_json(const Json& j) {
  LocalizedClass c;
  for (const auto& row : j)
    c.contributions.emplace(permutation_from_json(row.at("y")), rational_function_from_json(row.at("value")));
  return c;
}

inline Json to_json(const ConjectureReport& r, int vars) {
  Json witnesses = Json::array();
  for (const auto& cv : r.coefficients) {
    if (cv.report.positive) continue;
    Poly term;
    term.add_term(cv.report.witness->first, cv.report.witness->second);
    witnesses.push_back({{"w", to_json(cv.w)}, {"term", term.to_string()}, {"terms", to_json(term, vars)}});
  }
  return {{"verdict", r.pass ? "PASS" : "FAIL"}, {"witnesses", witnesses}};
}

inline Json to_json(const ChernMatherResult& r) {
  const int vars = r.spec.n - 1;
  return {{"spec", to_json(r.spec, r.small)},
          {"small", r.small},
          {"label", r.label},
          {"b", to_json(r.localized, vars)},
          {"expansion", to_json(r.expansion, vars)},
          {"positivity", to_json(r.positivity, vars)}};
}

struct PosetReport {
  std::vector<Clan> nodes;
  std::vector<int> dims;
  std::vector<std::pair<int, int>> covers;  // (lower, upper) node indices
  friend bool operator==(const PosetReport&, const PosetReport&) = default;
};

inline PosetReport poset_report(const OrbitPoset& poset, const std::optional<Clan>& below) {
  std::vector<int> idx;
  if (below) idx = poset.below(poset.index_of(*below));
  else
    for (int k = 0; k < poset.size(); ++k) idx.push_back(k);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (poset.dimension(a) != poset.dimension(b)) return poset.dimension(a) < poset.dimension(b);
    return poset.clan(a) < poset.clan(b);
  });
  PosetReport r;
  std::map<int, int> local;
  for (int k : idx) {
    local[k] = static_cast<int>(r.nodes.size());
    r.nodes.push_back(poset.clan(k));
    r.dims.push_back(poset.dimension(k));
  }
  for (auto [y, v] : poset.covers_within(idx)) r.covers.emplace_back(local.at(y), local.at(v));
  std::sort(r.covers.begin(), r.covers.end());
  return r;
}

inline Json to_json(const PosetReport& r) {
  Json nodes = Json::array(), covers = Json::array();
  for (const auto& c : r.nodes) nodes.push_back(to_json(c));
  for (auto [a, b] : r.covers) covers.push_back({to_json(r.nodes[a]), to_json(r.nodes[b])});
  return {{"nodes", nodes}, {"covers", covers}, {"dims", r.dims}};
}

inline PosetReport poset_from_json(const Json& j) {
  PosetReport r;
  std::map<Clan, int> at;
  for (const auto& n : j.at("nodes")) {
    at[clan_from_json(n)] = static_cast<int>(r.nodes.size());
    r.nodes.push_back(clan_from_json(n));
  }
  r.dims = j.at("dims").get<std::vector<int>>();
  for (const auto& c : j.at("covers")) r.covers.emplace_back(at.at(clan_from_json(c[0])), at.at(clan_from_json(c[1])));
  std::sort(r.covers.begin(), r.covers.end());
  return r;
}

inline std::string to_dot(const PosetReport& r) {
  std::string out = "digraph clans {\n  rankdir=BT;\n";
  for (std::size_t k = 0; k < r.nodes.size(); ++k)
    out += "  n" + std::to_string(k) + " [label=\"" + r.nodes[k].to_compact_string() + "\"];\n";
  for (auto [a, b] : r.covers) out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
  return out + "}\n";
}

}  // namespace kclans::io
