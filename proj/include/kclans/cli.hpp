#pragma once

// Command-line front end. run() never calls exit(); it returns
// 0 ok/PASS, 1 FAIL, 2 usage or invalid input, 3 internal assertion.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "kclans/serialize.hpp"

namespace kclans::cli {

inline constexpr int kOk = 0;
inline constexpr int kFail = 1;
inline constexpr int kUsage = 2;
inline constexpr int kInternal = 3;

// "3,5", "{3,5}", "s3,s5" or "" for the empty set
inline SimpleReflectionSet parse_reflections(std::string text) {
  SimpleReflectionSet out;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    std::size_t used = 0;
    int i = 0;
    try {
      i = std::stoi(cur, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != cur.size() || i < 1) throw Error("--I: bad reflection index '" + cur + "'");
    out.insert(i);
    cur.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '{' || ch == '}') flush();
    else if (ch == 's' && cur.empty()) continue;
    else cur += ch;
  }
  flush();
  return out;
}

namespace detail {

struct Common {
  int p = -1, q = -1;
  std::string v0, I;
  std::optional<std::string> json;  // "-" for stdout
  bool dot = false;
  int threads = 1;
  std::uint64_t seed = ChernMatherOptions{}.seed;
};

inline Clan read_clan(const std::string& text, const Common& c, const char* flag) {
  if (text.empty()) throw Error(std::string(flag) + " is required");
  Clan v;
  try {
    v = parse_clan(text);
  } catch (const Error& e) {
    throw Error(std::string(flag) + ": " + e.what());
  }
  if (c.p >= 0 && c.p != v.p()) throw Error("--p " + std::to_string(c.p) + " does not match " + v.to_string());
  if (c.q >= 0 && c.q != v.q()) throw Error("--q " + std::to_string(c.q) + " does not match " + v.to_string());
  return v;
}

inline ResolutionSpec read_spec(const Common& c) {
  const Clan v0 = read_clan(c.v0, c, "--v0");
  SimpleReflectionSet I = parse_reflections(c.I);
  try {
    return build_spec(v0, I);
  } catch (const InternalError&) {
    throw;
  } catch (const Error& e) {
    throw Error(std::string("--v0/--I: ") + e.what());
  }
}

inline void emit_json(const io::Json& j, const Common& c, std::ostream& out) {
  if (*c.json == "-" || c.json->empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(*c.json);
  if (!f) throw Error("--json: cannot write " + *c.json);
  f << j.dump(2) << "\n";
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline int clans_list(const Common& c, std::ostream& out) {
  if (c.p < 0 || c.q < 0) throw Error("--p and --q are required");
  const OrbitPoset& poset = orbit_poset(c.p, c.q);
  io::Json rows = io::Json::array();
  for (int k = 0; k < poset.size(); ++k) {
    const Clan& v = poset.clan(k);
    const bool smooth = is_smooth(v).has_value();
    if (c.json) rows.push_back({{"clan", io::to_json(v)}, {"dimension", poset.dimension(k)}, {"smooth", smooth}});
    else out << v.to_string() << "  dim " << poset.dimension(k) << (smooth ? "  smooth" : "") << "\n";
  }
  if (c.json) emit_json(rows, c, out);
  return kOk;
}

inline int clan_info(const std::string& text, const Common& c, std::ostream& out) {
  const Clan v = read_clan(text, c, "clan");
  const auto bs = is_smooth(v);
  io::Json types = io::Json::object();
  for (int i = 1; i < v.size(); ++i) types["s" + std::to_string(i)] = to_string(root_type(v, i));
  io::Json j = {{"clan", io::to_json(v)},
                {"p", v.p()},
                {"q", v.q()},
                {"length", orbit_dimension(v)},
                {"tau", io::to_json(tau(v))},
                {"smooth", bs.has_value()},
                {"phi", io::to_json(phi(v))},
                {"root_types", types}};
  if (bs) j["blocks"] = format_blocks(v, *bs);
  if (c.json) {
    emit_json(j, c, out);
    return kOk;
  }
  out << "clan: " << v.to_string() << "\n";
  out << "signature: p=" << v.p() << " q=" << v.q() << "\n";
  out << "length: " << orbit_dimension(v) << "\n";
  out << "tau: " << tau(v).to_string() << "\n";
  out << "smooth: " << yes_no(bs.has_value()) << "\n";
  if (bs) out << "blocks: " << format_blocks(v, *bs) << "\n";
  out << "phi: " << phi(v).to_string() << "\n";
  for (int i = 1; i < v.size(); ++i) out << "s" << i << ": " << to_string(root_type(v, i)) << "\n";
  return kOk;
}

inline int poset_cmd(const std::string& below, const Common& c, std::ostream& out) {
  std::optional<Clan> top;
  int p = c.p, q = c.q;
  if (!below.empty()) {
    top = read_clan(below, c, "--below");
    p = top->p();
    q = top->q();
  }
  if (p < 0 || q < 0) throw Error("--p and --q are required without --below");
  const auto report = io::poset_report(orbit_poset(p, q), top);
  if (c.dot) out << io::to_dot(report);
  else if (c.json) emit_json(io::to_json(report), c, out);
  else {
    for (std::size_t k = 0; k < report.nodes.size(); ++k)
      out << report.nodes[k].to_string() << "  dim " << report.dims[k] << "\n";
    for (auto [a, b] : report.covers)
      out << report.nodes[a].to_string() << " < " << report.nodes[b].to_string() << "\n";
  }
  return kOk;
}

inline int resolution_check(const Common& c, std::ostream& out) {
  const ResolutionSpec s = read_spec(c);
  const SmallnessReport sm = is_small(s);
  io::Json j = io::to_json(s, sm.small);
  j["tau_v0"] = io::to_json(s.tau_v0);
  j["tau_v"] = io::to_json(tau(s.v));
  j["violations"] = sm.violations;
  io::Json wit = io::Json::array();
  for (const auto& w : sm.codimension_witnesses) wit.push_back(io::to_json(w));
  j["codimension_witnesses"] = wit;
  j["fixed_points"] = z_fixed_point_count(s);
  if (c.json) {
    emit_json(j, c, out);
    return kOk;
  }
  out << "v0: " << format_blocks(s.v0, s.blocks) << "\n";
  out << "I: " << s.I.to_string() << "\n";
  out << "v: " << s.v.to_string() << "\n";
  out << "dim Z: " << s.dimension() << "\n";
  out << "tau(v0): " << s.tau_v0.to_string() << "\n";
  out << "tau(v): " << tau(s.v).to_string() << "\n";
  out << "small: " << yes_no(sm.small) << "\n";
  for (const auto& v : sm.violations) out << "  violation: " << v << "\n";
  out << "|W(v0)^min|: " << W_of_v0_min(s.v0).size() << "\n";
  out << "|Z^T|: " << z_fixed_point_count(s) << "\n";
  return kOk;
}

inline int resolution_fixed_points(const Common& c, bool count_only, long limit, std::ostream& out) {
  const ResolutionSpec s = read_spec(c);
  if (count_only) {
    if (c.json) emit_json({{"count", z_fixed_point_count(s)}, {"minimal_representatives", W_of_v0_min(s.v0).size()}}, c, out);
    else out << z_fixed_point_count(s) << "\n";
    return kOk;
  }
  const auto pts = z_fixed_points(s);
  const std::size_t shown = limit < 0 ? pts.size() : std::min<std::size_t>(pts.size(), static_cast<std::size_t>(limit));
  if (c.json) {
    io::Json arr = io::Json::array();
    for (std::size_t k = 0; k < shown; ++k) arr.push_back(io::to_json(s, pts[k]));
    emit_json(arr, c, out);
    return kOk;
  }
  for (std::size_t k = 0; k < shown; ++k) {
    const auto& x = pts[k];
    out << "[" << x.x0.to_string() << " | " << x.x1.to_string() << " | " << x.x2.to_string() << "] -> "
        << mu_image(x).to_string() << "  weights:";
    for (const auto& w : tangent_weights(s, x)) out << " " << weight_poly(w).to_string();
    out << "\n";
  }
  return kOk;
}

inline std::vector<io::FiberRow> fiber_rows(const ResolutionSpec& s, const std::vector<std::string>& ys,
                                            bool nontrivial, const Common& c) {
  std::vector<Clan> orbits;
  if (ys.empty()) orbits = orbit_poset(s.p, s.q).below(s.v0);
  else
    for (const auto& y : ys) orbits.push_back(read_clan(y, c, "--y"));
  std::vector<io::FiberRow> rows;
  for (const auto& y : orbits) {
    const int k = fiber_type_over_orbit(s, y);
    if (nontrivial && k == 0) continue;
    rows.push_back({y, k});
  }
  return rows;
}

inline std::string fiber_name(int k) {
  if (k == 0) return "pt";
  std::string out = "P1";
  for (int i = 1; i < k; ++i) out += " x P1";
  return out;
}

inline int fibers_table(const std::vector<std::string>& ys, bool nontrivial, const Common& c, std::ostream& out) {
  const ResolutionSpec s = read_spec(c);
  const auto rows = fiber_rows(s, ys, nontrivial, c);
  if (c.json) {
    io::Json arr = io::Json::array();
    for (const auto& r : rows) arr.push_back(io::to_json(r));
    emit_json(arr, c, out);
    return kOk;
  }
  for (const auto& r : rows)
    out << r.orbit.to_compact_string() << "  k=" << r.k << "  fiber " << fiber_name(r.k) << "  euler "
        << (1L << r.k) << "\n";
  return kOk;
}

inline ChernMatherResult compute(const Common& c) {
  const ResolutionSpec s = read_spec(c);
  if (c.threads < 1) throw Error("--threads must be at least 1");
  ChernMatherOptions opt;
  opt.threads = c.threads;
  opt.seed = c.seed;
  return chern_mather(s, opt);
}

inline void print_result(const ChernMatherResult& r, std::ostream& out) {
  out << "v0: " << format_blocks(r.spec.v0, r.spec.blocks) << "  I: " << r.spec.I.to_string()
      << "  v: " << r.spec.v.to_string() << "\n";
  out << "small: " << yes_no(r.small) << "  (" << r.label << ")\n";
  for (const auto& [w, coeff] : r.expansion) out << w.to_string() << ": " << coeff.to_string() << "\n";
}

inline int cm_compute(const Common& c, std::ostream& out) {
  const auto r = compute(c);
  if (c.json) {
    if (*c.json != "-") print_result(r, out);
    emit_json(io::to_json(r), c, out);
  } else {
    print_result(r, out);
    out << "positivity: " << (r.positivity.pass ? "PASS" : "FAIL") << "\n";
  }
  return kOk;
}

inline int cm_verify(const Common& c, std::ostream& out) {
  const auto r = compute(c);
  if (c.json) emit_json(io::to_json(r.positivity, r.spec.n - 1), c, out);
  else {
    for (const auto& cv : r.positivity.coefficients) {
      out << cv.w.to_string() << ": " << (cv.report.positive ? "PASS" : "FAIL");
      if (!cv.report.positive) {
        Poly t;
        t.add_term(cv.report.witness->first, cv.report.witness->second);
        out << "  witness " << t.to_string();
      }
      out << "\n";
    }
    out << "verdict: " << (r.positivity.pass ? "PASS" : "FAIL") << "\n";
  }
  return r.positivity.pass ? kOk : kFail;
}

}  // namespace detail

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Clans, orbit closures and equivariant Chern-Mather classes", "kclans"};
  app.require_subcommand(1);
  Common c;
  auto add_pq = [&](CLI::App* a) {
    a->add_option("--p", c.p, "rank of the first factor of K")->check(CLI::NonNegativeNumber);
    a->add_option("--q", c.q, "rank of the second factor of K")->check(CLI::NonNegativeNumber);
  };
  auto add_json = [&](CLI::App* a) {
    a->add_option("--json", c.json, "write JSON (to a file when a path is given)")->expected(0, 1)->default_str("-");
  };
  auto add_spec = [&](CLI::App* a) {
    add_pq(a);
    a->add_option("--v0", c.v0, "smooth clan, block bars allowed")->required();
    a->add_option("--I", c.I, "commuting simple reflections, e.g. 3,5");
    add_json(a);
  };

  auto* clans = app.add_subcommand("clans", "clan enumeration")->require_subcommand(1);
  auto* clans_list_cmd = clans->add_subcommand("list", "all clans of signature (p,q)");
  add_pq(clans_list_cmd);
  add_json(clans_list_cmd);

  auto* clan = app.add_subcommand("clan", "single clan queries")->require_subcommand(1);
  auto* info = clan->add_subcommand("info", "length, tau, root types, smoothness");
  std::string info_clan;
  info->add_option("clan", info_clan, "clan text")->required();
  add_pq(info);
  add_json(info);

  auto* poset = app.add_subcommand("poset", "closure order");
  std::string below;
  add_pq(poset);
  poset->add_option("--below", below, "restrict to the lower interval of this clan");
  poset->add_flag("--dot", c.dot, "emit a DOT digraph of covers");
  add_json(poset);

  auto* resolution = app.add_subcommand("resolution", "the resolution Z -> X_v")->require_subcommand(1);
  auto* check = resolution->add_subcommand("check", "validity, smallness and counts");
  add_spec(check);
  auto* fixed = resolution->add_subcommand("fixed-points", "torus fixed points of Z with tangent weights");
  add_spec(fixed);
  bool count_only = false;
  long limit = -1;
  fixed->add_flag("--count", count_only, "print only the number of fixed points");
  fixed->add_option("--limit", limit, "print at most this many points");

  auto* fibers = app.add_subcommand("fibers", "fibers of the resolution")->require_subcommand(1);
  auto* table = fibers->add_subcommand("table", "fiber type over each orbit below v0");
  add_spec(table);
  std::vector<std::string> ys;
  bool nontrivial = false;
  table->add_option("--y", ys, "only these orbits (repeatable)");
  table->add_flag("--nontrivial", nontrivial, "omit point fibers");

  auto* cm = app.add_subcommand("cm", "equivariant Chern-Mather classes")->require_subcommand(1);
  auto* cm_c = cm->add_subcommand("compute", "Schubert expansion of the class");
  auto* cm_v = cm->add_subcommand("verify", "positivity of every coefficient; exit 1 on FAIL");
  for (auto* a : {cm_c, cm_v}) {
    add_spec(a);
    a->add_option("--threads", c.threads, "worker threads");
    a->add_option("--seed", c.seed, "seed for the randomized evaluation check");
  }

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (clans_list_cmd->parsed()) return clans_list(c, out);
    if (info->parsed()) return clan_info(info_clan, c, out);
    if (poset->parsed()) return poset_cmd(below, c, out);
    if (check->parsed()) return resolution_check(c, out);
    if (fixed->parsed()) return resolution_fixed_points(c, count_only, limit, out);
    if (table->parsed()) return fibers_table(ys, nontrivial, c, out);
    if (cm_c->parsed()) return cm_compute(c, out);
    if (cm_v->parsed()) return cm_verify(c, out);
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  err << "usage error: no command\n";
  return kUsage;
}

inline int run(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace kclans::cli
