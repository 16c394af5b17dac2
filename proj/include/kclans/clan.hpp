#pragma once

// Clans: the combinatorial parametrization of GL(p) x GL(q) orbits on the
// flag variety of GL(p+q).

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "kclans/error.hpp"
#include "kclans/weyl.hpp"

namespace kclans {

// Tokens are stored as ints: +1.. are pair ids, the two signs are negative.
inline constexpr int kPlus = -1;
inline constexpr int kMinus = -2;

inline bool is_sign(int token) { return token < 0; }

class Clan {
public:
  Clan() = default;

  // Validates and canonicalizes. Pair ids may be any positive ints.
  explicit Clan(std::vector<int> tokens) : tokens_(std::move(tokens)) {
    canonicalize();
    int plus = 0, minus = 0;
    for (int t : tokens_) {
      if (t == kPlus) ++plus;
      else if (t == kMinus) ++minus;
    }
    const int n = size();
    p_ = (n + plus - minus) / 2;
    q_ = n - p_;
  }

  Clan(std::vector<int> tokens, int p, int q) : Clan(std::move(tokens)) {
    if (p != p_ || q != q_)
      throw Error("clan " + to_string() + " has signature (" + std::to_string(p_) + "," + std::to_string(q_) +
                  "), expected (" + std::to_string(p) + "," + std::to_string(q) + ")");
  }

  int size() const { return static_cast<int>(tokens_.size()); }
  int p() const { return p_; }
  int q() const { return q_; }
  // one-based
  int operator[](int i) const { return tokens_[i - 1]; }
  const std::vector<int>& tokens() const { return tokens_; }
  // position of the other occurrence of the id at i; 0 for signs
  int mate(int i) const { return mates_[i - 1]; }

  bool is_closed() const {
    return std::all_of(tokens_.begin(), tokens_.end(), [](int t) { return is_sign(t); });
  }

  int max_id() const {
    int m = 0;
    for (int t : tokens_) m = std::max(m, t);
    return m;
  }

  std::string to_string() const {
    std::string out = "(";
    for (int i = 0; i < size(); ++i) {
      if (i) out += ',';
      out += token_text(tokens_[i]);
    }
    return out + ")";
  }

  // "(1+1-)" style; only valid when every id is a single digit
  std::string to_compact_string() const {
    std::string out = "(";
    for (int t : tokens_) {
      if (t > 9) return to_string();
      out += token_text(t);
    }
    return out + ")";
  }

  friend bool operator==(const Clan& a, const Clan& b) { return a.tokens_ == b.tokens_; }
  friend auto operator<=>(const Clan& a, const Clan& b) { return a.tokens_ <=> b.tokens_; }

private:
  static std::string token_text(int t) {
    if (t == kPlus) return "+";
    if (t == kMinus) return "-";
    return std::to_string(t);
  }

  void canonicalize() {
    std::map<int, int> rename;
    std::map<int, int> count;
    std::map<int, int> first_pos;
    for (int i = 0; i < size(); ++i) {
      const int t = tokens_[i];
      if (t == kPlus || t == kMinus) continue;
      if (t <= 0) throw Error("invalid clan token " + std::to_string(t));
      if (count[t]++ == 0) {
        const int id = static_cast<int>(rename.size()) + 1;
        rename[t] = id;
        first_pos[t] = i;
      }
    }
    for (auto [id, c] : count)
      if (c != 2) throw Error("pair id " + std::to_string(id) + " occurs " + std::to_string(c) + " times");
    mates_.assign(tokens_.size(), 0);
    for (int i = 0; i < size(); ++i) {
      int& t = tokens_[i];
      if (t < 0) continue;
      const int j = first_pos[t];
      if (j != i) {
        mates_[i] = j + 1;
        mates_[j] = i + 1;
      }
      t = rename[t];
    }
  }

  std::vector<int> tokens_;
  std::vector<int> mates_;
  int p_ = 0;
  int q_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, const Clan& c) { return os << c.to_string(); }

// Tokens "+", "-", decimal ids; commas separate tokens when present,
// otherwise every character is a token. Bars are dropped.
inline Clan parse_clan(std::string_view text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    // U+2212 MINUS SIGN
    if (i + 2 < text.size() && static_cast<unsigned char>(text[i]) == 0xE2 &&
        static_cast<unsigned char>(text[i + 1]) == 0x88 && static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s += '-';
      i += 2;
      continue;
    }
    const char c = text[i];
    if (c == ' ' || c == '\t' || c == '(' || c == ')') continue;
    s += c;
  }
  if (s.empty()) throw Error("empty clan");
  std::vector<int> tokens;
  auto push = [&](std::string_view tok) {
    if (tok.empty()) return;
    if (tok == "+") tokens.push_back(kPlus);
    else if (tok == "-") tokens.push_back(kMinus);
    else {
      for (char c : tok)
        if (c < '0' || c > '9') throw Error("malformed clan token '" + std::string(tok) + "' in " + std::string(text));
      const int id = std::stoi(std::string(tok));
      if (id <= 0) throw Error("pair ids must be positive in " + std::string(text));
      tokens.push_back(id);
    }
  };
  if (s.find(',') != std::string::npos) {
    std::string tok;
    for (char c : s) {
      if (c == ',' || c == '|') {
        push(tok);
        tok.clear();
      } else {
        tok += c;
      }
    }
    push(tok);
  } else {
    for (char c : s)
      if (c != '|') push(std::string_view(&c, 1));
  }
  return Clan(std::move(tokens));
}

inline Clan parse_clan(std::string_view text, int p, int q) {
  Clan c = parse_clan(text);
  if (c.p() != p || c.q() != q)
    throw Error("clan " + c.to_string() + " has signature (" + std::to_string(c.p()) + "," + std::to_string(c.q()) +
                "), expected (" + std::to_string(p) + "," + std::to_string(q) + ")");
  return c;
}

inline std::string format_clan(const Clan& c) { return c.to_string(); }

// All canonical clans of signature (p, q), sorted.
inline std::vector<Clan> enumerate_clans(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1) throw Error("enumerate_clans: need p, q >= 0 and p + q >= 1");
  const int n = p + q;
  std::vector<Clan> out;
  std::vector<int> tokens(n);
  std::vector<int> open;  // ids waiting for their mate
  // Recursive fill; ids are assigned in order of first occurrence, so every
  // generated sequence is already canonical.
  auto rec = [&](auto&& self, int pos, int plus_left, int minus_left, int next_id) -> void {
    const int remaining = n - pos;
    if (remaining == 0) {
      if (open.empty() && plus_left == 0 && minus_left == 0) out.emplace_back(tokens);
      return;
    }
    // pairs still to place beyond the signs must fit
    if (plus_left + minus_left + static_cast<int>(open.size()) > remaining) return;
    if (plus_left > 0) {
      tokens[pos] = kPlus;
      self(self, pos + 1, plus_left - 1, minus_left, next_id);
    }
    if (minus_left > 0) {
      tokens[pos] = kMinus;
      self(self, pos + 1, plus_left, minus_left - 1, next_id);
    }
    for (std::size_t k = 0; k < open.size(); ++k) {
      const int id = open[k];
      tokens[pos] = id;
      open.erase(open.begin() + k);
      self(self, pos + 1, plus_left, minus_left, next_id);
      open.insert(open.begin() + k, id);
    }
    if (static_cast<int>(open.size()) + 1 + plus_left + minus_left <= remaining - 1) {
      tokens[pos] = next_id;
      open.push_back(next_id);
      self(self, pos + 1, plus_left, minus_left, next_id + 1);
      open.pop_back();
    }
  };
  for (int pairs = 0; pairs <= std::min(p, q); ++pairs) rec(rec, 0, p - pairs, q - pairs, 1);
  std::sort(out.begin(), out.end());
  return out;
}

// Involution swapping mate positions.
inline Permutation phi(const Clan& v) {
  std::vector<int> e(v.size());
  for (int i = 1; i <= v.size(); ++i) e[i - 1] = is_sign(v[i]) ? i : v.mate(i);
  return Permutation(std::move(e));
}

enum class RootType { Real, CompactImaginary, NoncompactImaginary, ComplexAscent, ComplexDescent };

inline const char* to_string(RootType t) {
  switch (t) {
    case RootType::Real: return "real";
    case RootType::CompactImaginary: return "compact imaginary";
    case RootType::NoncompactImaginary: return "noncompact imaginary";
    case RootType::ComplexAscent: return "complex ascent";
    case RootType::ComplexDescent: return "complex descent";
  }
  return "?";
}

inline void check_simple_index(const Clan& v, int i) {
  if (i < 1 || i >= v.size())
    throw Error("simple reflection index " + std::to_string(i) + " out of range for clan of size " +
                std::to_string(v.size()));
}

inline RootType root_type(const Clan& v, int i) {
  check_simple_index(v, i);
  const int a = v[i], b = v[i + 1];
  if (is_sign(a) && is_sign(b)) return a == b ? RootType::CompactImaginary : RootType::NoncompactImaginary;
  if (!is_sign(a) && v.mate(i) == i + 1) return RootType::Real;
  bool ascent = false;
  if (!is_sign(a) && !is_sign(b)) ascent = v.mate(i) < v.mate(i + 1);
  else if (is_sign(a)) ascent = v.mate(i + 1) > i + 1;
  else ascent = v.mate(i) < i;
  return ascent ? RootType::ComplexAscent : RootType::ComplexDescent;
}

inline bool is_ascent(RootType t) { return t == RootType::ComplexAscent || t == RootType::NoncompactImaginary; }

// Richardson-Springer monoid action v * s_i.
inline Clan monoid_act(const Clan& v, int i) {
  const RootType t = root_type(v, i);
  if (!is_ascent(t)) return v;
  std::vector<int> tok = v.tokens();
  if (t == RootType::ComplexAscent) {
    std::swap(tok[i - 1], tok[i]);
  } else {
    const int fresh = v.max_id() + 1;
    tok[i - 1] = fresh;
    tok[i] = fresh;
  }
  return Clan(std::move(tok));
}

// Iterated action along a word: v * s_{a1} * ... * s_{ak}.
inline Clan monoid_act_word(Clan v, std::span<const int> word) {
  for (int i : word) v = monoid_act(v, i);
  return v;
}

// v * w_I, using a reduced word of the longest element of W_I.
inline Clan monoid_act_set(const Clan& v, SimpleReflectionSet I) {
  I.validate(v.size());
  const auto word = reduced_word(longest_element(I, v.size()));
  return monoid_act_word(v, word);
}

inline SimpleReflectionSet tau(const Clan& v) {
  SimpleReflectionSet t;
  for (int i = 1; i < v.size(); ++i)
    if (!is_ascent(root_type(v, i))) t.insert(i);
  return t;
}

// A simple reflection s with v = u * s for some u < v, together with the
// candidates u (two for a real root: both sign orders).
struct Descent {
  int index = 0;
  std::vector<Clan> predecessors;
};

inline std::optional<Descent> find_descent(const Clan& v) {
  for (int i = 1; i < v.size(); ++i) {
    const RootType t = root_type(v, i);
    if (t == RootType::ComplexDescent) {
      std::vector<int> tok = v.tokens();
      std::swap(tok[i - 1], tok[i]);
      return Descent{i, {Clan(std::move(tok))}};
    }
    if (t == RootType::Real) {
      std::vector<int> a = v.tokens(), b = v.tokens();
      a[i - 1] = kPlus; a[i] = kMinus;
      b[i - 1] = kMinus; b[i] = kPlus;
      return Descent{i, {Clan(std::move(a)), Clan(std::move(b))}};
    }
  }
  return std::nullopt;
}

// dim of the orbit closure: closed orbits are flag varieties of K, and each
// step u -> u * s up the weak order adds one.
inline int orbit_dimension(const Clan& v) {
  int steps = 0;
  Clan cur = v;
  while (auto d = find_descent(cur)) {
    cur = d->predecessors.front();
    ++steps;
  }
  const int p = v.p(), q = v.q();
  return p * (p - 1) / 2 + q * (q - 1) / 2 + steps;
}

inline Clan max_clan(int p, int q) {
  if (p < 0 || q < 0 || p + q < 1) throw Error("max_clan: need p, q >= 0 and p + q >= 1");
  const int m = std::min(p, q);
  const int sign = p >= q ? kPlus : kMinus;
  std::vector<int> tok;
  for (int k = 1; k <= m; ++k) tok.push_back(k);
  for (int k = 0; k < std::abs(p - q); ++k) tok.push_back(sign);
  for (int k = m; k >= 1; --k) tok.push_back(k);
  return Clan(std::move(tok));
}

struct Block {
  int begin = 1;  // first position, one-based
  int end = 1;    // one past the last position
  int p = 0;
  int q = 0;
  int size() const { return end - begin; }
  friend bool operator==(const Block&, const Block&) = default;
};

struct BlockStructure {
  std::vector<Block> blocks;

  // true iff s_i straddles two blocks
  bool is_boundary(int i) const {
    for (std::size_t k = 0; k + 1 < blocks.size(); ++k)
      if (blocks[k].end - 1 == i) return true;
    return false;
  }
  const Block& block_of(int position) const {
    for (const auto& b : blocks)
      if (position >= b.begin && position < b.end) return b;
    throw Error("position outside block structure");
  }
  int block_index(int position) const {
    for (std::size_t k = 0; k < blocks.size(); ++k)
      if (position >= blocks[k].begin && position < blocks[k].end) return static_cast<int>(k);
    throw Error("position outside block structure");
  }
  // reflections inside a block
  SimpleReflectionSet interior() const {
    SimpleReflectionSet s;
    for (const auto& b : blocks)
      for (int i = b.begin; i + 1 < b.end; ++i) s.insert(i);
    return s;
  }
};

inline Clan sub_clan(const Clan& v, int begin, int end) {
  return Clan(std::vector<int>(v.tokens().begin() + (begin - 1), v.tokens().begin() + (end - 1)));
}

inline std::string format_blocks(const Clan& v, const BlockStructure& bs) {
  std::string out = "(";
  for (std::size_t k = 0; k < bs.blocks.size(); ++k) {
    if (k) out += '|';
    const auto& b = bs.blocks[k];
    for (int i = b.begin; i < b.end; ++i) {
      if (i > b.begin) out += ',';
      const int t = v[i];
      out += t == kPlus ? "+" : t == kMinus ? "-" : std::to_string(t);
    }
  }
  return out + ")";
}

// Decomposition into maximal clans max(V_{pj,qj}), or nullopt. Blocks are
// the minimal pair-closed segments, with runs of equal signs merged, so the
// reflections inside blocks are exactly tau(v).
inline std::optional<BlockStructure> is_smooth(const Clan& v) {
  const int n = v.size();
  std::vector<std::pair<int, int>> segs;
  int begin = 1, reach = 0;
  for (int i = 1; i <= n; ++i) {
    if (!is_sign(v[i])) reach = std::max(reach, v.mate(i));
    if (reach <= i) {
      segs.emplace_back(begin, i + 1);
      begin = i + 1;
      reach = 0;
    }
  }
  BlockStructure bs;
  for (auto [b, e] : segs) {
    const bool single_sign = e - b == 1 && is_sign(v[b]);
    if (single_sign && !bs.blocks.empty()) {
      auto& last = bs.blocks.back();
      const bool last_signs = std::all_of(v.tokens().begin() + (last.begin - 1), v.tokens().begin() + (last.end - 1),
                                          [&](int t) { return t == v[b]; });
      if (last_signs) {
        last.end = e;
        if (v[b] == kPlus) ++last.p;
        else ++last.q;
        continue;
      }
    }
    Clan piece = sub_clan(v, b, e);
    bs.blocks.push_back(Block{b, e, piece.p(), piece.q()});
  }
  for (const auto& b : bs.blocks)
    if (sub_clan(v, b.begin, b.end) != max_clan(b.p, b.q)) return std::nullopt;
  return bs;
}

// 1..p increasing at + positions, p+1..n increasing at - positions.
inline Permutation w_u(const Clan& u) {
  if (!u.is_closed()) throw Error("w_u requires a clan of signs only: " + u.to_string());
  std::vector<int> e(u.size());
  int next_plus = 1, next_minus = u.p() + 1;
  for (int i = 1; i <= u.size(); ++i) e[i - 1] = u[i] == kPlus ? next_plus++ : next_minus++;
  return Permutation(std::move(e));
}

// Sign pattern of a T-fixed point: + where w(i) <= p.
inline Clan sign_pattern(const Permutation& w, int p) {
  std::vector<int> tok(w.size());
  for (int i = 1; i <= w.size(); ++i) tok[i - 1] = w(i) <= p ? kPlus : kMinus;
  return Clan(std::move(tok));
}

}  // namespace kclans
