#pragma once

// Exact arithmetic in H_T^* = Q[a1, ..., a_{n-1}] (a_i the simple roots):
// sparse polynomials, linear forms, and rational functions whose
// denominators are products of linear forms.

#include <gmpxx.h>

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kclans/error.hpp"
#include "kclans/weyl.hpp"

namespace kclans {

using Rational = mpq_class;

inline constexpr int kMaxVars = 15;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> exps{};

  int degree() const {
    int d = 0;
    for (auto e : exps) d += e;
    return d;
  }
  bool divides(const Monomial& o) const {
    for (int i = 0; i < kMaxVars; ++i)
      if (exps[i] > o.exps[i]) return false;
    return true;
  }
  Monomial operator*(const Monomial& o) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) {
      const int e = exps[i] + o.exps[i];
      if (e > 255) throw Error("monomial exponent overflow");
      m.exps[i] = static_cast<std::uint8_t>(e);
    }
    return m;
  }
  // requires divides(o)
  Monomial quotient_of(const Monomial& o) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.exps[i] = static_cast<std::uint8_t>(o.exps[i] - exps[i]);
    return m;
  }
  static Monomial var(int i) {
    Monomial m;
    m.exps[i] = 1;
    return m;
  }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// Graded lex: higher total degree is larger, ties broken by comparing
// exponents of a1, a2, ... in turn.
struct GrLex {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return a.exps < b.exps;
  }
};

class Poly {
public:
  using Terms = std::map<Monomial, Rational, GrLex>;

  Poly() = default;
  Poly(long c) {  // NOLINT: implicit constant
    if (c != 0) terms_.emplace(Monomial{}, Rational(c));
  }
  explicit Poly(const Rational& c) {
    if (c != 0) terms_.emplace(Monomial{}, c);
  }
  // a_i, one-based
  static Poly alpha(int i) {
    if (i < 1 || i > kMaxVars) throw Error("variable index out of range");
    Poly p;
    p.terms_.emplace(Monomial::var(i - 1), Rational(1));
    return p;
  }
  static Poly monomial(const Monomial& m, const Rational& c) {
    Poly p;
    if (c != 0) p.terms_.emplace(m, c);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const Rational& leading_coefficient() const { return terms_.rbegin()->second; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0); }
  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }
  Rational coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  // largest variable index with a nonzero exponent, 0 for constants
  int max_variable() const {
    int m = 0;
    for (const auto& [mon, c] : terms_)
      for (int i = 0; i < kMaxVars; ++i)
        if (mon.exps[i]) m = std::max(m, i + 1);
    return m;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator-(Poly a) { return a *= Rational(-1); }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  // Exact division; nullopt if d does not divide *this.
  std::optional<Poly> divide_exact(const Poly& d) const {
    if (d.is_zero()) throw Error("division by the zero polynomial");
    Poly rem = *this, quot;
    const Monomial& lm = d.leading_monomial();
    const Rational& lc = d.leading_coefficient();
    while (!rem.is_zero()) {
      const Monomial& rm = rem.leading_monomial();
      if (!lm.divides(rm)) return std::nullopt;
      const Monomial qm = lm.quotient_of(rm);
      const Rational qc = rem.leading_coefficient() / lc;
      quot.add_term(qm, qc);
      for (const auto& [m, c] : d.terms_) rem.add_term(m * qm, -(c * qc));
    }
    return quot;
  }

  // point[i] is the value of a_{i+1}; missing variables must not occur
  Rational evaluate(std::span<const Rational> point) const {
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
      Rational t = c;
      for (int i = 0; i < kMaxVars; ++i) {
        if (!m.exps[i]) continue;
        if (i >= static_cast<int>(point.size())) throw Error("evaluation point too short");
        for (int k = 0; k < m.exps[i]; ++k) t *= point[i];
      }
      total += t;
    }
    return total;
  }

  // Substitute a_i -> 0 for all i.
  Rational limit_at_zero() const { return constant_term(); }

  // "2*a1^2*a3 - 1/2*a2 + 3", highest grlex term first; "0" for zero.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const Monomial& m = it->first;
      Rational c = it->second;
      const bool neg = c < 0;
      if (neg) c = -c;
      if (first) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      first = false;
      std::string mon;
      for (int i = 0; i < kMaxVars; ++i) {
        if (!m.exps[i]) continue;
        if (!mon.empty()) mon += '*';
        mon += "a" + std::to_string(i + 1);
        if (m.exps[i] > 1) mon += "^" + std::to_string(m.exps[i]);
      }
      if (mon.empty()) out += c.get_str();
      else if (c == 1) out += mon;
      else out += c.get_str() + "*" + mon;
    }
    return out;
  }

private:
  Terms terms_;
};

// Accumulates sums of products. Inputs with small integer coefficients in at
// most 8 variables go through packed monomials and 128-bit integers; anything
// else is summed exactly over the rationals.
class ProductSum {
public:
  void add(const Poly& a, const Poly& b, bool negate = false) {
    if (a.is_zero() || b.is_zero()) return;
    auto pa = pack(a), pb = pack(b);
    if (!pa || !pb || a.degree() + b.degree() > 255) {
      for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) slow_.add_term(ma * mb, negate ? Rational(-(ca * cb)) : Rational(ca * cb));
      return;
    }
    fast_.reserve(fast_.size() + pa->size() * pb->size() / 4);
    for (const auto& [ka, ca] : *pa)
      for (const auto& [kb, cb] : *pb) {
        const __int128 t = static_cast<__int128>(ca) * cb;
        fast_[ka + kb] += negate ? -t : t;
      }
  }
  void add(const Poly& a, bool negate = false) {
    for (const auto& [m, c] : a.terms()) slow_.add_term(m, negate ? Rational(-c) : c);
  }

  Poly result() const {
    Poly out = slow_;
    for (const auto& [key, v] : fast_) {
      if (v == 0) continue;
      Monomial m;
      for (int i = 0; i < 8; ++i) m.exps[i] = static_cast<std::uint8_t>(key >> (8 * i));
      out.add_term(m, Rational(to_mpz(v)));
    }
    return out;
  }

private:
  static constexpr long kSmall = 1L << 40;

  static std::optional<std::vector<std::pair<std::uint64_t, long>>> pack(const Poly& p) {
    std::vector<std::pair<std::uint64_t, long>> out;
    out.reserve(p.term_count());
    for (const auto& [m, c] : p.terms()) {
      if (c.get_den() != 1 || !c.get_num().fits_slong_p()) return std::nullopt;
      const long v = c.get_num().get_si();
      if (v >= kSmall || v <= -kSmall) return std::nullopt;
      std::uint64_t key = 0;
      for (int i = 0; i < kMaxVars; ++i) {
        if (!m.exps[i]) continue;
        if (i >= 8) return std::nullopt;
        key |= static_cast<std::uint64_t>(m.exps[i]) << (8 * i);
      }
      out.emplace_back(key, v);
    }
    return out;
  }

  static mpz_class to_mpz(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    mpz_class hi(static_cast<unsigned long>(u >> 64)), lo(static_cast<unsigned long>(u & ~0UL));
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
  }

  std::unordered_map<std::uint64_t, __int128> fast_;
  Poly slow_;
};

inline Poly operator*(const Poly& a, const Poly& b) {
  ProductSum acc;
  acc.add(a, b);
  return acc.result();
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

// Parses the output of Poly::to_string. Factors may be separated by '*' or
// whitespace; coefficients may be fractions.
inline Poly parse_poly(std::string_view text) {
  Poly result;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n')) ++i;
  };
  auto fail = [&](const std::string& why) -> Poly {
    throw Error("cannot parse polynomial '" + std::string(text) + "': " + why);
  };
  auto read_int = [&]() -> std::string {
    std::string digits;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') digits += text[i++];
    return digits;
  };
  skip();
  if (i == text.size()) fail("empty");
  bool any = false;
  while (true) {
    skip();
    if (i == text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (any) {
      fail("expected + or -");
    }
    Rational coef(sign);
    Monomial mon;
    bool have_factor = false;
    while (true) {
      skip();
      if (i == text.size()) break;
      const char c = text[i];
      if (c >= '0' && c <= '9') {
        std::string num = read_int(), den = "1";
        if (i < text.size() && text[i] == '/') {
          ++i;
          den = read_int();
          if (den.empty()) fail("bad fraction");
        }
        Rational r(num + "/" + den, 10);
        r.canonicalize();
        coef *= r;
      } else if (c == 'a') {
        ++i;
        const std::string idx = read_int();
        if (idx.empty()) fail("variable without index");
        const int v = std::stoi(idx);
        if (v < 1 || v > kMaxVars) fail("variable index out of range");
        int e = 1;
        if (i < text.size() && text[i] == '^') {
          ++i;
          const std::string ex = read_int();
          if (ex.empty()) fail("bad exponent");
          e = std::stoi(ex);
        }
        const int total = mon.exps[v - 1] + e;
        if (total > 255) fail("exponent too large");
        mon.exps[v - 1] = static_cast<std::uint8_t>(total);
      } else {
        break;
      }
      have_factor = true;
      skip();
      if (i < text.size() && text[i] == '*') ++i;
    }
    if (!have_factor) fail("empty term");
    result.add_term(mon, coef);
    any = true;
  }
  return result;
}

// Sum of c_i a_i plus a constant. Used for the weights beta (constant 0)
// and the shifted forms 1 + beta.
struct LinearForm {
  std::vector<int> coeffs;  // over a1..a_{n-1}
  int constant = 0;

  bool is_zero() const {
    return constant == 0 && std::all_of(coeffs.begin(), coeffs.end(), [](int c) { return c == 0; });
  }
  Poly to_poly() const {
    Poly p(static_cast<long>(constant));
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i]) p += Poly::alpha(static_cast<int>(i) + 1) * Rational(coeffs[i]);
    return p;
  }
  Rational evaluate(std::span<const Rational> point) const {
    Rational r = constant;
    for (std::size_t i = 0; i < coeffs.size(); ++i) r += coeffs[i] * point[i];
    return r;
  }
  LinearForm operator-() const {
    LinearForm f = *this;
    for (int& c : f.coeffs) c = -c;
    f.constant = -f.constant;
    return f;
  }
  std::string to_string() const { return to_poly().to_string(); }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;
  friend auto operator<=>(const LinearForm&, const LinearForm&) = default;
};

// eps_i - eps_j = a_i + ... + a_{j-1}; in general the coefficient of a_k is
// the partial sum c_1 + ... + c_k.
inline LinearForm weight_to_alpha(const Weight& lambda) {
  const int n = lambda.size();
  long sum = 0;
  for (int c : lambda.coords) sum += c;
  if (sum != 0) throw Error("weight " + lambda.to_string() + " is not in the root lattice");
  LinearForm f;
  f.coeffs.assign(std::max(n - 1, 0), 0);
  int partial = 0;
  for (int k = 0; k + 1 < n; ++k) {
    partial += lambda.coords[k];
    f.coeffs[k] = partial;
  }
  return f;
}

inline Poly weight_poly(const Weight& lambda) { return weight_to_alpha(lambda).to_poly(); }

// Scales f by a nonzero integer so that its coefficients are coprime and its
// first nonzero entry (variables first, then constant) is positive. Returns
// the factor removed, i.e. original = factor * normalized.
inline Rational normalize_form(LinearForm& f) {
  if (f.is_zero()) throw Error("division by an identically zero linear form");
  int g = std::abs(f.constant);
  for (int c : f.coeffs) g = std::gcd(g, std::abs(c));
  int lead = 0;
  for (int c : f.coeffs)
    if (c) { lead = c; break; }
  if (!lead) lead = f.constant;
  const int scale = lead < 0 ? -g : g;
  for (int& c : f.coeffs) c /= scale;
  f.constant /= scale;
  return Rational(scale);
}

// numerator / product of linear forms (with multiplicity).
class RationalFunction {
public:
  using Denominator = std::map<LinearForm, int>;

  RationalFunction() = default;
  RationalFunction(Poly num) : num_(std::move(num)) {}  // NOLINT: polynomials embed

  const Poly& numerator() const { return num_; }
  const Denominator& denominator() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int denominator_degree() const {
    int d = 0;
    for (const auto& [f, m] : den_) d += m;
    return d;
  }

  // *this / f
  RationalFunction& divide_by(LinearForm f) {
    const Rational s = normalize_form(f);
    num_ *= Rational(1) / s;
    ++den_[f];
    return *this;
  }
  // *this * f, cancelling against the denominator when possible
  RationalFunction& multiply_by(LinearForm f) {
    const Rational s = normalize_form(f);
    auto it = den_.find(f);
    if (it != den_.end()) {
      if (--it->second == 0) den_.erase(it);
      num_ *= s;
    } else {
      num_ = num_ * f.to_poly() * s;
    }
    return *this;
  }
  RationalFunction& multiply_by(const Poly& p) {
    num_ *= p;
    return *this;
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    RationalFunction r;
    r.den_ = a.den_;
    for (const auto& [f, m] : b.den_) r.den_[f] = std::max(r.den_[f], m);
    r.num_ = a.num_ * a.cofactor(r.den_) + b.num_ * b.cofactor(r.den_);
    if (r.num_.is_zero()) r.den_.clear();
    return r;
  }
  RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
  friend RationalFunction operator-(RationalFunction a) {
    a.num_ *= Rational(-1);
    return a;
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    RationalFunction r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_;
    for (const auto& [f, m] : b.den_) r.den_[f] += m;
    return r;
  }

  // Cancels every denominator factor that divides the numerator exactly.
  RationalFunction& simplify() {
    if (num_.is_zero()) {
      den_.clear();
      return *this;
    }
    for (auto it = den_.begin(); it != den_.end();) {
      const Poly fp = it->first.to_poly();
      while (it->second > 0) {
        auto q = num_.divide_exact(fp);
        if (!q) break;
        num_ = std::move(*q);
        --it->second;
      }
      it = it->second == 0 ? den_.erase(it) : std::next(it);
    }
    return *this;
  }
  RationalFunction simplified() const {
    RationalFunction r = *this;
    return r.simplify();
  }

  bool is_polynomial() const { return den_.empty(); }
  // numerator if the simplified denominator is empty
  std::optional<Poly> as_polynomial() const {
    RationalFunction r = simplified();
    if (!r.den_.empty()) return std::nullopt;
    return r.num_;
  }

  // nullopt when a denominator factor vanishes at the point
  std::optional<Rational> evaluate(std::span<const Rational> point) const {
    Rational d = 1;
    for (const auto& [f, m] : den_) {
      const Rational v = f.evaluate(point);
      if (v == 0) return std::nullopt;
      for (int k = 0; k < m; ++k) d *= v;
    }
    return num_.evaluate(point) / d;
  }

  std::string to_string() const {
    if (den_.empty()) return num_.to_string();
    std::string out = "(" + num_.to_string() + ")/(";
    bool first = true;
    for (const auto& [f, m] : den_) {
      if (!first) out += "*";
      first = false;
      out += "(" + f.to_string() + ")";
      if (m > 1) out += "^" + std::to_string(m);
    }
    return out + ")";
  }

  // Equal as rational functions: cross-multiplied numerators agree.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    Denominator all = a.den_;
    for (const auto& [f, m] : b.den_) all[f] = std::max(all[f], m);
    return a.num_ * a.cofactor(all) == b.num_ * b.cofactor(all);
  }

private:
  // product of the factors of `target` missing from this denominator
  Poly cofactor(const Denominator& target) const {
    Poly p(1L);
    for (const auto& [f, m] : target) {
      auto it = den_.find(f);
      const int have = it == den_.end() ? 0 : it->second;
      if (have > m) throw InternalError("cofactor: target denominator too small");
      if (have == m) continue;
      const Poly fp = f.to_poly();
      for (int k = have; k < m; ++k) p *= fp;
    }
    return p;
  }

  Poly num_;
  Denominator den_;
};

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& r) { return os << r.to_string(); }

}  // namespace kclans
