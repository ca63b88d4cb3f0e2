#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "ffbasis/errors.hpp"
#include "ffbasis/field.hpp"
#include "ffbasis/poly.hpp"
#include "ffbasis/series.hpp"

namespace ffbasis {

namespace detail {

inline std::string monomial_text(char var, std::int64_t k) {
  if (k == 0) return "";
  if (k == 1) return std::string(1, var);
  return std::string(1, var) + "^" + std::to_string(k);
}

// Sum of c_k * var^k in decreasing exponent order; coefficients already
// rendered, "1" is elided in front of a monomial.
inline std::string sum_text(char var, const std::vector<std::pair<std::int64_t, std::string>>& terms) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t t = terms.size(); t-- > 0;) {
    const auto& [k, c] = terms[t];
    if (!out.empty()) out += "+";
    const std::string mono = monomial_text(var, k);
    if (mono.empty()) out += c;
    else if (c == "1") out += mono;
    else out += c + "*" + mono;
  }
  return out;
}

}  // namespace detail

/// Prime-field elements print as integers; extension elements as a
/// polynomial in the generator u, e.g. "u+1".
inline std::string to_string(const Field& F, Elem a) {
  if (F.is_prime_field()) return std::to_string(a.v);
  const std::vector<unsigned> d = F.digits(a);
  std::vector<std::pair<std::int64_t, std::string>> terms;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) terms.emplace_back(static_cast<std::int64_t>(i), std::to_string(d[i]));
  return detail::sum_text('u', terms);
}

inline std::string coefficient_text(const Field& F, Elem a) {
  std::string s = to_string(F, a);
  if (!F.is_prime_field() && s.find('+') != std::string::npos) return "(" + s + ")";
  return s;
}

namespace detail {
inline std::string digits_text(const Field& F, std::int64_t start, const std::vector<Elem>& c) {
  std::vector<std::pair<std::int64_t, std::string>> terms;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i].v != 0) terms.emplace_back(start + static_cast<std::int64_t>(i), coefficient_text(F, c[i]));
  return sum_text('T', terms);
}
}  // namespace detail

/// Monomials in decreasing exponent, e.g. "T^4+T", "2*T^3+1", "(u+1)*T".
inline std::string to_string(const Poly& p) { return detail::digits_text(p.field(), 0, p.coeffs()); }

/// "sum + O(T^N)" for truncated values, the bare sum for exact ones.
inline std::string to_string(const TruncSeries& x) {
  const std::string sum = detail::digits_text(x.field(), x.start(), x.digits());
  if (x.is_exact()) return sum;
  return sum + " + O(T^" + std::to_string(x.precision().digits()) + ")";
}

namespace detail {

class TextCursor {
 public:
  explicit TextCursor(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool done() {
    skip_ws();
    return i_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++i_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::int64_t integer() {
    skip_ws();
    bool neg = false;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) neg = s_[i_++] == '-';
    const std::size_t b = i_;
    std::int64_t v = 0;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      v = v * 10 + (s_[i_++] - '0');
      if (v > (std::int64_t{1} << 40)) fail("integer too large");
    }
    if (b == i_) fail("expected an integer");
    return neg ? -v : v;
  }
  bool at_digit() {
    skip_ws();
    return i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]));
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw ParseError("cannot parse '" + std::string(s_) + "' at offset " + std::to_string(i_) + ": " + why);
  }
  std::size_t pos() const { return i_; }
  void rewind(std::size_t i) { i_ = i; }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace detail

namespace detail {
inline Elem parse_elem_at(const Field& F, TextCursor& cur);

inline Elem parse_coef_at(const Field& F, TextCursor& cur) {
  if (cur.accept('(')) {
    Elem e = parse_elem_at(F, cur);
    cur.expect(')');
    return e;
  }
  // Bare single-term coefficients: "2", "u", "2*u^3".
  Elem c = F.one();
  if (cur.at_digit()) {
    c = F.from_int(cur.integer());
    const std::size_t save = cur.pos();
    if (!cur.accept('*') || cur.peek() != 'u') {
      cur.rewind(save);
      return c;
    }
  }
  cur.expect('u');
  if (F.is_prime_field()) cur.fail("'u' is only defined for extension fields");
  std::int64_t k = 1;
  if (cur.accept('^')) k = cur.integer();
  if (k < 0) cur.fail("negative exponent");
  return F.mul(c, F.pow(F.element(F.p()), static_cast<std::uint64_t>(k)));
}

inline Elem parse_elem_at(const Field& F, TextCursor& cur) {
  Elem acc = F.zero();
  // Integer constants lie in the prime subfield; 'u' is the generator,
  // whose index is p (digit vector (0, 1, 0, ...)).
  bool first = true;
  while (true) {
    bool neg = false;
    if (!first) {
      if (cur.accept('+')) neg = false;
      else if (cur.accept('-')) neg = true;
      else break;
    } else if (cur.accept('-')) {
      neg = true;
    }
    first = false;
    Elem c = F.one();
    if (cur.at_digit()) {
      c = F.from_int(cur.integer());
      if (!cur.accept('*')) {
        if (cur.peek() != 'u') {
          acc = neg ? F.sub(acc, c) : F.add(acc, c);
          continue;
        }
      }
    }
    if (!cur.accept('u')) cur.fail("expected 'u'");
    if (F.is_prime_field()) cur.fail("'u' is only defined for extension fields");
    std::int64_t k = 1;
    if (cur.accept('^')) k = cur.integer();
    if (k < 0) cur.fail("negative exponent");
    const Elem u = F.element(F.p());
    Elem t = F.mul(c, F.pow(u, static_cast<std::uint64_t>(k)));
    acc = neg ? F.sub(acc, t) : F.add(acc, t);
  }
  return acc;
}

// Shared by polynomial and Laurent parsing: collects (exponent, coefficient).
inline std::vector<std::pair<std::int64_t, Elem>> parse_T_terms(const Field& F, TextCursor& cur, bool allow_negative) {
  std::vector<std::pair<std::int64_t, Elem>> out;
  bool first = true;
  while (true) {
    bool neg = false;
    if (!first) {
      if (cur.accept('+')) neg = false;
      else if (cur.accept('-')) neg = true;
      else break;
      // "+ O(T^N)" terminates the sum.
      if (cur.peek() == 'O') {
        out.emplace_back(std::numeric_limits<std::int64_t>::min(), F.zero());
        return out;
      }
    } else if (cur.accept('-')) {
      neg = true;
    }
    first = false;
    Elem c = F.one();
    bool has_coef = false;
    if (cur.at_digit() || cur.peek() == '(' || cur.peek() == 'u') {
      c = parse_coef_at(F, cur);
      has_coef = true;
    }
    std::int64_t k = 0;
    if (has_coef && !cur.accept('*') && cur.peek() != 'T') {
      k = 0;
    } else {
      if (!cur.accept('T')) cur.fail("expected 'T'");
      k = 1;
      if (cur.accept('^')) k = cur.integer();
      if (k < 0 && !allow_negative) cur.fail("negative exponent in F_q[T]");
    }
    out.emplace_back(k, neg ? F.neg(c) : c);
  }
  return out;
}

}  // namespace detail

inline Elem parse_elem(const Field& F, std::string_view text) {
  detail::TextCursor cur(text);
  Elem e = detail::parse_elem_at(F, cur);
  if (!cur.done()) cur.fail("trailing input");
  return e;
}

inline Poly parse_poly(const FieldPtr& F, std::string_view text) {
  detail::TextCursor cur(text);
  auto terms = detail::parse_T_terms(*F, cur, false);
  if (!terms.empty() && terms.back().first == std::numeric_limits<std::int64_t>::min())
    cur.fail("precision term in a polynomial");
  if (!cur.done()) cur.fail("trailing input");
  Poly p(F);
  for (auto [k, c] : terms) p += Poly::monomial(F, k, c);
  return p;
}

/// Parses both exact Laurent polynomials ("T^-1+1") and truncated values
/// ("T^2 + O(T^8)").
inline TruncSeries parse_series(const FieldPtr& F, std::string_view text) {
  detail::TextCursor cur(text);
  auto terms = detail::parse_T_terms(*F, cur, true);
  Precision prec = Precision::exact();
  if (!terms.empty() && terms.back().first == std::numeric_limits<std::int64_t>::min()) {
    terms.pop_back();
    cur.expect('O');
    cur.expect('(');
    cur.expect('T');
    std::int64_t n = 1;
    if (cur.accept('^')) n = cur.integer();
    cur.expect(')');
    prec = Precision::upto(n);
  } else if (terms.empty() && cur.accept('O')) {
    cur.expect('(');
    cur.expect('T');
    std::int64_t n = 1;
    if (cur.accept('^')) n = cur.integer();
    cur.expect(')');
    prec = Precision::upto(n);
  }
  if (!cur.done()) cur.fail("trailing input");
  TruncSeries x = TruncSeries::zero(F, prec);
  for (auto [k, c] : terms) x = x + TruncSeries(F, k, {c}, prec);
  return x;
}

}  // namespace ffbasis
