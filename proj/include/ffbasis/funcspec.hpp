#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>

#include "ffbasis/carlitz.hpp"
#include "ffbasis/errors.hpp"
#include "ffbasis/text.hpp"
#include "ffbasis/transforms.hpp"

namespace ffbasis {

/// Parses a built-in function spec:
///
///   spec  := ['-'] term (('+' | '-') term)*
///   term  := [coef '*'] atom
///   coef  := integer | '(' Laurent polynomial in T ')'
///   atom  := identity | x | one | x^k | monomial:k | frobenius:m
///          | E:n | G:j | G':j | D:n | Dj:j | Dj':j | Dpow:n:m
///
/// E:n and D:n are the linear bases; G/G' and Dj/Dj' are the digit products.
inline Func parse_function(const Carlitz& C, std::string_view text) {
  const FieldPtr& F = C.field_ptr();
  std::size_t i = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("function spec '" + std::string(text) + "' at " + std::to_string(i) + ": " + msg);
  };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto number = [&]() -> std::uint64_t {
    skip();
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a number");
    std::uint64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      if (v > (std::uint64_t{1} << 40)) fail("number too large");
      v = v * 10 + static_cast<unsigned>(text[i++] - '0');
    }
    return v;
  };
  auto small = [&](std::uint64_t v) -> unsigned {
    if (v > 64) fail("index " + std::to_string(v) + " too large");
    return static_cast<unsigned>(v);
  };
  auto colon = [&] {
    skip();
    if (i >= text.size() || text[i] != ':') fail("expected ':'");
    ++i;
  };

  auto atom = [&]() -> Func {
    skip();
    const std::size_t start = i;
    while (i < text.size() && (std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '\'')) ++i;
    const std::string name(text.substr(start, i - start));
    if (name.empty()) fail("expected a function name");
    if (name == "identity") return funcs::identity();
    if (name == "one") return funcs::one(F);
    if (name == "x") {
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        return funcs::monomial(number(), C.q());
      }
      return funcs::identity();
    }
    colon();
    if (name == "monomial") return funcs::monomial(number(), C.q());
    if (name == "frobenius") return funcs::frobenius(small(number()));
    if (name == "E") return funcs::carlitz_E(C, small(number()));
    if (name == "G") return funcs::carlitz_G(C, number(), false);
    if (name == "G'") return funcs::carlitz_G(C, number(), true);
    if (name == "D") return funcs::hasse_D(small(number()));
    if (name == "Dj") return funcs::digit_D(number(), C.q(), false);
    if (name == "Dj'") return funcs::digit_D(number(), C.q(), true);
    if (name == "Dpow") {
      const unsigned n = small(number());
      colon();
      return funcs::powered_D(n, small(number()));
    }
    fail("unknown function '" + name + "'");
    return funcs::identity();
  };

  auto term = [&]() -> Func {
    skip();
    if (i >= text.size()) fail("expected a term");
    std::optional<std::pair<TruncSeries, std::string>> coef;
    if (text[i] == '(') {
      int depth = 0;
      const std::size_t open = i;
      for (; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')' && --depth == 0) break;
      }
      if (i >= text.size()) fail("unbalanced '('");
      const std::string inner(text.substr(open + 1, i - open - 1));
      ++i;
      coef.emplace(parse_series(F, inner), "(" + inner + ")");
    } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      const std::uint64_t v = number();
      coef.emplace(TruncSeries::constant(F, F->from_int(static_cast<std::int64_t>(v % F->p()))), std::to_string(v));
    }
    if (coef) {
      skip();
      if (i >= text.size() || text[i] != '*') fail("expected '*' after a coefficient");
      ++i;
    }
    Func f = atom();
    return coef ? scale(coef->first, f, coef->second) : f;
  };

  skip();
  bool negate = false;
  if (i < text.size() && text[i] == '-') {
    negate = true;
    ++i;
  }
  Func acc = term();
  if (negate) acc = scale(TruncSeries::constant(F, F->neg(F->one())), acc, "-1");
  while (true) {
    skip();
    if (i >= text.size()) break;
    const char op = text[i];
    if (op != '+' && op != '-') fail("expected '+' or '-'");
    ++i;
    Func rhs = term();
    acc = op == '+' ? acc + rhs : acc - rhs;
  }
  return acc;
}

}  // namespace ffbasis
