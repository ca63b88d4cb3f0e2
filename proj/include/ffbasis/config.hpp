#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ffbasis/errors.hpp"
#include "ffbasis/field.hpp"
#include "ffbasis/poly.hpp"
#include "ffbasis/text.hpp"

namespace ffbasis {

enum class Format { Json, Csv, Text };

inline const char* format_name(Format f) {
  switch (f) {
    case Format::Json: return "json";
    case Format::Csv: return "csv";
    case Format::Text: return "text";
  }
  return "?";
}

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  throw ParseError("unknown format '" + s + "'");
}

/// Modulus given as a polynomial in u over F_p, e.g. "u^2+u+1".
/// Returns the coefficients, constant term first.
inline std::vector<unsigned> parse_modulus(unsigned p, const std::string& text) {
  std::string t = text;
  for (char& c : t) {
    if (c == 'T') throw ParseError("modulus uses the variable u");
    if (c == 'u') c = 'T';
  }
  const Poly m = parse_poly(Field::make(p), t);
  std::vector<unsigned> out;
  for (Elem c : m.coeffs()) out.push_back(c.v);
  return out;
}

/// Settings shared by every subcommand. Its text form is a line of
/// space-separated key=value pairs; parse_run_config inverts to_string.
struct RunConfig {
  unsigned p = 2;
  unsigned e = 1;
  std::optional<std::string> modulus;
  std::int64_t prec = 64;
  std::uint64_t budget = 256;
  Format format = Format::Json;
  std::uint64_t seed = 1;

  FieldPtr make_field() const {
    if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
    return Field::make(p, e, modulus ? parse_modulus(p, *modulus) : std::vector<unsigned>{});
  }

  std::string to_string() const {
    std::ostringstream os;
    os << "p=" << p << " e=" << e << " modulus=" << (modulus ? *modulus : "default") << " prec=" << prec
       << " budget=" << budget << " format=" << format_name(format) << " seed=" << seed;
    return os.str();
  }

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline RunConfig parse_run_config(const std::string& text) {
  std::istringstream is(text);
  std::map<std::string, std::string> kv;
  for (std::string tok; is >> tok;) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + tok + "'");
    if (!kv.emplace(tok.substr(0, eq), tok.substr(eq + 1)).second) throw ParseError("duplicate key in '" + tok + "'");
  }
  auto num = [&](const std::string& k, auto& out) {
    auto it = kv.find(k);
    if (it == kv.end()) return;
    try {
      std::size_t used = 0;
      const long long v = std::stoll(it->second, &used);
      if (used != it->second.size() || v < 0) throw ParseError("");
      out = static_cast<std::remove_reference_t<decltype(out)>>(v);
    } catch (const std::exception&) {
      throw ParseError("bad value for " + k + ": '" + it->second + "'");
    }
    kv.erase(it);
  };
  RunConfig c;
  num("p", c.p);
  num("e", c.e);
  num("prec", c.prec);
  num("budget", c.budget);
  num("seed", c.seed);
  if (auto it = kv.find("modulus"); it != kv.end()) {
    if (it->second != "default") c.modulus = it->second;
    kv.erase(it);
  }
  if (auto it = kv.find("format"); it != kv.end()) {
    c.format = parse_format(it->second);
    kv.erase(it);
  }
  if (!kv.empty()) throw ParseError("unknown key '" + kv.begin()->first + "'");
  return c;
}

/// Splits q = p^e.
inline std::pair<unsigned, unsigned> split_prime_power(unsigned q) {
  for (unsigned p = 2; p <= q; ++p)
    if (q % p == 0) {
      unsigned e = 0, t = q;
      while (t % p == 0) {
        t /= p;
        ++e;
      }
      if (t != 1) break;
      return {p, e};
    }
  throw DomainError("q = " + std::to_string(q) + " is not a prime power");
}

}  // namespace ffbasis
