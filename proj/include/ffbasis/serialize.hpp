#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ffbasis/carlitz.hpp"
#include "ffbasis/identities.hpp"
#include "ffbasis/suite.hpp"
#include "ffbasis/text.hpp"
#include "ffbasis/transforms.hpp"

namespace ffbasis {

using Json = nlohmann::ordered_json;

inline std::string modulus_text(const Field& F) {
  std::vector<std::pair<std::int64_t, std::string>> terms;
  const auto& m = F.modulus();
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] != 0) terms.emplace_back(static_cast<std::int64_t>(i), std::to_string(m[i]));
  return detail::sum_text('u', terms);
}

inline Json field_json(const Field& F) {
  Json j;
  j["p"] = F.p();
  j["e"] = F.e();
  j["q"] = F.q();
  j["modulus"] = F.is_prime_field() ? Json(nullptr) : Json(modulus_text(F));
  return j;
}

inline Json value_json(const TruncSeries& x) {
  Json j;
  j["text"] = to_string(x);
  const auto v = x.valuation();
  j["valuation"] = v ? Json(*v) : Json(nullptr);
  j["precision"] = x.precision().to_string();
  return j;
}

inline Json to_json(const BasisExpansion& e, const Field& F) {
  Json j;
  j["schema"] = "ffbasis.expansion/1";
  j["field"] = field_json(F);
  j["basis"] = basis_name(e.basis);
  if (e.basis == Basis::PoweredD) j["power"] = e.power;
  j["level"] = e.level ? Json(*e.level) : Json(nullptr);
  j["terms"] = e.coeffs.size();
  Json cs = Json::array();
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
    Json c = value_json(e.coeffs[i]);
    c["index"] = i;
    cs.push_back(std::move(c));
  }
  j["coefficients"] = std::move(cs);
  j["norm"] = expansion_norm(e).to_string();
  j["tail_bound"] = e.tail_bound ? Json(e.tail_bound->to_string()) : Json("unknown");
  return j;
}

struct MatrixShape {
  bool lower_triangular = true;
  bool unit_diagonal = true;
  std::optional<std::int64_t> min_valuation_drop;  // min over entries of v(M[n][m]) - (n - m)
};

inline MatrixShape matrix_shape(const BasisMatrix& M) {
  MatrixShape s;
  for (std::size_t n = 0; n < M.size(); ++n)
    for (std::size_t m = 0; m < M.size(); ++m) {
      const TruncSeries& x = M.entries[n][m];
      if (m > n && !x.is_zero()) s.lower_triangular = false;
      if (m == n && !x.agrees_with(TruncSeries::constant(x.field_ptr(), x.field().one()))) s.unit_diagonal = false;
      if (m <= n && !x.is_zero()) {
        const std::int64_t d = *x.valuation() - static_cast<std::int64_t>(n - m);
        if (!s.min_valuation_drop || d < *s.min_valuation_drop) s.min_valuation_drop = d;
      }
    }
  return s;
}

inline const char* matrix_name(const BasisMatrix& M) {
  return M.kind == BasisMatrix::Kind::Voloch ? "voloch" : "inverse";
}

inline Json to_json(const BasisMatrix& M, const Field& F) {
  Json j;
  j["schema"] = "ffbasis.matrix/1";
  j["field"] = field_json(F);
  j["which"] = matrix_name(M);
  j["size"] = M.size();
  j["prec"] = M.prec.to_string();
  const MatrixShape s = matrix_shape(M);
  j["lower_triangular"] = s.lower_triangular;
  j["unit_diagonal"] = s.unit_diagonal;
  j["min_valuation_minus_offset"] = s.min_valuation_drop ? Json(*s.min_valuation_drop) : Json(nullptr);
  Json rows = Json::array();
  for (const auto& row : M.entries) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_string(x));
    rows.push_back(std::move(r));
  }
  j["entries"] = std::move(rows);
  return j;
}

inline Json entries_json(const VerdictReport::Entries& es) {
  Json j = Json::object();
  for (const auto& [k, v] : es) j[k] = v;
  return j;
}

inline Json to_json(const VerdictReport& r) {
  Json j;
  j["schema"] = "ffbasis.verdict/1";
  j["id"] = r.id;
  j["config"] = entries_json(r.config);
  j["status"] = status_name(r.status);
  j["outcome"] = r.outcome;
  j["checked"] = r.checked;
  j["witness"] = entries_json(r.witness);
  if (!r.caveat.empty()) j["caveat"] = r.caveat;
  j["trace"] = r.trace;
  return j;
}

inline Json to_json(const SuiteResult& s, const Field& F, const SuiteConfig& cfg) {
  Json j;
  j["schema"] = "ffbasis.suite/1";
  j["suite"] = s.name;
  j["field"] = field_json(F);
  j["n"] = cfg.n;
  j["samples"] = cfg.samples;
  j["seed"] = cfg.seed;
  j["budget"] = cfg.budget;
  j["I_max"] = cfg.I_max;
  j["status"] = status_name(s.overall());
  Json rs = Json::array();
  for (const auto& r : s.reports) rs.push_back(to_json(r));
  j["reports"] = std::move(rs);
  return j;
}

inline Json info_json(const Carlitz& C, unsigned n) {
  Json j;
  j["schema"] = "ffbasis.info/1";
  j["field"] = field_json(C.field());
  Json tower = Json::array();
  for (unsigned k = 0; k <= n; ++k) {
    Json t;
    t["n"] = k;
    t["bracket"] = k == 0 ? "0" : to_string(C.bracket(k));
    t["F"] = to_string(C.factorial(k));
    t["L"] = to_string(C.bracket_product(k));
    Json e = Json::array();
    for (const auto& term : C.vanishing_poly(k).terms) e.push_back(to_string(term.coeff));
    t["e_coefficients"] = std::move(e);
    tower.push_back(std::move(t));
  }
  j["tower"] = std::move(tower);
  return j;
}

// ---------------------------------------------------------------------------
// CSV. Text fields are quoted; canonical forms never contain quotes.

namespace detail {
inline std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

inline std::string entries_text(const VerdictReport::Entries& es) {
  std::string out;
  for (const auto& [k, v] : es) out += (out.empty() ? "" : " ") + k + "=" + v;
  return out;
}
}  // namespace detail

inline std::string to_csv(const BasisExpansion& e) {
  std::ostringstream os;
  os << "index,coefficient,valuation,precision\n";
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) {
    const auto v = e.coeffs[i].valuation();
    os << i << ',' << detail::csv_quote(to_string(e.coeffs[i])) << ',' << (v ? std::to_string(*v) : "") << ','
       << e.coeffs[i].precision().to_string() << '\n';
  }
  return os.str();
}

inline std::string to_csv(const BasisMatrix& M) {
  std::ostringstream os;
  os << "row,column,entry\n";
  for (std::size_t n = 0; n < M.size(); ++n)
    for (std::size_t m = 0; m < M.size(); ++m)
      os << n << ',' << m << ',' << detail::csv_quote(to_string(M.entries[n][m])) << '\n';
  return os.str();
}

inline std::string to_csv(const SuiteResult& s) {
  std::ostringstream os;
  os << "identity,configuration,status,outcome,checked\n";
  for (const auto& r : s.reports)
    os << r.id << ',' << detail::csv_quote(detail::entries_text(r.config)) << ',' << status_name(r.status) << ','
       << detail::csv_quote(r.outcome) << ',' << r.checked << '\n';
  return os.str();
}

// ---------------------------------------------------------------------------
// Plain text

inline std::string to_text(const BasisExpansion& e) {
  std::ostringstream os;
  os << "basis " << basis_name(e.basis);
  if (e.basis == Basis::PoweredD) os << " power " << e.power;
  if (e.level) os << " level " << *e.level;
  os << " terms " << e.coeffs.size() << '\n';
  for (std::size_t i = 0; i < e.coeffs.size(); ++i) os << "  [" << i << "] " << to_string(e.coeffs[i]) << '\n';
  os << "norm " << expansion_norm(e).to_string() << ", tail "
     << (e.tail_bound ? e.tail_bound->to_string() : std::string("unknown")) << '\n';
  return os.str();
}

inline std::string to_text(const BasisMatrix& M) {
  std::ostringstream os;
  const MatrixShape s = matrix_shape(M);
  os << matrix_name(M) << " matrix " << M.size() << "x" << M.size() << ", prec " << M.prec.to_string()
     << (s.lower_triangular ? ", lower triangular" : "") << (s.unit_diagonal ? ", unit diagonal" : "") << '\n';
  for (std::size_t n = 0; n < M.size(); ++n)
    for (std::size_t m = 0; m <= n && m < M.size(); ++m)
      os << "  (" << n << "," << m << ") " << to_string(M.entries[n][m]) << '\n';
  return os.str();
}

inline std::string to_text(const VerdictReport& r) {
  std::ostringstream os;
  os << status_name(r.status) << "  " << r.id << "  " << detail::entries_text(r.config);
  if (!r.outcome.empty()) os << "  (" << r.outcome << ")";
  os << '\n';
  if (!r.witness.empty() && r.status != Status::Verified) os << "    witness: " << detail::entries_text(r.witness) << '\n';
  return os.str();
}

inline std::string to_text(const SuiteResult& s) {
  std::ostringstream os;
  for (const auto& r : s.reports) os << to_text(r);
  os << "suite " << s.name << ": " << status_name(s.overall()) << " (" << s.reports.size() << " checks)\n";
  return os.str();
}

inline std::string info_text(const Carlitz& C, unsigned n) {
  std::ostringstream os;
  const Field& F = C.field();
  os << "F_" << F.q() << " (p=" << F.p() << ", e=" << F.e() << ")";
  if (!F.is_prime_field()) os << ", modulus " << modulus_text(F);
  os << '\n';
  for (unsigned k = 0; k <= n; ++k)
    os << "  F_" << k << " = " << to_string(C.factorial(k)) << ",  L_" << k << " = " << to_string(C.bracket_product(k))
       << '\n';
  return os.str();
}

}  // namespace ffbasis
