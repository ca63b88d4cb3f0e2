#pragma once

#include <string>
#include <vector>

#include "ffbasis/identities.hpp"
#include "ffbasis/transforms.hpp"

namespace ffbasis {

struct SuiteConfig {
  unsigned n = 3;
  unsigned samples = 10;
  std::uint64_t seed = 1;
  std::uint64_t budget = kDefaultEnumerationBudget;
  unsigned I_max = kDefaultDistanceRange;
};

struct SuiteResult {
  std::string name;
  std::vector<VerdictReport> reports;

  /// Falsified dominates budget exhaustion, which dominates verified.
  Status overall() const {
    Status s = Status::Verified;
    for (const auto& r : reports) {
      if (r.status == Status::Falsified) return Status::Falsified;
      if (r.status == Status::BudgetExhausted) s = Status::BudgetExhausted;
    }
    return s;
  }

  int exit_code() const {
    switch (overall()) {
      case Status::Verified: return 0;
      case Status::Falsified: return 1;
      case Status::BudgetExhausted: return 2;
    }
    return 2;
  }
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"ortho", "addition", "linearity", "distance",
                                              "power", "reduced", "tower", "all"};
  return names;
}

struct CorpusEntry {
  Func f;
  bool linear;
};

/// Ten linear and ten nonlinear functions built from the basis functions.
inline std::vector<CorpusEntry> linearity_corpus(const Carlitz& C) {
  using namespace funcs;
  const unsigned q = C.q();
  const FieldPtr& F = C.field_ptr();
  const auto T = TruncSeries::monomial(F, 1);
  const auto Tinv = TruncSeries::monomial(F, -1);
  const auto c2 = TruncSeries::constant(F, F->from_int(q == 2 ? 1 : 2));
  return {
      {identity(), true},
      {frobenius(1), true},
      {frobenius(2), true},
      {carlitz_E(C, 1), true},
      {carlitz_E(C, 2), true},
      {hasse_D(1), true},
      {hasse_D(3), true},
      {powered_D(1, 1), true},
      {carlitz_E(C, 1) + scale(T, hasse_D(2), "T"), true},
      {scale(Tinv, carlitz_E(C, 2), "T^-1") - frobenius(1), true},
      {one(F), false},
      {monomial(q + 1, q), false},
      {carlitz_G(C, q + 1, false), false},
      {carlitz_G(C, q - 1, true), false},
      {digit_D(q + 1, q, false), false},
      {digit_D(q - 1, q, true), false},
      {monomial(q + 1, q) + carlitz_E(C, 1), false},
      {one(F) + hasse_D(1), false},
      {carlitz_G(C, q * q + 1, false), false},
      {scale(c2, digit_D(q * q + q, q, false), "c"), false},
  };
}

namespace detail {

inline VerdictReport sweep_too_large(const std::string& id, std::uint64_t need, std::uint64_t budget) {
  VerdictReport r;
  r.id = id;
  r.status = Status::BudgetExhausted;
  r.outcome = std::to_string(need) + " indices exceed budget " + std::to_string(budget);
  r.witness = {{"required", std::to_string(need)}};
  return r;
}

inline std::uint64_t sweep_size(unsigned q, unsigned n) { return checked_pow(q, n, std::uint64_t{1} << 40); }

inline void run_ortho(const Carlitz& C, const SuiteConfig& cfg, std::vector<VerdictReport>& out) {
  for (Family fam : {Family::Carlitz, Family::Digit})
    for (PolySet v : {PolySet::DegreeBelow, PolySet::MonicOfDegree})
      out.push_back(check_orthogonality_all(C, fam, v, cfg.n, cfg.budget));
}

inline void run_addition(const Carlitz& C, const SuiteConfig& cfg, std::vector<VerdictReport>& out) {
  const std::uint64_t J = sweep_size(C.q(), cfg.n);
  for (Family fam : {Family::Carlitz, Family::Digit})
    for (bool primed : {false, true}) {
      if (J > cfg.budget) {
        out.push_back(sweep_too_large(std::string("addition.") + family_name(fam) + (primed ? "'" : ""), J, cfg.budget));
        continue;
      }
      out.push_back(check_addition_laws(C, fam, primed, J, cfg.samples, cfg.seed));
    }
}

// The corpus has nonlinear support up to index q^2 + q, so classification
// always uses J = q^3 terms.
inline void run_linearity(const Carlitz& C, const SuiteConfig& cfg, std::vector<VerdictReport>& out) {
  const std::uint64_t J = sweep_size(C.q(), 3);
  if (J > cfg.budget) {
    out.push_back(sweep_too_large("linearity", J, cfg.budget));
    return;
  }
  for (const auto& e : linearity_corpus(C))
    for (Basis b : {Basis::CarlitzG, Basis::DigitD}) {
      BasisExpansion exp = b == Basis::CarlitzG ? carlitz_coeffs(C, e.f, J, std::nullopt, cfg.budget)
                                                : digit_coeffs(C.field_ptr(), e.f, J, std::nullopt, cfg.budget);
      VerdictReport r = classify_linearity(exp, C.field_ptr(), e.f, cfg.samples, cfg.seed);
      r.expect(r.outcome == (e.linear ? "linear" : "nonlinear"),
               "corpus label " + std::string(e.linear ? "linear" : "nonlinear"), {{"function", e.f.name}});
      out.push_back(std::move(r));
    }
}

inline void run_distance(const Carlitz& C, const SuiteConfig& cfg, std::vector<VerdictReport>& out) {
  for (unsigned n = 0; n <= cfg.n; ++n) {
    out.push_back(basis_distance(C, DistancePair::EvsD, n, 1, cfg.I_max));
    for (unsigned m : {1u, 2u}) out.push_back(basis_distance(C, DistancePair::DqVsD, n, m, cfg.I_max));
    out.push_back(basis_distance(C, DistancePair::EqVsE, n, 1, cfg.I_max));
    out.push_back(check_step_identity(C, n, cfg.I_max));
  }
}

inline void run_power(const Carlitz& C, const SuiteConfig& cfg, std::vector<VerdictReport>& out) {
  using namespace funcs;
  const unsigned q = C.q();
  const std::vector<Func> fs{carlitz_E(C, 1), carlitz_E(C, 2),           hasse_D(1),
                             hasse_D(2),      carlitz_G(C, q + 1, false), carlitz_G(C, q - 1, true),
                             digit_D(q + 1, q, false), monomial(q + 1, q), one(C.field_ptr())};
  for (const auto& f : fs)
    for (unsigned m : {1u, 2u}) out.push_back(check_power_criterion(f, C.field_ptr(), m, cfg.samples, cfg.seed));
}

inline void run_tower(const Carlitz& C, const SuiteConfig& cfg, std::vector<VerdictReport>& out) {
  out.push_back(check_hasse_rules(C.field_ptr(), 8, cfg.samples, cfg.seed));
  out.push_back(check_voloch_identity(C, 2, 10, cfg.samples, cfg.seed));
  out.push_back(check_vanishing_recursion(C, 3));
  out.push_back(check_step_identity_sampled(C, 3, cfg.samples, cfg.seed));
  out.push_back(check_shift_identity(C, 4, 12));
  out.push_back(check_difference_formula(funcs::carlitz_E(C, 2) + funcs::hasse_D(3), C.field_ptr(), 5, 2,
                                         cfg.samples, cfg.seed));
  const std::uint64_t J = std::min<std::uint64_t>(sweep_size(C.q(), std::min(cfg.n, 3u)) - 1, 64);
  out.push_back(check_level_independence(C, funcs::carlitz_G(C, C.q() + 1, false), J, cfg.budget));
}

}  // namespace detail

/// Runs one named group of checks ("all" runs every group in order).
inline SuiteResult run_suite(const std::string& name, const Carlitz& C, const SuiteConfig& cfg) {
  SuiteResult res{name, {}};
  const bool all = name == "all";
  bool known = all;
  auto want = [&](const char* s) {
    const bool w = all || name == s;
    known = known || w;
    return w;
  };
  if (want("ortho")) detail::run_ortho(C, cfg, res.reports);
  if (want("addition")) detail::run_addition(C, cfg, res.reports);
  if (want("linearity")) detail::run_linearity(C, cfg, res.reports);
  if (want("distance")) detail::run_distance(C, cfg, res.reports);
  if (want("power")) detail::run_power(C, cfg, res.reports);
  if (want("reduced")) res.reports.push_back(check_reduced_basis(C, 6));
  if (want("tower")) detail::run_tower(C, cfg, res.reports);
  if (!known) throw DomainError("unknown suite '" + name + "'");
  return res;
}

}  // namespace ffbasis
