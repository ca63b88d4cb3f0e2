#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "ffbasis/ffbasis.hpp"

namespace {

using namespace ffbasis;

constexpr int kExitConfig = 2;

struct Output {
  std::string path;

  void write(const std::string& body) const {
    if (path.empty()) {
      std::cout << body;
      return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw DomainError("cannot open '" + path + "' for writing");
    os << body;
  }
};

template <class T>
std::string render(const T& value, const Field& F, Format fmt) {
  switch (fmt) {
    case Format::Json: return to_json(value, F).dump(2) + "\n";
    case Format::Csv: return to_csv(value);
    case Format::Text: return to_text(value);
  }
  return {};
}

BasisExpansion expand(const Carlitz& C, const Func& f, const std::string& basis, std::size_t terms,
                      std::optional<unsigned> level, unsigned m, std::uint64_t budget) {
  const FieldPtr& F = C.field_ptr();
  if (level && basis != "G" && basis != "D") throw DomainError("--level applies to the G and D bases only");
  if (basis == "G") return carlitz_coeffs(C, f, terms, level, budget);
  if (basis == "D") return digit_coeffs(F, f, terms, level, budget);
  if (basis == "E") return wagner_coeffs(f, F, terms);
  if (basis == "linear-D") return digit_coeffs_linear(f, F, terms);
  if (basis == "powered-D") return powered_digit_coeffs(f, F, m, terms);
  throw DomainError("unknown basis '" + basis + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expansions of functions on F_q[[T]] in Carlitz and digit-derivative bases"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  RunConfig cfg;
  std::optional<unsigned> q;
  std::string modulus, format = "json";
  Output out;
  app.add_option("--p", cfg.p, "Characteristic")->capture_default_str();
  app.add_option("--e", cfg.e, "Extension degree")->capture_default_str();
  app.add_option("--q", q, "Field order p^e (alternative to --p/--e)");
  app.add_option("--modulus", modulus, "Irreducible modulus in u, e.g. u^2+u+1 (default: Conway polynomial)");
  app.add_option("--prec", cfg.prec, "Digits of T-precision for Laurent entries")->capture_default_str();
  app.add_option("--budget", cfg.budget, "Maximum number of enumerated polynomials / swept indices")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for sampled checks")->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "text"}))
      ->capture_default_str();
  app.add_option("--out", out.path, "Write output to this file instead of stdout");

  auto* cmd_expand = app.add_subcommand("expand", "Expand a built-in function in a basis");
  std::string fspec, basis = "E";
  std::size_t terms = 8;
  std::optional<unsigned> level;
  unsigned power = 1;
  cmd_expand->add_option("--f", fspec, "Function spec, e.g. G:3, E:2+(T)*D:1, (T^-1)*frobenius:1")->required();
  cmd_expand->add_option("--basis", basis, "Target basis")
      ->check(CLI::IsMember({"G", "E", "D", "linear-D", "powered-D"}))
      ->capture_default_str();
  cmd_expand->add_option("--terms", terms, "Number of coefficients J")->capture_default_str();
  cmd_expand->add_option("--level", level, "Enumeration level n (G and D bases; needs q^n >= J)");
  cmd_expand->add_option("--m", power, "Power m of the D_n^{q^m} basis")->capture_default_str();

  auto* cmd_matrix = app.add_subcommand("matrix", "Basis-change matrix between E_n and D_n");
  std::string which;
  std::size_t size = 4;
  cmd_matrix->add_option("--which", which, "voloch (D in terms of E) or inverse (E in terms of D)")
      ->check(CLI::IsMember({"voloch", "inverse"}))
      ->required();
  cmd_matrix->add_option("--size", size, "Matrix dimension")->capture_default_str();

  auto* cmd_verify = app.add_subcommand("verify", "Run identity checks");
  std::string suite = "all";
  SuiteConfig scfg;
  cmd_verify->add_option("--suite", suite, "Suite")->check(CLI::IsMember(suite_names()))->capture_default_str();
  cmd_verify->add_option("--n", scfg.n, "Level n / index range q^n")->capture_default_str();
  cmd_verify->add_option("--samples", scfg.samples, "Samples per sampled check")->capture_default_str();
  cmd_verify->add_option("--imax", scfg.I_max, "Largest i in T^i for distance checks")->capture_default_str();

  auto* cmd_info = app.add_subcommand("info", "Field parameters and the first Carlitz factorials");
  unsigned info_n = 3;
  cmd_info->add_option("--n", info_n, "Largest n listed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (q) {
      const auto [p, e] = split_prime_power(*q);
      if (app.count("--p") && cfg.p != p) throw DomainError("--q and --p disagree");
      if (app.count("--e") && cfg.e != e) throw DomainError("--q and --e disagree");
      cfg.p = p;
      cfg.e = e;
    }
    if (!modulus.empty()) {
      std::erase_if(modulus, [](char c) { return c == ' '; });
      cfg.modulus = modulus;
    }
    cfg.format = parse_format(format);
    if (cfg.prec < 1) throw DomainError("--prec must be positive");
    const FieldPtr F = cfg.make_field();
    const Carlitz C(F);

    if (*cmd_expand) {
      const Func f = parse_function(C, fspec);
      const BasisExpansion e = expand(C, f, basis, terms, level, power, cfg.budget);
      out.write(render(e, *F, cfg.format));
      return 0;
    }
    if (*cmd_matrix) {
      if (size > 64) throw DomainError("--size is limited to 64");
      const BasisMatrix M = which == "voloch" ? voloch_matrix(C, size, cfg.prec) : inverse_matrix(C, size);
      out.write(render(M, *F, cfg.format));
      return 0;
    }
    if (*cmd_verify) {
      scfg.seed = cfg.seed;
      scfg.budget = cfg.budget;
      const SuiteResult res = run_suite(suite, C, scfg);
      std::string body;
      switch (cfg.format) {
        case Format::Json: body = to_json(res, *F, scfg).dump(2) + "\n"; break;
        case Format::Csv: body = to_csv(res); break;
        case Format::Text: body = to_text(res); break;
      }
      out.write(body);
      for (const auto& r : res.reports) {
        if (r.status == Status::Verified) continue;
        std::cerr << status_name(r.status) << ": " << r.id << "  " << detail::entries_text(r.witness);
        if (!out.path.empty()) std::cerr << "  (report: " << out.path << ")";
        std::cerr << '\n';
      }
      std::cerr << "suite " << suite << ": " << status_name(res.overall()) << '\n';
      return res.exit_code();
    }
    if (*cmd_info) {
      switch (cfg.format) {
        case Format::Json: out.write(info_json(C, info_n).dump(2) + "\n"); break;
        case Format::Csv: throw DomainError("info has no CSV form");
        case Format::Text: out.write(info_text(C, info_n)); break;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
