// gf2perfect: sum-of-divisors arithmetic and perfect-polynomial searches over GF(2)[x].

#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gf2perfect/catalog.hpp"
#include "gf2perfect/factor.hpp"
#include "gf2perfect/poly.hpp"
#include "gf2perfect/report.hpp"
#include "gf2perfect/search.hpp"
#include "gf2perfect/sigma.hpp"

namespace {

using gf2::Catalog;
using gf2::Poly;
using gf2::report::ordered_json;

constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;
constexpr const char* kCeilingEnv = "GF2PERFECT_SCAN_CEILING";
constexpr int kDefaultXHMax = 92;

struct Options {
  std::string format = "text";
  std::string poly_text;
  std::string catalog_action;
  std::vector<std::string> names;
  std::optional<int> h_max;
  std::string table;
  std::string report_path;
  int max_degree = 0;
  unsigned jobs = 1;
};

bool json_out(const Options& o) { return o.format == "json"; }

Poly read_poly(const std::string& text, const Catalog& cat) { return gf2::parse(text, cat.resolver()); }

std::string named(const gf2::Factorization& f, const Catalog& cat) { return gf2::render(f, cat.namer()); }

int cmd_factor(const Options& o, const Catalog& cat) {
  const Poly p = read_poly(o.poly_text, cat);
  const auto f = gf2::factor(p);
  if (json_out(o)) {
    std::cout << ordered_json{{"input", gf2::to_hex(p)}, {"factors", gf2::report::factorization(f)},
                              {"named", named(f, cat)}}.dump(2)
              << "\n";
  } else {
    std::cout << gf2::to_string(p) << " = " << named(f, cat) << "\n";
  }
  return 0;
}

int cmd_sigma(const Options& o, const Catalog& cat) {
  const Poly p = read_poly(o.poly_text, cat);
  const auto s = gf2::sigma(p);
  if (json_out(o)) {
    std::cout << gf2::report::sigma(p, s).dump(2) << "\n";
  } else {
    std::cout << "input:   " << gf2::to_string(p) << "\n"
              << "sigma:   " << gf2::to_string(s.value) << "\n"
              << "factors: " << named(s.factored, cat) << "\n"
              << "perfect: " << (s.value == p ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_perfect(const Options& o, const Catalog& cat) {
  const Poly p = read_poly(o.poly_text, cat);
  const auto s = gf2::sigma(p);
  const bool perfect = s.value == p;
  const bool indecomposable = perfect && gf2::is_indecomposable_perfect(p);
  if (json_out(o)) {
    auto j = gf2::report::sigma(p, s);
    j["indecomposable"] = perfect ? ordered_json(indecomposable) : ordered_json(nullptr);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "sigma: " << named(s.factored, cat) << "\n";
    std::cout << "verdict: " << (perfect ? "PERFECT" : "NOT PERFECT") << "\n";
    if (perfect) std::cout << "indecomposable: " << (indecomposable ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_catalog(const Options& o, const Catalog& cat) {
  if (o.catalog_action == "export") {
    const auto j = gf2::report::catalog(cat);
    if (json_out(o)) {
      std::cout << j.dump(2) << "\n";
    } else {
      for (const auto& e : cat.entries()) {
        std::cout << std::left << std::setw(6) << e.name << std::setw(10) << gf2::to_hex(e.poly)
                  << gf2::to_string(e.poly) << "\n";
      }
    }
    return 0;
  }
  const auto checks = gf2::verify_catalog(cat);
  bool all = true;
  ordered_json rows = ordered_json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    rows.push_back({{"subject", c.subject}, {"check", c.check}, {"passed", c.passed}});
  }
  if (json_out(o)) {
    std::cout << ordered_json{{"checks", rows}, {"all_passed", all}}.dump(2) << "\n";
  } else {
    for (const auto& c : checks) {
      std::cout << (c.passed ? "PASS  " : "FAIL  ") << std::left << std::setw(5) << c.subject << " " << c.check
                << "\n";
    }
    std::cout << (all ? "catalog verified" : "catalog verification FAILED") << "\n";
  }
  return all ? 0 : kExitDomain;
}

std::vector<Poly> resolve_family(const std::vector<std::string>& names, const Catalog& cat) {
  std::vector<Poly> out;
  for (const auto& n : names) {
    if (n == "F" || n == "F_1" || n == "F1") {
      for (const auto& e : cat.f1()) out.push_back(e.poly);
    }
    if (n == "F" || n == "F_2" || n == "F2") {
      for (const auto& e : cat.f2()) out.push_back(e.poly);
    }
    if (n == "F" || n == "F_1" || n == "F1" || n == "F_2" || n == "F2") continue;
    out.push_back(cat.at(n).poly);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int cmd_admissible(const Options& o, const Catalog& cat) {
  const auto family = resolve_family(o.names, cat);
  const auto r = gf2::check_admissible(family, o.h_max.value_or(kDefaultXHMax));
  if (json_out(o)) {
    std::cout << gf2::report::admissibility(r, cat).dump(2) << "\n";
    return 0;
  }
  std::cout << "i)   " << (r.cond_i ? "holds" : "fails") << "\n";
  std::cout << "ii)  ";
  if (r.cond_ii) {
    std::cout << "holds: sigma(" << (r.cond_ii->x_side ? "x" : "(x+1)") << "^" << 2 * r.cond_ii->h << ")\n";
  } else {
    std::cout << "not found up to h = " << r.h_max << "\n";
  }
  std::cout << "iii) " << (r.cond_iii_complete() ? "holds" : "incomplete up to h_max") << "\n";
  for (const auto& w : r.cond_iii) {
    const auto name = cat.name_of(w.member).value_or(gf2::to_string(w.member));
    std::cout << "      " << std::left << std::setw(6) << name;
    if (!w.h) {
      std::cout << "not found up to h = " << r.h_max << "\n";
    } else if (*w.h == 0) {
      std::cout << "1 + " << name << " factors\n";
    } else {
      std::cout << "sigma(" << name << "^" << 2 * *w.h << ") factors\n";
    }
  }
  std::cout << "admissible: " << (r.admissible ? "yes" : "not shown up to h_max") << "\n";
  return 0;
}

int cmd_tables(const Options& o, const Catalog& cat) {
  const auto family = cat.family();
  if (o.table == "x2h") {
    const auto rows = gf2::sigma_x2h_table(o.h_max.value_or(kDefaultXHMax), family);
    if (json_out(o)) {
      std::cout << gf2::report::x2h_table(rows, cat).dump(2) << "\n";
      return 0;
    }
    for (const auto& r : rows) {
      std::ostringstream left, right;
      left << "sigma(x^" << r.two_h << ") = " << (r.x_side ? named(*r.x_side, cat) : "-");
      right << "sigma((x+1)^" << r.two_h << ") = " << (r.x1_side ? named(*r.x1_side, cat) : "-");
      std::cout << std::left << std::setw(36) << left.str() << right.str() << "\n";
    }
    return 0;
  }
  const auto rows = o.table == "mersenne" ? gf2::sigma_mersenne_table(cat, o.h_max) : gf2::sigma_s_table(cat, o.h_max);
  if (json_out(o)) {
    std::cout << gf2::report::prime_table(rows, cat).dump(2) << "\n";
    return 0;
  }
  for (const auto& r : rows) {
    std::ostringstream left;
    left << "sigma(" << r.base << "^" << r.two_h << ")";
    std::cout << std::left << std::setw(18) << left.str() << " = " << named(r.factors, cat) << "\n";
  }
  return 0;
}

int cmd_theorem(const Options& o, const Catalog& cat) {
  const auto r = gf2::run_theorem_pipeline(cat);
  const auto j = gf2::report::search(r, cat);
  if (!o.report_path.empty()) gf2::report::write_atomically(o.report_path, j.dump(2) + "\n");
  if (json_out(o)) {
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  std::cout << "step 1 tuples:      " << r.step1_count << "\n"
            << "step 2 tuples:      " << r.step2_count << "\n"
            << "step 3 candidates:  " << r.step3_count << " (a=alpha, b=beta only: "
            << r.step3_alpha_beta_only_count << ")\n";
  for (const auto& c : r.candidates) {
    std::cout << "  " << named(gf2::factor(c.poly), cat) << (gf2::is_perfect(c.poly) ? "  perfect" : "") << "\n";
  }
  std::cout << "closure:";
  for (const auto& p : r.closure) std::cout << " " << cat.name_of(p).value_or(gf2::to_hex(p));
  std::cout << "\n";
  return 0;
}

int scan_ceiling() {
  if (const char* env = std::getenv(kCeilingEnv)) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw gf2::Error(std::string(kCeilingEnv) + " is not an integer: " + env);
    }
  }
  return gf2::kDefaultScanCeiling;
}

int cmd_scan(const Options& o, const Catalog& cat) {
  const auto start = std::chrono::steady_clock::now();
  const auto found = gf2::exhaustive_scan({o.max_degree, scan_ceiling(), o.jobs});
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (json_out(o)) {
    ordered_json list = ordered_json::array();
    for (const auto& p : found) {
      list.push_back({{"hexmask", gf2::to_hex(p)},
                      {"degree", p.degree()},
                      {"factorization", named(gf2::factor(p), cat)},
                      {"name", cat.name_of(p) ? ordered_json(*cat.name_of(p)) : ordered_json(nullptr)}});
    }
    std::cout << ordered_json{{"max_degree", o.max_degree}, {"count", found.size()}, {"perfect", list}}.dump(2)
              << "\n";
    return 0;
  }
  for (const auto& p : found) {
    std::cout << std::left << std::setw(4) << p.degree() << std::setw(6) << cat.name_of(p).value_or("")
              << named(gf2::factor(p), cat) << "\n";
  }
  std::cout << found.size() << " perfect polynomials of degree <= " << o.max_degree << " (" << std::fixed
            << std::setprecision(1) << seconds << " s)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-of-divisors arithmetic and perfect polynomials over GF(2)"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto* factor = app.add_subcommand("factor", "Factor a polynomial");
  factor->add_option("poly", o.poly_text, "Polynomial, e.g. x^4+x+1, 0x13 or x^2*(x+1)*M_1")->required();
  auto* sigma = app.add_subcommand("sigma", "Sum of divisors");
  sigma->add_option("poly", o.poly_text, "Polynomial")->required();
  auto* perfect = app.add_subcommand("perfect", "Perfectness and indecomposability");
  perfect->add_option("poly", o.poly_text, "Polynomial")->required();

  auto* catalog = app.add_subcommand("catalog", "Verify or export the named polynomials");
  catalog->add_option("action", o.catalog_action, "verify | export")
      ->required()
      ->check(CLI::IsMember({"verify", "export"}));

  auto* admissible = app.add_subcommand("admissible", "Check a family for admissibility");
  admissible->add_option("names", o.names, "Catalog names (M_1, S_4, ...) or F, F_1, F_2")->required();
  admissible->add_option("--h-max", o.h_max, "Search bound for conditions ii) and iii)")->check(CLI::PositiveNumber);

  auto* tables = app.add_subcommand("tables", "sigma(S^(2h)) factorization tables over F");
  tables->add_option("table", o.table, "x2h | mersenne | s")->required()->check(CLI::IsMember({"x2h", "mersenne", "s"}));
  tables->add_option("--h-max", o.h_max, "Upper bound on h")->check(CLI::PositiveNumber);

  auto* theorem = app.add_subcommand("theorem", "Run the three-step enumeration over F");
  theorem->add_option("--report", o.report_path, "Write the JSON report to this file");

  auto* scan = app.add_subcommand("scan", "Exhaustive search for perfect polynomials");
  scan->add_option("--max-degree", o.max_degree, "Largest degree to enumerate")->required();
  scan->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const Catalog& cat = Catalog::instance();
    if (factor->parsed()) return cmd_factor(o, cat);
    if (sigma->parsed()) return cmd_sigma(o, cat);
    if (perfect->parsed()) return cmd_perfect(o, cat);
    if (catalog->parsed()) return cmd_catalog(o, cat);
    if (admissible->parsed()) return cmd_admissible(o, cat);
    if (tables->parsed()) return cmd_tables(o, cat);
    if (theorem->parsed()) return cmd_theorem(o, cat);
    if (scan->parsed()) return cmd_scan(o, cat);
  } catch (const gf2::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitUsage;
}
