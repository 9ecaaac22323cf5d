#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gf2perfect/catalog.hpp"
#include "gf2perfect/factor.hpp"
#include "gf2perfect/poly.hpp"

namespace gf2 {

// ---------------------------------------------------------------------------
// sigma(S^(2h)) tables
// ---------------------------------------------------------------------------

struct X2hRow {
  int two_h = 0;
  std::optional<Factorization> x_side;    // sigma(x^(2h))
  std::optional<Factorization> x1_side;   // sigma((x+1)^(2h))
};

/// Every 2h <= 2*h_max for which sigma(x^(2h)) or sigma((x+1)^(2h)) has
/// all its prime factors in `family`.
std::vector<X2hRow> sigma_x2h_table(int h_max, std::span<const Poly> family);

struct PrimeTableRow {
  std::string base;  // catalog name
  int two_h = 0;
  Factorization factors;
};

/// Rows (base, 2h) with 2h * deg(base) <= degree_budget (and h <= h_max when
/// given) whose sigma(base^(2h)) factors over `family`.
std::vector<PrimeTableRow> sigma_prime_table(std::span<const CatalogEntry> bases, std::span<const Poly> family,
                                             int degree_budget, std::optional<int> h_max = std::nullopt);

/// The two tables over F_1 and F_2 with the catalog's degree-sum budget.
std::vector<PrimeTableRow> sigma_mersenne_table(const Catalog& cat, std::optional<int> h_max = std::nullopt);
std::vector<PrimeTableRow> sigma_s_table(const Catalog& cat, std::optional<int> h_max = std::nullopt);

// ---------------------------------------------------------------------------
// Exponent bookkeeping
// ---------------------------------------------------------------------------

/// A = x^a (x+1)^b prod_{i<=5} M_i^{c_i} prod_{j<=8} S_j^{d_j} with every
/// exponent written as 2^k * odd - 1. Index 0 of the arrays is M_1 / S_1.
struct ExponentTuple {
  int n = 0, u = 1;
  int m = 0, v = 1;
  std::array<int, 5> ni{0, 0, 0, 0, 0};
  std::array<int, 5> ui{1, 1, 1, 1, 1};
  std::array<int, 8> mj{0, 0, 0, 0, 0, 0, 0, 0};
  std::array<int, 8> vj{1, 1, 1, 1, 1, 1, 1, 1};

  int a() const { return (1 << n) * u - 1; }
  int b() const { return (1 << m) * v - 1; }
  /// Exponent of M_i, 1-based.
  int c(int i) const { return (1 << ni[i - 1]) * ui[i - 1] - 1; }
  /// Exponent of S_j, 1-based.
  int d(int j) const { return (1 << mj[j - 1]) * vj[j - 1] - 1; }

  /// The parameter ranges that any perfect A of this shape must satisfy.
  bool in_ranges() const;
  /// True when every M_i and S_j exponent is zero.
  bool odd_part_is_one() const;
  Poly materialize(const Catalog& cat) const;

  /// Inverse of materialize; nullopt if some prime lies outside
  /// {x, x+1, M_1..M_5, S_1..S_8}.
  static std::optional<ExponentTuple> from_poly(const Poly& a, const Catalog& cat);

  friend bool operator==(const ExponentTuple&, const ExponentTuple&) = default;
};

/// Exponents of x, x+1, M_1..M_5, S_1..S_8 in sigma(A).
struct SigmaExponents {
  int alpha = 0;
  int beta = 0;
  std::array<int, 5> gamma{};
  std::array<int, 8> delta{};

  friend bool operator==(const SigmaExponents&, const SigmaExponents&) = default;
};

SigmaExponents compute_sigma_exponents(const ExponentTuple& t, const Catalog& cat);

// ---------------------------------------------------------------------------
// Three-step enumeration
// ---------------------------------------------------------------------------

/// [n, u, m, v, n1, u1, n2, u2]
using Step1Tuple = std::array<int, 8>;
/// [n, u, m, v, n1, u1, n2, u2, d1, ..., d8, m1, v1]
using Step2Tuple = std::array<int, 18>;

struct Candidate {
  ExponentTuple tuple;
  Poly poly;
};

std::vector<Step1Tuple> pipeline_step1(const Catalog& cat);
std::vector<Step2Tuple> pipeline_step2(std::span<const Step1Tuple> step1, const Catalog& cat);
/// Completes each tuple over n4, n5 and keeps the fixed points of every
/// exponent equation (a, b, c_1..c_5, d_1..d_8) with A_1 != 1.
std::vector<Candidate> pipeline_step3(std::span<const Step2Tuple> step2, const Catalog& cat);
/// Same completion keeping only a = alpha and b = beta (A_1 != 1); used to
/// report how strongly the remaining equations prune.
std::size_t pipeline_step3_alpha_beta_only(std::span<const Step2Tuple> step2, const Catalog& cat);

struct SearchReport {
  std::size_t step1_count = 0;
  std::size_t step2_count = 0;
  std::size_t step3_count = 0;
  std::size_t step3_alpha_beta_only_count = 0;
  std::vector<Candidate> candidates;
  std::vector<Poly> perfect_survivors;
  std::vector<Poly> closure;
};

/// Keeps the perfect candidates and closes them under bar. Throws Error with
/// the set difference when the closure is not exactly {T_1, ..., T_11}.
SearchReport pipeline_finalize(std::vector<Candidate> step3, const Catalog& cat);

/// All three steps plus finalize, with counts filled in.
SearchReport run_theorem_pipeline(const Catalog& cat);

// ---------------------------------------------------------------------------
// Exhaustive scan
// ---------------------------------------------------------------------------

inline constexpr int kDefaultScanCeiling = 24;

struct ScanOptions {
  int max_degree = 0;
  int ceiling = kDefaultScanCeiling;
  unsigned jobs = 1;
};

/// Every p with 1 <= deg(p) <= max_degree and sigma(p) = p, ascending.
std::vector<Poly> exhaustive_scan(const ScanOptions& options);

}  // namespace gf2
