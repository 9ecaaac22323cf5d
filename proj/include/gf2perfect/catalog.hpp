#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "gf2perfect/factor.hpp"
#include "gf2perfect/poly.hpp"

namespace gf2 {

/// 1 + x^a (x+1)^b
struct MersenneParams {
  int a = 0;
  int b = 0;
};

/// 1 + x^alpha (x+1)^beta M_1^nu
struct STypeParams {
  int alpha = 0;
  int beta = 0;
  int nu = 0;
};

struct KnownPerfectParams {
  Factorization definition;
};

enum class EntryKind { MersennePrime, SType, KnownPerfect };

struct CatalogEntry {
  std::string name;
  Poly poly;
  std::variant<MersenneParams, STypeParams, KnownPerfectParams> params;
  std::string bar_partner;
  std::optional<std::string> star_partner;

  EntryKind kind() const noexcept { return static_cast<EntryKind>(params.index()); }
};

/// 1 + x^a (x+1)^b q^c. Throws if q has a linear factor or any exponent is
/// below 1.
Poly construct_Q_abc(const Poly& q, int a, int b, int c);

/// Irreducible of the form 1 + x^a (x+1)^b with a, b >= 1.
bool is_mersenne_prime(const Poly& p);

/// The thirteen Mersenne primes M_1..M_13, the fifteen S_1..S_15 built from
/// M_1, and the eleven known non-trivial perfects T_1..T_11.
class Catalog {
 public:
  /// Builds every entry from its defining formula and checks all entry
  /// invariants; throws Error naming the first offending entry.
  static Catalog build();
  /// Process-wide instance, built once.
  static const Catalog& instance();

  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }
  /// Accepts "M_4" and "M4".
  const CatalogEntry* find(std::string_view name) const;
  const CatalogEntry& at(std::string_view name) const;
  const CatalogEntry* find(const Poly& p) const;
  std::optional<std::string> name_of(const Poly& p) const;

  std::span<const CatalogEntry> f1() const { return std::span(entries_).subspan(0, 13); }
  std::span<const CatalogEntry> f2() const { return std::span(entries_).subspan(13, 15); }
  std::span<const CatalogEntry> knowns() const { return std::span(entries_).subspan(28, 11); }
  /// M_1..M_13 then S_1..S_15.
  std::vector<Poly> family() const;
  const Poly& M(int i) const { return entries_.at(static_cast<std::size_t>(i - 1)).poly; }
  const Poly& S(int j) const { return entries_.at(static_cast<std::size_t>(12 + j)).poly; }
  const Poly& T(int k) const { return entries_.at(static_cast<std::size_t>(27 + k)).poly; }
  int family_degree_sum() const;

  PrimeNamer namer() const;
  SymbolResolver resolver() const;

 private:
  void index();
  std::vector<CatalogEntry> entries_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::unordered_map<Poly, std::size_t> by_poly_;
};

struct CatalogCheck {
  std::string subject;
  std::string check;
  bool passed = false;
};

/// Every structural fact about the catalog, one row per check.
std::vector<CatalogCheck> verify_catalog(const Catalog& cat);

struct XSideWitness {
  int h = 0;
  /// true: sigma(x^(2h)); false: sigma((x+1)^(2h)).
  bool x_side = true;
};

/// Why condition iii) holds for one member. h == 0 means 1 + T factors.
struct MemberWitness {
  Poly member;
  std::optional<int> h;
};

struct AdmissibilityReport {
  int h_max = 0;
  bool cond_i = false;
  std::optional<XSideWitness> cond_ii;
  /// One entry per member; h unset when nothing was found up to h_max.
  std::vector<MemberWitness> cond_iii;
  bool admissible = false;

  bool cond_iii_complete() const;
};

/// Searches conditions ii) and iii) over 1 <= h <= h_max; condition i) is
/// exact. Members must be odd and irreducible.
AdmissibilityReport check_admissible(std::span<const Poly> family, int h_max);

}  // namespace gf2
