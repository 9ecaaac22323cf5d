#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gf2perfect/poly.hpp"

namespace gf2 {

struct PrimePower {
  Poly prime;
  int exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Distinct irreducible factors with multiplicities, sorted by (degree,
/// mask). The empty factorization represents 1.
class Factorization {
 public:
  Factorization() = default;
  /// Sorts and merges equal primes; does not test irreducibility.
  explicit Factorization(std::vector<PrimePower> factors);

  const std::vector<PrimePower>& factors() const noexcept { return factors_; }
  bool empty() const noexcept { return factors_.empty(); }
  std::size_t size() const noexcept { return factors_.size(); }
  auto begin() const noexcept { return factors_.begin(); }
  auto end() const noexcept { return factors_.end(); }

  /// Exponent of `prime`, 0 when absent.
  int exponent_of(const Poly& prime) const;
  Poly product() const;
  Poly radical() const;

  friend bool operator==(const Factorization&, const Factorization&) = default;

 private:
  std::vector<PrimePower> factors_;
};

/// Rabin's test. Throws for constants.
bool is_irreducible(const Poly& p);

/// Complete factorization: squarefree decomposition, distinct-degree
/// splitting, then deterministic trace-map equal-degree splitting.
Factorization factor(const Poly& p);

int omega(const Poly& p);
Poly rad(const Poly& p);
bool is_squarefree(const Poly& p);

/// Factorization of p using only the given primes (trial division), or
/// nullopt when something is left over.
std::optional<Factorization> factor_over(const Poly& p, std::span<const Poly> primes);

/// Maps a prime to a display name such as "M_1"; nullopt for unnamed primes.
using PrimeNamer = std::function<std::optional<std::string>(const Poly&)>;

/// "M_1 * M_4^2 * (x^10+...+1)"; unnamed primes print in parenthesized
/// raw form, x and x+1 print as "x" and "(x+1)". The unit prints as "1".
std::string render(const Factorization& f, const PrimeNamer& namer = {});

}  // namespace gf2
