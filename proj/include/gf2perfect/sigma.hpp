#pragma once

#include "gf2perfect/factor.hpp"
#include "gf2perfect/poly.hpp"

namespace gf2 {

struct SigmaValue {
  Poly value;
  Factorization factored;
};

/// 1 + p + ... + p^k. Requires p irreducible (checked) and k >= 0.
Poly sigma_prime_power(const Poly& p, int k);

/// Same sum without the irreducibility check, for callers that already hold
/// a verified prime.
Poly geometric_sum(const Poly& p, int k);

/// Sum of all divisors, from a factorization of a.
Poly sigma_value(const Poly& a);
Poly sigma_value(const Factorization& fa);

/// sigma_value plus the factorization of the result.
SigmaValue sigma(const Poly& a);

bool is_perfect(const Poly& a);

/// True iff no proper nonempty set of the prime-power factors of a multiplies
/// to a perfect polynomial. Throws unless a is perfect.
bool is_indecomposable_perfect(const Poly& a);

/// Checks sigma(s^e) = (1+s)^(2^t - 1) * sigma(s^(r-1))^(2^t) where
/// e = 2^t * r - 1 with r odd, by direct expansion. s must be irreducible.
bool check_eq3_decomposition(const Poly& s, int exponent);

}  // namespace gf2
