#include "gf2perfect/sigma.hpp"

#include <vector>

namespace gf2 {

Poly geometric_sum(const Poly& p, int k) {
  if (k < 0) throw Error("negative exponent in divisor sum");
  // Horner: ((p + 1) p + 1) p + ... + 1
  Poly acc = Poly::one();
  for (int i = 0; i < k; ++i) acc = mul(acc, p) + Poly::one();
  return acc;
}

Poly sigma_prime_power(const Poly& p, int k) {
  if (p.degree() < 1 || !is_irreducible(p)) {
    throw Error("sigma_prime_power needs an irreducible base, got " + to_string(p));
  }
  return geometric_sum(p, k);
}

Poly sigma_value(const Factorization& fa) {
  Poly out = Poly::one();
  for (const auto& [prime, e] : fa) out = mul(out, geometric_sum(prime, e));
  return out;
}

Poly sigma_value(const Poly& a) {
  if (a.is_zero()) throw Error("sigma of the zero polynomial");
  return sigma_value(factor(a));
}

SigmaValue sigma(const Poly& a) {
  Poly value = sigma_value(a);
  Factorization f = factor(value);
  return {std::move(value), std::move(f)};
}

bool is_perfect(const Poly& a) { return sigma_value(a) == a; }

bool is_indecomposable_perfect(const Poly& a) {
  const Factorization fa = factor(a);
  if (sigma_value(fa) != a) throw Error("not a perfect polynomial: " + to_string(a));
  const std::size_t w = fa.size();
  if (w > 30) throw Error("too many prime factors for subset enumeration");

  std::vector<Poly> parts, sums;
  for (const auto& [prime, e] : fa) {
    parts.push_back(pow(prime, static_cast<unsigned>(e)));
    sums.push_back(geometric_sum(prime, e));
  }
  const std::uint64_t full = (std::uint64_t{1} << w) - 1;
  // A split {B, A/B} is visited twice; every proper nonempty B is checked.
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    Poly b = Poly::one(), sb = Poly::one();
    for (std::size_t i = 0; i < w; ++i) {
      if ((mask >> i) & 1) {
        b = mul(b, parts[i]);
        sb = mul(sb, sums[i]);
      }
    }
    if (b == sb) return false;
  }
  return true;
}

bool check_eq3_decomposition(const Poly& s, int exponent) {
  if (exponent < 1) throw Error("exponent must be at least 1");
  int twos = 0;
  int odd = exponent + 1;
  while (odd % 2 == 0) {
    odd /= 2;
    ++twos;
  }
  const Poly lhs = sigma_prime_power(s, exponent);
  const unsigned block = 1u << twos;
  const Poly rhs = mul(pow(s + Poly::one(), block - 1), pow(geometric_sum(s, odd - 1), block));
  return lhs == rhs;
}

}  // namespace gf2
