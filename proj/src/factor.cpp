#include "gf2perfect/factor.hpp"

#include <algorithm>

namespace gf2 {

namespace {

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int r = 2; r * r <= n; ++r) {
    if (n % r == 0) {
      out.push_back(r);
      while (n % r == 0) n /= r;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Poly exact_div(const Poly& p, const Poly& q) { return divrem(p, q).quotient; }

// Squarefree parts of f with their multiplicities.
void squarefree_decompose(const Poly& f, int multiplier, std::vector<PrimePower>& out) {
  if (f.degree() <= 0) return;
  Poly c = gcd(f, derivative(f));
  Poly w = exact_div(f, c);
  int i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly z = exact_div(w, y);
    if (!z.is_one()) out.push_back({std::move(z), i * multiplier});
    ++i;
    w = std::move(y);
    c = exact_div(c, w);
  }
  if (!c.is_one()) squarefree_decompose(sqrt_of_square(c), 2 * multiplier, out);
}

// Splits squarefree g into products of irreducibles of equal degree.
std::vector<std::pair<Poly, int>> distinct_degree(Poly g) {
  std::vector<std::pair<Poly, int>> out;
  const Poly x = Poly::x();
  Poly h = mod(x, g);
  for (int d = 1; g.degree() >= 2 * d; ++d) {
    h = sqrmod(h, g);
    Poly t = gcd(g, h + x);
    if (!t.is_one()) {
      g = exact_div(g, t);
      h = mod(h, g);
      out.emplace_back(std::move(t), d);
    }
  }
  if (g.degree() > 0) {
    const int d = g.degree();
    out.emplace_back(std::move(g), d);
  }
  return out;
}

Poly trace_map(const Poly& v, int d, const Poly& f) {
  Poly t = mod(v, f);
  Poly acc = t;
  for (int i = 1; i < d; ++i) {
    t = sqrmod(t, f);
    acc += t;
  }
  return acc;
}

// f is a squarefree product of irreducibles of degree d. The sweep over
// v = x, x^2, ... always splits: if every basis element had a constant
// trace pattern, the trace would be constant on the whole algebra.
void equal_degree(const Poly& f, int d, std::vector<Poly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const int n = f.degree();
  Poly v = Poly::x();
  for (int k = 1; k < n; ++k, v <<= 1) {
    Poly g = gcd(f, trace_map(v, d, f));
    if (g.degree() > 0 && g.degree() < n) {
      equal_degree(g, d, out);
      equal_degree(exact_div(f, g), d, out);
      return;
    }
  }
  throw Error("equal-degree splitting failed for " + to_hex(f));
}

}  // namespace

Factorization::Factorization(std::vector<PrimePower> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const PrimePower& a, const PrimePower& b) { return a.prime < b.prime; });
  for (auto& pp : factors) {
    if (pp.exponent == 0) continue;
    if (!factors_.empty() && factors_.back().prime == pp.prime) {
      factors_.back().exponent += pp.exponent;
    } else {
      factors_.push_back(std::move(pp));
    }
  }
}

int Factorization::exponent_of(const Poly& prime) const {
  for (const auto& pp : factors_) {
    if (pp.prime == prime) return pp.exponent;
  }
  return 0;
}

Poly Factorization::product() const {
  Poly out = Poly::one();
  for (const auto& pp : factors_) out = mul(out, pow(pp.prime, static_cast<unsigned>(pp.exponent)));
  return out;
}

Poly Factorization::radical() const {
  Poly out = Poly::one();
  for (const auto& pp : factors_) out = mul(out, pp.prime);
  return out;
}

bool is_irreducible(const Poly& p) {
  const int d = p.degree();
  if (d < 1) throw Error("irreducibility of a constant");
  if (d == 1) return true;
  if (!p.eval_at_zero() || !p.eval_at_one()) return false;

  const Poly x = Poly::x();
  const auto primes = prime_divisors(d);
  // powers[k] = x^(2^k) mod p, only for the exponents we need.
  std::vector<int> checkpoints;
  for (int r : primes) checkpoints.push_back(d / r);
  Poly h = mod(x, p);
  for (int k = 1; k <= d; ++k) {
    h = sqrmod(h, p);
    if (std::find(checkpoints.begin(), checkpoints.end(), k) != checkpoints.end()) {
      if (!gcd(p, h + x).is_one()) return false;
    }
  }
  return h == mod(x, p);
}

Factorization factor(const Poly& p) {
  if (p.is_zero()) throw Error("factorization of the zero polynomial");
  std::vector<PrimePower> parts;
  squarefree_decompose(p, 1, parts);
  std::vector<PrimePower> primes;
  for (const auto& part : parts) {
    for (auto& [block, d] : distinct_degree(part.prime)) {
      std::vector<Poly> split;
      equal_degree(block, d, split);
      for (auto& q : split) primes.push_back({std::move(q), part.exponent});
    }
  }
  return Factorization(std::move(primes));
}

int omega(const Poly& p) { return static_cast<int>(factor(p).size()); }

Poly rad(const Poly& p) { return factor(p).radical(); }

bool is_squarefree(const Poly& p) {
  if (p.is_zero()) throw Error("squarefreeness of the zero polynomial");
  if (p.degree() == 0) return true;
  Poly dp = derivative(p);
  if (dp.is_zero()) return false;
  return gcd(p, dp).is_one();
}

std::optional<Factorization> factor_over(const Poly& p, std::span<const Poly> primes) {
  if (p.is_zero()) throw Error("factorization of the zero polynomial");
  Poly rest = p;
  std::vector<PrimePower> found;
  for (const auto& q : primes) {
    int e = 0;
    while (rest.degree() >= q.degree()) {
      auto [quot, rem] = divrem(rest, q);
      if (!rem.is_zero()) break;
      rest = std::move(quot);
      ++e;
    }
    if (e) found.push_back({q, e});
    if (rest.is_one()) break;
  }
  if (!rest.is_one()) return std::nullopt;
  return Factorization(std::move(found));
}

std::string render(const Factorization& f, const PrimeNamer& namer) {
  if (f.empty()) return "1";
  std::string out;
  for (const auto& [prime, e] : f) {
    if (!out.empty()) out += " * ";
    std::optional<std::string> name;
    if (namer) name = namer(prime);
    if (name) {
      out += *name;
    } else if (prime == Poly::x()) {
      out += "x";
    } else {
      out += "(" + to_string(prime) + ")";
    }
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

}  // namespace gf2
