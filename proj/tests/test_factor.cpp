#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gf2perfect/catalog.hpp"
#include "gf2perfect/factor.hpp"
#include "gf2perfect/sigma.hpp"
#include "oracle.hpp"

using namespace gf2;

namespace {

const Catalog& cat() { return Catalog::instance(); }

Factorization fact(std::initializer_list<std::pair<Poly, int>> items) {
  std::vector<PrimePower> v;
  for (const auto& [p, e] : items) v.push_back({p, e});
  return Factorization(std::move(v));
}

}  // namespace

TEST(Irreducible, Examples) {
  EXPECT_TRUE(is_irreducible(cat().M(1)));
  EXPECT_FALSE(is_irreducible(parse("x^2+1")));
  EXPECT_EQ(cat().S(9).degree(), 12);
  EXPECT_TRUE(is_irreducible(cat().S(9)));
  EXPECT_THROW(is_irreducible(Poly::one()), Error);
  EXPECT_THROW(is_irreducible(Poly{}), Error);
}

TEST(Irreducible, MatchesSieveUpToDegree16) {
  const auto primes = oracle::irreducibles_up_to(16);
  std::size_t k = 0;
  for (oracle::Mask m = 2; m < (oracle::Mask{1} << 17); ++m) {
    const bool expected = k < primes.size() && primes[k] == m;
    if (expected) ++k;
    ASSERT_EQ(is_irreducible(Poly::from_mask(m)), expected) << m;
  }
}

TEST(Irreducible, NecklaceCounts) {
  for (int d = 1; d <= 12; ++d) {
    long long count = 0;
    for (oracle::Mask m = oracle::Mask{1} << d; m < (oracle::Mask{1} << (d + 1)); ++m) {
      count += is_irreducible(Poly::from_mask(m)) ? 1 : 0;
    }
    EXPECT_EQ(count, oracle::necklace_count(d)) << "degree " << d;
  }
  EXPECT_EQ(oracle::necklace_count(12), 335);
}

TEST(Factor, Examples) {
  const auto& c = cat();
  EXPECT_EQ(factor(geometric_sum(Poly::x(), 14)), fact({{c.M(1), 1}, {c.M(4), 1}, {c.M(5), 1}, {c.S(1), 1}}));
  EXPECT_EQ(factor(parse("x^2+x")), fact({{Poly::x(), 1}, {Poly::x_plus_one(), 1}}));
  EXPECT_TRUE(factor(Poly::one()).empty());
  EXPECT_THROW(factor(Poly{}), Error);
}

TEST(Factor, SigmaX10IsIrreducibleByTrialDivision) {
  const oracle::Mask s10 = oracle::all_ones(10);
  const auto primes = oracle::irreducibles_up_to(5);
  for (oracle::Mask q : primes) ASSERT_NE(oracle::divmod(s10, q).second, 0u) << q;
  const Factorization f = factor(geometric_sum(Poly::x(), 10));
  ASSERT_EQ(f.size(), 1u);
  EXPECT_EQ(f.factors()[0].exponent, 1);
  EXPECT_EQ(f.factors()[0].prime.degree(), 10);
  EXPECT_FALSE(cat().find(f.factors()[0].prime));
}

TEST(Factor, OracleAgreementUpToDegree16) {
  const auto primes = oracle::irreducibles_up_to(8);
  for (oracle::Mask m = 1; m < (oracle::Mask{1} << 17); ++m) {
    auto expected = oracle::trial_factor(m, primes);
    std::sort(expected.begin(), expected.end(), [](const auto& l, const auto& r) {
      return Poly::from_mask(l.first) < Poly::from_mask(r.first);
    });
    const Factorization f = factor(Poly::from_mask(m));
    ASSERT_EQ(f.size(), expected.size()) << m;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      ASSERT_EQ(f.factors()[i].prime.to_mask(), expected[i].first) << m;
      ASSERT_EQ(f.factors()[i].exponent, expected[i].second) << m;
    }
  }
}

TEST(Factor, RoundTripRandom) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> deg(1, 64);
  for (int i = 0; i < 10000; ++i) {
    const int d = deg(rng);
    std::vector<Poly::Word> w{rng()};
    if (d >= 64) w.push_back(1);
    else w[0] = (w[0] & ((Poly::Word{1} << d) - 1)) | (Poly::Word{1} << d);
    const Poly p(std::move(w));
    const Factorization f = factor(p);
    ASSERT_EQ(f.product(), p) << to_hex(p);
    for (const auto& [q, e] : f) {
      ASSERT_GE(e, 1);
      ASSERT_TRUE(is_irreducible(q)) << to_hex(q);
    }
    ASSERT_TRUE(std::is_sorted(f.begin(), f.end(), [](const auto& l, const auto& r) { return l.prime < r.prime; }));
  }
}

TEST(Factor, RepeatedAndLargeFactors) {
  const auto& c = cat();
  const Poly p = pow(c.M(1), 3) * pow(c.S(9), 2) * pow(Poly::x(), 4) * c.M(12);
  EXPECT_EQ(factor(p), fact({{Poly::x(), 4}, {c.M(1), 3}, {c.M(12), 1}, {c.S(9), 2}}));
  const Poly big = geometric_sum(Poly::x(), 2 * 92);
  EXPECT_EQ(factor(big).product(), big);
}

TEST(Omega, Examples) {
  EXPECT_EQ(omega(cat().T(8)), 5);
  EXPECT_EQ(rad(parse("x^4")), Poly::x());
  EXPECT_EQ(omega(Poly::one()), 0);
  EXPECT_THROW(omega(Poly{}), Error);
}

TEST(Squarefree, Examples) {
  EXPECT_TRUE(is_squarefree(geometric_sum(cat().S(2), 2)));
  EXPECT_FALSE(is_squarefree(parse("x^2")));
  EXPECT_TRUE(is_squarefree(geometric_sum(cat().M(1), 14)));
  EXPECT_THROW(is_squarefree(Poly{}), Error);
}

TEST(Squarefree, SigmaOfEvenPowersOverFamily) {
  std::vector<Poly> bases{Poly::x(), Poly::x_plus_one()};
  for (const Poly& p : cat().family()) bases.push_back(p);
  for (const Poly& s : bases) {
    for (int h = 1; h <= 10; ++h) {
      ASSERT_TRUE(is_squarefree(geometric_sum(s, 2 * h))) << to_hex(s) << " h=" << h;
    }
  }
}

TEST(FactorOver, TrialDivision) {
  const auto fam = cat().family();
  const auto f = factor_over(geometric_sum(Poly::x(), 8), fam);
  ASSERT_TRUE(f);
  EXPECT_EQ(*f, fact({{cat().M(1), 1}, {cat().S(4), 1}}));
  EXPECT_FALSE(factor_over(geometric_sum(Poly::x(), 10), fam));
}

TEST(Render, Names) {
  const auto& c = cat();
  EXPECT_EQ(render(factor(c.T(1)), c.namer()), "x^2 * (x+1) * M_1");
  EXPECT_EQ(render(Factorization{}, c.namer()), "1");
  EXPECT_EQ(render(factor(geometric_sum(Poly::x(), 10)), c.namer()), "(x^10+x^9+x^8+x^7+x^6+x^5+x^4+x^3+x^2+x+1)");
}
