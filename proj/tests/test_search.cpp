#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "gf2perfect/catalog.hpp"
#include "gf2perfect/search.hpp"
#include "gf2perfect/sigma.hpp"

using namespace gf2;

namespace {

const Catalog& cat() { return Catalog::instance(); }

Factorization fact(std::initializer_list<std::pair<Poly, int>> items) {
  std::vector<PrimePower> v;
  for (const auto& [p, e] : items) v.push_back({p, e});
  return Factorization(std::move(v));
}

std::vector<Poly> family() { return cat().family(); }

// Step outputs are reused across tests; they are deterministic.
const std::vector<Step1Tuple>& step1() {
  static const auto s = pipeline_step1(cat());
  return s;
}
const std::vector<Step2Tuple>& step2() {
  static const auto s = pipeline_step2(step1(), cat());
  return s;
}

}  // namespace

TEST(X2hTable, Rows) {
  const auto fam = family();
  const auto rows = sigma_x2h_table(92, fam);
  std::vector<int> two_h;
  for (const auto& r : rows) two_h.push_back(r.two_h);
  EXPECT_EQ(two_h, (std::vector<int>{2, 4, 6, 8, 12, 14}));

  const auto& c = cat();
  auto x_side = [&](int k) { return *rows[static_cast<std::size_t>(k)].x_side; };
  auto x1_side = [&](int k) { return *rows[static_cast<std::size_t>(k)].x1_side; };
  EXPECT_EQ(x_side(0), fact({{c.M(1), 1}}));
  EXPECT_EQ(x1_side(0), fact({{c.M(1), 1}}));
  EXPECT_EQ(x_side(1), fact({{c.M(4), 1}}));
  EXPECT_EQ(x1_side(1), fact({{c.M(5), 1}}));
  EXPECT_EQ(x_side(2), fact({{c.M(2), 1}, {c.M(3), 1}}));
  EXPECT_EQ(x1_side(2), fact({{c.M(2), 1}, {c.M(3), 1}}));
  EXPECT_EQ(x_side(3), fact({{c.M(1), 1}, {c.S(4), 1}}));
  EXPECT_EQ(x1_side(3), fact({{c.M(1), 1}, {c.S(5), 1}}));
  EXPECT_EQ(x_side(4), fact({{c.S(3), 1}}));
  EXPECT_EQ(x1_side(4), fact({{c.S(6), 1}}));
  const auto last = fact({{c.M(1), 1}, {c.M(4), 1}, {c.M(5), 1}, {c.S(1), 1}});
  EXPECT_EQ(x_side(5), last);
  EXPECT_EQ(x1_side(5), last);
}

TEST(X2hTable, TenIsAbsent) {
  const auto fam = family();
  const auto rows = sigma_x2h_table(10, fam);
  for (const auto& r : rows) EXPECT_NE(r.two_h, 10);
}

TEST(MersenneTable, Rows) {
  const auto& c = cat();
  const auto rows = sigma_mersenne_table(c);
  ASSERT_EQ(rows.size(), 6u);
  auto find = [&](const std::string& base, int two_h) -> const PrimeTableRow* {
    for (const auto& r : rows)
      if (r.base == base && r.two_h == two_h) return &r;
    return nullptr;
  };
  ASSERT_TRUE(find("M_1", 2));
  EXPECT_EQ(find("M_1", 2)->factors, fact({{c.S(1), 1}}));
  ASSERT_TRUE(find("M_1", 4));
  EXPECT_EQ(find("M_1", 4)->factors, fact({{c.S(8), 1}}));
  ASSERT_TRUE(find("M_1", 6));
  EXPECT_EQ(find("M_1", 6)->factors, fact({{c.M(2), 1}, {c.M(3), 1}, {c.S(2), 1}}));
  ASSERT_TRUE(find("M_1", 14));
  EXPECT_EQ(find("M_1", 14)->factors, fact({{c.M(4), 1}, {c.M(5), 1}, {c.S(1), 1}, {c.S(7), 1}, {c.S(8), 1}}));
  ASSERT_TRUE(find("M_2", 2));
  EXPECT_EQ(find("M_2", 2)->factors, fact({{c.M(1), 1}, {c.M(5), 1}}));
  ASSERT_TRUE(find("M_3", 2));
  EXPECT_EQ(find("M_3", 2)->factors, fact({{c.M(1), 1}, {c.M(4), 1}}));
  for (const auto& r : rows) EXPECT_NE(r.base, "M_4");
}

TEST(STable, Rows) {
  const auto& c = cat();
  const auto rows = sigma_s_table(c);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].base, "S_1");
  EXPECT_EQ(rows[0].two_h, 2);
  EXPECT_EQ(rows[0].factors, fact({{c.M(4), 1}, {c.M(5), 1}}));
  EXPECT_EQ(rows[1].base, "S_2");
  EXPECT_EQ(rows[1].two_h, 2);
  EXPECT_EQ(rows[1].factors, fact({{c.S(1), 1}, {c.S(7), 1}}));
}

TEST(OddDivisors, OnlySmallIndicesAppear) {
  const auto& c = cat();
  const auto fam = family();
  std::set<std::string> names;
  auto collect = [&](const Factorization& f) {
    for (const auto& [p, e] : f) names.insert(*c.name_of(p));
  };
  for (const auto& r : sigma_x2h_table(92, fam)) {
    if (r.x_side) collect(*r.x_side);
    if (r.x1_side) collect(*r.x1_side);
  }
  for (const auto& r : sigma_mersenne_table(c)) collect(r.factors);
  for (const auto& r : sigma_s_table(c)) collect(r.factors);
  for (const auto& n : names) {
    const int idx = std::stoi(n.substr(2));
    EXPECT_LE(idx, n[0] == 'M' ? 5 : 8) << n;
  }
}

TEST(OddDivisors, S2ToS6OccurOnce) {
  const auto& c = cat();
  const auto fam = family();
  std::vector<Factorization> all;
  for (const auto& r : sigma_x2h_table(92, fam)) {
    if (r.x_side) all.push_back(*r.x_side);
    if (r.x1_side) all.push_back(*r.x1_side);
  }
  // The two sides coincide at 2h in {2, 6, 14}; count each value once.
  std::sort(all.begin(), all.end(), [](const auto& l, const auto& r) { return l.product() < r.product(); });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  for (const auto& r : sigma_mersenne_table(c)) all.push_back(r.factors);
  for (const auto& r : sigma_s_table(c)) all.push_back(r.factors);
  for (int j = 2; j <= 6; ++j) {
    int count = 0;
    for (const auto& f : all) count += f.exponent_of(c.S(j)) > 0 ? 1 : 0;
    EXPECT_EQ(count, 1) << "S_" << j;
  }
}

TEST(Exponents, TrivialTuple) {
  const ExponentTuple t;
  EXPECT_EQ(compute_sigma_exponents(t, cat()), SigmaExponents{});
  EXPECT_TRUE(t.odd_part_is_one());
}

TEST(Exponents, T1) {
  ExponentTuple t;
  t.n = 0, t.u = 3, t.m = 1, t.v = 1, t.ni[0] = 1, t.ui[0] = 1;
  EXPECT_EQ(t.materialize(cat()), cat().T(1));
  const auto s = compute_sigma_exponents(t, cat());
  EXPECT_EQ(s.alpha, 2);
  EXPECT_EQ(s.beta, 1);
  EXPECT_EQ(s.gamma, (std::array<int, 5>{1, 0, 0, 0, 0}));
  EXPECT_EQ(s.delta, (std::array<int, 8>{}));
}

TEST(Exponents, T8) {
  ExponentTuple t;
  t.n = 0, t.u = 5, t.m = 0, t.v = 7;
  t.ni[1] = t.ni[2] = 1;
  t.ni[3] = 1;
  EXPECT_EQ(t.materialize(cat()), cat().T(8));
  const auto s = compute_sigma_exponents(t, cat());
  EXPECT_EQ(s.gamma[1], 1);
  EXPECT_EQ(s.gamma[2], 1);
}

TEST(Exponents, SoundOnKnownPerfects) {
  const auto& c = cat();
  for (int k = 1; k <= 11; ++k) {
    const auto t = ExponentTuple::from_poly(c.T(k), c);
    ASSERT_TRUE(t) << "T" << k;
    EXPECT_TRUE(t->in_ranges()) << "T" << k;
    EXPECT_EQ(t->materialize(c), c.T(k));
    const auto s = compute_sigma_exponents(*t, c);
    const Factorization f = factor(sigma_value(c.T(k)));
    EXPECT_EQ(s.alpha, f.exponent_of(Poly::x())) << "T" << k;
    EXPECT_EQ(s.beta, f.exponent_of(Poly::x_plus_one())) << "T" << k;
    for (int i = 1; i <= 5; ++i) EXPECT_EQ(s.gamma[i - 1], f.exponent_of(c.M(i))) << "T" << k << " M" << i;
    for (int j = 1; j <= 8; ++j) EXPECT_EQ(s.delta[j - 1], f.exponent_of(c.S(j))) << "T" << k << " S" << j;
  }
}

TEST(Exponents, SoundOnRandomInRangeTuples) {
  // The closed form must agree with direct factorization for any tuple in range,
  // not only at fixed points.
  const auto& c = cat();
  const int us[] = {1, 3, 5, 7, 9, 13, 15};
  const int u1s[] = {1, 3, 5, 7, 15};
  std::uint64_t state = 12345;
  auto next = [&](int mod) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<int>((state >> 33) % static_cast<std::uint64_t>(mod));
  };
  for (int i = 0; i < 150; ++i) {
    ExponentTuple t;
    t.n = next(3), t.u = us[next(7)], t.m = next(3), t.v = us[next(7)];
    t.ni[0] = next(3), t.ui[0] = u1s[next(5)];
    t.ni[1] = next(2), t.ui[1] = next(2) ? 3 : 1;
    t.ni[2] = next(2), t.ui[2] = next(2) ? 3 : 1;
    t.ni[3] = next(2), t.ni[4] = next(2);
    t.mj[0] = next(2), t.vj[0] = next(2) ? 3 : 1;
    for (int j = 1; j < 8; ++j) t.mj[j] = next(4) == 0 ? 1 : 0;
    ASSERT_TRUE(t.in_ranges());
    const auto s = compute_sigma_exponents(t, c);
    const Factorization f = factor(sigma_value(factor(t.materialize(c))));
    ASSERT_EQ(s.alpha, f.exponent_of(Poly::x())) << i;
    ASSERT_EQ(s.beta, f.exponent_of(Poly::x_plus_one())) << i;
    for (int k = 1; k <= 5; ++k) ASSERT_EQ(s.gamma[k - 1], f.exponent_of(c.M(k))) << i << " M" << k;
    for (int j = 1; j <= 8; ++j) ASSERT_EQ(s.delta[j - 1], f.exponent_of(c.S(j))) << i << " S" << j;
  }
}

TEST(Pipeline, Step1) {
  const auto& s1 = step1();
  EXPECT_EQ(s1.size(), 10944u);
  for (const auto& t : s1) {
    const int a = (1 << t[0]) * t[1] - 1;
    const int b = (1 << t[2]) * t[3] - 1;
    ASSERT_GE(a, 1);
    ASSERT_LE(a, b);
  }
}

TEST(Pipeline, Step1KeepsSecondMersenneFixedPoint) {
  // u = 7, v = 1, u1 = 1 makes gamma_2 = 2^n; the tuple survives iff c_2 = 2^n.
  for (const auto& t : step1()) {
    if (t[1] == 7 && t[3] == 1 && t[5] == 1) {
      const int c2 = (1 << t[6]) * t[7] - 1;
      ASSERT_EQ(c2, 1 << t[0]);
    }
  }
  bool any = false;
  for (const auto& t : step1()) any |= (t[1] == 7 && t[3] == 1 && t[5] == 1);
  EXPECT_TRUE(any);
}

TEST(Pipeline, Step2PropertiesAndDeterminism) {
  const auto& s2 = step2();
  EXPECT_GT(s2.size(), 0u);
  EXPECT_LT(s2.size(), step1().size());
  EXPECT_EQ(pipeline_step2(step1(), cat()), s2);
}

TEST(Pipeline, Step3ContainsKnownPerfects) {
  const auto s3 = pipeline_step3(step2(), cat());
  std::set<std::string> names;
  for (const auto& cand : s3) {
    EXPECT_TRUE(cand.tuple.in_ranges());
    EXPECT_FALSE(cand.tuple.odd_part_is_one());
    EXPECT_EQ(cand.tuple.materialize(cat()), cand.poly);
    if (auto n = cat().name_of(cand.poly)) names.insert(*n);
  }
  EXPECT_TRUE(names.count("T_4"));
  EXPECT_LE(pipeline_step3_alpha_beta_only(step2(), cat()), step2().size() * 36);
  EXPECT_GE(pipeline_step3_alpha_beta_only(step2(), cat()), s3.size());
}

TEST(Pipeline, FinalClosure) {
  const SearchReport r = run_theorem_pipeline(cat());
  std::vector<Poly> expected;
  for (const auto& e : cat().knowns()) expected.push_back(e.poly);
  std::sort(expected.begin(), expected.end());
  auto closure = r.closure;
  std::sort(closure.begin(), closure.end());
  EXPECT_EQ(closure, expected);
  for (const Poly& p : r.perfect_survivors) {
    EXPECT_TRUE(is_indecomposable_perfect(p));
    EXPECT_GE(omega(p), 3);
  }
  EXPECT_EQ(r.step1_count, 10944u);
}

TEST(Pipeline, FinalizeRejectsIncompleteInput) {
  EXPECT_THROW(pipeline_finalize({}, cat()), Error);
}

TEST(Scan, SmallDegrees) {
  EXPECT_EQ(exhaustive_scan({.max_degree = 2}), (std::vector<Poly>{parse("x*(x+1)")}));
  const std::vector<Poly> five{parse("x*(x+1)"), cat().T(1), cat().T(2)};
  auto got = exhaustive_scan({.max_degree = 5});
  std::sort(got.begin(), got.end());
  auto want = five;
  std::sort(want.begin(), want.end());
  EXPECT_EQ(got, want);
}

TEST(Scan, ParallelMatchesSerial) {
  EXPECT_EQ(exhaustive_scan({.max_degree = 12, .jobs = 1}), exhaustive_scan({.max_degree = 12, .jobs = 3}));
}

TEST(Scan, CeilingEnforced) {
  EXPECT_THROW(exhaustive_scan({.max_degree = 25}), Error);
  EXPECT_THROW(exhaustive_scan({.max_degree = 10, .ceiling = 8}), Error);
  EXPECT_THROW(exhaustive_scan({.max_degree = 0}), Error);
}
