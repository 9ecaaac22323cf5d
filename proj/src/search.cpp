#include "gf2perfect/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "gf2perfect/sigma.hpp"

namespace gf2 {

namespace {

constexpr std::array kUV{1, 3, 5, 7, 9, 13, 15};
constexpr std::array kU1{1, 3, 5, 7, 15};
constexpr std::array kOneOrThree{1, 3};
constexpr int kMaxN = 4;    // n, m, n1
constexpr int kMaxN23 = 3;  // n2, n3, m1
constexpr int kMaxN45 = 5;  // n4, n5
constexpr int kMaxMj = 1;   // m_j, j >= 2

template <std::size_t N>
bool contains(const std::array<int, N>& values, int x) {
  return std::find(values.begin(), values.end(), x) != values.end();
}

int chi(int w, int t) { return t == w ? 1 : 0; }

struct TwoAdic {
  int twos;
  int odd;
};

// e + 1 = 2^twos * odd
TwoAdic split_exponent(int e) {
  TwoAdic r{0, e + 1};
  while (r.odd % 2 == 0) {
    r.odd /= 2;
    ++r.twos;
  }
  return r;
}

bool all_in_family(const Factorization& f, std::span<const Poly> family) {
  return std::all_of(f.begin(), f.end(), [&](const PrimePower& pp) {
    return std::find(family.begin(), family.end(), pp.prime) != family.end();
  });
}

std::optional<Factorization> factor_in_family(const Poly& p, std::span<const Poly> family) {
  Factorization f = factor(p);
  if (!all_in_family(f, family)) return std::nullopt;
  return f;
}

ExponentTuple from_step1(const Step1Tuple& s) {
  ExponentTuple t;
  t.n = s[0];
  t.u = s[1];
  t.m = s[2];
  t.v = s[3];
  t.ni[0] = s[4];
  t.ui[0] = s[5];
  t.ni[1] = s[6];
  t.ui[1] = s[7];
  // gamma_2 = gamma_3, so c_3 = c_2 for any fixed point.
  t.ni[2] = s[6];
  t.ui[2] = s[7];
  return t;
}

ExponentTuple from_step2(const Step2Tuple& s) {
  Step1Tuple head;
  std::copy_n(s.begin(), 8, head.begin());
  ExponentTuple t = from_step1(head);
  for (int j = 2; j <= 8; ++j) {
    // d_j in {0, 1} = 2^{m_j} - 1 with v_j = 1
    t.mj[j - 1] = s[7 + j];
    t.vj[j - 1] = 1;
  }
  t.mj[0] = s[16];
  t.vj[0] = s[17];
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<X2hRow> sigma_x2h_table(int h_max, std::span<const Poly> family) {
  if (h_max < 1) throw Error("h_max must be at least 1");
  std::vector<X2hRow> rows;
  for (int h = 1; h <= h_max; ++h) {
    const Poly sx = geometric_sum(Poly::x(), 2 * h);
    X2hRow row{2 * h, factor_in_family(sx, family), factor_in_family(bar(sx), family)};
    if (row.x_side || row.x1_side) rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<PrimeTableRow> sigma_prime_table(std::span<const CatalogEntry> bases, std::span<const Poly> family,
                                             int degree_budget, std::optional<int> h_max) {
  if (h_max && *h_max < 1) throw Error("h_max must be at least 1");
  std::vector<PrimeTableRow> rows;
  for (const auto& base : bases) {
    const int deg = base.poly.degree();
    Poly power = Poly::one();
    Poly sum = Poly::one();
    for (int h = 1; 2 * h * deg <= degree_budget && (!h_max || h <= *h_max); ++h) {
      for (int k = 0; k < 2; ++k) {
        power = mul(power, base.poly);
        sum += power;
      }
      if (auto f = factor_in_family(sum, family)) rows.push_back({base.name, 2 * h, std::move(*f)});
    }
  }
  return rows;
}

std::vector<PrimeTableRow> sigma_mersenne_table(const Catalog& cat, std::optional<int> h_max) {
  const auto family = cat.family();
  return sigma_prime_table(cat.f1(), family, cat.family_degree_sum(), h_max);
}

std::vector<PrimeTableRow> sigma_s_table(const Catalog& cat, std::optional<int> h_max) {
  const auto family = cat.family();
  return sigma_prime_table(cat.f2(), family, cat.family_degree_sum(), h_max);
}

// ---------------------------------------------------------------------------

bool ExponentTuple::in_ranges() const {
  if (!contains(kUV, u) || !contains(kUV, v) || !contains(kU1, ui[0])) return false;
  if (!contains(kOneOrThree, ui[1]) || !contains(kOneOrThree, ui[2]) || !contains(kOneOrThree, vj[0])) return false;
  if (ui[3] != 1 || ui[4] != 1) return false;
  if (n < 0 || n > kMaxN || m < 0 || m > kMaxN || ni[0] < 0 || ni[0] > kMaxN) return false;
  for (int k : {ni[1], ni[2], mj[0]}) {
    if (k < 0 || k > kMaxN23) return false;
  }
  for (int k : {ni[3], ni[4]}) {
    if (k < 0 || k > kMaxN45) return false;
  }
  for (int j = 1; j < 8; ++j) {
    if (vj[j] != 1 || mj[j] < 0 || mj[j] > kMaxMj) return false;
  }
  return true;
}

bool ExponentTuple::odd_part_is_one() const {
  for (int i = 1; i <= 5; ++i) {
    if (c(i) != 0) return false;
  }
  for (int j = 1; j <= 8; ++j) {
    if (d(j) != 0) return false;
  }
  return true;
}

Poly ExponentTuple::materialize(const Catalog& cat) const {
  Poly p = mul(pow(Poly::x(), static_cast<unsigned>(a())), pow(Poly::x_plus_one(), static_cast<unsigned>(b())));
  for (int i = 1; i <= 5; ++i) p = mul(p, pow(cat.M(i), static_cast<unsigned>(c(i))));
  for (int j = 1; j <= 8; ++j) p = mul(p, pow(cat.S(j), static_cast<unsigned>(d(j))));
  return p;
}

std::optional<ExponentTuple> ExponentTuple::from_poly(const Poly& a, const Catalog& cat) {
  ExponentTuple t;
  for (const auto& [prime, e] : factor(a)) {
    const auto split = split_exponent(e);
    if (prime == Poly::x()) {
      t.n = split.twos;
      t.u = split.odd;
      continue;
    }
    if (prime == Poly::x_plus_one()) {
      t.m = split.twos;
      t.v = split.odd;
      continue;
    }
    bool placed = false;
    for (int i = 1; i <= 5 && !placed; ++i) {
      if (prime == cat.M(i)) {
        t.ni[i - 1] = split.twos;
        t.ui[i - 1] = split.odd;
        placed = true;
      }
    }
    for (int j = 1; j <= 8 && !placed; ++j) {
      if (prime == cat.S(j)) {
        t.mj[j - 1] = split.twos;
        t.vj[j - 1] = split.odd;
        placed = true;
      }
    }
    if (!placed) return std::nullopt;
  }
  return t;
}

SigmaExponents compute_sigma_exponents(const ExponentTuple& t, const Catalog& cat) {
  const int P = 1 << t.n;
  const int Q = 1 << t.m;
  std::array<int, 5> N{};
  for (int i = 0; i < 5; ++i) N[i] = 1 << t.ni[i];
  std::array<int, 8> Mj{};
  for (int j = 0; j < 8; ++j) Mj[j] = 1 << t.mj[j];
  const int u = t.u, v = t.v;
  const int u1 = t.ui[0], u2 = t.ui[1], u3 = t.ui[2], v1 = t.vj[0];

  const int xi1 = chi(3, u) + chi(9, u) + chi(15, u);
  const int xi2 = chi(3, v) + chi(9, v) + chi(15, v);
  const int xi3 = chi(5, u) + chi(15, u);
  const int xi4 = chi(5, v) + chi(15, v);

  SigmaExponents s;
  s.alpha = Q - 1;
  s.beta = P - 1;
  int gamma1_linear = 0;
  for (int i = 1; i <= 5; ++i) {
    const auto& mp = std::get<MersenneParams>(cat.at("M_" + std::to_string(i)).params);
    s.alpha += (N[i - 1] - 1) * mp.a;
    s.beta += (N[i - 1] - 1) * mp.b;
  }
  for (int j = 1; j <= 8; ++j) {
    const auto& sp = std::get<STypeParams>(cat.at("S_" + std::to_string(j)).params);
    s.alpha += (Mj[j - 1] - 1) * sp.alpha;
    s.beta += (Mj[j - 1] - 1) * sp.beta;
    gamma1_linear += (Mj[j - 1] - 1) * sp.nu;
  }

  s.gamma[0] = gamma1_linear + xi1 * P + xi2 * Q + chi(3, u2) * N[1] + chi(3, u3) * N[2];
  s.gamma[1] = chi(7, u) * P + chi(7, v) * Q + chi(7, u1) * N[0];
  s.gamma[2] = s.gamma[1];
  s.gamma[3] = xi3 * P + chi(15, v) * Q + chi(15, u1) * N[0] + chi(3, u3) * N[2] + chi(3, v1) * Mj[0];
  s.gamma[4] = chi(15, u) * P + xi4 * Q + chi(15, u1) * N[0] + chi(3, u2) * N[1] + chi(3, v1) * Mj[0];

  s.delta[0] = chi(15, u) * P + chi(15, v) * Q + (chi(3, u1) + chi(15, u1)) * N[0];
  s.delta[1] = chi(7, u1) * N[0];
  s.delta[2] = chi(13, u) * P;
  s.delta[3] = chi(9, u) * P;
  s.delta[4] = chi(9, v) * Q;
  s.delta[5] = chi(13, v) * Q;
  // sigma(M_1^14) carries S_7 and S_8; sigma(M_1^4) = S_8.
  s.delta[6] = chi(15, u1) * N[0];
  s.delta[7] = (chi(5, u1) + chi(15, u1)) * N[0];
  return s;
}

// ---------------------------------------------------------------------------

std::vector<Step1Tuple> pipeline_step1(const Catalog& cat) {
  std::vector<Step1Tuple> out;
  for (int n = 0; n <= kMaxN; ++n)
    for (int u : kUV)
      for (int m = 0; m <= kMaxN; ++m)
        for (int v : kUV)
          for (int n1 = 0; n1 <= kMaxN; ++n1)
            for (int u1 : kU1)
              for (int n2 = 0; n2 <= kMaxN23; ++n2)
                for (int u2 : kOneOrThree) {
                  const Step1Tuple s{n, u, m, v, n1, u1, n2, u2};
                  const ExponentTuple t = from_step1(s);
                  if (t.a() < 1 || t.a() > t.b()) continue;
                  if (t.c(2) != compute_sigma_exponents(t, cat).gamma[1]) continue;
                  out.push_back(s);
                }
  return out;
}

std::vector<Step2Tuple> pipeline_step2(std::span<const Step1Tuple> step1, const Catalog& cat) {
  std::vector<Step2Tuple> out;
  for (const auto& s : step1) {
    const auto delta = compute_sigma_exponents(from_step1(s), cat).delta;
    bool rest_ok = true;
    for (int j = 2; j <= 8; ++j) {
      bool representable = false;
      for (int mj = 0; mj <= kMaxMj; ++mj) representable = representable || delta[j - 1] == (1 << mj) - 1;
      rest_ok = rest_ok && representable;
    }
    if (!rest_ok) continue;
    for (int m1 = 0; m1 <= kMaxN23; ++m1) {
      for (int v1 : kOneOrThree) {
        if ((1 << m1) * v1 - 1 != delta[0]) continue;
        Step2Tuple t{};
        std::copy(s.begin(), s.end(), t.begin());
        for (int j = 1; j <= 8; ++j) t[7 + j] = delta[j - 1];
        t[16] = m1;
        t[17] = v1;
        out.push_back(t);
      }
    }
  }
  return out;
}

namespace {

template <typename Keep>
void complete_step3(std::span<const Step2Tuple> step2, const Catalog& cat, Keep&& keep) {
  for (const auto& s : step2) {
    ExponentTuple t = from_step2(s);
    for (int n4 = 0; n4 <= kMaxN45; ++n4) {
      for (int n5 = 0; n5 <= kMaxN45; ++n5) {
        t.ni[3] = n4;
        t.ni[4] = n5;
        if (t.odd_part_is_one()) continue;
        keep(t, compute_sigma_exponents(t, cat));
      }
    }
  }
}

}  // namespace

std::vector<Candidate> pipeline_step3(std::span<const Step2Tuple> step2, const Catalog& cat) {
  std::vector<Candidate> out;
  complete_step3(step2, cat, [&](const ExponentTuple& t, const SigmaExponents& s) {
    if (t.a() != s.alpha || t.b() != s.beta) return;
    for (int i = 1; i <= 5; ++i) {
      if (t.c(i) != s.gamma[i - 1]) return;
    }
    for (int j = 1; j <= 8; ++j) {
      if (t.d(j) != s.delta[j - 1]) return;
    }
    out.push_back({t, t.materialize(cat)});
  });
  return out;
}

std::size_t pipeline_step3_alpha_beta_only(std::span<const Step2Tuple> step2, const Catalog& cat) {
  std::size_t count = 0;
  complete_step3(step2, cat, [&](const ExponentTuple& t, const SigmaExponents& s) {
    if (t.a() == s.alpha && t.b() == s.beta) ++count;
  });
  return count;
}

SearchReport pipeline_finalize(std::vector<Candidate> step3, const Catalog& cat) {
  SearchReport r;
  r.step3_count = step3.size();
  for (const auto& c : step3) {
    if (is_perfect(c.poly)) r.perfect_survivors.push_back(c.poly);
  }
  r.candidates = std::move(step3);
  for (const auto& p : r.perfect_survivors) {
    r.closure.push_back(p);
    r.closure.push_back(bar(p));
  }
  std::sort(r.closure.begin(), r.closure.end());
  r.closure.erase(std::unique(r.closure.begin(), r.closure.end()), r.closure.end());

  std::vector<Poly> expected;
  for (const auto& e : cat.knowns()) expected.push_back(e.poly);
  std::sort(expected.begin(), expected.end());
  if (r.closure != expected) {
    std::string diff;
    for (const auto& p : expected) {
      if (!std::binary_search(r.closure.begin(), r.closure.end(), p)) diff += " missing " + *cat.name_of(p);
    }
    for (const auto& p : r.closure) {
      if (!std::binary_search(expected.begin(), expected.end(), p)) diff += " extra " + to_string(p);
    }
    throw Error("bar-closure of the perfect survivors differs from {T_1..T_11}:" + diff);
  }
  return r;
}

SearchReport run_theorem_pipeline(const Catalog& cat) {
  const auto s1 = pipeline_step1(cat);
  const auto s2 = pipeline_step2(s1, cat);
  auto s3 = pipeline_step3(s2, cat);
  SearchReport r = pipeline_finalize(std::move(s3), cat);
  r.step1_count = s1.size();
  r.step2_count = s2.size();
  r.step3_alpha_beta_only_count = pipeline_step3_alpha_beta_only(s2, cat);
  return r;
}

// ---------------------------------------------------------------------------

std::vector<Poly> exhaustive_scan(const ScanOptions& options) {
  if (options.max_degree < 1) throw Error("max_degree must be at least 1");
  if (options.max_degree > options.ceiling) {
    throw Error("max_degree " + std::to_string(options.max_degree) + " exceeds the scan ceiling " +
                std::to_string(options.ceiling));
  }
  if (options.max_degree > 62) throw Error("max_degree above 62 is not supported");

  const std::uint64_t first = 2;  // x
  const std::uint64_t last = std::uint64_t{1} << (options.max_degree + 1);
  constexpr std::uint64_t kChunk = 1 << 14;
  std::atomic<std::uint64_t> next{first};
  std::vector<Poly> found;
  std::mutex found_mutex;

  auto worker = [&] {
    std::vector<Poly> local;
    for (;;) {
      const std::uint64_t begin = next.fetch_add(kChunk);
      if (begin >= last) break;
      const std::uint64_t end = std::min(begin + kChunk, last);
      for (std::uint64_t mask = begin; mask < end; ++mask) {
        const Poly p = Poly::from_mask(mask);
        if (is_perfect(p)) local.push_back(p);
      }
    }
    std::lock_guard lock(found_mutex);
    found.insert(found.end(), local.begin(), local.end());
  };

  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(worker);
  }
  std::sort(found.begin(), found.end());
  return found;
}

}  // namespace gf2
