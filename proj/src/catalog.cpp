#include "gf2perfect/catalog.hpp"

#include <algorithm>
#include <numeric>

#include "gf2perfect/sigma.hpp"

namespace gf2 {

namespace {

struct MersenneDef {
  int index;
  int a;
  int b;
  int bar;
};

// M_i = 1 + x^a (x+1)^b
constexpr MersenneDef kMersenne[] = {
    {1, 1, 1, 1},  {2, 1, 2, 3},  {3, 2, 1, 2},  {4, 1, 3, 5},   {5, 3, 1, 4},
    {6, 3, 2, 9},  {7, 3, 4, 10}, {8, 6, 1, 11}, {9, 2, 3, 6},   {10, 4, 3, 7},
    {11, 1, 6, 8}, {12, 1, 8, 13}, {13, 8, 1, 12},
};

struct STypeDef {
  int index;
  int alpha;
  int beta;
  int nu;
};

// S_j = M_1^<alpha, beta, nu>
constexpr STypeDef kSType[] = {
    {1, 1, 1, 1},  {2, 2, 2, 1},  {3, 1, 3, 4},  {4, 3, 1, 1},  {5, 1, 3, 1},
    {6, 3, 1, 4},  {7, 1, 1, 3},  {8, 3, 3, 1},  {9, 1, 1, 5},  {10, 4, 1, 1},
    {11, 1, 2, 1}, {12, 2, 1, 2}, {13, 1, 4, 1}, {14, 2, 1, 1}, {15, 1, 2, 2},
};

struct Factor {
  const char* prime;  // "x", "x+1" or a catalog name
  int exponent;
};

struct KnownDef {
  int index;
  int bar;
  std::vector<Factor> factors;
};

const std::vector<KnownDef>& known_defs() {
  static const std::vector<KnownDef> defs = {
      {1, 2, {{"x", 2}, {"x+1", 1}, {"M_1", 1}}},
      {2, 1, {{"x", 1}, {"x+1", 2}, {"M_1", 1}}},
      {3, 4, {{"x", 4}, {"x+1", 3}, {"M_4", 1}}},
      {4, 3, {{"x", 3}, {"x+1", 4}, {"M_5", 1}}},
      {5, 5, {{"x", 4}, {"x+1", 4}, {"M_4", 1}, {"M_5", 1}}},
      {6, 7, {{"x", 6}, {"x+1", 3}, {"M_2", 1}, {"M_3", 1}}},
      {7, 6, {{"x", 3}, {"x+1", 6}, {"M_2", 1}, {"M_3", 1}}},
      {8, 9, {{"x", 4}, {"x+1", 6}, {"M_2", 1}, {"M_3", 1}, {"M_4", 1}}},
      {9, 8, {{"x", 6}, {"x+1", 4}, {"M_2", 1}, {"M_3", 1}, {"M_5", 1}}},
      {10, 11, {{"x", 2}, {"x+1", 1}, {"M_1", 2}, {"S_1", 1}}},
      {11, 10, {{"x", 1}, {"x+1", 2}, {"M_1", 2}, {"S_1", 1}}},
  };
  return defs;
}

std::string canonical_name(std::string_view name) {
  if (name.size() >= 2 && name[1] != '_') {
    return std::string(1, name[0]) + "_" + std::string(name.substr(1));
  }
  return std::string(name);
}

Poly x_pow_times(int a, int b) { return mul(pow(Poly::x(), a), pow(Poly::x_plus_one(), b)); }

[[noreturn]] void fail(const std::string& entry, const std::string& what) {
  throw Error("catalog entry " + entry + ": " + what);
}

// sigma(x^(2h)) = 1 + x + ... + x^(2h)
Poly sigma_x_even(int h) {
  return geometric_sum(Poly::x(), 2 * h);
}

}  // namespace

Poly construct_Q_abc(const Poly& q, int a, int b, int c) {
  if (q.is_zero() || is_even_poly(q)) throw Error("construct_Q_abc needs an odd polynomial");
  if (a < 1 || b < 1 || c < 1) throw Error("construct_Q_abc exponents must be at least 1");
  return x_pow_times(a, b) * pow(q, static_cast<unsigned>(c)) + Poly::one();
}

bool is_mersenne_prime(const Poly& p) {
  if (p.degree() < 1) throw Error("is_mersenne_prime needs a nonconstant polynomial");
  if (!is_irreducible(p)) return false;
  Poly rest = p + Poly::one();
  int a = 0, b = 0;
  for (; !rest.is_zero() && !rest.eval_at_zero(); ++a) rest = divrem(rest, Poly::x()).quotient;
  for (; !rest.is_zero() && !rest.eval_at_one(); ++b) rest = divrem(rest, Poly::x_plus_one()).quotient;
  return rest.is_one() && a >= 1 && b >= 1;
}

Catalog Catalog::build() {
  Catalog cat;
  auto& e = cat.entries_;
  const Poly m1 = Poly::from_mask(0b111);

  for (const auto& d : kMersenne) {
    Poly poly = x_pow_times(d.a, d.b) + Poly::one();
    e.push_back({"M_" + std::to_string(d.index), std::move(poly), MersenneParams{d.a, d.b},
                 "M_" + std::to_string(d.bar), std::nullopt});
  }
  for (const auto& d : kSType) {
    std::string bar_name;
    for (const auto& other : kSType) {
      if (other.alpha == d.beta && other.beta == d.alpha && other.nu == d.nu) {
        bar_name = "S_" + std::to_string(other.index);
      }
    }
    e.push_back({"S_" + std::to_string(d.index), construct_Q_abc(m1, d.alpha, d.beta, d.nu),
                 STypeParams{d.alpha, d.beta, d.nu}, bar_name, std::nullopt});
  }
  cat.index();

  for (const auto& d : known_defs()) {
    std::vector<PrimePower> pps;
    for (const auto& f : d.factors) {
      const std::string prime = f.prime;
      Poly p = prime == "x" ? Poly::x() : prime == "x+1" ? Poly::x_plus_one() : cat.at(prime).poly;
      pps.push_back({std::move(p), f.exponent});
    }
    Factorization def(std::move(pps));
    Poly poly = def.product();
    e.push_back({"T_" + std::to_string(d.index), std::move(poly), KnownPerfectParams{std::move(def)},
                 "T_" + std::to_string(d.bar), std::nullopt});
  }
  cat.index();

  for (std::size_t i = 0; i < 28; ++i) {
    if (auto* partner = cat.find(star(e[i].poly)); partner && partner->kind() != EntryKind::KnownPerfect) {
      e[i].star_partner = partner->name;
    }
  }

  // Invariants.
  if (cat.by_poly_.size() != e.size()) throw Error("catalog entries are not pairwise distinct");
  for (const auto& entry : e) {
    const auto* partner = cat.find(entry.bar_partner);
    if (!partner) fail(entry.name, "missing bar partner " + entry.bar_partner);
    if (bar(entry.poly) != partner->poly) fail(entry.name, "bar image is not " + entry.bar_partner);
    switch (entry.kind()) {
      case EntryKind::MersennePrime: {
        const auto& mp = std::get<MersenneParams>(entry.params);
        if (entry.poly != x_pow_times(mp.a, mp.b) + Poly::one()) fail(entry.name, "structural form");
        if (!is_irreducible(entry.poly)) fail(entry.name, "not irreducible");
        if (!is_mersenne_prime(entry.poly)) fail(entry.name, "not a Mersenne prime");
        break;
      }
      case EntryKind::SType: {
        const auto& sp = std::get<STypeParams>(entry.params);
        if (entry.poly != x_pow_times(sp.alpha, sp.beta) * pow(m1, static_cast<unsigned>(sp.nu)) + Poly::one()) {
          fail(entry.name, "structural form");
        }
        if (std::gcd(std::gcd(sp.alpha, sp.beta), sp.nu) != 1) fail(entry.name, "gcd(alpha, beta, nu) != 1");
        if (!is_irreducible(entry.poly)) fail(entry.name, "not irreducible");
        break;
      }
      case EntryKind::KnownPerfect:
        if (!is_perfect(entry.poly)) fail(entry.name, "not perfect");
        break;
    }
  }
  return cat;
}

const Catalog& Catalog::instance() {
  static const Catalog cat = build();
  return cat;
}

void Catalog::index() {
  by_name_.clear();
  by_poly_.clear();
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    by_name_.emplace(entries_[i].name, i);
    by_poly_.emplace(entries_[i].poly, i);
  }
}

const CatalogEntry* Catalog::find(std::string_view name) const {
  auto it = by_name_.find(canonical_name(name));
  return it == by_name_.end() ? nullptr : &entries_[it->second];
}

const CatalogEntry& Catalog::at(std::string_view name) const {
  if (const auto* e = find(name)) return *e;
  throw Error("unknown catalog name '" + std::string(name) + "'");
}

const CatalogEntry* Catalog::find(const Poly& p) const {
  auto it = by_poly_.find(p);
  return it == by_poly_.end() ? nullptr : &entries_[it->second];
}

std::optional<std::string> Catalog::name_of(const Poly& p) const {
  if (const auto* e = find(p)) return e->name;
  return std::nullopt;
}

std::vector<Poly> Catalog::family() const {
  std::vector<Poly> out;
  for (std::size_t i = 0; i < 28; ++i) out.push_back(entries_[i].poly);
  return out;
}

int Catalog::family_degree_sum() const {
  int sum = 0;
  for (std::size_t i = 0; i < 28; ++i) sum += entries_[i].poly.degree();
  return sum;
}

PrimeNamer Catalog::namer() const {
  return [this](const Poly& p) -> std::optional<std::string> {
    const auto* e = find(p);
    if (!e || e->kind() == EntryKind::KnownPerfect) return std::nullopt;
    return e->name;
  };
}

SymbolResolver Catalog::resolver() const {
  return [this](std::string_view name) -> std::optional<Poly> {
    if (const auto* e = find(name)) return e->poly;
    return std::nullopt;
  };
}

std::vector<CatalogCheck> verify_catalog(const Catalog& cat) {
  std::vector<CatalogCheck> out;
  auto add = [&](std::string subject, std::string check, bool ok) {
    out.push_back({std::move(subject), std::move(check), ok});
  };
  for (const auto& e : cat.entries()) {
    switch (e.kind()) {
      case EntryKind::MersennePrime: {
        const auto& mp = std::get<MersenneParams>(e.params);
        add(e.name, "irreducible", is_irreducible(e.poly));
        add(e.name, "Mersenne prime", is_mersenne_prime(e.poly));
        add(e.name, "= 1+x^" + std::to_string(mp.a) + "(x+1)^" + std::to_string(mp.b),
            e.poly == x_pow_times(mp.a, mp.b) + Poly::one());
        break;
      }
      case EntryKind::SType: {
        const auto& sp = std::get<STypeParams>(e.params);
        add(e.name, "irreducible", is_irreducible(e.poly));
        add(e.name,
            "= M_1^<" + std::to_string(sp.alpha) + "," + std::to_string(sp.beta) + "," + std::to_string(sp.nu) + ">",
            e.poly == construct_Q_abc(cat.M(1), sp.alpha, sp.beta, sp.nu));
        add(e.name, "gcd(alpha,beta,nu) = 1", std::gcd(std::gcd(sp.alpha, sp.beta), sp.nu) == 1);
        break;
      }
      case EntryKind::KnownPerfect:
        add(e.name, "perfect", is_perfect(e.poly));
        add(e.name, "indecomposable", is_indecomposable_perfect(e.poly));
        break;
    }
    add(e.name, "bar = " + e.bar_partner, bar(e.poly) == cat.at(e.bar_partner).poly);
  }
  add("F", "degree sum = 184", cat.family_degree_sum() == 184);
  bool bar_closed = true;
  for (const auto& p : cat.family()) {
    const auto* partner = cat.find(bar(p));
    bar_closed = bar_closed && partner && partner->kind() != EntryKind::KnownPerfect;
  }
  add("F", "closed under bar", bar_closed);
  return out;
}

bool AdmissibilityReport::cond_iii_complete() const {
  return std::all_of(cond_iii.begin(), cond_iii.end(), [](const MemberWitness& w) { return w.h.has_value(); });
}

AdmissibilityReport check_admissible(std::span<const Poly> family, int h_max) {
  if (h_max < 1) throw Error("h_max must be at least 1");
  for (const auto& t : family) {
    if (t.degree() < 1 || is_even_poly(t) || !is_irreducible(t)) {
      throw Error("admissible families hold odd irreducibles; got " + to_string(t));
    }
  }
  std::vector<Poly> members(family.begin(), family.end());
  std::sort(members.begin(), members.end());
  std::vector<Poly> with_linear = members;
  with_linear.push_back(Poly::x());
  with_linear.push_back(Poly::x_plus_one());
  auto contains = [&](const Poly& p) { return std::binary_search(members.begin(), members.end(), p); };

  AdmissibilityReport r;
  r.h_max = h_max;
  r.cond_i = std::all_of(members.begin(), members.end(),
                         [&](const Poly& t) { return contains(star(t)) || contains(bar(t)); });

  if (!members.empty()) {
    for (int h = 1; h <= h_max && !r.cond_ii; ++h) {
      const Poly sx = sigma_x_even(h);
      if (factor_over(sx, members)) {
        r.cond_ii = XSideWitness{h, true};
      } else if (factor_over(bar(sx), members)) {
        r.cond_ii = XSideWitness{h, false};
      }
    }
  }

  for (const auto& t : members) {
    MemberWitness w{t, std::nullopt};
    if (factor_over(t + Poly::one(), with_linear)) {
      w.h = 0;
    } else {
      Poly power = Poly::one();
      Poly sum = Poly::one();
      for (int h = 1; h <= h_max; ++h) {
        power = mul(power, t);
        sum += power;
        power = mul(power, t);
        sum += power;
        if (factor_over(sum, with_linear)) {
          w.h = h;
          break;
        }
      }
    }
    r.cond_iii.push_back(std::move(w));
  }
  r.admissible = r.cond_i || r.cond_ii.has_value() || r.cond_iii_complete();
  return r;
}

}  // namespace gf2
