#include "gf2perfect/report.hpp"

#include <fstream>
#include <system_error>

namespace gf2::report {

namespace {

ordered_json name_or_null(const Catalog& cat, const Poly& p) {
  if (auto n = cat.name_of(p)) return *n;
  return nullptr;
}

ordered_json factor_entry(const Factorization& f, const Catalog& cat) {
  return {{"factors", factorization(f)}, {"named", render(f, cat.namer())}};
}

}  // namespace

ordered_json factorization(const Factorization& f) {
  ordered_json out = ordered_json::array();
  for (const auto& [prime, e] : f) out.push_back({to_hex(prime), e});
  return out;
}

ordered_json sigma(const Poly& input, const SigmaValue& s) {
  return {{"input", to_hex(input)},
          {"sigma", to_hex(s.value)},
          {"factors", factorization(s.factored)},
          {"perfect", s.value == input}};
}

ordered_json catalog(const Catalog& cat) {
  ordered_json out = ordered_json::array();
  for (const auto& e : cat.entries()) {
    ordered_json j;
    j["name"] = e.name;
    j["hexmask"] = to_hex(e.poly);
    j["degree"] = e.poly.degree();
    switch (e.kind()) {
      case EntryKind::MersennePrime: {
        const auto& p = std::get<MersenneParams>(e.params);
        j["kind"] = "mersenne";
        j["params"] = {{"a", p.a}, {"b", p.b}};
        break;
      }
      case EntryKind::SType: {
        const auto& p = std::get<STypeParams>(e.params);
        j["kind"] = "s_type";
        j["params"] = {{"alpha", p.alpha}, {"beta", p.beta}, {"nu", p.nu}};
        break;
      }
      case EntryKind::KnownPerfect: {
        const auto& p = std::get<KnownPerfectParams>(e.params);
        j["kind"] = "known_perfect";
        j["params"] = {{"factorization", render(p.definition, cat.namer())}};
        break;
      }
    }
    j["bar_partner"] = e.bar_partner;
    j["star_partner"] = e.star_partner ? ordered_json(*e.star_partner) : ordered_json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

ordered_json x2h_table(const std::vector<X2hRow>& rows, const Catalog& cat) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["two_h"] = r.two_h;
    j["x"] = r.x_side ? factor_entry(*r.x_side, cat) : ordered_json(nullptr);
    j["x_plus_1"] = r.x1_side ? factor_entry(*r.x1_side, cat) : ordered_json(nullptr);
    out.push_back(std::move(j));
  }
  return out;
}

ordered_json prime_table(const std::vector<PrimeTableRow>& rows, const Catalog& cat) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j = factor_entry(r.factors, cat);
    j["base"] = r.base;
    j["two_h"] = r.two_h;
    out.push_back(std::move(j));
  }
  return out;
}

ordered_json admissibility(const AdmissibilityReport& r, const Catalog& cat) {
  ordered_json j;
  j["h_max"] = r.h_max;
  j["cond_i"] = r.cond_i;
  if (r.cond_ii) {
    j["cond_ii"] = {{"status", "found"}, {"h", r.cond_ii->h}, {"side", r.cond_ii->x_side ? "x" : "x+1"}};
  } else {
    j["cond_ii"] = {{"status", "not_found_up_to_h_max"}};
  }
  ordered_json members = ordered_json::array();
  for (const auto& w : r.cond_iii) {
    ordered_json m{{"member", to_hex(w.member)}, {"name", name_or_null(cat, w.member)}};
    if (!w.h) {
      m["status"] = "not_found_up_to_h_max";
    } else if (*w.h == 0) {
      m["status"] = "one_plus_factors";
    } else {
      m["status"] = "sigma_factors";
      m["h"] = *w.h;
    }
    members.push_back(std::move(m));
  }
  j["cond_iii"] = std::move(members);
  j["cond_iii_complete"] = r.cond_iii_complete();
  j["admissible"] = r.admissible;
  return j;
}

ordered_json exponent_tuple(const ExponentTuple& t) {
  return {{"n", t.n}, {"u", t.u}, {"m", t.m}, {"v", t.v}, {"ni", t.ni}, {"ui", t.ui}, {"mj", t.mj}, {"vj", t.vj}};
}

ordered_json search(const SearchReport& r, const Catalog& cat) {
  ordered_json j;
  j["counts"] = {{"step1", r.step1_count},
                 {"step2", r.step2_count},
                 {"step3", r.step3_count},
                 {"step3_alpha_beta_only", r.step3_alpha_beta_only_count}};
  ordered_json cands = ordered_json::array();
  for (const auto& c : r.candidates) {
    cands.push_back({{"tuple", exponent_tuple(c.tuple)},
                     {"hexmask", to_hex(c.poly)},
                     {"factorization", render(factor(c.poly), cat.namer())},
                     {"name", name_or_null(cat, c.poly)}});
  }
  j["candidates"] = std::move(cands);
  auto names = [&](const std::vector<Poly>& polys) {
    ordered_json out = ordered_json::array();
    for (const auto& p : polys) out.push_back({{"hexmask", to_hex(p)}, {"name", name_or_null(cat, p)}});
    return out;
  };
  j["perfect_survivors"] = names(r.perfect_survivors);
  j["closure"] = names(r.closure);
  return j;
}

void write_atomically(const std::filesystem::path& path, const std::string& text) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move report into place at " + path.string() + ": " + ec.message());
  }
}

}  // namespace gf2::report
