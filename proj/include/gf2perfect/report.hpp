#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "gf2perfect/catalog.hpp"
#include "gf2perfect/factor.hpp"
#include "gf2perfect/search.hpp"
#include "gf2perfect/sigma.hpp"

namespace gf2::report {

using nlohmann::ordered_json;

/// [[hexmask, exponent], ...]
ordered_json factorization(const Factorization& f);

/// {"input", "sigma", "factors", "perfect"}; factors are those of sigma(a).
ordered_json sigma(const Poly& input, const SigmaValue& s);

ordered_json catalog(const Catalog& cat);
ordered_json x2h_table(const std::vector<X2hRow>& rows, const Catalog& cat);
ordered_json prime_table(const std::vector<PrimeTableRow>& rows, const Catalog& cat);
ordered_json admissibility(const AdmissibilityReport& r, const Catalog& cat);
ordered_json exponent_tuple(const ExponentTuple& t);
ordered_json search(const SearchReport& r, const Catalog& cat);

/// Writes text to a temporary sibling file and renames it into place.
void write_atomically(const std::filesystem::path& path, const std::string& text);

}  // namespace gf2::report
