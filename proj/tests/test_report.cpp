#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gf2perfect/report.hpp"

using namespace gf2;

namespace {

const Catalog& cat() { return Catalog::instance(); }

}  // namespace

TEST(Report, Factorization) {
  const auto j = report::factorization(factor(cat().T(1)));
  EXPECT_EQ(j.dump(), R"([["0x2",2],["0x3",1],["0x7",1]])");
  EXPECT_EQ(report::factorization(Factorization{}).dump(), "[]");
}

TEST(Report, Sigma) {
  const auto j = report::sigma(cat().T(1), sigma(cat().T(1)));
  EXPECT_EQ(j["input"], "0x24");
  EXPECT_EQ(j["sigma"], "0x24");
  EXPECT_EQ(j["perfect"], true);
}

TEST(Report, CatalogShape) {
  const auto j = report::catalog(cat());
  ASSERT_EQ(j.size(), 39u);
  EXPECT_EQ(j[0]["name"], "M_1");
  EXPECT_EQ(j[0]["kind"], "mersenne");
  EXPECT_EQ(j[13]["kind"], "s_type");
  EXPECT_EQ(j[28]["kind"], "known_perfect");
  EXPECT_TRUE(j[28]["star_partner"].is_null());
}

TEST(Report, Admissibility) {
  const std::vector<Poly> fam{cat().M(5)};
  const auto j = report::admissibility(check_admissible(fam, 92), cat());
  EXPECT_EQ(j["cond_i"], false);
  EXPECT_EQ(j["cond_ii"]["status"], "found");
  EXPECT_EQ(j["admissible"], true);
}

TEST(Report, SearchIsDeterministic) {
  const auto a = report::search(run_theorem_pipeline(cat()), cat()).dump(2);
  const auto b = report::search(run_theorem_pipeline(cat()), cat()).dump(2);
  EXPECT_EQ(a, b);
  const auto j = nlohmann::ordered_json::parse(a);
  EXPECT_EQ(j["closure"].size(), 11u);
  EXPECT_EQ(j["counts"]["step1"], 10944);
}

TEST(Report, WriteAtomically) {
  const auto dir = std::filesystem::temp_directory_path() / "gf2perfect_report_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "out.json";
  report::write_atomically(path, "{\"a\":1}\n");
  report::write_atomically(path, "{\"a\":2}\n");
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_EQ(buf.str(), "{\"a\":2}\n");
  EXPECT_FALSE(std::filesystem::exists(dir / "out.json.tmp"));
  std::filesystem::remove_all(dir);
  EXPECT_THROW(report::write_atomically(dir / "missing" / "x.json", "x"), Error);
}
