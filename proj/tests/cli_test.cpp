#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "fullreg/cli.hpp"
#include "support/family_corpus.hpp"

namespace fullreg::cli {
namespace {

namespace fs = std::filesystem;

Json parse_out(const CommandOutput& r) { return Json::parse(r.out); }

fs::path temp_file(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("fullreg_" + std::to_string(::getpid()) + "_" + name);
  fs::remove(p);
  return p;
}

TEST(Params, Examples) {
  const auto r = cmd_params("parts=1:2,1:3");
  ASSERT_EQ(r.exit_code, kSuccess) << r.err;
  const Json j = parse_out(r);
  EXPECT_EQ(j["a"], (std::vector<std::string>{"6", "2", "0"}));
  EXPECT_EQ(j["alpha"], 2);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(parse_out(cmd_params("3:5"))["a"], (std::vector<std::string>{"10", "0"}));
  EXPECT_EQ(cmd_params("parts=0:3").exit_code, kUsageError);
  EXPECT_EQ(cmd_params("parts=x").exit_code, kUsageError);
}

TEST(Count, Examples) {
  auto r = cmd_count("parts=1:2,1:3", {std::string("gao_peng"), std::nullopt, false});
  ASSERT_EQ(r.exit_code, kSuccess) << r.err;
  Json j = parse_out(r);
  EXPECT_EQ(j["sigma"], "360");
  EXPECT_EQ(j["sigma_prime_num"], "1");
  EXPECT_EQ(j["sigma_prime_den"], "2");
  EXPECT_FALSE(j.contains("elapsed_ms"));

  r = cmd_count("parts=1:2,1:2,1:2", {std::string("theorem4"), std::nullopt, false});
  ASSERT_EQ(r.exit_code, kSuccess) << r.err;
  EXPECT_EQ(parse_out(r)["sigma"], "34560");
  EXPECT_EQ(parse_out(r)["method"], "theorem4_form1");

  EXPECT_TRUE(parse_out(cmd_count("2:4", {std::nullopt, std::nullopt, true})).contains("elapsed_ms"));
  EXPECT_EQ(cmd_count("2:4", {std::string("gao_peng"), std::nullopt, false}).exit_code, kUsageError);
  EXPECT_EQ(cmd_count("2:4", {std::string("nonsense"), std::nullopt, false}).exit_code, kUsageError);
}

TEST(Count, OutputIsByteStable) {
  for (const char* family : {"2:6", "1:3,1:4", "1:2,2:5", "3:9"}) {
    EXPECT_EQ(cmd_count(family).out, cmd_count(family).out) << family;
  }
}

TEST(Cache, RoundTripsRandomFamilies) {
  const fs::path path = temp_file("roundtrip.jsonl");
  auto families = testing::small_families(400, 3, 3);
  std::mt19937_64 rng(11);
  std::shuffle(families.begin(), families.end(), rng);
  families.resize(100);

  std::vector<std::string> fresh;
  for (const auto& f : families) {
    const auto r = cmd_count(f.to_string(), {std::nullopt, path.string(), false});
    ASSERT_EQ(r.exit_code, kSuccess) << r.err;
    fresh.push_back(r.out);
  }
  std::ostringstream warnings;
  ResultCache cache(path.string(), warnings);
  EXPECT_EQ(cache.size(), 100U);
  EXPECT_EQ(cache.skipped_lines(), 0U);
  EXPECT_TRUE(warnings.str().empty());
  for (std::size_t i = 0; i < families.size(); ++i) {
    const auto entry = cache.lookup(cache_key(families[i], Method::theorem2));
    ASSERT_TRUE(entry.has_value());
    EXPECT_EQ(entry->sigma, to_string(sigma_fully_regular(derive_params(families[i]))));
    EXPECT_EQ(cmd_count(families[i].to_string(), {std::nullopt, path.string(), false}).out, fresh[i]);
  }
  // Served from cache: no new lines.
  std::ifstream in(path);
  EXPECT_EQ(std::count(std::istreambuf_iterator<char>(in), {}, '\n'), 100);
  fs::remove(path);
}

TEST(Cache, SkipsCorruptLines) {
  const fs::path path = temp_file("corrupt.jsonl");
  ASSERT_EQ(cmd_count("2:5", {std::nullopt, path.string(), false}).exit_code, kSuccess);
  {
    std::ofstream out(path, std::ios::app);
    out << "{not json\n";
    out << R"({"key":"parts=2:6|theorem2","sigma":"abc","sigma_prime_num":"1","sigma_prime_den":"1","created_at":"x","library_version":"0.1.0"})"
        << "\n";
  }
  std::ostringstream warnings;
  ResultCache cache(path.string(), warnings);
  EXPECT_EQ(cache.size(), 1U);
  EXPECT_EQ(cache.skipped_lines(), 2U);
  EXPECT_NE(warnings.str().find("corrupt cache line 2"), std::string::npos);

  const auto r = cmd_count("2:6", {std::nullopt, path.string(), false});
  EXPECT_EQ(r.exit_code, kSuccess);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(parse_out(r)["sigma"], to_string(stanley_shellings(6)));
  fs::remove(path);
}

TEST(Cache, KeyIsCanonical) {
  EXPECT_EQ(cache_key(parse_family("1:3,1:2"), Method::theorem2),
            cache_key(parse_family("parts=1:2,1:3"), Method::theorem2));
}

TEST(Verify, CampaignsAndExitCodes) {
  VerifyOptions o;
  o.n_max = 20;
  auto r = cmd_verify("conjecture-c", o);
  ASSERT_EQ(r.exit_code, kSuccess) << r.err;
  Json j = parse_out(r);
  EXPECT_EQ(j["status"], "pass");
  EXPECT_EQ(j["instances_checked"], 18);
  EXPECT_FALSE(j.contains("elapsed_ms"));
  EXPECT_EQ(r.out, cmd_verify("conjecture-c", o).out);

  VerifyOptions fam;
  fam.family = "1:2,1:2,1:2";
  EXPECT_EQ(cmd_verify("family", fam).exit_code, kSuccess);
  EXPECT_EQ(cmd_verify("family").exit_code, kUsageError);
  EXPECT_EQ(cmd_verify("bogus").exit_code, kUsageError);

  VerifyOptions inst;
  inst.id = "theorem4:m=8,n=2,p=2";
  EXPECT_EQ(parse_out(cmd_verify("instance", inst))["campaign"], "instance:theorem4:m=8,n=2,p=2");
}

TEST(Verify, WritesReportFile) {
  const fs::path path = temp_file("report.json");
  VerifyOptions o;
  o.box = 3;
  o.out_path = path.string();
  const auto r = cmd_verify("bipartite", o);
  ASSERT_EQ(r.exit_code, kSuccess) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const Json j = Json::parse(in);
  EXPECT_EQ(j["instances_checked"], 9);
  fs::remove(path);
}

TEST(ReportJson, MismatchesSetFailStatus) {
  verify::VerificationReport report;
  report.campaign = "x";
  report.instances_checked = 2;
  report.mismatches.push_back({"complete:n=3", "1", "2"});
  const Json j = report_to_json(report, false);
  EXPECT_EQ(j["status"], "fail");
  EXPECT_EQ(j["mismatches"][0]["id"], "complete:n=3");
}

TEST(Oracle, Modes) {
  std::istringstream triangle("3\n0 1\n1 2\n0 2\n");
  EXPECT_EQ(parse_out(cmd_oracle(triangle, "successive"))["count"], "6");
  std::istringstream c4("# comment\n4\n\n0 1\n1 2\n2 3\n0 3\n");
  EXPECT_EQ(parse_out(cmd_oracle(c4, "successive"))["count"], "16");
  std::istringstream k211("4\n0 1 2\n0 1 3\n");
  EXPECT_EQ(parse_out(cmd_oracle(k211, "weak"))["count"], "2");
  std::istringstream k4("4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  EXPECT_EQ(parse_out(cmd_oracle(k4, "line-successive"))["count"], "576");
  std::istringstream p3("3\n0 1\n1 2\n");
  const Json reg = parse_out(cmd_oracle(p3, "regular"));
  EXPECT_EQ(reg["fully_regular"], false);
  EXPECT_EQ(reg["witness"]["first_count"], 1);
  std::istringstream c5("5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
  EXPECT_EQ(parse_out(cmd_oracle(c5, "regular"))["params"], (std::vector<std::string>{"5", "2", "0"}));
}

TEST(Oracle, ErrorsAndCaps) {
  std::string big = "21\n";
  for (int i = 0; i < 20; ++i) big += std::to_string(i) + " " + std::to_string(i + 1) + "\n";
  std::istringstream path21(big);
  const auto r = cmd_oracle(path21, "successive");
  EXPECT_EQ(r.exit_code, kCapExceeded);
  EXPECT_NE(r.err.find("cap"), std::string::npos);
  std::istringstream again(big);
  EXPECT_EQ(parse_out(cmd_oracle(again, "successive", 21))["count"], to_string(ExactInteger(ExactInteger(1) << 20)));

  for (const char* bad : {"", "x\n", "3\n0 3\n", "3\n0 0\n", "3\n0 1\n1 0\n", "3\n0 1.5\n"}) {
    std::istringstream in(bad);
    EXPECT_EQ(cmd_oracle(in, "successive").exit_code, kUsageError) << bad;
  }
  std::istringstream tri("3\n0 1 2\n");
  EXPECT_EQ(cmd_oracle(tri, "successive").exit_code, kUsageError);
  std::istringstream any("2\n0 1\n");
  EXPECT_EQ(cmd_oracle(any, "sideways").exit_code, kUsageError);
}

}  // namespace
}  // namespace fullreg::cli
