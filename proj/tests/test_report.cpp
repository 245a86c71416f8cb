#include <gtest/gtest.h>

#include "report.hpp"

using namespace recip;
using reciptool::RunConfig;

namespace {

RunConfig dims_config() {
  RunConfig c;
  c.command = "dims";
  c.q = 2;
  c.r = 2;
  c.n = 1;
  c.dmin = 1;
  c.dmax = 3;
  return c;
}

std::vector<CheckRecord> dims_records(const RunConfig& c, EngineStats* st = nullptr) {
  Checks ck(c.engine_config());
  std::vector<CheckRecord> out;
  for (uint32_t d = c.dmin; d <= c.dmax; ++d) out.push_back(ck.dims({c.q, c.r, c.n}, d));
  if (st) *st = ck.stats();
  return out;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
  const RunConfig c = dims_config();
  EngineStats st;
  const auto recs = dims_records(c, &st);
  const auto j = reciptool::report_json(c, recs, st, 12.5);
  EXPECT_EQ(reciptool::Json::parse(j.dump()), j);
  EXPECT_EQ(reciptool::Json::parse(j.dump(2)), j);
  EXPECT_EQ(j["version"], reciptool::kSchemaVersion);
  EXPECT_EQ(j["summary"]["pass"], 3);
  EXPECT_EQ(j["summary"]["fail"], 0);
  EXPECT_TRUE(j["summary"].contains("elapsed_ms"));
  ASSERT_EQ(j["checks"].size(), 3u);
  EXPECT_EQ(j["checks"][0]["expected"], "3");
  EXPECT_FALSE(j["checks"][0]["provenance"].get<std::string>().empty());
}

TEST(Report, SameSeedGivesIdenticalJsonWithoutTiming) {
  RunConfig c = dims_config();
  c.timing = false;
  EngineStats s1, s2;
  const auto a = dims_records(c, &s1), b = dims_records(c, &s2);
  const std::string ja = reciptool::report_json(c, a, s1, 1.0).dump(2);
  const std::string jb = reciptool::report_json(c, b, s2, 99.0).dump(2);
  EXPECT_EQ(ja, jb);
  EXPECT_EQ(ja.find("elapsed_ms"), std::string::npos);
}

TEST(Report, DimsCsvHeader) {
  const RunConfig c = dims_config();
  const std::string csv = reciptool::report_csv(c, dims_records(c));
  EXPECT_EQ(csv,
            "q,r,n,d,dim_formula,dim_engine,match\n"
            "2,2,1,1,3,3,true\n"
            "2,2,1,2,5,5,true\n"
            "2,2,1,3,7,7,true\n");
}

TEST(Report, GenericCsvQuotesFields) {
  RunConfig c;
  c.command = "strata";
  c.timing = false;
  CheckRecord r;
  r.name = "x";
  r.expected = "a, \"b\"";
  r.computed = "c";
  r.pass = false;
  const std::string csv = reciptool::report_csv(c, {r});
  EXPECT_NE(csv.find("\"a, \"\"b\"\"\""), std::string::npos);
  EXPECT_NE(csv.find(",fail\n"), std::string::npos);
}

TEST(Report, TextMarksFailures) {
  RunConfig c;
  c.timing = false;
  CheckRecord ok, bad;
  ok.name = "good";
  ok.pass = true;
  bad.name = "bad";
  const std::string t = reciptool::report_text(c, {ok, bad}, 0);
  EXPECT_NE(t.find("PASS good"), std::string::npos);
  EXPECT_NE(t.find("FAIL bad"), std::string::npos);
  EXPECT_NE(t.find("1 passed, 1 failed"), std::string::npos);
}
