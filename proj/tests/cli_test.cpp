#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "dioph/error.hpp"
#include "dioph/table_io.hpp"
#include "report.hpp"

namespace {

using namespace dioph;
using namespace dioph::cli;

ParsedInstance parse(const std::string& text) {
  std::istringstream in(text);
  return parse_instance(in, "test.cfg");
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::string render(const Report& r, Format f) {
  std::ostringstream out;
  write(out, r, f);
  return out.str();
}

TEST(Config, SqrtTwoInstanceIsValid) {
  const auto p = parse(
      "# comment\n"
      "lambda1 = 1\n"
      "lambda2 = -sqrt(2)   # trailing comment\n"
      "lambda3 = -1\n"
      "k = 1.05\n"
      "lambda_ratio = \"-1/sqrt(2)\"\n");
  EXPECT_DOUBLE_EQ(p.instance.lambda2, -std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(p.instance.k, 1.05);
  ASSERT_TRUE(p.instance.lambda_ratio);
  EXPECT_NEAR(p.instance.lambda_ratio->to_double(), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(p.warnings.empty());
}

TEST(Config, SameSignRejected) {
  try {
    parse("lambda1=1\nlambda2=2\nlambda3=3\nk=1.05\n");
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("not all be of the same sign"), std::string::npos);
    EXPECT_EQ(e.code(), ExitCode::kValidation);
  }
}

TEST(Config, MissingFieldNamed) {
  try {
    parse("lambda1=1\nlambda2=-2\nk=1.05\n");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("lambda3"), std::string::npos);
  }
}

TEST(Config, Malformed) {
  EXPECT_THROW(parse("lambda1=1\nlambda2=-2\nlambda3=1\nk=1.05\nbogus=1\n"), FormatError);
  EXPECT_THROW(parse("lambda1=1\nlambda1=2\nlambda2=-2\nlambda3=1\nk=1.05\n"), FormatError);
  EXPECT_THROW(parse("lambda1=1\nlambda2=-2\nlambda3=1\nk=\n"), FormatError);
  EXPECT_THROW(parse("lambda1=1\nlambda2=-2\nlambda3=1\nk=1.05\nlambda_ratio=2\n"), DomainError);
}

TEST(Config, RatioDefaultsToQuotient) {
  const auto p = parse("lambda1=3\nlambda2=-sqrt(2)\nlambda3=1\nk=1.05\n");
  ASSERT_TRUE(p.instance.lambda_ratio);
  EXPECT_NEAR(p.instance.lambda_ratio->to_double(), -3.0 / std::sqrt(2.0), 1e-15);
  EXPECT_FALSE(p.instance.lambda_ratio->exact());
}

TEST(Config, KOutsideRangeWarns) {
  const auto p = parse("lambda1=1\nlambda2=-1\nlambda3=1\nk=2\n");
  ASSERT_EQ(p.warnings.size(), 1u);
  EXPECT_NE(p.warnings[0].find("33/29"), std::string::npos);
}

TEST(Report, JsonRoundTrip) {
  Report r;
  r.command = "expsum";
  r.quantity = "prime_power_sum";
  r.parameters["X"] = 1e6;
  r.parameters["note"] = "a,b";
  r.columns = {"a", "b", "c", "d"};
  r.add_row({0.1, std::uint64_t{7}, std::string("x\"y"), true});
  r.add_row({-1e-300, std::uint64_t{18446744073709551615ULL}, std::string(""), false});
  const auto j = to_json(r);
  EXPECT_EQ(nlohmann::ordered_json::parse(j.dump()), j);
  EXPECT_EQ(nlohmann::ordered_json::parse(render(r, Format::json)), j);
  EXPECT_EQ(j["rows"][1]["b"].get<std::uint64_t>(), 18446744073709551615ULL);
  EXPECT_EQ(j["header"]["tool"], "dioph");
}

TEST(Report, NonFiniteBecomesNull) {
  Report r;
  r.command = "meansquare";
  r.columns = {"v"};
  r.add_row({std::numeric_limits<double>::quiet_NaN()});
  EXPECT_TRUE(to_json(r)["rows"][0]["v"].is_null());
}

TEST(Report, CsvQuotingAndShortestDoubles) {
  Report r;
  r.command = "x";
  r.columns = {"s", "v"};
  r.add_row({std::string("a,b"), 0.1});
  const std::string csv = render(r, Format::csv);
  EXPECT_NE(csv.find("\"a,b\",0.1\n"), std::string::npos);
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(Report, RowWidthChecked) {
  Report r;
  r.columns = {"a", "b"};
  EXPECT_THROW(r.add_row({1.0}), Error);
}

TEST(Commands, CsvIsDeterministic) {
  const auto inst = temp_file("dioph_cli_det.cfg",
                              "lambda1=1\nlambda2=-sqrt(2)\nlambda3=-1\nk=1.05\n");
  RunConfig cfg;
  cfg.instance_path = inst;
  SearchArgs s;
  s.X = 2e4;
  s.threshold = "0.05";
  s.emit = 50;
  for (unsigned threads : {1u, 3u}) {
    cfg.threads = threads;
    EXPECT_EQ(render(run_search(s, cfg), Format::csv), render(run_search(s, cfg), Format::csv));
  }
  ExpsumArgs e;
  e.X = 1e4;
  e.k = 1.05;
  e.alpha_grid = "0:0.01:17";
  cfg.threads = 2;
  const std::string a = render(run_expsum(e, cfg), Format::csv);
  EXPECT_EQ(a, render(run_expsum(e, cfg), Format::csv));
  EXPECT_NE(a.find("alpha,re,im,abs\n"), std::string::npos);
}

TEST(Commands, ExponentsExact) {
  ExponentsArgs a{"11/10"};
  const Report r = run_exponents(a, {});
  EXPECT_EQ(r.body["closed_form"]["c"], "1/72");
  EXPECT_EQ(r.body["closed_form"]["inv_a"], "52/99");
  EXPECT_EQ(r.body["k_max"], "33/29");
  EXPECT_THROW(run_exponents({"sqrt(2)"}, {}), DomainError);
}

TEST(Commands, ApproxRows) {
  ApproxArgs a;
  a.lambda_ratio = "sqrt(2)";
  a.terms = 5;
  const Report r = run_approx(a, {});
  ASSERT_EQ(r.rows.size(), 5u);
  EXPECT_EQ(std::get<std::string>(r.rows[4][0]), "41");
  EXPECT_EQ(std::get<std::string>(r.rows[4][1]), "29");
}

TEST(Commands, MeansquareNeedsOneParameter) {
  MeansquareArgs a;
  a.X = 100;
  a.k = 1;
  EXPECT_THROW(run_meansquare(a, {}), DomainError);
  a.h = 10.0;
  a.Y = 0.5;
  EXPECT_THROW(run_meansquare(a, {}), DomainError);
}

TEST(Commands, TableTooSmallFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "dioph_cli_small.bin";
  save_table(path, PrimeTable::build(1000));
  RunConfig cfg;
  cfg.table_path = path;
  ExpsumArgs e;
  e.X = 1e4;
  e.k = 1.0;
  e.alpha_grid = "0:1:2";
  try {
    run_expsum(e, cfg);
    FAIL();
  } catch (const TableTooSmall& t) {
    EXPECT_GE(t.required_limit(), 20000u);
  }
}

TEST(VerifyAll, CorruptedTableAborts) {
  const auto path = std::filesystem::temp_directory_path() / "dioph_cli_corrupt.bin";
  save_table(path, PrimeTable::build(100000));
  {
    std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(-8, std::ios::end);
    f.put('\x7f');
  }
  RunConfig cfg;
  cfg.table_path = path;
  bool passed = true;
  EXPECT_THROW(run_verify_all({}, cfg, passed), FormatError);
}

TEST(VerifyAll, TightenedToleranceReportsMeasuredAndRequired) {
  RunConfig cfg;
  cfg.tol_scale = 0.1;
  VerifyArgs v;
  v.only = {3, 10};
  bool passed = true;
  const Report r = run_verify_all(v, cfg, passed);
  ASSERT_EQ(r.rows.size(), 2u);
  // The Fourier-pair discrepancy sits within 10x of its tolerance; the
  // convergent laws are exact and do not move.
  EXPECT_FALSE(std::get<bool>(r.rows[0][2]));
  EXPECT_TRUE(std::get<bool>(r.rows[1][2]));
  EXPECT_FALSE(passed);
  const std::string measured = std::get<std::string>(r.rows[0][3]);
  const std::string required = std::get<std::string>(r.rows[0][4]);
  EXPECT_NE(measured.find("discrepancy"), std::string::npos);
  EXPECT_NE(required.find("3e-06"), std::string::npos);
}

}  // namespace
