#include <gtest/gtest.h>

#include <json.hpp>

#include <charconv>
#include <sstream>

#include "cli_support.hpp"

using testing_cli::run;
using testing_cli::slurp;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    rows.push_back(fields);
  }
  return rows;
}

double num(const std::string& s) {
  double v = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), v);
  return v;
}

}  // namespace

TEST(CliKernel, CoefficientsMatchTent) {
  const auto dir = testing_cli::scratch_dir("kernel");
  const auto path = (dir / "k8.csv").string();
  const auto r = run({"kernel", "--n", "8", "--M", "64", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto space = parse_csv(slurp(path));
  ASSERT_EQ(space.front(), (std::vector<std::string>{"x", "K_sum", "K_closed"}));
  ASSERT_EQ(space.size(), 65u);
  const auto coef = parse_csv(slurp(path + ".coef.csv"));
  ASSERT_EQ(coef.front(), (std::vector<std::string>{"j", "coef", "tent"}));
  for (std::size_t i = 1; i < coef.size(); ++i) EXPECT_NEAR(num(coef[i][1]), num(coef[i][2]), 1e-9) << coef[i][0];
}

TEST(CliKernel, OrderZeroIsFlat) {
  const auto r = run({"kernel", "--n", "0", "--M", "16"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out.substr(0, r.out.find("\n\n")));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i][1], "1");
    EXPECT_EQ(rows[i][2], "1");
  }
}

TEST(CliKernel, JsonFormat) {
  const auto r = run({"kernel", "--n", "3", "--M", "16", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["space"].size(), 16u);
  EXPECT_EQ(j["coefficients"].size(), 15u);
  EXPECT_TRUE(j["pass"].get<bool>());
}

TEST(CliKernel, AliasingIsAConfigError) {
  const auto r = run({"kernel", "--n", "32", "--M", "64"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("AliasingRisk"), std::string::npos);
  EXPECT_EQ(run({"kernel", "--n", "3", "--M", "48"}).code, 2);  // not a power of two
  EXPECT_EQ(run({"kernel", "--n", "3", "--M", "8"}).code, 2);   // below 2^4
}

TEST(CliBound, DyadicPassesSharply) {
  const auto r = run({"bound", "--n1", "1", "--alpha", "2.0", "--N", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LE(j["max_abs_sum"].get<double>(), 1.0 + 1e-12);
  EXPECT_DOUBLE_EQ(j["paper_bound"].get<double>(), 4.0);
  EXPECT_EQ(j["N"].get<int>(), 10);
  for (const auto& [name, ok] : j["pass"].items()) EXPECT_TRUE(ok.get<bool>()) << name;
}

TEST(CliBound, NearOneRatio) {
  const auto r = run({"bound", "--n1", "1", "--alpha", "1.05", "--N", "10"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["requested_paper_bound"].get<double>(), 42.0, 1e-12);
  // The generated terms 1..11 certify the larger ratio 11/10.
  EXPECT_NEAR(j["paper_bound"].get<double>(), 22.0, 1e-12);
  EXPECT_LE(j["max_abs_sum"].get<double>(), 1.0 + 1e-12);
}

TEST(CliBound, CsvAndConfigErrors) {
  const auto r = run({"bound", "--n1", "2", "--alpha", "1.5", "--N", "4", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_csv(r.out).size(), 2u);
  EXPECT_EQ(run({"bound", "--n1", "1", "--alpha", "1.0", "--N", "10"}).code, 2);
  EXPECT_EQ(run({"bound", "--n1", "1", "--alpha", "abc", "--N", "10"}).code, 2);
  EXPECT_EQ(run({"bound", "--n1", "0", "--alpha", "2", "--N", "10"}).code, 2);
  EXPECT_EQ(run({"bound", "--n1", "1", "--alpha", "2"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bound", "--n1", "1", "--alpha", "2", "--N", "3", "--format", "xml"}).code, 2);
}

TEST(CliConverge, SmallStudyPasses) {
  const auto r = run({"converge", "--M", "512", "--length", "10", "--B", "16", "--trials", "10", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.front()[0], "signal");
  EXPECT_EQ(rows.size(), 1u + 3u * 9u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].back(), "true");
    EXPECT_LE(num(rows[i][4]), num(rows[i][5]) + 1e-9);
    if (rows[i][0] == "constant") {
      EXPECT_EQ(num(rows[i][4]), 0.0);
    }
  }
  const auto json = run({"converge", "--M", "256", "--length", "6", "--B", "8", "--trials", "3", "--format", "json"});
  ASSERT_EQ(json.code, 0) << json.err;
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j.size(), 15u);
  EXPECT_EQ(j[0]["trial_norms"].size(), 3u);
}

TEST(CliConverge, BandBeyondGridIsConfigError) {
  EXPECT_EQ(run({"converge", "--M", "64", "--B", "40", "--trials", "1"}).code, 2);
}

TEST(CliSweep, RowsDeterminismAndErrors) {
  const auto dir = testing_cli::scratch_dir("sweep");
  const auto cfg = (dir / "cfg.json").string();
  {
    std::ofstream f(cfg);
    f << R"({"alphas": [1.5, 2, 3], "Ns": [2, 5], "M": 128, "trials": 4, "seed": 99})";
  }
  const auto out1 = (dir / "a.csv").string();
  const auto out2 = (dir / "b.csv").string();
  ASSERT_EQ(run({"sweep", cfg, "--out", out1}).code, 0);
  ASSERT_EQ(run({"sweep", cfg, "--out", out2}).code, 0);
  const auto a = slurp(out1);
  EXPECT_EQ(a, slurp(out2));
  const auto rows = parse_csv(a);
  ASSERT_EQ(rows.size(), 1u + 6u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"alpha", "N", "n1", "paper_bound", "max_abs_sum", "sup_symbol",
                                               "witness_j", "worst_ratio", "trials", "seed"}));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_LE(num(rows[i][4]), num(rows[i][3]));
    if (rows[i][0] == "2") {
      EXPECT_EQ(rows[i][3], "4");
    }
    EXPECT_EQ(rows[i][9], "99");
  }
  // --seed overrides the file
  const auto r = run({"sweep", cfg, "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_csv(r.out)[1][9], "5");

  const auto bad = (dir / "bad.json").string();
  {
    std::ofstream f(bad);
    f << "{ not json";
  }
  EXPECT_EQ(run({"sweep", bad}).code, 2);
  {
    std::ofstream f(bad);
    f << R"({"alphas": [1.0], "Ns": [2], "M": 128, "trials": 4, "seed": 1})";
  }
  EXPECT_EQ(run({"sweep", bad}).code, 2);
  {
    std::ofstream f(bad);
    f << R"({"alphas": [2], "Ns": [2], "M": 100, "trials": 4, "seed": 1})";
  }
  EXPECT_EQ(run({"sweep", bad}).code, 2);
  {
    std::ofstream f(bad);
    f << R"({"alphas": [2], "M": 128, "trials": 4, "seed": 1})";
  }
  EXPECT_EQ(run({"sweep", bad}).code, 2);
  EXPECT_EQ(run({"sweep", (dir / "missing.json").string()}).code, 2);
}

TEST(CliOutput, ValuesParseBackLosslessly) {
  const auto r = run({"kernel", "--n", "5", "--M", "16"});
  ASSERT_EQ(r.code, 0);
  const auto rows = parse_csv(r.out.substr(0, r.out.find("\n\n")));
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double x = num(rows[i][0]);
    const double closed = num(rows[i][2]);
    EXPECT_EQ(closed, fejer::eval_kernel_closed(5, x));
  }
}
