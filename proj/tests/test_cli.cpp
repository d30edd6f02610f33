#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "curve_table.hpp"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(ZPEFF_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult result;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("zpeff_cli_test_" + std::to_string(getpid()) + "_" + name);
  std::ofstream out(path, std::ios::binary);
  out << content;
  out.close();
  return path;
}

}  // namespace

TEST_CASE("roots output is exact and stable") {
  const auto r = run_cli("roots");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "quantity,value\n"
        "zero_efficiency_a,0.194513115\n"
        "zero_efficiency_beta,4.14104153\n"
        "zero_efficiency_gini,0.137323345\n"
        "zero_shannon_beta,3.59112148\n");

  const auto json = run_cli("roots --format json");
  CHECK(json.exit_code == 0);
  const auto j = nlohmann::json::parse(json.out);
  CHECK(std::abs(j["zero_efficiency_a"].get<double>() - 0.194513) < 1e-5);
  CHECK(std::abs(j["zero_efficiency_beta"].get<double>() - 4.141) < 1e-3);
  CHECK(std::abs(j["zero_efficiency_gini"].get<double>() - 0.1373) < 1e-3);
  CHECK(std::abs(j["zero_shannon_beta"].get<double>() - 3.591) < 1e-3);
}

TEST_CASE("measure computes the three quantities") {
  const auto r = run_cli("measure --dist 0.5,0.5 --a 0.25");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "quantity,value\n"
        "efficiency,0.75682846\n"
        "shannon,0.693147181\n"
        "varentropy,0.252276153\n");

  const auto j = nlohmann::json::parse(run_cli("measure --dist 0.5,0.5 --a 0.25 --format json").out);
  CHECK(j["efficiency"].get<double>() == doctest::Approx(0.7568284600108841));

  // --b overrides the varentropy exponent independently of --a
  const auto jb = nlohmann::json::parse(
      run_cli("measure --dist 0.5,0.5 --a 0.25 --b 0.5 --format json").out);
  CHECK(jb["varentropy"].get<double>() == doctest::Approx(0.8284271247461903));
  CHECK(jb["efficiency"].get<double>() == j["efficiency"].get<double>());

  // explicit renormalization path and file input
  const auto file = temp_file("weights.txt", "2\n1\n1\n# comment\n");
  const auto norm = run_cli("measure --input " + file.string() + " --a 0.3 --normalize");
  CHECK(norm.exit_code == 0);
  CHECK(norm.out.find("efficiency,") != std::string::npos);
  std::filesystem::remove(file);
}

TEST_CASE("exit codes follow the contract") {
  CHECK(run_cli("frobnicate").exit_code == 2);          // unknown subcommand
  CHECK(run_cli("curves --figure 7").exit_code == 2);   // out-of-range figure
  CHECK(run_cli("curves --figure 2 --grid 5").exit_code == 2);  // grid too small
  CHECK(run_cli("measure --a 0.25").exit_code == 2);    // neither --dist nor --input
  CHECK(run_cli("stability --a 0.3").exit_code == 2);   // missing required flags
  CHECK(run_cli("measure --dist 0.5,0.4 --a 0.25").exit_code == 1);  // bad distribution
  CHECK(run_cli("measure --input /nonexistent_zpeff --a 0.25").exit_code == 1);
  CHECK(run_cli("maximize --values 1,2,3 --a 0.25 --mean 99").exit_code == 1);  // infeasible
  CHECK(run_cli("maximize --values 1,2,3 --a 0.25").exit_code == 2);  // no target given
  CHECK(run_cli("fit --corpus /nonexistent --window 5x50").exit_code == 2);  // bad window
  CHECK(run_cli("").exit_code == 2);                    // subcommand required
}

TEST_CASE("every subcommand is byte-deterministic") {
  const auto samples_path =
      temp_file("samples.txt", [] {
        std::string s;
        for (int i = 1; i <= 200; ++i) s += std::to_string(1.0 + 0.01 * i) + "\n";
        return s;
      }());
  const std::vector<std::string> invocations = {
      "roots",
      "roots --format json",
      "measure --dist 0.2,0.3,0.5 --a 0.3",
      "curves --figure 1 --grid 25",
      "curves --figure 2 --grid 50 --format json",
      "curves --figure 3 --grid 40",
      "curves --figure 4 --grid 40",
      "curves --figure 5 --grid 40",
      "stability --a 0.3 --delta 0.01 --sizes 2,10 --trials 20 --seed 4",
      "stability --a 0.3 --delta 0.01 --sizes 2,10 --trials 20 --seed 4 --format json",
      "maximize --values 1,2,3,4,5,6,7,8,9,10,11,12 --a 0.25 --mean 3",
      "maximize --values 1,2,3,4 --a 0.25 --multiplier 1.5 --format json",
      "fit --samples " + samples_path.string(),
  };
  for (const auto& args : invocations) {
    const auto first = run_cli(args);
    const auto second = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(first.exit_code == second.exit_code);
    CHECK(first.out == second.out);
    CHECK(!first.out.empty());
  }
  std::filesystem::remove(samples_path);
}

TEST_CASE("curve CSV round-trips byte-exactly") {
  for (const char* args : {"curves --figure 2 --grid 60", "curves --figure 3 --grid 45",
                           "curves --figure 5 --grid 30"}) {
    const auto r = run_cli(args);
    REQUIRE(r.exit_code == 0);
    const CurveTable parsed = curve_table_from_csv(r.out);
    CHECK(curve_table_to_csv(parsed) == r.out);
  }
}

TEST_CASE("figure 1 table peaks at one half") {
  const auto r = run_cli("curves --figure 1 --grid 199");
  REQUIRE(r.exit_code == 0);
  const CurveTable t = curve_table_from_csv(r.out);
  REQUIRE(t.columns.size() == 10);
  REQUIRE(t.columns[0] == "p");
  for (std::size_t c = 1; c < t.columns.size(); ++c) {
    std::size_t argmax = 0;
    for (std::size_t rix = 1; rix < t.rows(); ++rix)
      if (t.data[c][rix] > t.data[c][argmax]) argmax = rix;
    // the winning grid point is the one closest to 1/2
    double best_gap = 1e9;
    std::size_t best_row = 0;
    for (std::size_t rix = 0; rix < t.rows(); ++rix) {
      const double gap = std::abs(t.data[0][rix] - 0.5);
      if (gap < best_gap) {
        best_gap = gap;
        best_row = rix;
      }
    }
    CHECK(argmax == best_row);
  }
}

TEST_CASE("figure 2 marks both divergent ends") {
  const auto r = run_cli("curves --figure 2 --grid 40");
  REQUIRE(r.exit_code == 0);
  const CurveTable t = curve_table_from_csv(r.out);
  REQUIRE(t.columns == std::vector<std::string>{"a", "eta"});
  CHECK(t.data[0].front() == 0.0);
  CHECK(std::isinf(t.data[1].front()));
  CHECK(t.data[1].front() < 0.0);
  CHECK(t.data[0].back() == 0.5);
  CHECK(std::isinf(t.data[1].back()));
  CHECK(t.data[1].back() > 0.0);
  // interior rows are finite
  for (std::size_t rix = 1; rix + 1 < t.rows(); ++rix) CHECK(std::isfinite(t.data[1][rix]));
  // literal markers in the text
  CHECK(r.out.find("0,-inf") != std::string::npos);
  CHECK(r.out.find("0.5,inf") != std::string::npos);
}

TEST_CASE("figure 3 crosses zero near the threshold Gini") {
  const auto r = run_cli("curves --figure 3 --grid 2000");
  REQUIRE(r.exit_code == 0);
  const CurveTable t = curve_table_from_csv(r.out);
  REQUIRE(t.columns == std::vector<std::string>{"beta", "gini", "eta"});
  double crossing_gini = -1.0;
  for (std::size_t rix = 1; rix < t.rows(); ++rix) {
    if ((t.data[2][rix - 1] > 0.0) != (t.data[2][rix] > 0.0)) {
      crossing_gini = 0.5 * (t.data[1][rix - 1] + t.data[1][rix]);
      break;
    }
  }
  REQUIRE(crossing_gini > 0.0);
  CHECK(std::abs(crossing_gini - 0.1373) < 0.01);
}

TEST_CASE("figure 5 keeps one entropy finite at the divergent end") {
  const auto r = run_cli("curves --figure 5 --grid 30");
  REQUIRE(r.exit_code == 0);
  const CurveTable t = curve_table_from_csv(r.out);
  REQUIRE(t.columns ==
          std::vector<std::string>{"beta", "eta", "varentropy_bs", "varentropy_power"});
  CHECK(t.data[0].front() == 1.0);
  CHECK(std::isinf(t.data[1].front()));
  CHECK(t.data[2].front() == doctest::Approx(1.0));   // stays finite
  CHECK(std::isinf(t.data[3].front()));               // diverges

  const auto j = nlohmann::json::parse(run_cli("curves --figure 5 --grid 30 --format json").out);
  CHECK(j["columns"]["varentropy_power"][0].is_null());
  CHECK(j["divergent"].contains("varentropy_power"));
  CHECK(!j["divergent"].contains("varentropy_bs"));
}

TEST_CASE("fit on a corpus") {
  std::string corpus;
  for (int r = 1; r <= 60; ++r) {
    const int count = static_cast<int>(std::lround(600.0 / r));
    for (int k = 0; k < count; ++k) corpus += "w" + std::to_string(r) + " ";
  }
  const auto path = temp_file("corpus.txt", corpus);
  const auto res = run_cli("fit --corpus " + path.string() + " --format json");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(std::abs(j["alpha_hat"].get<double>() - 1.0) < 0.05);
  CHECK(j["r_squared"].get<double>() > 0.99);
  CHECK(j["distinct_tokens"].get<int>() == 60);

  const auto table = run_cli("fit --corpus " + path.string() + " --emit-table");
  CHECK(table.exit_code == 0);
  CHECK(table.out.rfind("rank,token,frequency\n1,w1,600\n", 0) == 0);

  const auto windowed = run_cli("fit --corpus " + path.string() + " --window 2:40 --format json");
  const auto jw = nlohmann::json::parse(windowed.out);
  CHECK(jw["window_lo"].get<int>() == 2);
  CHECK(jw["window_hi"].get<int>() == 40);
  std::filesystem::remove(path);
}

TEST_CASE("fit on samples") {
  std::string lines;
  // noiseless two-point sample keeps the estimate analytic
  lines = "1.0\n" + std::to_string(std::exp(1.0)) + "\n";
  const auto path = temp_file("hill.txt", lines);
  const auto res = run_cli("fit --samples " + path.string() + " --xmin 1.0 --format json");
  REQUIRE(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j["beta_hat"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(j["x_min"].get<double>() == 1.0);
  CHECK(j["n"].get<int>() == 2);
  CHECK(j.contains("gini"));
  CHECK(j.contains("top20_share"));
  // the fitted model travels in its serialized parameter schema
  CHECK(j["model"]["x_min"].get<double>() == 1.0);
  CHECK(j["model"]["beta"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  std::filesystem::remove(path);
}

TEST_CASE("maximize emits the solution table") {
  const auto r = run_cli("maximize --values 1,2,3,4,5 --a 0.25 --mean 2");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("i,x,p\n1,1,", 0) == 0);
  std::size_t row_count = 0;
  for (char c : r.out)
    if (c == '\n') ++row_count;
  CHECK(row_count == 6);  // header + 5 rows

  const auto j = nlohmann::json::parse(
      run_cli("maximize --values 1,2,3,4,5 --a 0.25 --mean 2 --format json").out);
  CHECK(j["probs"].size() == 5);
  CHECK(j["residual"].get<double>() < 1e-9);
  const auto file = temp_file("values.txt", "1\n2\n3\n4\n5\n");
  const auto from_file = run_cli("maximize --values " + file.string() + " --a 0.25 --mean 2");
  CHECK(from_file.out == r.out);
  std::filesystem::remove(file);
}

TEST_CASE("stability table carries the published columns") {
  const auto r = run_cli("stability --a 0.3 --delta 0.01 --sizes 2,10,100 --trials 10 --seed 1");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("N,delta,max_ratio,lemma1_bound,m_delta_bound,pass\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 4);
  const auto j = nlohmann::json::parse(
      run_cli("stability --a 0.3 --delta 0.01 --sizes 2,10 --trials 10 --seed 1 --format json")
          .out);
  CHECK(j["passed"].get<bool>());
  CHECK(j["cells"].size() == 2);
}
