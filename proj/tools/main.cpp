// zpeff command-line tool: efficiency measures, figure data tables, Zipf and
// Pareto fitting, the stability harness, threshold solves, and the
// constrained maximizer, all on top of the zpeff C API.
//
// Exit codes: 0 success, 1 domain/validation error, 2 usage error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <zpeff.h>

#include "curve_table.hpp"
#include "curves.hpp"

namespace {

struct ToolError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument combinations CLI11 cannot express (one-of groups); exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_ok(zpeff_status s) {
  if (s != ZPEFF_OK)
    throw ToolError(std::string(zpeff_status_name(s)) + ": " + zpeff_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ToolError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string item =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? text.size() + 1 : comma + 1;
    if (item.empty()) throw ToolError("empty element in a comma-separated list");
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (end != item.c_str() + item.size()) throw ToolError("malformed number: " + item);
    out.push_back(v);
  }
  return out;
}

std::string take_string(char* owned) {
  std::string out(owned);
  zpeff_string_free(owned);
  return out;
}

std::string fmt9(double v) { return curve_format_number(v); }

// Scalar report in the selected format; rows keep insertion order in CSV and
// appear alphabetically in JSON.
class Report {
 public:
  void add(const std::string& key, double value) { rows_.emplace_back(key, value); }
  void add_count(const std::string& key, std::size_t value) {
    counts_.emplace_back(key, value);
    rows_.emplace_back(key, static_cast<double>(value));
  }

  std::string csv() const {
    std::string out = "quantity,value\n";
    for (const auto& [k, v] : rows_) {
      bool is_count = false;
      for (const auto& [ck, cv] : counts_) {
        if (ck == k) {
          out += k + ',' + std::to_string(cv) + '\n';
          is_count = true;
          break;
        }
      }
      if (!is_count) out += k + ',' + fmt9(v) + '\n';
    }
    return out;
  }

  std::string json() const {
    nlohmann::json j;
    for (const auto& [k, v] : rows_) {
      if (std::isfinite(v))
        j[k] = v;
      else
        j[k] = nullptr;
    }
    for (const auto& [k, v] : counts_) j[k] = v;
    return j.dump();
  }

 private:
  std::vector<std::pair<std::string, double>> rows_;
  std::vector<std::pair<std::string, std::size_t>> counts_;
};

struct GlobalOpts {
  std::string format = "csv";
  std::uint64_t seed = 0;
  bool quiet = false;
};

void print_report(const Report& r, const GlobalOpts& g) {
  std::cout << (g.format == "json" ? r.json() : r.csv());
  if (g.format == "json") std::cout << '\n';
}

/* ---------------- measure ---------------- */

struct MeasureOpts {
  std::string dist_list;
  std::string input;
  double a = 0.0;
  double b = -1.0;  // defaults to a
  bool normalize = false;
};

void run_measure(const MeasureOpts& o, const GlobalOpts& g) {
  std::vector<double> probs;
  if (!o.dist_list.empty()) {
    probs = parse_double_list(o.dist_list);
  } else {
    const std::string text = read_file(o.input);
    double* buf = nullptr;
    size_t n = 0;
    require_ok(zpeff_parse_samples(text.c_str(), text.size(), &buf, &n));
    probs.assign(buf, buf + n);
    zpeff_buffer_free(buf);
  }
  zpeff_dist* d = nullptr;
  if (o.normalize)
    require_ok(zpeff_dist_create_normalized(probs.data(), probs.size(), &d));
  else
    require_ok(zpeff_dist_create(probs.data(), probs.size(), &d));

  double eta = 0.0, shannon = 0.0, varentropy = 0.0;
  const double b = o.b > 0.0 ? o.b : o.a;
  zpeff_status s1 = zpeff_discrete_efficiency(d, o.a, 0, &eta);
  zpeff_status s2 = zpeff_shannon_discrete(d, &shannon);
  zpeff_status s3 = zpeff_varentropy_discrete(d, b, &varentropy);
  zpeff_dist_destroy(d);
  require_ok(s1);
  require_ok(s2);
  require_ok(s3);

  Report r;
  r.add("efficiency", eta);
  r.add("shannon", shannon);
  r.add("varentropy", varentropy);
  print_report(r, g);
}

/* ---------------- curves ---------------- */

void run_curves(int figure, int grid, const GlobalOpts& g) {
  const CurveTable t = emit_curves(figure, grid);
  if (g.format == "json")
    std::cout << curve_table_to_json(t) << '\n';
  else
    std::cout << curve_table_to_csv(t);
}

/* ---------------- fit ---------------- */

struct FitOpts {
  std::string corpus;
  std::string samples;
  double x_min = 0.0;
  std::string window;
  bool emit_table = false;
};

void run_fit(const FitOpts& o, const GlobalOpts& g) {
  size_t window_lo = 0, window_hi = 0;
  if (!o.window.empty()) {
    const std::size_t colon = o.window.find(':');
    auto parse_rank = [](const std::string& part) -> size_t {
      if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
        throw UsageError("--window expects lo:hi with positive integers");
      return std::strtoull(part.c_str(), nullptr, 10);
    };
    if (colon == std::string::npos)
      throw UsageError("--window expects lo:hi with positive integers");
    window_lo = parse_rank(o.window.substr(0, colon));
    window_hi = parse_rank(o.window.substr(colon + 1));
  }
  if (!o.corpus.empty()) {
    const std::string text = read_file(o.corpus);
    zpeff_rank_table* table = nullptr;
    require_ok(zpeff_tokenize(text.c_str(), text.size(), &table));
    if (o.emit_table) {
      char* csv = nullptr;
      const zpeff_status s = zpeff_rank_table_to_csv(table, &csv);
      zpeff_rank_table_destroy(table);
      require_ok(s);
      std::cout << take_string(csv);
      return;
    }
    double alpha = 0.0, x1 = 0.0, r2 = 0.0;
    size_t window[2] = {0, 0};
    const zpeff_status s =
        zpeff_fit_zipf(table, window_lo, window_hi, &alpha, &x1, &r2, window);
    const size_t distinct = zpeff_rank_table_size(table);
    const double total = zpeff_rank_table_total(table);
    zpeff_rank_table_destroy(table);
    require_ok(s);

    Report r;
    r.add("alpha_hat", alpha);
    r.add("x1_hat", x1);
    r.add("r_squared", r2);
    r.add_count("window_lo", window[0]);
    r.add_count("window_hi", window[1]);
    r.add_count("distinct_tokens", distinct);
    r.add("total_tokens", total);
    print_report(r, g);
    return;
  }

  const std::string text = read_file(o.samples);
  double* values = nullptr;
  size_t n = 0;
  require_ok(zpeff_parse_samples(text.c_str(), text.size(), &values, &n));
  double beta = 0.0, se = 0.0, x_min_used = 0.0, gini = 0.0, share = 0.0;
  zpeff_status s1 = zpeff_fit_pareto_hill(values, n, o.x_min, &beta, &se, &x_min_used);
  zpeff_status s2 = zpeff_empirical_gini(values, n, &gini);
  zpeff_status s3 = zpeff_top_share(values, n, 0.2, &share);
  zpeff_buffer_free(values);
  require_ok(s1);
  require_ok(s2);
  require_ok(s3);

  Report r;
  r.add("beta_hat", beta);
  r.add("std_err", se);
  r.add("x_min", x_min_used);
  r.add("gini", gini);
  r.add("top20_share", share);
  r.add_count("n", n);
  if (g.format == "json") {
    // carry the fitted model in its serialized parameter schema
    nlohmann::json j = nlohmann::json::parse(r.json());
    char* model = nullptr;
    require_ok(zpeff_pareto_to_json(x_min_used, beta, &model));
    j["model"] = nlohmann::json::parse(take_string(model));
    std::cout << j.dump() << '\n';
    return;
  }
  print_report(r, g);
}

/* ---------------- stability ---------------- */

struct StabilityOpts {
  double a = 0.0;
  double delta = 0.0;
  std::string sizes;
  std::size_t trials = 100;
  std::optional<std::uint64_t> seed;
};

void run_stability(const StabilityOpts& o, const GlobalOpts& g) {
  std::vector<uint64_t> sizes;
  for (double v : parse_double_list(o.sizes)) {
    if (v < 2.0 || v != std::floor(v)) throw ToolError("--sizes expects integers >= 2");
    sizes.push_back(static_cast<uint64_t>(v));
  }
  zpeff_stability_report* report = nullptr;
  require_ok(zpeff_stability_run(o.a, sizes.data(), sizes.size(), o.delta, o.trials,
                                 o.seed.value_or(g.seed), &report));
  char* text = nullptr;
  const zpeff_status s = g.format == "json" ? zpeff_stability_report_to_json(report, &text)
                                            : zpeff_stability_report_to_csv(report, &text);
  zpeff_stability_report_destroy(report);
  require_ok(s);
  std::cout << take_string(text);
  if (g.format == "json") std::cout << '\n';
}

/* ---------------- roots ---------------- */

void run_roots(double tol, const GlobalOpts& g) {
  double a_star = 0.0;
  require_ok(zpeff_zero_efficiency_threshold(tol, &a_star));
  double beta_star = 0.0;
  require_ok(zpeff_beta_from_a(a_star, &beta_star));
  double gini_star = 0.0;
  require_ok(zpeff_gini_from_beta(beta_star, &gini_star));
  double shannon_beta = 0.0;
  require_ok(zpeff_zero_shannon_threshold(tol, &shannon_beta));

  Report r;
  r.add("zero_efficiency_a", a_star);
  r.add("zero_efficiency_beta", beta_star);
  r.add("zero_efficiency_gini", gini_star);
  r.add("zero_shannon_beta", shannon_beta);
  print_report(r, g);
}

/* ---------------- maximize ---------------- */

struct MaximizeOpts {
  std::string values;
  double a = 0.0;
  std::optional<double> mean;
  std::optional<double> multiplier;
  double tol = 1e-12;
};

void run_maximize(const MaximizeOpts& o, const GlobalOpts& g) {
  std::vector<double> values;
  if (o.values.find(',') != std::string::npos) {
    values = parse_double_list(o.values);
  } else {
    std::ifstream probe(o.values);
    if (probe) {
      const std::string text = read_file(o.values);
      double* buf = nullptr;
      size_t n = 0;
      require_ok(zpeff_parse_samples(text.c_str(), text.size(), &buf, &n));
      values.assign(buf, buf + n);
      zpeff_buffer_free(buf);
    } else {
      values = parse_double_list(o.values);  // single number
    }
  }
  if (o.mean.has_value() == o.multiplier.has_value())
    throw UsageError("exactly one of --mean / --multiplier is required");

  zpeff_solution* sol = nullptr;
  if (o.mean)
    require_ok(zpeff_solve_fixed_mean(values.data(), values.size(), o.a, *o.mean, o.tol, &sol));
  else
    require_ok(
        zpeff_solve_multiplier(values.data(), values.size(), o.a, *o.multiplier, o.tol, &sol));

  char* text = nullptr;
  const zpeff_status s =
      g.format == "json" ? zpeff_solution_to_json(sol, &text) : zpeff_solution_to_csv(sol, &text);
  zpeff_solution_destroy(sol);
  require_ok(s);
  std::cout << take_string(text);
  if (g.format == "json") std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zipf-Pareto efficiency toolkit"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  GlobalOpts g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized subcommands")->capture_default_str();
  app.add_flag("--quiet", g.quiet, "Suppress diagnostics on stderr");

  MeasureOpts measure;
  auto* cmd_measure =
      app.add_subcommand("measure", "Efficiency, Shannon entropy and varentropy of a distribution");
  auto* dist_opt = cmd_measure->add_option("--dist", measure.dist_list,
                                           "Comma-separated probabilities");
  auto* input_opt =
      cmd_measure->add_option("--input", measure.input, "File with one probability per line");
  dist_opt->excludes(input_opt);
  cmd_measure->add_option("--a", measure.a, "Loss coefficient")->required();
  cmd_measure->add_option("--b", measure.b, "Varentropy exponent (defaults to --a)");
  cmd_measure->add_flag("--normalize", measure.normalize,
                        "Renormalize the input weights explicitly");

  int figure = 0;
  int grid = 200;
  auto* cmd_curves = app.add_subcommand("curves", "Figure data tables");
  cmd_curves->add_option("--figure", figure, "Figure number")
      ->required()
      ->check(CLI::Range(1, 5));
  cmd_curves->add_option("--grid", grid, "Interior grid points")
      ->check(CLI::Range(10, 10000000))
      ->capture_default_str();

  FitOpts fit;
  auto* cmd_fit = app.add_subcommand("fit", "Zipf/Pareto fitting and inequality estimates");
  auto* corpus_opt = cmd_fit->add_option("--corpus", fit.corpus, "UTF-8 text corpus");
  auto* samples_opt =
      cmd_fit->add_option("--samples", fit.samples, "Numeric samples, one per line");
  corpus_opt->excludes(samples_opt);
  cmd_fit->add_option("--xmin", fit.x_min, "Declared scale for the tail fit");
  cmd_fit->add_option("--window", fit.window, "Zipf fit rank window lo:hi");
  cmd_fit->add_flag("--emit-table", fit.emit_table, "Print the rank,token,frequency table");

  StabilityOpts stab;
  auto* cmd_stab = app.add_subcommand("stability", "Perturbation stability harness");
  cmd_stab->add_option("--a", stab.a, "Loss coefficient")->required();
  cmd_stab->add_option("--delta", stab.delta, "L1 perturbation budget")->required();
  cmd_stab->add_option("--sizes", stab.sizes, "Comma-separated support sizes")->required();
  cmd_stab->add_option("--trials", stab.trials, "Trials per cell")->capture_default_str();
  std::uint64_t stab_seed = 0;
  auto* stab_seed_opt = cmd_stab->add_option("--seed", stab_seed, "Harness seed");

  double roots_tol = 1e-10;
  auto* cmd_roots = app.add_subcommand("roots", "Threshold constants of the efficiency family");
  cmd_roots->add_option("--tol", roots_tol, "Root tolerance")->capture_default_str();

  MaximizeOpts maxi;
  auto* cmd_max = app.add_subcommand("maximize", "Constrained efficiency maximization");
  cmd_max->add_option("--values", maxi.values, "Achievement levels (file or comma list)")
      ->required();
  cmd_max->add_option("--a", maxi.a, "Loss coefficient")->required();
  double mean_arg = 0.0, mult_arg = 0.0;
  auto* mean_opt = cmd_max->add_option("--mean", mean_arg, "Mean achievement target");
  auto* mult_opt = cmd_max->add_option("--multiplier", mult_arg, "Achievement multiplier");
  mean_opt->excludes(mult_opt);
  cmd_max->add_option("--tol", maxi.tol, "Constraint tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (cmd_measure->parsed()) {
      if (measure.dist_list.empty() && measure.input.empty())
        throw UsageError("one of --dist / --input is required");
      run_measure(measure, g);
    } else if (cmd_curves->parsed()) {
      run_curves(figure, grid, g);
    } else if (cmd_fit->parsed()) {
      if (fit.corpus.empty() && fit.samples.empty())
        throw UsageError("one of --corpus / --samples is required");
      run_fit(fit, g);
    } else if (cmd_stab->parsed()) {
      if (stab_seed_opt->count() > 0) stab.seed = stab_seed;
      run_stability(stab, g);
    } else if (cmd_roots->parsed()) {
      run_roots(roots_tol, g);
    } else if (cmd_max->parsed()) {
      if (mean_opt->count() > 0) maxi.mean = mean_arg;
      if (mult_opt->count() > 0) maxi.multiplier = mult_arg;
      run_maximize(maxi, g);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    if (!g.quiet) std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
