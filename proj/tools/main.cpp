// husts: command-line front end over the C API.
//
//   husts classify --alpha 6 --beta 1 --lambda -0.2
//   husts constant --alpha 3 --beta 1 --lambda -1/2
//   husts compare  --examples --format csv
//   husts sweep    --alpha 6 --beta 1 --lambda-min -1 --lambda-max -0.1 --samples 91
//   husts verify   --alpha 6 --beta 1 --lambda -0.2 --n 13
//
// Exit codes: 0 success, 2 invalid parameters, 3 no constant exists,
// 4 verification failed.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <CLI11.hpp>

#include "husts/husts.h"
#include "render.hpp"

namespace {

using husts::cli::Cell;
using husts::cli::Document;
using husts::cli::Format;
using husts::cli::Record;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNoConstant = 3;
constexpr int kExitVerifyFailed = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  double alpha = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  std::string lambda;
  std::string lambda_min;
  std::string lambda_max;
  int samples = 0;
  double epsilon = 1.0;
  int n_points = 13;
  std::optional<std::uint64_t> seed;
  std::string format = "table";
  std::string mode = "auto";
  std::optional<double> tolerance;
  std::string out;
  bool examples = false;
};

void check(husts_status status) {
  if (status != HUSTS_OK) {
    const std::string detail = husts_last_error();
    throw UsageError(std::string(husts_status_name(status)) +
                     (detail.empty() ? "" : ": " + detail));
  }
}

struct StepsDeleter {
  void operator()(husts_steps* s) const { husts_steps_destroy(s); }
};
using Steps = std::unique_ptr<husts_steps, StepsDeleter>;

Steps make_steps(const RunConfig& cfg) {
  if (std::isnan(cfg.alpha) || std::isnan(cfg.beta)) {
    throw UsageError("--alpha and --beta are required");
  }
  husts_steps* raw = nullptr;
  check(husts_steps_create(cfg.alpha, cfg.beta, 1, &raw));
  Steps steps(raw);
  if (cfg.tolerance) check(husts_steps_set_tolerance(steps.get(), *cfg.tolerance));
  return steps;
}

// Decimal or an exact fraction "p/q" (e.g. -1/2).
double parse_real(std::string_view text) {
  const auto parse_one = [text](std::string_view part) {
    double value = 0.0;
    const auto* end = part.data() + part.size();
    const auto res = std::from_chars(part.data(), end, value);
    if (part.empty() || res.ec != std::errc() || res.ptr != end || !std::isfinite(value)) {
      throw UsageError("cannot parse number '" + std::string(text) + "'");
    }
    return value;
  };
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    const double num = parse_one(text.substr(0, slash));
    const double den = parse_one(text.substr(slash + 1));
    if (den == 0.0) throw UsageError("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  return parse_one(text);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = std::string_view(text).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!piece.empty()) values.push_back(parse_real(piece));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

Format parse_format(const std::string& name) {
  if (name == "table") return Format::Table;
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  throw UsageError("unknown format '" + name + "' (table, json, csv)");
}

husts_search_mode parse_mode(const std::string& name) {
  if (name == "auto") return HUSTS_SEARCH_AUTO;
  if (name == "bruteforce") return HUSTS_SEARCH_BRUTE_FORCE;
  if (name == "greedy") return HUSTS_SEARCH_GREEDY;
  if (name == "alternating") return HUSTS_SEARCH_ALTERNATING_BEST;
  throw UsageError("unknown mode '" + name + "' (auto, bruteforce, greedy, alternating)");
}

double single_lambda(const RunConfig& cfg) {
  if (cfg.lambda.empty()) throw UsageError("--lambda is required");
  return parse_real(cfg.lambda);
}

Record& add_steps(Record& r, const RunConfig& cfg) {
  return r.add("alpha", Cell{cfg.alpha}).add("beta", Cell{cfg.beta});
}

void emit(const Document& doc, const RunConfig& cfg) {
  const std::string text = husts::cli::render(doc, parse_format(cfg.format));
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw UsageError("cannot open output file '" + cfg.out + "'");
  file << text;
}

int cmd_classify(const RunConfig& cfg) {
  const Steps steps = make_steps(cfg);
  const double lambda = single_lambda(cfg);
  parse_format(cfg.format);
  husts_case tag{};
  husts_thresholds th{};
  check(husts_classify(steps.get(), lambda, &tag, &th));
  husts_signature sig{};
  check(husts_product_signature(steps.get(), lambda, &sig));

  Document doc;
  add_steps(doc.header, cfg)
      .add("lambda", Cell{lambda})
      .add("case", Cell{std::string(husts_case_name(tag))})
      .add("lambda_plus", th.has_roots ? std::optional(th.lambda_plus) : std::nullopt)
      .add("lambda_minus", th.has_roots ? std::optional(th.lambda_minus) : std::nullopt)
      .add("product", Cell{th.product})
      .add("discriminant", Cell{th.discriminant})
      .add("signature", Cell{std::string(husts_signature_name(sig))});
  emit(doc, cfg);
  return kExitOk;
}

int cmd_constant(const RunConfig& cfg) {
  const Steps steps = make_steps(cfg);
  const double lambda = single_lambda(cfg);
  parse_format(cfg.format);
  husts_verdict v{};
  check(husts_theorem_constant(steps.get(), lambda, &v));

  Document doc;
  add_steps(doc.header, cfg)
      .add("lambda", Cell{lambda})
      .add("case", Cell{std::string(husts_case_name(v.tag))})
      .add("constant", v.has_constant ? std::optional(v.constant) : std::nullopt)
      .add("minimal", Cell{v.minimal != 0})
      .add("reason", Cell{std::string(husts_reason_name(v.reason))});
  emit(doc, cfg);
  return v.has_constant ? kExitOk : kExitNoConstant;
}

Record compare_record(const husts_compare_row& row) {
  Record r;
  r.add("lambda", Cell{row.lambda})
      .add("case", Cell{std::string(husts_case_name(row.tag))})
      .add("theorem_constant",
           row.has_theorem ? std::optional(row.theorem_constant) : std::nullopt)
      .add("andras_even", row.has_andras ? std::optional(row.andras_even) : std::nullopt)
      .add("andras_odd", row.has_andras ? std::optional(row.andras_odd) : std::nullopt)
      .add("winner", Cell{std::string(husts_winner_name(row.winner))});
  return r;
}

// Built-in reference comparisons with their printed (rounded) values.
struct ReferenceRow {
  int example;
  double alpha, beta, lambda;
  double theorem, andras_even, andras_odd;
  husts_winner winner;
};

constexpr ReferenceRow kReferenceRows[] = {
    {1, 6.0, 1.0, -1.0 / 5.0, 7.38, 7.688, 7.59, HUSTS_WINNER_THEOREM},
    {1, 6.0, 1.0, -4.0 / 5.0, 40.8333, 29.2055, 32.0933, HUSTS_WINNER_ANDRAS},
    {2, 3.0, 1.0, -1.0 / 2.0, 4.66, 5.16, 4.97, HUSTS_WINNER_THEOREM},
    {2, 3.0, 1.0, -4.0 / 5.0, 6.111, 5.42, 6.101, HUSTS_WINNER_ANDRAS},
    {3, 0.1, 1.0, -1.2, 1.238, 2.238, 2.037, HUSTS_WINNER_THEOREM},
    {3, 0.1, 1.0, -9.2, 5.29, 4.10, 3.168, HUSTS_WINNER_ANDRAS},
    {4, 1.0, 0.5, -2.5, 2.8, 2.95, 3.52, HUSTS_WINNER_THEOREM},
    {4, 1.0, 0.5, -2.9, 13.45, 10.99, 11.9, HUSTS_WINNER_ANDRAS},
};

int cmd_compare_examples(const RunConfig& cfg) {
  parse_format(cfg.format);
  Document doc;
  doc.tabular = true;
  doc.header.add("examples", Cell{static_cast<long long>(std::size(kReferenceRows))});
  long long matches = 0;
  for (const auto& ref : kReferenceRows) {
    husts_steps* raw = nullptr;
    check(husts_steps_create(ref.alpha, ref.beta, 1, &raw));
    const Steps steps(raw);
    if (cfg.tolerance) check(husts_steps_set_tolerance(steps.get(), *cfg.tolerance));
    husts_compare_row row{};
    check(husts_compare(steps.get(), &ref.lambda, 1, &row));

    const bool match = row.winner == ref.winner;
    matches += match ? 1 : 0;
    const auto delta = [](int has, double value, double expected) {
      return has ? std::optional(value - expected) : std::nullopt;
    };
    Record r = compare_record(row);
    r.add("example", Cell{static_cast<long long>(ref.example)})
        .add("alpha", Cell{ref.alpha})
        .add("beta", Cell{ref.beta})
        .add("expected_theorem", Cell{ref.theorem})
        .add("expected_andras_even", Cell{ref.andras_even})
        .add("expected_andras_odd", Cell{ref.andras_odd})
        .add("delta_theorem", delta(row.has_theorem, row.theorem_constant, ref.theorem))
        .add("delta_andras_even", delta(row.has_andras, row.andras_even, ref.andras_even))
        .add("delta_andras_odd", delta(row.has_andras, row.andras_odd, ref.andras_odd))
        .add("expected_winner", Cell{std::string(husts_winner_name(ref.winner))})
        .add("winner_match", Cell{match});
    doc.rows.push_back(std::move(r));
  }
  doc.header.add("winner_matches", Cell{matches});
  emit(doc, cfg);
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg) {
  if (cfg.examples) return cmd_compare_examples(cfg);
  const Steps steps = make_steps(cfg);
  const std::vector<double> lambdas = parse_list(cfg.lambda);
  if (lambdas.empty()) throw UsageError("--lambda needs at least one value");
  parse_format(cfg.format);
  std::vector<husts_compare_row> rows(lambdas.size());
  check(husts_compare(steps.get(), lambdas.data(), lambdas.size(), rows.data()));

  Document doc;
  doc.tabular = true;
  add_steps(doc.header, cfg);
  for (const auto& row : rows) doc.rows.push_back(compare_record(row));
  emit(doc, cfg);
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg) {
  const Steps steps = make_steps(cfg);
  if (cfg.lambda_min.empty() || cfg.lambda_max.empty()) {
    throw UsageError("--lambda-min and --lambda-max are required");
  }
  const double lo = parse_real(cfg.lambda_min);
  const double hi = parse_real(cfg.lambda_max);
  if (!(lo < hi)) throw UsageError("--lambda-min must be below --lambda-max");
  if (cfg.samples < 2) throw UsageError("--samples must be at least 2");
  parse_format(cfg.format);

  std::vector<double> lambdas(static_cast<std::size_t>(cfg.samples));
  for (int i = 0; i < cfg.samples; ++i) {
    lambdas[i] = i + 1 == cfg.samples ? hi : lo + (hi - lo) * i / (cfg.samples - 1);
  }
  std::vector<husts_compare_row> rows(lambdas.size());
  check(husts_compare(steps.get(), lambdas.data(), lambdas.size(), rows.data()));

  Document doc;
  doc.tabular = true;
  add_steps(doc.header, cfg)
      .add("lambda_min", Cell{lo})
      .add("lambda_max", Cell{hi})
      .add("samples", Cell{static_cast<long long>(cfg.samples)});
  for (const auto& row : rows) {
    Record r;
    r.add("lambda", Cell{row.lambda})
        .add("case", Cell{std::string(husts_case_name(row.tag))})
        .add("theorem_constant",
             row.has_theorem ? std::optional(row.theorem_constant) : std::nullopt)
        .add("andras_even", row.has_andras ? std::optional(row.andras_even) : std::nullopt)
        .add("andras_odd", row.has_andras ? std::optional(row.andras_odd) : std::nullopt)
        .add("exceptional", Cell{row.tag == HUSTS_CASE_J || row.tag == HUSTS_CASE_K});
    doc.rows.push_back(std::move(r));
  }
  emit(doc, cfg);
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  const Steps steps = make_steps(cfg);
  const double lambda = single_lambda(cfg);
  const husts_search_mode mode = parse_mode(cfg.mode);
  parse_format(cfg.format);
  if (cfg.n_points < 2) throw UsageError("--n must be at least 2");
  if (!(cfg.epsilon > 0.0)) throw UsageError("--epsilon must be positive");
  const auto n = static_cast<std::size_t>(cfg.n_points);
  // TooLarge is reported by the library as well; checking here keeps the
  // message specific to the flag.
  if (mode == HUSTS_SEARCH_BRUTE_FORCE && n > 16) {
    throw UsageError("--mode bruteforce supports at most 16 points");
  }

  husts_verify_report rep{};
  check(husts_verify_case(steps.get(), lambda, n, mode, &rep));

  std::optional<double> random_ratio;
  if (cfg.seed && rep.tag != HUSTS_CASE_K) {
    husts_perturbation p{};
    p.epsilon = cfg.epsilon;
    p.kind = HUSTS_PATTERN_RANDOM;
    p.seed = *cfg.seed;
    husts_trajectory* traj = nullptr;
    check(husts_integrate(steps.get(), lambda, 0.0, &p, n, &traj));
    husts_fit fit{};
    const husts_status st = husts_best_fit(traj, &fit);
    husts_trajectory_destroy(traj);
    check(st);
    random_ratio = fit.ratio;
  }

  Document doc;
  add_steps(doc.header, cfg)
      .add("lambda", Cell{lambda})
      .add("case", Cell{std::string(husts_case_name(rep.tag))})
      .add("mode", Cell{std::string(husts_search_mode_name(rep.mode))})
      .add("n", Cell{static_cast<long long>(rep.n_points)})
      .add("epsilon", Cell{cfg.epsilon})
      .add("claimed_constant",
           rep.has_claimed ? std::optional(rep.claimed_constant) : std::nullopt)
      .add("empirical_lower_bound", Cell{rep.empirical_lower_bound})
      .add("extended_lower_bound",
           rep.has_extended ? std::optional(rep.extended_lower_bound) : std::nullopt)
      .add("margin", Cell{rep.margin})
      .add("deviation_bound", Cell{rep.empirical_lower_bound * cfg.epsilon})
      .add("random_ratio", random_ratio)
      .add("pass", Cell{rep.pass != 0});
  emit(doc, cfg);
  return rep.pass ? kExitOk : kExitVerifyFailed;
}

// CLI11 reads a value such as "-1/2" as a short flag; glue it to its option.
std::vector<std::string> normalize_args(int argc, char** argv) {
  static const std::vector<std::string> kValued = {
      "--alpha", "--beta", "--lambda", "--lambda-min", "--lambda-max",
      "--epsilon", "--threshold-tol"};
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    const bool valued = std::find(kValued.begin(), kValued.end(), arg) != kValued.end();
    if (valued && i + 1 < argc && argv[i + 1][0] == '-') {
      arg += "=" + std::string(argv[++i]);
    }
    args.push_back(std::move(arg));
  }
  std::reverse(args.begin(), args.end());
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hyers-Ulam stability constants on the two-step time scale"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(husts_version()));

  RunConfig cfg;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--alpha", cfg.alpha, "first step size (> 0)");
    sub->add_option("--beta", cfg.beta, "second step size (> 0, != alpha)");
    sub->add_option("--format", cfg.format, "table, json or csv");
    sub->add_option("--out", cfg.out, "write output to FILE instead of stdout");
    sub->add_option("--threshold-tol", tolerance, "band for snapping lambda onto exceptional values");
  };

  auto* classify = app.add_subcommand("classify", "case label and thresholds");
  add_common(classify);
  classify->add_option("--lambda", cfg.lambda, "eigenvalue (decimal or p/q)");

  auto* constant = app.add_subcommand("constant", "HUS constant for one lambda");
  add_common(constant);
  constant->add_option("--lambda", cfg.lambda, "eigenvalue (decimal or p/q)");

  auto* compare = app.add_subcommand("compare", "theorem constant vs Andras constant");
  add_common(compare);
  compare->add_option("--lambda", cfg.lambda, "comma separated eigenvalues");
  compare->add_flag("--examples", cfg.examples, "run the built-in reference comparisons");

  auto* sweep = app.add_subcommand("sweep", "constants over a lambda range");
  add_common(sweep);
  sweep->add_option("--lambda-min", cfg.lambda_min, "range start");
  sweep->add_option("--lambda-max", cfg.lambda_max, "range end");
  sweep->add_option("--samples", cfg.samples, "number of evenly spaced lambdas (>= 2)");

  auto* verify = app.add_subcommand("verify", "adversarial check of the claimed constant");
  add_common(verify);
  verify->add_option("--lambda", cfg.lambda, "eigenvalue (decimal or p/q)");
  verify->add_option("--n", cfg.n_points, "grid points to integrate (default 13)");
  verify->add_option("--epsilon", cfg.epsilon, "perturbation bound (default 1)");
  verify->add_option("--mode", cfg.mode, "auto, bruteforce, greedy or alternating");
  verify->add_option("--seed", seed, "also report a seeded random perturbation");

  try {
    app.parse(normalize_args(argc, argv));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  cfg.seed = seed;
  cfg.tolerance = tolerance;

  try {
    if (*classify) return cmd_classify(cfg);
    if (*constant) return cmd_constant(cfg);
    if (*compare) return cmd_compare(cfg);
    if (*sweep) return cmd_sweep(cfg);
    if (*verify) return cmd_verify(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
