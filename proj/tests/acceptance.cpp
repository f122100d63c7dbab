// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Usage: acceptance <path-to-husts-cli>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "husts/constants.hpp"
#include "husts/verifier.hpp"
#include "oracles.hpp"

using namespace husts;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void near_abs(Outcome& o, const std::string& name, double got, double want, double tol) {
  o.expect(std::abs(got - want) <= tol,
           name + " got " + num(got) + " want " + num(want) + " +-" + num(tol));
}

void near_rel(Outcome& o, const std::string& name, double got, double want, double tol) {
  o.expect(oracle::rel_close(got, want, tol),
           name + " got " + num(got) + " want " + num(want) + " rel " + num(tol));
}

struct Expect {
  double lambda, theorem, even, odd;
  double theorem_tol, even_tol, odd_tol;
  bool theorem_relative;
};

void check_example(Outcome& o, double alpha, double beta, const std::vector<Expect>& rows) {
  const StepPair s(alpha, beta);
  for (const auto& r : rows) {
    const std::string at = "lambda=" + num(r.lambda) + " ";
    const auto v = theorem_constant(s, r.lambda);
    if (!v.constant) {
      o.expect(false, at + "no theorem constant");
      continue;
    }
    if (r.theorem_relative) {
      near_rel(o, at + "theorem", *v.constant, r.theorem, r.theorem_tol);
    } else {
      near_abs(o, at + "theorem", *v.constant, r.theorem, r.theorem_tol);
    }
    const auto a = andras_constant(s, r.lambda);
    near_abs(o, at + "andras_even", a.even_branch, r.even, r.even_tol);
    near_abs(o, at + "andras_odd", a.odd_branch, r.odd, r.odd_tol);
  }
}

Outcome criterion1() {
  Outcome o;
  const auto t0 = Clock::now();
  const auto th = thresholds(StepPair(6, 1), 0);
  o.expect(th.lambda_plus && std::abs(*th.lambda_plus + 0.5) <= 1e-12, "lambda_plus");
  o.expect(th.lambda_minus && std::abs(*th.lambda_minus + 2.0 / 3) <= 1e-12, "lambda_minus");
  check_example(o, 6, 1,
                {{-0.2, 155.0 / 21, 7.688, 7.59, 1e-12, 5e-3, 5e-3, true},
                 {-0.8, 40.8333, 29.2055, 32.0933, 5e-3, 5e-3, 5e-3, false}});
  const double elapsed = seconds_since(t0);
  o.expect(elapsed < 1.0, "runtime " + num(elapsed) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  check_example(o, 3, 1,
                {{-0.5, 14.0 / 3, 5.16, 4.97, 1e-12, 5e-3, 5e-3, true},
                 {-0.8, 6.111, 5.42, 6.101, 5e-3, 5e-3, 5e-3, false}});
  return o;
}

Outcome criterion3() {
  Outcome o;
  check_example(o, 0.1, 1,
                {{-1.2, 1.238, 2.238, 2.037, 5e-3, 5e-3, 5e-3, false},
                 {-9.2, 5.29, 4.10, 3.168, 5e-3, 5e-3, 5e-3, false}});
  return o;
}

Outcome criterion4() {
  Outcome o;
  check_example(o, 1, 0.5,
                {{-2.5, 2.8, 2.95, 3.52, 1e-12, 5e-3, 5e-3, true},
                 {-2.9, 13.45, 10.99, 11.9, 5e-2, 5e-3, 5e-2, false}});
  return o;
}

Outcome criterion5(const std::string& cli) {
  Outcome o;
  FILE* pipe = popen((cli + " compare --examples --format json").c_str(), "r");
  if (!pipe) {
    o.expect(false, "cannot run " + cli);
    return o;
  }
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  o.expect(status == 0, "cli exit status " + std::to_string(status));
  const auto doc = nlohmann::json::parse(out, nullptr, false);
  if (doc.is_discarded() || !doc.contains("rows")) {
    o.expect(false, "unparseable output");
    return o;
  }
  o.expect(doc["rows"].size() == 8, "expected 8 rows");
  for (const auto& row : doc["rows"]) {
    o.expect(row["winner"] == row["expected_winner"],
             "lambda=" + num(row["lambda"].get<double>()) + " winner " +
                 row["winner"].get<std::string>());
  }
  return o;
}

Outcome criterion6() {
  Outcome o;
  int combos = 0;
  for (auto [a, b] : {std::pair{6.0, 1.0}, {3.0, 1.0}, {0.1, 1.0}, {1.0, 0.5}}) {
    const StepPair s(a, b);
    for (double lam : {-0.2 / a, -0.9 / std::max(a, b), -0.5 * (1 / a + 1 / b), -1.1 / std::min(a, b), 0.7}) {
      if (!is_regressive(s, lam)) continue;
      for (std::uint64_t i = 0; i < 64; ++i) {
        const GridPoint p = point_at(i);
        const double e = exp_lambda(s, lam, p);
        const double next = exp_lambda(s, lam, sigma(p));
        if (!oracle::rel_close(next, (1 + lam * s.mu(p)) * e, 1e-12)) {
          o.expect(false, "a=" + num(a) + " lambda=" + num(lam) + " index " + std::to_string(i));
        }
        ++combos;
      }
    }
  }
  o.expect(combos >= 240, "only " + std::to_string(combos) + " combinations");
  o.detail << " (" << combos << " combinations)";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const std::vector<std::tuple<double, double, double>> params = {
      {6, 1, -0.2}, {6, 1, -0.8}, {3, 1, -0.5}, {3, 1, -0.8},
      {0.1, 1, -1.2}, {0.1, 1, -9.2}, {1, 0.5, -2.5}, {1, 0.5, -2.9}};
  for (const auto& [a, b, lam] : params) {
    const StepPair s(a, b);
    const double q = std::abs(growth_product(s, lam));
    for (Phase ph : {Phase::Even, Phase::Odd}) {
      for (std::uint64_t k = 0; k <= 20; ++k) {
        const double closed = delta_sum_abs_exp(s, lam, {k, ph});
        const double direct = delta_sum_abs_exp_direct(s, lam, {k, ph});
        if (!oracle::rel_close(closed, direct, 1e-12)) {
          o.expect(false, "sum mismatch a=" + num(a) + " k=" + std::to_string(k));
        }
      }
      const double limit = delta_sum_limit(s, lam, ph);
      const double g1 = limit - delta_sum_abs_exp(s, lam, {1, ph});
      for (std::uint64_t k = 2; k <= 30; ++k) {
        const double gap = limit - delta_sum_abs_exp(s, lam, {k, ph});
        const double bound = g1 * std::pow(q, double(k - 1));
        if (gap < -1e-12 * limit || gap > bound * (1 + 1e-9) + 1e-12 * limit) {
          o.expect(false, "gap a=" + num(a) + " k=" + std::to_string(k));
        }
      }
    }
  }
  return o;
}

bool signature_agrees(Case c, ProductSignature s, double lambda) {
  using PS = ProductSignature;
  switch (c) {
    case Case::A: case Case::C: case Case::D: case Case::F: return s == PS::InUnitNeg;
    case Case::B: case Case::E: return s == PS::BeyondUnitNeg;
    case Case::G: return s == PS::InUnitPos;
    case Case::H: return s == PS::BeyondUnitPos;
    case Case::I: return s == PS::PosRegressive && lambda != 0;
    case Case::J: return s == PS::OnUnit;
    case Case::K: return s == PS::Zero;
  }
  return false;
}

Outcome criterion8() {
  Outcome o;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> log_step(std::log(0.05), std::log(20.0)), unit(0, 1);
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const StepPair s(std::exp(log_step(rng)), std::exp(log_step(rng)));
    const double lo = -1.5 * (1 / s.alpha() + 1 / s.beta());
    double lam = lo + unit(rng) * (1.5 - lo);
    const auto th = thresholds(s, lam);
    if (i % 40 == 0) lam = th.neg_sum;
    if (i % 40 == 1) lam = th.neg_inv_beta;
    if (i % 40 == 2 && th.lambda_minus) lam = *th.lambda_minus;
    if (i % 40 == 3) lam = 0;
    const auto label = classify(s, lam);
    if (!signature_agrees(label.tag, product_signature(s, lam), lam)) ++mismatches;
  }
  o.expect(mismatches == 0, std::to_string(mismatches) + " mismatches");
  return o;
}

Outcome criterion9() {
  Outcome o;
  for (int i = 0; i < 20; ++i) {
    const double h = 0.1 + 0.25 * i;
    for (int j = 0; j < 20; ++j) {
      const double lam = j < 10 ? -1 / h - (j + 0.5) * 0.09 / h : -2 / h - (j - 9) * 0.37 / h;
      const auto r = hz_reduction_check(h, lam);
      const double want = 1 / std::abs(lam + 2 / h);
      if (!oracle::rel_close(r.reduced, want, 1e-12) || !oracle::rel_close(r.onitsuka, want, 1e-12)) {
        o.expect(false, "h=" + num(h) + " lambda=" + num(lam));
      }
    }
  }
  return o;
}

Outcome criterion10() {
  Outcome o;
  const auto t0 = Clock::now();
  const std::vector<std::tuple<double, double, double>> params = {
      {6, 1, -0.2}, {6, 1, -0.8}, {3, 1, -0.5}, {3, 1, -0.8},
      {0.1, 1, -1.2}, {0.1, 1, -9.2}, {1, 0.5, -2.5}, {1, 0.5, -2.9}};
  for (const auto& [a, b, lam] : params) {
    const StepPair s(a, b);
    const double r = adversarial_lower_bound(s, lam, 13, SearchMode::BruteForce).ratio;
    const double claimed = *theorem_constant(s, lam).constant;
    o.expect(r > 0 && r <= claimed + 1e-9, "a=" + num(a) + " lambda=" + num(lam) + " ratio " + num(r));
    // From rest the fit is exactly zero; from phi0 = 1 the recursion and the
    // closed-form exponential differ only by rounding.
    const auto none = Perturbation::explicit_values(1.0, std::vector<double>(12));
    o.expect(best_fit(integrate(s, lam, 0.0, none, 13)).deviation == 0.0, "deviation from rest");
    const auto unit_start = integrate(s, lam, 1.0, none, 13);
    double scale = 0;
    for (double v : unit_start.phi.values()) scale = std::max(scale, std::abs(v));
    o.expect(best_fit(unit_start).deviation <= 1e-12 * scale, "deviation from phi0 = 1");
  }
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> unit(0, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& [a, b, lam] = params[trial % params.size()];
    const StepPair s(a, b);
    const std::size_t n = 2 + trial % 11;
    const auto t = integrate(s, lam, 2 * unit(rng) - 1, Perturbation::random(1.0, 1000 + trial), n);
    const std::vector<double> phi(t.phi.values().begin(), t.phi.values().end());
    std::vector<double> e(n);
    for (std::size_t i = 0; i < n; ++i) e[i] = exp_lambda(s, lam, point_at(i));
    const double got = best_fit(t).deviation;
    const double want = oracle::minimax_value(phi, e);
    if (std::abs(got - want) > 1e-9) o.expect(false, "fit trial " + std::to_string(trial));
  }
  const double elapsed = seconds_since(t0);
  o.expect(elapsed < 30.0, "runtime " + num(elapsed) + " s");
  return o;
}

Outcome criterion11() {
  Outcome o;
  for (auto [a, b, lam] : {std::tuple{1.0, 0.5, -3.0}, {6.0, 1.0, -0.5}}) {
    const StepPair s(a, b);
    o.expect(classify(s, lam).tag == Case::J, "not case J");
    const double r12 = adversarial_lower_bound(s, lam, 12, SearchMode::Greedy).ratio;
    const double r24 = adversarial_lower_bound(s, lam, 24, SearchMode::Greedy).ratio;
    o.expect(r24 >= 1.05 * r12, "a=" + num(a) + " r12=" + num(r12) + " r24=" + num(r24));
    o.detail << " (a=" << num(a) << ": " << num(r12) << " -> " << num(r24) << ")";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <husts-cli>\n", argv[0]);
    return 2;
  }
  const std::string cli = argv[1];
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"Example 1 reproduction", criterion1},
      {"Example 2 reproduction", criterion2},
      {"Example 3 reproduction", criterion3},
      {"Example 4 reproduction", criterion4},
      {"Winner agreement", [&] { return criterion5(cli); }},
      {"Exponential identity suite", criterion6},
      {"Closed-form / direct delta-sum equivalence", criterion7},
      {"Classification consistency", criterion8},
      {"Uniform-grid reduction", criterion9},
      {"Verifier soundness", criterion10},
      {"No-HUS divergence", criterion11},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s  %2zu. %s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
