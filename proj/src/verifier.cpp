#include "husts/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <utility>

#include "husts/constants.hpp"
#include "husts/error.hpp"

namespace husts {

const char* to_string(Envelope e) noexcept {
  switch (e) {
    case Envelope::E1: return "E1";
    case Envelope::E2: return "E2";
    case Envelope::E3: return "E3";
  }
  return "?";
}

const char* to_string(SearchMode m) noexcept {
  switch (m) {
    case SearchMode::BruteForce: return "bruteforce";
    case SearchMode::Greedy: return "greedy";
    case SearchMode::AlternatingBest: return "alternating";
  }
  return "?";
}

int envelope_sign(const StepPair& steps, double lambda, Envelope envelope,
                  GridPoint p) noexcept {
  const double ia = 1.0 / steps.alpha();
  const double ib = 1.0 / steps.beta();
  const bool even = p.phase == Phase::Even;
  const double alternation = (p.k % 2 == 0) ? 1.0 : -1.0;
  double value = 0.0;
  switch (envelope) {
    case Envelope::E1:
      value = alternation * (even ? lambda + ia + ib : lambda + ia - ib);
      break;
    case Envelope::E2:
      value = alternation * (even ? ia - ib - lambda : ia + ib + lambda);
      break;
    case Envelope::E3:
      value = even ? ia - ib - lambda : ia - ib + lambda;
      break;
  }
  return value < 0.0 ? -1 : 1;
}

Perturbation::Perturbation(double epsilon, Pattern pattern)
    : epsilon_(epsilon), pattern_(std::move(pattern)) {
  if (!(std::isfinite(epsilon) && epsilon > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  }
}

Perturbation Perturbation::alternating(double epsilon, Envelope envelope,
                                       int sign) {
  if (sign != 1 && sign != -1) {
    throw Error(ErrorCode::InvalidArgument, "alternating sign must be +1 or -1");
  }
  return Perturbation(epsilon, Alternating{envelope, sign});
}

Perturbation Perturbation::greedy(double epsilon) {
  return Perturbation(epsilon, Greedy{});
}

Perturbation Perturbation::explicit_values(double epsilon,
                                           std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(std::abs(values[i]) <= epsilon)) {
      std::ostringstream msg;
      msg << "explicit perturbation " << i << " = " << values[i]
          << " exceeds epsilon = " << epsilon;
      throw Error(ErrorCode::InvalidArgument, msg.str());
    }
  }
  return Perturbation(epsilon, Explicit{std::move(values)});
}

Perturbation Perturbation::random(double epsilon, std::uint64_t seed) {
  return Perturbation(epsilon, Random{seed});
}

namespace {

std::vector<double> exp_samples(const StepPair& steps, double lambda,
                                std::size_t n) {
  std::vector<double> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = exp_lambda(steps, lambda, point_at(i));
  return e;
}

double max_deviation(std::span<const double> phi, std::span<const double> e,
                     double c) {
  double worst = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    worst = std::max(worst, std::abs(phi[i] - c * e[i]));
  }
  return worst;
}

// Greedy step: pick q = +-eps so phi(sigma(p)) lands as far as possible from
// the exact solution that best fits the prefix. Ties go to +eps.
double greedy_step(std::span<const double> phi_prefix,
                   std::span<const double> e_prefix, double e_next,
                   double factor, double mu, double epsilon) {
  const double c = best_fit(phi_prefix, e_prefix, epsilon).c_star;
  const double base = factor * phi_prefix.back();
  const double up = std::abs(base + mu * epsilon - c * e_next);
  const double down = std::abs(base - mu * epsilon - c * e_next);
  return down > up ? -epsilon : epsilon;
}

// phi0 = 0, q_i = signs[i] * 1.
void propagate(const StepPair& steps, double lambda, std::span<const int> signs,
               std::span<double> phi) {
  phi[0] = 0.0;
  for (std::size_t i = 0; i < signs.size(); ++i) {
    const double mu = steps.mu(point_at(i));
    phi[i + 1] = (1.0 + lambda * mu) * phi[i] + mu * signs[i];
  }
}

std::vector<int> signs_of(std::span<const double> q) {
  std::vector<int> s(q.size());
  std::transform(q.begin(), q.end(), s.begin(),
                 [](double v) { return v < 0.0 ? -1 : 1; });
  return s;
}

bool improves(double candidate, double best) {
  return candidate > best + 1e-12 * std::max(1.0, std::abs(best));
}

}  // namespace

Trajectory integrate(const StepPair& steps, double lambda, double phi0,
                     const Perturbation& perturbation, std::size_t n_points) {
  if (n_points < 2) {
    throw Error(ErrorCode::InvalidArgument, "n_points must be at least 2");
  }
  require_regressive(steps, lambda);
  const double eps = perturbation.epsilon();
  const std::size_t n_steps = n_points - 1;

  std::vector<double> q(n_steps, 0.0);
  std::vector<double> phi(n_points, 0.0);
  phi[0] = phi0;

  const auto& pattern = perturbation.pattern();
  if (const auto* ex = std::get_if<Perturbation::Explicit>(&pattern)) {
    if (ex->values.size() != n_steps) {
      std::ostringstream msg;
      msg << "explicit pattern has " << ex->values.size()
          << " values; need n_points - 1 = " << n_steps;
      throw Error(ErrorCode::PatternLengthMismatch, msg.str());
    }
    q = ex->values;
  } else if (const auto* alt = std::get_if<Perturbation::Alternating>(&pattern)) {
    for (std::size_t i = 0; i < n_steps; ++i) {
      q[i] = alt->sign * envelope_sign(steps, lambda, alt->envelope, point_at(i)) * eps;
    }
  } else if (const auto* rnd = std::get_if<Perturbation::Random>(&pattern)) {
    std::mt19937_64 rng(rnd->seed);
    std::uniform_real_distribution<double> dist(-eps, eps);
    for (auto& v : q) v = dist(rng);
  }

  const bool greedy = std::holds_alternative<Perturbation::Greedy>(pattern);
  const std::vector<double> e = greedy ? exp_samples(steps, lambda, n_points)
                                       : std::vector<double>{};
  for (std::size_t i = 0; i < n_steps; ++i) {
    const double mu = steps.mu(point_at(i));
    const double factor = 1.0 + lambda * mu;
    if (greedy) {
      q[i] = greedy_step(std::span(phi).first(i + 1), std::span(e).first(i + 1),
                         e[i + 1], factor, mu, eps);
    }
    phi[i + 1] = factor * phi[i] + mu * q[i];
  }

  return Trajectory{steps, lambda, eps, GridFunction(steps, std::move(phi)),
                    std::move(q)};
}

FitResult best_fit(std::span<const double> phi, std::span<const double> e,
                   double epsilon) {
  if (phi.empty() || phi.size() != e.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "best_fit needs equally sized, nonempty samples");
  }

  // g(c) = max_n |e_n| |phi_n/e_n - c| is convex and piecewise linear; its
  // minimum sits inside the hull of the per-point ratios.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double span = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double r = phi[i] / e[i];
    lo = std::min(lo, r);
    hi = std::max(hi, r);
    span = std::max(span, std::abs(r));
  }
  span += 1.0;
  lo -= span;
  hi += span;

  for (int it = 0; it < 400 && hi - lo > 1e-12; ++it) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (max_deviation(phi, e, m1) < max_deviation(phi, e, m2)) {
      hi = m2;
    } else {
      lo = m1;
    }
  }
  double c = 0.5 * (lo + hi);
  double g = max_deviation(phi, e, c);

  // Snap onto the crossing of the two active lines, or onto the zero of the
  // single active line when every ratio sits on one side; the ternary
  // bracket leaves a residual of |e| * width otherwise.
  for (int round = 0; round < 4; ++round) {
    double up_val = -1.0, down_val = -1.0;
    std::size_t up = 0, down = 0;
    for (std::size_t i = 0; i < phi.size(); ++i) {
      const double v = std::abs(phi[i] - c * e[i]);
      if (phi[i] / e[i] >= c) {
        if (v > down_val) { down_val = v; down = i; }
      } else if (v > up_val) {
        up_val = v;
        up = i;
      }
    }
    double c2 = 0.0;
    if (up_val < 0.0 || down_val < 0.0) {
      const std::size_t top = up_val < 0.0 ? down : up;
      c2 = phi[top] / e[top];
    } else {
      const double wu = std::abs(e[up]);
      const double wd = std::abs(e[down]);
      c2 = (wu * (phi[up] / e[up]) + wd * (phi[down] / e[down])) / (wu + wd);
    }
    const double g2 = max_deviation(phi, e, c2);
    if (!(g2 < g)) break;
    c = c2;
    g = g2;
  }

  return {c, g, g / epsilon};
}

FitResult best_fit(const Trajectory& traj) {
  const auto e = exp_samples(traj.steps, traj.lambda, traj.phi.size());
  return best_fit(traj.phi.values(), e, traj.epsilon);
}

LowerBound adversarial_lower_bound(const StepPair& steps, double lambda,
                                   std::size_t n_points, SearchMode mode) {
  if (n_points < 2) {
    throw Error(ErrorCode::InvalidArgument, "n_points must be at least 2");
  }
  require_regressive(steps, lambda);
  const std::size_t n_steps = n_points - 1;

  switch (mode) {
    case SearchMode::BruteForce: {
      if (n_points > kBruteForceMaxPoints) {
        std::ostringstream msg;
        msg << "brute force is capped at " << kBruteForceMaxPoints
            << " points (got " << n_points << ")";
        throw Error(ErrorCode::TooLarge, msg.str());
      }
      const auto e = exp_samples(steps, lambda, n_points);
      std::vector<double> phi(n_points);
      std::vector<int> signs(n_steps);
      LowerBound best{-1.0, {}};
      // Ascending masks enumerate patterns in lexicographic order with the
      // first step as the most significant bit and -1 before +1.
      const std::uint64_t count = std::uint64_t{1} << n_steps;
      for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (std::size_t i = 0; i < n_steps; ++i) {
          signs[i] = (mask >> (n_steps - 1 - i)) & 1u ? 1 : -1;
        }
        propagate(steps, lambda, signs, phi);
        const double ratio = best_fit(phi, e, 1.0).ratio;
        if (improves(ratio, best.ratio)) best = {ratio, signs};
      }
      return best;
    }
    case SearchMode::Greedy: {
      const auto traj = integrate(steps, lambda, 0.0, Perturbation::greedy(1.0), n_points);
      return {best_fit(traj).ratio, signs_of(traj.q)};
    }
    case SearchMode::AlternatingBest: {
      LowerBound best{-1.0, {}};
      for (Envelope env : {Envelope::E1, Envelope::E2, Envelope::E3}) {
        for (int sign : {1, -1}) {
          const auto traj = integrate(steps, lambda, 0.0,
                                      Perturbation::alternating(1.0, env, sign), n_points);
          const double ratio = best_fit(traj).ratio;
          if (improves(ratio, best.ratio)) best = {ratio, signs_of(traj.q)};
        }
      }
      return best;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "unknown search mode");
}

VerifyReport verify_case(const StepPair& steps, double lambda,
                         std::size_t n_points, std::optional<SearchMode> mode,
                         double tol) {
  VerifyReport report{classify(steps, lambda, tol), std::nullopt, SearchMode::Greedy,
                      n_points, 0.0, std::nullopt, 0.0, false};
  if (n_points < 2) {
    throw Error(ErrorCode::InvalidArgument, "n_points must be at least 2");
  }

  switch (report.label.tag) {
    case Case::K:
      // Nothing to integrate: 1 + lambda mu(t) vanishes.
      report.pass = !is_regressive(steps, lambda, tol);
      return report;
    case Case::J: {
      report.mode = SearchMode::Greedy;
      const double at_n =
          adversarial_lower_bound(steps, lambda, n_points, SearchMode::Greedy).ratio;
      const double at_2n =
          adversarial_lower_bound(steps, lambda, 2 * n_points, SearchMode::Greedy).ratio;
      report.empirical_lower_bound = at_n;
      report.extended_lower_bound = at_2n;
      report.margin = at_n > 0.0 ? at_2n / at_n - 1.0 : 0.0;
      report.pass = at_2n >= (1.0 + kGrowthThreshold) * at_n && at_2n > 0.0;
      return report;
    }
    default:
      break;
  }

  report.mode = mode.value_or(n_points <= kBruteForceMaxPoints ? SearchMode::BruteForce
                                                               : SearchMode::Greedy);
  report.claimed_constant = theorem_constant(steps, lambda, tol).constant;
  report.empirical_lower_bound =
      adversarial_lower_bound(steps, lambda, n_points, report.mode).ratio;
  report.margin = *report.claimed_constant - report.empirical_lower_bound;
  report.pass =
      report.empirical_lower_bound <= *report.claimed_constant * (1.0 + 1e-9);
  return report;
}

}  // namespace husts
