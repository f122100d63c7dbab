#include "husts/husts.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "husts/constants.hpp"
#include "husts/error.hpp"
#include "husts/verifier.hpp"

struct husts_steps {
  husts::StepPair pair;
  double tolerance = husts::kThresholdTolerance;
};

struct husts_trajectory {
  husts::Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

husts_status to_status(husts::ErrorCode code) {
  using husts::ErrorCode;
  switch (code) {
    case ErrorCode::InvalidSteps: return HUSTS_ERR_INVALID_STEPS;
    case ErrorCode::NonRegressive: return HUSTS_ERR_NON_REGRESSIVE;
    case ErrorCode::NotConvergent: return HUSTS_ERR_NOT_CONVERGENT;
    case ErrorCode::OutOfRange: return HUSTS_ERR_OUT_OF_RANGE;
    case ErrorCode::OutOfRegime: return HUSTS_ERR_OUT_OF_REGIME;
    case ErrorCode::NotApplicable: return HUSTS_ERR_NOT_APPLICABLE;
    case ErrorCode::TooLarge: return HUSTS_ERR_TOO_LARGE;
    case ErrorCode::PatternLengthMismatch: return HUSTS_ERR_PATTERN_LENGTH;
    case ErrorCode::InvalidArgument: return HUSTS_ERR_INVALID_ARGUMENT;
  }
  return HUSTS_ERR_INTERNAL;
}

husts_status fail(husts_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, translating exceptions into status codes.
template <class F>
husts_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return HUSTS_OK;
  } catch (const husts::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(HUSTS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HUSTS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HUSTS_ERR_INTERNAL, "unknown exception");
  }
}

husts::GridPoint point(uint64_t k, husts_phase phase) {
  return {k, phase == HUSTS_ODD ? husts::Phase::Odd : husts::Phase::Even};
}

husts_thresholds to_c(const husts::Thresholds& th) {
  husts_thresholds out{};
  out.has_roots = th.lambda_plus.has_value() ? 1 : 0;
  out.lambda_plus = th.lambda_plus.value_or(0.0);
  out.lambda_minus = th.lambda_minus.value_or(0.0);
  out.product = th.product;
  out.neg_inv_alpha = th.neg_inv_alpha;
  out.neg_inv_beta = th.neg_inv_beta;
  out.neg_sum = th.neg_sum;
  out.discriminant = th.discriminant;
  return out;
}

std::optional<husts::SearchMode> to_mode(husts_search_mode mode) {
  switch (mode) {
    case HUSTS_SEARCH_BRUTE_FORCE: return husts::SearchMode::BruteForce;
    case HUSTS_SEARCH_GREEDY: return husts::SearchMode::Greedy;
    case HUSTS_SEARCH_ALTERNATING_BEST: return husts::SearchMode::AlternatingBest;
    case HUSTS_SEARCH_AUTO: return std::nullopt;
  }
  throw husts::Error(husts::ErrorCode::InvalidArgument, "unknown search mode");
}

husts_search_mode from_mode(husts::SearchMode mode) {
  switch (mode) {
    case husts::SearchMode::BruteForce: return HUSTS_SEARCH_BRUTE_FORCE;
    case husts::SearchMode::Greedy: return HUSTS_SEARCH_GREEDY;
    case husts::SearchMode::AlternatingBest: return HUSTS_SEARCH_ALTERNATING_BEST;
  }
  return HUSTS_SEARCH_AUTO;
}

husts::Perturbation to_perturbation(const husts_perturbation& p) {
  switch (p.kind) {
    case HUSTS_PATTERN_ALTERNATING:
      if (p.envelope < HUSTS_E1 || p.envelope > HUSTS_E3) break;
      return husts::Perturbation::alternating(
          p.epsilon, static_cast<husts::Envelope>(p.envelope), p.sign);
    case HUSTS_PATTERN_GREEDY:
      return husts::Perturbation::greedy(p.epsilon);
    case HUSTS_PATTERN_EXPLICIT:
      if (p.n_values != 0 && p.values == nullptr) break;
      return husts::Perturbation::explicit_values(
          p.epsilon, std::vector<double>(p.values, p.values + p.n_values));
    case HUSTS_PATTERN_RANDOM:
      return husts::Perturbation::random(p.epsilon, p.seed);
  }
  throw husts::Error(husts::ErrorCode::InvalidArgument,
                     "malformed perturbation description");
}

#define HUSTS_REQUIRE(ptr)                                              \
  do {                                                                  \
    if ((ptr) == nullptr) return fail(HUSTS_ERR_NULL_POINTER, #ptr " is null"); \
  } while (0)

}  // namespace

extern "C" {

const char* husts_version(void) { return "1.0.0"; }

const char* husts_last_error(void) { return g_last_error.c_str(); }

const char* husts_status_name(husts_status status) {
  switch (status) {
    case HUSTS_OK: return "ok";
    case HUSTS_ERR_INVALID_STEPS: return "invalid steps";
    case HUSTS_ERR_NON_REGRESSIVE: return "non-regressive";
    case HUSTS_ERR_NOT_CONVERGENT: return "not convergent";
    case HUSTS_ERR_OUT_OF_RANGE: return "out of range";
    case HUSTS_ERR_OUT_OF_REGIME: return "out of regime";
    case HUSTS_ERR_NOT_APPLICABLE: return "not applicable";
    case HUSTS_ERR_TOO_LARGE: return "too large";
    case HUSTS_ERR_PATTERN_LENGTH: return "pattern length mismatch";
    case HUSTS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case HUSTS_ERR_NULL_POINTER: return "null pointer";
    case HUSTS_ERR_BUFFER_TOO_SMALL: return "buffer too small";
    case HUSTS_ERR_INTERNAL: return "internal error";
  }
  return "unknown";
}

const char* husts_case_name(husts_case tag) {
  if (tag < HUSTS_CASE_A || tag > HUSTS_CASE_K) return "?";
  return husts::to_string(static_cast<husts::Case>(tag));
}

const char* husts_signature_name(husts_signature sig) {
  if (sig < HUSTS_SIG_POS_REGRESSIVE || sig > HUSTS_SIG_ZERO) return "?";
  return husts::to_string(static_cast<husts::ProductSignature>(sig));
}

const char* husts_reason_name(husts_reason reason) {
  if (reason < HUSTS_HAS_CONSTANT || reason > HUSTS_NOT_REGRESSIVE) return "?";
  return husts::to_string(static_cast<husts::Reason>(reason));
}

const char* husts_winner_name(husts_winner winner) {
  if (winner < HUSTS_WINNER_THEOREM || winner > HUSTS_WINNER_NONE) return "?";
  return husts::to_string(static_cast<husts::Winner>(winner));
}

const char* husts_search_mode_name(husts_search_mode mode) {
  if (mode == HUSTS_SEARCH_AUTO) return "auto";
  if (mode < HUSTS_SEARCH_BRUTE_FORCE || mode > HUSTS_SEARCH_AUTO) return "?";
  return husts::to_string(static_cast<husts::SearchMode>(mode));
}

husts_status husts_steps_create(double alpha, double beta, int strict,
                                husts_steps** out) {
  HUSTS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new husts_steps{husts::StepPair(alpha, beta, strict != 0)}; });
}

void husts_steps_destroy(husts_steps* steps) { delete steps; }

husts_status husts_steps_set_tolerance(husts_steps* steps, double tolerance) {
  HUSTS_REQUIRE(steps);
  if (!(tolerance >= 0.0 && tolerance < 1.0)) {
    return fail(HUSTS_ERR_INVALID_ARGUMENT, "tolerance must lie in [0, 1)");
  }
  steps->tolerance = tolerance;
  return HUSTS_OK;
}

double husts_steps_alpha(const husts_steps* steps) {
  return steps ? steps->pair.alpha() : 0.0;
}

double husts_steps_beta(const husts_steps* steps) {
  return steps ? steps->pair.beta() : 0.0;
}

husts_status husts_time(const husts_steps* steps, uint64_t k, husts_phase phase,
                        double* out) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(out);
  return guarded([&] { *out = steps->pair.time(point(k, phase)); });
}

husts_status husts_mu(const husts_steps* steps, uint64_t k, husts_phase phase,
                      double* out) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(out);
  return guarded([&] { *out = steps->pair.mu(point(k, phase)); });
}

husts_status husts_exp(const husts_steps* steps, double lambda, uint64_t k,
                       husts_phase phase, double* out) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(out);
  return guarded([&] { *out = husts::exp_lambda(steps->pair, lambda, point(k, phase)); });
}

husts_status husts_delta_sum_abs_exp(const husts_steps* steps, double lambda,
                                     uint64_t k, husts_phase phase, double* out) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(out);
  return guarded([&] {
    *out = husts::delta_sum_abs_exp(steps->pair, lambda, point(k, phase));
  });
}

husts_status husts_delta_sum_limit(const husts_steps* steps, double lambda,
                                   husts_phase phase, double* out) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(out);
  return guarded([&] {
    *out = husts::delta_sum_limit(steps->pair, lambda,
                                 phase == HUSTS_ODD ? husts::Phase::Odd : husts::Phase::Even);
  });
}

husts_status husts_thresholds_compute(const husts_steps* steps, double lambda,
                                      husts_thresholds* out) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(out);
  return guarded([&] { *out = to_c(husts::thresholds(steps->pair, lambda)); });
}

husts_status husts_classify(const husts_steps* steps, double lambda,
                            husts_case* tag, husts_thresholds* thresholds) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(tag);
  return guarded([&] {
    const auto label = husts::classify(steps->pair, lambda, steps->tolerance);
    *tag = static_cast<husts_case>(label.tag);
    if (thresholds) *thresholds = to_c(label.thresholds);
  });
}

husts_status husts_product_signature(const husts_steps* steps, double lambda,
                                     husts_signature* out) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(out);
  return guarded([&] {
    *out = static_cast<husts_signature>(husts::product_signature(steps->pair, lambda, steps->tolerance));
  });
}

husts_status husts_theorem_constant(const husts_steps* steps, double lambda,
                                    husts_verdict* out) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(out);
  return guarded([&] {
    const auto v = husts::theorem_constant(steps->pair, lambda, steps->tolerance);
    husts_verdict r{};
    r.tag = static_cast<husts_case>(v.label.tag);
    r.thresholds = to_c(v.label.thresholds);
    r.has_constant = v.constant.has_value() ? 1 : 0;
    r.constant = v.constant.value_or(0.0);
    r.minimal = v.minimal ? 1 : 0;
    r.reason = static_cast<husts_reason>(v.reason);
    *out = r;
  });
}

husts_status husts_andras_constant(const husts_steps* steps, double lambda,
                                   husts_andras* out) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(out);
  return guarded([&] {
    const auto k = husts::andras_constant(steps->pair, lambda);
    *out = {k.even_branch, k.odd_branch, k.sup_even, k.sup_odd, k.tail_even, k.tail_odd};
  });
}

husts_status husts_hz_reduction_check(double h, double lambda, double* reduced,
                                      double* onitsuka) {
  HUSTS_REQUIRE(reduced);
  HUSTS_REQUIRE(onitsuka);
  return guarded([&] {
    const auto r = husts::hz_reduction_check(h, lambda);
    *reduced = r.reduced;
    *onitsuka = r.onitsuka;
  });
}

husts_status husts_compare(const husts_steps* steps, const double* lambdas,
                           size_t count, husts_compare_row* rows) {
  HUSTS_REQUIRE(steps);
  if (count == 0) return fail(HUSTS_ERR_INVALID_ARGUMENT, "empty lambda list");
  HUSTS_REQUIRE(lambdas);
  HUSTS_REQUIRE(rows);
  return guarded([&] {
    const auto table = husts::compare_table(steps->pair, {lambdas, count}, steps->tolerance);
    for (size_t i = 0; i < count; ++i) {
      const auto& src = table[i];
      husts_compare_row r{};
      r.lambda = src.lambda;
      r.tag = static_cast<husts_case>(src.tag);
      r.has_theorem = src.theorem_constant.has_value() ? 1 : 0;
      r.theorem_constant = src.theorem_constant.value_or(0.0);
      r.has_andras = src.andras_even.has_value() ? 1 : 0;
      r.andras_even = src.andras_even.value_or(0.0);
      r.andras_odd = src.andras_odd.value_or(0.0);
      r.winner = static_cast<husts_winner>(src.winner);
      const size_t n = std::min(src.note.size(), sizeof(r.note) - 1);
      std::memcpy(r.note, src.note.data(), n);
      r.note[n] = '\0';
      rows[i] = r;
    }
  });
}

husts_status husts_integrate(const husts_steps* steps, double lambda, double phi0,
                             const husts_perturbation* perturbation,
                             size_t n_points, husts_trajectory** out) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(perturbation);
  HUSTS_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    auto traj = husts::integrate(steps->pair, lambda, phi0,
                                 to_perturbation(*perturbation), n_points);
    *out = new husts_trajectory{std::move(traj)};
  });
}

void husts_trajectory_destroy(husts_trajectory* traj) { delete traj; }

size_t husts_trajectory_size(const husts_trajectory* traj) {
  return traj ? traj->traj.phi.size() : 0;
}

husts_status husts_trajectory_phi(const husts_trajectory* traj, double* out,
                                  size_t capacity) {
  HUSTS_REQUIRE(traj);
  HUSTS_REQUIRE(out);
  const auto values = traj->traj.phi.values();
  if (capacity < values.size()) {
    return fail(HUSTS_ERR_BUFFER_TOO_SMALL, "phi buffer too small");
  }
  std::copy(values.begin(), values.end(), out);
  return HUSTS_OK;
}

husts_status husts_trajectory_q(const husts_trajectory* traj, double* out,
                                size_t capacity) {
  HUSTS_REQUIRE(traj);
  HUSTS_REQUIRE(out);
  const auto& q = traj->traj.q;
  if (capacity < q.size()) {
    return fail(HUSTS_ERR_BUFFER_TOO_SMALL, "q buffer too small");
  }
  std::copy(q.begin(), q.end(), out);
  return HUSTS_OK;
}

husts_status husts_best_fit(const husts_trajectory* traj, husts_fit* out) {
  HUSTS_REQUIRE(traj);
  HUSTS_REQUIRE(out);
  return guarded([&] {
    const auto fit = husts::best_fit(traj->traj);
    *out = {fit.c_star, fit.deviation, fit.ratio};
  });
}

husts_status husts_adversarial_lower_bound(const husts_steps* steps,
                                           double lambda, size_t n_points,
                                           husts_search_mode mode, double* ratio,
                                           int8_t* pattern, size_t capacity) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(ratio);
  if (pattern && n_points >= 1 && capacity < n_points - 1) {
    return fail(HUSTS_ERR_BUFFER_TOO_SMALL, "pattern buffer too small");
  }
  return guarded([&] {
    const auto resolved = to_mode(mode).value_or(
        n_points <= husts::kBruteForceMaxPoints ? husts::SearchMode::BruteForce
                                                : husts::SearchMode::Greedy);
    const auto lb = husts::adversarial_lower_bound(steps->pair, lambda, n_points, resolved);
    *ratio = lb.ratio;
    if (pattern) {
      std::transform(lb.pattern.begin(), lb.pattern.end(), pattern,
                     [](int s) { return static_cast<int8_t>(s); });
    }
  });
}

husts_status husts_verify_case(const husts_steps* steps, double lambda,
                               size_t n_points, husts_search_mode mode,
                               husts_verify_report* out) {
  HUSTS_REQUIRE(steps);
  HUSTS_REQUIRE(out);
  return guarded([&] {
    const auto rep = husts::verify_case(steps->pair, lambda, n_points, to_mode(mode),
                                        steps->tolerance);
    husts_verify_report r{};
    r.tag = static_cast<husts_case>(rep.label.tag);
    r.has_claimed = rep.claimed_constant.has_value() ? 1 : 0;
    r.claimed_constant = rep.claimed_constant.value_or(0.0);
    r.mode = from_mode(rep.mode);
    r.n_points = rep.n_points;
    r.empirical_lower_bound = rep.empirical_lower_bound;
    r.has_extended = rep.extended_lower_bound.has_value() ? 1 : 0;
    r.extended_lower_bound = rep.extended_lower_bound.value_or(0.0);
    r.margin = rep.margin;
    r.pass = rep.pass ? 1 : 0;
    *out = r;
  });
}

}  // extern "C"
