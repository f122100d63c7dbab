#include "husts/constants.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "husts/error.hpp"

namespace husts {

const char* to_string(Reason r) noexcept {
  switch (r) {
    case Reason::HasConstant: return "HasConstant";
    case Reason::NoHus: return "NoHus";
    case Reason::NotRegressive: return "NotRegressive";
  }
  return "Unknown";
}

const char* to_string(Winner w) noexcept {
  switch (w) {
    case Winner::Theorem: return "theorem";
    case Winner::Andras: return "andras";
    case Winner::Tie: return "tie";
    case Winner::None: return "none";
  }
  return "unknown";
}

namespace {

// Shared by G and H; symmetric in alpha <-> beta.
double both_negative_constant(double a, double b, double lambda) {
  const double numerator =
      std::max(1.0 / b - 1.0 / a - lambda, 1.0 / a - 1.0 / b - lambda);
  return numerator / (std::abs(lambda) * std::abs(lambda + 1.0 / a + 1.0 / b));
}

}  // namespace

HusVerdict theorem_constant(const StepPair& steps, double lambda, double tol) {
  HusVerdict v{classify(steps, lambda, tol), std::nullopt, false,
               Reason::HasConstant};
  const double a = steps.alpha();
  const double b = steps.beta();
  const Thresholds& th = v.label.thresholds;

  // (lambda - lambda+)(lambda - lambda-), written without the roots so it
  // stays real when they are complex.
  const double root_product =
      (2.0 + a * lambda + b * lambda + a * b * lambda * lambda) / (a * b);
  const double shift_plus = lambda + 1.0 / a - 1.0 / b;   // A, B, C
  const double shift_minus = 1.0 / a - 1.0 / b - lambda;  // D, E, F

  switch (v.label.tag) {
    case Case::A:
      v.constant = std::abs(shift_plus) /
                   ((lambda - *th.lambda_plus) * (lambda - *th.lambda_minus));
      break;
    case Case::B:
      v.constant = std::abs(shift_plus / ((lambda - *th.lambda_plus) *
                                          (lambda - *th.lambda_minus)));
      break;
    case Case::C:
      v.constant = std::abs(shift_plus / root_product);
      break;
    case Case::D:
      v.constant = shift_minus /
                   ((lambda - *th.lambda_plus) * (lambda - *th.lambda_minus));
      break;
    case Case::E:
      v.constant = shift_minus / std::abs((lambda - *th.lambda_plus) *
                                          (lambda - *th.lambda_minus));
      break;
    case Case::F:
      v.constant = std::abs(shift_minus / root_product);
      break;
    case Case::G:
    case Case::H:
      v.constant = both_negative_constant(a, b, lambda);
      break;
    case Case::I:
      v.constant = 1.0 / std::abs(lambda);
      v.minimal = true;
      break;
    case Case::J:
      v.reason = Reason::NoHus;
      break;
    case Case::K:
      v.reason = Reason::NotRegressive;
      break;
  }
  return v;
}

AndrasConstant andras_constant(const StepPair& steps, double lambda) {
  require_regressive(steps, lambda);
  const double r = std::abs(growth_product(steps, lambda));
  if (!(r < 1.0)) {
    std::ostringstream msg;
    msg << "|(1+lambda*alpha)(1+lambda*beta)| = " << r
        << " >= 1; the Delta-integral term is unbounded";
    throw Error(ErrorCode::NotApplicable, msg.str());
  }
  AndrasConstant k;
  // |p|^k and |p|^k |1 + lambda alpha| both peak at k = 0.
  k.sup_even = 1.0;
  k.sup_odd = std::abs(1.0 + lambda * steps.alpha());
  k.tail_even = delta_sum_limit(steps, lambda, Phase::Even);
  k.tail_odd = delta_sum_limit(steps, lambda, Phase::Odd);
  k.even_branch = k.sup_even + k.tail_even;
  k.odd_branch = k.sup_odd + k.tail_odd;
  return k;
}

HzReduction hz_reduction_check(double h, double lambda, double tol) {
  if (!(std::isfinite(h) && h > 0.0)) {
    throw Error(ErrorCode::InvalidSteps, "h must be positive and finite");
  }
  if (!(lambda < -1.0 / h - tol) || std::abs(lambda + 2.0 / h) <= tol) {
    std::ostringstream msg;
    msg << "lambda=" << lambda << " is outside lambda < -1/h, lambda != -2/h"
        << " for h=" << h;
    throw Error(ErrorCode::OutOfRegime, msg.str());
  }
  const StepPair uniform = StepPair::relaxed(h, h);
  return {both_negative_constant(uniform.alpha(), uniform.beta(), lambda),
          1.0 / std::abs(lambda + 2.0 / h)};
}

CompareRow compare_row(const StepPair& steps, double lambda, double tol) {
  CompareRow row;
  row.lambda = lambda;
  const HusVerdict v = theorem_constant(steps, lambda, tol);
  row.tag = v.label.tag;
  row.theorem_constant = v.constant;
  if (v.reason == Reason::NoHus) {
    row.note = "no HUS";
  } else if (v.reason == Reason::NotRegressive) {
    row.note = "not regressive";
  } else {
    try {
      const AndrasConstant k = andras_constant(steps, lambda);
      row.andras_even = k.even_branch;
      row.andras_odd = k.odd_branch;
    } catch (const Error& e) {
      row.note = std::string("andras: ") + to_string(e.code());
    }
  }

  if (row.theorem_constant && row.andras_even) {
    const double andras = std::min(*row.andras_even, *row.andras_odd);
    if (*row.theorem_constant < andras) {
      row.winner = Winner::Theorem;
    } else if (andras < *row.theorem_constant) {
      row.winner = Winner::Andras;
    } else {
      row.winner = Winner::Tie;
    }
  } else if (row.theorem_constant) {
    row.winner = Winner::Theorem;
  } else if (row.andras_even) {
    row.winner = Winner::Andras;
  }
  return row;
}

std::vector<CompareRow> compare_table(const StepPair& steps,
                                      std::span<const double> lambdas,
                                      double tol) {
  std::vector<CompareRow> rows;
  rows.reserve(lambdas.size());
  for (double lambda : lambdas) rows.push_back(compare_row(steps, lambda, tol));
  return rows;
}

}  // namespace husts
