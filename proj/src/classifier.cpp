#include "husts/classifier.hpp"

#include <cmath>

#include "husts/error.hpp"

namespace husts {

const char* to_string(Case c) noexcept {
  static constexpr const char* kNames[] = {"A", "B", "C", "D", "E", "F",
                                           "G", "H", "I", "J", "K"};
  return kNames[static_cast<int>(c)];
}

const char* to_string(ProductSignature s) noexcept {
  switch (s) {
    case ProductSignature::PosRegressive: return "PosRegressive";
    case ProductSignature::InUnitNeg: return "InUnitNeg";
    case ProductSignature::BeyondUnitNeg: return "BeyondUnitNeg";
    case ProductSignature::InUnitPos: return "InUnitPos";
    case ProductSignature::BeyondUnitPos: return "BeyondUnitPos";
    case ProductSignature::OnUnit: return "OnUnit";
    case ProductSignature::Zero: return "Zero";
  }
  return "Unknown";
}

Thresholds thresholds(const StepPair& steps, double lambda) {
  const double a = steps.alpha();
  const double b = steps.beta();
  Thresholds th;
  th.product = growth_product(steps, lambda);
  th.neg_inv_alpha = -1.0 / a;
  th.neg_inv_beta = -1.0 / b;
  th.neg_sum = -1.0 / a - 1.0 / b;
  th.discriminant = a * a + b * b - 6.0 * a * b;
  if (th.discriminant >= 0.0) {
    // lambda- has no cancellation; lambda+ follows from the root product
    // 2 / (alpha beta), which avoids cancelling -(a+b) + sqrt(D).
    const double s = -(a + b) - std::sqrt(th.discriminant);
    th.lambda_minus = s / (2.0 * a * b);
    th.lambda_plus = 4.0 / s;
  }
  return th;
}

CaseLabel classify(const StepPair& steps, double lambda, double tol) {
  if (!steps.strict() || steps.alpha() == steps.beta()) {
    throw Error(ErrorCode::InvalidSteps,
                "classification requires two distinct step sizes");
  }
  const Thresholds th = thresholds(steps, lambda);
  const auto near = [tol, lambda](double target) {
    return std::abs(lambda - target) <= tol;
  };

  if (near(th.neg_inv_alpha) || near(th.neg_inv_beta)) return {Case::K, th};
  if (near(0.0) || near(th.neg_sum) ||
      (th.lambda_plus && (near(*th.lambda_plus) || near(*th.lambda_minus)))) {
    return {Case::J, th};
  }

  const double fa = 1.0 + lambda * steps.alpha();
  const double fb = 1.0 + lambda * steps.beta();
  if (fa > 0.0 && fb > 0.0) return {Case::I, th};
  if (fa < 0.0 && fb < 0.0) {
    return {lambda > th.neg_sum ? Case::G : Case::H, th};
  }

  // Opposite signs: lambda lies strictly between -1/alpha and -1/beta.
  const bool outside_roots =
      th.lambda_plus &&
      (lambda < *th.lambda_minus || lambda > *th.lambda_plus);
  if (steps.alpha() > steps.beta()) {
    if (!th.lambda_plus) return {Case::C, th};
    return {outside_roots ? Case::A : Case::B, th};
  }
  if (!th.lambda_plus) return {Case::F, th};
  return {outside_roots ? Case::D : Case::E, th};
}

ProductSignature product_signature(const StepPair& steps, double lambda,
                                   double tol) {
  const double p = growth_product(steps, lambda);
  if (std::abs(p) <= tol) return ProductSignature::Zero;
  if (std::abs(std::abs(p) - 1.0) <= tol) return ProductSignature::OnUnit;
  const double fa = 1.0 + lambda * steps.alpha();
  const double fb = 1.0 + lambda * steps.beta();
  if (fa > 0.0 && fb > 0.0) return ProductSignature::PosRegressive;
  if (p < 0.0) {
    return p > -1.0 ? ProductSignature::InUnitNeg
                    : ProductSignature::BeyondUnitNeg;
  }
  return p < 1.0 ? ProductSignature::InUnitPos
                 : ProductSignature::BeyondUnitPos;
}

}  // namespace husts
