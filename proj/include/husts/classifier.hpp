#pragma once

#include <cstdint>
#include <optional>

#include "husts/timescale.hpp"

namespace husts {

// Absolute band within which lambda snaps onto an exceptional value
// (0, lambda+-, -1/alpha - 1/beta, -1/alpha, -1/beta).
inline constexpr double kThresholdTolerance = 1e-9;

struct Thresholds {
  // Real roots of alpha*beta*l^2 + (alpha+beta)*l + 2 = 0, i.e. the lambdas
  // where (1+l*alpha)(1+l*beta) = -1. Present iff discriminant >= 0.
  std::optional<double> lambda_plus;
  std::optional<double> lambda_minus;
  double product = 0.0;        // (1+lambda*alpha)(1+lambda*beta)
  double neg_inv_alpha = 0.0;  // -1/alpha
  double neg_inv_beta = 0.0;   // -1/beta
  double neg_sum = 0.0;        // -1/alpha - 1/beta
  double discriminant = 0.0;   // alpha^2 + beta^2 - 6 alpha beta
};

enum class Case : std::uint8_t { A, B, C, D, E, F, G, H, I, J, K };

struct CaseLabel {
  Case tag;
  Thresholds thresholds;
};

enum class ProductSignature : std::uint8_t {
  PosRegressive,  // both factors positive
  InUnitNeg,      // -1 < p < 0
  BeyondUnitNeg,  // p < -1
  InUnitPos,      // 0 < p < 1, both factors negative
  BeyondUnitPos,  // p > 1, both factors negative
  OnUnit,         // |p| = 1
  Zero,           // p = 0
};

const char* to_string(Case c) noexcept;
const char* to_string(ProductSignature s) noexcept;

Thresholds thresholds(const StepPair& steps, double lambda);

// Priority K -> J -> I -> G/H -> A..F. Throws Error(InvalidSteps) for a
// relaxed pair (classification needs alpha != beta).
CaseLabel classify(const StepPair& steps, double lambda,
                   double tol = kThresholdTolerance);

ProductSignature product_signature(const StepPair& steps, double lambda,
                                   double tol = kThresholdTolerance);

}  // namespace husts
