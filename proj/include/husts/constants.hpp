#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "husts/classifier.hpp"

namespace husts {

enum class Reason : std::uint8_t { HasConstant, NoHus, NotRegressive };

const char* to_string(Reason r) noexcept;

struct HusVerdict {
  CaseLabel label;
  std::optional<double> constant;  // present iff case in A..I
  bool minimal = false;            // only case I is known to be minimal
  Reason reason = Reason::HasConstant;
};

// Closed-form HUS constant for the case of (steps, lambda); cases J and K
// come back without a constant.
HusVerdict theorem_constant(const StepPair& steps, double lambda,
                            double tol = kThresholdTolerance);

// sup |e_lambda| + sup of the Delta-integral, taken separately over the even
// points k(alpha+beta) and the odd points k(alpha+beta)+alpha.
struct AndrasConstant {
  double even_branch = 0.0;
  double odd_branch = 0.0;
  double sup_even = 0.0;
  double sup_odd = 0.0;
  double tail_even = 0.0;
  double tail_odd = 0.0;
};

// Throws Error(NotApplicable) when |(1+lambda alpha)(1+lambda beta)| >= 1
// and Error(NonRegressive) on -1/alpha, -1/beta.
AndrasConstant andras_constant(const StepPair& steps, double lambda);

// The G/H constant evaluated on alpha = beta = h next to the known minimum
// 1/|lambda + 2/h| for the uniform grid hZ.
struct HzReduction {
  double reduced = 0.0;
  double onitsuka = 0.0;
};

// Requires lambda < -1/h and lambda != -2/h; throws Error(OutOfRegime)
// otherwise.
HzReduction hz_reduction_check(double h, double lambda,
                               double tol = kThresholdTolerance);

enum class Winner : std::uint8_t { Theorem, Andras, Tie, None };

const char* to_string(Winner w) noexcept;

struct CompareRow {
  double lambda = 0.0;
  Case tag = Case::J;
  std::optional<double> theorem_constant;
  std::optional<double> andras_even;
  std::optional<double> andras_odd;
  Winner winner = Winner::None;
  std::string note;  // why a column is empty, if it is
};

// One row per lambda. The winner compares the theorem constant with the
// smaller of the two Andras branches.
CompareRow compare_row(const StepPair& steps, double lambda,
                       double tol = kThresholdTolerance);
std::vector<CompareRow> compare_table(const StepPair& steps,
                                      std::span<const double> lambdas,
                                      double tol = kThresholdTolerance);

}  // namespace husts
