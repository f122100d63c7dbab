#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace husts {

// The two-step time scale {0, a, a+b, 2a+b, 2(a+b), ...} with alternating
// gaps a, b. Points are addressed as (cycle k, phase), never by raw t.

enum class Phase : std::uint8_t { Even, Odd };

struct GridPoint {
  std::uint64_t k = 0;
  Phase phase = Phase::Even;

  friend constexpr auto operator<=>(const GridPoint& a, const GridPoint& b) {
    if (auto c = a.k <=> b.k; c != 0) return c;
    return static_cast<int>(a.phase) <=> static_cast<int>(b.phase);
  }
  friend constexpr bool operator==(const GridPoint&, const GridPoint&) = default;
};

// Position of a point in the enumeration (0,E) (0,O) (1,E) ...
constexpr std::uint64_t index_of(GridPoint p) {
  return 2 * p.k + (p.phase == Phase::Odd ? 1 : 0);
}

constexpr GridPoint point_at(std::uint64_t index) {
  return {index / 2, (index % 2) ? Phase::Odd : Phase::Even};
}

// Forward jump.
constexpr GridPoint sigma(GridPoint p) {
  return p.phase == Phase::Even ? GridPoint{p.k, Phase::Odd}
                                : GridPoint{p.k + 1, Phase::Even};
}

inline constexpr double kRegressivityTolerance = 1e-12;

class StepPair {
 public:
  // Throws Error(InvalidSteps) unless alpha, beta > 0 (and alpha != beta
  // when strict).
  StepPair(double alpha, double beta, bool strict = true);

  // alpha == beta allowed; only meaningful for the hZ reduction identity.
  static StepPair relaxed(double alpha, double beta) {
    return StepPair(alpha, beta, false);
  }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  bool strict() const noexcept { return strict_; }
  double period() const noexcept { return alpha_ + beta_; }

  double time(GridPoint p) const noexcept;

  // Graininess: alpha on Even points, beta on Odd points.
  double mu(GridPoint p) const noexcept {
    return p.phase == Phase::Even ? alpha_ : beta_;
  }

 private:
  double alpha_;
  double beta_;
  bool strict_;
};

// Two-step growth factor (1 + lambda*alpha)(1 + lambda*beta).
double growth_product(const StepPair& steps, double lambda) noexcept;

bool is_regressive(const StepPair& steps, double lambda,
                   double tol = kRegressivityTolerance) noexcept;

// Throws Error(NonRegressive) when lambda is within `tol` of -1/alpha or
// -1/beta.
void require_regressive(const StepPair& steps, double lambda,
                        double tol = kRegressivityTolerance);

// Signed integer power by repeated squaring.
double signed_power(double base, std::uint64_t exponent) noexcept;

// e_lambda(t(p), 0).
double exp_lambda(const StepPair& steps, double lambda, GridPoint p,
                  double tol = kRegressivityTolerance);

// Samples of a real function on the first size() grid points, starting at
// (0, Even).
class GridFunction {
 public:
  GridFunction(StepPair steps, std::vector<double> values);

  static GridFunction sample(const StepPair& steps, std::size_t n_points,
                             const std::function<double(GridPoint)>& f);

  const StepPair& steps() const noexcept { return steps_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool contains(GridPoint p) const noexcept {
    return index_of(p) < values_.size();
  }

  // Throws Error(OutOfRange) for points past the last sample.
  double at(GridPoint p) const;

 private:
  StepPair steps_;
  std::vector<double> values_;
};

// (f(sigma(p)) - f(p)) / mu(p). Throws Error(OutOfRange) if sigma(p) has no
// sample.
double delta_derivative(const GridFunction& f, GridPoint p);

// Integral over [0, t(end)) of |e_lambda(t(end), sigma(s))| using the
// real-exponent form |p|^{(t - sigma(s)) / (alpha + beta)} of the exponential.
// Closed form, O(1).
double delta_sum_abs_exp(const StepPair& steps, double lambda, GridPoint end);

// Same quantity by summing mu(s) |p|^{(t - sigma(s)) / (alpha + beta)} over
// every grid point s before `end`. O(k); kept as a cross-check.
double delta_sum_abs_exp_direct(const StepPair& steps, double lambda,
                                GridPoint end);

// Limit of delta_sum_abs_exp as k -> infinity along one phase. Throws
// Error(NotConvergent) when |p| >= 1.
double delta_sum_limit(const StepPair& steps, double lambda, Phase phase);

}  // namespace husts
