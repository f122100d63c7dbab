#include "husts/timescale.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "husts/error.hpp"

namespace husts {

StepPair::StepPair(double alpha, double beta, bool strict)
    : alpha_(alpha), beta_(beta), strict_(strict) {
  if (!(std::isfinite(alpha) && std::isfinite(beta) && alpha > 0 && beta > 0)) {
    std::ostringstream msg;
    msg << "step sizes must be positive and finite (alpha=" << alpha
        << ", beta=" << beta << ")";
    throw Error(ErrorCode::InvalidSteps, msg.str());
  }
  if (strict && alpha == beta) {
    throw Error(ErrorCode::InvalidSteps,
                "step sizes must differ (alpha == beta)");
  }
}

double StepPair::time(GridPoint p) const noexcept {
  const double base = static_cast<double>(p.k) * period();
  return p.phase == Phase::Even ? base : base + alpha_;
}

double growth_product(const StepPair& steps, double lambda) noexcept {
  return (1.0 + lambda * steps.alpha()) * (1.0 + lambda * steps.beta());
}

bool is_regressive(const StepPair& steps, double lambda, double tol) noexcept {
  return std::abs(lambda + 1.0 / steps.alpha()) > tol &&
         std::abs(lambda + 1.0 / steps.beta()) > tol;
}

void require_regressive(const StepPair& steps, double lambda, double tol) {
  if (!is_regressive(steps, lambda, tol)) {
    std::ostringstream msg;
    msg << "lambda=" << lambda << " is not regressive: 1 + lambda*mu(t) = 0";
    throw Error(ErrorCode::NonRegressive, msg.str());
  }
}

double signed_power(double base, std::uint64_t exponent) noexcept {
  double result = 1.0;
  while (exponent != 0) {
    if (exponent & 1u) result *= base;
    base *= base;
    exponent >>= 1u;
  }
  return result;
}

double exp_lambda(const StepPair& steps, double lambda, GridPoint p,
                  double tol) {
  require_regressive(steps, lambda, tol);
  const double cycle = signed_power(growth_product(steps, lambda), p.k);
  return p.phase == Phase::Even ? cycle
                                : cycle * (1.0 + lambda * steps.alpha());
}

GridFunction::GridFunction(StepPair steps, std::vector<double> values)
    : steps_(steps), values_(std::move(values)) {
  if (values_.size() < 2) {
    throw Error(ErrorCode::InvalidArgument,
                "a grid function needs at least two samples");
  }
}

GridFunction GridFunction::sample(const StepPair& steps, std::size_t n_points,
                                  const std::function<double(GridPoint)>& f) {
  std::vector<double> values(n_points);
  for (std::size_t i = 0; i < n_points; ++i) values[i] = f(point_at(i));
  return GridFunction(steps, std::move(values));
}

double GridFunction::at(GridPoint p) const {
  const auto i = index_of(p);
  if (i >= values_.size()) {
    std::ostringstream msg;
    msg << "grid point (" << p.k << ", "
        << (p.phase == Phase::Even ? "Even" : "Odd")
        << ") is past the last of " << values_.size() << " samples";
    throw Error(ErrorCode::OutOfRange, msg.str());
  }
  return values_[i];
}

double delta_derivative(const GridFunction& f, GridPoint p) {
  const GridPoint next = sigma(p);
  return (f.at(next) - f.at(p)) / f.steps().mu(p);
}

namespace {

// (r^k - 1) / (r - 1) for r > 0, accurate near r = 1.
double geometric_sum(double r, std::uint64_t k) {
  const double x = r - 1.0;
  if (x == 0.0) return static_cast<double>(k);
  return std::expm1(static_cast<double>(k) * std::log1p(x)) / x;
}

}  // namespace

double delta_sum_abs_exp(const StepPair& steps, double lambda, GridPoint end) {
  require_regressive(steps, lambda);
  const double a = steps.alpha();
  const double b = steps.beta();
  const double r = std::abs(growth_product(steps, lambda));
  if (end.phase == Phase::Even) {
    return geometric_sum(r, end.k) * (a * std::pow(r, b / (a + b)) + b);
  }
  return b * std::pow(r, a / (a + b)) * geometric_sum(r, end.k) +
         a * geometric_sum(r, end.k + 1);
}

double delta_sum_abs_exp_direct(const StepPair& steps, double lambda,
                                GridPoint end) {
  require_regressive(steps, lambda);
  const double r = std::abs(growth_product(steps, lambda));
  const double t_end = steps.time(end);
  const auto n = index_of(end);
  double total = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    const GridPoint s = point_at(i);
    const double exponent = (t_end - steps.time(sigma(s))) / steps.period();
    total += steps.mu(s) * std::pow(r, exponent);
  }
  return total;
}

double delta_sum_limit(const StepPair& steps, double lambda, Phase phase) {
  require_regressive(steps, lambda);
  const double a = steps.alpha();
  const double b = steps.beta();
  const double r = std::abs(growth_product(steps, lambda));
  if (!(r < 1.0)) {
    std::ostringstream msg;
    msg << "|(1+lambda*alpha)(1+lambda*beta)| = " << r
        << " >= 1; the sum diverges";
    throw Error(ErrorCode::NotConvergent, msg.str());
  }
  if (phase == Phase::Even) return (b + a * std::pow(r, b / (a + b))) / (1.0 - r);
  return (a + b * std::pow(r, a / (a + b))) / (1.0 - r);
}

}  // namespace husts
