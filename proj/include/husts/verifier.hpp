#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "husts/classifier.hpp"
#include "husts/timescale.hpp"

namespace husts {

// Sign envelopes used to seed alternating perturbations. Only their sign
// structure matters; each is scaled to +-epsilon.
//   E1: (-1)^k (l + 1/a + 1/b) on even points, (-1)^k (l + 1/a - 1/b) on odd
//   E2: (-1)^k (1/a - 1/b - l) on even points, (-1)^k (1/a + 1/b + l) on odd
//   E3:        (1/a - 1/b - l) on even points,        (1/a - 1/b + l) on odd
enum class Envelope : std::uint8_t { E1, E2, E3 };

const char* to_string(Envelope e) noexcept;

// +1 or -1 (zero maps to +1).
int envelope_sign(const StepPair& steps, double lambda, Envelope envelope,
                  GridPoint p) noexcept;

class Perturbation {
 public:
  struct Alternating {
    Envelope envelope;
    int sign;  // +1 or -1
  };
  // Sign chosen per step to push away from the running best fit.
  struct Greedy {};
  struct Explicit {
    std::vector<double> values;
  };
  struct Random {
    std::uint64_t seed;
  };
  using Pattern = std::variant<Alternating, Greedy, Explicit, Random>;

  static Perturbation alternating(double epsilon, Envelope envelope, int sign);
  static Perturbation greedy(double epsilon);
  // Throws Error(InvalidArgument) if any |value| > epsilon.
  static Perturbation explicit_values(double epsilon, std::vector<double> values);
  static Perturbation random(double epsilon, std::uint64_t seed);

  double epsilon() const noexcept { return epsilon_; }
  const Pattern& pattern() const noexcept { return pattern_; }

 private:
  Perturbation(double epsilon, Pattern pattern);

  double epsilon_;
  Pattern pattern_;
};

struct Trajectory {
  StepPair steps;
  double lambda;
  double epsilon;
  GridFunction phi;       // perturbed solution on n points
  std::vector<double> q;  // realized perturbation, n - 1 values
};

// phi(sigma(p)) = (1 + lambda mu(p)) phi(p) + mu(p) q(p), phi(0) = phi0.
Trajectory integrate(const StepPair& steps, double lambda, double phi0,
                     const Perturbation& perturbation, std::size_t n_points);

struct FitResult {
  double c_star = 0.0;     // initial value of the closest exact solution
  double deviation = 0.0;  // max_n |phi_n - c_star e_n|
  double ratio = 0.0;      // deviation / epsilon
};

// Minimises max_n |phi_n - c e_n| over c. `exp_values` must be nonzero.
FitResult best_fit(std::span<const double> phi, std::span<const double> exp_values,
                   double epsilon);
FitResult best_fit(const Trajectory& traj);

enum class SearchMode : std::uint8_t { BruteForce, Greedy, AlternatingBest };

const char* to_string(SearchMode m) noexcept;

inline constexpr std::size_t kBruteForceMaxPoints = 16;

struct LowerBound {
  double ratio = 0.0;
  std::vector<int> pattern;  // signs of q, n_points - 1 entries of +-1
};

// Largest deviation/epsilon found over q in {-eps, +eps}^(n-1), phi0 = 0.
// BruteForce throws Error(TooLarge) past kBruteForceMaxPoints; ties resolve
// to the lexicographically smallest pattern (-1 < +1).
LowerBound adversarial_lower_bound(const StepPair& steps, double lambda,
                                   std::size_t n_points, SearchMode mode);

struct VerifyReport {
  CaseLabel label;
  std::optional<double> claimed_constant;
  SearchMode mode = SearchMode::BruteForce;
  std::size_t n_points = 0;
  double empirical_lower_bound = 0.0;
  // Case J only: greedy ratio at 2 * n_points.
  std::optional<double> extended_lower_bound;
  // A..I: claimed - bound. J: relative growth from n to 2n. K: 0.
  double margin = 0.0;
  bool pass = false;
};

// Relative growth between n and 2n points that counts as divergence.
inline constexpr double kGrowthThreshold = 0.05;

// `mode` defaults to BruteForce when n_points fits, Greedy otherwise.
VerifyReport verify_case(const StepPair& steps, double lambda,
                         std::size_t n_points,
                         std::optional<SearchMode> mode = std::nullopt,
                         double tol = kThresholdTolerance);

}  // namespace husts
