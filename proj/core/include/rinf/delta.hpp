#pragma once

// The nascent delta function on the shrinking boxes Delta_eps and the delta
// functional evaluated two ways: normalized box averages along a shrinking
// epsilon schedule, and double limits of averages over equidistributed
// point families inside the boxes.
//
// The box height e^{1/eps} and the box measure e^{-1/eps} cancel exactly in
// log space; no computation here ever forms either factor.

#include <cstdint>
#include <span>
#include <vector>

#include "rinf/equidist.hpp"
#include "rinf/functions.hpp"
#include "rinf/rectangle.hpp"
#include "rinf/riemann.hpp"

namespace rinf {

struct NascentDelta {
  explicit NascentDelta(double epsilon_in)
      : epsilon(epsilon_in), box(epsilon_in), log_height(1.0 / epsilon_in) {}

  double epsilon;
  DeltaBox box;
  double log_height;  // exactly -log lambda(Delta_eps)
};

// Log-space value of the nascent delta at a cylinder point: log_height
// inside the box, -inf outside. Membership is decidable in finite time for
// cylinder points since the zero tail always satisfies |0| <= a_k.
double nascent_eval(const NascentDelta& nd, std::span<const double> x);

struct LimitEstimate {
  double value = 0.0;
  std::vector<double> eps_used;
  std::vector<double> values;        // one estimate per epsilon used
  std::vector<std::int64_t> n_used;  // family sizes of the final inner limit
  double cauchy_gap = 0.0;           // last successive difference
};

// Geometric schedule 2^{-1}, ..., 2^{-12}.
std::vector<double> default_eps_schedule();
std::vector<std::int64_t> default_n_schedule();

// lim_{eps->0} of the normalized average of f over Delta_eps, stopping when
// successive values differ by less than tol. The limit is f(0). Throws
// ConvergenceError (carrying the partial estimates) when the schedule runs
// out first.
LimitEstimate delta_via_integral(const CylinderFn& f,
                                 std::span<const double> eps_schedule,
                                 double tol);

// The double limit: van der Corput product families inside Delta_eps,
// averaged over increasing n until Cauchy at tol/2, then over shrinking eps
// until Cauchy at tol/2.
LimitEstimate delta_via_families(const CylinderFn& f,
                                 std::span<const double> eps_schedule,
                                 std::span<const std::int64_t> n_schedule,
                                 double tol,
                                 std::int64_t budget = kDefaultFamilyBudget);

// Averages f over the translated boxes Delta_eps + shift; the limit is
// f(shift).
LimitEstimate sifting(const CylinderFn& f, std::span<const double> shift,
                      std::span<const double> eps_schedule, double tol);

enum class ScalingStatus { zero, one, infinite };

const char* to_string(ScalingStatus s) noexcept;

struct ScalingResult {
  double log_ratio = 0.0;  // log of the depth-D section of the measure ratio
  ScalingStatus status = ScalingStatus::one;
};

// Ratio lambda_D((1/alpha) Delta_eps) / lambda_D(Delta_eps) truncated at
// depth D: the log is exactly -D ln|alpha| coordinate by coordinate. The
// status classifies the depth -> infinity limit: 0 for |alpha| > 1, 1 for
// |alpha| = 1, +inf for |alpha| < 1.
ScalingResult scaling_ratio(double alpha, std::int64_t depth, double eps);

// Whether the Delta_eps averages of x -> f(-x) and of f agree within tol.
// The box is its own reflection, so they always should.
bool evenness_check(const CylinderFn& f, double eps, double tol);

}  // namespace rinf
