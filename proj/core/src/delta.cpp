#include "rinf/delta.hpp"

#include <algorithm>
#include <cmath>

namespace rinf {

namespace {

// Coordinates whose half-width is below this are pinned at the box center:
// their contribution to any of the corpus averages sits below representable
// precision.
constexpr double kFreezeHalfWidth = 1e-14;

void validate_schedule(std::span<const double> eps_schedule) {
  if (eps_schedule.empty()) throw DomainError("epsilon schedule is empty");
  double prev = kPosInf;
  for (const double e : eps_schedule) {
    if (!(e > 0.0) || !(e < prev))
      throw DomainError("epsilon schedule must be positive and strictly decreasing");
    prev = e;
  }
}

// The quadrature box for Delta_eps + shift over the first m coordinates.
// Frozen coordinates become degenerate intervals at the shift.
IntervalSeq quadrature_box(double eps, std::span<const double> shift, int m) {
  const DeltaBox box(eps);
  std::vector<Interval> coords;
  coords.reserve(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) {
    const double a = box.half_width(k);
    const double c = static_cast<std::size_t>(k) <= shift.size()
                         ? shift[static_cast<std::size_t>(k - 1)]
                         : 0.0;
    if (a < kFreezeHalfWidth) {
      coords.push_back({c, c});
    } else {
      coords.push_back({c - a, c + a});
    }
  }
  return IntervalSeq::truncated(std::move(coords));
}

// The bracket certificate is first order in the cuts while the midpoint
// estimate is second order, so chasing tiny bracket widths buys nothing and
// blows the cell budget in higher dimensions. Floor the certified width by
// dimension; reported values are far more accurate than the certificate.
double quad_floor(int m) {
  if (m <= 1) return 1e-6;
  if (m == 2) return 2e-3;
  return 2e-2;
}

double quad_tol(double tol, int m) { return std::max(tol / 10.0, quad_floor(m)); }

LimitEstimate shrink_boxes(const CylinderFn& f, std::span<const double> shift,
                           std::span<const double> eps_schedule, double tol) {
  validate_schedule(eps_schedule);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  std::vector<double> vals;
  std::vector<double> eps_used;
  for (const double eps : eps_schedule) {
    const IntervalSeq box = quadrature_box(eps, shift, std::max(1, f.effective_dim()));
    const double v = box_average(f, box, quad_tol(tol));
    vals.push_back(v);
    eps_used.push_back(eps);
    if (vals.size() >= 2) {
      const double gap = std::abs(vals[vals.size() - 1] - vals[vals.size() - 2]);
      if (gap < tol) return {v, std::move(eps_used), std::move(vals), {}, gap};
    }
  }
  throw ConvergenceError("box averages not Cauchy before the schedule ran out", vals);
}

}  // namespace

double nascent_eval(const NascentDelta& nd, std::span<const double> x) {
  return nd.box.contains(x) ? nd.log_height : kNegInf;
}

std::vector<double> default_eps_schedule() {
  std::vector<double> eps;
  for (int j = 1; j <= 12; ++j) eps.push_back(std::ldexp(1.0, -j));
  return eps;
}

std::vector<std::int64_t> default_n_schedule() { return {2, 3, 4, 5, 6, 7}; }

LimitEstimate delta_via_integral(const CylinderFn& f,
                                 std::span<const double> eps_schedule,
                                 double tol) {
  return shrink_boxes(f, {}, eps_schedule, tol);
}

LimitEstimate delta_via_families(const CylinderFn& f,
                                 std::span<const double> eps_schedule,
                                 std::span<const std::int64_t> n_schedule,
                                 double tol, std::int64_t budget) {
  validate_schedule(eps_schedule);
  if (n_schedule.empty()) throw DomainError("family schedule is empty");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  std::vector<double> outer_vals;
  std::vector<double> eps_used;
  std::vector<std::int64_t> n_used;
  for (const double eps : eps_schedule) {
    const IntervalSeq box = IntervalSeq::delta_box(eps);

    // inner limit over the family index
    std::vector<double> inner;
    std::vector<std::int64_t> inner_used;
    bool inner_cauchy = false;
    for (const std::int64_t n : n_schedule) {
      const double avg = family_average(vdc_family(box, n, budget), f);
      inner.push_back(avg);
      inner_used.push_back(n);
      if (inner.size() >= 2 &&
          std::abs(inner[inner.size() - 1] - inner[inner.size() - 2]) < tol / 2) {
        inner_cauchy = true;
        break;
      }
    }
    if (!inner_cauchy)
      throw ConvergenceError("family averages not Cauchy over the n schedule", inner);

    outer_vals.push_back(inner.back());
    eps_used.push_back(eps);
    n_used = std::move(inner_used);
    if (outer_vals.size() >= 2) {
      const double gap =
          std::abs(outer_vals[outer_vals.size() - 1] - outer_vals[outer_vals.size() - 2]);
      if (gap < tol / 2)
        return {outer_vals.back(), std::move(eps_used), std::move(outer_vals),
                std::move(n_used), gap};
    }
  }
  throw ConvergenceError("family averages not Cauchy before the epsilon schedule ran out",
                         outer_vals);
}

LimitEstimate sifting(const CylinderFn& f, std::span<const double> shift,
                      std::span<const double> eps_schedule, double tol) {
  return shrink_boxes(f, shift, eps_schedule, tol);
}

const char* to_string(ScalingStatus s) noexcept {
  switch (s) {
    case ScalingStatus::zero: return "zero";
    case ScalingStatus::one: return "one";
    case ScalingStatus::infinite: return "infinite";
  }
  return "unknown";
}

ScalingResult scaling_ratio(double alpha, std::int64_t depth, double eps) {
  if (alpha == 0.0 || std::isnan(alpha))
    throw DomainError("scaling factor must be nonzero");
  if (depth < 1) throw DomainError("depth must be positive");
  if (!(eps > 0.0)) throw DomainError("epsilon must be positive");

  // Coordinate by coordinate the scaled box divides the side by |alpha|, so
  // each of the first D coordinates contributes exactly -ln|alpha|.
  const double la = std::log(std::abs(alpha));
  KahanSum s;
  for (std::int64_t k = 0; k < depth; ++k) s.add(-la);

  ScalingStatus status = ScalingStatus::one;
  if (std::abs(alpha) > 1.0) status = ScalingStatus::zero;
  else if (std::abs(alpha) < 1.0) status = ScalingStatus::infinite;
  return {s.value(), status};
}

bool evenness_check(const CylinderFn& f, double eps, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const IntervalSeq box = quadrature_box(eps, {}, std::max(1, f.effective_dim()));
  const double direct = box_average(f, box, quad_tol(tol));
  const double mirrored = box_average(reflected_function(f), box, quad_tol(tol));
  return std::abs(direct - mirrored) <= tol;
}

}  // namespace rinf
