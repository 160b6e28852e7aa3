#pragma once

// Infinite-dimensional rectangles prod [a_k, b_k], elementary rectangles
// differing from a parent in finitely many coordinates, the shrinking
// symmetric boxes used by the delta functional, and rectangle measures
// evaluated through grouped products of side lengths.
//
// Side lengths are carried in log space end to end: the box with epsilon =
// 2^{-12} has sides as small as e^{-2048}, far below the smallest positive
// double, yet its log measure (-4096) stays exact.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "rinf/products.hpp"

namespace rinf {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  double midpoint() const noexcept { return lo + 0.5 * (hi - lo); }
};

// prod_{k>=1} [a_k, b_k], given by an explicit finite prefix plus a tail
// rule. For closed-form tails an exact log side length may be supplied
// separately from the interval itself.
class IntervalSeq {
 public:
  using IntervalFn = std::function<Interval(std::int64_t)>;
  using LogSideFn = std::function<double(std::int64_t)>;

  static IntervalSeq unit_cube();
  static IntervalSeq with_unit_tail(std::vector<Interval> coords);
  static IntervalSeq truncated(std::vector<Interval> coords);
  static IntervalSeq closed_form(IntervalFn intervals, LogSideFn log_sides = {});

  // prod [0, e^{(-1)^k/k}]: the rectangle whose ordinary measure is 1/2
  // while its standard measure is 0.
  static IntervalSeq alternating_harmonic();

  // The symmetric box prod [-a_k, a_k] with a_k = e^{-1/(2^k eps)}/2.
  static IntervalSeq delta_box(double epsilon);

  Interval interval(std::int64_t k) const;
  double log_side(std::int64_t k) const;

  // constant_one stands for a unit tail ([0,1] beyond depth).
  TailKind tail() const noexcept { return tail_; }
  std::int64_t depth() const noexcept { return depth_; }

  // Cylinder shift: coordinate k moves by t[k-1] (zero beyond the vector).
  // Log sides are delegated to the parent, so measures are preserved
  // exactly, not merely up to rounding.
  IntervalSeq shifted(std::vector<double> t) const;

  // Side lengths as a factor sequence, ready for grouped products.
  FactorSeq side_factors() const;

 private:
  IntervalSeq() = default;

  IntervalFn interval_fn_;
  LogSideFn log_side_fn_;
  TailKind tail_ = TailKind::constant_one;
  std::int64_t depth_ = 0;
};

// An elementary rectangle: a parent with finitely many coordinates replaced
// by [c_k, d_k], a_k <= c_k < d_k <= b_k.
class ElementaryRect {
 public:
  ElementaryRect(IntervalSeq parent, std::map<std::int64_t, Interval> overrides);

  const IntervalSeq& parent() const noexcept { return parent_; }
  const std::map<std::int64_t, Interval>& overrides() const noexcept { return overrides_; }

  // The interval of this set at coordinate k (override or parent).
  Interval interval(std::int64_t k) const;
  std::int64_t max_override_index() const noexcept;

 private:
  IntervalSeq parent_;
  std::map<std::int64_t, Interval> overrides_;
};

// The box Delta_eps = prod [-a_k(eps), a_k(eps)], a_k(eps) = e^{-1/(2^k eps)}/2.
class DeltaBox {
 public:
  explicit DeltaBox(double epsilon);

  double epsilon() const noexcept { return epsilon_; }
  double half_width(std::int64_t k) const;  // may underflow to 0 for small k
  double log_side(std::int64_t k) const;    // exact: -1/(2^k eps)
  double log_measure() const noexcept { return -1.0 / epsilon_; }  // closed form

  // Membership of a cylinder point (zero coordinates beyond the span).
  bool contains(std::span<const double> x) const;

  IntervalSeq to_rectangle() const;

 private:
  double epsilon_;
};

struct MeasureValue {
  // -inf encodes measure zero; finite values are kept even when the measure
  // itself underflows the status tolerance.
  double log_value = kNegInf;
  ProductStatus status = ProductStatus::zero;

  double value() const noexcept { return std::exp(log_value); }
};

// Measure of a rectangle: the grouped product of its side lengths. Ordinary
// mode realizes the ordinary grouped measure, standard mode the standard
// one. An oscillating side product means the rectangle has no measure of
// the requested kind and raises RectangleClassError.
MeasureValue rect_measure(const IntervalSeq& r, const GroupingAlpha& alpha,
                          ProductMode mode, const ProductOptions& opt = {});

// Measure of an elementary rectangle: override lengths spliced into the
// parent's factor sequence.
MeasureValue elementary_measure(const ElementaryRect& u, const GroupingAlpha& alpha,
                                ProductMode mode, const ProductOptions& opt = {});

// sum_k |x_k - y_k| / (2^k (1 + |x_k - y_k|)) for cylinder points (zero
// coordinates beyond each span). The tail contributes exactly zero, so the
// sum is finite.
double tychonoff_distance(std::span<const double> x, std::span<const double> y);

// Tychonoff diameter of Delta_eps, truncated once the geometric tail bound
// sum_{k>K} 2^{-k} drops below tail_tol. Under-approximates by less than
// tail_tol.
double delta_box_diameter(double eps, double tail_tol);

// Do the two rectangle-normalized evaluations of x agree in log space
// within tol? Each side evaluates measure(R) * prod_k len(x_k cap R_k) /
// len(R_k), with x cut down to r1 cap r2 first. Requires unit tails beyond
// the explicit prefixes on both rectangles.
bool consistency_check(const IntervalSeq& r1, const IntervalSeq& r2,
                       const ElementaryRect& x, const GroupingAlpha& alpha,
                       ProductMode mode, double tol = 1e-10,
                       const ProductOptions& opt = {});

}  // namespace rinf
