#pragma once

// Per-coordinate uniformly distributed sequences and the product
// construction of finite point families in a rectangle: the family of index
// n takes the first n points of each of the first n coordinate sequences
// (n^n points) and pins every later coordinate at an anchor.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rinf/functions.hpp"
#include "rinf/rectangle.hpp"

namespace rinf {

enum class CoordKind { van_der_corput_base2, weyl_irrational, seeded_random };

class CoordSequence {
 public:
  static CoordSequence van_der_corput(Interval iv);
  // u_i = frac(i * multiplier); the default multiplier is the golden-ratio
  // conjugate.
  static CoordSequence weyl(Interval iv, double multiplier = 0.6180339887498949);
  static CoordSequence seeded(Interval iv, std::uint64_t seed);

  // i is 1-based; deterministic for fixed kind and parameters.
  double point(std::int64_t i) const;
  std::vector<double> points(std::int64_t count) const;

  CoordKind kind() const noexcept { return kind_; }
  const Interval& interval() const noexcept { return iv_; }

 private:
  CoordSequence(CoordKind kind, Interval iv, double multiplier, std::uint64_t seed);

  CoordKind kind_;
  Interval iv_;
  double multiplier_ = 0.0;
  std::uint64_t seed_ = 0;
};

// First `count` points of the sequence. Spec'd convenience form of
// CoordSequence::points.
std::vector<double> coord_points(const CoordSequence& seq, std::int64_t count);

class PointFamily {
 public:
  PointFamily(IntervalSeq parent, std::vector<std::vector<double>> coord_pts,
              std::function<double(std::int64_t)> anchor);

  std::int64_t n() const noexcept { return static_cast<std::int64_t>(pts_.size()); }
  std::int64_t size() const;  // n^n
  const IntervalSeq& parent() const noexcept { return parent_; }

  // The n stored points of coordinate k, 1 <= k <= n.
  std::span<const double> coordinate_points(std::int64_t k) const;

  // Pinned coordinate value for k > n.
  double anchor(std::int64_t k) const;

  // Visits all n^n points in a fixed odometer order (last coordinate
  // fastest). The visitor receives the first `dims` coordinates of each
  // point; coordinates beyond n are anchors.
  void for_each_point(int dims,
                      const std::function<void(std::span<const double>)>& visit) const;

 private:
  IntervalSeq parent_;
  std::vector<std::vector<double>> pts_;
  std::function<double(std::int64_t)> anchor_;
};

inline constexpr std::int64_t kDefaultFamilyBudget = 1'000'000;

// The product family Y_n: first n points of each of the first n coordinate
// sequences, anchors (interval midpoints by default) beyond. Throws
// BudgetError when n^n exceeds the budget.
PointFamily product_family(const IntervalSeq& rect,
                           std::span<const CoordSequence> seqs, std::int64_t n,
                           std::int64_t budget = kDefaultFamilyBudget);

// Same, with van der Corput sequences in every coordinate.
PointFamily vdc_family(const IntervalSeq& rect, std::int64_t n,
                       std::int64_t budget = kDefaultFamilyBudget);

// Exact counting ratio #(family cap U) / #family. Membership is half-open
// ([c, d)) on override coordinates so grid cells never double-count a
// boundary point. Counting factorizes over coordinates for these product
// families, so the ratio is exact even when n^n is huge.
double equidist_ratio(const PointFamily& fam, const ElementaryRect& u);

// Mean of f over the family, visiting all n^n points in a fixed order with
// compensated summation.
double family_average(const PointFamily& fam, const CylinderFn& f);

}  // namespace rinf
