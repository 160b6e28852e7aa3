#pragma once

// Block-diagonal linear maps acting on consecutive coordinate groups, their
// Jacobian products, and the change-of-variables law for rectangle
// measures: the image measure is the Jacobian product times the original
// measure.

#include <cstdint>
#include <vector>

#include "rinf/rectangle.hpp"

namespace rinf {

// Small dense square matrix, row-major.
struct Mat {
  std::int64_t n = 0;
  std::vector<double> a;

  static Mat identity(std::int64_t n);
  static Mat diagonal(std::vector<double> d);

  double at(std::int64_t i, std::int64_t j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  double& at(std::int64_t i, std::int64_t j) { return a[static_cast<std::size_t>(i * n + j)]; }
};

Mat matmul(const Mat& lhs, const Mat& rhs);

// Determinant by partial-pivot elimination. Blocks are capped at 16x16;
// a determinant below 1e-12 times the Hadamard row bound counts as
// singular.
double determinant(const Mat& m);

// Identity beyond the listed blocks.
class BlockLinearMap {
 public:
  explicit BlockLinearMap(std::vector<Mat> blocks);

  const std::vector<Mat>& blocks() const noexcept { return blocks_; }

  // Block sizes as the leading part of a grouping (singletons afterwards).
  GroupingAlpha natural_grouping() const;

 private:
  std::vector<Mat> blocks_;
};

struct JacobianProduct {
  std::vector<double> determinants;  // signed, one per block
  double log_abs_product = 0.0;      // sum of ln|det|; the tail contributes 0
};

// Per-block determinants; singular blocks raise DomainError.
JacobianProduct block_determinants(const BlockLinearMap& m);

// Measure of the image T(E). For diagonal and signed-permutation blocks the
// image rectangle is computed directly and checked in log space against the
// predicted (prod |det|) * measure(E); for general blocks the prediction is
// returned (the image of a rectangle is then no rectangle, and the law
// itself defines its measure).
MeasureValue map_rectangle_measure(const BlockLinearMap& m, const IntervalSeq& e,
                                   const GroupingAlpha& alpha,
                                   const ProductOptions& opt = {});

// Single n x n block with the grouping (n, 1, 1, ...): the classical
// |det|-scaling law as a special case of the block form.
MeasureValue baker_special_case(const Mat& t, const IntervalSeq& e,
                                const ProductOptions& opt = {});

}  // namespace rinf
