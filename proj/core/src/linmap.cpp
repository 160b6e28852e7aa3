#include "rinf/linmap.hpp"

#include <algorithm>
#include <cmath>

namespace rinf {

namespace {

constexpr std::int64_t kMaxBlockSize = 16;
constexpr double kSingularRel = 1e-12;

void validate(const Mat& m) {
  if (m.n < 1) throw DomainError("blocks must be at least 1x1");
  if (m.n > kMaxBlockSize) throw DomainError("blocks are capped at 16x16");
  if (m.a.size() != static_cast<std::size_t>(m.n * m.n))
    throw DomainError("matrix storage does not match its size");
}

double hadamard_scale(const Mat& m) {
  double scale = 1.0;
  for (std::int64_t i = 0; i < m.n; ++i) {
    double row = 0.0;
    for (std::int64_t j = 0; j < m.n; ++j) row += m.at(i, j) * m.at(i, j);
    scale *= std::sqrt(row);
  }
  return scale;
}

bool is_diagonal(const Mat& m) {
  for (std::int64_t i = 0; i < m.n; ++i)
    for (std::int64_t j = 0; j < m.n; ++j)
      if (i != j && m.at(i, j) != 0.0) return false;
  return true;
}

// Signed permutation: exactly one +-1 per row and column, zero elsewhere.
bool is_signed_permutation(const Mat& m, std::vector<std::int64_t>* perm,
                           std::vector<double>* sign) {
  perm->assign(static_cast<std::size_t>(m.n), -1);
  sign->assign(static_cast<std::size_t>(m.n), 0.0);
  std::vector<bool> used(static_cast<std::size_t>(m.n), false);
  for (std::int64_t i = 0; i < m.n; ++i) {
    std::int64_t hit = -1;
    for (std::int64_t j = 0; j < m.n; ++j) {
      const double v = m.at(i, j);
      if (v == 0.0) continue;
      if (std::abs(v) != 1.0 || hit >= 0) return false;
      hit = j;
    }
    if (hit < 0 || used[static_cast<std::size_t>(hit)]) return false;
    used[static_cast<std::size_t>(hit)] = true;
    (*perm)[static_cast<std::size_t>(i)] = hit;
    (*sign)[static_cast<std::size_t>(i)] = m.at(i, hit);
  }
  return true;
}

Interval scaled_interval(const Interval& iv, double d) {
  const double a = d * iv.lo;
  const double b = d * iv.hi;
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace

Mat Mat::identity(std::int64_t n) {
  Mat m{n, std::vector<double>(static_cast<std::size_t>(n * n), 0.0)};
  for (std::int64_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat Mat::diagonal(std::vector<double> d) {
  const auto n = static_cast<std::int64_t>(d.size());
  Mat m{n, std::vector<double>(static_cast<std::size_t>(n * n), 0.0)};
  for (std::int64_t i = 0; i < n; ++i) m.at(i, i) = d[static_cast<std::size_t>(i)];
  return m;
}

Mat matmul(const Mat& lhs, const Mat& rhs) {
  validate(lhs);
  validate(rhs);
  if (lhs.n != rhs.n) throw DomainError("matrix sizes differ");
  Mat out{lhs.n, std::vector<double>(static_cast<std::size_t>(lhs.n * lhs.n), 0.0)};
  for (std::int64_t i = 0; i < lhs.n; ++i)
    for (std::int64_t k = 0; k < lhs.n; ++k) {
      const double v = lhs.at(i, k);
      if (v == 0.0) continue;
      for (std::int64_t j = 0; j < lhs.n; ++j) out.at(i, j) += v * rhs.at(k, j);
    }
  return out;
}

double determinant(const Mat& m) {
  validate(m);
  Mat w = m;
  double det = 1.0;
  for (std::int64_t col = 0; col < w.n; ++col) {
    std::int64_t pivot = col;
    for (std::int64_t r = col + 1; r < w.n; ++r)
      if (std::abs(w.at(r, col)) > std::abs(w.at(pivot, col))) pivot = r;
    if (w.at(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (std::int64_t j = 0; j < w.n; ++j) std::swap(w.at(pivot, j), w.at(col, j));
      det = -det;
    }
    det *= w.at(col, col);
    for (std::int64_t r = col + 1; r < w.n; ++r) {
      const double factor = w.at(r, col) / w.at(col, col);
      if (factor == 0.0) continue;
      for (std::int64_t j = col; j < w.n; ++j) w.at(r, j) -= factor * w.at(col, j);
    }
  }
  return det;
}

BlockLinearMap::BlockLinearMap(std::vector<Mat> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw DomainError("a block map needs at least one block");
  for (const Mat& b : blocks_) validate(b);
}

GroupingAlpha BlockLinearMap::natural_grouping() const {
  std::vector<std::int64_t> sizes;
  sizes.reserve(blocks_.size());
  for (const Mat& b : blocks_) sizes.push_back(b.n);
  return GroupingAlpha(std::move(sizes), 1);
}

JacobianProduct block_determinants(const BlockLinearMap& m) {
  JacobianProduct jac;
  KahanSum logs;
  for (std::size_t i = 0; i < m.blocks().size(); ++i) {
    const Mat& b = m.blocks()[i];
    const double det = determinant(b);
    if (std::abs(det) <= kSingularRel * hadamard_scale(b))
      throw DomainError("block " + std::to_string(i + 1) + " is singular");
    jac.determinants.push_back(det);
    logs.add(std::log(std::abs(det)));
  }
  jac.log_abs_product = logs.value();
  return jac;
}

MeasureValue map_rectangle_measure(const BlockLinearMap& m, const IntervalSeq& e,
                                   const GroupingAlpha& alpha,
                                   const ProductOptions& opt) {
  const JacobianProduct jac = block_determinants(m);
  const MeasureValue source = rect_measure(e, alpha, ProductMode::ordinary, opt);
  const MeasureValue predicted{jac.log_abs_product + source.log_value, source.status};

  // For diagonal and signed-permutation blocks the image is itself a
  // rectangle; build it with log sides derived from the source so the
  // comparison below is a machine-precision identity, not a tolerance call.
  bool exact_image = true;
  std::vector<double> diag;        // per-coordinate scale factor
  std::vector<std::int64_t> from;  // per-coordinate source index (permutations)
  std::int64_t offset = 0;
  for (const Mat& b : m.blocks()) {
    std::vector<std::int64_t> perm;
    std::vector<double> sign;
    if (is_diagonal(b)) {
      for (std::int64_t i = 0; i < b.n; ++i) {
        diag.push_back(b.at(i, i));
        from.push_back(offset + i + 1);
      }
    } else if (is_signed_permutation(b, &perm, &sign)) {
      for (std::int64_t i = 0; i < b.n; ++i) {
        diag.push_back(sign[static_cast<std::size_t>(i)]);
        from.push_back(offset + perm[static_cast<std::size_t>(i)] + 1);
      }
    } else {
      exact_image = false;
      break;
    }
    offset += b.n;
  }
  if (!exact_image) return predicted;

  const auto mapped = static_cast<std::int64_t>(diag.size());
  auto intervals = [e, diag, from, mapped](std::int64_t k) {
    if (k > mapped) return e.interval(k);
    const auto i = static_cast<std::size_t>(k - 1);
    return scaled_interval(e.interval(from[i]), diag[i]);
  };
  auto log_sides = [e, diag, from, mapped](std::int64_t k) {
    if (k > mapped) return e.log_side(k);
    const auto i = static_cast<std::size_t>(k - 1);
    return e.log_side(from[i]) + std::log(std::abs(diag[i]));
  };
  const IntervalSeq image = IntervalSeq::closed_form(std::move(intervals), std::move(log_sides));
  const MeasureValue direct = rect_measure(image, alpha, ProductMode::ordinary, opt);

  const bool both_zero = direct.log_value == kNegInf && predicted.log_value == kNegInf;
  if (!both_zero && !(std::abs(direct.log_value - predicted.log_value) <= 1e-12))
    throw std::logic_error("image measure disagrees with the Jacobian prediction");
  return direct;
}

MeasureValue baker_special_case(const Mat& t, const IntervalSeq& e,
                                const ProductOptions& opt) {
  const BlockLinearMap m({t});
  return map_rectangle_measure(m, e, GroupingAlpha::leading_block(t.n), opt);
}

}  // namespace rinf
