#include "rinf/products.hpp"

#include <algorithm>
#include <cmath>

namespace rinf {

namespace {

constexpr int kWindow = 16;  // stabilization window (number of steps)

// Ring buffer holding the last kWindow+1 partial log sums.
class PartialWindow {
 public:
  void push(double v) {
    buf_[next_] = v;
    next_ = (next_ + 1) % kCap;
    if (size_ < kCap) ++size_;
  }

  bool full() const noexcept { return size_ == kCap; }
  int size() const noexcept { return size_; }

  double newest() const { return at(size_ - 1); }
  double oldest() const { return at(0); }

  double max_step() const {
    double m = 0.0;
    for (int i = 1; i < size_; ++i) m = std::max(m, std::abs(at(i) - at(i - 1)));
    return m;
  }

  double span() const { return std::abs(newest() - oldest()); }

  // Mean of the newest kWindow partials (all entries while filling).
  double window_mean() const {
    const int n = std::min(size_, kWindow);
    KahanSum s;
    for (int i = size_ - n; i < size_; ++i) s.add(at(i));
    return s.value() / n;
  }

  double max() const {
    double m = at(0);
    for (int i = 1; i < size_; ++i) m = std::max(m, at(i));
    return m;
  }

  double min() const {
    double m = at(0);
    for (int i = 1; i < size_; ++i) m = std::min(m, at(i));
    return m;
  }

  bool nonincreasing() const {
    for (int i = 1; i < size_; ++i)
      if (at(i) > at(i - 1)) return false;
    return true;
  }

  bool nondecreasing() const {
    for (int i = 1; i < size_; ++i)
      if (at(i) < at(i - 1)) return false;
    return true;
  }

 private:
  static constexpr int kCap = kWindow + 1;

  double at(int i) const { return buf_[(next_ + kCap - size_ + i) % kCap]; }

  double buf_[kCap] = {};
  int size_ = 0;
  int next_ = 0;
};

void validate(const ProductOptions& opt) {
  if (!(opt.tol > 0.0)) throw DomainError("tolerance must be positive");
  if (opt.max_terms < 2) throw DomainError("max_terms must be at least 2");
}

ProductResult make_converged_or_zero(double log_value, double tol,
                                     std::int64_t inspected) {
  const double v = std::exp(log_value);
  if (v > tol) return {ProductStatus::converged, v, log_value, inspected};
  return {ProductStatus::zero, 0.0, log_value, inspected};
}

ProductResult make_zero(std::int64_t inspected) {
  return {ProductStatus::zero, 0.0, kNegInf, inspected};
}

ProductResult make_infinite(std::int64_t inspected) {
  return {ProductStatus::infinite, kNaN, kPosInf, inspected};
}

// Classification after the term budget is exhausted without an early exit.
// Sustained monotone drift past the tolerance horizon is divergence to 0 or
// +inf; a window spread larger than 10*tol with no trend is oscillation;
// anything else is taken as converged, reported as the window mean (the
// mean damps the O(1/n) wobble of slowly alternating partials).
ProductResult horizon_result(const PartialWindow& w, const ProductOptions& opt,
                             std::int64_t inspected) {
  const double ln_tol = std::log(opt.tol);
  const double net = w.newest() - w.oldest();
  if (net < -10.0 * opt.tol && w.nonincreasing() && w.max() < ln_tol)
    return make_zero(inspected);
  if (net > 10.0 * opt.tol && w.nondecreasing() && w.min() > -ln_tol)
    return make_infinite(inspected);
  if (w.max() - w.min() > 10.0 * opt.tol)
    return {ProductStatus::oscillating, kNaN, kNaN, inspected};
  return make_converged_or_zero(w.window_mean(), opt.tol, inspected);
}

}  // namespace

FactorSeq::FactorSeq(LogGenerator g, TailKind tail, std::int64_t depth)
    : log_gen_(std::move(g)), tail_(tail), depth_(depth) {
  if (depth_ < 0) throw DomainError("depth must be non-negative");
}

FactorSeq FactorSeq::from_logs(LogGenerator log_gen, TailKind tail,
                               std::int64_t depth) {
  return FactorSeq(std::move(log_gen), tail, depth);
}

FactorSeq FactorSeq::from_values(std::function<double(std::int64_t)> gen,
                                 TailKind tail, std::int64_t depth) {
  auto log_gen = [g = std::move(gen)](std::int64_t k) {
    const double b = g(k);
    if (std::isnan(b) || b < 0.0)
      throw DomainError("factor at index " + std::to_string(k) +
                        " is negative or NaN");
    return std::log(b);
  };
  return FactorSeq(std::move(log_gen), tail, depth);
}

double FactorSeq::log_factor(std::int64_t k) const {
  if (k < 1) throw DomainError("factor indices are 1-based");
  if (k > depth_) {
    if (tail_ == TailKind::constant_one) return 0.0;
    if (tail_ == TailKind::truncated) throw TailUnspecifiedError(k, depth_);
  }
  const double lb = log_gen_(k);
  if (std::isnan(lb))
    throw DomainError("log factor at index " + std::to_string(k) + " is NaN");
  return lb;
}

GroupingAlpha::GroupingAlpha(std::vector<std::int64_t> prefix,
                             std::int64_t repeating)
    : prefix_(std::move(prefix)), repeating_(repeating) {
  if (repeating_ < 1) throw DomainError("block sizes must be positive");
  prefix_cum_.reserve(prefix_.size());
  std::int64_t c = 0;
  for (std::int64_t n : prefix_) {
    if (n < 1) throw DomainError("block sizes must be positive");
    c += n;
    prefix_cum_.push_back(c);
  }
}

std::int64_t GroupingAlpha::block_size(std::int64_t j) const {
  if (j < 1) throw DomainError("block indices are 1-based");
  if (j <= static_cast<std::int64_t>(prefix_.size())) return prefix_[j - 1];
  return repeating_;
}

std::int64_t GroupingAlpha::block_start(std::int64_t j) const {
  if (j < 1) throw DomainError("block indices are 1-based");
  const auto p = static_cast<std::int64_t>(prefix_.size());
  if (j <= p) return (j == 1 ? 0 : prefix_cum_[j - 2]) + 1;
  const std::int64_t before_prefix = prefix_.empty() ? 0 : prefix_cum_.back();
  return before_prefix + (j - 1 - p) * repeating_ + 1;
}

bool GroupingAlpha::is_ones() const noexcept {
  if (repeating_ != 1) return false;
  return std::all_of(prefix_.begin(), prefix_.end(),
                     [](std::int64_t n) { return n == 1; });
}

const char* to_string(ProductStatus s) noexcept {
  switch (s) {
    case ProductStatus::converged: return "converged";
    case ProductStatus::zero: return "zero";
    case ProductStatus::infinite: return "infinite";
    case ProductStatus::oscillating: return "oscillating";
  }
  return "unknown";
}

ProductResult ordinary_product(const FactorSeq& f, const ProductOptions& opt) {
  validate(opt);
  KahanSum sum;
  PartialWindow w;
  for (std::int64_t n = 1; n <= opt.max_terms; ++n) {
    const double lb = f.log_factor(n);
    if (lb == kNegInf) return make_zero(n);
    if (lb == kPosInf) return make_infinite(n);
    sum.add(lb);
    w.push(sum.value());

    // An exactly-constant tail pins the limit at the current partial.
    if (f.tail() == TailKind::constant_one && n >= f.depth())
      return make_converged_or_zero(sum.value(), opt.tol, n);

    if (w.full() && w.max_step() < opt.tol && w.span() < opt.tol)
      return make_converged_or_zero(w.window_mean(), opt.tol, n);
  }
  return horizon_result(w, opt, opt.max_terms);
}

ProductResult standard_product(const FactorSeq& f, const ProductOptions& opt) {
  validate(opt);
  const double neg_horizon = -1.0 / opt.tol;
  KahanSum neg, pos;
  PartialWindow w;
  for (std::int64_t n = 1; n <= opt.max_terms; ++n) {
    const double lb = f.log_factor(n);
    if (lb == kNegInf) return make_zero(n);  // a zero factor wins immediately
    if (lb == kPosInf) return make_infinite(n);
    (lb < 0.0 ? neg : pos).add(lb);
    if (neg.value() < neg_horizon) return make_zero(n);
    w.push(neg.value() + pos.value());

    if (f.tail() == TailKind::constant_one && n >= f.depth())
      return make_converged_or_zero(neg.value() + pos.value(), opt.tol, n);
  }
  if (w.full() && w.max_step() < opt.tol && w.span() < opt.tol)
    return make_converged_or_zero(w.window_mean(), opt.tol, opt.max_terms);
  return horizon_result(w, opt, opt.max_terms);
}

FactorSeq grouped_factors(const FactorSeq& f, const GroupingAlpha& alpha) {
  // Map the tail description onto block indices.
  TailKind tail = f.tail();
  std::int64_t block_depth = 0;
  if (tail != TailKind::closed_form) {
    // Number of blocks needed before the tail rule takes over: for a
    // constant-one tail, the first block starting beyond depth is the first
    // all-one block; for a truncated tail, the last block that ends within
    // depth is the last computable one.
    std::int64_t j = 1;
    while (true) {
      const std::int64_t start = alpha.block_start(j);
      const std::int64_t end = start + alpha.block_size(j) - 1;
      if (tail == TailKind::constant_one) {
        if (start > f.depth()) break;
        block_depth = j;
      } else {
        if (end > f.depth()) break;
        block_depth = j;
      }
      ++j;
    }
  }

  auto gen = [f, alpha](std::int64_t j) {
    const std::int64_t start = alpha.block_start(j);
    const std::int64_t size = alpha.block_size(j);
    KahanSum block;
    bool has_zero = false, has_inf = false;
    for (std::int64_t i = start; i < start + size; ++i) {
      const double lb = f.log_factor(i);
      if (lb == kNegInf) { has_zero = true; continue; }
      if (lb == kPosInf) { has_inf = true; continue; }
      block.add(lb);
    }
    if (has_zero && has_inf)
      throw DomainError("block " + std::to_string(j) +
                        " multiplies a zero factor with an infinite one");
    if (has_zero) return kNegInf;
    if (has_inf) return kPosInf;
    return block.value();
  };
  return FactorSeq::from_logs(std::move(gen), tail, block_depth);
}

ProductResult grouped_product(const FactorSeq& f, const GroupingAlpha& alpha,
                              ProductMode mode, const ProductOptions& opt) {
  const FactorSeq blocks = grouped_factors(f, alpha);
  return mode == ProductMode::ordinary ? ordinary_product(blocks, opt)
                                       : standard_product(blocks, opt);
}

}  // namespace rinf
