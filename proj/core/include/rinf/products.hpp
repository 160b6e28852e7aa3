#pragma once

// Ordinary and standard infinite products of non-negative factors, with and
// without grouping of consecutive factors into blocks.
//
// Everything runs on logarithms: a factor beta becomes ln(beta), a factor of
// 0 becomes -inf and a factor of +inf becomes +inf. Products whose value
// underflows double precision (down to e^{-4096} and far beyond) keep a
// finite, meaningful log even when the reported value is 0.

#include <cstdint>
#include <functional>
#include <vector>

#include "rinf/errors.hpp"
#include "rinf/numeric.hpp"

namespace rinf {

enum class TailKind {
  constant_one,  // factors are exactly 1 beyond the declared depth
  closed_form,   // the generator is defined for every index
  truncated,     // nothing is known beyond the declared depth
};

// An infinite sequence of factors beta_k >= 0 (k is 1-based), addressed
// through ln(beta_k).
class FactorSeq {
 public:
  using LogGenerator = std::function<double(std::int64_t)>;

  static FactorSeq from_logs(LogGenerator log_gen,
                             TailKind tail = TailKind::closed_form,
                             std::int64_t depth = 0);

  // Wraps a value-space generator; negative or NaN factors raise DomainError
  // when the offending index is evaluated.
  static FactorSeq from_values(std::function<double(std::int64_t)> gen,
                               TailKind tail = TailKind::closed_form,
                               std::int64_t depth = 0);

  // ln(beta_k). Throws TailUnspecifiedError for a truncated tail beyond
  // depth and DomainError when the generator yields NaN.
  double log_factor(std::int64_t k) const;

  TailKind tail() const noexcept { return tail_; }
  std::int64_t depth() const noexcept { return depth_; }

 private:
  FactorSeq(LogGenerator g, TailKind tail, std::int64_t depth);

  LogGenerator log_gen_;
  TailKind tail_;
  std::int64_t depth_;
};

// A partition of the coordinate indices {1,2,3,...} into consecutive blocks
// F_1, F_2, ... of sizes n_1, n_2, .... Described by a finite prefix of
// sizes followed by a size that repeats forever.
class GroupingAlpha {
 public:
  GroupingAlpha(std::vector<std::int64_t> prefix, std::int64_t repeating);

  static GroupingAlpha ones() { return GroupingAlpha({}, 1); }
  static GroupingAlpha constant(std::int64_t n) { return GroupingAlpha({}, n); }
  // (n, 1, 1, ...): one leading block of size n, singletons after.
  static GroupingAlpha leading_block(std::int64_t n) { return GroupingAlpha({n}, 1); }

  // j is 1-based.
  std::int64_t block_size(std::int64_t j) const;
  // First coordinate index of block j (1-based).
  std::int64_t block_start(std::int64_t j) const;

  bool is_ones() const noexcept;
  const std::vector<std::int64_t>& prefix() const noexcept { return prefix_; }
  std::int64_t repeating() const noexcept { return repeating_; }

 private:
  std::vector<std::int64_t> prefix_;
  std::vector<std::int64_t> prefix_cum_;  // cumulative sizes of the prefix
  std::int64_t repeating_;
};

enum class ProductStatus { converged, zero, infinite, oscillating };

const char* to_string(ProductStatus s) noexcept;

struct ProductResult {
  ProductStatus status = ProductStatus::zero;

  // Value-space result: the limit for converged, 0 for zero, NaN otherwise.
  double value = 0.0;

  // Log-space result. Finite whenever the partial log sums stabilized, even
  // when the value itself is below tolerance (status zero); -inf for a
  // genuine zero, +inf for infinite, NaN for oscillating.
  double log_value = kNegInf;

  std::int64_t partials_inspected = 0;
};

struct ProductOptions {
  double tol = 1e-10;
  std::int64_t max_terms = 1'000'000;
};

enum class ProductMode { ordinary, standard };

// Limit of the partial products prod_{i<=n} beta_i. Stops early when the
// partial log sums are Cauchy over a 16-term window (both the largest single
// step and the window span below tol); otherwise classifies the tail
// behaviour seen at the max_terms horizon. A converged value <= tol is
// reported as zero, with the finite log retained.
ProductResult ordinary_product(const FactorSeq& f, const ProductOptions& opt = {});

// e^{sum ln beta_i}, defined as 0 as soon as the sum of the negative
// logarithms alone falls below -1/tol. Unlike the ordinary product this has
// no early convergence exit (apart from an exactly-constant tail): whether
// the negative part diverges can only be judged at the horizon.
ProductResult standard_product(const FactorSeq& f, const ProductOptions& opt = {});

// Factor sequence of exact block products B_j = prod_{i in F_j} beta_i,
// computed as compensated sums of logs in ascending block order.
FactorSeq grouped_factors(const FactorSeq& f, const GroupingAlpha& alpha);

// Ordinary or standard product of the block factors B_j. max_terms counts
// blocks. Blocks must always be reduced in ascending order; the limit is an
// ordered one.
ProductResult grouped_product(const FactorSeq& f, const GroupingAlpha& alpha,
                              ProductMode mode, const ProductOptions& opt = {});

}  // namespace rinf
