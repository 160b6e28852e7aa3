#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rinf {

// Invalid input values or violated preconditions (negative factors,
// malformed intervals, empty intersections, zero scaling factors, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A truncated sequence was asked for a term beyond its declared depth.
class TailUnspecifiedError : public DomainError {
 public:
  TailUnspecifiedError(std::int64_t index, std::int64_t depth)
      : DomainError("term " + std::to_string(index) +
                    " requested from a sequence truncated at depth " +
                    std::to_string(depth)),
        index_(index),
        depth_(depth) {}

  std::int64_t index() const noexcept { return index_; }
  std::int64_t depth() const noexcept { return depth_; }

 private:
  std::int64_t index_;
  std::int64_t depth_;
};

// A computation would exceed its configured size budget (point families,
// partition cell counts, refinement rounds).
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::int64_t requested, std::int64_t limit)
      : std::runtime_error(what + " (requested " + std::to_string(requested) +
                           ", budget " + std::to_string(limit) + ")"),
        requested_(requested),
        limit_(limit) {}

  std::int64_t requested() const noexcept { return requested_; }
  std::int64_t limit() const noexcept { return limit_; }

 private:
  std::int64_t requested_;
  std::int64_t limit_;
};

// The side-length product of a rectangle oscillates, so the rectangle has no
// measure of the requested kind.
class RectangleClassError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative limit failed to become Cauchy before its schedule ran out.
// Carries the partial estimates produced so far.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> partials)
      : std::runtime_error(what), partials_(std::move(partials)) {}

  const std::vector<double>& partial_estimates() const noexcept { return partials_; }

 private:
  std::vector<double> partials_;
};

}  // namespace rinf
