#pragma once

#include <cmath>
#include <limits>

namespace rinf {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInf = std::numeric_limits<double>::infinity();
inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Neumaier-compensated running sum. Summation order is the caller's
// responsibility; results are reproducible for a fixed order.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

  void reset() noexcept { sum_ = 0.0; comp_ = 0.0; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace rinf
