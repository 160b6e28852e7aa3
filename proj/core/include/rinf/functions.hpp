#pragma once

// Continuous cylinder functions: functions on the sequence space that read
// only their first m coordinates. A small registry of named functions backs
// the command-line experiments.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rinf/errors.hpp"

namespace rinf {

class CylinderFn {
 public:
  using Eval = std::function<double(std::span<const double>)>;

  CylinderFn(std::string name, int effective_dim, Eval eval,
             std::optional<double> lipschitz = std::nullopt);

  // x must supply at least effective_dim() coordinates.
  double operator()(std::span<const double> x) const;

  // Value at the origin.
  double at_zero() const;

  int effective_dim() const noexcept { return m_; }
  const std::string& name() const noexcept { return name_; }

  // Modulus-of-continuity bound on the unit cube, when one is known. Kept
  // as metadata for reporting; the quadrature never assumes it.
  std::optional<double> lipschitz() const noexcept { return lipschitz_; }

 private:
  std::string name_;
  int m_;
  Eval eval_;
  std::optional<double> lipschitz_;
};

// Named functions: const_1, const_7, proj_1, proj_2, sum_12, prod_12,
// cos_1, exp_1. Throws DomainError for unknown names.
const CylinderFn& find_function(std::string_view name);
std::vector<std::string> function_names();

CylinderFn make_const(double c);

// g(x) = f(x + t) for a cylinder shift t.
CylinderFn shifted_function(const CylinderFn& f, std::vector<double> t);

// g(x) = f(-x).
CylinderFn reflected_function(const CylinderFn& f);

// a*f + b*g.
CylinderFn linear_combination(double a, const CylinderFn& f, double b,
                              const CylinderFn& g);

}  // namespace rinf
