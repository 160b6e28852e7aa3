#include "rinf/functions.hpp"

#include <cmath>
#include <map>
#include <utility>

namespace rinf {

CylinderFn::CylinderFn(std::string name, int effective_dim, Eval eval,
                       std::optional<double> lipschitz)
    : name_(std::move(name)), m_(effective_dim), eval_(std::move(eval)),
      lipschitz_(lipschitz) {
  if (m_ < 0) throw DomainError("effective dimension must be non-negative");
  if (!eval_) throw DomainError("cylinder function needs an evaluator");
}

double CylinderFn::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) < m_)
    throw DomainError("cylinder function '" + name_ + "' needs " +
                      std::to_string(m_) + " coordinates");
  return eval_(x.first(static_cast<std::size_t>(m_)));
}

double CylinderFn::at_zero() const {
  const std::vector<double> zeros(static_cast<std::size_t>(m_), 0.0);
  return eval_(zeros);
}

CylinderFn make_const(double c) {
  return CylinderFn("const_" + std::to_string(c), 0,
                    [c](std::span<const double>) { return c; }, 0.0);
}

namespace {

std::map<std::string, CylinderFn, std::less<>> build_registry() {
  std::map<std::string, CylinderFn, std::less<>> reg;
  auto put = [&reg](CylinderFn f) { reg.emplace(f.name(), std::move(f)); };
  put(CylinderFn("const_1", 0, [](std::span<const double>) { return 1.0; }, 0.0));
  put(CylinderFn("const_7", 0, [](std::span<const double>) { return 7.0; }, 0.0));
  put(CylinderFn("proj_1", 1, [](std::span<const double> x) { return x[0]; }, 1.0));
  put(CylinderFn("proj_2", 2, [](std::span<const double> x) { return x[1]; }, 1.0));
  put(CylinderFn("sum_12", 2,
                 [](std::span<const double> x) { return x[0] + x[1]; }, 2.0));
  put(CylinderFn("prod_12", 2,
                 [](std::span<const double> x) { return x[0] * x[1]; }, 2.0));
  put(CylinderFn("cos_1", 1,
                 [](std::span<const double> x) { return std::cos(x[0]); }, 1.0));
  put(CylinderFn("exp_1", 1,
                 [](std::span<const double> x) { return std::exp(x[0]); },
                 std::exp(1.0)));
  return reg;
}

}  // namespace

const CylinderFn& find_function(std::string_view name) {
  static const auto registry = build_registry();
  const auto it = registry.find(name);
  if (it == registry.end())
    throw DomainError("unknown function '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> function_names() {
  static const auto registry = build_registry();
  std::vector<std::string> names;
  names.reserve(registry.size());
  for (const auto& [name, fn] : registry) names.push_back(name);
  return names;
}

CylinderFn shifted_function(const CylinderFn& f, std::vector<double> t) {
  const int m = f.effective_dim();
  return CylinderFn(
      f.name() + "_shifted", m,
      [f, t = std::move(t), m](std::span<const double> x) {
        std::vector<double> y(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i)
          y[static_cast<std::size_t>(i)] =
              x[static_cast<std::size_t>(i)] +
              (i < static_cast<int>(t.size()) ? t[static_cast<std::size_t>(i)] : 0.0);
        return f(y);
      },
      f.lipschitz());
}

CylinderFn reflected_function(const CylinderFn& f) {
  const int m = f.effective_dim();
  return CylinderFn(
      f.name() + "_reflected", m,
      [f, m](std::span<const double> x) {
        std::vector<double> y(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) y[static_cast<std::size_t>(i)] = -x[static_cast<std::size_t>(i)];
        return f(y);
      },
      f.lipschitz());
}

CylinderFn linear_combination(double a, const CylinderFn& f, double b,
                              const CylinderFn& g) {
  const int m = std::max(f.effective_dim(), g.effective_dim());
  std::optional<double> lip;
  if (f.lipschitz() && g.lipschitz())
    lip = std::abs(a) * *f.lipschitz() + std::abs(b) * *g.lipschitz();
  return CylinderFn(
      "combo", m,
      [a, f, b, g](std::span<const double> x) { return a * f(x) + b * g(x); },
      lip);
}

}  // namespace rinf
