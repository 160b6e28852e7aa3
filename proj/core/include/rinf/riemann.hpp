#pragma once

// Grid partitions of a rectangle over its first m coordinates, Darboux
// bracketing with deterministic cell sampling, and the
// refine-until-the-bracket-closes Riemann integral for cylinder functions.
//
// Cells carry closed intervals but tile the rectangle half-open: adjacent
// cells share endpoints, and all point counting elsewhere uses [c, d).

#include <cstdint>
#include <utility>
#include <vector>

#include "rinf/equidist.hpp"
#include "rinf/functions.hpp"
#include "rinf/rectangle.hpp"

namespace rinf {

struct DarbouxBracket {
  double lower = 0.0;
  double upper = 0.0;
  double mesh = 0.0;
};

// Uniform grid over the first m coordinates; the tail stays whole. All
// cells share one log measure exactly.
class Partition {
 public:
  const IntervalSeq& parent() const noexcept { return parent_; }
  int gridded_coords() const noexcept { return m_; }
  std::int64_t cuts() const noexcept { return cuts_; }
  std::int64_t cell_count() const noexcept;

  // Interval of the j-th slice (0-based) along coordinate k, 1 <= k <= m.
  Interval slice(int k, std::int64_t j) const;

  // Cell by flat index; coordinate 1 varies slowest.
  ElementaryRect cell(std::int64_t flat) const;

 private:
  friend Partition grid_partition(const IntervalSeq&, int, std::int64_t, std::int64_t);
  Partition(IntervalSeq parent, int m, std::int64_t cuts);

  IntervalSeq parent_;
  int m_;
  std::int64_t cuts_;
  std::vector<Interval> base_;  // intervals of the gridded coordinates
};

inline constexpr std::int64_t kDefaultCellBudget = 1'000'000;

// cuts^m congruent cells over the first m coordinates. The gridded
// coordinates must be non-degenerate.
Partition grid_partition(const IntervalSeq& rect, int m, std::int64_t cuts,
                         std::int64_t budget = kDefaultCellBudget);

// Tychonoff diameter of an elementary rectangle, tail truncated once the
// geometric bound falls below tail_tol.
double cell_diameter(const ElementaryRect& u, double tail_tol = 1e-12);

// Largest cell diameter. Cells of a uniform grid are congruent, so this is
// a single diameter evaluation.
double mesh(const Partition& p, double tail_tol = 1e-12);

// Upper/lower Darboux sums with per-cell extrema estimated over a
// deterministic sample lattice (cell corners plus the midpoint at minimum;
// samples_per_cell asks for a denser lattice). Extrema are exact for
// coordinate-monotone integrands, estimates otherwise.
DarbouxBracket darboux(const CylinderFn& f, const Partition& p,
                       int samples_per_cell = 5);

// One refinement level of the normalized quadrature trace.
struct RefineStep {
  std::int64_t cuts = 0;
  double lower = 0.0;
  double upper = 0.0;
  double midpoint = 0.0;
};

// Average of f over the rectangle, (R)integral f dlambda / lambda(rect),
// computed with per-cell weights prod 1/cuts that never touch the measure
// itself (safe for boxes whose measure underflows). Doubles the cuts until
// the normalized Darboux width drops below tol.
double box_average(const CylinderFn& f, const IntervalSeq& rect, double tol,
                   std::vector<RefineStep>* trace = nullptr,
                   std::int64_t budget = kDefaultCellBudget);

// Absolute Riemann integral: box_average times the rectangle measure
// (ordinary, singleton blocks). The rectangle must have nonzero measure.
double riemann_integral(const CylinderFn& f, const IntervalSeq& rect, double tol);

// Both sides of the equidistribution identity at family index n: the mean
// of f over the van der Corput product family, and the integral-to-measure
// ratio.
std::pair<double, double> average_vs_integral(const CylinderFn& f,
                                              const IntervalSeq& rect,
                                              std::int64_t n);

// Walks the segment from zmin to zmax by bisection until |f(c) - u| <= tol.
// Requires f(zmin) <= u <= f(zmax); the segment stays inside the rectangle
// by convexity. Coordinates beyond both spans are zero.
std::vector<double> intermediate_value_point(const CylinderFn& f,
                                             const IntervalSeq& rect, double u,
                                             std::span<const double> zmin,
                                             std::span<const double> zmax,
                                             double tol, int max_iter = 200);

}  // namespace rinf
