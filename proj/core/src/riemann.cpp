#include "rinf/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace rinf {

namespace {

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  double h = 0.0;
  std::int64_t cuts = 1;
};

// Degenerate coordinates collapse to a single slice pinned at lo.
std::vector<GridAxis> make_axes(const IntervalSeq& rect, int dims,
                                std::int64_t cuts) {
  std::vector<GridAxis> axes(static_cast<std::size_t>(dims));
  for (int k = 1; k <= dims; ++k) {
    const Interval iv = rect.interval(k);
    auto& ax = axes[static_cast<std::size_t>(k - 1)];
    ax.lo = iv.lo;
    ax.hi = iv.hi;
    if (iv.length() > 0.0) {
      ax.cuts = cuts;
      ax.h = iv.length() / static_cast<double>(cuts);
    } else {
      ax.cuts = 1;
      ax.h = 0.0;
    }
  }
  return axes;
}

std::int64_t axes_cell_count(const std::vector<GridAxis>& axes) {
  constexpr std::int64_t cap = std::numeric_limits<std::int64_t>::max() / 4;
  std::int64_t total = 1;
  for (const auto& ax : axes) {
    if (total > cap / std::max<std::int64_t>(ax.cuts, 1)) return cap;
    total *= ax.cuts;
  }
  return total;
}

struct NormalizedSums {
  double lower = 0.0;
  double upper = 0.0;
  double midpoint = 0.0;
};

// Darboux and midpoint sums with the cell weight prod_k 1/cuts_k factored
// out analytically: the box measure never appears.
NormalizedSums normalized_sums(const CylinderFn& f,
                               const std::vector<GridAxis>& axes,
                               int samples_per_cell) {
  const auto dims = static_cast<int>(axes.size());

  // Per-axis sample offsets within a cell, in units of h: endpoints plus
  // the center, densified when more samples are requested.
  int per_axis = 2;
  if (dims > 0 && samples_per_cell > (1 << dims) + 1) {
    per_axis = std::max(
        2, static_cast<int>(std::ceil(std::pow(static_cast<double>(samples_per_cell),
                                               1.0 / dims))));
  }
  std::vector<double> offsets;
  for (int j = 0; j < per_axis; ++j)
    offsets.push_back(static_cast<double>(j) / static_cast<double>(per_axis - 1));
  offsets.push_back(0.5);

  double weight = 1.0;
  for (const auto& ax : axes) weight /= static_cast<double>(ax.cuts);

  std::vector<std::int64_t> idx(static_cast<std::size_t>(dims), 0);
  std::vector<double> x(static_cast<std::size_t>(dims), 0.0);
  KahanSum lower, upper, mid;

  const std::int64_t cells = axes_cell_count(axes);
  for (std::int64_t c = 0; c < cells; ++c) {
    // extrema over the sample lattice of this cell
    double mn = 0.0, mx = 0.0;
    bool first = true;
    std::vector<std::size_t> s(static_cast<std::size_t>(dims), 0);
    while (true) {
      for (int k = 0; k < dims; ++k) {
        const auto& ax = axes[static_cast<std::size_t>(k)];
        const double base = ax.lo + static_cast<double>(idx[static_cast<std::size_t>(k)]) * ax.h;
        x[static_cast<std::size_t>(k)] =
            ax.h == 0.0 ? ax.lo : base + offsets[s[static_cast<std::size_t>(k)]] * ax.h;
      }
      const double v = f(x);
      if (first) {
        mn = mx = v;
        first = false;
      } else {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
      }
      int pos = dims;
      bool done = true;
      while (pos > 0) {
        --pos;
        if (++s[static_cast<std::size_t>(pos)] < offsets.size()) {
          done = false;
          break;
        }
        s[static_cast<std::size_t>(pos)] = 0;
      }
      if (dims == 0 || done) break;
    }
    lower.add(mn);
    upper.add(mx);

    for (int k = 0; k < dims; ++k) {
      const auto& ax = axes[static_cast<std::size_t>(k)];
      x[static_cast<std::size_t>(k)] =
          ax.h == 0.0
              ? ax.lo
              : ax.lo + (static_cast<double>(idx[static_cast<std::size_t>(k)]) + 0.5) * ax.h;
    }
    mid.add(f(x));

    int pos = dims;
    while (pos > 0) {
      --pos;
      if (++idx[static_cast<std::size_t>(pos)] < axes[static_cast<std::size_t>(pos)].cuts) break;
      idx[static_cast<std::size_t>(pos)] = 0;
    }
  }

  return {lower.value() * weight, upper.value() * weight, mid.value() * weight};
}

double diameter_from_lengths(const std::function<double(std::int64_t)>& length,
                             double tail_tol) {
  if (!(tail_tol > 0.0)) throw DomainError("tail tolerance must be positive");
  int depth = 1;
  while (std::ldexp(1.0, -depth) >= tail_tol && depth < 4096) ++depth;
  KahanSum s;
  for (int k = 1; k <= depth; ++k) {
    const double len = length(k);
    if (len == 0.0) continue;
    s.add(len / (std::ldexp(1.0, k) * (1.0 + len)));
  }
  return s.value();
}

}  // namespace

Partition::Partition(IntervalSeq parent, int m, std::int64_t cuts)
    : parent_(std::move(parent)), m_(m), cuts_(cuts) {
  base_.reserve(static_cast<std::size_t>(m_));
  for (int k = 1; k <= m_; ++k) base_.push_back(parent_.interval(k));
}

std::int64_t Partition::cell_count() const noexcept {
  std::int64_t total = 1;
  for (int k = 0; k < m_; ++k) total *= cuts_;
  return total;
}

Interval Partition::slice(int k, std::int64_t j) const {
  if (k < 1 || k > m_) throw DomainError("coordinate outside the gridded range");
  if (j < 0 || j >= cuts_) throw DomainError("slice index out of range");
  const Interval base = base_[static_cast<std::size_t>(k - 1)];
  const double h = base.length() / static_cast<double>(cuts_);
  const double lo = base.lo + static_cast<double>(j) * h;
  const double hi = j == cuts_ - 1 ? base.hi : base.lo + static_cast<double>(j + 1) * h;
  return {lo, hi};
}

ElementaryRect Partition::cell(std::int64_t flat) const {
  if (flat < 0 || flat >= cell_count()) throw DomainError("cell index out of range");
  std::map<std::int64_t, Interval> overrides;
  std::int64_t rem = flat;
  for (int k = m_; k >= 1; --k) {
    const std::int64_t j = rem % cuts_;
    rem /= cuts_;
    overrides[k] = slice(k, j);
  }
  return ElementaryRect(parent_, std::move(overrides));
}

Partition grid_partition(const IntervalSeq& rect, int m, std::int64_t cuts,
                         std::int64_t budget) {
  if (m < 1) throw DomainError("must grid at least one coordinate");
  if (cuts < 1) throw DomainError("cuts per coordinate must be positive");
  double cells = 1.0;
  for (int k = 0; k < m; ++k) cells *= static_cast<double>(cuts);
  if (cells > static_cast<double>(budget))
    throw BudgetError("partition too fine",
                      cells > 9e18 ? std::numeric_limits<std::int64_t>::max()
                                   : static_cast<std::int64_t>(cells),
                      budget);
  for (int k = 1; k <= m; ++k) {
    if (!(rect.interval(k).length() > 0.0))
      throw DomainError("cannot grid the degenerate coordinate " + std::to_string(k));
  }
  return Partition(rect, m, cuts);
}

double cell_diameter(const ElementaryRect& u, double tail_tol) {
  return diameter_from_lengths(
      [&u](std::int64_t k) { return u.interval(k).length(); }, tail_tol);
}

double mesh(const Partition& p, double tail_tol) {
  const std::int64_t cuts = p.cuts();
  return diameter_from_lengths(
      [&p, cuts](std::int64_t k) {
        if (k <= p.gridded_coords())
          return p.parent().interval(k).length() / static_cast<double>(cuts);
        return p.parent().interval(k).length();
      },
      tail_tol);
}

DarbouxBracket darboux(const CylinderFn& f, const Partition& p,
                       int samples_per_cell) {
  if (f.effective_dim() > p.gridded_coords())
    throw DomainError("function reads more coordinates than the partition grids");
  if (samples_per_cell < 1) throw DomainError("samples per cell must be positive");

  // Cells are constant in every gridded coordinate the function ignores, so
  // the sums collapse onto the first effective_dim coordinates exactly.
  const int dims = f.effective_dim();
  const auto axes = make_axes(p.parent(), dims, p.cuts());
  const NormalizedSums s = normalized_sums(f, axes, samples_per_cell);

  const MeasureValue mv =
      rect_measure(p.parent(), GroupingAlpha::ones(), ProductMode::ordinary);
  const double scale = std::exp(mv.log_value);
  return {s.lower * scale, s.upper * scale, mesh(p)};
}

double box_average(const CylinderFn& f, const IntervalSeq& rect, double tol,
                   std::vector<RefineStep>* trace, std::int64_t budget) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const int dims = std::max(1, f.effective_dim());
  for (std::int64_t cuts = 2;; cuts *= 2) {
    const auto axes = make_axes(rect, dims, cuts);
    const std::int64_t cells = axes_cell_count(axes);
    if (cells > budget)
      throw BudgetError("bracket did not close within the refinement budget",
                        cells, budget);
    const NormalizedSums s = normalized_sums(f, axes, 5);
    if (trace) trace->push_back({cuts, s.lower, s.upper, s.midpoint});
    if (s.upper - s.lower < tol) return s.midpoint;
  }
}

double riemann_integral(const CylinderFn& f, const IntervalSeq& rect, double tol) {
  const MeasureValue mv =
      rect_measure(rect, GroupingAlpha::ones(), ProductMode::ordinary);
  if (mv.log_value == kNegInf)
    throw DomainError("rectangle has measure zero");
  return box_average(f, rect, tol) * std::exp(mv.log_value);
}

std::pair<double, double> average_vs_integral(const CylinderFn& f,
                                              const IntervalSeq& rect,
                                              std::int64_t n) {
  const PointFamily fam = vdc_family(rect, n);
  const double avg = family_average(fam, f);
  const double ratio = box_average(f, rect, 1e-3);
  return {avg, ratio};
}

std::vector<double> intermediate_value_point(const CylinderFn& f,
                                             const IntervalSeq& rect, double u,
                                             std::span<const double> zmin,
                                             std::span<const double> zmax,
                                             double tol, int max_iter) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const std::size_t span = std::max({zmin.size(), zmax.size(),
                                     static_cast<std::size_t>(f.effective_dim())});
  for (std::size_t i = 0; i < span; ++i) {
    const Interval iv = rect.interval(static_cast<std::int64_t>(i + 1));
    const double a = i < zmin.size() ? zmin[i] : 0.0;
    const double b = i < zmax.size() ? zmax[i] : 0.0;
    if (a < iv.lo || a > iv.hi || b < iv.lo || b > iv.hi)
      throw DomainError("segment endpoints must lie in the rectangle");
  }

  auto at = [&](double t, std::size_t dims) {
    std::vector<double> x(dims);
    for (std::size_t i = 0; i < dims; ++i) {
      const double a = i < zmin.size() ? zmin[i] : 0.0;
      const double b = i < zmax.size() ? zmax[i] : 0.0;
      x[i] = a + t * (b - a);
    }
    return x;
  };
  auto g = [&](double t) { return f(at(t, static_cast<std::size_t>(f.effective_dim()))); };

  const double f0 = g(0.0);
  const double f1 = g(1.0);
  if (!(f0 <= u && u <= f1))
    throw DomainError("u must lie between f(zmin) and f(zmax)");
  if (std::abs(f0 - u) <= tol) return at(0.0, span);
  if (std::abs(f1 - u) <= tol) return at(1.0, span);

  double lo = 0.0, hi = 1.0, last = f0;
  for (int it = 0; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    last = g(mid);
    if (std::abs(last - u) <= tol) return at(mid, span);
    (last < u ? lo : hi) = mid;
  }
  throw ConvergenceError("bisection did not reach the target value", {last});
}

}  // namespace rinf
