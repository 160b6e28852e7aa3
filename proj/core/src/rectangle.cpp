#include "rinf/rectangle.hpp"

#include <algorithm>
#include <cmath>

namespace rinf {

namespace {

void validate_interval(const Interval& iv, std::int64_t k) {
  if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi)
    throw DomainError("malformed interval at coordinate " + std::to_string(k));
}

std::vector<double> side_logs(const std::vector<Interval>& coords) {
  std::vector<double> logs;
  logs.reserve(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) {
    validate_interval(coords[i], static_cast<std::int64_t>(i + 1));
    logs.push_back(std::log(coords[i].length()));
  }
  return logs;
}

Interval intersect(const Interval& a, const Interval& b) {
  return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

int clamped_exponent(std::int64_t k) {
  return static_cast<int>(std::min<std::int64_t>(k, 4096));
}

}  // namespace

IntervalSeq IntervalSeq::unit_cube() {
  return with_unit_tail({});
}

IntervalSeq IntervalSeq::with_unit_tail(std::vector<Interval> coords) {
  auto logs = side_logs(coords);
  const auto n = static_cast<std::int64_t>(coords.size());
  IntervalSeq s;
  s.interval_fn_ = [coords = std::move(coords), n](std::int64_t k) {
    return k <= n ? coords[k - 1] : Interval{0.0, 1.0};
  };
  s.log_side_fn_ = [logs = std::move(logs), n](std::int64_t k) {
    return k <= n ? logs[k - 1] : 0.0;
  };
  s.tail_ = TailKind::constant_one;
  s.depth_ = n;
  return s;
}

IntervalSeq IntervalSeq::truncated(std::vector<Interval> coords) {
  auto logs = side_logs(coords);
  const auto n = static_cast<std::int64_t>(coords.size());
  IntervalSeq s;
  s.interval_fn_ = [coords = std::move(coords), n](std::int64_t k) -> Interval {
    if (k > n) throw TailUnspecifiedError(k, n);
    return coords[k - 1];
  };
  s.log_side_fn_ = [logs = std::move(logs), n](std::int64_t k) -> double {
    if (k > n) throw TailUnspecifiedError(k, n);
    return logs[k - 1];
  };
  s.tail_ = TailKind::truncated;
  s.depth_ = n;
  return s;
}

IntervalSeq IntervalSeq::closed_form(IntervalFn intervals, LogSideFn log_sides) {
  if (!intervals) throw DomainError("closed-form rectangle needs an interval rule");
  IntervalSeq s;
  if (!log_sides) {
    log_sides = [intervals](std::int64_t k) {
      return std::log(intervals(k).length());
    };
  }
  s.interval_fn_ = std::move(intervals);
  s.log_side_fn_ = std::move(log_sides);
  s.tail_ = TailKind::closed_form;
  s.depth_ = 0;
  return s;
}

IntervalSeq IntervalSeq::alternating_harmonic() {
  return closed_form(
      [](std::int64_t k) {
        const double e = (k % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(k);
        return Interval{0.0, std::exp(e)};
      },
      [](std::int64_t k) {
        return (k % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(k);
      });
}

IntervalSeq IntervalSeq::delta_box(double epsilon) {
  return DeltaBox(epsilon).to_rectangle();
}

Interval IntervalSeq::interval(std::int64_t k) const {
  if (k < 1) throw DomainError("coordinate indices are 1-based");
  return interval_fn_(k);
}

double IntervalSeq::log_side(std::int64_t k) const {
  if (k < 1) throw DomainError("coordinate indices are 1-based");
  return log_side_fn_(k);
}

IntervalSeq IntervalSeq::shifted(std::vector<double> t) const {
  IntervalSeq s;
  const auto n = static_cast<std::int64_t>(t.size());
  s.interval_fn_ = [parent = *this, t = std::move(t), n](std::int64_t k) {
    const Interval iv = parent.interval(k);
    const double dk = k <= n ? t[k - 1] : 0.0;
    return Interval{iv.lo + dk, iv.hi + dk};
  };
  s.log_side_fn_ = [parent = *this](std::int64_t k) { return parent.log_side(k); };
  s.tail_ = tail_;
  s.depth_ = std::max(depth_, n);
  return s;
}

FactorSeq IntervalSeq::side_factors() const {
  return FactorSeq::from_logs(
      [self = *this](std::int64_t k) { return self.log_side(k); }, tail_, depth_);
}

ElementaryRect::ElementaryRect(IntervalSeq parent,
                               std::map<std::int64_t, Interval> overrides)
    : parent_(std::move(parent)), overrides_(std::move(overrides)) {
  for (const auto& [k, ov] : overrides_) {
    if (k < 1) throw DomainError("override indices are 1-based");
    const Interval base = parent_.interval(k);
    if (std::isnan(ov.lo) || std::isnan(ov.hi) || !(ov.lo < ov.hi))
      throw DomainError("override at coordinate " + std::to_string(k) +
                        " must satisfy c < d");
    if (ov.lo < base.lo || ov.hi > base.hi)
      throw DomainError("override at coordinate " + std::to_string(k) +
                        " escapes the parent interval");
  }
}

Interval ElementaryRect::interval(std::int64_t k) const {
  const auto it = overrides_.find(k);
  return it != overrides_.end() ? it->second : parent_.interval(k);
}

std::int64_t ElementaryRect::max_override_index() const noexcept {
  return overrides_.empty() ? 0 : overrides_.rbegin()->first;
}

DeltaBox::DeltaBox(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw DomainError("epsilon must be a positive finite real");
}

double DeltaBox::log_side(std::int64_t k) const {
  // side = 2 a_k = e^{-1/(2^k eps)}; the exponent overflows to +inf for huge
  // k, making the log side an exact -0.
  return -1.0 / std::ldexp(epsilon_, clamped_exponent(k));
}

double DeltaBox::half_width(std::int64_t k) const {
  return std::exp(log_side(k)) / 2.0;
}

bool DeltaBox::contains(std::span<const double> x) const {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > half_width(static_cast<std::int64_t>(i + 1))) return false;
  }
  return true;  // zero tail coordinates always satisfy |0| <= a_k
}

IntervalSeq DeltaBox::to_rectangle() const {
  const DeltaBox box = *this;
  return IntervalSeq::closed_form(
      [box](std::int64_t k) {
        const double a = box.half_width(k);
        return Interval{-a, a};
      },
      [box](std::int64_t k) { return box.log_side(k); });
}

MeasureValue rect_measure(const IntervalSeq& r, const GroupingAlpha& alpha,
                          ProductMode mode, const ProductOptions& opt) {
  if (r.tail() == TailKind::truncated)
    throw DomainError("rectangle measure needs a unit or closed-form tail");
  const ProductResult res = grouped_product(r.side_factors(), alpha, mode, opt);
  if (res.status == ProductStatus::oscillating)
    throw RectangleClassError(
        "side-length product oscillates: the rectangle has no measure of this kind");
  return {res.log_value, res.status};
}

MeasureValue elementary_measure(const ElementaryRect& u, const GroupingAlpha& alpha,
                                ProductMode mode, const ProductOptions& opt) {
  const IntervalSeq& parent = u.parent();
  if (parent.tail() == TailKind::truncated)
    throw DomainError("rectangle measure needs a unit or closed-form tail");

  std::map<std::int64_t, double> override_logs;
  for (const auto& [k, ov] : u.overrides()) override_logs[k] = std::log(ov.length());

  auto gen = [parent, override_logs](std::int64_t k) {
    const auto it = override_logs.find(k);
    return it != override_logs.end() ? it->second : parent.log_side(k);
  };
  const std::int64_t depth = std::max(parent.depth(), u.max_override_index());
  const FactorSeq spliced = FactorSeq::from_logs(std::move(gen), parent.tail(), depth);

  const ProductResult res = grouped_product(spliced, alpha, mode, opt);
  if (res.status == ProductStatus::oscillating)
    throw RectangleClassError(
        "side-length product oscillates: the set has no measure of this kind");
  return {res.log_value, res.status};
}

double tychonoff_distance(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = std::max(x.size(), y.size());
  KahanSum s;
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = i < x.size() ? x[i] : 0.0;
    const double yi = i < y.size() ? y[i] : 0.0;
    const double d = std::abs(xi - yi);
    if (d == 0.0) continue;
    s.add(d / (std::ldexp(1.0, static_cast<int>(i) + 1) * (1.0 + d)));
  }
  return s.value();
}

double delta_box_diameter(double eps, double tail_tol) {
  if (!(eps > 0.0)) throw DomainError("epsilon must be positive");
  if (!(tail_tol > 0.0)) throw DomainError("tail tolerance must be positive");
  // Terms are bounded by 2^{-k}, so cut once the geometric tail is below
  // tail_tol.
  int depth = 1;
  while (std::ldexp(1.0, -depth) >= tail_tol && depth < 4096) ++depth;
  KahanSum s;
  for (int k = 1; k <= depth; ++k) {
    const double t = std::exp(-1.0 / std::ldexp(eps, k));
    s.add(t / (std::ldexp(1.0, k) * (1.0 + t)));
  }
  return s.value();
}

bool consistency_check(const IntervalSeq& r1, const IntervalSeq& r2,
                       const ElementaryRect& x, const GroupingAlpha& alpha,
                       ProductMode mode, double tol, const ProductOptions& opt) {
  if (r1.tail() != TailKind::constant_one || r2.tail() != TailKind::constant_one)
    throw DomainError("consistency check supports unit tails only");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  const std::int64_t depth = std::max({r1.depth(), r2.depth(),
                                       x.parent().depth(), x.max_override_index()});
  std::vector<Interval> common(static_cast<std::size_t>(depth));
  for (std::int64_t k = 1; k <= depth; ++k) {
    const Interval inter = intersect(r1.interval(k), r2.interval(k));
    if (inter.lo > inter.hi)
      throw DomainError("rectangles do not intersect at coordinate " +
                        std::to_string(k));
    const auto it = x.overrides().find(k);
    if (it != x.overrides().end() &&
        (it->second.lo < inter.lo || it->second.hi > inter.hi))
      throw DomainError("elementary rectangle escapes the intersection at coordinate " +
                        std::to_string(k));
    common[static_cast<std::size_t>(k - 1)] = inter;
  }

  const auto evaluate = [&](const IntervalSeq& r) -> double {
    const MeasureValue m = rect_measure(r, alpha, mode, opt);
    if (m.log_value == kNegInf) return kNegInf;
    KahanSum ratio;
    for (std::int64_t k = 1; k <= depth; ++k) {
      const Interval rk = r.interval(k);
      const Interval cut =
          intersect(intersect(x.interval(k), common[static_cast<std::size_t>(k - 1)]), rk);
      const double len = std::max(0.0, cut.hi - cut.lo);
      if (len == 0.0) return kNegInf;
      ratio.add(std::log(len) - std::log(rk.length()));
    }
    return m.log_value + ratio.value();
  };

  const double a = evaluate(r1);
  const double b = evaluate(r2);
  if (a == kNegInf || b == kNegInf) return a == b;
  return std::abs(a - b) <= tol;
}

}  // namespace rinf
