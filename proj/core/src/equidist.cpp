#include "rinf/equidist.hpp"

#include <cmath>
#include <random>

namespace rinf {

namespace {

// Radical inverse in base 2: the bits of i mirrored about the radix point.
double radical_inverse_base2(std::int64_t i) {
  double r = 0.0;
  double w = 0.5;
  for (auto m = static_cast<std::uint64_t>(i); m != 0; m >>= 1) {
    if (m & 1u) r += w;
    w *= 0.5;
  }
  return r;
}

double unit_from_engine(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

}  // namespace

CoordSequence::CoordSequence(CoordKind kind, Interval iv, double multiplier,
                             std::uint64_t seed)
    : kind_(kind), iv_(iv), multiplier_(multiplier), seed_(seed) {
  if (std::isnan(iv.lo) || std::isnan(iv.hi) || iv.lo > iv.hi)
    throw DomainError("malformed coordinate interval");
}

CoordSequence CoordSequence::van_der_corput(Interval iv) {
  return CoordSequence(CoordKind::van_der_corput_base2, iv, 0.0, 0);
}

CoordSequence CoordSequence::weyl(Interval iv, double multiplier) {
  if (!(multiplier > 0.0) || !std::isfinite(multiplier))
    throw DomainError("weyl multiplier must be positive and finite");
  return CoordSequence(CoordKind::weyl_irrational, iv, multiplier, 0);
}

CoordSequence CoordSequence::seeded(Interval iv, std::uint64_t seed) {
  return CoordSequence(CoordKind::seeded_random, iv, 0.0, seed);
}

double CoordSequence::point(std::int64_t i) const {
  if (i < 1) throw DomainError("sequence indices are 1-based");
  double u = 0.0;
  switch (kind_) {
    case CoordKind::van_der_corput_base2:
      u = radical_inverse_base2(i);
      break;
    case CoordKind::weyl_irrational: {
      const double p = static_cast<double>(i) * multiplier_;
      u = p - std::floor(p);
      break;
    }
    case CoordKind::seeded_random: {
      std::mt19937_64 eng(seed_);
      eng.discard(static_cast<unsigned long long>(i - 1));
      u = unit_from_engine(eng);
      break;
    }
  }
  return iv_.lo + u * (iv_.hi - iv_.lo);
}

std::vector<double> CoordSequence::points(std::int64_t count) const {
  if (count < 1) throw DomainError("point count must be positive");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  if (kind_ == CoordKind::seeded_random) {
    std::mt19937_64 eng(seed_);
    for (std::int64_t i = 0; i < count; ++i)
      out.push_back(iv_.lo + unit_from_engine(eng) * (iv_.hi - iv_.lo));
  } else {
    for (std::int64_t i = 1; i <= count; ++i) out.push_back(point(i));
  }
  return out;
}

std::vector<double> coord_points(const CoordSequence& seq, std::int64_t count) {
  return seq.points(count);
}

PointFamily::PointFamily(IntervalSeq parent,
                         std::vector<std::vector<double>> coord_pts,
                         std::function<double(std::int64_t)> anchor)
    : parent_(std::move(parent)), pts_(std::move(coord_pts)), anchor_(std::move(anchor)) {}

std::int64_t PointFamily::size() const {
  std::int64_t s = 1;
  for (std::int64_t i = 0; i < n(); ++i) s *= n();
  return s;
}

std::span<const double> PointFamily::coordinate_points(std::int64_t k) const {
  if (k < 1 || k > n()) throw DomainError("coordinate outside the family prefix");
  return pts_[static_cast<std::size_t>(k - 1)];
}

double PointFamily::anchor(std::int64_t k) const {
  if (k <= n()) throw DomainError("anchors apply beyond the family prefix");
  return anchor_(k);
}

void PointFamily::for_each_point(
    int dims, const std::function<void(std::span<const double>)>& visit) const {
  const auto nn = static_cast<std::size_t>(n());
  std::vector<double> x(static_cast<std::size_t>(dims));
  for (std::size_t k = nn; k < x.size(); ++k)
    x[k] = anchor_(static_cast<std::int64_t>(k + 1));

  const std::size_t active = std::min<std::size_t>(nn, x.size());
  std::vector<std::size_t> idx(nn, 0);
  while (true) {
    for (std::size_t k = 0; k < active; ++k) x[k] = pts_[k][idx[k]];
    visit(x);
    // odometer: last coordinate fastest
    std::size_t pos = nn;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < nn) break;
      idx[pos] = 0;
      if (pos == 0) return;
    }
    if (nn == 0) return;
  }
}

PointFamily product_family(const IntervalSeq& rect,
                           std::span<const CoordSequence> seqs, std::int64_t n,
                           std::int64_t budget) {
  if (n < 1) throw DomainError("family index must be positive");
  if (static_cast<std::int64_t>(seqs.size()) < n)
    throw DomainError("need a coordinate sequence for each of the first n coordinates");

  // n^n with overflow care, checked against the budget.
  double approx = std::pow(static_cast<double>(n), static_cast<double>(n));
  if (approx > static_cast<double>(budget))
    throw BudgetError("point family too large",
                      approx > 9e18 ? std::numeric_limits<std::int64_t>::max()
                                    : static_cast<std::int64_t>(approx),
                      budget);

  std::vector<std::vector<double>> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k) {
    const auto& seq = seqs[static_cast<std::size_t>(k - 1)];
    const Interval expected = rect.interval(k);
    if (seq.interval().lo < expected.lo || seq.interval().hi > expected.hi)
      throw DomainError("coordinate sequence " + std::to_string(k) +
                        " leaves the rectangle");
    pts.push_back(seq.points(n));
  }
  auto anchor = [rect](std::int64_t k) { return rect.interval(k).midpoint(); };
  return PointFamily(rect, std::move(pts), std::move(anchor));
}

PointFamily vdc_family(const IntervalSeq& rect, std::int64_t n, std::int64_t budget) {
  std::vector<CoordSequence> seqs;
  seqs.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 1; k <= n; ++k)
    seqs.push_back(CoordSequence::van_der_corput(rect.interval(k)));
  return product_family(rect, seqs, n, budget);
}

double equidist_ratio(const PointFamily& fam, const ElementaryRect& u) {
  double ratio = 1.0;
  for (const auto& [k, ov] : u.overrides()) {
    if (k <= fam.n()) {
      std::int64_t count = 0;
      for (const double p : fam.coordinate_points(k))
        if (p >= ov.lo && p < ov.hi) ++count;
      ratio *= static_cast<double>(count) / static_cast<double>(fam.n());
    } else {
      const double a = fam.anchor(k);
      if (!(a >= ov.lo && a < ov.hi)) return 0.0;
    }
    if (ratio == 0.0) return 0.0;
  }
  return ratio;
}

double family_average(const PointFamily& fam, const CylinderFn& f) {
  const int dims = std::max<int>(f.effective_dim(), 0);
  KahanSum sum;
  fam.for_each_point(dims, [&](std::span<const double> x) { sum.add(f(x)); });
  return sum.value() / static_cast<double>(fam.size());
}

}  // namespace rinf
