#include "olt/og_oracle.hpp"

#include "olt/errors.hpp"
#include "olt/linalg.hpp"

namespace olt {

const char* to_string(OgVerdict v) {
  switch (v) {
    case OgVerdict::Eligible: return "eligible";
    case OgVerdict::LargeIntersection: return "large-intersection";
    case OgVerdict::Collinear: return "collinear";
    case OgVerdict::Coplanar: return "coplanar";
    case OgVerdict::TooManyPoints: return "too-many-points";
    case OgVerdict::PositiveDimensional: return "positive-dimensional";
  }
  return "?";
}

const std::vector<QuadraticForm2>& og_quadric_forms() {
  static const std::vector<QuadraticForm2> forms = [] {
    std::vector<QuadraticForm2> out;
    for (const auto& row : og_quadrics()) {
      QuadraticForm2 q(16);
      for (int i = 0; i < 16; ++i)
        for (int j = i; j < 16; ++j)
          if (row.get(quadratic_monomial_index(i, j))) q.add_monomial(i, j);
      out.push_back(std::move(q));
    }
    return out;
  }();
  return forms;
}

OgOracle::OgOracle(OgOracleOptions options) : options_(options) {
  OgPlus::get();
  og_quadric_forms();
}

std::vector<std::uint64_t> OgOracle::span_basis(std::span<const Point> tuple) {
  const OgPlus& og = OgPlus::get();
  std::vector<std::uint64_t> v;
  for (Point p : tuple) v.push_back(og.spinor(p));
  return rref_u64(v);
}

std::vector<Point> OgOracle::rational_points_in_span(std::span<const std::uint64_t> basis) {
  const OgPlus& og = OgPlus::get();
  std::vector<Point> out;
  const std::size_t r = basis.size();
  for (std::uint64_t c = 1; c < (std::uint64_t{1} << r); ++c) {
    std::uint64_t x = 0;
    for (std::size_t i = 0; i < r; ++i)
      if (c >> i & 1) x ^= basis[i];
    const int idx = og.index_of_spinor(static_cast<F2Spinor>(x));
    if (idx >= 0) out.push_back(static_cast<Point>(idx));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t OgOracle::span_point_count(std::span<const std::uint64_t> basis, int j, std::uint64_t stop_above) {
  std::vector<QuadraticForm2> restricted;
  for (const auto& q : og_quadric_forms()) {
    auto r = q.restrict_to(basis);
    if (!r.is_zero()) restricted.push_back(std::move(r));
  }
  return count_projective_zeros(restricted, basis.size(), j, stop_above);
}

OgVerdict OgOracle::span_conditions(std::span<const Point> tuple) const {
  const auto basis = span_basis(tuple);
  if (rational_points_in_span(basis).size() > options_.max_rational) return OgVerdict::TooManyPoints;
  for (int j = 2; j <= options_.k_max; ++j)
    if (span_point_count(basis, j, options_.threshold) > options_.threshold) return OgVerdict::PositiveDimensional;
  return OgVerdict::Eligible;
}

OgVerdict OgOracle::classify_last(std::span<const Point> tuple) const {
  const OgPlus& og = OgPlus::get();
  const std::size_t n = tuple.size();
  if (n == 0) return OgVerdict::Eligible;
  const Point p = tuple[n - 1];
  for (std::size_t a = 0; a + 1 < n; ++a)
    if (og.meet(tuple[a], p) > 1) return OgVerdict::LargeIntersection;
  const F2Spinor sp = og.spinor(p);
  for (std::size_t a = 0; a + 1 < n; ++a)
    for (std::size_t b = a + 1; b + 1 < n; ++b) {
      const F2Spinor ab = og.spinor(tuple[a]) ^ og.spinor(tuple[b]);
      if (ab == sp) return OgVerdict::Collinear;
      for (std::size_t c = b + 1; c + 1 < n; ++c)
        if ((ab ^ og.spinor(tuple[c])) == sp) return OgVerdict::Coplanar;
    }
  return span_conditions(tuple);
}

OgVerdict OgOracle::classify(std::span<const Point> tuple) const {
  for (std::size_t k = 1; k <= tuple.size(); ++k) {
    const OgVerdict v = classify_last(tuple.first(k));
    if (v != OgVerdict::Eligible) return v;
  }
  // a forbidden pattern may avoid every prefix's last point only through order;
  // every condition above is symmetric in the points, so prefixes suffice
  return OgVerdict::Eligible;
}

}  // namespace olt
