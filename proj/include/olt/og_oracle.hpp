#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "olt/perm_group.hpp"
#include "olt/quadric_count.hpp"
#include "olt/spinor.hpp"

namespace olt {

struct OgOracleOptions {
  /// Extension degrees 2..k_max are scanned for positive-dimensional intersections.
  int k_max = 5;
  /// A span is treated as meeting OG+ in positive dimension once it has more
  /// than this many points over some F_{2^j}, j <= k_max.
  std::uint64_t threshold = 12;
  /// Largest allowed number of F_2-points of OG+ in the span.
  std::size_t max_rational = 7;
};

enum class OgVerdict { Eligible, LargeIntersection, Collinear, Coplanar, TooManyPoints, PositiveDimensional };

const char* to_string(OgVerdict v);

/// Pairs with dim(L cap L') > 1, collinear triples, coplanar quadruples,
/// spans with too many F_2-points of OG+ and spans meeting OG+ in positive
/// dimension are forbidden.
class OgOracle {
 public:
  explicit OgOracle(OgOracleOptions options = {});

  const OgOracleOptions& options() const { return options_; }
  /// Classifies a tuple whose proper prefixes are eligible (only conditions
  /// involving the last point are tested).
  OgVerdict classify_last(std::span<const Point> tuple) const;
  /// Full test of an arbitrary tuple.
  OgVerdict classify(std::span<const Point> tuple) const;
  bool operator()(std::span<const Point> tuple) const { return classify_last(tuple) == OgVerdict::Eligible; }

  /// Reduced row basis of the span of the spinors, as 16-bit words.
  static std::vector<std::uint64_t> span_basis(std::span<const Point> tuple);
  /// Points of OG+(F_2) in the span of the given basis.
  static std::vector<Point> rational_points_in_span(std::span<const std::uint64_t> basis);
  /// #(span cap OG+)(F_{2^j}), stopping past stop_above.
  static std::uint64_t span_point_count(std::span<const std::uint64_t> basis, int j,
                                        std::uint64_t stop_above = UINT64_MAX);

 private:
  OgVerdict span_conditions(std::span<const Point> tuple) const;
  OgOracleOptions options_;
};

/// The ten spinor quadrics as forms in 16 variables.
const std::vector<QuadraticForm2>& og_quadric_forms();

}  // namespace olt
