#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "olt/forms.hpp"
#include "olt/geometry.hpp"
#include "olt/og_oracle.hpp"
#include "olt/orbit_tree.hpp"

namespace olt {

// ---- point-count data -----------------------------------------------------

/// Allowed tuples (#C(F_{2^i}))_{i=1..g} for g = 6 (33 tuples) and g = 7 (7 tuples).
const std::vector<std::vector<int>>& table2(int genus);
/// True iff some tuple of the genus extends the prefix.
bool table2_filter(std::span<const std::uint64_t> prefix, int genus);

/// Genus-6 bielliptic cases: counts of E and C over F_2, ..., F_16 with the
/// stated reason for exclusion.
struct Table4Row {
  std::array<int, 4> e;
  std::array<int, 4> c;
  enum class Reason { ExceedsDouble, EqualDoubleOddCount } reason;
  int extension;  // i in #C(F_{2^i}) > 2 #E(F_{2^i}), resp. = for the second reason
};
const std::vector<Table4Row>& table4();

struct ExclusionCheck {
  std::string claim;
  bool holds = false;
};

struct PrecheckResult {
  int genus = 0;
  std::string stratum;
  bool excluded = false;
  /// Part of the case is left to a construction this library does not do.
  bool external = false;
  std::vector<ExclusionCheck> checks;
  std::vector<std::vector<int>> surviving;  // tuples of table2 not excluded
};

/// Stratum names accepted by stratum_precheck for a genus.
std::vector<std::string> precheck_strata(int genus);
/// Point-count exclusions. Throws DomainError on an unknown genus or stratum.
PrecheckResult stratum_precheck(int genus, std::string_view stratum);

// ---- strata ---------------------------------------------------------------------

struct StratumSpec {
  std::string id;    // e.g. "g6-plane-quintic"
  int genus = 0;
  std::string name;  // precheck name
  std::string ambient;
  std::vector<std::vector<int>> partial_degrees;  // X_1, ..., X_{m-1}
  std::vector<int> final_degree;                 // X_m
  std::vector<int> subset_sizes;
  std::string condition;  // none, smooth-x1, no-three-projection, no-five-projection, og-forbidden, rank4-independent
  std::string symmetry;   // none, swap-free, ignore-group, ordered-classes, span-merge, hash-join
};

const std::vector<StratumSpec>& stratum_specs();
/// Throws DomainError on an unknown id.
const StratumSpec& stratum_spec(std::string_view id);

/// Forbidden-tuple rule of a stratum on its point list (the F_2-points of the
/// ambient space, or of the dual P^9 for g6-generic). Returns an empty
/// function when nothing is forbidden.
EligibilityOracle eligibility_oracle_for(const StratumSpec& spec, const std::vector<ProjPoint>& points,
                                         const OgOracleOptions& og = {});

/// Point set S and group G of an orbit-tree stratum.
struct StratumAction {
  std::vector<ProjPoint> points;
  PermGroup group;
};
StratumAction stratum_action(const StratumSpec& spec, std::uint64_t seed = 1);

struct FormRecord {
  std::vector<int> degree;
  BitVec coeffs;  // in the basis of FormSpace(ambient, degree)
};

/// Scheme cut out of the ambient space by the forms. The ambient equation of
/// X21 and X11, the Pluecker quadrics of Gr25 and the spinor quadrics of og+
/// are implied by the ambient id.
struct CandidateScheme {
  std::string stratum;
  std::string ambient;
  std::vector<FormRecord> forms;
  std::vector<ProjPoint> points;        // the F_2-points
  std::vector<std::uint64_t> counts;    // counts[i - 1] = #(F_{2^i})
  std::vector<std::string> flags;
};

/// Direct count: every form evaluated at every ambient F_{2^i}-point.
/// Throws ResourceError past the budget.
std::uint64_t count_points(const CandidateScheme& c, int i, std::size_t budget = std::size_t{1} << 22);
/// The F_2-locus of the forms equals c.points.
bool verify_exactness(const CandidateScheme& c);

struct StratumOptions {
  std::uint64_t seed = 1;
  unsigned workers = 1;
  /// Counts are computed for i = 1..max_extension (0: the genus), as far as
  /// the ambient tables fit the budget.
  int max_extension = 0;
  std::size_t table_budget = std::size_t{1} << 21;
  /// Empty: the spec's sizes, restricted to the first entries of the tuples
  /// surviving the precheck.
  std::vector<int> subset_sizes;
  std::size_t refinement_limit = std::size_t{1} << 22;
  /// Stop with ResourceError once this many candidates were emitted.
  std::size_t max_candidates = std::size_t{1} << 26;
  /// g7-self-adjoint: indices into the three cubics (empty: all).
  std::vector<int> cubics;
  /// g6-generic: also run the improper hyperplane classes; only the first
  /// class_limit classes are run.
  bool include_improper = false;
  std::size_t class_limit = SIZE_MAX;
  OgOracleOptions og;
  std::function<void(const std::string&)> log;
};

struct StratumReport {
  std::string stratum;
  std::vector<std::pair<std::string, std::uint64_t>> stats;
  std::vector<std::pair<std::string, double>> timings;
  std::vector<std::string> notes;
  std::vector<CandidateScheme> candidates;
  bool ok = true;
  std::string failure;  // failed stage
};

/// The orbit-tree paradigm for one stratum; g6-generic and g7-generic
/// dispatch to their pipelines, bielliptic strata report that they need
/// external verification.
StratumReport run_stratum(const StratumSpec& spec, const StratumOptions& options = {});

// ---- genus 6, generic ---------------------------------------------------------------

struct HyperplaneClass {
  std::uint32_t node = 0;            // least green id among the bases of the span
  std::vector<ProjPoint> hyperplanes;  // points of the dual P^9
  int hilbert2 = 0, hilbert3 = 0;    // Hilbert function of Gr cap the hyperplanes
  bool proper = false;               // equal to that of a quintic del Pezzo surface (16, 31)
};

struct Genus6Hyperplanes {
  std::size_t greens = 0;  // depth-4 green nodes
  std::vector<HyperplaneClass> classes;
  double seconds = 0;
};

/// Orbits of GL(5, F_2) on 4-sets of independent rank-4 hyperplanes of P^9,
/// merged by span.
Genus6Hyperplanes genus6_hyperplane_classes(const StratumOptions& options = {});

/// F_{2^i}-points of Gr(2,5) on the hyperplanes (10-bit Pluecker words),
/// sorted; found line by line through the points of P^4.
std::vector<ProjPoint> gr25_section_points(std::span<const std::uint64_t> hyperplanes, int i);

// ---- genus 7, generic ---------------------------------------------------------------

struct Genus7Report {
  std::size_t greens = 0;
  std::map<int, std::size_t> span_dimensions;  // projective dimension -> representatives
  bool span_property = false;
  std::map<std::string, std::uint64_t> stats;
  std::vector<CandidateScheme> candidates;
  std::vector<std::pair<std::string, double>> timings;
  bool ok = true;
  std::string failure;
};

Genus7Report genus7_generic_pipeline(const StratumOptions& options = {});

/// Length of the local ring at the F_2-point p of span(basis) cap OG+
/// (basis: 16-bit words, p in the span), or nothing when it does not
/// stabilize by degree max_degree (p on a positive-dimensional component).
std::optional<int> og_local_multiplicity(std::span<const std::uint64_t> basis, std::uint64_t p, int max_degree = 12);

}  // namespace olt
