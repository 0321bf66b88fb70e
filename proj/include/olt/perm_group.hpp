#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "olt/permutation.hpp"

namespace olt {

using GroupOrder = std::uint64_t;

/// Orbit of a point under a generating set together with a transversal:
/// transversal[i](point) == orbit[i], transversal[0] is the identity.
struct OrbitTransversal {
  std::vector<Point> orbit;
  std::vector<Permutation> transversal;
  std::vector<std::int32_t> position;  // domain-sized; -1 outside the orbit

  bool contains(Point y) const { return position[y] >= 0; }
  const Permutation& element_for(Point y) const { return transversal[position[y]]; }
};

OrbitTransversal orbit_with_transversal(std::span<const Permutation> generators, std::size_t degree,
                                        Point point);

/// Orbit only (BFS over generator images), in discovery order.
std::vector<Point> orbit_of(std::span<const Permutation> generators, std::size_t degree, Point point);

/// Partition of the domain into orbits; returns a domain-sized orbit id array.
std::vector<std::uint32_t> orbit_partition(std::span<const Permutation> generators, std::size_t degree,
                                           std::size_t* orbit_count = nullptr);

struct SchreierSimsOptions {
  /// Base points to use first (in order); more are appended as required.
  std::vector<Point> base_prefix;
  /// Exact order when it is known in advance. The random phase stops as soon
  /// as the partial chain reaches it, which certifies completeness.
  std::optional<GroupOrder> known_order;
  /// Random phase stops after this many consecutive trivial sifts.
  std::size_t random_sift_successes = 24;
  /// Run the deterministic Schreier generator check after the random phase.
  /// Skipped when known_order was reached.
  bool deterministic = true;
  std::uint64_t seed = 0x9e3779b97f4a7c15ull;
};

/// Base and strong generating set with explicit coset representatives.
class Bsgs {
 public:
  struct Level {
    Point base_point = 0;
    std::vector<std::uint32_t> generators;  // indices into strong()
    std::vector<Point> orbit;
    std::vector<std::int32_t> position;   // domain-sized
    std::vector<Permutation> coset_inv;   // u_beta^{-1}, u_beta(base_point) = beta
  };

  explicit Bsgs(std::size_t degree) : degree_(degree) {}

  Bsgs(std::size_t degree, std::span<const Permutation> generators,
       const SchreierSimsOptions& options = {});

  std::size_t degree() const { return degree_; }
  std::size_t length() const { return levels_.size(); }
  const std::vector<Level>& levels() const { return levels_; }
  const std::vector<Permutation>& strong() const { return strong_; }
  std::vector<Point> base() const;
  GroupOrder order() const;

  /// Sifts g from level `from`. Returns the residue and the level at which
  /// sifting stopped (length() when it passed every level).
  std::pair<Permutation, std::size_t> sift(const Permutation& g, std::size_t from = 0) const;
  bool contains(const Permutation& g) const;

  /// Adds g when it is not yet a member and restores a complete chain.
  /// Returns true when the group grew.
  bool extend(const Permutation& g);

  /// Deterministic completion: checks every Schreier generator.
  void complete();

  /// Random phase; returns true when known_order was reached.
  bool randomized_fill(std::span<const Permutation> generators, const SchreierSimsOptions& options);

 private:
  void add_strong_generator(const Permutation& h, std::size_t deepest_level);
  void append_level(Point base_point);
  void extend_orbit(std::size_t level, std::uint32_t new_generator);
  void rebuild_orbit(std::size_t level);

  std::size_t degree_;
  std::vector<Level> levels_;
  std::vector<Permutation> strong_;
  std::vector<Permutation> strong_inv_;
};

/// A permutation group on {0, ..., degree-1}. The base and strong generating
/// set is computed at construction; afterwards the group is immutable and
/// safe to share across readers.
class PermGroup {
 public:
  PermGroup() = default;
  PermGroup(std::size_t degree, std::vector<Permutation> generators,
            const SchreierSimsOptions& options = {});

  static PermGroup trivial(std::size_t degree) { return PermGroup(degree, {}); }

  /// Group assembled from an already complete chain.
  static PermGroup from_bsgs(std::vector<Permutation> generators, std::shared_ptr<const Bsgs> bsgs);

  std::size_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return generators_; }
  const Bsgs& bsgs() const { return *bsgs_; }
  GroupOrder order() const { return bsgs_->order(); }
  bool is_trivial() const { return order() == 1; }

  bool contains(const Permutation& g) const;

  /// Pointwise stabilizer of `point`, presented by strong generators of a
  /// chain whose first base point is `point`.
  PermGroup stabilizer(Point point) const;

  /// Orbit with transversal of `point` under the generators.
  OrbitTransversal orbit(Point point) const;

  /// Generating set with redundant elements removed: each kept element lies
  /// outside the group generated by the ones kept before it.
  std::vector<Permutation> reduced_generators() const;

  /// A few random elements that provably generate the group (their span's
  /// order is certified equal to order()).
  std::vector<Permutation> random_generating_set(std::mt19937_64& rng) const;

  /// Every element, for small groups in tests. Throws ResourceError past the limit.
  std::vector<Permutation> elements(std::size_t limit = 200000) const;

 private:
  std::size_t degree_ = 0;
  std::vector<Permutation> generators_;
  std::shared_ptr<const Bsgs> bsgs_;
};

/// Schreier-Sims as a free function: group with its chain and order filled in.
PermGroup schreier_sims(std::size_t degree, std::vector<Permutation> generators,
                        const SchreierSimsOptions& options = {});

/// Product replacement random element generator ("rattle" variant with an
/// accumulator). Seedable.
class ProductReplacement {
 public:
  ProductReplacement(std::size_t degree, std::span<const Permutation> generators, std::uint64_t seed,
                     std::size_t slots = 10, std::size_t burn_in = 50);

  Permutation next();

 private:
  void step();

  std::size_t degree_;
  std::mt19937_64 rng_;
  std::vector<Permutation> slots_;
  Permutation accumulator_;
};

/// Draws one element with a fresh product replacement state.
Permutation random_element(const PermGroup& group, std::uint64_t seed);

/// Invariant for generator lists: every generator has the given degree.
void check_degree(std::span<const Permutation> generators, std::size_t degree);

}  // namespace olt
