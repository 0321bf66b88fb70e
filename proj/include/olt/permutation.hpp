#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace olt {

/// Index into a dense 0-based domain. Every geometric object handed to the
/// group machinery is referred to by its position in a canonical point list.
using Point = std::uint32_t;

/// A permutation of {0, ..., n-1} stored as its image array.
///
/// Composition follows the left-action convention: (a * b)(x) = a(b(x)).
/// Images are stored as 16-bit values, which bounds the domain at 65535
/// points; large trees hold hundreds of thousands of transporters, so the
/// narrower storage halves their footprint.
class Permutation {
 public:
  using Image = std::uint16_t;
  static constexpr std::size_t kMaxDegree = 65535;

  Permutation() = default;

  /// Identity on n points.
  explicit Permutation(std::size_t n);

  /// Validates that `images` is a bijection of {0, ..., n-1}.
  static Permutation from_images(std::span<const Point> images);

  /// Cycles are given as point sequences, e.g. {{0, 1, 2}, {3, 4}}.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<Point>>& cycles);

  static Permutation identity(std::size_t n) { return Permutation(n); }

  std::size_t degree() const { return images_.size(); }

  Point operator()(Point x) const { return images_[x]; }
  Point operator[](Point x) const { return images_[x]; }

  /// Preimage by linear scan. Prefer keeping an inverse around in hot paths.
  Point preimage(Point y) const;

  Permutation inverse() const;
  bool is_identity() const;

  /// a * b, i.e. apply b first.
  friend Permutation operator*(const Permutation& a, const Permutation& b);

  /// a * b^{-1} without materializing the inverse of b.
  static Permutation compose_with_inverse(const Permutation& a, const Permutation& b);

  friend bool operator==(const Permutation& a, const Permutation& b) = default;
  friend auto operator<=>(const Permutation& a, const Permutation& b) = default;

  std::span<const Image> images() const { return images_; }

  /// Whitespace-separated image list.
  std::string to_string() const;
  static Permutation parse(std::string_view text);

  /// Applied to a set of points: returns the sorted image set.
  std::vector<Point> apply_sorted(std::span<const Point> points) const;

  std::size_t hash() const;

 private:
  std::vector<Image> images_;
};

std::ostream& operator<<(std::ostream& os, const Permutation& p);

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const { return p.hash(); }
};

}  // namespace olt
