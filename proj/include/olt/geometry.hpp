#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "olt/field.hpp"
#include "olt/linalg.hpp"
#include "olt/perm_group.hpp"

namespace olt {

enum class SpaceKind { Projective, Product, Weighted1112, X21, X11, Grassmannian25, Twist, OgPlus };

/// Homogeneous coordinates, concatenated over the factors, each factor
/// normalized so that its first nonzero coordinate is 1.
struct ProjPoint {
  std::vector<Elem> coords;
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint&, const ProjPoint&) = default;
};

/// Ambient spaces. Coordinates per kind:
///   Projective P^n      x_0..x_n
///   Product P^a x P^b   x_0..x_a, y_0..y_b
///   Weighted1112        x_0, x_1, x_2 (weight 1), y (weight 2)
///   X21 in P^1 x P^2    x_0^2 y_0 + x_0 x_1 y_1 + x_1^2 y_2 = 0
///   X11 in P^1 x P^3    x_0 y_0 + x_1 y_1 = 0
///   Grassmannian25      Pluecker p_01, p_02, p_03, p_04, p_12, ..., p_34
///   Twist of P^2 x P^2  over F_{2^i}: i odd, p in P^2(F_{4^i}) standing for
///                       (p, Frob^i p); i even, a pair (p, q) in P^2(F_{2^i})^2
///   OgPlus              the 16 spinor coordinates
class AmbientSpace {
 public:
  static AmbientSpace projective(int n);
  static AmbientSpace product(int a, int b);
  static AmbientSpace weighted1112();
  static AmbientSpace x21();
  static AmbientSpace x11();
  static AmbientSpace grassmannian25();
  static AmbientSpace twist();
  static AmbientSpace og_plus();
  /// Accepts P<n>, fano, P<a>xP<b>, P(1:1:1:2), X21, X11, Gr25, twist, og+.
  static AmbientSpace parse(std::string_view id);

  SpaceKind kind() const { return kind_; }
  /// Projective dimensions of the factors.
  const std::vector<int>& factors() const { return factors_; }
  std::string id() const;
  /// Field degree of the coordinates of F_{2^i}-points.
  int coordinate_degree(int i) const;
  /// Number of coordinates of F_{2^i}-points.
  std::size_t coordinate_count(int i = 1) const;
  bool contains(const ProjPoint& p, int i = 1) const;

  friend bool operator==(const AmbientSpace&, const AmbientSpace&) = default;

 private:
  SpaceKind kind_ = SpaceKind::Projective;
  std::vector<int> factors_;
};

/// All F_{2^i}-points (as in AmbientSpace), sorted lexicographically on their
/// coordinates. Throws ResourceError when more than budget points would be produced.
std::vector<ProjPoint> enumerate_points(const AmbientSpace& space, int i, std::size_t budget = 1u << 22);

/// Number of F_{2^i}-points, from closed formulas.
std::uint64_t point_count(const AmbientSpace& space, int i);

/// Index of a point in a sorted point list, -1 when absent.
int index_of(const std::vector<ProjPoint>& points, const ProjPoint& p);

/// Scale each factor so its first nonzero coordinate is 1 (weighted rules for
/// P(1:1:1:2)). Throws DomainError on a zero factor.
ProjPoint normalize(const AmbientSpace& space, ProjPoint p, int i = 1);

/// Linear or semilinear map inducing an automorphism of a space over F_2.
/// blocks[f] is a square matrix (row-major) acting on factor f; with swap the
/// factors are exchanged after the blocks act; with frobenius the entries of
/// the point are raised to the second power before the blocks act.
struct MatrixWitness {
  int field_degree = 1;
  std::vector<std::vector<Elem>> blocks;
  bool swap = false;
  bool frobenius = false;
};

ProjPoint apply_witness(const AmbientSpace& space, const MatrixWitness& w, const ProjPoint& p);

struct Automorphisms {
  std::vector<ProjPoint> points;  // the canonical F_2-point list
  PermGroup group;
  std::vector<MatrixWitness> witnesses;  // witnesses[i] induces group.generators()[i]
};

/// Aut(X)(F_2) acting on X(F_2). Throws UnsupportedError for P(1:1:1:2).
Automorphisms automorphism_generators(const AmbientSpace& space);

/// Permutation of the point list induced by a witness.
Permutation permutation_of(const AmbientSpace& space, const std::vector<ProjPoint>& points, const MatrixWitness& w);

struct Span {
  int dimension = -1;  // projective
  std::vector<std::vector<Elem>> basis;  // reduced echelon rows
};

/// Span of points of one projective space (coordinates over F_{2^k}).
Span span_of(const std::vector<ProjPoint>& points, int field_degree = 1);

/// Pluecker coordinates of the span of u, v in F^5, normalized; the pairs
/// (i, j), i < j, in lexicographic order.
std::vector<Elem> pluecker(const BinaryField& f, const std::vector<Elem>& u, const std::vector<Elem>& v);
int pluecker_index(int i, int j);

}  // namespace olt
