#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "olt/geometry.hpp"
#include "olt/linalg.hpp"

namespace olt {

/// Forms of a fixed (multi)degree on an ambient space, as an F_2-vector space.
///
/// Raw monomials are exponent vectors over all ambient coordinates with the
/// requested degree on each factor (weighted degree on P(1:1:1:2); one degree
/// on P^9 for Gr25 and on P^15 for og+), in descending lexicographic order of
/// the exponent vector: x_0^d first. On a product the first factor's
/// exponents therefore vary slowest.
///
/// Basis elements coincide with raw monomials except on the twist, whose
/// forms have F_4 coefficients fixed by the Galois action c_{ab} -> conj(c_{ba})
/// (a, b raw monomial indices of the two P^2 factors). There the basis runs
/// over pairs a <= b in lexicographic order: for a = b the monomial x^a y^a;
/// for a < b first x^a y^b + x^b y^a, then w x^a y^b + w^2 x^b y^a, where w is
/// the generator of F_4 (polynomial basis 1, w).
class FormSpace {
 public:
  FormSpace(AmbientSpace space, std::vector<int> degree);

  const AmbientSpace& space() const { return space_; }
  const std::vector<int>& degree() const { return degree_; }
  std::size_t dimension() const { return basis_.size(); }
  std::size_t raw_count() const { return raw_.size(); }
  const std::vector<int>& raw_monomial(std::size_t r) const { return raw_[r]; }
  int raw_index(const std::vector<int>& exponents) const;
  /// Field degree of the coefficients (1, or 2 on the twist).
  int coefficient_degree() const { return space_.kind() == SpaceKind::Twist ? 2 : 1; }
  /// "desclex" or "desclex-descent".
  std::string order_id() const;

  struct Term {
    std::uint32_t raw;
    Elem coeff;
  };
  const std::vector<Term>& basis_terms(std::size_t b) const { return basis_[b]; }

  /// Raw coefficient vector (over F_{2^c}) of a form given in the basis.
  std::vector<Elem> to_raw(const BitVec& f) const;
  /// Inverse of to_raw; throws DomainError when the raw vector is not a form of this space.
  BitVec from_raw(std::span<const Elem> raw) const;

  /// Values of the raw monomials at a point over F_{2^i}, in F_{2^d},
  /// d = coordinate_degree(i). On the twist with i odd the point p stands for
  /// (p, p^{2^i}).
  std::vector<Elem> raw_values(const ProjPoint& p, int i) const;
  /// Values of the basis elements at a point over F_{2^i}.
  std::vector<Elem> basis_values(const ProjPoint& p, int i) const;
  Elem evaluate(const BitVec& f, const ProjPoint& p, int i = 1) const;

 private:
  AmbientSpace space_;
  std::vector<int> degree_;
  std::vector<std::vector<int>> raw_;
  std::vector<std::vector<Term>> basis_;
};

/// Product of forms, as a form of the summed degree.
BitVec multiply(const FormSpace& a, const BitVec& f, const FormSpace& b, const BitVec& g, const FormSpace& out);

/// The forms of `out` in the ideal generated by `gens` (forms of `gen_space`):
/// a row-reduced basis of the span of h * g, h running over a basis of the
/// complementary degree.
std::vector<BitVec> ideal_in_degree(const FormSpace& gen_space, std::span<const BitVec> gens,
                                    const FormSpace& out);

/// Basis of the forms vanishing at every given F_2-point.
std::vector<BitVec> hypersurfaces_through(const FormSpace& forms, std::span<const ProjPoint> points);

/// The quotient of a form space by a subspace vanishing on the relevant
/// locus; forms are written in normal form (zero on the pivot columns of the
/// reduced subspace basis).
class Quotient {
 public:
  Quotient(std::size_t dimension, std::vector<BitVec> relations);
  std::size_t dimension() const { return free_.size(); }
  std::size_t ambient_dimension() const { return n_; }
  const std::vector<BitVec>& relations() const { return rel_; }
  BitVec reduce(BitVec f) const;
  /// Ambient vector with the given quotient coordinates on the free columns.
  BitVec lift(const BitVec& coords) const;
  BitVec coordinates(const BitVec& f) const;  // of reduce(f)

 private:
  std::size_t n_;
  std::vector<BitVec> rel_;
  std::vector<std::size_t> pivots_;
  std::vector<std::size_t> free_;
};

/// All normal forms f (modulo the quotient) with f = 0 on the target points
/// and f = 1 on the rest of the locus (F_2-points). Throws DomainError when a
/// target point is not in the locus and ResourceError when more than limit
/// solutions exist.
std::vector<BitVec> exact_point_refinement(const FormSpace& forms, const Quotient& quotient,
                                           std::span<const ProjPoint> locus, std::span<const ProjPoint> target,
                                           std::size_t limit = std::size_t{1} << 24);

/// F_{2^i}-points of a locus with every basis element of a form space
/// evaluated, bitsliced: plane(b, t) has bit k set when bit t of the value of
/// basis element b at point k is 1.
class PointTable {
 public:
  PointTable(const FormSpace& forms, std::vector<ProjPoint> points, int i);

  int extension() const { return i_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<ProjPoint>& points() const { return points_; }
  /// Number of points where f vanishes.
  std::size_t count_zeros(const BitVec& f) const;
  /// Mask of the points where f vanishes.
  BitVec zero_mask(const BitVec& f) const;
  /// Number of points of mask where f vanishes.
  std::size_t count_zeros(const BitVec& f, const BitVec& mask) const;

 private:
  int i_;
  int value_bits_;
  std::size_t words_;
  std::vector<ProjPoint> points_;
  std::vector<std::uint64_t> planes_;  // [basis][bit][word]
};

}  // namespace olt
