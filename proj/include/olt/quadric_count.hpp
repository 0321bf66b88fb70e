#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "olt/field.hpp"

namespace olt {

/// Quadratic form with F_2 coefficients in up to 64 variables:
/// sum_i d_i x_i^2 + sum_{i<k} c_ik x_i x_k. cross[i] holds c_ik at bit k (k > i).
struct QuadraticForm2 {
  std::size_t vars = 0;
  std::uint64_t diag = 0;
  std::vector<std::uint64_t> cross;

  explicit QuadraticForm2(std::size_t n = 0) : vars(n), cross(n, 0) {}
  void add_monomial(std::size_t i, std::size_t k);
  /// Value at a point of F_2^vars.
  bool operator()(std::uint64_t x) const;
  /// Value at a point over F_{2^j} (coordinates given as field elements).
  Elem evaluate(const BinaryField& f, std::span<const Elem> x) const;
  /// Pullback along x = sum_i t_i basis[i] (basis vectors in F_2^vars).
  QuadraticForm2 restrict_to(std::span<const std::uint64_t> basis) const;
  bool is_zero() const;
};

/// Number of points of P^{r-1}(F_{2^j}) where every form vanishes. Counting
/// stops once the count exceeds stop_above; the return value is then
/// stop_above + 1. Uses the Weil restriction to F_2 and a Gray-code walk per
/// affine chart. Requires forms.size() * j <= 128.
std::uint64_t count_projective_zeros(std::span<const QuadraticForm2> forms, std::size_t r, int j,
                                     std::uint64_t stop_above = UINT64_MAX);

/// Direct evaluation at every normalized point; for validation.
std::uint64_t count_projective_zeros_naive(std::span<const QuadraticForm2> forms, std::size_t r, int j);

}  // namespace olt
