#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

#include "olt/field.hpp"
#include "olt/linalg.hpp"
#include "olt/perm_group.hpp"

namespace olt {

// V = F^10 with Q(x) = sum_{i=1..5} x_i x_{5+i}. Coordinates are 0-based:
// index m in 0..4 is e_{1+m} (L_0), index 5+m is e_{6+m} (L_inf).
// The exterior algebra of L_inf has basis e_T, T a 5-bit mask over
// {e_6,...,e_10}; S^ev uses the 16 even masks in increasing numeric order.

using Vec10 = std::array<Elem, 10>;
using FullSpinor = std::array<Elem, 32>;  // indexed by mask
using Spinor = std::array<Elem, 16>;      // S^ev coordinates

/// The even masks, in coordinate order.
const std::array<std::uint8_t, 16>& even_masks();
/// Coordinate index of an even mask, -1 for odd masks.
int even_index(unsigned mask);

Elem quadratic_form(const BinaryField& f, const Vec10& x);
Elem polar_form(const BinaryField& f, const Vec10& x, const Vec10& y);

/// v . s: creation by the L_inf part of v, contraction by the L_0 part.
FullSpinor clifford_action(const BinaryField& f, const Vec10& v, const FullSpinor& s);

FullSpinor embed_even(const Spinor& s);

/// First nonzero coordinate scaled to 1; throws DomainError on zero.
Spinor normalize_spinor(const BinaryField& f, Spinor s);

/// Five rows of a Lagrangian subspace over F_{2^k}, kept in reduced echelon form.
struct Lagrangian {
  int field_degree = 1;
  std::vector<Vec10> rows;

  friend bool operator==(const Lagrangian&, const Lagrangian&) = default;
};

/// Reduced echelon form of the span; throws DomainError unless it is totally
/// isotropic of dimension 5.
Lagrangian make_lagrangian(int field_degree, std::vector<Vec10> rows);
std::size_t intersection_dimension(const Lagrangian& a, const Lagrangian& b);
/// L_0 = span(e_1, ..., e_5).
Lagrangian lagrangian_l0(int field_degree = 1);
bool on_plus_component(const Lagrangian& l);

/// Joint kernel of the Clifford operators of L in S^ev, normalized.
Spinor lagrangian_to_spinor(const Lagrangian& l);
/// Kernel of v -> v.s; throws PurityError unless it has dimension 5.
Lagrangian spinor_to_lagrangian(int field_degree, const Spinor& s);
bool is_pure(int field_degree, const Spinor& s);

// ---- F_2 ----------------------------------------------------------------
// Vectors of F_2^10 as 10-bit words (bit j = coordinate j); 10x10 matrices as
// columns, g(x) = xor of col[j] over the set bits j of x; spinors over F_2 as
// 16-bit words (bit i = coordinate i).

using F2Vec10 = std::uint16_t;
using F2Matrix10 = std::array<std::uint16_t, 10>;
using F2Spinor = std::uint16_t;

inline bool q2(F2Vec10 x) { return __builtin_popcount(x & (x >> 5) & 31u) & 1; }
inline bool b2(F2Vec10 x, F2Vec10 y) {
  return __builtin_popcount(((x & (y >> 5)) ^ ((x >> 5) & y)) & 31u) & 1;
}

F2Vec10 apply(const F2Matrix10& g, F2Vec10 x);
F2Matrix10 multiply(const F2Matrix10& a, const F2Matrix10& b);  // a(b(x))
F2Matrix10 identity10();
F2Matrix10 transvection(F2Vec10 v);  // x -> x + B(x,v) v, Q(v) = 1
bool preserves_q(const F2Matrix10& g);
/// rank(g + I) mod 2; throws DomainError when g does not preserve Q.
int dickson_invariant(const F2Matrix10& g);
/// 1 when g exchanges the two families of Lagrangians, from dim(g L_0 cap L_0).
int component_swap_bit(const F2Matrix10& g);

/// Canonical reduced basis of a subspace of F_2^10, packed as a key.
std::uint64_t subspace_key(std::span<const F2Vec10> rows);
std::size_t intersection_dimension2(std::span<const F2Vec10> a, std::span<const F2Vec10> b);

F2Spinor spinor_of_f2(std::span<const F2Vec10> lagrangian);
/// Dimension of the kernel of v -> v.s over F_2.
std::size_t clifford_kernel_dim(F2Spinor s);
std::vector<F2Vec10> clifford_kernel(F2Spinor s);

/// The F_2-points of OG+ in canonical order: lexicographic on the 16
/// normalized spinor coordinates.
class OgPlus {
 public:
  static const OgPlus& get();

  std::size_t size() const { return spinors_.size(); }
  F2Spinor spinor(std::size_t i) const { return spinors_[i]; }
  const std::array<F2Vec10, 5>& lagrangian(std::size_t i) const { return lagrangians_[i]; }
  /// Index of a pure spinor, -1 when it is not one.
  int index_of_spinor(F2Spinor s) const { return spinor_index_[s]; }
  int index_of_lagrangian(std::span<const F2Vec10> rows) const;
  bool is_pure_f2(F2Spinor s) const { return spinor_index_[s] >= 0; }
  /// dim(L_i cap L_j), precomputed.
  std::uint8_t meet(std::size_t i, std::size_t j) const { return meet_[i * spinors_.size() + j]; }

  /// Permutation induced on the point list by g in O(V) preserving OG+.
  Permutation permutation_of(const F2Matrix10& g) const;

 private:
  OgPlus();
  std::vector<F2Spinor> spinors_;
  std::vector<std::array<F2Vec10, 5>> lagrangians_;
  std::vector<int> spinor_index_;  // 65536 entries
  std::unordered_map<std::uint64_t, int> lagrangian_index_;
  std::vector<std::uint8_t> meet_;
};

inline constexpr GroupOrder kSoOrder = 23499295948800ull;

struct SoGenerators {
  PermGroup group;                    // on the OgPlus point list
  std::vector<F2Matrix10> witnesses;  // witnesses[i] induces group.generators()[i]
};

/// Products of two orthogonal transvections, added until the generated group
/// has order kSoOrder.
SoGenerators so_generators(std::uint64_t seed = 1);

/// Quadratic monomials x_i x_j (i <= j), in the order (0,0), (0,1), ..., (15,15).
std::size_t quadratic_monomial_index(int i, int j);
/// A basis of the space of quadrics over F_2 vanishing on OG+, as coefficient
/// rows over the 136 quadratic monomials.
const std::vector<BitVec>& og_quadrics();

}  // namespace olt
