#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace olt {

using Elem = std::uint8_t;

/// F_{2^k} for 1 <= k <= 8 in the polynomial basis modulo a fixed
/// irreducible polynomial. Addition is xor.
class BinaryField {
 public:
  static const BinaryField& get(int k);

  int degree() const { return k_; }
  unsigned size() const { return 1u << k_; }
  /// Modulus with the leading term, e.g. 0x13 for x^4 + x + 1.
  unsigned modulus() const { return modulus_; }

  static Elem add(Elem a, Elem b) { return a ^ b; }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, unsigned e) const;
  Elem square(Elem a) const { return mul(a, a); }
  Elem frobenius(Elem a, int times = 1) const;
  /// Unique square root (squaring is a bijection in characteristic 2).
  Elem sqrt(Elem a) const { return frobenius(a, k_ - 1); }
  /// A generator of the multiplicative group.
  Elem primitive() const { return generator_; }
  /// Trace to F_2.
  Elem trace(Elem a) const;

  /// Carry-less product reduced modulo the modulus; independent of the tables.
  Elem mul_slow(Elem a, Elem b) const;

 private:
  explicit BinaryField(int k);
  int k_;
  unsigned modulus_;
  Elem generator_ = 1;
  std::array<Elem, 512> exp_{};
  std::array<int, 256> log_{};
};

/// Images of the polynomial basis 1, t, ..., t^{j-1} of F_{2^j} inside F_{2^k}
/// (j divides k); the embedding is F_2-linear.
class Embedding {
 public:
  Embedding(int j, int k);
  Elem operator()(Elem a) const { return table_[a]; }
  int from() const { return j_; }
  int to() const { return k_; }

 private:
  int j_, k_;
  std::vector<Elem> table_;
};

}  // namespace olt
