#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "olt/field.hpp"

namespace olt {

/// Bit vector over F_2, packed in 64-bit words.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  static BitVec from_word(std::uint64_t w, std::size_t n);

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return w_[i >> 6] >> (i & 63) & 1; }
  void set(std::size_t i, bool v = true) {
    if (v)
      w_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  BitVec& operator^=(const BitVec& o);
  bool any() const;
  std::size_t popcount() const;
  /// Parity of the popcount of (this AND o).
  bool dot(const BitVec& o) const;
  std::uint64_t word(std::size_t i = 0) const { return w_.empty() ? 0 : w_[i]; }
  std::span<std::uint64_t> words() { return w_; }
  std::span<const std::uint64_t> words() const { return w_; }

  friend bool operator==(const BitVec&, const BitVec&) = default;
  friend auto operator<=>(const BitVec&, const BitVec&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

/// Dense F_2 matrix stored row-wise as bit vectors.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  BitVec& row(std::size_t i) { return rows_[i]; }
  const BitVec& row(std::size_t i) const { return rows_[i]; }
  bool get(std::size_t r, std::size_t c) const { return rows_[r].get(c); }
  void set(std::size_t r, std::size_t c, bool v = true) { rows_[r].set(c, v); }
  void append_row(BitVec v);

  /// In-place reduced row echelon form; returns pivot columns, zero rows dropped.
  std::vector<std::size_t> rref();
  std::size_t rank() const;
  /// Basis of {x : A x = 0}.
  std::vector<BitVec> kernel() const;
  /// Some x with A x = b, or nothing when inconsistent.
  std::optional<BitVec> solve(const BitVec& b) const;
  BitVec apply(const BitVec& x) const;

 private:
  std::size_t cols_ = 0;
  std::vector<BitVec> rows_;
};

/// Dense matrix over F_{2^k}.
class GfMatrix {
 public:
  GfMatrix(const BinaryField& f, std::size_t rows, std::size_t cols)
      : f_(&f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  const BinaryField& field() const { return *f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  std::vector<std::size_t> rref();
  std::size_t rank() const;
  std::vector<std::vector<Elem>> kernel() const;

 private:
  const BinaryField* f_;
  std::size_t rows_, cols_;
  std::vector<Elem> a_;
};

/// Rank of up to 64 vectors of at most 64 bits (xor basis).
std::size_t rank_u64(std::span<const std::uint64_t> rows);

/// Reduced echelon basis of the span of the given vectors (at most 64 bits).
std::vector<std::uint64_t> rref_u64(std::span<const std::uint64_t> rows);

}  // namespace olt
