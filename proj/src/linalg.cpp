#include "olt/linalg.hpp"

#include <algorithm>
#include <bit>

#include "olt/errors.hpp"

namespace olt {

BitVec BitVec::from_word(std::uint64_t w, std::size_t n) {
  BitVec v(n);
  if (!v.w_.empty()) v.w_[0] = n >= 64 ? w : (w & ((std::uint64_t{1} << n) - 1));
  return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
  if (o.n_ != n_) throw DomainError("bit vector sizes differ");
  for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

bool BitVec::any() const {
  for (auto w : w_)
    if (w) return true;
  return false;
}

std::size_t BitVec::popcount() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitVec::dot(const BitVec& o) const {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
  return std::popcount(acc) & 1;
}

F2Matrix::F2Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVec(cols)) {}

void F2Matrix::append_row(BitVec v) {
  if (rows_.empty() && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw DomainError("row width mismatch");
  rows_.push_back(std::move(v));
}

std::vector<std::size_t> F2Matrix::rref() {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_.size(); ++c) {
    std::size_t p = r;
    while (p < rows_.size() && !rows_[p].get(c)) ++p;
    if (p == rows_.size()) continue;
    std::swap(rows_[p], rows_[r]);
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (i != r && rows_[i].get(c)) rows_[i] ^= rows_[r];
    pivots.push_back(c);
    ++r;
  }
  rows_.resize(r);
  return pivots;
}

std::size_t F2Matrix::rank() const {
  F2Matrix copy = *this;
  return copy.rref().size();
}

std::vector<BitVec> F2Matrix::kernel() const {
  F2Matrix e = *this;
  const auto pivots = e.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<BitVec> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    BitVec v(cols_);
    v.set(free);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (e.rows_[i].get(free)) v.set(pivots[i]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<BitVec> F2Matrix::solve(const BitVec& b) const {
  if (b.size() != rows_.size()) throw DomainError("right-hand side length mismatch");
  // Augment with the right-hand side as an extra column.
  F2Matrix aug(rows_.size(), cols_ + 1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    for (std::size_t c = 0; c < cols_; ++c)
      if (rows_[i].get(c)) aug.set(i, c);
    aug.set(i, cols_, b.get(i));
  }
  const auto pivots = aug.rref();
  if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
  BitVec x(cols_);
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (aug.rows_[i].get(cols_)) x.set(pivots[i]);
  return x;
}

BitVec F2Matrix::apply(const BitVec& x) const {
  BitVec y(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) y.set(i, rows_[i].dot(x));
  return y;
}

std::vector<std::size_t> GfMatrix::rref() {
  const BinaryField& f = *f_;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t p = r;
    while (p < rows_ && at(p, c) == 0) ++p;
    if (p == rows_) continue;
    if (p != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(at(p, j), at(r, j));
    const Elem inv = f.inv(at(r, c));
    for (std::size_t j = c; j < cols_; ++j) at(r, j) = f.mul(at(r, j), inv);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || at(i, c) == 0) continue;
      const Elem m = at(i, c);
      for (std::size_t j = c; j < cols_; ++j) at(i, j) ^= f.mul(m, at(r, j));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t GfMatrix::rank() const {
  GfMatrix copy = *this;
  return copy.rref().size();
}

std::vector<std::vector<Elem>> GfMatrix::kernel() const {
  GfMatrix e = *this;
  const auto pivots = e.rref();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(cols_, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = e.at(i, free);  // -x = x
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank_u64(std::span<const std::uint64_t> rows) {
  std::uint64_t basis[64] = {};
  std::size_t rank = 0;
  for (std::uint64_t v : rows) {
    for (int b = 63; b >= 0 && v; --b) {
      if (!(v >> b & 1)) continue;
      if (!basis[b]) {
        basis[b] = v;
        ++rank;
        v = 0;
      } else {
        v ^= basis[b];
      }
    }
  }
  return rank;
}

std::vector<std::uint64_t> rref_u64(std::span<const std::uint64_t> rows) {
  std::vector<std::uint64_t> basis;
  for (std::uint64_t v : rows) {
    for (auto b : basis)
      if ((v ^ b) < v) v ^= b;
    if (!v) continue;
    for (auto& b : basis)
      if ((b ^ v) < b) b ^= v;
    basis.push_back(v);
    std::sort(basis.begin(), basis.end(), std::greater<>());
  }
  return basis;
}

}  // namespace olt
