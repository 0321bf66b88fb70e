#include "olt/quadric_count.hpp"

#include <bit>

#include "olt/errors.hpp"

namespace olt {

using Word = unsigned __int128;

void QuadraticForm2::add_monomial(std::size_t i, std::size_t k) {
  if (i >= vars || k >= vars) throw DomainError("monomial variable out of range");
  if (i == k)
    diag ^= std::uint64_t{1} << i;
  else if (i < k)
    cross[i] ^= std::uint64_t{1} << k;
  else
    cross[k] ^= std::uint64_t{1} << i;
}

bool QuadraticForm2::operator()(std::uint64_t x) const {
  int v = std::popcount(diag & x);
  for (std::uint64_t s = x; s; s &= s - 1) v += std::popcount(cross[std::countr_zero(s)] & x);
  return v & 1;
}

Elem QuadraticForm2::evaluate(const BinaryField& f, std::span<const Elem> x) const {
  Elem v = 0;
  for (std::size_t i = 0; i < vars; ++i) {
    if (!x[i]) continue;
    if (diag >> i & 1) v ^= f.square(x[i]);
    Elem partner = 0;
    for (std::uint64_t s = cross[i]; s; s &= s - 1) partner ^= x[std::countr_zero(s)];
    v ^= f.mul(x[i], partner);
  }
  return v;
}

QuadraticForm2 QuadraticForm2::restrict_to(std::span<const std::uint64_t> basis) const {
  QuadraticForm2 out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const bool qi = (*this)(basis[i]);
    if (qi) out.diag |= std::uint64_t{1} << i;
    for (std::size_t k = i + 1; k < basis.size(); ++k)
      if ((*this)(basis[i] ^ basis[k]) != (qi != (*this)(basis[k]))) out.cross[i] |= std::uint64_t{1} << k;
  }
  return out;
}

bool QuadraticForm2::is_zero() const {
  if (diag) return false;
  for (auto c : cross)
    if (c) return false;
  return true;
}

namespace {

Word bits_of(Elem e, std::size_t shift) { return static_cast<Word>(e) << shift; }

// Zeros of y(x) = c + sum l_k x_k + sum_{k<m} Q_km x_k x_m over F_2^n, with
// all equations packed in one word.
std::uint64_t gray_zeros(std::size_t n, Word c, const std::vector<Word>& l, const std::vector<Word>& q,
                         std::uint64_t budget) {
  // q is n x n symmetric with zero diagonal
  std::uint64_t count = (c == 0);
  if (count > budget || n == 0) return count;
  std::vector<Word> d1(n);
  d1[0] = l[0];
  for (std::size_t k = 1; k < n; ++k) d1[k] = l[k] ^ q[k * n + k - 1];
  Word y = c;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < total; ++i) {
    const auto k1 = static_cast<std::size_t>(std::countr_zero(i));
    const std::uint64_t rest = i ^ (std::uint64_t{1} << k1);
    if (rest) d1[k1] ^= q[k1 * n + static_cast<std::size_t>(std::countr_zero(rest))];
    y ^= d1[k1];
    if (y == 0 && ++count > budget) return count;
  }
  return count;
}

}  // namespace

std::uint64_t count_projective_zeros(std::span<const QuadraticForm2> forms, std::size_t r, int j,
                                     std::uint64_t stop_above) {
  if (forms.size() * static_cast<std::size_t>(j) > 128) throw DomainError("too many equations for one word");
  for (const auto& f : forms)
    if (f.vars != r) throw DomainError("form arity mismatch");
  if (r == 0) return 0;
  const BinaryField& field = BinaryField::get(j);
  const auto uj = static_cast<std::size_t>(j);
  std::vector<Elem> basis(uj), basis_sq(uj);
  for (std::size_t t = 0; t < uj; ++t) {
    basis[t] = static_cast<Elem>(1u << t);
    basis_sq[t] = field.square(basis[t]);
  }
  std::uint64_t count = 0;
  for (std::size_t chart = 0; chart < r; ++chart) {
    // lambda_chart = 1, earlier coordinates 0, later ones free
    const std::size_t free_vars = r - 1 - chart;
    const std::size_t n = free_vars * uj;
    if (n > 62) throw ResourceError("point enumeration too large");
    Word c = 0;
    std::vector<Word> l(n, 0), q(n * n, 0);
    for (std::size_t fi = 0; fi < forms.size(); ++fi) {
      const auto& f = forms[fi];
      const std::size_t shift = fi * uj;
      if (f.diag >> chart & 1) c ^= bits_of(1, shift);
      for (std::size_t a = 0; a < free_vars; ++a) {
        const std::size_t va = chart + 1 + a;
        const bool lin = f.cross[chart] >> va & 1;
        const bool sq = f.diag >> va & 1;
        for (std::size_t t = 0; t < uj; ++t) {
          Elem e = 0;
          if (lin) e ^= basis[t];
          if (sq) e ^= basis_sq[t];
          l[a * uj + t] ^= bits_of(e, shift);
        }
        for (std::size_t b = a + 1; b < free_vars; ++b) {
          if (!(f.cross[va] >> (chart + 1 + b) & 1)) continue;
          for (std::size_t t = 0; t < uj; ++t)
            for (std::size_t u = 0; u < uj; ++u) {
              const Word w = bits_of(field.mul(basis[t], basis[u]), shift);
              const std::size_t x = a * uj + t, y = b * uj + u;
              q[x * n + y] ^= w;
              q[y * n + x] ^= w;
            }
        }
      }
    }
    const std::uint64_t budget = stop_above == UINT64_MAX ? UINT64_MAX : stop_above - count;
    count += gray_zeros(n, c, l, q, budget);
    if (count > stop_above) return stop_above + 1;
  }
  return count;
}

std::uint64_t count_projective_zeros_naive(std::span<const QuadraticForm2> forms, std::size_t r, int j) {
  const BinaryField& f = BinaryField::get(j);
  const unsigned qn = f.size();
  std::uint64_t count = 0;
  std::vector<Elem> x(r);
  for (std::size_t chart = 0; chart < r; ++chart) {
    const std::size_t free_vars = r - 1 - chart;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < free_vars; ++i) total *= qn;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::fill(x.begin(), x.end(), Elem{0});
      x[chart] = 1;
      std::uint64_t rest = idx;
      for (std::size_t i = 0; i < free_vars; ++i) {
        x[chart + 1 + i] = static_cast<Elem>(rest % qn);
        rest /= qn;
      }
      bool all = true;
      for (const auto& form : forms)
        if (form.evaluate(f, x)) {
          all = false;
          break;
        }
      count += all;
    }
  }
  return count;
}

}  // namespace olt
