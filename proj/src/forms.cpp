#include "olt/forms.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "olt/errors.hpp"

namespace olt {

namespace {

struct Block {
  std::size_t start;
  std::vector<int> weights;
};

std::vector<Block> blocks_of(const AmbientSpace& s) {
  switch (s.kind()) {
    case SpaceKind::Weighted1112: return {{0, {1, 1, 1, 2}}};
    case SpaceKind::Product:
    case SpaceKind::X21:
    case SpaceKind::X11:
    case SpaceKind::Twist: {
      const auto a = static_cast<std::size_t>(s.factors()[0] + 1);
      const auto b = static_cast<std::size_t>(s.factors()[1] + 1);
      return {{0, std::vector<int>(a, 1)}, {a, std::vector<int>(b, 1)}};
    }
    default: return {{0, std::vector<int>(static_cast<std::size_t>(s.factors()[0] + 1), 1)}};
  }
}

// Exponent vectors of the given weighted degree, descending lexicographic.
void exponents(const std::vector<int>& w, int d, std::size_t pos, std::vector<int>& cur,
               std::vector<std::vector<int>>& out) {
  if (pos == w.size()) {
    if (d == 0) out.push_back(cur);
    return;
  }
  for (int e = d / w[pos]; e >= 0; --e) {
    cur[pos] = e;
    exponents(w, d - e * w[pos], pos + 1, cur, out);
  }
  cur[pos] = 0;
}

std::size_t total_coords(const std::vector<Block>& bl) {
  return bl.back().start + bl.back().weights.size();
}

}  // namespace

FormSpace::FormSpace(AmbientSpace space, std::vector<int> degree) : space_(std::move(space)), degree_(std::move(degree)) {
  const auto bl = blocks_of(space_);
  if (degree_.size() != bl.size()) throw DomainError("degree does not match the factors of the space");
  for (int d : degree_)
    if (d < 0) throw DomainError("negative degree");
  const std::size_t n = total_coords(bl);
  raw_.push_back(std::vector<int>(n, 0));
  for (std::size_t k = 0; k < bl.size(); ++k) {
    std::vector<std::vector<int>> part;
    std::vector<int> cur(bl[k].weights.size(), 0);
    exponents(bl[k].weights, degree_[k], 0, cur, part);
    std::vector<std::vector<int>> next;
    for (const auto& r : raw_)
      for (const auto& e : part) {
        auto v = r;
        std::copy(e.begin(), e.end(), v.begin() + static_cast<std::ptrdiff_t>(bl[k].start));
        next.push_back(std::move(v));
      }
    raw_ = std::move(next);
  }
  if (space_.kind() != SpaceKind::Twist) {
    for (std::uint32_t r = 0; r < raw_.size(); ++r) basis_.push_back({{r, 1}});
    return;
  }
  const std::size_t nb = raw_.size();
  std::size_t m = 0;
  while (m * m < nb) ++m;
  for (std::uint32_t a = 0; a < m; ++a)
    for (std::uint32_t b = a; b < m; ++b) {
      if (a == b) {
        basis_.push_back({{static_cast<std::uint32_t>(a * m + a), 1}});
        continue;
      }
      const auto ab = static_cast<std::uint32_t>(a * m + b), ba = static_cast<std::uint32_t>(b * m + a);
      basis_.push_back({{ab, 1}, {ba, 1}});
      basis_.push_back({{ab, 2}, {ba, 3}});
    }
}

std::string FormSpace::order_id() const {
  return space_.kind() == SpaceKind::Twist ? "desclex-descent" : "desclex";
}

int FormSpace::raw_index(const std::vector<int>& e) const {
  auto it = std::lower_bound(raw_.begin(), raw_.end(), e, std::greater<>());
  if (it == raw_.end() || *it != e) return -1;
  return static_cast<int>(it - raw_.begin());
}

std::vector<Elem> FormSpace::to_raw(const BitVec& f) const {
  if (f.size() != basis_.size()) throw DomainError("form has the wrong dimension");
  std::vector<Elem> raw(raw_.size(), 0);
  for (std::size_t b = 0; b < basis_.size(); ++b)
    if (f.get(b))
      for (const auto& t : basis_[b]) raw[t.raw] ^= t.coeff;
  return raw;
}

BitVec FormSpace::from_raw(std::span<const Elem> raw) const {
  if (raw.size() != raw_.size()) throw DomainError("raw vector has the wrong length");
  BitVec f(basis_.size());
  if (space_.kind() != SpaceKind::Twist) {
    for (std::size_t r = 0; r < raw.size(); ++r) {
      if (raw[r] > 1) throw DomainError("coefficient outside F_2");
      f.set(r, raw[r]);
    }
    return f;
  }
  const BinaryField& f4 = BinaryField::get(2);
  std::size_t m = 0;
  while (m * m < raw.size()) ++m;
  std::size_t k = 0;
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b) {
      const Elem c = raw[a * m + b];
      if (a == b) {
        if (c > 1) throw DomainError("form is not Galois invariant");
        f.set(k++, c);
        continue;
      }
      if (raw[b * m + a] != f4.square(c)) throw DomainError("form is not Galois invariant");
      f.set(k++, c & 1);
      f.set(k++, c >> 1 & 1);
    }
  return f;
}

std::vector<Elem> FormSpace::raw_values(const ProjPoint& p, int i) const {
  const int d = space_.coordinate_degree(i);
  const BinaryField& f = BinaryField::get(d);
  std::vector<Elem> x = p.coords;
  if (space_.kind() == SpaceKind::Twist && i % 2 == 1) {
    if (x.size() != 3) throw DomainError("coordinate count mismatch");
    for (int k = 0; k < 3; ++k) x.push_back(f.frobenius(x[static_cast<std::size_t>(k)], i));
  }
  if (x.size() != raw_[0].size()) throw DomainError("coordinate count mismatch");
  int max_e = 0;
  for (int e : degree_) max_e = std::max(max_e, e);
  std::vector<std::vector<Elem>> pw(x.size(), std::vector<Elem>(static_cast<std::size_t>(max_e) + 1, 1));
  for (std::size_t c = 0; c < x.size(); ++c)
    for (int e = 1; e <= max_e; ++e) pw[c][static_cast<std::size_t>(e)] = f.mul(pw[c][static_cast<std::size_t>(e - 1)], x[c]);
  std::vector<Elem> out(raw_.size());
  for (std::size_t r = 0; r < raw_.size(); ++r) {
    Elem v = 1;
    for (std::size_t c = 0; c < x.size() && v; ++c)
      if (raw_[r][c]) v = f.mul(v, pw[c][static_cast<std::size_t>(raw_[r][c])]);
    out[r] = v;
  }
  return out;
}

std::vector<Elem> FormSpace::basis_values(const ProjPoint& p, int i) const {
  const auto raw = raw_values(p, i);
  if (space_.kind() != SpaceKind::Twist) return raw;
  const int d = space_.coordinate_degree(i);
  const BinaryField& f = BinaryField::get(d);
  const Embedding emb(2, d);
  std::vector<Elem> out(basis_.size(), 0);
  for (std::size_t b = 0; b < basis_.size(); ++b)
    for (const auto& t : basis_[b]) out[b] ^= f.mul(emb(t.coeff), raw[t.raw]);
  return out;
}

Elem FormSpace::evaluate(const BitVec& g, const ProjPoint& p, int i) const {
  const auto v = basis_values(p, i);
  Elem s = 0;
  for (std::size_t b = 0; b < v.size(); ++b)
    if (g.get(b)) s ^= v[b];
  return s;
}

BitVec multiply(const FormSpace& a, const BitVec& f, const FormSpace& b, const BitVec& g, const FormSpace& out) {
  if (!(a.space() == b.space()) || !(a.space() == out.space())) throw DomainError("forms on different spaces");
  for (std::size_t k = 0; k < out.degree().size(); ++k)
    if (a.degree()[k] + b.degree()[k] != out.degree()[k]) throw DomainError("degrees do not add up");
  const BinaryField& fc = BinaryField::get(a.coefficient_degree());
  const auto ra = a.to_raw(f), rb = b.to_raw(g);
  std::vector<Elem> acc(out.raw_count(), 0);
  std::vector<int> e(a.raw_monomial(0).size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    if (!ra[i]) continue;
    for (std::size_t j = 0; j < rb.size(); ++j) {
      if (!rb[j]) continue;
      for (std::size_t c = 0; c < e.size(); ++c) e[c] = a.raw_monomial(i)[c] + b.raw_monomial(j)[c];
      acc[static_cast<std::size_t>(out.raw_index(e))] ^= fc.mul(ra[i], rb[j]);
    }
  }
  return out.from_raw(acc);
}

std::vector<BitVec> ideal_in_degree(const FormSpace& gen_space, std::span<const BitVec> gens, const FormSpace& out) {
  std::vector<int> rest(out.degree().size());
  for (std::size_t k = 0; k < rest.size(); ++k) {
    rest[k] = out.degree()[k] - gen_space.degree()[k];
    if (rest[k] < 0) return {};
  }
  const FormSpace h(out.space(), rest);
  F2Matrix m(0, out.dimension());
  for (const auto& g : gens)
    for (std::size_t b = 0; b < h.dimension(); ++b) {
      BitVec e(h.dimension());
      e.set(b);
      m.append_row(multiply(h, e, gen_space, g, out));
    }
  m.rref();
  std::vector<BitVec> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
  return rows;
}

namespace {

BitVec f2_row(const FormSpace& forms, const ProjPoint& p) {
  const auto v = forms.basis_values(p, 1);
  BitVec row(v.size());
  for (std::size_t b = 0; b < v.size(); ++b) {
    if (v[b] > 1) throw DomainError("point is not F_2-rational");
    row.set(b, v[b]);
  }
  return row;
}

}  // namespace

std::vector<BitVec> hypersurfaces_through(const FormSpace& forms, std::span<const ProjPoint> points) {
  F2Matrix m(0, forms.dimension());
  for (const auto& p : points) {
    if (!forms.space().contains(p, 1)) throw DomainError("point outside the ambient space");
    m.append_row(f2_row(forms, p));
  }
  return m.kernel();
}

Quotient::Quotient(std::size_t n, std::vector<BitVec> relations) : n_(n) {
  F2Matrix m(0, n);
  for (auto& r : relations) {
    if (r.size() != n) throw DomainError("relation has the wrong dimension");
    m.append_row(std::move(r));
  }
  pivots_ = m.rref();
  for (std::size_t r = 0; r < m.rows(); ++r) rel_.push_back(m.row(r));
  std::vector<bool> piv(n, false);
  for (auto p : pivots_) piv[p] = true;
  for (std::size_t c = 0; c < n; ++c)
    if (!piv[c]) free_.push_back(c);
}

BitVec Quotient::reduce(BitVec f) const {
  for (std::size_t r = 0; r < rel_.size(); ++r)
    if (f.get(pivots_[r])) f ^= rel_[r];
  return f;
}

BitVec Quotient::lift(const BitVec& coords) const {
  BitVec f(n_);
  for (std::size_t k = 0; k < free_.size(); ++k) f.set(free_[k], coords.get(k));
  return f;
}

BitVec Quotient::coordinates(const BitVec& f) const {
  const BitVec g = reduce(f);
  BitVec c(free_.size());
  for (std::size_t k = 0; k < free_.size(); ++k) c.set(k, g.get(free_[k]));
  return c;
}

std::vector<BitVec> exact_point_refinement(const FormSpace& forms, const Quotient& quotient,
                                           std::span<const ProjPoint> locus, std::span<const ProjPoint> target,
                                           std::size_t limit) {
  if (quotient.ambient_dimension() != forms.dimension()) throw DomainError("quotient does not match the form space");
  std::vector<bool> in_target(locus.size(), false);
  for (const auto& z : target) {
    auto it = std::find(locus.begin(), locus.end(), z);
    if (it == locus.end()) throw DomainError("prescribed point outside the locus");
    in_target[static_cast<std::size_t>(it - locus.begin())] = true;
  }
  const std::size_t q = quotient.dimension();
  F2Matrix m(0, q);
  BitVec rhs(locus.size());
  for (std::size_t k = 0; k < locus.size(); ++k) {
    const BitVec full = f2_row(forms, locus[k]);
    BitVec row(q);
    BitVec e(q);
    for (std::size_t c = 0; c < q; ++c) {
      e.set(c);
      row.set(c, full.dot(quotient.lift(e)));
      e.set(c, false);
    }
    m.append_row(std::move(row));
    rhs.set(k, !in_target[k]);
  }
  const auto base = m.solve(rhs);
  if (!base) return {};
  const auto ker = m.kernel();
  if (ker.size() >= 63 || (std::uint64_t{1} << ker.size()) > limit)
    throw ResourceError("exact refinement has too many solutions");
  std::vector<BitVec> out;
  BitVec cur = *base;
  out.push_back(quotient.lift(cur));
  const std::uint64_t total = std::uint64_t{1} << ker.size();
  for (std::uint64_t s = 1; s < total; ++s) {
    cur ^= ker[static_cast<std::size_t>(std::countr_zero(s))];
    out.push_back(quotient.lift(cur));
  }
  std::sort(out.begin(), out.end());
  return out;
}

PointTable::PointTable(const FormSpace& forms, std::vector<ProjPoint> points, int i)
    : i_(i), value_bits_(forms.space().coordinate_degree(i)), points_(std::move(points)) {
  words_ = (points_.size() + 63) / 64;
  const std::size_t nb = forms.dimension();
  planes_.assign(nb * static_cast<std::size_t>(value_bits_) * words_, 0);
  for (std::size_t k = 0; k < points_.size(); ++k) {
    const auto v = forms.basis_values(points_[k], i);
    for (std::size_t b = 0; b < nb; ++b)
      for (int t = 0; t < value_bits_; ++t)
        if (v[b] >> t & 1)
          planes_[(b * static_cast<std::size_t>(value_bits_) + static_cast<std::size_t>(t)) * words_ + k / 64] |=
              std::uint64_t{1} << (k % 64);
  }
}

BitVec PointTable::zero_mask(const BitVec& f) const {
  std::vector<std::size_t> terms;
  for (std::size_t b = 0; b < f.size(); ++b)
    if (f.get(b)) terms.push_back(b);
  BitVec mask(points_.size());
  auto words = mask.words();
  const auto vb = static_cast<std::size_t>(value_bits_);
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t nonzero = 0;
    for (std::size_t t = 0; t < vb; ++t) {
      std::uint64_t x = 0;
      for (auto b : terms) x ^= planes_[(b * vb + t) * words_ + w];
      nonzero |= x;
    }
    std::uint64_t valid = ~std::uint64_t{0};
    if (w + 1 == words_ && points_.size() % 64) valid = (std::uint64_t{1} << (points_.size() % 64)) - 1;
    words[w] = ~nonzero & valid;
  }
  return mask;
}

std::size_t PointTable::count_zeros(const BitVec& f) const { return zero_mask(f).popcount(); }

std::size_t PointTable::count_zeros(const BitVec& f, const BitVec& mask) const {
  const BitVec z = zero_mask(f);
  std::size_t c = 0;
  for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(z.word(w) & mask.word(w)));
  return c;
}

}  // namespace olt
