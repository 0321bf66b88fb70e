#include "olt/spinor.hpp"

#include <algorithm>
#include <bit>

#include "olt/errors.hpp"

namespace olt {

namespace {

std::array<std::uint8_t, 16> make_even_masks() {
  std::array<std::uint8_t, 16> out{};
  int n = 0;
  for (unsigned m = 0; m < 32; ++m)
    if (std::popcount(m) % 2 == 0) out[n++] = static_cast<std::uint8_t>(m);
  return out;
}

std::uint32_t act2(F2Vec10 v, std::uint32_t s) {
  std::uint32_t r = 0;
  while (s) {
    const unsigned t = static_cast<unsigned>(std::countr_zero(s));
    s &= s - 1;
    for (unsigned m = 0; m < 5; ++m) {
      const unsigned bit = 1u << m;
      if ((v >> (5 + m) & 1) && !(t & bit)) r ^= 1u << (t | bit);
      if ((v >> m & 1) && (t & bit)) r ^= 1u << (t ^ bit);
    }
  }
  return r;
}

std::uint32_t full_of(F2Spinor s) {
  std::uint32_t r = 0;
  const auto& masks = even_masks();
  for (int i = 0; i < 16; ++i)
    if (s >> i & 1) r |= 1u << masks[i];
  return r;
}

// Kernel of the F2-linear map x -> xor of images[j] over set bits j of x.
std::vector<std::uint16_t> kernel_of_images(std::span<const std::uint32_t> images) {
  std::vector<std::pair<std::uint32_t, std::uint16_t>> pivots;
  std::vector<std::uint16_t> kernel;
  for (std::size_t j = 0; j < images.size(); ++j) {
    std::uint32_t img = images[j];
    std::uint16_t comb = static_cast<std::uint16_t>(1u << j);
    for (const auto& [p, c] : pivots)
      if ((img ^ p) < img) {
        img ^= p;
        comb ^= c;
      }
    if (img) {
      pivots.emplace_back(img, comb);
      std::sort(pivots.begin(), pivots.end(), std::greater<>());
    } else {
      kernel.push_back(comb);
    }
  }
  return kernel;
}

}  // namespace

const std::array<std::uint8_t, 16>& even_masks() {
  static const auto masks = make_even_masks();
  return masks;
}

int even_index(unsigned mask) {
  const auto& m = even_masks();
  const auto it = std::find(m.begin(), m.end(), mask);
  return it == m.end() ? -1 : static_cast<int>(it - m.begin());
}

Elem quadratic_form(const BinaryField& f, const Vec10& x) {
  Elem q = 0;
  for (int i = 0; i < 5; ++i) q ^= f.mul(x[i], x[5 + i]);
  return q;
}

Elem polar_form(const BinaryField& f, const Vec10& x, const Vec10& y) {
  Elem b = 0;
  for (int i = 0; i < 5; ++i) b ^= f.mul(x[i], y[5 + i]) ^ f.mul(x[5 + i], y[i]);
  return b;
}

FullSpinor clifford_action(const BinaryField& f, const Vec10& v, const FullSpinor& s) {
  FullSpinor r{};
  for (unsigned t = 0; t < 32; ++t) {
    if (!s[t]) continue;
    for (unsigned m = 0; m < 5; ++m) {
      const unsigned bit = 1u << m;
      if (v[5 + m] && !(t & bit)) r[t | bit] ^= f.mul(v[5 + m], s[t]);
      if (v[m] && (t & bit)) r[t ^ bit] ^= f.mul(v[m], s[t]);
    }
  }
  return r;
}

FullSpinor embed_even(const Spinor& s) {
  FullSpinor r{};
  const auto& masks = even_masks();
  for (int i = 0; i < 16; ++i) r[masks[i]] = s[i];
  return r;
}

Spinor normalize_spinor(const BinaryField& f, Spinor s) {
  for (int i = 0; i < 16; ++i) {
    if (!s[i]) continue;
    const Elem inv = f.inv(s[i]);
    for (auto& c : s) c = f.mul(c, inv);
    return s;
  }
  throw DomainError("zero spinor");
}

Lagrangian make_lagrangian(int field_degree, std::vector<Vec10> rows) {
  const BinaryField& f = BinaryField::get(field_degree);
  GfMatrix m(f, rows.size(), 10);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < 10; ++j) m.at(i, j) = rows[i][j];
  const auto pivots = m.rref();
  if (pivots.size() != 5) throw DomainError("Lagrangian needs rank 5");
  Lagrangian l;
  l.field_degree = field_degree;
  for (std::size_t i = 0; i < 5; ++i) {
    Vec10 r{};
    for (int j = 0; j < 10; ++j) r[j] = m.at(i, j);
    l.rows.push_back(r);
  }
  for (std::size_t i = 0; i < 5; ++i) {
    if (quadratic_form(f, l.rows[i])) throw DomainError("subspace is not totally isotropic");
    for (std::size_t j = i + 1; j < 5; ++j)
      if (polar_form(f, l.rows[i], l.rows[j])) throw DomainError("subspace is not totally isotropic");
  }
  return l;
}

std::size_t intersection_dimension(const Lagrangian& a, const Lagrangian& b) {
  if (a.field_degree != b.field_degree) throw DomainError("Lagrangians over different fields");
  GfMatrix m(BinaryField::get(a.field_degree), a.rows.size() + b.rows.size(), 10);
  std::size_t r = 0;
  for (const auto* l : {&a, &b})
    for (const auto& row : l->rows) {
      for (int j = 0; j < 10; ++j) m.at(r, j) = row[j];
      ++r;
    }
  return a.rows.size() + b.rows.size() - m.rank();
}

Lagrangian lagrangian_l0(int field_degree) {
  std::vector<Vec10> rows(5, Vec10{});
  for (int i = 0; i < 5; ++i) rows[i][i] = 1;
  return make_lagrangian(field_degree, rows);
}

bool on_plus_component(const Lagrangian& l) {
  return intersection_dimension(l, lagrangian_l0(l.field_degree)) % 2 == 1;
}

Spinor lagrangian_to_spinor(const Lagrangian& l) {
  if (!on_plus_component(l)) throw ComponentError("Lagrangian lies on the other component");
  const BinaryField& f = BinaryField::get(l.field_degree);
  const auto& masks = even_masks();
  GfMatrix m(f, l.rows.size() * 32, 16);
  for (int i = 0; i < 16; ++i) {
    FullSpinor e{};
    e[masks[i]] = 1;
    for (std::size_t r = 0; r < l.rows.size(); ++r) {
      const FullSpinor img = clifford_action(f, l.rows[r], e);
      for (int t = 0; t < 32; ++t) m.at(r * 32 + t, i) = img[t];
    }
  }
  const auto ker = m.kernel();
  if (ker.size() != 1) throw IntegrityError("joint Clifford kernel is not one-dimensional");
  Spinor s{};
  std::copy(ker[0].begin(), ker[0].end(), s.begin());
  return normalize_spinor(f, s);
}

namespace {

std::vector<std::vector<Elem>> clifford_kernel_generic(int field_degree, const Spinor& s) {
  if (std::all_of(s.begin(), s.end(), [](Elem c) { return c == 0; })) throw DomainError("zero spinor");
  const BinaryField& f = BinaryField::get(field_degree);
  const FullSpinor full = embed_even(s);
  GfMatrix m(f, 32, 10);
  for (int j = 0; j < 10; ++j) {
    Vec10 e{};
    e[j] = 1;
    const FullSpinor img = clifford_action(f, e, full);
    for (int t = 0; t < 32; ++t) m.at(t, j) = img[t];
  }
  return m.kernel();
}

}  // namespace

Lagrangian spinor_to_lagrangian(int field_degree, const Spinor& s) {
  const auto ker = clifford_kernel_generic(field_degree, s);
  if (ker.size() != 5) throw PurityError("spinor is not pure");
  std::vector<Vec10> rows;
  for (const auto& v : ker) {
    Vec10 r{};
    std::copy(v.begin(), v.end(), r.begin());
    rows.push_back(r);
  }
  return make_lagrangian(field_degree, rows);
}

bool is_pure(int field_degree, const Spinor& s) { return clifford_kernel_generic(field_degree, s).size() == 5; }

F2Vec10 apply(const F2Matrix10& g, F2Vec10 x) {
  F2Vec10 y = 0;
  while (x) {
    y ^= g[std::countr_zero(x)];
    x &= x - 1;
  }
  return y;
}

F2Matrix10 multiply(const F2Matrix10& a, const F2Matrix10& b) {
  F2Matrix10 c{};
  for (int j = 0; j < 10; ++j) c[j] = apply(a, b[j]);
  return c;
}

F2Matrix10 identity10() {
  F2Matrix10 g{};
  for (int j = 0; j < 10; ++j) g[j] = static_cast<std::uint16_t>(1u << j);
  return g;
}

F2Matrix10 transvection(F2Vec10 v) {
  if (!q2(v)) throw DomainError("transvection vector must satisfy Q(v) = 1");
  F2Matrix10 g = identity10();
  for (int j = 0; j < 10; ++j)
    if (b2(g[j], v)) g[j] ^= v;
  return g;
}

bool preserves_q(const F2Matrix10& g) {
  for (int i = 0; i < 10; ++i) {
    if (q2(g[i])) return false;
    for (int j = i + 1; j < 10; ++j)
      if (b2(g[i], g[j]) != b2(static_cast<F2Vec10>(1u << i), static_cast<F2Vec10>(1u << j))) return false;
  }
  return true;
}

int dickson_invariant(const F2Matrix10& g) {
  if (!preserves_q(g)) throw DomainError("matrix does not preserve Q");
  std::array<std::uint64_t, 10> cols{};
  for (int j = 0; j < 10; ++j) cols[j] = g[j] ^ (1u << j);
  return static_cast<int>(rank_u64(cols) % 2);
}

int component_swap_bit(const F2Matrix10& g) {
  std::array<F2Vec10, 5> image{}, l0{};
  for (int i = 0; i < 5; ++i) {
    image[i] = g[i];
    l0[i] = static_cast<F2Vec10>(1u << i);
  }
  return intersection_dimension2(image, l0) % 2 == 0 ? 1 : 0;
}

std::uint64_t subspace_key(std::span<const F2Vec10> rows) {
  std::vector<std::uint64_t> w(rows.begin(), rows.end());
  const auto basis = rref_u64(w);
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) key |= basis[i] << (10 * i);
  return key;
}

std::size_t intersection_dimension2(std::span<const F2Vec10> a, std::span<const F2Vec10> b) {
  std::vector<std::uint64_t> wa(a.begin(), a.end()), wb(b.begin(), b.end()), all;
  all.insert(all.end(), wa.begin(), wa.end());
  all.insert(all.end(), wb.begin(), wb.end());
  return rank_u64(wa) + rank_u64(wb) - rank_u64(all);
}

F2Spinor spinor_of_f2(std::span<const F2Vec10> lagrangian) {
  // Joint kernel of the operators on S^ev: unknown bit i is the coordinate at even_masks()[i].
  const auto& masks = even_masks();
  std::array<std::uint32_t, 16> images{};
  F2Matrix eq(0, 16);
  for (F2Vec10 v : lagrangian) {
    for (int i = 0; i < 16; ++i) images[i] = act2(v, 1u << masks[i]);
    for (int t = 0; t < 32; ++t) {
      BitVec row(16);
      for (int i = 0; i < 16; ++i)
        if (images[i] >> t & 1) row.set(i);
      if (row.any()) eq.append_row(std::move(row));
    }
  }
  const auto ker = eq.kernel();
  if (ker.size() != 1) throw ComponentError("no even joint kernel: Lagrangian on the other component");
  return static_cast<F2Spinor>(ker[0].word());
}

std::vector<F2Vec10> clifford_kernel(F2Spinor s) {
  if (!s) throw DomainError("zero spinor");
  const std::uint32_t full = full_of(s);
  std::array<std::uint32_t, 10> images{};
  for (int j = 0; j < 10; ++j) images[j] = act2(static_cast<F2Vec10>(1u << j), full);
  return kernel_of_images(images);
}

std::size_t clifford_kernel_dim(F2Spinor s) { return clifford_kernel(s).size(); }

namespace {

std::uint16_t reverse16(std::uint16_t x) {
  std::uint16_t r = 0;
  for (int i = 0; i < 16; ++i)
    if (x >> i & 1) r |= static_cast<std::uint16_t>(1u << (15 - i));
  return r;
}

}  // namespace

const OgPlus& OgPlus::get() {
  static const OgPlus instance;
  return instance;
}

OgPlus::OgPlus() : spinor_index_(65536, -1) {
  for (unsigned s = 1; s < 65536; ++s)
    if (clifford_kernel_dim(static_cast<F2Spinor>(s)) == 5) spinors_.push_back(static_cast<F2Spinor>(s));
  // coordinate 0 is the most significant position of the lexicographic order
  std::sort(spinors_.begin(), spinors_.end(),
            [](F2Spinor a, F2Spinor b) { return reverse16(a) < reverse16(b); });
  for (std::size_t i = 0; i < spinors_.size(); ++i) {
    spinor_index_[spinors_[i]] = static_cast<int>(i);
    const auto ker = clifford_kernel(spinors_[i]);
    std::vector<std::uint64_t> w(ker.begin(), ker.end());
    const auto basis = rref_u64(w);
    std::array<F2Vec10, 5> rows{};
    for (int r = 0; r < 5; ++r) rows[r] = static_cast<F2Vec10>(basis[r]);
    lagrangians_.push_back(rows);
    lagrangian_index_.emplace(subspace_key(rows), static_cast<int>(i));
  }
  const std::size_t n = spinors_.size();
  meet_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    meet_[i * n + i] = 5;
    for (std::size_t j = i + 1; j < n; ++j) {
      std::uint64_t all[10];
      for (int r = 0; r < 5; ++r) {
        all[r] = lagrangians_[i][r];
        all[5 + r] = lagrangians_[j][r];
      }
      const auto d = static_cast<std::uint8_t>(10 - rank_u64(all));
      meet_[i * n + j] = meet_[j * n + i] = d;
    }
  }
}

int OgPlus::index_of_lagrangian(std::span<const F2Vec10> rows) const {
  const auto it = lagrangian_index_.find(subspace_key(rows));
  return it == lagrangian_index_.end() ? -1 : it->second;
}

Permutation OgPlus::permutation_of(const F2Matrix10& g) const {
  std::vector<Point> images(size());
  for (std::size_t i = 0; i < size(); ++i) {
    std::array<F2Vec10, 5> rows{};
    for (int r = 0; r < 5; ++r) rows[r] = apply(g, lagrangians_[i][r]);
    const int j = index_of_lagrangian(rows);
    if (j < 0) throw DomainError("matrix does not preserve OG+");
    images[i] = static_cast<Point>(j);
  }
  return Permutation::from_images(images);
}

SoGenerators so_generators(std::uint64_t seed) {
  const OgPlus& og = OgPlus::get();
  std::mt19937_64 rng(seed);
  auto anisotropic = [&] {
    for (;;) {
      const auto v = static_cast<F2Vec10>(rng() & 1023u);
      if (q2(v)) return v;
    }
  };
  SoGenerators out;
  std::vector<Permutation> perms;
  for (int attempt = 0; attempt < 64; ++attempt) {
    const F2Vec10 v = anisotropic();
    F2Vec10 w = anisotropic();
    while (w == v) w = anisotropic();
    const F2Matrix10 g = multiply(transvection(v), transvection(w));
    out.witnesses.push_back(g);
    perms.push_back(og.permutation_of(g));
    if (perms.size() < 2) continue;
    SchreierSimsOptions opt;
    opt.known_order = kSoOrder;
    opt.deterministic = false;
    opt.seed = seed ^ 0x5deece66dull;
    PermGroup grp(og.size(), perms, opt);
    if (grp.order() == kSoOrder) {
      out.group = std::move(grp);
      return out;
    }
  }
  throw IntegrityError("could not generate SO(V) from transvection pairs");
}

std::size_t quadratic_monomial_index(int i, int j) {
  if (i > j) std::swap(i, j);
  // rows (0,0..15), (1,1..15), ...
  return static_cast<std::size_t>(i * 16 - i * (i - 1) / 2 + (j - i));
}

const std::vector<BitVec>& og_quadrics() {
  static const std::vector<BitVec> quadrics = [] {
    const BinaryField& f = BinaryField::get(8);
    std::mt19937_64 rng(20240601);
    F2Matrix eval(0, 136);
    for (int sample = 0; sample < 64; ++sample) {
      // graph of an alternating map L_0 -> L_inf, then a coordinate swap on an even set
      std::array<std::array<Elem, 5>, 5> a{};
      for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) a[i][j] = a[j][i] = static_cast<Elem>(rng() & 255);
      unsigned swap;
      do swap = rng() & 31; while (std::popcount(swap) % 2);
      std::vector<Vec10> rows;
      for (int i = 0; i < 5; ++i) {
        Vec10 r{};
        r[i] = 1;
        for (int j = 0; j < 5; ++j) r[5 + j] = a[i][j];
        for (int m = 0; m < 5; ++m)
          if (swap >> m & 1) std::swap(r[m], r[5 + m]);
        rows.push_back(r);
      }
      const Spinor s = lagrangian_to_spinor(make_lagrangian(8, rows));
      std::array<Elem, 136> values{};
      for (int i = 0; i < 16; ++i)
        for (int j = i; j < 16; ++j) values[quadratic_monomial_index(i, j)] = f.mul(s[i], s[j]);
      for (int bit = 0; bit < 8; ++bit) {
        BitVec row(136);
        for (std::size_t m = 0; m < 136; ++m)
          if (values[m] >> bit & 1) row.set(m);
        eval.append_row(std::move(row));
      }
    }
    auto ker = eval.kernel();
    if (ker.size() != 10) throw IntegrityError("expected a 10-dimensional space of spinor quadrics");
    return ker;
  }();
  return quadrics;
}

}  // namespace olt
