#include "olt/geometry.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "olt/errors.hpp"
#include "olt/spinor.hpp"

namespace olt {

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t proj_count(std::uint64_t q, int n) { return (ipow(q, n + 1) - 1) / (q - 1); }

// Normalized points of P^n over f, sorted.
std::vector<std::vector<Elem>> projective_points(const BinaryField& f, int n) {
  const unsigned q = f.size();
  std::vector<std::vector<Elem>> out;
  for (int lead = 0; lead <= n; ++lead) {
    const int free = n - lead;
    const std::uint64_t total = ipow(q, free);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<Elem> v(n + 1, 0);
      v[lead] = 1;
      std::uint64_t rest = idx;
      for (int i = n; i > lead; --i) {
        v[i] = static_cast<Elem>(rest % q);
        rest /= q;
      }
      out.push_back(std::move(v));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void normalize_block(const BinaryField& f, Elem* v, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!v[i]) continue;
    const Elem inv = f.inv(v[i]);
    for (std::size_t j = i; j < n; ++j) v[j] = f.mul(v[j], inv);
    return;
  }
  throw DomainError("zero coordinate block");
}

bool is_normalized_block(const Elem* v, std::size_t n, unsigned q) {
  for (std::size_t i = 0; i < n; ++i)
    if (v[i] >= q) return false;
  for (std::size_t i = 0; i < n; ++i)
    if (v[i]) return v[i] == 1;
  return false;
}

Elem x21_value(const BinaryField& f, const Elem* c) {
  return f.mul(f.square(c[0]), c[2]) ^ f.mul(f.mul(c[0], c[1]), c[3]) ^ f.mul(f.square(c[1]), c[4]);
}

Elem x11_value(const BinaryField& f, const Elem* c) { return f.mul(c[0], c[2]) ^ f.mul(c[1], c[3]); }

const int kPairs[10][2] = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};

Elem pf4(const BinaryField& f, const Elem a[5][5], int i, int j, int k, int l) {
  return f.mul(a[i][j], a[k][l]) ^ f.mul(a[i][k], a[j][l]) ^ f.mul(a[i][l], a[j][k]);
}

// Pfaffian of the principal submatrix on the mask (even size).
Elem pfaffian(const BinaryField& f, const Elem a[5][5], unsigned mask) {
  int idx[5], n = 0;
  for (int m = 0; m < 5; ++m)
    if (mask >> m & 1) idx[n++] = m;
  if (n == 0) return 1;
  if (n == 2) return a[idx[0]][idx[1]];
  return pf4(f, a, idx[0], idx[1], idx[2], idx[3]);
}

std::vector<ProjPoint> og_points(int i, std::size_t budget) {
  std::vector<ProjPoint> out;
  if (i == 1) {
    const OgPlus& og = OgPlus::get();
    for (std::size_t n = 0; n < og.size(); ++n) {
      ProjPoint p;
      p.coords.resize(16);
      for (int c = 0; c < 16; ++c) p.coords[c] = og.spinor(n) >> c & 1;
      out.push_back(std::move(p));
    }
    return out;
  }
  // chart at the first nonzero coordinate T0: s_U = Pf(A_{U xor T0}) for alternating A
  const BinaryField& f = BinaryField::get(i);
  const unsigned q = f.size();
  const auto& masks = even_masks();
  const std::uint64_t total = ipow(q, 10);
  for (int t0 = 0; t0 < 16; ++t0) {
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      Elem a[5][5] = {};
      std::uint64_t rest = idx;
      for (const auto& pr : kPairs) {
        a[pr[0]][pr[1]] = a[pr[1]][pr[0]] = static_cast<Elem>(rest % q);
        rest /= q;
      }
      bool ok = true;
      for (int c = 0; c < t0 && ok; ++c) ok = pfaffian(f, a, masks[c] ^ masks[t0]) == 0;
      if (!ok) continue;
      ProjPoint p;
      p.coords.resize(16);
      for (int c = 0; c < 16; ++c) p.coords[c] = pfaffian(f, a, masks[c] ^ masks[t0]);
      out.push_back(std::move(p));
      if (out.size() > budget) throw ResourceError("OG+ point enumeration exceeds budget");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> mat_vec(const BinaryField& f, const std::vector<Elem>& m, const Elem* x, std::size_t n) {
  std::vector<Elem> y(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    Elem s = 0;
    for (std::size_t c = 0; c < n; ++c) s ^= f.mul(m[r * n + c], x[c]);
    y[r] = s;
  }
  return y;
}

std::vector<Elem> identity_matrix(std::size_t n) {
  std::vector<Elem> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  return m;
}

// Generators of GL(n, F_{2^k}): a transvection, the cyclic shift, and a diagonal
// matrix with a primitive element when k > 1.
std::vector<std::vector<Elem>> gl_generators(std::size_t n, int k) {
  std::vector<std::vector<Elem>> gens;
  if (n == 1) {
    if (k > 1) gens.push_back({BinaryField::get(k).primitive()});
    return gens;
  }
  auto t = identity_matrix(n);
  t[0 * n + 1] = 1;
  gens.push_back(t);
  std::vector<Elem> c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) c[((i + 1) % n) * n + i] = 1;
  gens.push_back(c);
  if (k > 1) {
    auto d = identity_matrix(n);
    d[0] = BinaryField::get(k).primitive();
    gens.push_back(d);
  }
  return gens;
}

// All invertible n x n matrices over F_2.
std::vector<std::vector<Elem>> all_gl2(std::size_t n) {
  std::vector<std::vector<Elem>> out;
  const std::uint64_t total = std::uint64_t{1} << (n * n);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    std::vector<std::uint64_t> rows(n, 0);
    for (std::size_t r = 0; r < n; ++r) rows[r] = bits >> (r * n) & ((1u << n) - 1);
    if (rank_u64(rows) != n) continue;
    std::vector<Elem> m(n * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m[r * n + c] = rows[r] >> c & 1;
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

AmbientSpace AmbientSpace::projective(int n) {
  if (n < 1 || n > 15) throw DomainError("projective dimension out of range");
  AmbientSpace s;
  s.kind_ = SpaceKind::Projective;
  s.factors_ = {n};
  return s;
}

AmbientSpace AmbientSpace::product(int a, int b) {
  if (a < 1 || b < 1 || a > 9 || b > 9) throw DomainError("product factor dimension out of range");
  AmbientSpace s;
  s.kind_ = SpaceKind::Product;
  s.factors_ = {a, b};
  return s;
}

AmbientSpace AmbientSpace::weighted1112() {
  AmbientSpace s;
  s.kind_ = SpaceKind::Weighted1112;
  s.factors_ = {3};
  return s;
}

AmbientSpace AmbientSpace::x21() {
  AmbientSpace s;
  s.kind_ = SpaceKind::X21;
  s.factors_ = {1, 2};
  return s;
}

AmbientSpace AmbientSpace::x11() {
  AmbientSpace s;
  s.kind_ = SpaceKind::X11;
  s.factors_ = {1, 3};
  return s;
}

AmbientSpace AmbientSpace::grassmannian25() {
  AmbientSpace s;
  s.kind_ = SpaceKind::Grassmannian25;
  s.factors_ = {9};
  return s;
}

AmbientSpace AmbientSpace::twist() {
  AmbientSpace s;
  s.kind_ = SpaceKind::Twist;
  s.factors_ = {2, 2};
  return s;
}

AmbientSpace AmbientSpace::og_plus() {
  AmbientSpace s;
  s.kind_ = SpaceKind::OgPlus;
  s.factors_ = {15};
  return s;
}

AmbientSpace AmbientSpace::parse(std::string_view id) {
  if (id == "fano") return projective(2);
  if (id == "P(1:1:1:2)") return weighted1112();
  if (id == "X21") return x21();
  if (id == "X11") return x11();
  if (id == "Gr25") return grassmannian25();
  if (id == "twist") return twist();
  if (id == "og+") return og_plus();
  auto number = [](std::string_view s) {
    if (s.empty() || s.size() > 2 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw DomainError("unknown space id");
    return std::stoi(std::string(s));
  };
  if (id.size() >= 2 && id[0] == 'P') {
    const auto x = id.find('x');
    if (x == std::string_view::npos) return projective(number(id.substr(1)));
    if (x + 1 < id.size() && id[x + 1] == 'P') return product(number(id.substr(1, x - 1)), number(id.substr(x + 2)));
  }
  throw DomainError("unknown space id: " + std::string(id));
}

std::string AmbientSpace::id() const {
  switch (kind_) {
    case SpaceKind::Projective: return "P" + std::to_string(factors_[0]);
    case SpaceKind::Product: return "P" + std::to_string(factors_[0]) + "xP" + std::to_string(factors_[1]);
    case SpaceKind::Weighted1112: return "P(1:1:1:2)";
    case SpaceKind::X21: return "X21";
    case SpaceKind::X11: return "X11";
    case SpaceKind::Grassmannian25: return "Gr25";
    case SpaceKind::Twist: return "twist";
    case SpaceKind::OgPlus: return "og+";
  }
  return "?";
}

int AmbientSpace::coordinate_degree(int i) const {
  if (kind_ == SpaceKind::Twist && i % 2 == 1) return 2 * i;
  return i;
}

std::size_t AmbientSpace::coordinate_count(int i) const {
  switch (kind_) {
    case SpaceKind::Projective: return static_cast<std::size_t>(factors_[0] + 1);
    case SpaceKind::Product:
    case SpaceKind::X21:
    case SpaceKind::X11: return static_cast<std::size_t>(factors_[0] + factors_[1] + 2);
    case SpaceKind::Weighted1112: return 4;
    case SpaceKind::Grassmannian25: return 10;
    case SpaceKind::Twist: return i % 2 == 1 ? 3 : 6;
    case SpaceKind::OgPlus: return 16;
  }
  return 0;
}

ProjPoint normalize(const AmbientSpace& space, ProjPoint p, int i) {
  const BinaryField& f = BinaryField::get(space.coordinate_degree(i));
  if (p.coords.size() != space.coordinate_count(i)) throw DomainError("coordinate count mismatch");
  Elem* c = p.coords.data();
  switch (space.kind()) {
    case SpaceKind::Product:
    case SpaceKind::X21:
    case SpaceKind::X11: {
      const auto a = static_cast<std::size_t>(space.factors()[0] + 1);
      normalize_block(f, c, a);
      normalize_block(f, c + a, p.coords.size() - a);
      break;
    }
    case SpaceKind::Twist:
      if (i % 2 == 1) {
        normalize_block(f, c, 3);
      } else {
        normalize_block(f, c, 3);
        normalize_block(f, c + 3, 3);
      }
      break;
    case SpaceKind::Weighted1112: {
      int lead = -1;
      for (int k = 0; k < 3; ++k)
        if (c[k]) {
          lead = k;
          break;
        }
      if (lead < 0) {
        if (!c[3]) throw DomainError("zero point");
        c[3] = 1;
      } else {
        const Elem inv = f.inv(c[lead]);
        for (int k = 0; k < 3; ++k) c[k] = f.mul(c[k], inv);
        c[3] = f.mul(c[3], f.square(inv));
      }
      break;
    }
    default: normalize_block(f, c, p.coords.size());
  }
  return p;
}

bool AmbientSpace::contains(const ProjPoint& p, int i) const {
  if (p.coords.size() != coordinate_count(i)) return false;
  const int deg = coordinate_degree(i);
  const BinaryField& f = BinaryField::get(deg);
  const unsigned q = f.size();
  const Elem* c = p.coords.data();
  switch (kind_) {
    case SpaceKind::Projective:
    case SpaceKind::Grassmannian25:
    case SpaceKind::OgPlus: {
      if (!is_normalized_block(c, p.coords.size(), q)) return false;
      if (kind_ == SpaceKind::Grassmannian25) {
        // p_ij p_kl + p_ik p_jl + p_il p_jk = 0 for every 4-subset
        for (int a = 0; a < 5; ++a)
          for (int b = a + 1; b < 5; ++b)
            for (int d = b + 1; d < 5; ++d)
              for (int e = d + 1; e < 5; ++e) {
                const Elem v = f.mul(c[pluecker_index(a, b)], c[pluecker_index(d, e)]) ^
                               f.mul(c[pluecker_index(a, d)], c[pluecker_index(b, e)]) ^
                               f.mul(c[pluecker_index(a, e)], c[pluecker_index(b, d)]);
                if (v) return false;
              }
      }
      if (kind_ == SpaceKind::OgPlus) {
        Spinor s{};
        std::copy(c, c + 16, s.begin());
        return is_pure(deg, s);
      }
      return true;
    }
    case SpaceKind::Product:
    case SpaceKind::X21:
    case SpaceKind::X11: {
      const auto a = static_cast<std::size_t>(factors_[0] + 1);
      if (!is_normalized_block(c, a, q) || !is_normalized_block(c + a, p.coords.size() - a, q)) return false;
      if (kind_ == SpaceKind::X21) return x21_value(f, c) == 0;
      if (kind_ == SpaceKind::X11) return x11_value(f, c) == 0;
      return true;
    }
    case SpaceKind::Weighted1112: {
      for (int k = 0; k < 4; ++k)
        if (c[k] >= q) return false;
      for (int k = 0; k < 3; ++k)
        if (c[k]) return c[k] == 1;
      return c[3] == 1;
    }
    case SpaceKind::Twist:
      if (i % 2 == 1) return is_normalized_block(c, 3, q);
      return is_normalized_block(c, 3, q) && is_normalized_block(c + 3, 3, q);
  }
  return false;
}

std::uint64_t point_count(const AmbientSpace& space, int i) {
  const std::uint64_t q = std::uint64_t{1} << i;
  const auto& fa = space.factors();
  switch (space.kind()) {
    case SpaceKind::Projective: return proj_count(q, fa[0]);
    case SpaceKind::Product: return proj_count(q, fa[0]) * proj_count(q, fa[1]);
    case SpaceKind::Weighted1112: return proj_count(q, 2) * q + 1;
    case SpaceKind::X21: return (q + 1) * (q + 1);
    case SpaceKind::X11: return (q + 1) * proj_count(q, 2);
    case SpaceKind::Grassmannian25: return (ipow(q, 5) - 1) * (ipow(q, 4) - 1) / ((q * q - 1) * (q - 1));
    case SpaceKind::Twist: return i % 2 == 1 ? proj_count(q * q, 2) : proj_count(q, 2) * proj_count(q, 2);
    case SpaceKind::OgPlus: {
      std::uint64_t n = 1;
      for (int k = 1; k <= 4; ++k) n *= ipow(q, k) + 1;
      return n;
    }
  }
  return 0;
}

std::vector<ProjPoint> enumerate_points(const AmbientSpace& space, int i, std::size_t budget) {
  if (i < 1 || space.coordinate_degree(i) > 8) throw UnsupportedError("field degree outside 1..8");
  if (point_count(space, i) > budget) throw ResourceError("point enumeration exceeds budget");
  const BinaryField& f = BinaryField::get(space.coordinate_degree(i));
  std::vector<ProjPoint> out;
  auto product_of = [&](int a, int b) {
    const auto pa = projective_points(f, a), pb = projective_points(f, b);
    for (const auto& x : pa)
      for (const auto& y : pb) {
        ProjPoint p;
        p.coords = x;
        p.coords.insert(p.coords.end(), y.begin(), y.end());
        out.push_back(std::move(p));
      }
  };
  switch (space.kind()) {
    case SpaceKind::Projective:
      for (auto& v : projective_points(f, space.factors()[0])) out.push_back(ProjPoint{std::move(v)});
      break;
    case SpaceKind::Product: product_of(space.factors()[0], space.factors()[1]); break;
    case SpaceKind::X21:
    case SpaceKind::X11: {
      product_of(space.factors()[0], space.factors()[1]);
      std::erase_if(out, [&](const ProjPoint& p) { return !space.contains(p, i); });
      break;
    }
    case SpaceKind::Weighted1112: {
      for (const auto& x : projective_points(f, 2))
        for (unsigned y = 0; y < f.size(); ++y) {
          ProjPoint p;
          p.coords = x;
          p.coords.push_back(static_cast<Elem>(y));
          out.push_back(std::move(p));
        }
      out.push_back(ProjPoint{{0, 0, 0, 1}});
      std::sort(out.begin(), out.end());
      break;
    }
    case SpaceKind::Grassmannian25: {
      const auto pts = projective_points(f, 4);
      for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) out.push_back(ProjPoint{pluecker(f, pts[a], pts[b])});
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      break;
    }
    case SpaceKind::Twist:
      if (i % 2 == 1) {
        for (auto& v : projective_points(f, 2)) out.push_back(ProjPoint{std::move(v)});
      } else {
        product_of(2, 2);
      }
      break;
    case SpaceKind::OgPlus: out = og_points(i, budget); break;
  }
  return out;
}

int index_of(const std::vector<ProjPoint>& points, const ProjPoint& p) {
  const auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it == points.end() || !(*it == p)) return -1;
  return static_cast<int>(it - points.begin());
}

int pluecker_index(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == j || i < 0 || j > 4) throw DomainError("bad Pluecker pair");
  for (int k = 0; k < 10; ++k)
    if (kPairs[k][0] == i && kPairs[k][1] == j) return k;
  return -1;
}

std::vector<Elem> pluecker(const BinaryField& f, const std::vector<Elem>& u, const std::vector<Elem>& v) {
  std::vector<Elem> p(10);
  for (int k = 0; k < 10; ++k) {
    const int i = kPairs[k][0], j = kPairs[k][1];
    p[k] = f.mul(u[i], v[j]) ^ f.mul(u[j], v[i]);
  }
  normalize_block(f, p.data(), 10);
  return p;
}

ProjPoint apply_witness(const AmbientSpace& space, const MatrixWitness& w, const ProjPoint& p) {
  const BinaryField& f = BinaryField::get(w.field_degree);
  ProjPoint in = p;
  if (w.frobenius)
    for (auto& c : in.coords) c = f.square(c);
  ProjPoint out;
  switch (space.kind()) {
    case SpaceKind::Projective:
    case SpaceKind::Twist: {
      out.coords = mat_vec(f, w.blocks.at(0), in.coords.data(), in.coords.size());
      break;
    }
    case SpaceKind::Product:
    case SpaceKind::X21:
    case SpaceKind::X11: {
      const auto a = static_cast<std::size_t>(space.factors()[0] + 1);
      const std::size_t b = in.coords.size() - a;
      auto x = mat_vec(f, w.blocks.at(0), in.coords.data(), a);
      auto y = mat_vec(f, w.blocks.at(1), in.coords.data() + a, b);
      if (w.swap) std::swap(x, y);
      out.coords = x;
      out.coords.insert(out.coords.end(), y.begin(), y.end());
      break;
    }
    case SpaceKind::Grassmannian25: {
      // the 2-plane is recovered from its Pluecker vector as the column span
      // of rows p_{i*} of the 5x5 alternating matrix
      const auto& g = w.blocks.at(0);
      std::vector<Elem> m(25, 0);
      for (int k = 0; k < 10; ++k) {
        m[kPairs[k][0] * 5 + kPairs[k][1]] = in.coords[k];
        m[kPairs[k][1] * 5 + kPairs[k][0]] = in.coords[k];
      }
      // (wedge^2 g) acts on the alternating matrix by g M g^T
      std::vector<Elem> gm(25, 0), gmg(25, 0);
      for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) {
          Elem s = 0;
          for (int t = 0; t < 5; ++t) s ^= f.mul(g[r * 5 + t], m[t * 5 + c]);
          gm[r * 5 + c] = s;
        }
      for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c) {
          Elem s = 0;
          for (int t = 0; t < 5; ++t) s ^= f.mul(gm[r * 5 + t], g[c * 5 + t]);
          gmg[r * 5 + c] = s;
        }
      out.coords.resize(10);
      for (int k = 0; k < 10; ++k) out.coords[k] = gmg[kPairs[k][0] * 5 + kPairs[k][1]];
      break;
    }
    case SpaceKind::OgPlus: {
      if (w.field_degree != 1) throw UnsupportedError("OG+ witnesses act over F_2 only");
      const OgPlus& og = OgPlus::get();
      F2Spinor s = 0;
      for (int c = 0; c < 16; ++c)
        if (in.coords[c]) s |= static_cast<F2Spinor>(1u << c);
      const int idx = og.index_of_spinor(s);
      if (idx < 0) throw DomainError("point is not on OG+");
      F2Matrix10 g{};
      for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 10; ++c)
          if (w.blocks.at(0)[r * 10 + c]) g[c] |= static_cast<std::uint16_t>(1u << r);
      std::array<F2Vec10, 5> rows{};
      for (int r = 0; r < 5; ++r) rows[r] = olt::apply(g, og.lagrangian(idx)[r]);
      const int j = og.index_of_lagrangian(rows);
      if (j < 0) throw DomainError("witness does not preserve OG+");
      out.coords.resize(16);
      for (int c = 0; c < 16; ++c) out.coords[c] = og.spinor(j) >> c & 1;
      return out;
    }
    case SpaceKind::Weighted1112: throw UnsupportedError("no automorphism witnesses for P(1:1:1:2)");
  }
  return normalize(space, std::move(out));
}

Permutation permutation_of(const AmbientSpace& space, const std::vector<ProjPoint>& points, const MatrixWitness& w) {
  std::vector<Point> images(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const int j = index_of(points, apply_witness(space, w, points[i]));
    if (j < 0) throw IntegrityError("witness does not map the point list to itself");
    images[i] = static_cast<Point>(j);
  }
  return Permutation::from_images(images);
}

namespace {

// Keeps the candidates that enlarge the group generated so far.
Automorphisms assemble(const AmbientSpace& space, std::vector<ProjPoint> points,
                       const std::vector<MatrixWitness>& candidates, std::optional<GroupOrder> order) {
  Automorphisms out;
  out.points = std::move(points);
  Bsgs chain(out.points.size());
  std::vector<Permutation> gens;
  for (const auto& w : candidates) {
    Permutation p = permutation_of(space, out.points, w);
    if (chain.extend(p)) {
      gens.push_back(std::move(p));
      out.witnesses.push_back(w);
    }
  }
  SchreierSimsOptions opt;
  opt.known_order = order;
  out.group = PermGroup(out.points.size(), gens, opt);
  if (order && out.group.order() != *order) throw IntegrityError("automorphism group has the wrong order");
  return out;
}

GroupOrder gl_order(int n, int k) {
  const GroupOrder q = GroupOrder{1} << k;
  GroupOrder o = 1;
  for (int i = 0; i < n; ++i) o *= ipow(q, n) - ipow(q, i);
  return o;
}

}  // namespace

Automorphisms automorphism_generators(const AmbientSpace& space) {
  if (space.kind() == SpaceKind::Weighted1112) throw UnsupportedError("automorphisms of P(1:1:1:2) are not provided");
  auto points = enumerate_points(space, 1);
  std::vector<MatrixWitness> cand;
  const auto& fa = space.factors();
  switch (space.kind()) {
    case SpaceKind::Projective: {
      for (auto& m : gl_generators(fa[0] + 1, 1)) cand.push_back(MatrixWitness{1, {m}});
      return assemble(space, std::move(points), cand, gl_order(fa[0] + 1, 1));
    }
    case SpaceKind::Product: {
      const auto ia = identity_matrix(fa[0] + 1), ib = identity_matrix(fa[1] + 1);
      for (auto& m : gl_generators(fa[0] + 1, 1)) cand.push_back(MatrixWitness{1, {m, ib}});
      for (auto& m : gl_generators(fa[1] + 1, 1)) cand.push_back(MatrixWitness{1, {ia, m}});
      GroupOrder order = gl_order(fa[0] + 1, 1) * gl_order(fa[1] + 1, 1);
      if (fa[0] == fa[1]) {
        cand.push_back(MatrixWitness{1, {ia, ib}, true});
        order *= 2;
      }
      return assemble(space, std::move(points), cand, order);
    }
    case SpaceKind::X21: {
      // brute force over GL_2 x GL_3: keep the pairs fixing the defining polynomial
      const BinaryField& f4 = BinaryField::get(2);
      const auto g2 = all_gl2(2), g3 = all_gl2(3);
      std::vector<std::array<Elem, 5>> test;
      for (unsigned v = 0; v < 1024; ++v) {
        std::array<Elem, 5> c{};
        for (int k = 0; k < 5; ++k) c[k] = static_cast<Elem>(v >> (2 * k) & 3);
        test.push_back(c);
      }
      for (const auto& a : g2)
        for (const auto& b : g3) {
          bool ok = true;
          for (const auto& c : test) {
            const auto x = mat_vec(f4, a, c.data(), 2);
            const auto y = mat_vec(f4, b, c.data() + 2, 3);
            const Elem img[5] = {x[0], x[1], y[0], y[1], y[2]};
            if (x21_value(f4, img) != x21_value(f4, c.data())) {
              ok = false;
              break;
            }
          }
          if (ok) cand.push_back(MatrixWitness{1, {a, b}});
        }
      const auto n = static_cast<GroupOrder>(cand.size());
      return assemble(space, std::move(points), cand, n);
    }
    case SpaceKind::X11: {
      // x^T M y with M = [I_2 | 0]; (A, B) preserves it iff A^T M B = M
      const auto g2 = all_gl2(2), g4 = all_gl2(4);
      for (const auto& a : g2)
        for (const auto& b : g4) {
          bool ok = true;
          for (int r = 0; r < 2 && ok; ++r)
            for (int c = 0; c < 4 && ok; ++c) {
              Elem s = 0;
              for (int t = 0; t < 2; ++t) s ^= a[t * 2 + r] & b[t * 4 + c];
              ok = s == (r == c ? 1 : 0);
            }
          if (ok) cand.push_back(MatrixWitness{1, {a, b}});
        }
      const auto n = static_cast<GroupOrder>(cand.size());
      return assemble(space, std::move(points), cand, n);
    }
    case SpaceKind::Grassmannian25: {
      for (auto& m : gl_generators(5, 1)) cand.push_back(MatrixWitness{1, {m}});
      return assemble(space, std::move(points), cand, gl_order(5, 1));
    }
    case SpaceKind::Twist: {
      for (auto& m : gl_generators(3, 2)) cand.push_back(MatrixWitness{2, {m}});
      cand.push_back(MatrixWitness{2, {identity_matrix(3)}, false, true});
      return assemble(space, std::move(points), cand, gl_order(3, 2) / 3 * 2);
    }
    case SpaceKind::OgPlus: {
      auto so = so_generators();
      Automorphisms out;
      out.points = std::move(points);
      out.group = so.group;
      for (const auto& g : so.witnesses) {
        MatrixWitness w{1, {std::vector<Elem>(100, 0)}};
        for (int c = 0; c < 10; ++c)
          for (int r = 0; r < 10; ++r) w.blocks[0][r * 10 + c] = g[c] >> r & 1;
        out.witnesses.push_back(std::move(w));
      }
      return out;
    }
    case SpaceKind::Weighted1112: break;
  }
  throw UnsupportedError("unsupported space");
}

Span span_of(const std::vector<ProjPoint>& points, int field_degree) {
  if (points.empty()) throw DomainError("span of no points");
  const std::size_t n = points[0].coords.size();
  GfMatrix m(BinaryField::get(field_degree), points.size(), n);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].coords.size() != n) throw DomainError("points from different spaces");
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = points[i].coords[j];
  }
  const auto pivots = m.rref();
  Span s;
  s.dimension = static_cast<int>(pivots.size()) - 1;
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    std::vector<Elem> row(n);
    for (std::size_t j = 0; j < n; ++j) row[j] = m.at(i, j);
    s.basis.push_back(std::move(row));
  }
  return s;
}

}  // namespace olt
