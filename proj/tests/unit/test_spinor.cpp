#include <doctest.h>

#include <bit>
#include <random>
#include <map>
#include <set>

#include "olt/errors.hpp"
#include "olt/spinor.hpp"

using namespace olt;

namespace {

// All totally isotropic 5-dimensional subspaces of F_2^10, grown one vector at a time.
std::set<std::uint64_t> all_lagrangians() {
  std::set<std::uint64_t> layer{0};
  std::map<std::uint64_t, std::vector<F2Vec10>> bases{{0, {}}};
  for (int d = 0; d < 5; ++d) {
    std::map<std::uint64_t, std::vector<F2Vec10>> next;
    for (const auto& [key, basis] : bases) {
      for (unsigned v = 1; v < 1024; ++v) {
        if (q2(v)) continue;
        bool ok = true;
        for (auto b : basis) ok = ok && !b2(v, b);
        if (!ok) continue;
        std::vector<F2Vec10> ext = basis;
        ext.push_back(static_cast<F2Vec10>(v));
        std::vector<std::uint64_t> w(ext.begin(), ext.end());
        if (rank_u64(w) != ext.size()) continue;
        next.emplace(subspace_key(ext), ext);
      }
    }
    bases = std::move(next);
  }
  std::set<std::uint64_t> keys;
  for (const auto& [k, b] : bases) keys.insert(k);
  return keys;
}

std::vector<F2Vec10> unpack(std::uint64_t key) {
  std::vector<F2Vec10> rows;
  for (int i = 0; i < 5; ++i) rows.push_back(static_cast<F2Vec10>(key >> (10 * i) & 1023));
  return rows;
}

Vec10 random_vec(std::mt19937_64& rng, const BinaryField& f) {
  Vec10 v{};
  for (auto& c : v) c = static_cast<Elem>(rng() % f.size());
  return v;
}

}  // namespace

TEST_CASE("clifford action basics") {
  const auto& f = BinaryField::get(1);
  FullSpinor one{};
  one[0] = 1;
  Vec10 e6{}, e1{};
  e6[5] = 1;
  e1[0] = 1;
  const auto a = clifford_action(f, e6, one);
  CHECK(a[1] == 1);
  FullSpinor s6{};
  s6[1] = 1;
  CHECK(clifford_action(f, e1, s6)[0] == 1);
  const auto z = clifford_action(f, e1, one);
  CHECK(std::all_of(z.begin(), z.end(), [](Elem c) { return c == 0; }));
}

TEST_CASE("clifford relation over several fields") {
  std::mt19937_64 rng(11);
  for (int k : {1, 2, 4, 8}) {
    const auto& f = BinaryField::get(k);
    for (int t = 0; t < 100; ++t) {
      const Vec10 v = random_vec(rng, f);
      FullSpinor s{};
      for (auto& c : s) c = static_cast<Elem>(rng() % f.size());
      const auto vvs = clifford_action(f, v, clifford_action(f, v, s));
      const Elem q = quadratic_form(f, v);
      for (int i = 0; i < 32; ++i) CHECK(vvs[i] == f.mul(q, s[i]));
    }
  }
}

TEST_CASE("named Lagrangians") {
  const auto l0 = lagrangian_l0();
  const Spinor s0 = lagrangian_to_spinor(l0);
  CHECK(s0[0] == 1);
  for (int i = 1; i < 16; ++i) CHECK(s0[i] == 0);
  CHECK(spinor_to_lagrangian(1, s0) == l0);

  std::vector<Vec10> rows(5, Vec10{});
  rows[0][5] = 1;
  rows[1][6] = 1;
  rows[2][2] = 1;
  rows[3][3] = 1;
  rows[4][4] = 1;
  const auto l = make_lagrangian(1, rows);
  const Spinor s = lagrangian_to_spinor(l);
  const int idx = even_index(0b00011);
  for (int i = 0; i < 16; ++i) CHECK(s[i] == (i == idx ? 1 : 0));
  CHECK(intersection_dimension(l, l0) == 3);

  std::vector<Vec10> minus(5, Vec10{});
  minus[0][5] = 1;
  for (int i = 1; i < 5; ++i) minus[i][i] = 1;
  CHECK_THROWS_AS(lagrangian_to_spinor(make_lagrangian(1, minus)), ComponentError);
  CHECK_THROWS_AS(is_pure(1, Spinor{}), DomainError);
}

TEST_CASE("OG+ over F2 against an independent Lagrangian enumeration") {
  const auto& og = OgPlus::get();
  REQUIRE(og.size() == 2295);
  const auto keys = all_lagrangians();
  CHECK(keys.size() == 4590);
  std::set<F2Spinor> from_lagrangians;
  std::size_t plus = 0;
  for (auto key : keys) {
    const auto rows = unpack(key);
    std::array<F2Vec10, 5> l0{1, 2, 4, 8, 16};
    if (intersection_dimension2(rows, l0) % 2 == 0) {
      CHECK_THROWS_AS(spinor_of_f2(rows), ComponentError);
      continue;
    }
    ++plus;
    const F2Spinor s = spinor_of_f2(rows);
    from_lagrangians.insert(s);
    const int i = og.index_of_spinor(s);
    REQUIRE(i >= 0);
    CHECK(og.index_of_lagrangian(og.lagrangian(i)) == i);
    CHECK(subspace_key(og.lagrangian(i)) == key);
  }
  CHECK(plus == 2295);
  CHECK(from_lagrangians.size() == 2295);
  std::size_t pure = 0;
  for (unsigned s = 1; s < 65536; ++s) pure += og.is_pure_f2(static_cast<F2Spinor>(s));
  CHECK(pure == 2295);
}

TEST_CASE("generic and F2 spinor paths agree") {
  const auto& og = OgPlus::get();
  for (std::size_t i = 0; i < og.size(); i += 7) {
    std::vector<Vec10> rows;
    for (auto r : og.lagrangian(i)) {
      Vec10 v{};
      for (int j = 0; j < 10; ++j) v[j] = r >> j & 1;
      rows.push_back(v);
    }
    const Spinor s = lagrangian_to_spinor(make_lagrangian(1, rows));
    for (int c = 0; c < 16; ++c) CHECK(s[c] == (og.spinor(i) >> c & 1));
  }
}

TEST_CASE("pairwise intersections are odd") {
  const auto& og = OgPlus::get();
  std::size_t bad = 0;
  for (std::size_t i = 0; i < og.size(); ++i)
    for (std::size_t j = 0; j < og.size(); ++j) bad += og.meet(i, j) % 2 == 0;
  CHECK(bad == 0);
}

TEST_CASE("sum of two spinors meeting in a line is not pure") {
  const auto& og = OgPlus::get();
  int found = 0;
  for (std::size_t j = 1; j < og.size() && found < 20; ++j) {
    if (og.meet(0, j) != 1) continue;
    const F2Spinor s = og.spinor(0) ^ og.spinor(j);
    CHECK(!og.is_pure_f2(s));
    Spinor g{};
    for (int c = 0; c < 16; ++c) g[c] = s >> c & 1;
    CHECK(!is_pure(1, g));
    CHECK_THROWS_AS(spinor_to_lagrangian(1, g), PurityError);
    ++found;
  }
  CHECK(found == 20);
}

TEST_CASE("purity is projective over extension fields") {
  std::mt19937_64 rng(2);
  for (int k : {2, 3, 4}) {
    const auto& f = BinaryField::get(k);
    for (int t = 0; t < 20; ++t) {
      std::array<std::array<Elem, 5>, 5> a{};
      for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) a[i][j] = a[j][i] = static_cast<Elem>(rng() % f.size());
      std::vector<Vec10> rows;
      for (int i = 0; i < 5; ++i) {
        Vec10 r{};
        r[i] = 1;
        for (int j = 0; j < 5; ++j) r[5 + j] = a[i][j];
        rows.push_back(r);
      }
      const auto l = make_lagrangian(k, rows);
      const Spinor s = lagrangian_to_spinor(l);
      CHECK(spinor_to_lagrangian(k, s) == l);
      const Elem c = static_cast<Elem>(1 + rng() % (f.size() - 1));
      Spinor cs = s;
      for (auto& x : cs) x = f.mul(x, c);
      CHECK(is_pure(k, cs));
      Spinor noisy = s;
      noisy[15] ^= 1;
      noisy[0] ^= c;
      CHECK(is_pure(k, noisy) == is_pure(k, normalize_spinor(f, noisy)));
    }
  }
}

TEST_CASE("Dickson invariant against the component test") {
  CHECK(dickson_invariant(identity10()) == 0);
  const F2Vec10 v = 1 | (1 << 5);
  CHECK(dickson_invariant(transvection(v)) == 1);
  CHECK(component_swap_bit(transvection(v)) == 1);
  std::mt19937_64 rng(17);
  std::vector<F2Vec10> aniso;
  for (unsigned x = 0; x < 1024; ++x)
    if (q2(x)) aniso.push_back(static_cast<F2Vec10>(x));
  std::size_t agree = 0;
  for (int t = 0; t < 1000; ++t) {
    F2Matrix10 g = identity10();
    const int len = 1 + static_cast<int>(rng() % 9);
    for (int i = 0; i < len; ++i) g = multiply(g, transvection(aniso[rng() % aniso.size()]));
    REQUIRE(preserves_q(g));
    agree += dickson_invariant(g) == component_swap_bit(g);
  }
  CHECK(agree == 1000);
  F2Matrix10 bad = identity10();
  bad[0] = 3;
  CHECK_THROWS_AS(dickson_invariant(bad), DomainError);
}

TEST_CASE("spinor quadrics cut out OG+ over F2") {
  const auto& quads = og_quadrics();
  REQUIRE(quads.size() == 10);
  const auto& og = OgPlus::get();
  std::size_t zeros = 0;
  for (unsigned s = 1; s < 65536; ++s) {
    bool all = true;
    for (const auto& q : quads) {
      bool val = false;
      for (int i = 0; i < 16 && all; ++i) {
        if (!(s >> i & 1)) continue;
        for (int j = i; j < 16; ++j)
          if ((s >> j & 1) && q.get(quadratic_monomial_index(i, j))) val = !val;
      }
      if (val) {
        all = false;
        break;
      }
    }
    if (all) {
      ++zeros;
      CHECK(og.is_pure_f2(static_cast<F2Spinor>(s)));
    }
  }
  CHECK(zeros == 2295);
}
