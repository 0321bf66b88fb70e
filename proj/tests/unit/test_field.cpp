#include <doctest.h>

#include <random>
#include <set>

#include "olt/field.hpp"
#include "olt/linalg.hpp"

using namespace olt;

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(5);
  for (int k = 1; k <= 8; ++k) {
    const auto& f = BinaryField::get(k);
    const unsigned q = f.size();
    for (int t = 0; t < 2000; ++t) {
      Elem a = rng() % q, b = rng() % q, c = rng() % q;
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, b ^ c) == (f.mul(a, b) ^ f.mul(a, c)));
      CHECK(f.mul(a, b) == f.mul_slow(a, b));
      CHECK(f.square(a ^ b) == (f.square(a) ^ f.square(b)));
      if (a) CHECK(f.mul(a, f.inv(a)) == 1);
      CHECK(f.square(f.sqrt(a)) == a);
    }
  }
}

TEST_CASE("multiplicative group is cyclic") {
  for (int k = 1; k <= 8; ++k) {
    const auto& f = BinaryField::get(k);
    std::set<Elem> seen;
    Elem x = 1;
    for (unsigned i = 0; i + 1 < f.size(); ++i) {
      seen.insert(x);
      x = f.mul(x, f.primitive());
    }
    CHECK(x == 1);
    CHECK(seen.size() == f.size() - 1);
    CHECK(f.frobenius(f.primitive(), k) == f.primitive());
  }
}

TEST_CASE("trace is F2-valued and onto") {
  for (int k = 1; k <= 8; ++k) {
    const auto& f = BinaryField::get(k);
    unsigned ones = 0;
    for (unsigned a = 0; a < f.size(); ++a) {
      CHECK(f.trace(a) <= 1);
      ones += f.trace(a);
    }
    CHECK(ones == f.size() / 2);
  }
}

TEST_CASE("subfield embeddings are homomorphisms") {
  for (int k = 1; k <= 8; ++k)
    for (int j = 1; j <= k; ++j) {
      if (k % j) continue;
      const auto& small = BinaryField::get(j);
      const auto& big = BinaryField::get(k);
      Embedding e(j, k);
      for (unsigned a = 0; a < small.size(); ++a)
        for (unsigned b = 0; b < small.size(); ++b) {
          CHECK(e(small.mul(a, b)) == big.mul(e(a), e(b)));
          CHECK(e(a ^ b) == (e(a) ^ e(b)));
        }
      // image is fixed by the j-th Frobenius
      for (unsigned a = 0; a < small.size(); ++a) CHECK(big.frobenius(e(a), j) == e(a));
    }
}

TEST_CASE("F2 matrices: rank, kernel, solve") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 200; ++t) {
    const std::size_t r = 1 + rng() % 20, c = 1 + rng() % 140;
    F2Matrix a(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) a.set(i, j, rng() & 1);
    const auto ker = a.kernel();
    CHECK(ker.size() + a.rank() == c);
    for (const auto& v : ker) CHECK(!a.apply(v).any());
    BitVec x(c);
    for (std::size_t j = 0; j < c; ++j) x.set(j, rng() & 1);
    const BitVec b = a.apply(x);
    const auto sol = a.solve(b);
    REQUIRE(sol);
    CHECK(a.apply(*sol) == b);
  }
  F2Matrix z(2, 3);
  z.set(0, 0);
  z.set(1, 0);
  BitVec b(2);
  b.set(0);
  CHECK(!z.solve(b));
}

TEST_CASE("GF matrices: rank and kernel") {
  std::mt19937_64 rng(3);
  for (int k : {2, 4, 8}) {
    const auto& f = BinaryField::get(k);
    for (int t = 0; t < 50; ++t) {
      const std::size_t r = 1 + rng() % 8, c = 1 + rng() % 12;
      GfMatrix a(f, r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) a.at(i, j) = (rng() % 3 == 0) ? f.size() - 1 : rng() % f.size();
      const auto ker = a.kernel();
      CHECK(ker.size() + a.rank() == c);
      for (const auto& v : ker)
        for (std::size_t i = 0; i < r; ++i) {
          Elem s = 0;
          for (std::size_t j = 0; j < c; ++j) s ^= f.mul(a.at(i, j), v[j]);
          CHECK(s == 0);
        }
    }
  }
}

TEST_CASE("u64 rank helpers") {
  std::vector<std::uint64_t> v{0b011, 0b110, 0b101, 0b1000};
  CHECK(rank_u64(v) == 3);
  const auto e = rref_u64(v);
  CHECK(e.size() == 3);
  for (std::size_t i = 0; i + 1 < e.size(); ++i) CHECK(e[i] > e[i + 1]);
}
