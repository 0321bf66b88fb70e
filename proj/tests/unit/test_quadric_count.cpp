#include <doctest.h>

#include <random>

#include "olt/quadric_count.hpp"

using namespace olt;

namespace {

QuadraticForm2 random_form(std::mt19937_64& rng, std::size_t n, int density) {
  QuadraticForm2 f(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = i; k < n; ++k)
      if (static_cast<int>(rng() % 100) < density) f.add_monomial(i, k);
  return f;
}

}  // namespace

TEST_CASE("form evaluation agrees over F2") {
  std::mt19937_64 rng(1);
  const auto& f = BinaryField::get(1);
  for (int t = 0; t < 50; ++t) {
    const auto q = random_form(rng, 7, 40);
    for (std::uint64_t x = 0; x < 128; ++x) {
      std::vector<Elem> v(7);
      for (int i = 0; i < 7; ++i) v[i] = x >> i & 1;
      CHECK(q(x) == (q.evaluate(f, v) == 1));
    }
  }
}

TEST_CASE("restriction is a pullback") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    const auto q = random_form(rng, 16, 30);
    std::vector<std::uint64_t> basis;
    for (int i = 0; i < 5; ++i) basis.push_back(rng() & 0xffff);
    const auto r = q.restrict_to(basis);
    for (std::uint64_t c = 0; c < 32; ++c) {
      std::uint64_t x = 0;
      for (int i = 0; i < 5; ++i)
        if (c >> i & 1) x ^= basis[i];
      CHECK(r(c) == q(x));
    }
  }
}

TEST_CASE("Gray-code count matches direct evaluation") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 60; ++t) {
    const std::size_t r = 1 + rng() % 5;
    const int j = 1 + static_cast<int>(rng() % 3);
    const std::size_t m = rng() % 4;
    std::vector<QuadraticForm2> forms;
    for (std::size_t i = 0; i < m; ++i) forms.push_back(random_form(rng, r, 25 + static_cast<int>(rng() % 50)));
    CHECK(count_projective_zeros(forms, r, j) == count_projective_zeros_naive(forms, r, j));
  }
}

TEST_CASE("known counts") {
  // the conic xy + z^2 has q + 1 points
  QuadraticForm2 c(3);
  c.add_monomial(0, 1);
  c.add_monomial(2, 2);
  std::vector<QuadraticForm2> forms{c};
  for (int j = 1; j <= 6; ++j) CHECK(count_projective_zeros(forms, 3, j) == (1u << j) + 1);
  std::vector<QuadraticForm2> none;
  CHECK(count_projective_zeros(none, 3, 2) == 21);
  CHECK(count_projective_zeros(forms, 3, 4, 5) == 6);
}
