#include <doctest.h>

#include "../support.hpp"
#include "olt/errors.hpp"
#include "olt/forms.hpp"

using namespace olt;

namespace {

BitVec unit(std::size_t n, std::size_t b) {
  BitVec v(n);
  v.set(b);
  return v;
}

BitVec from_bits(std::uint64_t w, std::size_t n) { return BitVec::from_word(w, n); }

}  // namespace

TEST_CASE("monomial bases") {
  CHECK(FormSpace(AmbientSpace::projective(2), {5}).dimension() == 21);
  CHECK(FormSpace(AmbientSpace::product(1, 2), {1, 3}).dimension() == 20);
  CHECK(FormSpace(AmbientSpace::product(1, 1), {3, 4}).dimension() == 20);
  CHECK(FormSpace(AmbientSpace::weighted1112(), {4}).dimension() == 22);
  CHECK(FormSpace(AmbientSpace::twist(), {1, 1}).dimension() == 9);
  CHECK(FormSpace(AmbientSpace::twist(), {2, 2}).dimension() == 36);
  CHECK(FormSpace(AmbientSpace::grassmannian25(), {2}).dimension() == 55);
  const FormSpace q(AmbientSpace::projective(2), {2});
  CHECK(q.raw_monomial(0) == std::vector<int>{2, 0, 0});
  CHECK(q.raw_monomial(1) == std::vector<int>{1, 1, 0});
  CHECK(q.raw_monomial(5) == std::vector<int>{0, 0, 2});
  const FormSpace p12(AmbientSpace::product(1, 2), {1, 1});
  CHECK(p12.raw_monomial(0) == std::vector<int>{1, 0, 1, 0, 0});
  CHECK(p12.raw_monomial(3) == std::vector<int>{0, 1, 1, 0, 0});
  CHECK_THROWS_AS(FormSpace(AmbientSpace::product(1, 2), {1}), DomainError);
}

TEST_CASE("quintics through points") {
  const auto space = AmbientSpace::projective(2);
  const FormSpace quintics(space, {5});
  CHECK(hypersurfaces_through(quintics, {}).size() == 21);
  const auto pts = enumerate_points(space, 1);
  // four points, no three collinear
  std::vector<ProjPoint> four;
  for (auto c : {std::vector<Elem>{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}}) four.push_back({c});
  const auto ker = hypersurfaces_through(quintics, four);
  CHECK(ker.size() == 17);
  std::size_t brute = 0;
  for (std::uint64_t w = 0; w < (1u << 21); ++w) {
    const BitVec f = from_bits(w, 21);
    bool ok = true;
    for (const auto& p : four) ok = ok && quintics.evaluate(f, p) == 0;
    brute += ok;
  }
  CHECK(brute == (1u << 17));
  for (const auto& f : ker)
    for (const auto& p : four) CHECK(quintics.evaluate(f, p) == 0);
}

TEST_CASE("twist forms are Galois invariant") {
  const auto space = AmbientSpace::twist();
  const FormSpace l(space, {1, 1}), q(space, {2, 2});
  for (int i = 1; i <= 2; ++i)
    for (const auto& p : enumerate_points(space, i))
      for (std::size_t b = 0; b < l.dimension(); ++b) CHECK(l.evaluate(unit(9, b), p, i) < (1u << i));
  for (std::size_t a = 0; a < 9; ++a)
    for (std::size_t b = 0; b < 9; ++b) CHECK_NOTHROW(multiply(l, unit(9, a), l, unit(9, b), q));
  for (std::size_t b = 0; b < 36; ++b) CHECK(q.from_raw(q.to_raw(unit(36, b))) == unit(36, b));
  // the raw form w x_0 y_0 is not invariant
  std::vector<Elem> raw(9, 0);
  raw[0] = 2;
  CHECK_THROWS_AS(l.from_raw(raw), DomainError);
}

TEST_CASE("ideals in a given degree") {
  const auto p12 = AmbientSpace::product(1, 2);
  const FormSpace l(p12, {1, 1}), c(p12, {3, 3});
  BitVec f(6);  // x0 y0 + x1 y1
  f.set(0);
  f.set(4);
  const std::vector<BitVec> gens{f};
  CHECK(ideal_in_degree(l, gens, c).size() == 18);
  CHECK(Quotient(c.dimension(), ideal_in_degree(l, gens, c)).dimension() == 22);

  const auto w = AmbientSpace::weighted1112();
  const FormSpace cubic(w, {3}), quartic(w, {4});
  BitVec x3(cubic.dimension());
  x3.set(static_cast<std::size_t>(cubic.raw_index({1, 0, 0, 1})));
  x3.set(static_cast<std::size_t>(cubic.raw_index({0, 2, 1, 0})));
  x3.set(static_cast<std::size_t>(cubic.raw_index({0, 1, 2, 0})));
  CHECK(Quotient(quartic.dimension(), ideal_in_degree(cubic, std::vector<BitVec>{x3}, quartic)).dimension() == 19);

  for (const auto& space : {AmbientSpace::product(2, 2), AmbientSpace::twist()}) {
    const FormSpace a(space, {1, 1}), b(space, {2, 2});
    // the pencil spanned by two general (1,1) forms
    std::vector<BitVec> pencil;
    if (space.kind() == SpaceKind::Twist) {
      pencil = {unit(9, 0) , unit(9, 6)};
      pencil[0] ^= unit(9, 8);
      pencil[1] ^= unit(9, 1);
    } else {
      pencil = {unit(9, 0), unit(9, 4)};
      pencil[0] ^= unit(9, 8);
      pencil[1] ^= unit(9, 2);
      pencil[1] ^= unit(9, 6);
    }
    CHECK(Quotient(b.dimension(), ideal_in_degree(a, pencil, b)).dimension() == 19);
  }
}

TEST_CASE("exact refinement") {
  const auto p1 = AmbientSpace::projective(1);
  const FormSpace lin(p1, {1});
  const auto line = enumerate_points(p1, 1);
  const Quotient none(2, {});
  CHECK(exact_point_refinement(lin, none, line, {}).empty());
  CHECK(exact_point_refinement(lin, none, line, line).size() == 1);

  // Y(F_2) = Z: all forms vanishing on Z
  const auto p2 = AmbientSpace::projective(2);
  const FormSpace quad(p2, {2});
  const auto plane = enumerate_points(p2, 1);
  const Quotient q6(6, {});
  CHECK(exact_point_refinement(quad, q6, plane, plane).size() ==
        std::size_t{1} << hypersurfaces_through(quad, plane).size());

  // against all 64 conics, for every subset of the Fano plane
  for (unsigned mask = 0; mask < 128; ++mask) {
    std::vector<ProjPoint> z;
    for (unsigned k = 0; k < 7; ++k)
      if (mask >> k & 1) z.push_back(plane[k]);
    std::vector<BitVec> brute;
    for (std::uint64_t w = 0; w < 64; ++w) {
      const BitVec f = from_bits(w, 6);
      bool ok = true;
      for (unsigned k = 0; k < 7; ++k) ok = ok && (quad.evaluate(f, plane[k]) == 0) == bool(mask >> k & 1);
      if (ok) brute.push_back(f);
    }
    CHECK(exact_point_refinement(quad, q6, plane, z) == brute);
  }
  CHECK_THROWS_AS(exact_point_refinement(lin, none, std::span(line).subspan(0, 2), std::span(line).subspan(2)),
                  DomainError);
}

TEST_CASE("point tables") {
  const auto p2 = AmbientSpace::projective(2);
  const FormSpace cub(p2, {3});
  for (int i = 1; i <= 4; ++i) {
    const auto pts = enumerate_points(p2, i);
    const PointTable t(cub, pts, i);
    CHECK(t.count_zeros(BitVec(10)) == pts.size());
    for (std::uint64_t w : {1ull, 0x3ffull, 0x155ull, 0x2a3ull}) {
      const BitVec f = from_bits(w, 10);
      std::size_t direct = 0;
      for (const auto& p : pts) direct += cub.evaluate(f, p, i) == 0;
      CHECK(t.count_zeros(f) == direct);
    }
  }
  CHECK(PointTable(cub, enumerate_points(p2, 2), 2).count_zeros(BitVec(10)) == 21);
  const auto tw = AmbientSpace::twist();
  const FormSpace l(tw, {1, 1});
  for (int i = 1; i <= 2; ++i) {
    const auto pts = enumerate_points(tw, i);
    const PointTable t(l, pts, i);
    const BitVec f = unit(9, 0);
    std::size_t direct = 0;
    for (const auto& p : pts) direct += l.evaluate(f, p, i) == 0;
    CHECK(t.count_zeros(f) == direct);
  }
}
