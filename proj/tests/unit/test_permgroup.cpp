#include <random>
#include <set>

#include "doctest.h"
#include "olt/errors.hpp"
#include "olt/perm_group.hpp"
#include "../support.hpp"

using namespace olt;
using testsupport::closure;
using testsupport::fano_generators;

TEST_CASE("permutation basics") {
  auto p = Permutation::from_cycles(5, {{0, 1, 2}, {3, 4}});
  CHECK(p(0) == 1);
  CHECK(p(2) == 0);
  CHECK((p * p.inverse()).is_identity());
  CHECK(Permutation::compose_with_inverse(p, p).is_identity());
  auto q = Permutation::from_cycles(5, {{0, 4}});
  CHECK((p * q)(0) == 3);
  CHECK(Permutation::parse(p.to_string()) == p);
  CHECK_THROWS_AS(Permutation::parse("0 0 1"), DomainError);
}

TEST_CASE("orbits") {
  auto c5 = Permutation::from_cycles(5, {{0, 1, 2, 3, 4}});
  std::vector<Permutation> gens{c5};
  auto ot = orbit_with_transversal(gens, 5, 0);
  CHECK(ot.orbit.size() == 5);
  for (Point y : ot.orbit) CHECK(ot.element_for(y)(0) == y);
  CHECK(ot.element_for(0).is_identity());

  auto triv = orbit_with_transversal({}, 10, 3);
  CHECK(triv.orbit == std::vector<Point>{3});

  auto fano = fano_generators();
  auto fo = orbit_with_transversal(fano, 7, 0);
  CHECK(fo.orbit.size() == 7);
  for (Point y : fo.orbit) CHECK(fo.element_for(y)(0) == y);
  CHECK_THROWS_AS(orbit_with_transversal(fano, 7, 9), DomainError);
}

TEST_CASE("schreier sims orders") {
  std::vector<Permutation> s3{Permutation::from_cycles(3, {{0, 1}}), Permutation::from_cycles(3, {{0, 1, 2}})};
  CHECK(PermGroup(3, s3).order() == 6);
  CHECK(PermGroup(10, {}).order() == 1);

  auto fano = fano_generators();
  CHECK(closure(fano, 7).size() == 168);
  PermGroup g(7, fano);
  CHECK(g.order() == 168);

  SchreierSimsOptions det;
  det.random_sift_successes = 0;
  CHECK(PermGroup(7, fano, det).order() == 168);
}

TEST_CASE("orders match closure on small groups") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 3 + rng() % 6;
    std::vector<Permutation> gens;
    const int count = 1 + rng() % 3;
    for (int i = 0; i < count; ++i) {
      std::vector<Point> img(n);
      for (Point x = 0; x < n; ++x) img[x] = x;
      // sparse random permutations keep most groups small
      for (int s = 0; s < 2; ++s) std::swap(img[rng() % n], img[rng() % n]);
      gens.push_back(Permutation::from_images(img));
    }
    auto all = closure(gens, n);
    if (all.size() > 10000) continue;
    PermGroup g(n, gens);
    CHECK(g.order() == all.size());
    for (const auto& e : all) CHECK(g.contains(e));
    CHECK(g.elements().size() == all.size());
  }
}

TEST_CASE("stabilizers") {
  std::vector<Permutation> s3{Permutation::from_cycles(3, {{0, 1}}), Permutation::from_cycles(3, {{0, 1, 2}})};
  auto st = PermGroup(3, s3).stabilizer(0);
  CHECK(st.order() == 2);
  for (const auto& t : st.generators()) CHECK(t(0) == 0);

  PermGroup fano(7, fano_generators());
  for (Point p = 0; p < 7; ++p) {
    auto sp = fano.stabilizer(p);
    CHECK(sp.order() == 24);
    CHECK(sp.order() * fano.orbit(p).orbit.size() == fano.order());
    for (const auto& t : sp.generators()) CHECK(t(p) == p);
    auto two = sp.stabilizer((p + 1) % 7);
    CHECK(two.order() == 4);
  }
  auto triv = PermGroup::trivial(5).stabilizer(2);
  CHECK(triv.order() == 1);
}

TEST_CASE("membership") {
  PermGroup c3(3, {Permutation::from_cycles(3, {{0, 1, 2}})});
  CHECK(c3.contains(Permutation::identity(3)));
  CHECK_FALSE(c3.contains(Permutation::from_cycles(3, {{0, 1}})));
  CHECK_THROWS_AS(c3.contains(Permutation::identity(4)), DomainError);

  auto fano = fano_generators();
  PermGroup g(7, fano);
  std::mt19937_64 rng(1);
  Permutation w = Permutation::identity(7);
  for (int i = 0; i < 20; ++i) w = w * fano[rng() % 2];
  CHECK(g.contains(w));
  std::vector<Point> odd{1, 0, 2, 3, 4, 5, 6};
  CHECK_FALSE(g.contains(Permutation::from_images(odd)));
}

TEST_CASE("product replacement") {
  PermGroup triv = PermGroup::trivial(4);
  CHECK(random_element(triv, 3).is_identity());

  PermGroup fano(7, fano_generators());
  auto all = closure(fano_generators(), 7);
  ProductReplacement pr(7, fano.generators(), 12345);
  std::set<Permutation> hit;
  for (int i = 0; i < 10000; ++i) {
    auto e = pr.next();
    CHECK(all.count(e) == 1);
    hit.insert(e);
  }
  CHECK(hit.size() >= 160);

  ProductReplacement a(7, fano.generators(), 9), b(7, fano.generators(), 9);
  for (int i = 0; i < 50; ++i) CHECK(a.next() == b.next());
}

TEST_CASE("generating sets") {
  PermGroup fano(7, fano_generators());
  std::mt19937_64 rng(3);
  auto gens = fano.random_generating_set(rng);
  CHECK(PermGroup(7, gens).order() == 168);
  std::vector<Permutation> padded = fano_generators();
  padded.push_back(padded[0] * padded[1]);
  padded.push_back(Permutation::identity(7));
  auto reduced = PermGroup(7, padded).reduced_generators();
  CHECK(reduced.size() == 2);
}

TEST_CASE("larger groups") {
  // S_n via a transposition and an n-cycle.
  for (std::size_t n : {8u, 12u, 20u}) {
    std::vector<Point> cyc(n);
    for (Point i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    std::vector<Permutation> gens{Permutation::from_cycles(n, {{0, 1}}), Permutation::from_images(cyc)};
    PermGroup g(n, gens);
    GroupOrder f = 1;
    for (std::size_t i = 2; i <= n; ++i) f *= i;
    CHECK(g.order() == f);
  }
}
