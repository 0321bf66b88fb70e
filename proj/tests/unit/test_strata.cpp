#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "olt/errors.hpp"
#include "olt/spinor.hpp"
#include "olt/strata.hpp"

using namespace olt;

namespace {

std::vector<std::uint64_t> u64(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

bool prefixes_eligible(const EligibilityOracle& oracle, const std::vector<Point>& t) {
  for (std::size_t k = 1; k <= t.size(); ++k)
    if (!oracle(std::span<const Point>(t.data(), k))) return false;
  return true;
}

std::size_t set_orbit_size(const PermGroup& g, std::vector<Point> z) {
  std::sort(z.begin(), z.end());
  std::set<std::vector<Point>> seen;
  for (const auto& e : g.elements()) seen.insert(e.apply_sorted(z));
  return seen.size();
}

}  // namespace

TEST_CASE("allowed point-count tuples") {
  CHECK(table2(6).size() == 33);
  CHECK(table2(7).size() == 7);
  for (int g : {6, 7})
    for (const auto& t : table2(g)) {
      CHECK(static_cast<int>(t.size()) == g);
      const std::vector<std::uint64_t> full(t.begin(), t.end());
      CHECK(table2_filter(full, g));
      auto off = full;
      off.back() += 1;
      CHECK_FALSE(table2_filter(off, g));
    }
  CHECK(table2_filter(u64({6, 18}), 7));
  CHECK_FALSE(table2_filter(u64({8}), 7));
  CHECK_FALSE(table2_filter(u64({8}), 6));
  CHECK(table2_filter(std::vector<std::uint64_t>{}, 6));
  CHECK(table2_filter(u64({5, 13, 14, 25}), 6));
  CHECK_FALSE(table2_filter(u64({5, 13, 41, 25}), 6));
}

TEST_CASE("point-count exclusions") {
  const auto h6 = stratum_precheck(6, "hyperelliptic");
  CHECK(h6.excluded);
  for (const auto& c : h6.checks) CHECK(c.holds);
  CHECK(stratum_precheck(7, "hyperelliptic").excluded);
  CHECK(stratum_precheck(6, "bielliptic").excluded);
  const auto b7 = stratum_precheck(7, "bielliptic");
  CHECK_FALSE(b7.excluded);
  CHECK(b7.external);
  CHECK(stratum_precheck(7, "trigonal-maroni3").excluded);
  const auto m1 = stratum_precheck(7, "trigonal-maroni1");
  CHECK_FALSE(m1.excluded);
  for (const auto& t : m1.surviving) CHECK(t[0] == 7);
  CHECK(stratum_precheck(6, "generic").surviving.size() == 33);
  CHECK_THROWS_AS(stratum_precheck(5, "generic"), DomainError);
  CHECK_THROWS_AS(stratum_precheck(6, "tetragonal"), DomainError);
  CHECK(table4().size() == 5);
}

TEST_CASE("stratum oracles") {
  SUBCASE("three points with one projection") {
    const auto& spec = stratum_spec("g7-rational-pair");
    const auto act = stratum_action(spec);
    const auto oracle = eligibility_oracle_for(spec, act.points);
    REQUIRE(oracle);
    // same first factor, different second factor
    std::vector<Point> t;
    for (Point p = 0; p < act.points.size() && t.size() < 3; ++p)
      if (std::equal(act.points[p].coords.begin(), act.points[p].coords.begin() + 3, act.points[0].coords.begin()))
        t.push_back(p);
    REQUIRE(t.size() == 3);
    CHECK(oracle(std::span<const Point>(t.data(), 2)));
    CHECK_FALSE(oracle(t));
  }
  SUBCASE("five points over one point of P^1") {
    const auto& spec = stratum_spec("g7-tetragonal");
    const auto act = stratum_action(spec);
    const auto oracle = eligibility_oracle_for(spec, act.points);
    std::vector<Point> t;
    for (Point p = 0; p < act.points.size() && t.size() < 5; ++p)
      if (act.points[p].coords[0] == act.points[0].coords[0] && act.points[p].coords[1] == act.points[0].coords[1])
        t.push_back(p);
    REQUIRE(t.size() == 5);
    CHECK(prefixes_eligible(oracle, {t.begin(), t.begin() + 4}));
    CHECK_FALSE(oracle(t));
  }
  SUBCASE("rank-2 hyperplanes") {
    const auto& spec = stratum_spec("g6-generic");
    const auto act = stratum_action(spec);
    CHECK(act.group.order() == 9999360);
    const auto oracle = eligibility_oracle_for(spec, act.points);
    // p_01 alone is a rank-2 form; p_01 + p_23 has rank 4
    const int r2 = index_of(act.points, ProjPoint{{1, 0, 0, 0, 0, 0, 0, 0, 0, 0}});
    const int r4 = index_of(act.points, ProjPoint{{1, 0, 0, 0, 0, 0, 0, 1, 0, 0}});
    REQUIRE(r2 >= 0);
    REQUIRE(r4 >= 0);
    CHECK_FALSE(oracle(std::vector<Point>{static_cast<Point>(r2)}));
    CHECK(oracle(std::vector<Point>{static_cast<Point>(r4)}));
  }
  SUBCASE("Lagrangians meeting in a 3-space") {
    const OgPlus& og = OgPlus::get();
    const std::vector<F2Vec10> l0{1, 2, 4, 8, 16};
    const std::vector<F2Vec10> l1{1u << 5, 1u << 6, 4, 8, 16};
    const int a = og.index_of_lagrangian(l0), b = og.index_of_lagrangian(l1);
    REQUIRE(a >= 0);
    REQUIRE(b >= 0);
    OgOracle oracle;
    CHECK(oracle.classify(std::vector<Point>{static_cast<Point>(a), static_cast<Point>(b)}) ==
          OgVerdict::LargeIntersection);
    // a collinear triple of pure spinors
    bool found = false;
    for (Point p = 0; p < og.size() && !found; ++p)
      for (Point q = p + 1; q < og.size() && !found; ++q) {
        const int r = og.index_of_spinor(og.spinor(p) ^ og.spinor(q));
        if (r < 0) continue;
        found = true;
        CHECK(oracle.classify(std::vector<Point>{p, q, static_cast<Point>(r)}) != OgVerdict::Eligible);
      }
    CHECK(found);
  }
}

TEST_CASE("oracles are invariant under the group") {
  std::mt19937_64 rng(11);
  for (const char* id : {"g7-rational-pair", "g7-tetragonal", "g6-generic", "g7-generic"}) {
    CAPTURE(id);
    const auto& spec = stratum_spec(id);
    const auto act = stratum_action(spec);
    const bool og = spec.id == "g7-generic";
    const auto oracle = eligibility_oracle_for(spec, act.points);
    OgOracle full;
    std::size_t agree = 0, eligible = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      std::uniform_int_distribution<std::size_t> size(2, og ? 4 : 6);
      std::uniform_int_distribution<Point> pick(0, static_cast<Point>(act.points.size() - 1));
      std::set<Point> s;
      const std::size_t k = size(rng);
      while (s.size() < k) s.insert(pick(rng));
      std::vector<Point> u(s.begin(), s.end());
      const Permutation g = random_element(act.group, rng());
      const auto gu = g.apply_sorted(u);
      bool x, y;
      if (og) {
        x = full.classify(u) == OgVerdict::Eligible;
        y = full.classify(gu) == OgVerdict::Eligible;
      } else {
        x = prefixes_eligible(oracle, u);
        y = prefixes_eligible(oracle, gu);
      }
      agree += x == y;
      eligible += x;
    }
    CHECK(agree == 1000);
    CHECK(eligible > 0);
  }
}

TEST_CASE("direct point counts") {
  CandidateScheme x11{"", "X11", {}, {}, {}, {}};
  CHECK(count_points(x11, 1) == 21);
  CandidateScheme p2{"", "P2", {{{1}, BitVec(3)}}, {}, {}, {}};
  CHECK(count_points(p2, 2) == 21);
  CandidateScheme line{"", "P2", {{{1}, BitVec::from_word(1, 3)}}, {}, {}, {}};
  CHECK(count_points(line, 3) == 9);
  CHECK_THROWS_AS(count_points(CandidateScheme{"", "og+", {}, {}, {}, {}}, 3, 1000), ResourceError);
}

TEST_CASE("plane quintics through four points") {
  StratumOptions o;
  o.subset_sizes = {4};
  o.max_extension = 3;
  const auto& spec = stratum_spec("g6-plane-quintic");
  const auto rep = run_stratum(spec, o);
  REQUIRE(rep.ok);
  const auto act = stratum_action(spec);
  std::map<std::vector<std::uint64_t>, std::uint64_t> found;
  for (const auto& c : rep.candidates) {
    CHECK(verify_exactness(c));
    CHECK(c.points.size() == 4);
    for (int i = 1; i <= 3; ++i) CHECK(count_points(c, i) == c.counts[static_cast<std::size_t>(i - 1)]);
    std::vector<Point> z;
    for (const auto& p : c.points) z.push_back(static_cast<Point>(index_of(act.points, p)));
    found[c.counts] += set_orbit_size(act.group, z);
  }
  // every quintic with exactly four F_2-points
  const FormSpace quintic(AmbientSpace::projective(2), {5});
  std::vector<PointTable> tables;
  for (int i = 1; i <= 3; ++i) tables.emplace_back(quintic, enumerate_points(AmbientSpace::projective(2), i), i);
  std::map<std::vector<std::uint64_t>, std::uint64_t> brute;
  for (std::uint64_t w = 0; w < (1u << 21); ++w) {
    const BitVec f = BitVec::from_word(w, 21);
    std::vector<std::uint64_t> counts{tables[0].count_zeros(f)};
    if (counts[0] != 4) continue;
    bool ok = true;
    for (int i = 2; i <= 3 && ok; ++i) {
      counts.push_back(tables[static_cast<std::size_t>(i - 1)].count_zeros(f));
      ok = table2_filter(counts, 6);
    }
    if (ok) ++brute[counts];
  }
  CHECK(!brute.empty());
  CHECK(found == brute);

  o.seed = 5;
  const auto again = run_stratum(spec, o);
  std::multiset<std::vector<std::uint64_t>> a, b;
  for (const auto& c : rep.candidates) a.insert(c.counts);
  for (const auto& c : again.candidates) b.insert(c.counts);
  CHECK(a == b);
}

TEST_CASE("self-adjoint cubics") {
  StratumOptions o;
  o.max_extension = 2;
  const auto rep = run_stratum(stratum_spec("g7-self-adjoint"), o);
  REQUIRE(rep.ok);
  bool seen = false;
  for (const auto& [k, v] : rep.stats)
    if (k == "x3-choices") {
      seen = true;
      CHECK(v == 3);
    }
  CHECK(seen);
  for (const auto& c : rep.candidates) {
    CHECK(verify_exactness(c));
    REQUIRE(c.forms.size() == 2);
    CHECK(c.forms[0].degree == std::vector<int>{3});
  }
}

TEST_CASE("genus-6 hyperplane classes") {
  const auto h = genus6_hyperplane_classes();
  CHECK(h.classes.size() == 55);
  std::size_t proper = 0;
  for (const auto& c : h.classes) {
    CHECK(c.hyperplanes.size() == 4);
    proper += c.proper;
  }
  CHECK(proper == 47);

  // section points against a filter of all of Gr(2,5)
  const auto gr = AmbientSpace::grassmannian25();
  const FormSpace lin(gr, {1});
  for (std::size_t k : {std::size_t{0}, std::size_t{20}}) {
    std::vector<std::uint64_t> words;
    for (const auto& p : h.classes[k].hyperplanes) {
      std::uint64_t w = 0;
      for (int b = 0; b < 10; ++b) w |= std::uint64_t{p.coords[static_cast<std::size_t>(b)]} << b;
      words.push_back(w);
    }
    for (int i = 1; i <= 2; ++i) {
      std::vector<ProjPoint> brute;
      for (const auto& p : enumerate_points(gr, i)) {
        bool zero = true;
        for (auto w : words) zero = zero && lin.evaluate(BitVec::from_word(w, 10), p, i) == 0;
        if (zero) brute.push_back(p);
      }
      CHECK(gr25_section_points(words, i) == brute);
    }
  }
}

TEST_CASE("local multiplicity on OG+") {
  const OgPlus& og = OgPlus::get();
  std::optional<std::pair<Point, Point>> transversal, ruled;
  for (Point q = 1; q < og.size() && !(transversal && ruled); ++q) {
    const auto m = og.meet(0, q);
    if (m == 1 && !transversal) transversal = std::make_pair(Point{0}, q);
    if (m == 3 && !ruled) ruled = std::make_pair(Point{0}, q);
  }
  REQUIRE(transversal);
  REQUIRE(ruled);
  const std::vector<std::uint64_t> a{og.spinor(transversal->first), og.spinor(transversal->second)};
  CHECK(og_local_multiplicity(a, a[0]) == 1);
  CHECK(og_local_multiplicity(a, a[1]) == 1);
  // the line through spinors whose Lagrangians meet in a 3-space lies on OG+
  const std::vector<std::uint64_t> b{og.spinor(ruled->first), og.spinor(ruled->second)};
  CHECK_FALSE(og_local_multiplicity(b, b[0]).has_value());
  const std::uint64_t outside = a[0] ^ a[1] ^ 1;  // not a spinor of the line
  CHECK_THROWS_AS(og_local_multiplicity(a, outside), DomainError);
}
