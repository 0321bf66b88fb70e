#include <algorithm>
#include <sstream>

#include "olt/errors.hpp"
#include "olt/strata.hpp"

namespace olt {

const std::vector<std::vector<int>>& table2(int genus) {
  static const std::vector<std::vector<int>> g6 = {
      {4, 14, 16, 18, 14, 92}, {4, 14, 16, 18, 24, 68}, {4, 14, 16, 26, 14, 68}, {4, 16, 16, 20, 9, 64},
      {5, 11, 11, 31, 20, 65}, {5, 11, 11, 31, 20, 77}, {5, 11, 11, 31, 20, 89}, {5, 11, 11, 31, 30, 53},
      {5, 11, 11, 31, 30, 65}, {5, 11, 11, 31, 30, 77}, {5, 11, 11, 31, 30, 89}, {5, 11, 11, 31, 40, 53},
      {5, 11, 11, 31, 40, 65}, {5, 11, 11, 39, 20, 53}, {5, 11, 11, 39, 20, 65}, {5, 13, 14, 25, 15, 70},
      {5, 13, 14, 25, 15, 82}, {5, 13, 14, 25, 15, 94}, {5, 13, 14, 25, 25, 46}, {5, 13, 14, 25, 25, 58},
      {5, 13, 14, 25, 25, 70}, {5, 15, 5, 35, 20, 45},  {6, 10, 9, 38, 11, 79},  {6, 10, 9, 38, 21, 67},
      {6, 10, 9, 38, 31, 55},  {6, 14, 6, 26, 26, 68},  {6, 14, 6, 26, 26, 80},  {6, 14, 6, 26, 36, 56},
      {6, 14, 6, 34, 16, 56},  {6, 14, 6, 34, 26, 44},  {6, 14, 12, 26, 6, 44},  {6, 14, 12, 26, 6, 56},
      {6, 14, 12, 26, 6, 66}};
  static const std::vector<std::vector<int>> g7 = {
      {6, 18, 12, 18, 6, 60, 174}, {6, 18, 12, 18, 6, 72, 132}, {6, 18, 12, 18, 6, 84, 90},
      {7, 15, 7, 31, 12, 69, 126}, {7, 15, 7, 31, 22, 45, 112}, {7, 15, 7, 31, 22, 57, 70},
      {7, 15, 7, 31, 22, 57, 84}};
  if (genus == 6) return g6;
  if (genus == 7) return g7;
  throw DomainError("point-count table exists for genus 6 and 7 only");
}

bool table2_filter(std::span<const std::uint64_t> prefix, int genus) {
  const auto& t = table2(genus);
  if (prefix.size() > static_cast<std::size_t>(genus)) return false;
  return std::any_of(t.begin(), t.end(), [&](const std::vector<int>& row) {
    for (std::size_t i = 0; i < prefix.size(); ++i)
      if (static_cast<std::uint64_t>(row[i]) != prefix[i]) return false;
    return true;
  });
}

const std::vector<Table4Row>& table4() {
  using R = Table4Row::Reason;
  static const std::vector<Table4Row> rows = {
      {{1, 5, 13, 25}, {6, 10, 9, 38}, R::ExceedsDouble, 1},
      {{3, 9, 9, 9}, {5, 13, 41, 25}, R::ExceedsDouble, 4},
      {{3, 9, 9, 9}, {6, 10, 9, 38}, R::ExceedsDouble, 4},
      {{5, 5, 5, 25}, {5, 13, 14, 25}, R::ExceedsDouble, 2},
      {{5, 5, 5, 25}, {6, 10, 9, 38}, R::EqualDoubleOddCount, 2},
  };
  return rows;
}

namespace {

std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::uint64_t p1_count(int i) { return ipow(2, i) + 1; }

std::string tuple_string(std::span<const int> t) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < t.size(); ++k) os << (k ? "," : "") << t[k];
  os << ')';
  return os.str();
}

// Places of degree 3 from counts over F_2 and F_8.
int degree3_places(int n1, int n3) { return (n3 - n1) / 3; }

std::vector<std::vector<int>> with_first(int genus, int first) {
  std::vector<std::vector<int>> out;
  for (const auto& t : table2(genus))
    if (t[0] == first) out.push_back(t);
  return out;
}

PrecheckResult hyperelliptic(int genus) {
  PrecheckResult r;
  const std::uint64_t bound4 = 2 * p1_count(2), bound16 = 2 * p1_count(4);
  std::size_t by4 = 0, by16 = 0, left = 0;
  int min4 = 1 << 30;
  for (const auto& t : table2(genus)) {
    min4 = std::min(min4, t[1]);
    if (static_cast<std::uint64_t>(t[1]) > bound4)
      ++by4;
    else if (static_cast<std::uint64_t>(t[3]) > bound16)
      ++by16;
    else {
      ++left;
      r.surviving.push_back(t);
    }
  }
  const std::size_t total = table2(genus).size();
  if (genus == 6) {
    r.checks.push_back({"#C(F_4) > 10 = 2#P^1(F_4) for " + std::to_string(by4) + " of " + std::to_string(total) +
                            " tuples",
                        by4 == total - 3});
    bool all38 = true;
    for (const auto& t : table2(6))
      if (static_cast<std::uint64_t>(t[1]) <= bound4) all38 = all38 && t[3] == 38;
    r.checks.push_back({"the other 3 have #C(F_16) = 38 > 34 = 2#P^1(F_16)", by16 == 3 && all38});
  } else {
    r.checks.push_back({"#C(F_4) >= " + std::to_string(min4) + " > 10 = 2#P^1(F_4) for every tuple",
                        by4 == total && min4 == 15});
  }
  r.excluded = left == 0;
  return r;
}

// g = 7, #C(F_2) = 6 is impossible for trigonal curves.
ExclusionCheck trigonal_six() {
  bool ok = true;
  for (const auto& t : with_first(7, 6)) ok = ok && static_cast<std::uint64_t>(t[1]) > 3 * p1_count(2) && t[1] == 18;
  return {"#C(F_2) = 6: #C(F_4) = 18 > 15 = 3#P^1(F_4)", ok};
}

PrecheckResult bielliptic6() {
  PrecheckResult r;
  bool all = true;
  for (std::size_t k = 0; k < table4().size(); ++k) {
    const auto& row = table4()[k];
    const std::string head = "E " + tuple_string(row.e) + ", C " + tuple_string(row.c) + ": ";
    const int i = row.extension;
    const int c = row.c[static_cast<std::size_t>(i - 1)], e = row.e[static_cast<std::size_t>(i - 1)];
    bool prefix = false;
    for (const auto& t : table2(6)) prefix = prefix || std::equal(row.c.begin(), row.c.end(), t.begin());
    if (!prefix)
      r.checks.push_back({head + "C counts are not a prefix of an allowed tuple (nearest: (5,13,14,25))", false});
    if (row.reason == Table4Row::Reason::ExceedsDouble) {
      const bool holds = c > 2 * e;
      r.checks.push_back({head + "#C(F_" + std::to_string(1 << i) + ") = " + std::to_string(c) + " > " +
                              std::to_string(2 * e) + " = 2#E",
                          holds});
      all = all && holds;
    } else {
      const bool equal = c == 2 * e;
      r.checks.push_back({head + "#C(F_4) = " + std::to_string(c) + " = 2#E(F_4)", equal});
      const bool odd = row.c[0] % 2 == 1;
      r.checks.push_back({head + "#C(F_2) = " + std::to_string(row.c[0]) + " is odd", odd});
      // a degree-3 place of C lies over a degree-3 place of E
      const int pc = degree3_places(row.c[0], row.c[2]), pe = degree3_places(row.e[0], row.e[2]);
      const bool places = pc > 0 && pe == 0;
      r.checks.push_back({head + "C has " + std::to_string(pc) + " degree-3 place(s), E has " + std::to_string(pe),
                          places});
      all = all && equal && (odd || places);
    }
  }
  r.excluded = all;
  return r;
}

PrecheckResult bielliptic7() {
  PrecheckResult r;
  // #C(F_2) = 6 and #E(F_2) in {3, 5} (resultant criterion)
  for (int e1 : {3, 5}) {
    const int a = 3 - e1;
    const int e2 = 4 + 1 - (a * a - 4);
    bool over = true, equal = true;
    for (const auto& t : with_first(7, 6)) {
      over = over && t[1] > 2 * e2;
      equal = equal && t[1] == 2 * e2;
    }
    if (e1 == 5)
      r.checks.push_back({"#E(F_2) = 5: #C(F_4) = 18 > " + std::to_string(2 * e2) + " = 2#E(F_4)", over});
    else
      r.checks.push_back({"#E(F_2) = 3: #C(F_4) = 18 = 2#E(F_4); double covers of E ramified over one degree-6 "
                          "place or two degree-3 places remain (requires external verification)",
                          equal});
  }
  r.surviving = with_first(7, 6);
  r.external = true;
  return r;
}

}  // namespace

std::vector<std::string> precheck_strata(int genus) {
  if (genus == 6) return {"hyperelliptic", "bielliptic", "trigonal-maroni2", "trigonal-maroni0", "plane-quintic", "generic"};
  if (genus == 7)
    return {"hyperelliptic", "bielliptic", "trigonal-maroni3", "trigonal-maroni1", "self-adjoint", "rational-pair",
            "irrational-pair", "tetragonal", "generic"};
  throw DomainError("genus must be 6 or 7");
}

PrecheckResult stratum_precheck(int genus, std::string_view stratum) {
  const auto names = precheck_strata(genus);
  if (std::find(names.begin(), names.end(), stratum) == names.end())
    throw DomainError("unknown stratum: " + std::string(stratum));
  PrecheckResult r;
  if (stratum == "hyperelliptic")
    r = hyperelliptic(genus);
  else if (stratum == "bielliptic")
    r = genus == 6 ? bielliptic6() : bielliptic7();
  else if (genus == 7 && stratum == "trigonal-maroni3") {
    r.checks.push_back(trigonal_six());
    const int smooth = static_cast<int>(ipow(2, 2) + 2 + 1) - 1;  // P(1:1:3)(F_2) minus the singular point
    r.checks.push_back({"#C(F_2) = 7 > " + std::to_string(smooth) + " smooth points of P(1:1:3)(F_2)", 7 > smooth});
    r.excluded = r.checks[0].holds && r.checks[1].holds;
  } else if (genus == 7 && stratum == "trigonal-maroni1") {
    r.checks.push_back(trigonal_six());
    r.surviving = with_first(7, 7);
  } else {
    r.surviving = table2(genus);
  }
  r.genus = genus;
  r.stratum = std::string(stratum);
  if (r.excluded) r.surviving.clear();
  return r;
}

const std::vector<StratumSpec>& stratum_specs() {
  static const std::vector<StratumSpec> specs = {
      {"g6-trigonal-maroni2", 6, "trigonal-maroni2", "X21", {}, {1, 3}, {4, 5, 6}, "none", "none"},
      {"g6-trigonal-maroni0", 6, "trigonal-maroni0", "P1xP1", {}, {3, 4}, {4, 5, 6}, "none", "swap-free"},
      {"g6-plane-quintic", 6, "plane-quintic", "P2", {}, {5}, {4, 5, 6}, "none", "none"},
      {"g6-generic", 6, "generic", "Gr25", {{1}, {1}, {1}, {1}}, {2}, {4, 5, 6}, "rank4-independent", "span-merge"},
      {"g6-bielliptic", 6, "bielliptic", "", {}, {}, {}, "none", "none"},
      {"g7-trigonal-maroni1", 7, "trigonal-maroni1", "P1xP2", {{1, 1}}, {3, 3}, {6, 7}, "smooth-x1", "none"},
      {"g7-self-adjoint", 7, "self-adjoint", "P(1:1:1:2)", {{3}}, {4}, {6, 7}, "none", "ignore-group"},
      {"g7-rational-pair", 7, "rational-pair", "P2xP2", {{1, 1}, {1, 1}}, {2, 2}, {6, 7}, "no-three-projection",
       "none"},
      {"g7-irrational-pair", 7, "irrational-pair", "twist", {{1, 1}, {1, 1}}, {2, 2}, {6, 7}, "none", "none"},
      {"g7-tetragonal", 7, "tetragonal", "X11", {{1, 2}}, {1, 2}, {6, 7}, "no-five-projection", "ordered-classes"},
      {"g7-generic", 7, "generic", "og+", {{1}, {1}, {1}, {1}, {1}, {1}, {1}, {1}}, {1}, {6, 7}, "og-forbidden",
       "hash-join"},
      {"g7-bielliptic", 7, "bielliptic", "", {}, {}, {}, "none", "none"},
  };
  return specs;
}

const StratumSpec& stratum_spec(std::string_view id) {
  for (const auto& s : stratum_specs())
    if (s.id == id) return s;
  throw DomainError("unknown stratum id: " + std::string(id));
}

}  // namespace olt
