#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "olt/permutation.hpp"

namespace testsupport {

using olt::Permutation;
using olt::Point;

// Every element of <gens>, by closure under right multiplication.
inline std::set<Permutation> closure(const std::vector<Permutation>& gens, std::size_t degree) {
  std::set<Permutation> seen{Permutation::identity(degree)};
  std::vector<Permutation> frontier{Permutation::identity(degree)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        Permutation h = s * g;
        if (seen.insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  return seen;
}

// 3x3 matrix over F2 as three row bitmasks acting on column vectors 1..7.
inline Permutation fano_matrix(std::uint32_t r0, std::uint32_t r1, std::uint32_t r2) {
  std::vector<Point> img(7);
  for (std::uint32_t v = 1; v < 8; ++v) {
    auto bit = [&](std::uint32_t row) { return static_cast<std::uint32_t>(__builtin_popcount(row & v) & 1); };
    const std::uint32_t w = bit(r0) | (bit(r1) << 1) | (bit(r2) << 2);
    img[v - 1] = w - 1;
  }
  return Permutation::from_images(img);
}

// Two generators of GL(3,2) = PGL(3,2) on the Fano plane.
inline std::vector<Permutation> fano_generators() {
  // x -> (x0 + x1, x1, x2) and the coordinate cycle x0 -> x1 -> x2.
  return {fano_matrix(0b011, 0b010, 0b100), fano_matrix(0b100, 0b001, 0b010)};
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All k-subsets of {0..n-1} as sorted vectors.
inline std::vector<std::vector<Point>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<Point>> out;
  std::vector<Point> cur;
  auto rec = [&](auto&& self, Point start) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (Point x = start; x < n; ++x) {
      cur.push_back(x);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// Orbit sizes of the action of an explicit element list on k-subsets.
inline std::multiset<std::size_t> subset_orbit_sizes(const std::set<Permutation>& elements, std::size_t n,
                                                     std::size_t k,
                                                     bool (*eligible)(const std::vector<Point>&) = nullptr) {
  std::set<std::vector<Point>> done;
  std::multiset<std::size_t> sizes;
  for (const auto& s : subsets(n, k)) {
    if (eligible && !eligible(s)) continue;
    if (done.count(s)) continue;
    std::set<std::vector<Point>> orbit;
    for (const auto& g : elements) orbit.insert(g.apply_sorted(s));
    done.insert(orbit.begin(), orbit.end());
    sizes.insert(orbit.size());
  }
  return sizes;
}

}  // namespace testsupport
