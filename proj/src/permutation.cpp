#include "olt/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "olt/errors.hpp"

namespace olt {

Permutation::Permutation(std::size_t n) : images_(n) {
  if (n > kMaxDegree) throw DomainError("permutation degree exceeds 65535");
  std::iota(images_.begin(), images_.end(), Image{0});
}

Permutation Permutation::from_images(std::span<const Point> images) {
  const std::size_t n = images.size();
  if (n > kMaxDegree) throw DomainError("permutation degree exceeds 65535");
  std::vector<bool> seen(n, false);
  Permutation p;
  p.images_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point y = images[i];
    if (y >= n || seen[y]) throw DomainError("image list is not a bijection");
    seen[y] = true;
    p.images_[i] = static_cast<Image>(y);
  }
  return p;
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<std::vector<Point>>& cycles) {
  Permutation p(n);
  std::vector<bool> used(n, false);
  for (const auto& cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      const Point x = cycle[i];
      if (x >= n || used[x]) throw DomainError("cycle notation is not a permutation");
      used[x] = true;
      p.images_[x] = static_cast<Image>(cycle[(i + 1) % cycle.size()]);
    }
  }
  return p;
}

Point Permutation::preimage(Point y) const {
  const auto it = std::find(images_.begin(), images_.end(), static_cast<Image>(y));
  return static_cast<Point>(it - images_.begin());
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv.images_[images_[i]] = static_cast<Image>(i);
  return inv;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw DomainError("composing permutations of different degree");
  Permutation c;
  c.images_.resize(a.images_.size());
  const auto* ai = a.images_.data();
  const auto* bi = b.images_.data();
  auto* ci = c.images_.data();
  for (std::size_t i = 0, n = a.images_.size(); i < n; ++i) ci[i] = ai[bi[i]];
  return c;
}

Permutation Permutation::compose_with_inverse(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw DomainError("composing permutations of different degree");
  Permutation c;
  c.images_.resize(a.images_.size());
  // (a b^{-1})(b(y)) = a(y)
  for (std::size_t y = 0, n = a.images_.size(); y < n; ++y) c.images_[b.images_[y]] = a.images_[y];
  return c;
}

std::string Permutation::to_string() const {
  std::string out;
  out.reserve(images_.size() * 5);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(images_[i]);
  }
  return out;
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<Point> images;
  std::istringstream in{std::string(text)};
  long long v;
  while (in >> v) {
    if (v < 0) throw DomainError("negative image in permutation text");
    images.push_back(static_cast<Point>(v));
  }
  if (!in.eof()) throw DomainError("malformed permutation text");
  return from_images(images);
}

std::vector<Point> Permutation::apply_sorted(std::span<const Point> points) const {
  std::vector<Point> out;
  out.reserve(points.size());
  for (Point x : points) out.push_back(images_[x]);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Permutation::hash() const {
  // FNV-1a over the image array.
  std::uint64_t h = 1469598103934665603ull;
  for (Image v : images_) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) { return os << p.to_string(); }

}  // namespace olt
