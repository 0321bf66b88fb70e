#include "olt/perm_group.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "olt/errors.hpp"

namespace olt {

namespace {

GroupOrder checked_mul(GroupOrder a, GroupOrder b) {
  GroupOrder r;
  if (__builtin_mul_overflow(a, b, &r)) throw ResourceError("group order exceeds 64 bits");
  return r;
}

Point first_moved_point(const Permutation& h) {
  for (Point x = 0; x < h.degree(); ++x)
    if (h(x) != x) return x;
  throw IntegrityError("identity has no moved point");
}

}  // namespace

void check_degree(std::span<const Permutation> generators, std::size_t degree) {
  for (const auto& g : generators)
    if (g.degree() != degree) throw DomainError("generator degree does not match the domain size");
}

OrbitTransversal orbit_with_transversal(std::span<const Permutation> generators, std::size_t degree,
                                        Point point) {
  if (point >= degree) throw DomainError("orbit point out of range");
  check_degree(generators, degree);
  OrbitTransversal out;
  out.position.assign(degree, -1);
  out.orbit.push_back(point);
  out.transversal.push_back(Permutation::identity(degree));
  out.position[point] = 0;
  for (std::size_t head = 0; head < out.orbit.size(); ++head) {
    const Point beta = out.orbit[head];
    for (const auto& s : generators) {
      const Point image = s(beta);
      if (out.position[image] >= 0) continue;
      out.position[image] = static_cast<std::int32_t>(out.orbit.size());
      out.orbit.push_back(image);
      out.transversal.push_back(s * out.transversal[head]);
    }
  }
  return out;
}

std::vector<Point> orbit_of(std::span<const Permutation> generators, std::size_t degree, Point point) {
  if (point >= degree) throw DomainError("orbit point out of range");
  check_degree(generators, degree);
  std::vector<bool> seen(degree, false);
  std::vector<Point> orbit{point};
  seen[point] = true;
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    for (const auto& s : generators) {
      const Point image = s(orbit[head]);
      if (!seen[image]) {
        seen[image] = true;
        orbit.push_back(image);
      }
    }
  }
  return orbit;
}

std::vector<std::uint32_t> orbit_partition(std::span<const Permutation> generators, std::size_t degree,
                                           std::size_t* orbit_count) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> id(degree, kUnset);
  std::uint32_t next = 0;
  std::vector<Point> queue;
  for (Point start = 0; start < degree; ++start) {
    if (id[start] != kUnset) continue;
    queue.assign(1, start);
    id[start] = next;
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (const auto& s : generators) {
        const Point image = s(queue[head]);
        if (id[image] == kUnset) {
          id[image] = next;
          queue.push_back(image);
        }
      }
    ++next;
  }
  if (orbit_count) *orbit_count = next;
  return id;
}

// ---------------------------------------------------------------------------
// Bsgs

Bsgs::Bsgs(std::size_t degree, std::span<const Permutation> generators,
           const SchreierSimsOptions& options)
    : degree_(degree) {
  check_degree(generators, degree);
  for (Point b : options.base_prefix) {
    if (b >= degree) throw DomainError("base point out of range");
    append_level(b);
  }
  for (const auto& g : generators) {
    if (g.is_identity()) continue;
    if (std::find(strong_.begin(), strong_.end(), g) != strong_.end()) continue;
    auto [h, level] = sift(g);
    if (h.is_identity()) continue;
    add_strong_generator(h, level);
  }
  if (options.known_order && order() == *options.known_order) return;
  if (randomized_fill(generators, options)) return;
  if (options.deterministic) complete();
}

std::vector<Point> Bsgs::base() const {
  std::vector<Point> b;
  b.reserve(levels_.size());
  for (const auto& l : levels_) b.push_back(l.base_point);
  return b;
}

GroupOrder Bsgs::order() const {
  GroupOrder o = 1;
  for (const auto& l : levels_) o = checked_mul(o, l.orbit.size());
  return o;
}

std::pair<Permutation, std::size_t> Bsgs::sift(const Permutation& g, std::size_t from) const {
  Permutation h = g;
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const auto& level = levels_[i];
    const Point beta = h(level.base_point);
    const std::int32_t pos = level.position[beta];
    if (pos < 0) return {std::move(h), i};
    if (pos > 0) h = level.coset_inv[pos] * h;
  }
  return {std::move(h), levels_.size()};
}

bool Bsgs::contains(const Permutation& g) const {
  if (g.degree() != degree_) throw DomainError("membership test with mismatched degree");
  return sift(g).first.is_identity();
}

void Bsgs::append_level(Point base_point) {
  Level level;
  level.base_point = base_point;
  level.position.assign(degree_, -1);
  level.orbit.push_back(base_point);
  level.position[base_point] = 0;
  level.coset_inv.push_back(Permutation::identity(degree_));
  levels_.push_back(std::move(level));
}

void Bsgs::add_strong_generator(const Permutation& h, std::size_t deepest_level) {
  if (deepest_level == levels_.size()) append_level(first_moved_point(h));
  const auto index = static_cast<std::uint32_t>(strong_.size());
  strong_.push_back(h);
  strong_inv_.push_back(h.inverse());
  for (std::size_t l = 0; l <= deepest_level; ++l) {
    levels_[l].generators.push_back(index);
    extend_orbit(l, index);
  }
}

void Bsgs::extend_orbit(std::size_t level_index, std::uint32_t new_generator) {
  auto& level = levels_[level_index];
  const std::size_t old_size = level.orbit.size();
  // u_{s beta}^{-1} = u_beta^{-1} s^{-1}
  auto visit = [&](std::size_t from, std::uint32_t gen) {
    const Point image = strong_[gen](level.orbit[from]);
    if (level.position[image] >= 0) return;
    level.position[image] = static_cast<std::int32_t>(level.orbit.size());
    level.orbit.push_back(image);
    level.coset_inv.push_back(level.coset_inv[from] * strong_inv_[gen]);
  };
  for (std::size_t a = 0; a < old_size; ++a) visit(a, new_generator);
  for (std::size_t a = old_size; a < level.orbit.size(); ++a)
    for (std::uint32_t gen : level.generators) visit(a, gen);
}

void Bsgs::rebuild_orbit(std::size_t level_index) {
  auto& level = levels_[level_index];
  const Point b = level.base_point;
  level.orbit.assign(1, b);
  level.position.assign(degree_, -1);
  level.position[b] = 0;
  level.coset_inv.assign(1, Permutation::identity(degree_));
  for (std::size_t a = 0; a < level.orbit.size(); ++a)
    for (std::uint32_t gen : level.generators) {
      const Point image = strong_[gen](level.orbit[a]);
      if (level.position[image] >= 0) continue;
      level.position[image] = static_cast<std::int32_t>(level.orbit.size());
      level.orbit.push_back(image);
      level.coset_inv.push_back(level.coset_inv[a] * strong_inv_[gen]);
    }
}

bool Bsgs::randomized_fill(std::span<const Permutation> generators, const SchreierSimsOptions& options) {
  if (options.known_order && order() == *options.known_order) return true;
  if (generators.empty() || options.random_sift_successes == 0) return false;
  ProductReplacement source(degree_, generators, options.seed);
  std::size_t successes = 0;
  const std::size_t cap = 200 * options.random_sift_successes + 10000;
  for (std::size_t round = 0; round < cap; ++round) {
    auto [h, level] = sift(source.next());
    if (h.is_identity()) {
      if (++successes >= options.random_sift_successes) break;
      continue;
    }
    successes = 0;
    add_strong_generator(h, level);
    if (options.known_order) {
      const GroupOrder o = order();
      if (o == *options.known_order) return true;
      if (o > *options.known_order)
        throw IntegrityError("generated group is larger than the stated order");
    }
  }
  return options.known_order && order() == *options.known_order;
}

void Bsgs::complete() {
  long i = static_cast<long>(levels_.size()) - 1;
  while (i >= 0) {
    bool restarted = false;
    const auto li = static_cast<std::size_t>(i);
    for (std::size_t a = 0; a < levels_[li].orbit.size() && !restarted; ++a) {
      for (std::size_t t = 0; t < levels_[li].generators.size() && !restarted; ++t) {
        const auto& level = levels_[li];
        const std::uint32_t gen = level.generators[t];
        const Permutation& s = strong_[gen];
        const Point image = s(level.orbit[a]);
        // Schreier generator u_{s beta}^{-1} s u_beta
        Permutation su = Permutation::compose_with_inverse(s, level.coset_inv[a]);
        Permutation g = level.coset_inv[level.position[image]] * su;
        if (g.is_identity()) continue;
        auto [h, j] = sift(g, li + 1);
        if (h.is_identity()) continue;
        add_strong_generator(h, j);
        i = static_cast<long>(j);
        restarted = true;
      }
    }
    if (!restarted) --i;
  }
}

bool Bsgs::extend(const Permutation& g) {
  if (g.degree() != degree_) throw DomainError("generator degree does not match the domain size");
  auto [h, level] = sift(g);
  if (h.is_identity()) return false;
  add_strong_generator(h, level);
  complete();
  return true;
}

// ---------------------------------------------------------------------------
// PermGroup

PermGroup::PermGroup(std::size_t degree, std::vector<Permutation> generators,
                     const SchreierSimsOptions& options)
    : degree_(degree), generators_(std::move(generators)) {
  check_degree(generators_, degree_);
  bsgs_ = std::make_shared<const Bsgs>(degree_, generators_, options);
}

PermGroup PermGroup::from_bsgs(std::vector<Permutation> generators, std::shared_ptr<const Bsgs> bsgs) {
  PermGroup g;
  g.degree_ = bsgs->degree();
  g.generators_ = std::move(generators);
  g.bsgs_ = std::move(bsgs);
  return g;
}

bool PermGroup::contains(const Permutation& g) const { return bsgs_->contains(g); }

PermGroup PermGroup::stabilizer(Point point) const {
  if (point >= degree_) throw DomainError("stabilizer point out of range");
  if (is_trivial()) return trivial(degree_);
  SchreierSimsOptions opts;
  opts.base_prefix = {point};
  opts.known_order = order();
  auto chain = std::make_shared<Bsgs>(degree_, bsgs_->strong(), opts);
  if (chain->order() != order()) throw IntegrityError("base change lost group elements");
  // Strip the first level: the remaining levels form a chain for the stabilizer.
  auto tail = std::make_shared<Bsgs>(degree_);
  std::vector<Permutation> gens;
  if (chain->length() > 1) {
    const auto& second = chain->levels()[1];
    std::vector<Permutation> sgs;
    for (auto idx : second.generators) sgs.push_back(chain->strong()[idx]);
    SchreierSimsOptions tail_opts;
    for (std::size_t l = 1; l < chain->length(); ++l) tail_opts.base_prefix.push_back(chain->levels()[l].base_point);
    tail_opts.known_order = order() / chain->levels()[0].orbit.size();
    tail = std::make_shared<Bsgs>(degree_, sgs, tail_opts);
    if (tail->order() != *tail_opts.known_order) {
      tail->complete();
      if (tail->order() != *tail_opts.known_order) throw IntegrityError("stabilizer chain is incomplete");
    }
    gens = std::move(sgs);
  }
  return from_bsgs(std::move(gens), std::move(tail));
}

OrbitTransversal PermGroup::orbit(Point point) const {
  return orbit_with_transversal(generators_, degree_, point);
}

std::vector<Permutation> PermGroup::reduced_generators() const {
  Bsgs partial(degree_);
  std::vector<Permutation> kept;
  for (const auto& g : generators_) {
    if (partial.contains(g)) continue;
    partial.extend(g);
    kept.push_back(g);
  }
  return kept;
}

std::vector<Permutation> PermGroup::random_generating_set(std::mt19937_64& rng) const {
  std::vector<Permutation> chosen;
  if (is_trivial()) return chosen;
  ProductReplacement source(degree_, bsgs_->strong(), rng());
  for (int attempt = 0; attempt < 16; ++attempt) {
    chosen.push_back(source.next());
    SchreierSimsOptions opts;
    opts.known_order = order();
    opts.deterministic = false;
    opts.seed = rng();
    Bsgs test(degree_, chosen, opts);
    if (test.order() == order()) return chosen;
  }
  return reduced_generators();
}

std::vector<Permutation> PermGroup::elements(std::size_t limit) const {
  if (order() > limit) throw ResourceError("group too large to list its elements");
  std::vector<Permutation> out{Permutation::identity(degree_)};
  // g = u_0 u_1 ... u_{k-1}; build from the deepest level outwards.
  const auto& levels = bsgs_->levels();
  for (std::size_t l = levels.size(); l-- > 0;) {
    std::vector<Permutation> next;
    next.reserve(out.size() * levels[l].orbit.size());
    for (const auto& ui : levels[l].coset_inv) {
      const Permutation u = ui.inverse();
      for (const auto& g : out) next.push_back(u * g);
    }
    out = std::move(next);
  }
  return out;
}

PermGroup schreier_sims(std::size_t degree, std::vector<Permutation> generators,
                        const SchreierSimsOptions& options) {
  return PermGroup(degree, std::move(generators), options);
}

// ---------------------------------------------------------------------------
// ProductReplacement

ProductReplacement::ProductReplacement(std::size_t degree, std::span<const Permutation> generators,
                                       std::uint64_t seed, std::size_t slots, std::size_t burn_in)
    : degree_(degree), rng_(seed), accumulator_(degree) {
  std::vector<Permutation> gens;
  for (const auto& g : generators)
    if (!g.is_identity()) gens.push_back(g);
  if (gens.empty()) return;
  const std::size_t r = std::max({slots, gens.size(), std::size_t{2}});
  slots_.reserve(r);
  for (std::size_t i = 0; i < r; ++i) slots_.push_back(gens[i % gens.size()]);
  for (std::size_t i = 0; i < burn_in; ++i) step();
}

void ProductReplacement::step() {
  std::uniform_int_distribution<std::size_t> pick(0, slots_.size() - 1);
  const std::size_t i = pick(rng_);
  std::size_t j = pick(rng_);
  while (j == i) j = pick(rng_);
  const auto coin = rng_();
  const Permutation other = (coin & 1) ? slots_[j].inverse() : slots_[j];
  slots_[i] = (coin & 2) ? slots_[i] * other : other * slots_[i];
  accumulator_ = accumulator_ * slots_[i];
}

Permutation ProductReplacement::next() {
  if (slots_.empty()) return Permutation::identity(degree_);
  step();
  return accumulator_;
}

Permutation random_element(const PermGroup& group, std::uint64_t seed) {
  ProductReplacement source(group.degree(), group.generators(), seed);
  return source.next();
}

}  // namespace olt
