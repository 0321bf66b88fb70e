#include "olt/orbit_tree.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <ostream>
#include <random>
#include <thread>

#include "olt/errors.hpp"

namespace olt {

char color_code(NodeColor c) {
  switch (c) {
    case NodeColor::Green:
      return 'G';
    case NodeColor::Red:
      return 'R';
    case NodeColor::Forbidden:
      return 'F';
    default:
      return 'U';
  }
}

struct OrbitTree::GreenData {
  PermGroup stabilizer;
  // Filled when the tree grows past this node: Cayley generators of G_U, the
  // Schreier forest describing h_U, and the child node of each point's orbit.
  std::vector<Permutation> cayley;
  std::vector<Permutation> cayley_inv;
  std::vector<std::uint32_t> child;
  std::vector<std::uint16_t> up;
  std::vector<std::uint8_t> step;  // generator index; high bit marks a backward edge
};

struct OrbitTree::Walk {
  bool with_element = false;
  Permutation g;
  std::uint32_t forbidden_node = kNone;
  std::vector<Point> points;
};

namespace {

constexpr std::uint8_t kBackward = 0x80;

std::string join(std::span<const Point> xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s.push_back(' ');
    s += std::to_string(xs[i]);
  }
  return s;
}

struct UnionFind {
  std::vector<std::uint32_t> parent;
  std::size_t classes;
  explicit UnionFind(std::size_t n) : parent(n), classes(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    --classes;
    return true;
  }
};

}  // namespace

OrbitTree::OrbitTree(PermGroup group, std::size_t domain_size, EligibilityOracle oracle, TreeOptions options)
    : group_(std::move(group)), domain_size_(domain_size), oracle_(std::move(oracle)), options_(std::move(options)) {
  if (group_.degree() != domain_size_) throw DomainError("group degree does not match the domain size");
  if (options_.workers == 0) options_.workers = 1;
  nodes_.push_back(Node{kNone, 0, 0, NodeColor::Green, 0});
  depth_begin_ = {0, 1};
  transporter_inv_.emplace_back();
  green_data_.push_back(std::make_unique<GreenData>());
  green_data_[0]->stabilizer = group_;
  green_index_.emplace(set_hash({}), 0);
}

OrbitTree::~OrbitTree() = default;
OrbitTree::OrbitTree(OrbitTree&&) noexcept = default;
OrbitTree& OrbitTree::operator=(OrbitTree&&) noexcept = default;

void OrbitTree::log(const std::string& message) const {
  if (options_.log) options_.log(message);
}

template <class F>
void OrbitTree::parallel_for(std::size_t count, F&& body) const {
  const unsigned workers = std::min<std::size_t>(options_.workers, std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto run = [&] {
    try {
      for (std::size_t i; !failed && (i = next.fetch_add(1)) < count;) body(i);
    } catch (...) {
      if (!failed.exchange(true)) error = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t OrbitTree::set_hash(std::span<const Point> sorted) const {
  std::uint64_t h = 0xcbf29ce484222325ull ^ sorted.size();
  for (Point x : sorted) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::vector<Point> OrbitTree::label(std::uint32_t node) const {
  std::vector<Point> out(nodes_[node].depth);
  for (std::uint32_t v = node; nodes_[v].depth > 0; v = nodes_[v].parent) out[nodes_[v].depth - 1] = nodes_[v].last;
  return out;
}

std::vector<Point> OrbitTree::sorted_label(std::uint32_t node) const {
  auto l = label(node);
  std::sort(l.begin(), l.end());
  return l;
}

Permutation OrbitTree::transporter(std::uint32_t node) const {
  const auto c = nodes_[node].color;
  if (c == NodeColor::Green) return Permutation::identity(domain_size_);
  if (c != NodeColor::Red) throw DomainError("node has no transporter");
  return transporter_inv_[node].inverse();
}

const PermGroup& OrbitTree::stabilizer(std::uint32_t node) const {
  if (nodes_[node].color != NodeColor::Green) throw DomainError("stabilizers are recorded for green nodes only");
  return green_data_[node]->stabilizer;
}

void OrbitTree::check_sequence(std::span<const Point> sequence) const {
  if (sequence.size() > depth()) throw DomainError("sequence longer than the tree depth");
  std::vector<Point> s(sequence.begin(), sequence.end());
  std::sort(s.begin(), s.end());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= domain_size_) throw DomainError("point out of range");
    if (i && s[i] == s[i - 1]) throw DomainError("sequence has repeated points");
  }
}

std::uint32_t OrbitTree::start_node(std::span<const Point> sequence, std::size_t& consumed) const {
  std::vector<Point> prefix;
  for (std::size_t j = sequence.size(); j-- > 1;) {
    prefix.assign(sequence.begin(), sequence.begin() + j);
    std::sort(prefix.begin(), prefix.end());
    auto [lo, hi] = green_index_.equal_range(set_hash(prefix));
    for (auto it = lo; it != hi; ++it) {
      if (nodes_[it->second].depth == j && sorted_label(it->second) == prefix) {
        consumed = j;
        return it->second;
      }
    }
  }
  consumed = 0;
  return 0;
}

std::uint32_t OrbitTree::walk(std::span<const Point> sequence, bool full, Walk* w) const {
  std::size_t consumed = 0;
  std::uint32_t u = start_node(sequence, consumed);
  Walk local;
  Walk& st = w ? *w : local;
  auto& pts = st.points;
  pts.assign(sequence.begin() + consumed, sequence.end());
  if (st.with_element) st.g = Permutation::identity(domain_size_);
  for (std::size_t pos = 0; pos < pts.size();) {
    const GreenData& d = *green_data_[u];
    if (d.child.empty()) throw IntegrityError("lookup passed the last extended depth");
    const Point y = pts[pos];
    const std::uint32_t c = d.child[y];
    if (c == kNone) throw IntegrityError("lookup point already lies in the node");
    // Apply h_U(y)^{-1} to the remaining points; accumulate g := g h_U(y).
    for (Point z = y; !d.up.empty() && d.up[z] != z; z = d.up[z]) {
      const std::uint8_t s = d.step[z];
      const std::uint8_t t = s & ~kBackward;
      const bool back = s & kBackward;
      const Permutation& a = back ? d.cayley_inv[t] : d.cayley[t];
      const Permutation& a_inv = back ? d.cayley[t] : d.cayley_inv[t];
      for (std::size_t q = pos + 1; q < pts.size(); ++q) pts[q] = a_inv(pts[q]);
      if (st.with_element) st.g = st.g * a;
    }
    ++pos;
    if (pos == pts.size() && !full) return c;
    const Node& cn = nodes_[c];
    if (cn.color == NodeColor::Forbidden) {
      st.forbidden_node = c;
      return kNone;
    }
    if (cn.color == NodeColor::Uncolored) throw IntegrityError("lookup reached an uncolored node");
    if (cn.color == NodeColor::Red) {
      const Permutation& ti = transporter_inv_[c];
      for (std::size_t q = pos; q < pts.size(); ++q) pts[q] = ti(pts[q]);
      if (st.with_element) st.g = Permutation::compose_with_inverse(st.g, ti);
    }
    u = cn.green;
  }
  return u;
}

FindResult OrbitTree::find(std::span<const Point> sequence) const {
  check_sequence(sequence);
  Walk w;
  w.with_element = true;
  FindResult r;
  r.node = walk(sequence, true, &w);
  r.eligible = r.node != kNone;
  r.g = std::move(w.g);
  r.forbidden_node = w.forbidden_node;
  return r;
}

FindResult OrbitTree::find_modified(std::span<const Point> sequence) const {
  check_sequence(sequence);
  Walk w;
  w.with_element = true;
  FindResult r;
  r.node = walk(sequence, false, &w);
  r.eligible = r.node != kNone && nodes_[r.node].color != NodeColor::Forbidden;
  r.g = std::move(w.g);
  r.forbidden_node = w.forbidden_node;
  return r;
}

std::optional<std::uint32_t> OrbitTree::find_green(std::span<const Point> sequence) const {
  check_sequence(sequence);
  const std::uint32_t u = walk(sequence, true, nullptr);
  if (u == kNone) return std::nullopt;
  return u;
}

void OrbitTree::build_children(std::uint32_t u, std::uint64_t salt) {
  GreenData& d = *green_data_[u];
  const PermGroup& gu = d.stabilizer;
  std::vector<Permutation> gens;
  if (u == 0) {
    for (const auto& g : group_.generators())
      if (!g.is_identity()) gens.push_back(g);
  } else if (!gu.is_trivial()) {
    if (gu.generators().size() <= 4) {
      gens = gu.generators();
    } else {
      std::mt19937_64 rng(options_.seed ^ (salt * 0x9e3779b97f4a7c15ull));
      gens = gu.random_generating_set(rng);
    }
  }
  if (gens.size() > 127) gens = gu.reduced_generators();
  if (gens.size() > 127) throw ResourceError("too many Cayley generators");
  if (options_.validate && u != 0 && PermGroup(domain_size_, gens).order() != gu.order())
    throw IntegrityError("Cayley generators do not generate the stabilizer");

  const auto lab = label(u);
  std::vector<bool> in_u(domain_size_, false);
  for (Point x : lab) in_u[x] = true;
  const std::size_t m = gens.size();
  std::vector<EdgeEnds> edges;
  edges.reserve((domain_size_ - lab.size()) * m);
  std::vector<std::uint8_t> edge_gen;
  edge_gen.reserve(edges.capacity());
  for (Point y = 0; y < domain_size_; ++y) {
    if (in_u[y]) continue;
    for (std::size_t t = 0; t < m; ++t) {
      edges.push_back({y, gens[t](y)});
      edge_gen.push_back(static_cast<std::uint8_t>(t));
    }
  }
  const RetractForest f = retract_forest(static_cast<std::uint32_t>(domain_size_), edges);

  d.cayley = gens;
  d.cayley_inv.clear();
  for (const auto& g : gens) d.cayley_inv.push_back(g.inverse());
  if (m > 0) {
    d.up.assign(domain_size_, 0);
    d.step.assign(domain_size_, 0);
    for (Point y = 0; y < domain_size_; ++y) {
      const std::uint32_t p = f.tree_parent[y];
      if (p == kNone) {
        d.up[y] = static_cast<std::uint16_t>(y);
        continue;
      }
      d.up[y] = static_cast<std::uint16_t>(p);
      d.step[y] = edge_gen[f.tree_edge[y]] | (f.tree_forward[y] ? 0 : kBackward);
    }
  }
  std::vector<std::uint32_t> comp_node(f.component_count(), kNone);
  for (std::uint32_t rep : f.representative) {
    if (rep == kNone || in_u[rep]) continue;
    comp_node[f.component[rep]] = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back(Node{u, rep, static_cast<std::uint8_t>(lab.size() + 1), NodeColor::Uncolored, kNone});
  }
  d.child.assign(domain_size_, kNone);
  for (Point y = 0; y < domain_size_; ++y)
    if (!in_u[y]) d.child[y] = comp_node[f.component[y]];

  if (options_.validate) {
    // h_U(y)^{-1}(y) must be the chosen representative of y's orbit.
    for (Point y = 0; y < domain_size_; ++y) {
      if (in_u[y]) continue;
      Point z = y, img = y;
      for (; !d.up.empty() && d.up[z] != z; z = d.up[z]) {
        const std::uint8_t t = d.step[z] & ~kBackward;
        img = (d.step[z] & kBackward) ? d.cayley[t](img) : d.cayley_inv[t](img);
      }
      if (img != nodes_[d.child[y]].last) throw IntegrityError("child map does not reach its representative");
    }
  }
}

void OrbitTree::extend() {
  const std::size_t n = depth();
  if (n + 1 > 255) throw ResourceError("tree depth limit reached");
  const std::uint32_t prev_begin = depth_begin_[n];
  const std::uint32_t prev_end = depth_begin_[n + 1];

  // Step 1: children of every green node at depth n.
  const auto begin = static_cast<std::uint32_t>(nodes_.size());
  for (std::uint32_t u = prev_begin; u < prev_end; ++u)
    if (nodes_[u].color == NodeColor::Green) build_children(u, u);
  const auto end = static_cast<std::uint32_t>(nodes_.size());
  const std::uint32_t count = end - begin;
  depth_begin_.push_back(end);
  transporter_inv_.resize(end);
  green_data_.resize(end);
  log("depth " + std::to_string(n + 1) + ": " + std::to_string(count) + " nodes");

  // Step 2: oracle and rewrite edges. Edge n*i + (j-1) comes from node i and index j.
  std::vector<std::uint8_t> oracle_ok(count, 1);
  std::vector<EdgeEnds> ends;
  if (n == 0) {
    for (std::uint32_t i = 0; i < count; ++i) {
      const Point x = nodes_[begin + i].last;
      if (oracle_ && !oracle_(std::span<const Point>(&x, 1))) {
        oracle_ok[i] = 0;
        ends.push_back({kDummy, i});
      }
    }
  } else {
    ends.resize(static_cast<std::size_t>(count) * n);
    parallel_for(count, [&](std::size_t i) {
      const std::uint32_t id = begin + static_cast<std::uint32_t>(i);
      const auto lab = label(id);
      const auto local = static_cast<std::uint32_t>(i);
      if (oracle_ && !oracle_(lab)) {
        oracle_ok[i] = 0;
        for (std::size_t j = 0; j < n; ++j) ends[i * n + j] = {kDummy, local};
        return;
      }
      std::vector<Point> seq;
      Walk w;
      for (std::size_t j = 0; j < n; ++j) {
        seq = lab;
        std::swap(seq[j], seq[n]);
        const std::uint32_t c = walk(seq, false, &w);
        if (c == kNone)
          ends[i * n + j] = {kDummy, local};
        else
          ends[i * n + j] = {c - begin, local};
      }
    });
  }

  // Step 3: retract, preferring the lexicographically smallest sorted label.
  const std::size_t width = n + 1;
  std::vector<Point> sorted(static_cast<std::size_t>(count) * width);
  for (std::uint32_t i = 0; i < count; ++i) {
    auto l = sorted_label(begin + i);
    std::copy(l.begin(), l.end(), sorted.begin() + static_cast<std::ptrdiff_t>(i * width));
  }
  auto prefer = [&](std::uint32_t a, std::uint32_t b) {
    const Point* pa = sorted.data() + a * width;
    const Point* pb = sorted.data() + b * width;
    return std::lexicographical_compare(pa, pa + width, pb, pb + width);
  };
  const RetractForest f = retract_forest(count, ends, prefer);
  for (std::uint32_t i = 0; i < count; ++i) {
    if (!f.eligible(i) && oracle_ok[i])
      throw IntegrityError("eligibility oracle is not G-invariant; witness set " + join(label(begin + i)));
  }
  std::size_t greens = 0;
  for (std::uint32_t i = 0; i < count; ++i) {
    Node& nd = nodes_[begin + i];
    if (!f.eligible(i)) {
      nd.color = NodeColor::Forbidden;
    } else if (f.is_representative(i)) {
      nd.color = NodeColor::Green;
      nd.green = begin + i;
      ++greens;
    } else {
      nd.color = NodeColor::Red;
      nd.green = begin + f.representative[f.component[i]];
    }
  }

  // Transporters: tree edge labels first (independent), then propagate.
  auto edge_label = [&](std::uint32_t e, Walk& w) -> std::uint32_t {
    const std::uint32_t i = ends[e].target;
    const std::size_t j = e % n;
    auto seq = label(begin + i);
    std::swap(seq[j], seq[n]);
    w.with_element = true;
    return walk(seq, false, &w);
  };
  const auto& order = f.bfs_order;
  parallel_for(order.size(), [&](std::size_t p) {
    const std::uint32_t v = order[p];
    if (f.tree_parent[v] == kNone) return;
    Walk w;
    const std::uint32_t src = edge_label(f.tree_edge[v], w);
    if (src != begin + ends[f.tree_edge[v]].source) throw IntegrityError("edge recomputation disagrees");
    transporter_inv_[begin + v] = std::move(w.g);
  });
  for (std::uint32_t v : order) {
    const std::uint32_t p = f.tree_parent[v];
    if (p == kNone) continue;
    Permutation& slot = transporter_inv_[begin + v];
    const bool parent_green = nodes_[begin + p].color == NodeColor::Green;
    const Permutation& parent_inv = transporter_inv_[begin + p];
    if (f.tree_forward[v]) {
      // parent --g--> v: g_v = g g_p
      slot = parent_green ? slot.inverse() : Permutation::compose_with_inverse(parent_inv, slot);
    } else {
      // v --g--> parent: g_v = g^{-1} g_p
      if (!parent_green) slot = parent_inv * slot;
    }
  }
  if (options_.validate) {
    for (std::uint32_t v : order) {
      if (nodes_[begin + v].color != NodeColor::Red) continue;
      const auto img = transporter_inv_[begin + v].apply_sorted(sorted_label(begin + v));
      if (img != sorted_label(nodes_[begin + v].green)) throw IntegrityError("transporter does not reach the green node");
    }
  }

  // Step 4: stabilizers of the new green nodes.
  std::vector<std::uint32_t> comp_size(f.component_count(), 0);
  for (std::uint32_t v : order) ++comp_size[f.component[v]];
  std::vector<std::uint32_t> comp_start(f.component_count() + 1, 0);
  std::vector<std::uint32_t> extra;
  for (std::uint32_t e : f.non_tree_edges) ++comp_start[f.component[ends[e].target] + 1];
  for (std::uint32_t e : f.loops) ++comp_start[f.component[ends[e].target] + 1];
  for (std::size_t c = 0; c < f.component_count(); ++c) comp_start[c + 1] += comp_start[c];
  extra.resize(comp_start.back());
  {
    auto fill = comp_start;
    for (std::uint32_t e : f.non_tree_edges) extra[fill[f.component[ends[e].target]]++] = e;
    for (std::uint32_t e : f.loops) extra[fill[f.component[ends[e].target]]++] = e;
  }
  auto forward_transporter = [&](std::uint32_t node) {
    return nodes_[node].color == NodeColor::Green ? Permutation::identity(domain_size_)
                                                  : transporter_inv_[node].inverse();
  };

  std::vector<std::uint32_t> green_list;
  for (std::uint32_t i = 0; i < count; ++i)
    if (nodes_[begin + i].color == NodeColor::Green) green_list.push_back(i);
  parallel_for(green_list.size(), [&](std::size_t gi) {
    const std::uint32_t i = green_list[gi];
    const std::uint32_t id = begin + i;
    const Node& nd = nodes_[id];
    const PermGroup& parent_group = green_data_[nd.parent]->stabilizer;
    PermGroup stab = parent_group.is_trivial() ? PermGroup::trivial(domain_size_) : parent_group.stabilizer(nd.last);
    const auto lab = label(id);
    auto index_of = [&](Point x) -> std::uint32_t {
      for (std::uint32_t k = 0; k < lab.size(); ++k)
        if (lab[k] == x) return k;
      throw IntegrityError("stabilizer element moves the green node " + join(lab));
    };
    UnionFind classes(lab.size());
    auto absorb = [&](const Permutation& g) {
      bool merged = false;
      for (std::uint32_t k = 0; k < lab.size(); ++k) merged |= classes.unite(k, index_of(g(lab[k])));
      return merged;
    };
    for (const auto& g : stab.generators()) absorb(g);
    const std::uint32_t c = f.component[i];
    std::vector<Permutation> kept;
    for (std::uint32_t q = comp_start[c]; q < comp_start[c + 1] && classes.classes > comp_size[c]; ++q) {
      const std::uint32_t e = extra[q];
      Walk w;
      const std::uint32_t src = edge_label(e, w);
      const std::uint32_t tgt = begin + ends[e].target;
      // g_{U2}^{-1} g g_{U1} fixes the green node setwise
      Permutation elt = w.g * forward_transporter(src);
      if (nodes_[tgt].color != NodeColor::Green) elt = transporter_inv_[tgt] * elt;
      if (absorb(elt)) kept.push_back(std::move(elt));
    }
    if (classes.classes != comp_size[c])
      throw IntegrityError("stabilizer of " + join(lab) + " has the wrong number of orbits on its set");
    GreenData& gd = *(green_data_[id] = std::make_unique<GreenData>());
    if (kept.empty()) {
      gd.stabilizer = std::move(stab);
      return;
    }
    std::size_t orbit = 0;
    const std::uint32_t root = classes.find(static_cast<std::uint32_t>(lab.size() - 1));
    for (std::uint32_t k = 0; k < lab.size(); ++k) orbit += classes.find(k) == root;
    SchreierSimsOptions opts;
    opts.known_order = stab.order() * orbit;
    opts.seed = options_.seed + id;
    std::vector<Permutation> gens = stab.generators();
    gens.insert(gens.end(), kept.begin(), kept.end());
    gd.stabilizer = PermGroup(domain_size_, std::move(gens), opts);
    if (gd.stabilizer.order() != *opts.known_order)
      throw IntegrityError("stabilizer order mismatch at " + join(lab));
  });
  for (std::uint32_t i : green_list) green_index_.emplace(set_hash(sorted_label(begin + i)), begin + i);
  log("depth " + std::to_string(n + 1) + ": " + std::to_string(greens) + " green");
}

void OrbitTree::extend_to(std::size_t target) {
  while (depth() < target) extend();
}

std::vector<GreenInfo> OrbitTree::green_nodes(std::size_t k) const {
  if (k > depth()) throw DomainError("depth beyond the tree");
  std::vector<GreenInfo> out;
  for (std::uint32_t v = depth_begin_[k]; v < depth_begin_[k + 1]; ++v)
    if (nodes_[v].color == NodeColor::Green) out.push_back({v, label(v), green_data_[v]->stabilizer.order()});
  return out;
}

std::size_t OrbitTree::green_count(std::size_t k) const {
  if (k > depth()) throw DomainError("depth beyond the tree");
  std::size_t c = 0;
  for (std::uint32_t v = depth_begin_[k]; v < depth_begin_[k + 1]; ++v) c += nodes_[v].color == NodeColor::Green;
  return c;
}

std::uint64_t stabilizer_index_sum(const OrbitTree& tree, std::size_t k) {
  std::uint64_t s = 0;
  for (const auto& g : tree.green_nodes(k)) s += tree.group().order() / g.stabilizer_order;
  return s;
}

VerifyReport OrbitTree::verify(std::size_t k, std::size_t trials, std::uint64_t seed) const {
  if (k > depth()) throw DomainError("depth beyond the tree");
  VerifyReport rep;
  rep.depth = k;
  std::mt19937_64 rng(seed);
  std::vector<Point> pool(domain_size_);
  std::iota(pool.begin(), pool.end(), 0u);
  auto fail = [&](const std::string& why, std::span<const Point> witness) {
    if (!rep.ok) return;
    rep.ok = false;
    rep.failure = why + ": " + join(witness);
  };
  for (std::size_t t = 0; t < trials && k <= domain_size_; ++t) {
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + rng() % (domain_size_ - i)]);
    std::vector<Point> seq(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    ++rep.trials;
    const FindResult r = find(seq);
    std::vector<Point> target = seq;
    std::sort(target.begin(), target.end());
    if (r.eligible) {
      ++rep.resolved;
      if (nodes_[r.node].color != NodeColor::Green || nodes_[r.node].depth != k)
        fail("find returned a non-green node", seq);
      else if (r.g.apply_sorted(sorted_label(r.node)) != target)
        fail("transporter does not map the green node onto the subset", seq);
      else if (!group_.contains(r.g))
        fail("transporter is not a group element", seq);
    } else {
      ++rep.ineligible;
      const auto forb = label(r.forbidden_node);
      const auto img = r.g.apply_sorted(forb);
      if (!std::includes(target.begin(), target.end(), img.begin(), img.end()))
        fail("forbidden witness is not contained in the subset", seq);
      else if (oracle_ && oracle_(forb))
        fail("forbidden witness is accepted by the oracle", seq);
    }
  }
  if (!oracle_) {
    std::uint64_t expected = 1;
    for (std::uint64_t i = 1; i <= k; ++i) expected = expected * (domain_size_ - k + i) / i;
    rep.expected = expected;
    rep.index_sum = stabilizer_index_sum(*this, k);
    if (*rep.index_sum != expected)
      fail("index sum " + std::to_string(*rep.index_sum) + " differs from " + std::to_string(expected), {});
  }
  return rep;
}

void OrbitTree::write(std::ostream& os, bool with_transporters) const {
  os << "orbit-tree 1 domain " << domain_size_ << " depth " << depth() << " nodes " << nodes_.size() << '\n';
  for (std::uint32_t v = 0; v < nodes_.size(); ++v) {
    const Node& nd = nodes_[v];
    os << "node " << v << " depth " << int(nd.depth) << " parent ";
    if (nd.parent == kNone)
      os << '-';
    else
      os << nd.parent;
    os << " color " << color_code(nd.color) << " label";
    for (Point x : label(v)) os << ' ' << x;
    if (nd.color == NodeColor::Red) {
      os << " green " << nd.green << " transporter";
      if (with_transporters)
        os << ' ' << transporter(v);
      else
        os << " -";
    }
    if (nd.color == NodeColor::Green) {
      const auto& gens = green_data_[v]->stabilizer.generators();
      os << " order " << green_data_[v]->stabilizer.order() << " stabilizer " << gens.size() << '\n';
      for (const auto& g : gens) os << "gen " << g << '\n';
    } else {
      os << '\n';
    }
  }
}

}  // namespace olt
