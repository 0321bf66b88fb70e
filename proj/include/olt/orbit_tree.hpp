#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "olt/perm_group.hpp"
#include "olt/retract.hpp"

namespace olt {

enum class NodeColor : std::uint8_t { Uncolored, Green, Red, Forbidden };

char color_code(NodeColor c);

/// Decides whether an ordered tuple is eligible, given that its proper
/// prefixes are. Must depend only on the G-orbit of the underlying set and
/// must be safe to call from several threads at once.
using EligibilityOracle = std::function<bool(std::span<const Point>)>;

struct TreeOptions {
  std::uint64_t seed = 1;
  unsigned workers = 1;
  /// Check every edge label and transporter while building.
  bool validate = false;
  std::function<void(const std::string&)> log;
};

struct FindResult {
  bool eligible = false;
  std::uint32_t node = kNone;  // green node (any node for the modified variant)
  Permutation g;               // g(label(node)) equals the input set
  /// When ineligible: a forbidden node and an element carrying its label into the input.
  std::uint32_t forbidden_node = kNone;
};

struct GreenInfo {
  std::uint32_t node = kNone;
  std::vector<Point> label;
  GroupOrder stabilizer_order = 0;
};

struct VerifyReport {
  std::size_t depth = 0;
  std::size_t trials = 0;
  std::size_t resolved = 0;
  std::size_t ineligible = 0;
  std::optional<std::uint64_t> index_sum;  // only when nothing is forbidden
  std::optional<std::uint64_t> expected;
  bool ok = true;
  std::string failure;
};

class OrbitTree {
 public:
  OrbitTree(PermGroup group, std::size_t domain_size, EligibilityOracle oracle = {},
            TreeOptions options = {});
  ~OrbitTree();
  OrbitTree(OrbitTree&&) noexcept;
  OrbitTree& operator=(OrbitTree&&) noexcept;

  const PermGroup& group() const { return group_; }
  std::size_t domain_size() const { return domain_size_; }
  std::size_t depth() const { return depth_begin_.size() - 2; }
  bool has_oracle() const { return static_cast<bool>(oracle_); }

  /// One application of the extension algorithm: depth n to n + 1.
  void extend();
  void extend_to(std::size_t depth);

  std::size_t node_count() const { return nodes_.size(); }
  std::uint32_t depth_begin(std::size_t k) const { return depth_begin_[k]; }
  std::uint32_t depth_end(std::size_t k) const { return depth_begin_[k + 1]; }

  std::uint32_t parent(std::uint32_t node) const { return nodes_[node].parent; }
  std::size_t node_depth(std::uint32_t node) const { return nodes_[node].depth; }
  NodeColor color(std::uint32_t node) const { return nodes_[node].color; }
  /// Ordered label [x_1, ..., x_k].
  std::vector<Point> label(std::uint32_t node) const;
  std::vector<Point> sorted_label(std::uint32_t node) const;
  /// For an eligible node U: the green node g_U^{-1}(U).
  std::uint32_t green_of(std::uint32_t node) const { return nodes_[node].green; }
  /// g_U for an eligible node.
  Permutation transporter(std::uint32_t node) const;
  /// G_U for a green node.
  const PermGroup& stabilizer(std::uint32_t node) const;

  /// Find in tree; requires k <= depth and distinct entries.
  FindResult find(std::span<const Point> sequence) const;
  /// Variant that stops before the final transporter; the node need not be green.
  FindResult find_modified(std::span<const Point> sequence) const;
  /// Green node equivalent to the set, without building the transporter.
  std::optional<std::uint32_t> find_green(std::span<const Point> sequence) const;

  std::vector<GreenInfo> green_nodes(std::size_t k) const;
  std::size_t green_count(std::size_t k) const;

  VerifyReport verify(std::size_t k, std::size_t trials, std::uint64_t seed) const;

  /// Line-oriented text form; transporters may be omitted for large domains.
  void write(std::ostream& os, bool with_transporters = true) const;

 private:
  struct Node {
    std::uint32_t parent = kNone;
    Point last = 0;
    std::uint8_t depth = 0;
    NodeColor color = NodeColor::Uncolored;
    std::uint32_t green = kNone;
  };
  struct GreenData;
  struct Walk;

  void check_sequence(std::span<const Point> sequence) const;
  std::uint32_t start_node(std::span<const Point> sequence, std::size_t& consumed) const;
  std::uint32_t walk(std::span<const Point> sequence, bool full, Walk* w) const;
  void build_children(std::uint32_t green, std::uint64_t salt);
  void log(const std::string& message) const;
  std::uint64_t set_hash(std::span<const Point> sorted) const;
  template <class F>
  void parallel_for(std::size_t count, F&& body) const;

  PermGroup group_;
  std::size_t domain_size_;
  EligibilityOracle oracle_;
  TreeOptions options_;
  std::vector<Node> nodes_;
  std::vector<std::uint32_t> depth_begin_;
  std::vector<Permutation> transporter_inv_;  // per node; empty for greens and forbidden nodes
  std::vector<std::unique_ptr<GreenData>> green_data_;  // per node; null unless green
  std::unordered_multimap<std::uint64_t, std::uint32_t> green_index_;
};

/// Index sum over green nodes at depth k: sum of [G : G_U].
std::uint64_t stabilizer_index_sum(const OrbitTree& tree, std::size_t k);

}  // namespace olt
