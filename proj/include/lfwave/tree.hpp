#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lfwave/field.hpp"

namespace lfwave {

struct TreeNode {
  int id = 0;
  GFBlock label;
  int parent = -1;  // -1 for the root
  std::vector<int> children;

  TreeNode(int id_, GFBlock label_, int parent_)
      : id(id_), label(std::move(label_)), parent(parent_) {}
};

struct TreeValidityReport {
  bool root_zero = false;
  bool zero_spine = false;
  bool windows_complete = false;
  bool windows_unique = false;
  std::uint32_t height = 0;
  std::size_t node_count = 0;
  std::vector<std::string> problems;

  bool valid() const {
    return root_zero && zero_spine && windows_complete && windows_unique;
  }
};

/// Rooted directed tree with GF(p)^s labels, candidate for N-validity:
/// zero spine on levels 0..N-1 and every N-node downward path occurring
/// exactly once (checked by validate_tree, not by construction). Trees are
/// immutable; basic_step returns a new tree.
class ValidTree {
 public:
  /// Wraps a node arena. Throws std::invalid_argument when the arena is
  /// structurally malformed (ids not 0..n-1, parent/child mismatch, several
  /// roots, cycles).
  ValidTree(FieldParams params, std::uint32_t n_arity,
            std::vector<TreeNode> nodes);

  /// The minimal-height N-valid tree: a spine of N zeros, the p^s - 1
  /// nonzero labels fanned from the last spine node, then N - 1 further
  /// complete levels. Height 2N - 1.
  static ValidTree basic(FieldParams params, std::uint32_t N);

  const FieldParams& params() const { return params_; }
  std::uint32_t window_length() const { return N_; }
  std::size_t size() const { return nodes_.size(); }
  const TreeNode& node(int id) const;
  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int root_id() const { return root_; }
  int depth(int id) const;
  std::uint32_t height() const;
  bool is_leaf(int id) const;

  /// Labels of the len consecutive nodes ending at id, shallowest first;
  /// positions above the root are padded with zero blocks.
  std::vector<GFBlock> window_ending_at(int id, int len) const;

  /// One (window, ending node id) entry per node, ids ascending. Throws on
  /// len < 1.
  std::vector<std::pair<std::vector<GFBlock>, int>> windows(int len) const;

  /// Subtree relocation: detach the subtree rooted at moved_node (depth >=
  /// N) and re-attach it to target_leaf, which must be a leaf outside the
  /// subtree whose trailing N-1 labels equal those above moved_node. The
  /// result is renumbered canonically (BFS, children sorted by label).
  ValidTree with_basic_step(int moved_node, int target_leaf) const;

  /// All (moved_node, target_leaf) pairs accepted by with_basic_step.
  std::vector<std::pair<int, int>> admissible_moves() const;

  /// BFS renumbering with children sorted by label.
  ValidTree canonicalized() const;

  friend bool operator==(const ValidTree&, const ValidTree&);

 private:
  void check_structure() const;
  void index();

  FieldParams params_;
  std::uint32_t N_ = 1;
  std::vector<TreeNode> nodes_;
  int root_ = 0;
  std::vector<int> depths_;
};

/// Checks Definition-style N-validity: zero root, zero spine on levels
/// 0..N-1, and the N-window bijection (complete and duplicate-free) over
/// nodes at depth >= N-1.
TreeValidityReport validate_tree(const ValidTree& tree);

/// Multiset of N-windows over nodes at depth >= N-1, sorted; equal before
/// and after every basic step.
std::vector<std::vector<GFBlock>> window_multiset(const ValidTree& tree);

}  // namespace lfwave
