#include "lfwave/tree.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace lfwave {

ValidTree::ValidTree(FieldParams params, std::uint32_t n_arity,
                     std::vector<TreeNode> nodes)
    : params_(params), N_(n_arity), nodes_(std::move(nodes)) {
  validate_params(params_);
  if (N_ < 1) throw std::invalid_argument("window length N must be >= 1");
  check_structure();
  index();
}

void ValidTree::check_structure() const {
  if (nodes_.empty()) throw std::invalid_argument("tree has no nodes");
  const int n = static_cast<int>(nodes_.size());
  int root_count = 0;
  for (int i = 0; i < n; ++i) {
    const TreeNode& v = nodes_[i];
    if (v.id != i)
      throw std::invalid_argument("node ids must be 0..n-1 in order");
    if (v.label.params() != params_)
      throw std::invalid_argument("node label with mismatched parameters");
    if (v.parent == -1) {
      ++root_count;
    } else if (v.parent < 0 || v.parent >= n) {
      throw std::invalid_argument("node parent out of range");
    }
    for (int c : v.children) {
      if (c < 0 || c >= n || nodes_[c].parent != v.id)
        throw std::invalid_argument("child/parent links inconsistent");
    }
  }
  if (root_count != 1)
    throw std::invalid_argument("tree must have exactly one root");
  // Reachability doubles as the acyclicity check.
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  for (int i = 0; i < n; ++i)
    if (nodes_[i].parent == -1) q.push(i);
  int visited = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (seen[v]) throw std::invalid_argument("node reached twice");
    seen[v] = 1;
    ++visited;
    for (int c : nodes_[v].children) q.push(c);
  }
  if (visited != n)
    throw std::invalid_argument("tree has unreachable nodes or a cycle");
}

void ValidTree::index() {
  const int n = static_cast<int>(nodes_.size());
  for (int i = 0; i < n; ++i)
    if (nodes_[i].parent == -1) root_ = i;
  depths_.assign(n, -1);
  std::queue<int> q;
  q.push(root_);
  depths_[root_] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int c : nodes_[v].children) {
      depths_[c] = depths_[v] + 1;
      q.push(c);
    }
  }
}

ValidTree ValidTree::basic(FieldParams params, std::uint32_t N) {
  validate_params(params);
  if (N < 1) throw std::invalid_argument("window length N must be >= 1");
  std::vector<TreeNode> nodes;
  GFBlock zero(params);
  // Spine of N zeros.
  for (std::uint32_t d = 0; d < N; ++d)
    nodes.emplace_back(static_cast<int>(d), zero,
                       d == 0 ? -1 : static_cast<int>(d) - 1);
  for (std::uint32_t d = 1; d < N; ++d)
    nodes[d - 1].children.push_back(static_cast<int>(d));
  // Fan: all nonzero labels under the last spine node.
  std::vector<int> level;
  for (const GFBlock& b : all_blocks(params)) {
    if (b.is_zero()) continue;
    int id = static_cast<int>(nodes.size());
    nodes.emplace_back(id, b, static_cast<int>(N) - 1);
    nodes[N - 1].children.push_back(id);
    level.push_back(id);
  }
  // N-1 further complete levels.
  for (std::uint32_t extra = 1; extra < N; ++extra) {
    std::vector<int> next;
    for (int parent : level) {
      for (const GFBlock& b : all_blocks(params)) {
        int id = static_cast<int>(nodes.size());
        nodes.emplace_back(id, b, parent);
        nodes[parent].children.push_back(id);
        next.push_back(id);
      }
    }
    level = std::move(next);
  }
  return ValidTree(params, N, std::move(nodes));
}

const TreeNode& ValidTree::node(int id) const {
  if (id < 0 || id >= static_cast<int>(nodes_.size()))
    throw std::invalid_argument("node id out of range");
  return nodes_[id];
}

int ValidTree::depth(int id) const {
  node(id);
  return depths_[id];
}

std::uint32_t ValidTree::height() const {
  int h = 0;
  for (int d : depths_) h = std::max(h, d);
  return static_cast<std::uint32_t>(h);
}

bool ValidTree::is_leaf(int id) const { return node(id).children.empty(); }

std::vector<GFBlock> ValidTree::window_ending_at(int id, int len) const {
  if (len < 1) throw std::invalid_argument("window length must be >= 1");
  node(id);
  std::vector<GFBlock> w(len, GFBlock(params_));
  int v = id;
  for (int pos = len - 1; pos >= 0 && v != -1; --pos) {
    w[pos] = nodes_[v].label;
    v = nodes_[v].parent;
  }
  return w;
}

std::vector<std::pair<std::vector<GFBlock>, int>> ValidTree::windows(
    int len) const {
  if (len < 1) throw std::invalid_argument("window length must be >= 1");
  std::vector<std::pair<std::vector<GFBlock>, int>> out;
  out.reserve(nodes_.size());
  for (const TreeNode& v : nodes_)
    out.emplace_back(window_ending_at(v.id, len), v.id);
  return out;
}

ValidTree ValidTree::with_basic_step(int moved_node, int target_leaf) const {
  node(moved_node);
  node(target_leaf);
  if (depth(moved_node) < static_cast<int>(N_))
    throw std::invalid_argument("basic step: moved node must be at depth >= N");
  if (!is_leaf(target_leaf))
    throw std::invalid_argument("basic step: target must be a leaf");
  for (int v = target_leaf; v != -1; v = nodes_[v].parent)
    if (v == moved_node)
      throw std::invalid_argument("basic step: target inside moved subtree");
  // The N-1 labels ending at the target must match the labels directly
  // above the moved node, so the N-window through the moved node survives.
  if (N_ >= 2) {
    auto context = window_ending_at(nodes_[moved_node].parent,
                                    static_cast<int>(N_) - 1);
    auto trailing = window_ending_at(target_leaf, static_cast<int>(N_) - 1);
    if (context != trailing)
      throw std::invalid_argument("basic step: window context mismatch");
  }
  std::vector<TreeNode> nodes = nodes_;
  int old_parent = nodes[moved_node].parent;
  auto& siblings = nodes[old_parent].children;
  siblings.erase(std::find(siblings.begin(), siblings.end(), moved_node));
  nodes[moved_node].parent = target_leaf;
  nodes[target_leaf].children.push_back(moved_node);
  return ValidTree(params_, N_, std::move(nodes)).canonicalized();
}

std::vector<std::pair<int, int>> ValidTree::admissible_moves() const {
  std::vector<std::pair<int, int>> moves;
  const int n = static_cast<int>(nodes_.size());
  for (int v = 0; v < n; ++v) {
    if (depths_[v] < static_cast<int>(N_)) continue;
    std::vector<GFBlock> context;
    if (N_ >= 2)
      context = window_ending_at(nodes_[v].parent, static_cast<int>(N_) - 1);
    for (int t = 0; t < n; ++t) {
      if (!is_leaf(t)) continue;
      bool inside = false;
      for (int u = t; u != -1; u = nodes_[u].parent)
        if (u == v) {
          inside = true;
          break;
        }
      if (inside) continue;
      if (N_ >= 2 &&
          window_ending_at(t, static_cast<int>(N_) - 1) != context)
        continue;
      moves.emplace_back(v, t);
    }
  }
  return moves;
}

ValidTree ValidTree::canonicalized() const {
  const int n = static_cast<int>(nodes_.size());
  std::vector<int> order;  // old ids in BFS order, children by label
  order.reserve(n);
  std::queue<int> q;
  q.push(root_);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    order.push_back(v);
    std::vector<int> kids = nodes_[v].children;
    std::sort(kids.begin(), kids.end(), [&](int a, int b) {
      if (nodes_[a].label != nodes_[b].label)
        return nodes_[a].label < nodes_[b].label;
      return a < b;
    });
    for (int c : kids) q.push(c);
  }
  std::vector<int> new_id(n, -1);
  for (int i = 0; i < n; ++i) new_id[order[i]] = i;
  std::vector<TreeNode> nodes;
  nodes.reserve(n);
  for (int i = 0; i < n; ++i) {
    const TreeNode& old = nodes_[order[i]];
    TreeNode v(i, old.label, old.parent == -1 ? -1 : new_id[old.parent]);
    for (int c : old.children) v.children.push_back(new_id[c]);
    std::sort(v.children.begin(), v.children.end());
    nodes.push_back(std::move(v));
  }
  return ValidTree(params_, N_, std::move(nodes));
}

bool operator==(const ValidTree& a, const ValidTree& b) {
  if (a.params_ != b.params_ || a.N_ != b.N_ ||
      a.nodes_.size() != b.nodes_.size())
    return false;
  for (std::size_t i = 0; i < a.nodes_.size(); ++i) {
    const TreeNode& x = a.nodes_[i];
    const TreeNode& y = b.nodes_[i];
    if (x.label != y.label || x.parent != y.parent ||
        x.children != y.children)
      return false;
  }
  return true;
}

TreeValidityReport validate_tree(const ValidTree& tree) {
  TreeValidityReport r;
  const FieldParams params = tree.params();
  const std::uint32_t N = tree.window_length();
  r.node_count = tree.size();
  r.height = tree.height();

  r.root_zero = tree.node(tree.root_id()).label.is_zero();
  if (!r.root_zero) r.problems.push_back("root label is not zero");

  // Levels 0..N-1 must each consist of the single zero node.
  r.zero_spine = true;
  std::map<int, int> level_count;
  for (const TreeNode& v : tree.nodes()) ++level_count[tree.depth(v.id)];
  for (std::uint32_t j = 0; j < N; ++j) {
    if (level_count[static_cast<int>(j)] != 1) {
      r.zero_spine = false;
      r.problems.push_back("level " + std::to_string(j) +
                           " does not consist of a single node");
    }
  }
  for (const TreeNode& v : tree.nodes()) {
    int d = tree.depth(v.id);
    if (d < static_cast<int>(N) && !v.label.is_zero()) {
      r.zero_spine = false;
      r.problems.push_back("node " + std::to_string(v.id) +
                           " at spine level has a nonzero label");
      break;
    }
  }

  // Window bijection over nodes at depth >= N-1.
  std::size_t expected = 1;
  for (std::uint32_t i = 0; i < N; ++i) expected *= params.q();
  std::map<std::vector<GFBlock>, int> counts;
  for (const TreeNode& v : tree.nodes()) {
    if (tree.depth(v.id) < static_cast<int>(N) - 1) continue;
    ++counts[tree.window_ending_at(v.id, static_cast<int>(N))];
  }
  r.windows_unique = true;
  std::size_t distinct = 0;
  for (const auto& [w, c] : counts) {
    ++distinct;
    if (c > 1) {
      r.windows_unique = false;
      r.problems.push_back("duplicate N-window");
    }
  }
  r.windows_complete = (distinct == expected);
  if (!r.windows_complete)
    r.problems.push_back("missing N-windows: " + std::to_string(distinct) +
                         " of " + std::to_string(expected));
  return r;
}

std::vector<std::vector<GFBlock>> window_multiset(const ValidTree& tree) {
  std::vector<std::vector<GFBlock>> out;
  const int N = static_cast<int>(tree.window_length());
  for (const TreeNode& v : tree.nodes()) {
    if (tree.depth(v.id) < N - 1) continue;
    out.push_back(tree.window_ending_at(v.id, N));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace lfwave
