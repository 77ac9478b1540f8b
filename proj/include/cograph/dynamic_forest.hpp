#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace cograph {

// Rooted dynamic forest backed by link-cut trees (splay-based path
// decomposition, amortized O(log n) per operation). Queries splay, so even
// the read-style operations mutate internal state.
class DynamicForest {
 public:
  using Handle = std::uint32_t;
  static constexpr Handle kNone = std::numeric_limits<Handle>::max();

  DynamicForest() = default;
  explicit DynamicForest(std::size_t n) { ensure(n); }

  Handle add_node();
  // Makes handles 0..n-1 valid; new ones are isolated roots.
  void ensure(std::size_t n);
  std::size_t size() const noexcept { return nodes_.size(); }

  // Makes `parent` the parent of `child`. child must be the root of a tree
  // not containing parent.
  void link(Handle parent, Handle child);
  // Removes the edge between node and its parent.
  void cut(Handle node);

  Handle find_root(Handle u);
  Handle parent_of(Handle u);  // kNone for roots
  void evert(Handle u);        // u becomes the root of its tree
  bool connected(Handle u, Handle v) { return find_root(u) == find_root(v); }

  // Lowest common ancestor under the current roots; LookupError if u and v
  // are in different trees.
  Handle lca(Handle u, Handle v);
  // The child of u on the path to its strict descendant v. Leaves every root
  // where it was.
  Handle next_step_to_descendant(Handle u, Handle v);

 private:
  static constexpr Handle kNil = kNone;

  struct Node {
    Handle child[2] = {kNil, kNil};
    Handle parent = kNil;  // splay parent or path-parent
    bool reversed = false;
  };

  bool is_splay_root(Handle x) const;
  void push(Handle x);
  void rotate(Handle x);
  void splay(Handle x);
  Handle access(Handle x);
  void check(Handle x) const;

  std::vector<Node> nodes_;
  std::vector<Handle> scratch_;
};

}  // namespace cograph
