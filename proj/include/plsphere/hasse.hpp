#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "plsphere/complex.hpp"

namespace plsphere {

struct Capacity {
  /// Upper bound on the number of faces materialized in one Hasse diagram.
  std::uint64_t max_faces = std::uint64_t{1} << 31;
};

using NodeId = std::uint32_t;

/// Hasse diagram of the face poset of a simplicial complex, without the
/// empty face. Level k holds the k-faces in lexicographic order, so node ids
/// follow the canonical (dimension, lex) face order.
///
/// Each node additionally carries its face-tree parent link: the parent of
/// (v_0 < ... < v_k) is (v_0 < ... < v_{k-1}), and the children of a node form
/// a contiguous id range sorted by last vertex. `locate` walks that tree, so a
/// lookup costs O(d log n) and does not allocate.
///
/// Nodes carry an `alive` tombstone so that collapsing algorithms can remove
/// faces destructively in O(1) without reshaping the arrays.
class HasseDiagram {
 public:
  static HasseDiagram build(const SimplicialComplex& k, const Capacity& cap = {});

  int dim() const { return static_cast<int>(level_begin_.size()) - 2; }
  std::size_t size() const { return level_begin_.empty() ? 0 : level_begin_.back(); }
  NodeId level_begin(int k) const { return level_begin_[k]; }
  NodeId level_end(int k) const { return level_begin_[k + 1]; }
  std::size_t level_size(int k) const { return level_end(k) - level_begin(k); }
  int node_dim(NodeId n) const;

  /// Vertices of node `n` as dense indices into `labels()`.
  std::span<const std::uint32_t> dense_vertices(NodeId n) const;
  Face face(NodeId n) const;
  const std::vector<Vertex>& labels() const { return labels_; }

  /// Boundary arcs of `n`, the i-th one pointing at the face without the
  /// i-th vertex. Empty for vertices.
  std::span<const NodeId> down(NodeId n) const;
  std::span<const NodeId> up(NodeId n) const;
  std::size_t arc_count() const { return up_targets_.size(); }

  std::optional<NodeId> locate(std::span<const Vertex> sorted_labels) const;
  std::optional<NodeId> locate(const Face& f) const { return locate(f.vertices()); }
  /// Same as locate but over dense vertex indices.
  std::optional<NodeId> locate_dense(std::span<const std::uint32_t> dense) const;

  bool alive(NodeId n) const { return alive_[n] != 0; }
  void kill(NodeId n) { alive_[n] = 0; }
  void revive_all();

  std::vector<std::uint64_t> f_vector() const;

 private:
  std::vector<Vertex> labels_;
  std::vector<NodeId> level_begin_;                    // size dim+2
  std::vector<std::vector<std::uint32_t>> level_verts_;  // width k+1 per level
  std::vector<std::vector<NodeId>> level_down_;          // width k+1 per level
  std::vector<std::uint64_t> up_offsets_;
  std::vector<NodeId> up_targets_;
  std::vector<NodeId> child_begin_;  // face tree: children of n are [child_begin_[n], child_begin_[n+1])
  std::vector<std::uint8_t> alive_;
};

}  // namespace plsphere
