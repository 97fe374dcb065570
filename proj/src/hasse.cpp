#include "plsphere/hasse.hpp"

#include <algorithm>
#include <numeric>

#include "plsphere/error.hpp"

namespace plsphere {

namespace {

// Sorts the rows of a flat row-major array of fixed width lexicographically
// and removes duplicate rows.
void sort_unique_rows(std::vector<std::uint32_t>& flat, std::size_t width) {
  const std::size_t n = flat.size() / width;
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto row = [&](std::uint32_t i) { return flat.begin() + static_cast<std::ptrdiff_t>(i * width); };
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    return std::lexicographical_compare(row(a), row(a) + width, row(b), row(b) + width);
  });
  std::vector<std::uint32_t> out;
  out.reserve(flat.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto r = row(order[i]);
    if (i > 0 && std::equal(r, r + width, row(order[i - 1]))) continue;
    out.insert(out.end(), r, r + width);
  }
  flat.swap(out);
}

}  // namespace

HasseDiagram HasseDiagram::build(const SimplicialComplex& k, const Capacity& cap) {
  if (k.is_void()) throw Error(ErrorKind::EmptyInput, "cannot build the Hasse diagram of a void complex");
  HasseDiagram h;
  h.labels_ = k.vertices();
  const int d = k.dim();
  auto dense = [&](Vertex v) {
    return static_cast<std::uint32_t>(std::lower_bound(h.labels_.begin(), h.labels_.end(), v) - h.labels_.begin());
  };

  // Top-down: level k = k-dimensional facets plus all codimension-one
  // subfaces of level k+1.
  h.level_verts_.assign(d + 1, {});
  std::uint64_t total = 0;
  for (int lev = d; lev >= 0; --lev) {
    const std::size_t width = static_cast<std::size_t>(lev) + 1;
    auto& flat = h.level_verts_[lev];
    for (const Face& f : k.facets()) {
      if (f.dim() != lev) continue;
      for (Vertex v : f) flat.push_back(dense(v));
    }
    if (lev < d) {
      const auto& above = h.level_verts_[lev + 1];
      const std::size_t aw = width + 1;
      for (std::size_t r = 0; r < above.size(); r += aw) {
        for (std::size_t skip = 0; skip < aw; ++skip) {
          for (std::size_t j = 0; j < aw; ++j)
            if (j != skip) flat.push_back(above[r + j]);
        }
      }
    }
    sort_unique_rows(flat, width);
    total += flat.size() / width;
    if (total > cap.max_faces)
      throw Error(ErrorKind::CapacityExceeded,
                  "Hasse diagram needs more than " + std::to_string(cap.max_faces) + " faces");
  }

  h.level_begin_.assign(d + 2, 0);
  for (int lev = 0; lev <= d; ++lev)
    h.level_begin_[lev + 1] = h.level_begin_[lev] + static_cast<NodeId>(h.level_verts_[lev].size() / (lev + 1));
  const std::size_t n_nodes = h.size();

  // Face tree: children of a k-face are the (k+1)-faces sharing it as prefix.
  // Both levels are lex-sorted, so a merge pass assigns contiguous ranges.
  h.child_begin_.assign(n_nodes + 1, static_cast<NodeId>(n_nodes));
  for (int lev = 0; lev < d; ++lev) {
    const auto& lo = h.level_verts_[lev];
    const auto& hi = h.level_verts_[lev + 1];
    const std::size_t w = lev + 1;
    const std::size_t n_lo = lo.size() / w;
    const std::size_t n_hi = hi.size() / (w + 1);
    std::size_t j = 0;
    for (std::size_t i = 0; i < n_lo; ++i) {
      auto prefix = lo.begin() + static_cast<std::ptrdiff_t>(i * w);
      while (j < n_hi && std::lexicographical_compare(hi.begin() + static_cast<std::ptrdiff_t>(j * (w + 1)),
                                                      hi.begin() + static_cast<std::ptrdiff_t>(j * (w + 1) + w), prefix,
                                                      prefix + static_cast<std::ptrdiff_t>(w)))
        ++j;
      h.child_begin_[h.level_begin_[lev] + i] = h.level_begin_[lev + 1] + static_cast<NodeId>(j);
    }
  }

  // Down arcs through the face tree, then up arcs by transposition.
  h.level_down_.assign(d + 1, {});
  std::vector<std::uint32_t> scratch;
  std::vector<std::uint64_t> up_count(n_nodes, 0);
  for (int lev = 1; lev <= d; ++lev) {
    const std::size_t w = lev + 1;
    const auto& flat = h.level_verts_[lev];
    auto& down = h.level_down_[lev];
    down.resize(flat.size());
    for (std::size_t r = 0; r < flat.size(); r += w) {
      for (std::size_t skip = 0; skip < w; ++skip) {
        scratch.clear();
        for (std::size_t j = 0; j < w; ++j)
          if (j != skip) scratch.push_back(flat[r + j]);
        auto sub = h.locate_dense(scratch);
        down[r + skip] = *sub;
        ++up_count[*sub];
      }
    }
  }
  h.up_offsets_.assign(n_nodes + 1, 0);
  for (std::size_t n = 0; n < n_nodes; ++n) h.up_offsets_[n + 1] = h.up_offsets_[n] + up_count[n];
  h.up_targets_.resize(h.up_offsets_.back());
  std::vector<std::uint64_t> fill(h.up_offsets_.begin(), h.up_offsets_.end() - 1);
  for (int lev = 1; lev <= d; ++lev) {
    const auto& down = h.level_down_[lev];
    const std::size_t w = lev + 1;
    for (std::size_t r = 0; r < down.size(); ++r) {
      const NodeId parent = h.level_begin_[lev] + static_cast<NodeId>(r / w);
      h.up_targets_[fill[down[r]]++] = parent;
    }
  }
  h.alive_.assign(n_nodes, 1);
  return h;
}

int HasseDiagram::node_dim(NodeId n) const {
  auto it = std::upper_bound(level_begin_.begin(), level_begin_.end(), n);
  return static_cast<int>(it - level_begin_.begin()) - 1;
}

std::span<const std::uint32_t> HasseDiagram::dense_vertices(NodeId n) const {
  const int k = node_dim(n);
  const std::size_t w = k + 1;
  return {level_verts_[k].data() + (n - level_begin_[k]) * w, w};
}

Face HasseDiagram::face(NodeId n) const {
  auto dv = dense_vertices(n);
  std::vector<Vertex> out;
  out.reserve(dv.size());
  for (auto v : dv) out.push_back(labels_[v]);
  return Face::from_sorted(std::move(out));
}

std::span<const NodeId> HasseDiagram::down(NodeId n) const {
  const int k = node_dim(n);
  if (k == 0) return {};
  const std::size_t w = k + 1;
  return {level_down_[k].data() + (n - level_begin_[k]) * w, w};
}

std::span<const NodeId> HasseDiagram::up(NodeId n) const {
  return {up_targets_.data() + up_offsets_[n], up_offsets_[n + 1] - up_offsets_[n]};
}

std::optional<NodeId> HasseDiagram::locate_dense(std::span<const std::uint32_t> dense) const {
  if (dense.empty() || static_cast<int>(dense.size()) - 1 > dim()) return std::nullopt;
  if (dense[0] >= labels_.size()) return std::nullopt;
  NodeId cur = dense[0];  // level 0 holds vertex i at node i
  for (std::size_t pos = 1; pos < dense.size(); ++pos) {
    const int lev = static_cast<int>(pos);
    const NodeId lo = child_begin_[cur];
    const NodeId hi = (cur + 1 == level_end(lev - 1)) ? level_end(lev) : child_begin_[cur + 1];
    const auto& flat = level_verts_[lev];
    const std::size_t w = pos + 1;
    // Children share the prefix, so they are sorted by their last vertex.
    NodeId a = lo, b = hi;
    while (a < b) {
      const NodeId mid = a + (b - a) / 2;
      const std::uint32_t last = flat[(mid - level_begin_[lev]) * w + pos];
      if (last < dense[pos])
        a = mid + 1;
      else
        b = mid;
    }
    if (a == hi || flat[(a - level_begin_[lev]) * w + pos] != dense[pos]) return std::nullopt;
    cur = a;
  }
  return cur;
}

std::optional<NodeId> HasseDiagram::locate(std::span<const Vertex> sorted_labels) const {
  constexpr std::size_t kInline = 64;
  if (sorted_labels.empty() || sorted_labels.size() > kInline) return std::nullopt;
  std::uint32_t dense[kInline];
  for (std::size_t i = 0; i < sorted_labels.size(); ++i) {
    if (i > 0 && sorted_labels[i] <= sorted_labels[i - 1]) return std::nullopt;
    auto it = std::lower_bound(labels_.begin(), labels_.end(), sorted_labels[i]);
    if (it == labels_.end() || *it != sorted_labels[i]) return std::nullopt;
    dense[i] = static_cast<std::uint32_t>(it - labels_.begin());
  }
  return locate_dense({dense, sorted_labels.size()});
}

void HasseDiagram::revive_all() { std::fill(alive_.begin(), alive_.end(), 1); }

std::vector<std::uint64_t> HasseDiagram::f_vector() const {
  std::vector<std::uint64_t> f;
  for (int k = 0; k <= dim(); ++k) f.push_back(level_size(k));
  return f;
}

}  // namespace plsphere
