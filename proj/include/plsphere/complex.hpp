#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace plsphere {

/// Vertex labels are arbitrary non-negative integers. Internal code may
/// re-index densely, but every public result speaks in original labels.
using Vertex = std::uint32_t;

/// A face is a strictly increasing vertex sequence. The ordering of faces
/// used everywhere in the library is (dimension, lexicographic).
class Face {
 public:
  Face() = default;
  /// Sorts `vertices`; throws DuplicateVertexInFacet on a repeated label.
  explicit Face(std::vector<Vertex> vertices);
  Face(std::initializer_list<Vertex> vertices) : Face(std::vector<Vertex>(vertices)) {}

  /// Wraps an already strictly increasing sequence without checking.
  static Face from_sorted(std::vector<Vertex> vertices);

  int dim() const { return static_cast<int>(v_.size()) - 1; }
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  Vertex operator[](std::size_t i) const { return v_[i]; }
  std::span<const Vertex> vertices() const { return v_; }
  auto begin() const { return v_.begin(); }
  auto end() const { return v_.end(); }

  bool contains(Vertex v) const;
  bool is_subset_of(const Face& other) const;
  /// Vertices of *this not in `other`.
  Face minus(const Face& other) const;
  Face with(Vertex v) const;
  Face without_position(std::size_t i) const;

  std::string to_string() const;

  friend bool operator==(const Face&, const Face&) = default;
  friend bool operator<(const Face& a, const Face& b);

 private:
  std::vector<Vertex> v_;
};

struct FaceHash {
  std::size_t operator()(const Face& f) const noexcept;
};

/// Face counts (f_0, ..., f_d).
struct FVector {
  std::vector<std::uint64_t> f;

  long long euler_characteristic() const;
  int dim() const { return static_cast<int>(f.size()) - 1; }
  std::string to_string() const;
  friend bool operator==(const FVector&, const FVector&) = default;
  /// Lexicographic comparison, the ordering bistellar simplification lowers.
  friend auto operator<=>(const FVector& a, const FVector& b) { return a.f <=> b.f; }
};

/// Immutable facet-list representation of a finite abstract simplicial
/// complex. Facets are stored in canonical order and are pairwise
/// inclusion-maximal.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;

  /// Builds a complex from raw facet lists: sorts each facet, merges
  /// duplicates and drops non-maximal faces.
  static SimplicialComplex from_facets(const std::vector<std::vector<Vertex>>& facet_lists);
  static SimplicialComplex from_faces(std::vector<Face> facets);

  const std::vector<Face>& facets() const { return facets_; }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t n_vertices() const { return vertices_.size(); }
  std::size_t n_facets() const { return facets_.size(); }
  int dim() const { return dim_; }
  bool is_void() const { return facets_.empty(); }

  /// True iff `f` is contained in some facet.
  bool has_face(const Face& f) const;

  std::vector<std::vector<Vertex>> facet_lists() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.facets_ == b.facets_;
  }

 private:
  std::vector<Face> facets_;
  std::vector<Vertex> vertices_;
  int dim_ = -1;
};

bool is_pure(const SimplicialComplex& k);

struct PseudomanifoldCheck {
  bool ok = true;
  std::optional<Face> ridge;      ///< offending ridge when !ok
  std::size_t facet_count = 0;    ///< number of facets containing it
};

/// Every ridge in exactly two facets. Requires a pure complex (NotPure).
PseudomanifoldCheck is_closed_pseudomanifold(const SimplicialComplex& k);

/// Connectivity of the 1-skeleton.
bool is_connected(const SimplicialComplex& k);

/// Link of `f`: facets {g \ f : f ⊆ g}. Throws NotAFace.
SimplicialComplex link(const SimplicialComplex& k, const Face& f);

/// Barycentric subdivision. New vertex labels are the (dimension, lex) rank
/// of the corresponding face of `k`.
SimplicialComplex barycentric_subdivision(const SimplicialComplex& k);

FVector f_vector(const SimplicialComplex& k);
long long euler_characteristic(const SimplicialComplex& k);

/// Relabels vertices onto 0..n-1 preserving their order.
SimplicialComplex normalized_labels(const SimplicialComplex& k);

}  // namespace plsphere
