#include "plsphere/complex.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "plsphere/error.hpp"
#include "plsphere/hasse.hpp"

namespace plsphere {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::DuplicateVertexInFacet: return "DuplicateVertexInFacet";
    case ErrorKind::NotPure: return "NotPure";
    case ErrorKind::NotAFace: return "NotAFace";
    case ErrorKind::NotPseudomanifold: return "NotPseudomanifold";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorKind::CapacityExceeded: return "CapacityExceeded";
    case ErrorKind::InconsistentMatching: return "InconsistentMatching";
    case ErrorKind::StaleOption: return "StaleOption";
    case ErrorKind::ImproperMove: return "ImproperMove";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::PrereqFailed: return "PrereqFailed";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

// ---- Face -------------------------------------------------------------------

Face::Face(std::vector<Vertex> vertices) : v_(std::move(vertices)) {
  std::sort(v_.begin(), v_.end());
  if (std::adjacent_find(v_.begin(), v_.end()) != v_.end())
    throw Error(ErrorKind::DuplicateVertexInFacet, "face " + to_string() + " repeats a vertex");
}

Face Face::from_sorted(std::vector<Vertex> vertices) {
  Face f;
  f.v_ = std::move(vertices);
  return f;
}

bool Face::contains(Vertex v) const { return std::binary_search(v_.begin(), v_.end(), v); }

bool Face::is_subset_of(const Face& other) const {
  return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
}

Face Face::minus(const Face& other) const {
  std::vector<Vertex> out;
  std::set_difference(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(), std::back_inserter(out));
  return from_sorted(std::move(out));
}

Face Face::with(Vertex v) const {
  std::vector<Vertex> out(v_);
  out.insert(std::upper_bound(out.begin(), out.end(), v), v);
  return Face(std::move(out));
}

Face Face::without_position(std::size_t i) const {
  std::vector<Vertex> out(v_);
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(i));
  return from_sorted(std::move(out));
}

std::string Face::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(v_[i]);
  }
  return s;
}

bool operator<(const Face& a, const Face& b) {
  if (a.v_.size() != b.v_.size()) return a.v_.size() < b.v_.size();
  return a.v_ < b.v_;
}

std::size_t FaceHash::operator()(const Face& f) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Vertex v : f) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

// ---- FVector ----------------------------------------------------------------

long long FVector::euler_characteristic() const {
  long long chi = 0;
  for (std::size_t i = 0; i < f.size(); ++i) chi += (i % 2 == 0 ? 1LL : -1LL) * static_cast<long long>(f[i]);
  return chi;
}

std::string FVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(f[i]);
  }
  return s + ")";
}

// ---- SimplicialComplex ------------------------------------------------------

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<Vertex>>& facet_lists) {
  if (facet_lists.empty()) throw Error(ErrorKind::EmptyInput, "no facets given");
  std::vector<Face> faces;
  faces.reserve(facet_lists.size());
  for (std::size_t i = 0; i < facet_lists.size(); ++i) {
    if (facet_lists[i].empty()) throw Error(ErrorKind::EmptyInput, "facet " + std::to_string(i) + " is empty");
    std::vector<Vertex> v = facet_lists[i];
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
      throw Error(ErrorKind::DuplicateVertexInFacet, "facet index " + std::to_string(i));
    faces.push_back(Face::from_sorted(std::move(v)));
  }
  return from_faces(std::move(faces));
}

SimplicialComplex SimplicialComplex::from_faces(std::vector<Face> faces) {
  std::sort(faces.begin(), faces.end());
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
  if (!faces.empty() && faces.front().empty()) throw Error(ErrorKind::EmptyInput, "empty facet");

  // Drop non-maximal faces: a face survives unless some strictly larger face
  // contains it. Candidates are found through the vertex-to-face index of the
  // face's first vertex.
  std::unordered_map<Vertex, std::vector<std::size_t>> by_vertex;
  for (std::size_t i = 0; i < faces.size(); ++i)
    for (Vertex v : faces[i]) by_vertex[v].push_back(i);

  SimplicialComplex k;
  for (std::size_t i = 0; i < faces.size(); ++i) {
    const Face& f = faces[i];
    bool maximal = true;
    for (std::size_t j : by_vertex[f[0]]) {
      if (faces[j].size() > f.size() && f.is_subset_of(faces[j])) {
        maximal = false;
        break;
      }
    }
    if (maximal) k.facets_.push_back(f);
  }
  for (const Face& f : k.facets_) {
    k.vertices_.insert(k.vertices_.end(), f.begin(), f.end());
    k.dim_ = std::max(k.dim_, f.dim());
  }
  std::sort(k.vertices_.begin(), k.vertices_.end());
  k.vertices_.erase(std::unique(k.vertices_.begin(), k.vertices_.end()), k.vertices_.end());
  return k;
}

bool SimplicialComplex::has_face(const Face& f) const {
  if (f.empty()) return !facets_.empty();
  return std::any_of(facets_.begin(), facets_.end(), [&](const Face& g) { return f.is_subset_of(g); });
}

std::vector<std::vector<Vertex>> SimplicialComplex::facet_lists() const {
  std::vector<std::vector<Vertex>> out;
  out.reserve(facets_.size());
  for (const Face& f : facets_) out.emplace_back(f.begin(), f.end());
  return out;
}

// ---- Elementary checks ------------------------------------------------------

bool is_pure(const SimplicialComplex& k) {
  return std::all_of(k.facets().begin(), k.facets().end(), [&](const Face& f) { return f.dim() == k.dim(); });
}

PseudomanifoldCheck is_closed_pseudomanifold(const SimplicialComplex& k) {
  if (!is_pure(k)) throw Error(ErrorKind::NotPure, "pseudomanifold check needs a pure complex");
  PseudomanifoldCheck res;
  if (k.dim() == 0) {
    // The only ridge is the empty face, contained in every vertex.
    res.ok = k.n_facets() == 2;
    if (!res.ok) {
      res.ridge = Face{};
      res.facet_count = k.n_facets();
    }
    return res;
  }
  std::map<Face, std::size_t> ridges;
  for (const Face& f : k.facets())
    for (std::size_t i = 0; i < f.size(); ++i) ++ridges[f.without_position(i)];
  for (const auto& [ridge, count] : ridges) {
    if (count != 2) {
      res.ok = false;
      res.ridge = ridge;
      res.facet_count = count;
      return res;
    }
  }
  return res;
}

bool is_connected(const SimplicialComplex& k) {
  const auto& verts = k.vertices();
  if (verts.empty()) return false;
  std::vector<std::uint32_t> parent(verts.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto index = [&](Vertex v) {
    return static_cast<std::uint32_t>(std::lower_bound(verts.begin(), verts.end(), v) - verts.begin());
  };
  std::size_t components = verts.size();
  for (const Face& f : k.facets()) {
    const auto root = find(index(f[0]));
    for (std::size_t i = 1; i < f.size(); ++i) {
      const auto r = find(index(f[i]));
      if (r != root) {
        parent[r] = root;
        --components;
      }
    }
  }
  return components == 1;
}

SimplicialComplex link(const SimplicialComplex& k, const Face& f) {
  std::vector<Face> parts;
  bool found = false;
  for (const Face& g : k.facets()) {
    if (!f.is_subset_of(g)) continue;
    found = true;
    Face rest = g.minus(f);
    if (!rest.empty()) parts.push_back(std::move(rest));
  }
  if (!found) throw Error(ErrorKind::NotAFace, "{" + f.to_string() + "} is not a face");
  if (parts.empty()) return {};  // link of a facet is the void complex
  return SimplicialComplex::from_faces(std::move(parts));
}

SimplicialComplex barycentric_subdivision(const SimplicialComplex& k) {
  const HasseDiagram h = HasseDiagram::build(k);
  std::vector<Face> chains;
  std::vector<std::uint32_t> perm;
  std::vector<std::uint32_t> prefix;
  for (const Face& facet : k.facets()) {
    const auto top = *h.locate(facet);
    auto dense = h.dense_vertices(top);
    perm.assign(dense.begin(), dense.end());
    // Every ordering of the facet's vertices is one maximal chain.
    do {
      std::vector<Vertex> chain;
      chain.reserve(perm.size());
      for (std::size_t len = 1; len <= perm.size(); ++len) {
        prefix.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(len));
        std::sort(prefix.begin(), prefix.end());
        chain.push_back(*h.locate_dense(prefix));
      }
      std::sort(chain.begin(), chain.end());
      chains.push_back(Face::from_sorted(std::move(chain)));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return SimplicialComplex::from_faces(std::move(chains));
}

FVector f_vector(const SimplicialComplex& k) {
  if (k.is_void()) return {};
  return FVector{HasseDiagram::build(k).f_vector()};
}

long long euler_characteristic(const SimplicialComplex& k) { return f_vector(k).euler_characteristic(); }

SimplicialComplex normalized_labels(const SimplicialComplex& k) {
  const auto& verts = k.vertices();
  std::vector<Face> out;
  out.reserve(k.n_facets());
  for (const Face& f : k.facets()) {
    std::vector<Vertex> v;
    v.reserve(f.size());
    for (Vertex x : f)
      v.push_back(static_cast<Vertex>(std::lower_bound(verts.begin(), verts.end(), x) - verts.begin()));
    out.push_back(Face::from_sorted(std::move(v)));
  }
  return SimplicialComplex::from_faces(std::move(out));
}

}  // namespace plsphere
