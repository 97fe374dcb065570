#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond the value types, and are only fit for small inputs.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "plsphere/complex.hpp"
#include "plsphere/hasse.hpp"
#include "plsphere/morse.hpp"

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Dense = std::vector<std::vector<long long>>;
using plsphere::Vertex;

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd_int(Int a, Int b) {
  a = abs_int(a);
  b = abs_int(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Determinant by cofactor expansion along the first row.
inline Int determinant(const std::vector<std::vector<Int>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  Int det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<Int>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Int> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    const Int term = m[0][c] * determinant(minor);
    det += (c % 2 == 0) ? term : Int(-term);
  }
  return det;
}

inline void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  for (;;) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Elementary divisors d_k / d_{k-1}, where d_k is the gcd of all k x k minors.
inline std::vector<Int> snf_by_minors(const Dense& a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  std::vector<Int> out;
  Int previous = 1;
  for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
    Int g = 0;
    for_each_subset(rows, k, [&](const std::vector<std::size_t>& rs) {
      for_each_subset(cols, k, [&](const std::vector<std::size_t>& cs) {
        std::vector<std::vector<Int>> m;
        for (auto r : rs) {
          std::vector<Int> row;
          for (auto c : cs) row.push_back(a[r][c]);
          m.push_back(std::move(row));
        }
        g = gcd_int(g, determinant(m));
      });
    });
    if (g == 0) break;
    out.push_back(g / previous);
    previous = g;
  }
  return out;
}

/// Rank over GF(p) (p prime) or over Q (p == 0), by dense Gaussian elimination.
inline std::size_t dense_rank(const Dense& a, unsigned p) {
  if (a.empty()) return 0;
  const std::size_t cols = a[0].size();
  if (p == 0) {
    using Q = boost::multiprecision::cpp_rational;
    std::vector<std::vector<Q>> m;
    for (const auto& r : a) m.emplace_back(r.begin(), r.end());
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
      std::size_t piv = rank;
      while (piv < m.size() && m[piv][c] == 0) ++piv;
      if (piv == m.size()) continue;
      std::swap(m[piv], m[rank]);
      for (std::size_t r = 0; r < m.size(); ++r) {
        if (r == rank || m[r][c] == 0) continue;
        const Q f = m[r][c] / m[rank][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
      }
      ++rank;
    }
    return rank;
  }
  std::vector<std::vector<long long>> m;
  for (const auto& r : a) {
    std::vector<long long> row;
    for (long long x : r) row.push_back(((x % static_cast<long long>(p)) + p) % p);
    m.push_back(std::move(row));
  }
  auto inv = [&](long long x) {
    long long r = 1, e = p - 2, b = x;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const long long iv = inv(m[rank][c]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const long long f = m[r][c] * iv % p;
      for (std::size_t j = c; j < cols; ++j) m[r][j] = ((m[r][j] - f * m[rank][j]) % (long long)p + p) % p;
    }
    ++rank;
  }
  return rank;
}

using FaceList = std::vector<std::vector<Vertex>>;

/// All nonempty faces grouped by dimension, each group sorted lexicographically.
inline std::vector<FaceList> faces_by_dim(const plsphere::SimplicialComplex& k) {
  std::vector<std::set<std::vector<Vertex>>> sets(k.dim() + 1);
  for (const auto& f : k.facets()) {
    const std::vector<Vertex> v(f.begin(), f.end());
    for (std::uint32_t mask = 1; mask < (1u << v.size()); ++mask) {
      std::vector<Vertex> s;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (mask >> i & 1) s.push_back(v[i]);
      sets[s.size() - 1].insert(s);
    }
  }
  std::vector<FaceList> out;
  for (auto& s : sets) out.emplace_back(s.begin(), s.end());
  return out;
}

/// Boundary map from k-faces (rows) to (k-1)-faces (columns), sign (-1)^i
/// for deleting the i-th vertex.
inline Dense boundary(const std::vector<FaceList>& faces, int k) {
  const auto& hi = faces[k];
  const auto& lo = faces[k - 1];
  std::map<std::vector<Vertex>, std::size_t> index;
  for (std::size_t i = 0; i < lo.size(); ++i) index[lo[i]] = i;
  Dense m(hi.size(), std::vector<long long>(lo.size(), 0));
  for (std::size_t r = 0; r < hi.size(); ++r)
    for (std::size_t i = 0; i < hi[r].size(); ++i) {
      auto f = hi[r];
      f.erase(f.begin() + static_cast<long>(i));
      m[r][index.at(f)] = (i % 2 == 0) ? 1 : -1;
    }
  return m;
}

/// Unreduced Betti numbers over GF(p) or Q (p == 0).
inline std::vector<std::uint64_t> betti(const plsphere::SimplicialComplex& k, unsigned p) {
  const auto faces = faces_by_dim(k);
  const int d = k.dim();
  std::vector<std::size_t> rank(d + 2, 0);
  for (int j = 1; j <= d; ++j) rank[j] = dense_rank(boundary(faces, j), p);
  std::vector<std::uint64_t> b;
  for (int j = 0; j <= d; ++j) b.push_back(faces[j].size() - rank[j] - rank[j + 1]);
  return b;
}

/// Depth-first search for a directed cycle in the Hasse diagram with matched
/// arcs reversed. Arcs point from a face to its codimension-1 faces, except
/// that a matched pair (s, t) contributes s -> t only.
inline bool has_gradient_cycle(const plsphere::HasseDiagram& h,
                               const std::vector<std::pair<plsphere::NodeId, plsphere::NodeId>>& matching) {
  const std::size_t n = h.size();
  std::vector<std::int64_t> mate(n, -1);
  for (auto [s, t] : matching) {
    mate[s] = t;
    mate[t] = s;
  }
  auto successors = [&](plsphere::NodeId v) {
    std::vector<plsphere::NodeId> out;
    for (auto w : h.down(v))
      if (mate[v] != static_cast<std::int64_t>(w)) out.push_back(w);
    if (mate[v] >= 0 && h.node_dim(static_cast<plsphere::NodeId>(mate[v])) > h.node_dim(v))
      out.push_back(static_cast<plsphere::NodeId>(mate[v]));
    return out;
  };
  std::vector<std::uint8_t> color(n, 0);
  for (plsphere::NodeId root = 0; root < n; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<plsphere::NodeId, std::vector<plsphere::NodeId>>> stack;
    stack.push_back({root, successors(root)});
    color[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next.empty()) {
        color[v] = 2;
        stack.pop_back();
        continue;
      }
      const auto w = next.back();
      next.pop_back();
      if (color[w] == 1) return true;
      if (color[w] == 0) {
        color[w] = 1;
        stack.push_back({w, successors(w)});
      }
    }
  }
  return false;
}

}  // namespace oracle
