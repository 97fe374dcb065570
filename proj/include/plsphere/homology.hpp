#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "plsphere/complex.hpp"
#include "plsphere/hasse.hpp"
#include "plsphere/morse.hpp"

namespace plsphere {

using Integer = boost::multiprecision::cpp_int;

/// Row-major sparse integer matrix; zero entries are never stored.
class SparseIntMatrix {
 public:
  using Row = std::vector<std::pair<std::uint32_t, Integer>>;  // sorted by column

  SparseIntMatrix() = default;
  SparseIntMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows) {}

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  std::size_t nnz() const;

  Integer at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Integer& value);
  const Row& row(std::size_t r) const { return rows_[r]; }

  SparseIntMatrix transpose() const;
  SparseIntMatrix multiply(const SparseIntMatrix& other) const;
  bool is_zero() const { return nnz() == 0; }

  /// `row col value` lines (0-based), preceded by a `rows cols nnz` header.
  void write_triplets(std::ostream& out) const;

  static SparseIntMatrix from_dense(const std::vector<std::vector<long long>>& dense);

 private:
  std::size_t cols_ = 0;
  std::vector<Row> rows_;
};

struct SmithNormalForm {
  std::vector<Integer> divisors;  ///< nonzero elementary divisors, d_i | d_{i+1}
  std::size_t rank() const { return divisors.size(); }
};

/// Rows indexed by k-faces, columns by (k-1)-faces, both in canonical order.
/// The entry for (s, s minus its i-th smallest vertex) is (-1)^i.
SparseIntMatrix boundary_matrix(const HasseDiagram& h, int k);
SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int dim);

/// Unit-pivot elimination (Markowitz order) followed by Euclidean reduction
/// of the residual block and a gcd/lcm pass into a divisibility chain.
SmithNormalForm smith_normal_form(const SparseIntMatrix& m);

enum class CoefficientKind { Integers, Rationals, PrimeField };

struct Coefficients {
  CoefficientKind kind = CoefficientKind::Integers;
  std::uint32_t prime = 0;

  static Coefficients integers() { return {}; }
  static Coefficients rationals() { return {CoefficientKind::Rationals, 0}; }
  static Coefficients prime_field(std::uint32_t p);
  std::string to_string() const;  // "Z", "Q", "GF(p)"
};

struct HomologyGroup {
  std::uint64_t betti = 0;
  std::vector<Integer> torsion;  ///< prime-power orders, ascending
  bool is_zero() const { return betti == 0 && torsion.empty(); }
  friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

struct HomologyGroups {
  std::vector<HomologyGroup> groups;  ///< index k = dimension
  bool reduced = false;
  Coefficients coefficients;

  std::vector<std::uint64_t> betti() const;
  /// `H_k = Z^b + Z/t1 + ...` lines.
  std::string to_text() const;
  friend bool operator==(const HomologyGroups& a, const HomologyGroups& b) {
    return a.groups == b.groups && a.reduced == b.reduced;
  }
};

/// Splits invariant factors into prime-power orders.
std::vector<Integer> primary_decomposition(const std::vector<Integer>& invariant_factors);

HomologyGroups homology(const SimplicialComplex& k, Coefficients coeffs = {}, bool reduced = false);
HomologyGroups homology(const HasseDiagram& h, Coefficients coeffs = {}, bool reduced = false);

/// H_d = Z and every other reduced integral homology group vanishes.
bool is_spherical_homology(const SimplicialComplex& k);
bool is_spherical_homology(const HomologyGroups& reduced_integral, int dim);

/// Result of elimination guided by an acyclic matching.
struct MatchingHomology {
  HomologyGroups groups;
  /// Per boundary map k (index k, k >= 1): residual (rows, cols) left after
  /// the matching pivots, before the generic elimination.
  std::vector<std::pair<std::size_t, std::size_t>> residual_shape;
};

/// Uses the matched pairs as unit pivots (in an order compatible with the
/// matching's gradient) and finishes with `smith_normal_form` on what is
/// left. Integer, unreduced.
MatchingHomology homology_with_matching(const HasseDiagram& h, const MorseResult& r);

/// Rank over a field, by sparse Gaussian elimination.
std::size_t rank_over(const SparseIntMatrix& m, Coefficients coeffs);

}  // namespace plsphere
