#include "plsphere/homology.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "plsphere/error.hpp"

namespace plsphere {

using boost::multiprecision::cpp_rational;

// ---- SparseIntMatrix ------------------------------------------------------

std::size_t SparseIntMatrix::nnz() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

Integer SparseIntMatrix::at(std::size_t r, std::size_t c) const {
  const auto& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t col) { return e.first < col; });
  return (it != row.end() && it->first == c) ? it->second : Integer(0);
}

void SparseIntMatrix::set(std::size_t r, std::size_t c, const Integer& value) {
  auto& row = rows_[r];
  auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::size_t col) { return e.first < col; });
  const bool present = it != row.end() && it->first == c;
  if (value == 0) {
    if (present) row.erase(it);
  } else if (present) {
    it->second = value;
  } else {
    row.insert(it, {static_cast<std::uint32_t>(c), value});
  }
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t(cols_, rows_.size());
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) t.rows_[c].emplace_back(static_cast<std::uint32_t>(r), v);
  return t;
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& other) const {
  SparseIntMatrix out(rows_.size(), other.cols_);
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::map<std::uint32_t, Integer> acc;
    for (const auto& [k, a] : rows_[r])
      for (const auto& [c, b] : other.rows_[k]) acc[c] += a * b;
    for (auto& [c, v] : acc)
      if (v != 0) out.rows_[r].emplace_back(c, std::move(v));
  }
  return out;
}

void SparseIntMatrix::write_triplets(std::ostream& out) const {
  out << rows_.size() << ' ' << cols_ << ' ' << nnz() << '\n';
  for (std::size_t r = 0; r < rows_.size(); ++r)
    for (const auto& [c, v] : rows_[r]) out << r << ' ' << c << ' ' << v << '\n';
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<long long>>& dense) {
  SparseIntMatrix m(dense.size(), dense.empty() ? 0 : dense[0].size());
  for (std::size_t r = 0; r < dense.size(); ++r)
    for (std::size_t c = 0; c < dense[r].size(); ++c)
      if (dense[r][c] != 0) m.rows_[r].emplace_back(static_cast<std::uint32_t>(c), Integer(dense[r][c]));
  return m;
}

// ---- Boundary matrices --------------------------------------------------------

SparseIntMatrix boundary_matrix(const HasseDiagram& h, int k) {
  if (k < 1 || k > h.dim())
    throw Error(ErrorKind::DimensionOutOfRange, "boundary map " + std::to_string(k) + " out of range");
  SparseIntMatrix m(h.level_size(k), h.level_size(k - 1));
  const NodeId row0 = h.level_begin(k), col0 = h.level_begin(k - 1);
  for (NodeId n = row0; n < h.level_end(k); ++n) {
    auto down = h.down(n);
    for (std::size_t i = 0; i < down.size(); ++i) m.set(n - row0, down[i] - col0, i % 2 == 0 ? 1 : -1);
  }
  return m;
}

SparseIntMatrix boundary_matrix(const SimplicialComplex& k, int dim) {
  return boundary_matrix(HasseDiagram::build(k), dim);
}

// ---- Elimination ----------------------------------------------------------------

namespace {

struct IntegerOps {
  using Scalar = Integer;
  static bool pivotable(const Scalar& x) { return x == 1 || x == -1; }
  static Scalar quotient(const Scalar& a, const Scalar& pivot) { return a * pivot; }  // pivot is a unit
  static bool is_zero(const Scalar& x) { return x == 0; }
  static Scalar sub_mul(const Scalar& a, const Scalar& f, const Scalar& b) { return a - f * b; }
  static Scalar neg_mul(const Scalar& f, const Scalar& b) { return -(f * b); }
  static Scalar from(const Integer& x) { return x; }
};

struct RationalOps {
  using Scalar = cpp_rational;
  static bool pivotable(const Scalar& x) { return x != 0; }
  static Scalar quotient(const Scalar& a, const Scalar& pivot) { return a / pivot; }
  static bool is_zero(const Scalar& x) { return x == 0; }
  static Scalar sub_mul(const Scalar& a, const Scalar& f, const Scalar& b) { return a - f * b; }
  static Scalar neg_mul(const Scalar& f, const Scalar& b) { return -(f * b); }
  static Scalar from(const Integer& x) { return Scalar(x); }
};

struct ModPOps {
  using Scalar = std::uint64_t;
  std::uint64_t p;
  bool pivotable(Scalar x) const { return x != 0; }
  Scalar inverse(Scalar a) const {
    // a^(p-2) mod p
    Scalar result = 1, base = a % p, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  }
  Scalar quotient(Scalar a, Scalar pivot) const { return a * inverse(pivot) % p; }
  static bool is_zero(Scalar x) { return x == 0; }
  Scalar sub_mul(Scalar a, Scalar f, Scalar b) const { return (a + p - f * b % p) % p; }
  Scalar neg_mul(Scalar f, Scalar b) const { return (p - f * b % p) % p; }
  Scalar from(const Integer& x) const {
    Integer r = x % p;
    if (r < 0) r += p;
    return static_cast<Scalar>(r);
  }
};

// Sparse row elimination with lazily maintained column occupancy lists.
// A pivot (r, c) clears column c from every other row and retires row r and
// column c; both operations are valid for the Smith form because the
// remaining entries of row r can then be cleared by column operations that
// touch nothing else.
template <class Ops>
class Eliminator {
 public:
  using Scalar = typename Ops::Scalar;
  using Row = std::vector<std::pair<std::uint32_t, Scalar>>;

  Eliminator(const SparseIntMatrix& m, Ops ops) : ops_(ops), rows_(m.rows()), cols_(m.cols()) {
    col_rows_.resize(m.cols());
    row_done_.assign(m.rows(), 0);
    col_done_.assign(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (const auto& [c, v] : m.row(r)) {
        Scalar s = ops_.from(v);
        if (ops_.is_zero(s)) continue;
        rows_[r].emplace_back(c, std::move(s));
        col_rows_[c].push_back(static_cast<std::uint32_t>(r));
      }
    }
  }

  std::size_t rank() const { return rank_; }

  /// Pivots on (r, c) if that entry is currently pivotable.
  bool pivot(std::uint32_t r, std::uint32_t c) {
    if (row_done_[r] || col_done_[c]) return false;
    const Scalar* p = find(r, c);
    if (!p || !ops_.pivotable(*p)) return false;
    const Scalar pv = *p;
    for (std::uint32_t t : col_rows_[c]) {
      if (t == r || row_done_[t]) continue;
      const Scalar* a = find(t, c);
      if (!a) continue;
      const Scalar f = ops_.quotient(*a, pv);
      axpy(t, f, r);
      touched_.push_back(t);
    }
    row_done_[r] = 1;
    col_done_[c] = 1;
    ++rank_;
    return true;
  }

  /// Markowitz-style greedy: shortest row first, and within it the
  /// pivotable entry whose column is the least occupied.
  void run_markowitz() {
    using Item = std::pair<std::size_t, std::uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::uint32_t r = 0; r < rows_.size(); ++r)
      if (!row_done_[r] && !rows_[r].empty()) heap.emplace(rows_[r].size(), r);
    while (!heap.empty()) {
      auto [size, r] = heap.top();
      heap.pop();
      if (row_done_[r] || rows_[r].size() != size || size == 0) continue;
      std::uint32_t best = UINT32_MAX;
      std::size_t best_count = SIZE_MAX;
      for (const auto& [c, v] : rows_[r]) {
        if (!ops_.pivotable(v)) continue;
        if (col_rows_[c].size() < best_count) {
          best_count = col_rows_[c].size();
          best = c;
        }
      }
      if (best == UINT32_MAX) continue;
      touched_.clear();
      pivot(r, best);
      for (std::uint32_t t : touched_)
        if (!row_done_[t] && !rows_[t].empty()) heap.emplace(rows_[t].size(), t);
    }
  }

  std::pair<std::size_t, std::size_t> remaining_shape() const {
    return {static_cast<std::size_t>(std::count(row_done_.begin(), row_done_.end(), 0)),
            static_cast<std::size_t>(std::count(col_done_.begin(), col_done_.end(), 0))};
  }

  /// Nonzero rows/columns that survived elimination, as a dense matrix.
  std::vector<std::vector<Scalar>> residual_dense() const {
    std::vector<std::uint32_t> live_rows;
    std::vector<std::int64_t> col_index(cols_, -1);
    std::size_t n_cols = 0;
    for (std::uint32_t r = 0; r < rows_.size(); ++r) {
      if (row_done_[r] || rows_[r].empty()) continue;
      live_rows.push_back(r);
      for (const auto& [c, v] : rows_[r])
        if (col_index[c] < 0) col_index[c] = static_cast<std::int64_t>(n_cols++);
    }
    std::vector<std::vector<Scalar>> dense(live_rows.size(), std::vector<Scalar>(n_cols, Scalar(0)));
    for (std::size_t i = 0; i < live_rows.size(); ++i)
      for (const auto& [c, v] : rows_[live_rows[i]]) dense[i][col_index[c]] = v;
    return dense;
  }

 private:
  const Scalar* find(std::uint32_t r, std::uint32_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(row.begin(), row.end(), c, [](const auto& e, std::uint32_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? &it->second : nullptr;
  }

  // row t -= f * row p
  void axpy(std::uint32_t t, const Scalar& f, std::uint32_t p) {
    const Row& src = rows_[p];
    Row& dst = rows_[t];
    Row out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
      if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
        out.push_back(std::move(dst[i++]));
      } else if (i == dst.size() || src[j].first < dst[i].first) {
        if (!col_done_[src[j].first]) {
          Scalar v = ops_.neg_mul(f, src[j].second);
          if (!ops_.is_zero(v)) {
            col_rows_[src[j].first].push_back(t);
            out.emplace_back(src[j].first, std::move(v));
          }
        }
        ++j;
      } else {
        Scalar v = ops_.sub_mul(dst[i].second, f, src[j].second);
        if (!ops_.is_zero(v)) out.emplace_back(dst[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    dst.swap(out);
  }

  Ops ops_;
  std::vector<Row> rows_;
  std::size_t cols_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::uint8_t> row_done_, col_done_;
  std::vector<std::uint32_t> touched_;
  std::size_t rank_ = 0;
};

// Euclidean Smith reduction of a dense integer block. Returns the absolute
// values of the diagonal, not yet normalized to a divisibility chain.
std::vector<Integer> euclid_diagonal(std::vector<std::vector<Integer>> a) {
  std::vector<Integer> diag;
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Smallest nonzero entry of the trailing block becomes the pivot.
    auto bring_min = [&](bool whole_block) {
      std::size_t bi = rows, bj = cols;
      Integer best = 0;
      for (std::size_t i = t; i < rows; ++i) {
        for (std::size_t j = t; j < cols; ++j) {
          if (!whole_block && i != t && j != t) continue;
          if (a[i][j] == 0) continue;
          Integer v = abs(a[i][j]);
          if (bi == rows || v < best) {
            best = v;
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == rows) return false;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
      return true;
    };
    if (!bring_min(true)) break;
    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        const Integer q = a[i][t] / a[t][t];
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        const Integer q = a[t][j] / a[t][t];
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
      bring_min(false);
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

// Turns a list of positive diagonal entries into a divisibility chain with
// the same Smith form, via pairwise (gcd, lcm) replacement.
void normalize_chain(std::vector<Integer>& d) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      if (d[j] % d[i] == 0) continue;
      const Integer g = gcd(d[i], d[j]);
      const Integer l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  }
}

SmithNormalForm finish_snf(const Eliminator<IntegerOps>& e) {
  SmithNormalForm snf;
  snf.divisors.assign(e.rank(), Integer(1));
  auto rest = euclid_diagonal(e.residual_dense());
  normalize_chain(rest);
  snf.divisors.insert(snf.divisors.end(), rest.begin(), rest.end());
  return snf;
}

struct MapData {
  std::size_t rank = 0;
  std::vector<Integer> divisors;  // > 1 only
};

MapData integer_map_data(const SmithNormalForm& snf) {
  MapData d;
  d.rank = snf.rank();
  for (const auto& x : snf.divisors)
    if (x > 1) d.divisors.push_back(x);
  return d;
}

HomologyGroups assemble(const std::vector<std::uint64_t>& f, const std::vector<MapData>& maps, Coefficients coeffs,
                        bool reduced) {
  // maps[k] describes the boundary map from k-faces to (k-1)-faces; maps[0]
  // and maps[d+1] are zero.
  HomologyGroups hg;
  hg.coefficients = coeffs;
  hg.reduced = reduced;
  const std::size_t d = f.size() - 1;
  for (std::size_t k = 0; k <= d; ++k) {
    HomologyGroup g;
    const std::size_t rk = maps[k].rank, rk1 = maps[k + 1].rank;
    g.betti = f[k] - rk - rk1;
    if (coeffs.kind == CoefficientKind::Integers) g.torsion = primary_decomposition(maps[k + 1].divisors);
    hg.groups.push_back(std::move(g));
  }
  if (reduced && !hg.groups.empty() && hg.groups[0].betti > 0) --hg.groups[0].betti;
  return hg;
}

}  // namespace

SmithNormalForm smith_normal_form(const SparseIntMatrix& m) {
  Eliminator<IntegerOps> e(m, IntegerOps{});
  e.run_markowitz();
  return finish_snf(e);
}

std::size_t rank_over(const SparseIntMatrix& m, Coefficients coeffs) {
  switch (coeffs.kind) {
    case CoefficientKind::Integers:
      return smith_normal_form(m).rank();
    case CoefficientKind::Rationals: {
      Eliminator<RationalOps> e(m, RationalOps{});
      e.run_markowitz();
      return e.rank();
    }
    case CoefficientKind::PrimeField: {
      Eliminator<ModPOps> e(m, ModPOps{coeffs.prime});
      e.run_markowitz();
      return e.rank();
    }
  }
  return 0;
}

Coefficients Coefficients::prime_field(std::uint32_t p) {
  if (p < 2) throw Error(ErrorKind::InvalidSpec, "field characteristic must be a prime");
  for (std::uint32_t q = 2; q * q <= p; ++q)
    if (p % q == 0) throw Error(ErrorKind::InvalidSpec, std::to_string(p) + " is not prime");
  return {CoefficientKind::PrimeField, p};
}

std::string Coefficients::to_string() const {
  switch (kind) {
    case CoefficientKind::Integers: return "Z";
    case CoefficientKind::Rationals: return "Q";
    case CoefficientKind::PrimeField: return "GF(" + std::to_string(prime) + ")";
  }
  return "?";
}

std::vector<std::uint64_t> HomologyGroups::betti() const {
  std::vector<std::uint64_t> b;
  for (const auto& g : groups) b.push_back(g.betti);
  return b;
}

std::string HomologyGroups::to_text() const {
  std::ostringstream out;
  const std::string ring = coefficients.kind == CoefficientKind::Integers ? "Z" : coefficients.to_string();
  for (std::size_t k = 0; k < groups.size(); ++k) {
    const auto& g = groups[k];
    out << "H_" << k << " = ";
    std::vector<std::string> parts;
    if (g.betti > 0) parts.push_back(g.betti == 1 ? ring : ring + "^" + std::to_string(g.betti));
    for (const auto& t : g.torsion) parts.push_back("Z/" + t.str());
    if (parts.empty()) parts.push_back("0");
    for (std::size_t i = 0; i < parts.size(); ++i) out << (i ? " + " : "") << parts[i];
    out << '\n';
  }
  return out.str();
}

std::vector<Integer> primary_decomposition(const std::vector<Integer>& invariant_factors) {
  std::vector<Integer> out;
  for (Integer n : invariant_factors) {
    for (Integer p = 2; p * p <= n; ++p) {
      if (n % p != 0) continue;
      Integer q = 1;
      while (n % p == 0) {
        n /= p;
        q *= p;
      }
      out.push_back(q);
    }
    if (n > 1) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

HomologyGroups homology(const HasseDiagram& h, Coefficients coeffs, bool reduced) {
  const int d = h.dim();
  std::vector<MapData> maps(d + 2);
  for (int k = 1; k <= d; ++k) {
    const SparseIntMatrix b = boundary_matrix(h, k);
    if (coeffs.kind == CoefficientKind::Integers)
      maps[k] = integer_map_data(smith_normal_form(b));
    else
      maps[k].rank = rank_over(b, coeffs);
  }
  return assemble(h.f_vector(), maps, coeffs, reduced);
}

HomologyGroups homology(const SimplicialComplex& k, Coefficients coeffs, bool reduced) {
  return homology(HasseDiagram::build(k), coeffs, reduced);
}

bool is_spherical_homology(const HomologyGroups& hg, int dim) {
  if (static_cast<int>(hg.groups.size()) != dim + 1) return false;
  for (int k = 0; k <= dim; ++k) {
    const auto& g = hg.groups[k];
    if (!g.torsion.empty()) return false;
    std::uint64_t expected = (k == dim) ? 1 : 0;
    if (dim == 0) expected = 1;  // reduced H_0 of S^0 is Z
    if (g.betti != expected) return false;
  }
  return true;
}

bool is_spherical_homology(const SimplicialComplex& k) {
  return is_spherical_homology(homology(k, Coefficients::integers(), true), k.dim());
}

MatchingHomology homology_with_matching(const HasseDiagram& h, const MorseResult& r) {
  if (!verify_acyclic_matching(h, r)) throw Error(ErrorKind::InconsistentMatching, "matching is not acyclic");
  const int d = h.dim();
  const std::size_t n = h.size();
  // pair index by face and by coface
  std::vector<std::uint32_t> pair_of_face(n, UINT32_MAX);
  for (std::uint32_t i = 0; i < r.matching.size(); ++i) pair_of_face[r.matching[i].first] = i;

  MatchingHomology out;
  out.residual_shape.assign(d + 1, {0, 0});
  std::vector<MapData> maps(d + 2);
  for (int k = 1; k <= d; ++k) {
    std::vector<std::uint32_t> pairs;
    for (std::uint32_t i = 0; i < r.matching.size(); ++i)
      if (h.node_dim(r.matching[i].second) == k) pairs.push_back(i);
    // Order the pivots so that the matched block is lower triangular: if the
    // coface of pair a contains the face of pair b, b goes first.
    std::map<std::uint32_t, std::uint32_t> local;
    for (std::uint32_t j = 0; j < pairs.size(); ++j) local[pairs[j]] = j;
    std::vector<std::vector<std::uint32_t>> before(pairs.size());
    std::vector<std::uint32_t> waiting(pairs.size(), 0);
    for (std::uint32_t a = 0; a < pairs.size(); ++a) {
      const NodeId tau = r.matching[pairs[a]].second;
      for (NodeId s : h.down(tau)) {
        const auto pb = pair_of_face[s];
        if (pb == UINT32_MAX || pb == pairs[a]) continue;
        auto it = local.find(pb);
        if (it == local.end()) continue;
        before[it->second].push_back(a);  // b must precede a
        ++waiting[a];
      }
    }
    std::vector<std::uint32_t> ready, order;
    for (std::uint32_t a = 0; a < pairs.size(); ++a)
      if (waiting[a] == 0) ready.push_back(a);
    while (!ready.empty()) {
      const auto b = ready.back();
      ready.pop_back();
      order.push_back(b);
      for (auto a : before[b])
        if (--waiting[a] == 0) ready.push_back(a);
    }
    if (order.size() != pairs.size()) throw Error(ErrorKind::InconsistentMatching, "cyclic pivot schedule");

    const SparseIntMatrix b = boundary_matrix(h, k);
    Eliminator<IntegerOps> e(b, IntegerOps{});
    const NodeId row0 = h.level_begin(k), col0 = h.level_begin(k - 1);
    for (auto idx : order) {
      const auto [face, coface] = r.matching[pairs[idx]];
      if (!e.pivot(coface - row0, face - col0))
        throw Error(ErrorKind::InconsistentMatching, "matched pair is not a unit pivot");
    }
    out.residual_shape[k] = e.remaining_shape();
    e.run_markowitz();
    maps[k] = integer_map_data(finish_snf(e));
  }
  out.groups = assemble(h.f_vector(), maps, Coefficients::integers(), false);
  return out;
}

}  // namespace plsphere
