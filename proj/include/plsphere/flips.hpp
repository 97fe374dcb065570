#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "plsphere/complex.hpp"
#include "plsphere/rng.hpp"

namespace plsphere {

/// A bistellar move: the star A * boundary(B) is replaced by boundary(A) * B.
/// For a facet A (a 0-move) B is a single vertex not yet in the complex.
struct FlipOption {
  Face face;         ///< A
  Face replacement;  ///< B, the vertices of the link of A
  friend bool operator==(const FlipOption&, const FlipOption&) = default;
};

/// Move dimension j = d - dim(A): a j-move removes j+1 facets and adds d-j+1.
inline int move_dimension(int d, const FlipOption& o) { return d - o.face.dim(); }

/// Facet set with per-face facet counts and incrementally maintained raw
/// options (i-faces lying in exactly d-i+1 facets).
class FlipComplex {
 public:
  /// Throws NotPseudomanifold unless `k` is a closed pseudomanifold.
  explicit FlipComplex(const SimplicialComplex& k);

  int dim() const { return d_; }
  std::size_t n_facets() const { return facets_.size(); }
  std::size_t n_vertices() const { return f_[0]; }
  FVector f_vector() const;
  SimplicialComplex complex() const;
  bool is_simplex_boundary() const;

  std::size_t option_count(int i) const { return options_[i].items.size(); }
  const Face& option_face(int i, std::size_t index) const { return options_[i].items[index]; }
  /// Raw options per dimension i = 0..d, each sorted.
  std::vector<std::vector<Face>> raw_options() const;
  bool is_raw_option(const Face& a) const;

  /// The option for a raw-option face; a 0-move gets the next unused label.
  /// Throws StaleOption if `a` is not currently a raw option.
  FlipOption option(const Face& a) const;
  /// Throws StaleOption when the option no longer matches the complex.
  bool is_proper(const FlipOption& o) const;
  /// Applies a proper move and returns its inverse. Throws ImproperMove.
  FlipOption apply(const FlipOption& o);

  /// Uniformly random proper option of dimension i, drawn by a partial
  /// Fisher-Yates pass over the option list (which is permuted in place).
  std::optional<FlipOption> random_proper_option(int i, Rng& rng);

 private:
  struct IndexedSet {
    std::vector<Face> items;
    std::unordered_map<Face, std::size_t, FaceHash> pos;
    void insert(const Face& f);
    void erase(const Face& f);
    void swap_items(std::size_t a, std::size_t b);
  };

  void add_facet(const Face& f);
  void remove_facet(const Face& f);
  void refresh(const Face& s, std::uint32_t count);
  std::vector<Face> facets_containing(const Face& a) const;
  bool stale(const FlipOption& o) const;

  int d_ = 0;
  std::unordered_set<Face, FaceHash> facets_;
  std::unordered_map<Face, std::uint32_t, FaceHash> count_;
  std::unordered_map<Vertex, std::unordered_set<Face, FaceHash>> star_;
  std::vector<std::uint64_t> f_;
  std::vector<IndexedSet> options_;
  Vertex next_label_ = 0;
};

/// Raw options of `k` per dimension. Throws NotPseudomanifold.
std::vector<std::vector<Face>> raw_options(const SimplicialComplex& k);
bool is_proper(const SimplicialComplex& k, const FlipOption& o);

/// d+2 vertices and d+2 facets, i.e. the boundary of a (d+1)-simplex.
bool reached_simplex_boundary(const SimplicialComplex& k);

struct FlipSchedule {
  double alpha = 0.1;  ///< cooling threshold = alpha * f_d + beta
  double beta = 10;
  double gamma = 2;    ///< heating rounds = gamma * threshold
  /// Weights of heating move dimensions, highest dimension first; empty
  /// means the default for the complex's dimension.
  std::vector<double> heat_distribution;
};

/// Default heating weights: [10, 10, 1] for d = 4 (move dimensions 2, 1, 0),
/// otherwise uniform over move dimensions ceil(d/2)-1 .. 0.
std::vector<double> default_heat_distribution(int d);

struct FlipMove {
  std::uint64_t round = 0;
  int move_dim = 0;
  FlipOption option;
  FVector f_after;
  bool undo = false;  ///< part of the final rewind to the best state
};

struct FlipResult {
  SimplicialComplex complex;
  bool reached_simplex_boundary = false;
  std::uint64_t rounds = 0;
  std::uint64_t moves = 0;
  FVector initial_f;
  FVector best_f;
  /// Last moves in order; complete (and replayable) unless truncated.
  std::vector<FlipMove> trajectory;
  bool trajectory_truncated = false;

  /// `round  move_dim  face  replacement  f_vector` rows under a header.
  std::string trajectory_tsv() const;
};

struct FlipRunOptions {
  std::size_t trajectory_limit = 1'000'000;
};

/// Simulated annealing with bistellar moves. Returns the lexicographically
/// smallest complex seen (rewinding to it when the run ends elsewhere).
FlipResult bistellar_simplify(const SimplicialComplex& k, std::uint64_t seed, std::uint64_t max_rounds,
                              const FlipSchedule& schedule = {}, const FlipRunOptions& opts = {});

/// Applies a recorded move sequence; throws StaleOption / ImproperMove if
/// it does not fit.
SimplicialComplex replay(const SimplicialComplex& k, const std::vector<FlipMove>& moves);

}  // namespace plsphere
