#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plsphere/complex.hpp"
#include "plsphere/homology.hpp"

namespace plsphere {

/// Letters are signed 1-based generator indices; -i is the inverse of i.
using Word = std::vector<int>;

struct GroupPresentation {
  std::size_t generators = 0;
  std::vector<Word> relators;

  /// `generators: g`, then one relator per line.
  std::string to_text() const;
  static GroupPresentation parse(std::string_view text);
  friend bool operator==(const GroupPresentation&, const GroupPresentation&) = default;
};

void free_reduce(Word& w);
void cyclic_reduce(Word& w);
Word inverse(const Word& w);

/// Generators are the 1-skeleton edges outside a spanning tree found by a
/// BFS with seeded random root and neighbor order, numbered in lex order of
/// the edges. Triangle a<b<c contributes g(ab) g(bc) g(ac)^-1 with tree
/// edges dropped.
GroupPresentation pi1_presentation(const SimplicialComplex& k, std::uint64_t tree_seed = 0);

struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;  ///< prime-power orders, ascending

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;  // "Z^2 + Z/2", "0"
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Smith form of the relator-by-generator exponent-sum matrix.
AbelianGroup abelianization(const GroupPresentation& p);

struct TietzeResult {
  GroupPresentation presentation;
  std::vector<std::string> trace;
  std::uint64_t operations = 0;
  bool budget_exhausted = false;
};

/// The budget counts letter-level work and is checked between passes, so a
/// run may overshoot it by at most one pass over the relators.
inline constexpr std::uint64_t kDefaultTietzeBudget = 1'000'000;

/// Free and cyclic reduction, removal of empty and repeated relators,
/// elimination of a generator occurring once in some relator, and
/// length-reducing substitution of long subwords of relators.
TietzeResult tietze_simplify(const GroupPresentation& p, std::uint64_t budget = kDefaultTietzeBudget);

enum class Triviality { Trivial, NonTrivial, Unknown };
std::string_view to_string(Triviality t);

struct TrivialityVerdict {
  Triviality kind = Triviality::Unknown;
  TietzeResult simplification;
  std::optional<AbelianGroup> witness;  ///< set for NonTrivial
};

TrivialityVerdict triviality_verdict(const GroupPresentation& p, std::uint64_t budget = kDefaultTietzeBudget);

}  // namespace plsphere
