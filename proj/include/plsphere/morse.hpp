#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "plsphere/complex.hpp"
#include "plsphere/hasse.hpp"

namespace plsphere {

enum class Strategy { RandomRandom, RandomLexFirst, RandomLexLast };

std::string_view to_string(Strategy s);
/// Accepts "random-random", "random-lex-first", "random-lex-last".
Strategy parse_strategy(std::string_view name);

/// Critical-cell counts (c_0, ..., c_d).
struct MorseVector {
  std::vector<std::uint64_t> c;

  long long alternating_sum() const;
  std::string to_string() const;  // "(1,0,0,1)"
  friend bool operator==(const MorseVector&, const MorseVector&) = default;
  friend auto operator<=>(const MorseVector& a, const MorseVector& b) { return a.c <=> b.c; }
};

/// c_0 = c_d = 1 and zero in between (d >= 1); (2) for d = 0.
bool is_spherical(const MorseVector& v);
/// v = (1, 0, ..., 0).
bool is_collapsible_witness(const MorseVector& v);

struct MorseResult {
  MorseVector vector;
  /// (face, coface) node ids in the Hasse diagram of the input complex, in
  /// the order the elementary collapses were performed.
  std::vector<std::pair<NodeId, NodeId>> matching;
  /// Critical node ids in the order they were declared.
  std::vector<NodeId> critical;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::RandomRandom;
  /// Facets of the remaining subcomplex at the first point the run got
  /// stuck (ran out of free faces after having collapsed something).
  std::optional<SimplicialComplex> stuck_snapshot;
};

struct MorseOptions {
  bool capture_stuck = false;
};

/// Destructive random collapse on `h`: all nodes are revived first and the
/// diagram is left with every node killed.
MorseResult random_discrete_morse(HasseDiagram& h, Strategy strategy, std::uint64_t seed,
                                  const MorseOptions& opts = {});
MorseResult random_discrete_morse(const SimplicialComplex& k, Strategy strategy, std::uint64_t seed,
                                  const MorseOptions& opts = {}, const Capacity& cap = {});

/// True iff reversing the matched arcs leaves the Hasse diagram acyclic.
/// Throws InconsistentMatching when the result is not a matching of `h`
/// (non-incident pair, face used twice, or faces left unaccounted for).
bool verify_acyclic_matching(const HasseDiagram& h, const MorseResult& r);

struct SpectrumEntry {
  MorseVector vector;
  std::uint64_t count = 0;
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;  ///< count descending, then vector ascending
  Strategy strategy = Strategy::RandomRandom;
  std::uint64_t seed = 0;
  std::uint64_t rounds = 0;
  double seconds_total = 0;

  /// TSV table; the trailing comment line carries the run parameters and,
  /// if requested, the wall-clock time.
  std::string to_tsv(bool include_timing = true) const;
};

/// Runs seeds seed, seed+1, ..., seed+rounds-1. The result does not depend
/// on `threads`.
Spectrum morse_spectrum(const SimplicialComplex& k, Strategy strategy, std::uint64_t rounds, std::uint64_t seed,
                        unsigned threads = 1, const Capacity& cap = {});

/// Matching certificate: `face<TAB>coface` lines, then a `critical:` section.
std::string matching_certificate(const HasseDiagram& h, const MorseResult& r);

}  // namespace plsphere
