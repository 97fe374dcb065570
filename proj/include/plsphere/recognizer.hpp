#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plsphere/complex.hpp"
#include "plsphere/flips.hpp"
#include "plsphere/hasse.hpp"
#include "plsphere/homology.hpp"
#include "plsphere/morse.hpp"
#include "plsphere/pi1.hpp"

namespace plsphere {

enum class Answer { Yes, No, Undecided, TopologicalSphereOnly };
std::string_view to_string(Answer a);
/// CLI exit status: 0 YES, 1 NO, 2 UNDECIDED, 3 TOPOLOGICAL_SPHERE_ONLY.
int exit_code(Answer a);

enum class LinkCheckMode { FullInductive, VerticesOnly, Skip };
std::string_view to_string(LinkCheckMode m);
LinkCheckMode parse_link_check_mode(std::string_view s);

struct RecognitionConfig {
  std::uint64_t morse_rounds = 100;
  std::uint64_t flip_rounds = 1'000'000;
  Strategy strategy = Strategy::RandomRandom;
  std::uint64_t seed = 0;
  std::uint64_t pi1_budget = kDefaultTietzeBudget;
  LinkCheckMode link_check_mode = LinkCheckMode::FullInductive;
  /// Morse rounds for a link's first attempt; UNDECIDED escalates to the
  /// full budgets above.
  std::uint64_t link_morse_rounds = 20;
  bool run_morse = true;
  bool run_homology = true;
  bool run_pi1 = true;
  bool run_flips = true;
  FlipSchedule schedule;
  Capacity capacity;
  unsigned threads = 1;
};

enum class CertificateKind {
  None,
  PseudomanifoldFailure,
  SmallDimension,
  LinkFailure,
  SphericalMorse,
  NonSphericalHomology,
  TrivialPi1,
  NonTrivialPi1,
  FlipPath,
};
std::string_view to_string(CertificateKind k);

struct Verdict;

struct Certificate {
  CertificateKind kind = CertificateKind::None;
  std::string detail;
  std::optional<Face> face;               ///< offending ridge / face whose link failed
  std::optional<SimplicialComplex> link;  ///< that face's link
  std::shared_ptr<const Verdict> link_verdict;
  std::optional<MorseResult> morse;
  std::optional<HomologyGroups> homology;
  std::optional<TrivialityVerdict> pi1;
  std::optional<FlipResult> flips;
};

struct Verdict {
  Answer answer = Answer::Undecided;
  Certificate certificate;
  std::vector<std::string> log;
};

/// Checks (1)-(3): purity, closed pseudomanifold, connected 1-skeleton.
/// Returns a NO verdict with a PseudomanifoldFailure certificate on failure.
std::optional<Verdict> prerequisite_failure(const SimplicialComplex& k);

/// Exact recognition for dim <= 2. Throws PrereqFailed for larger dims.
Verdict recognize_small_dim(const SimplicialComplex& k);

struct LinkRecord {
  Face face;
  Answer answer;
};

struct ManifoldReport {
  Answer summary = Answer::Yes;
  std::vector<LinkRecord> faces;  ///< checked faces in order
  std::optional<Verdict> failure;  ///< first NO, as a LinkFailure verdict
  std::uint64_t cache_hits = 0;
  std::vector<std::string> log;
};

/// Recognizes the link of every face of dimension 0..d-1 (vertices first)
/// as a sphere, stopping at the first NO.
ManifoldReport is_combinatorial_manifold(const SimplicialComplex& k, const RecognitionConfig& cfg = {});

/// Algorithm 1, preceded by the prerequisite and link checks.
Verdict recognize_sphere(const SimplicialComplex& k, const RecognitionConfig& cfg = {});

}  // namespace plsphere
