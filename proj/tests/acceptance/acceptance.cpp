// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Detail lines start with two spaces.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "plsphere/complex.hpp"
#include "plsphere/flips.hpp"
#include "plsphere/generators.hpp"
#include "plsphere/hasse.hpp"
#include "plsphere/homology.hpp"
#include "plsphere/morse.hpp"
#include "plsphere/pi1.hpp"
#include "plsphere/recognizer.hpp"
#include "plsphere/rng.hpp"

using namespace plsphere;

namespace {

// Pinned tolerances.
constexpr double kRp2SecondsMax = 1.0;
constexpr std::uint64_t kMorseIdentityRuns = 10'000;
constexpr std::uint64_t kSimplexRuns = 10'000;
constexpr std::uint64_t kSimplexPerfectMin = 9'999;
constexpr double kSimplexSecondsMax = 30 * 60;
constexpr std::uint64_t kSimplex16Runs = 1'000;
constexpr double kSimplex16NonPerfectMax = 0.05;
constexpr std::uint64_t kSd3Runs = 20;
constexpr std::uint64_t kSd3HitsMin = 16;
constexpr double kSd3SecondsMax = 30 * 60;
constexpr std::uint64_t kSawBladeRuns = 1'000;
constexpr int kSnfMatrices = 500;
constexpr int kSnfMaxSide = 5;
constexpr int kSnfEntryBound = 9;
constexpr int kFlipInstances = 10;
constexpr std::uint64_t kFlipRounds = 100'000;
constexpr std::uint64_t kFlipSamplePercent = 1;
constexpr double kManifoldSecondsMax = 5 * 60;

constexpr std::uint64_t kSpectrumSeed = 1;
constexpr std::uint64_t kSd3Seed = 1;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

bool g_quiet = false;

struct Report {
  int failures = 0;
  void line(int id, bool ok, const std::string& summary) {
    failures += !ok;
    if (g_quiet) return;
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", id, summary.c_str());
    std::fflush(stdout);
  }
};

void detail(const std::string& s) {
  if (g_quiet) return;
  std::printf("  %s\n", s.c_str());
  std::fflush(stdout);
}

std::string vec_string(const std::vector<std::uint64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

bool is_perfect(const MorseVector& v) { return is_collapsible_witness(v); }

// Outputs captured for the determinism criterion.
struct Artifacts {
  std::string simplex7, simplex8, sd3;
  std::vector<std::string> trajectories;
};

// ---- 1 ---------------------------------------------------------------------

void criterion1(Report& rep) {
  const auto t0 = Clock::now();
  const auto k = rp2_6();
  const auto f = f_vector(k).f;
  const auto chi = euler_characteristic(k);
  const auto hz = homology(k);
  const auto h2 = homology(k, Coefficients::prime_field(2));
  const auto v = recognize_sphere(k);
  const double secs = seconds_since(t0);

  bool ok = f == std::vector<std::uint64_t>{6, 15, 10} && chi == 1;
  ok = ok && hz.groups.size() == 3 && hz.groups[0] == HomologyGroup{1, {}} && hz.groups[1] == HomologyGroup{0, {2}} &&
       hz.groups[2].is_zero();
  ok = ok && h2.betti() == std::vector<std::uint64_t>{1, 1, 1};
  const bool cert = v.answer == Answer::No && v.certificate.kind == CertificateKind::NonSphericalHomology &&
                    v.certificate.detail.find("chi = 1") != std::string::npos;
  ok = ok && cert && secs < kRp2SecondsMax;
  detail("f = " + vec_string(f) + ", chi = " + std::to_string(chi));
  std::istringstream text(hz.to_text());
  for (std::string l; std::getline(text, l);) detail(l);
  detail("GF(2) Betti = " + vec_string(h2.betti()));
  detail("recognize: " + std::string(to_string(v.answer)) + " / " + std::string(to_string(v.certificate.kind)) + " (" +
         v.certificate.detail + ")");
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f s (limit %.1f s)", secs, kRp2SecondsMax);
  rep.line(1, ok, std::string("RP2_6 end-to-end, ") + buf);
}

// ---- 2 ---------------------------------------------------------------------

void criterion2(Report& rep) {
  struct Entry {
    std::string name;
    SimplicialComplex k;
    std::vector<std::uint64_t> betti_q, betti_2;  // known topology
  };
  std::vector<Entry> corpus;
  auto point = [](int d) {
    std::vector<std::uint64_t> b(d + 1, 0);
    b[0] = 1;
    return b;
  };
  auto sphere = [](int d) {
    std::vector<std::uint64_t> b(d + 1, 0);
    b[0] = 1;
    b[d] += 1;
    return b;
  };
  for (int d = 2; d <= 10; ++d) corpus.push_back({"simplex:" + std::to_string(d), simplex(d), point(d), point(d)});
  for (int n = 3; n <= 8; ++n)
    corpus.push_back({"bd_simplex:" + std::to_string(n), boundary_of_simplex(n), sphere(n - 1), sphere(n - 1)});
  corpus.push_back({"rp2_6", rp2_6(), {1, 0, 0}, {1, 1, 1}});
  for (int k = 1; k <= 5; ++k) corpus.push_back({"saw_blade:" + std::to_string(k), saw_blade(k), point(2), point(2)});
  corpus.push_back({"sd:1:bd_simplex:4", iterated_subdivision(boundary_of_simplex(4), 1), sphere(3), sphere(3)});
  corpus.push_back({"sd:2:bd_simplex:4", iterated_subdivision(boundary_of_simplex(4), 2), sphere(3), sphere(3)});

  bool topology_ok = true;
  std::vector<HasseDiagram> hasse;
  for (const auto& e : corpus) {
    hasse.push_back(HasseDiagram::build(e.k));
    topology_ok &= homology(hasse.back(), Coefficients::rationals()).betti() == e.betti_q;
    topology_ok &= homology(hasse.back(), Coefficients::prime_field(2)).betti() == e.betti_2;
  }

  const Strategy strategies[] = {Strategy::RandomRandom, Strategy::RandomLexFirst, Strategy::RandomLexLast};
  std::uint64_t euler_violations = 0, inequality_violations = 0;
  for (std::uint64_t i = 0; i < kMorseIdentityRuns; ++i) {
    const std::size_t c = i % corpus.size();
    const auto& e = corpus[c];
    const auto r = random_discrete_morse(hasse[c], strategies[(i / corpus.size()) % 3], i);
    if (r.vector.alternating_sum() != euler_characteristic(e.k)) ++euler_violations;
    for (std::size_t j = 0; j < r.vector.c.size(); ++j)
      if (r.vector.c[j] < e.betti_q[j] || r.vector.c[j] < e.betti_2[j]) {
        ++inequality_violations;
        break;
      }
  }
  detail(std::to_string(corpus.size()) + " complexes, " + std::to_string(kMorseIdentityRuns) + " runs");
  detail("Betti numbers match the known topology: " + std::string(topology_ok ? "yes" : "no"));
  detail("Morse-Euler violations: " + std::to_string(euler_violations) +
         ", weak Morse inequality violations: " + std::to_string(inequality_violations));
  rep.line(2, topology_ok && euler_violations == 0 && inequality_violations == 0,
           "Morse-Euler identity and weak Morse inequalities, zero violations");
}

// ---- 3 ---------------------------------------------------------------------

void criterion3(Report& rep, Artifacts& art) {
  const auto t0 = Clock::now();
  const Spectrum s7 = morse_spectrum(simplex(7), Strategy::RandomRandom, kSimplexRuns, kSpectrumSeed);
  const Spectrum s8 = morse_spectrum(simplex(8), Strategy::RandomRandom, kSimplexRuns, kSpectrumSeed);
  const double secs = seconds_since(t0);
  art.simplex7 = s7.to_tsv(false);
  art.simplex8 = s8.to_tsv(false);

  auto perfect_count = [](const Spectrum& s) {
    std::uint64_t n = 0;
    for (const auto& e : s.entries)
      if (is_perfect(e.vector)) n += e.count;
    return n;
  };
  const std::set<std::vector<std::uint64_t>> known = {
      {1, 1, 1, 0, 0, 0, 0, 0, 0}, {1, 0, 1, 1, 0, 0, 0, 0, 0}, {1, 0, 0, 1, 1, 0, 0, 0, 0}};
  bool only_known = true;
  for (const auto& e : s8.entries)
    if (!is_perfect(e.vector) && !known.count(e.vector.c)) {
      only_known = false;
      detail("new finding on simplex(8): " + e.vector.to_string() + " x" + std::to_string(e.count));
    }
  const auto p7 = perfect_count(s7), p8 = perfect_count(s8);
  for (const auto& [name, s] : {std::pair{"simplex(7)", &s7}, std::pair{"simplex(8)", &s8}})
    for (const auto& e : s->entries) detail(std::string(name) + " " + e.vector.to_string() + "\t" + std::to_string(e.count));
  char buf[160];
  std::snprintf(buf, sizeof buf, "simplex(7) %llu/%llu and simplex(8) %llu/%llu perfect, %.1f s",
                static_cast<unsigned long long>(p7), static_cast<unsigned long long>(kSimplexRuns),
                static_cast<unsigned long long>(p8), static_cast<unsigned long long>(kSimplexRuns), secs);
  rep.line(3, p7 >= kSimplexPerfectMin && p8 >= kSimplexPerfectMin && only_known && secs < kSimplexSecondsMax, buf);
}

// ---- 4 ---------------------------------------------------------------------

void criterion4(Report& rep) {
  const auto t0 = Clock::now();
  const Spectrum s = morse_spectrum(simplex(16), Strategy::RandomRandom, kSimplex16Runs, kSpectrumSeed);
  const double secs = seconds_since(t0);
  std::uint64_t total = 0, non_perfect = 0;
  for (const auto& e : s.entries) {
    total += e.count;
    if (!is_perfect(e.vector)) non_perfect += e.count;
    detail(e.vector.to_string() + "\t" + std::to_string(e.count));
  }
  const double rate = total ? static_cast<double>(non_perfect) / static_cast<double>(total) : 1.0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "simplex(16): %llu runs, non-perfect rate %.4f (max %.2f), %.1f s",
                static_cast<unsigned long long>(total), rate, kSimplex16NonPerfectMax, secs);
  rep.line(4, total == kSimplex16Runs && rate <= kSimplex16NonPerfectMax, buf);
}

// ---- 5 ---------------------------------------------------------------------

void criterion5(Report& rep, Artifacts& art) {
  const auto t0 = Clock::now();
  const auto k = iterated_subdivision(boundary_of_simplex(4), 3);
  const auto f = f_vector(k).f;
  const bool f_ok = f == std::vector<std::uint64_t>{12600, 81720, 138240, 69120};
  const Spectrum s = morse_spectrum(k, Strategy::RandomLexLast, kSd3Runs, kSd3Seed);
  const double secs = seconds_since(t0);
  art.sd3 = s.to_tsv(false);
  std::uint64_t hits = 0;
  for (const auto& e : s.entries) {
    if (e.vector.c == std::vector<std::uint64_t>{1, 0, 0, 1}) hits = e.count;
    detail(e.vector.to_string() + "\t" + std::to_string(e.count));
  }
  detail("f = " + vec_string(f));
  char buf[128];
  std::snprintf(buf, sizeof buf, "sd^3(bd Delta^4): (1,0,0,1) in %llu/%llu random-lex-last runs (min %llu), %.1f s",
                static_cast<unsigned long long>(hits), static_cast<unsigned long long>(kSd3Runs),
                static_cast<unsigned long long>(kSd3HitsMin), secs);
  rep.line(5, f_ok && hits >= kSd3HitsMin && secs < kSd3SecondsMax, buf);
}

// ---- 6 ---------------------------------------------------------------------

void criterion6(Report& rep) {
  const std::size_t expected_vertices[] = {8, 9, 9, 12, 15};
  bool ok = true;
  for (int k = 1; k <= 5; ++k) {
    const auto c = saw_blade(k);
    std::map<Face, int> degree;
    for (const auto& f : c.facets())
      for (std::size_t i = 0; i < f.size(); ++i) ++degree[f.without_position(i)];
    std::size_t free_edges = 0;
    for (const auto& [e, n] : degree) free_edges += n < 2;
    bool acyclic = true;
    for (const auto& g : homology(c, {}, true).groups) acyclic &= g.is_zero();
    const Spectrum s = morse_spectrum(c, Strategy::RandomRandom, kSawBladeRuns, 0);
    std::uint64_t collapsible = 0;
    for (const auto& e : s.entries)
      if (is_collapsible_witness(e.vector)) collapsible += e.count;
    const bool row_ok = c.n_vertices() == expected_vertices[k - 1] && free_edges == 0 && acyclic && collapsible == 0;
    ok &= row_ok;
    std::string spectrum;
    for (const auto& e : s.entries) spectrum += " " + e.vector.to_string() + "x" + std::to_string(e.count);
    detail("saw_blade(" + std::to_string(k) + "): n = " + std::to_string(c.n_vertices()) +
           ", free edges = " + std::to_string(free_edges) + ", reduced homology " + (acyclic ? "0" : "nonzero") +
           ", spectrum" + spectrum);
  }
  rep.line(6, ok, "saw blades k=1..5: vertex counts, no free edges, acyclic, never (1,0,0)");
}

// ---- 7 ---------------------------------------------------------------------

void criterion7(Report& rep) {
  Rng rng(7);
  int mismatches = 0;
  for (int t = 0; t < kSnfMatrices; ++t) {
    const std::size_t rows = 1 + rng.below(kSnfMaxSide), cols = 1 + rng.below(kSnfMaxSide);
    oracle::Dense a(rows, std::vector<long long>(cols));
    for (auto& r : a)
      for (auto& x : r) x = static_cast<long long>(rng.below(2 * kSnfEntryBound + 1)) - kSnfEntryBound;
    const auto got = smith_normal_form(SparseIntMatrix::from_dense(a)).divisors;
    const auto want = oracle::snf_by_minors(a);
    if (got.size() != want.size() || !std::equal(got.begin(), got.end(), want.begin())) ++mismatches;
  }
  rep.line(7, mismatches == 0,
           "SNF vs gcd-of-minors on " + std::to_string(kSnfMatrices) + " matrices: " + std::to_string(mismatches) +
               " mismatches");
}

// ---- 8 ---------------------------------------------------------------------

void criterion8(Report& rep, std::vector<std::string>& trajectories) {
  bool ok = true;
  std::uint64_t sampled = 0, preserved = 0;
  for (int inst = 0; inst < kFlipInstances; ++inst) {
    const auto k = perturbed_sphere(3, 20, 200, 0, static_cast<std::uint64_t>(inst));
    const auto r = bistellar_simplify(k, static_cast<std::uint64_t>(inst), kFlipRounds);
    trajectories.push_back(r.trajectory_tsv());

    const auto h0 = homology(k);
    const auto chi0 = euler_characteristic(k);
    FlipComplex fc(k);
    Rng pick(1000 + static_cast<std::uint64_t>(inst));
    std::uint64_t local_sampled = 0, local_ok = 0;
    bool replay_ok = !r.trajectory_truncated;
    for (std::size_t m = 0; m < r.trajectory.size(); ++m) {
      const bool sample = pick.below(100) < kFlipSamplePercent || (m + 1 == r.trajectory.size() && local_sampled == 0);
      SimplicialComplex before;
      if (sample) before = fc.complex();
      try {
        fc.apply(r.trajectory[m].option);
      } catch (const std::exception&) {
        replay_ok = false;
        break;
      }
      if (sample) {
        const auto after = fc.complex();
        ++local_sampled;
        local_ok += homology(before) == h0 && homology(after) == h0 && euler_characteristic(before) == chi0 &&
                    euler_characteristic(after) == chi0;
      }
    }
    replay_ok = replay_ok && fc.complex() == r.complex;
    const bool inst_ok = r.reached_simplex_boundary && replay_ok && local_ok == local_sampled &&
                         normalized_labels(r.complex) == boundary_of_simplex(4);
    ok &= inst_ok;
    sampled += local_sampled;
    preserved += local_ok;
    detail("seed " + std::to_string(inst) + ": f0 = " + std::to_string(k.n_vertices()) + ", " +
           std::to_string(r.rounds) + " rounds, " + std::to_string(r.moves) + " moves, final " +
           f_vector(r.complex).to_string() + (inst_ok ? "" : "  <-- failed"));
  }
  rep.line(8, ok,
           std::to_string(kFlipInstances) + " perturbed 3-spheres reach bd Delta^4; chi and homology preserved on " +
               std::to_string(preserved) + "/" + std::to_string(sampled) + " sampled moves");
}

// ---- 9 ---------------------------------------------------------------------

void criterion9(Report& rep) {
  bool ok = true;
  for (const auto& [name, k] : {std::pair{"bd Delta^3", boundary_of_simplex(3)}, std::pair{"bd Delta^4", boundary_of_simplex(4)},
                                std::pair{"sd(bd Delta^3)", iterated_subdivision(boundary_of_simplex(3), 1)}}) {
    const auto v = triviality_verdict(pi1_presentation(k));
    ok &= v.kind == Triviality::Trivial;
    detail(std::string(name) + ": " + std::string(to_string(v.kind)));
  }
  const auto rp = triviality_verdict(pi1_presentation(rp2_6()));
  const auto h1 = homology(rp2_6()).groups[1];
  const bool rp_ok = rp.kind == Triviality::NonTrivial && rp.witness && rp.witness->free_rank == h1.betti &&
                     rp.witness->torsion == h1.torsion && rp.witness->to_string() == "Z/2";
  ok &= rp_ok;
  detail("RP2_6: " + std::string(to_string(rp.kind)) + (rp.witness ? " witness " + rp.witness->to_string() : ""));
  const GroupPresentation g3{2, {{1, 2, 1, -2, -1, -2}, {1, 1, 1, -2, -2}}};
  const auto g = triviality_verdict(g3);
  ok &= g.kind == Triviality::Unknown;
  detail("G(3) = <x,y | xyx(yxy)^-1, x^3 y^-2>: " + std::string(to_string(g.kind)) + " after " +
         std::to_string(g.simplification.operations) + " operations");
  rep.line(9, ok, "fundamental group suite");
}

// ---- 10 --------------------------------------------------------------------

void criterion10(Report& rep) {
  const auto t0 = Clock::now();
  const auto a = is_combinatorial_manifold(boundary_of_simplex(5));
  const auto b = is_combinatorial_manifold(iterated_subdivision(boundary_of_simplex(4), 1));
  const auto c = is_combinatorial_manifold(suspension(rp2_6()));
  const double secs = seconds_since(t0);
  bool witness = false;
  if (c.failure && c.failure->certificate.face && c.failure->certificate.link) {
    witness = c.failure->certificate.face->size() == 1 && c.failure->certificate.link->facets() == rp2_6().facets();
    detail("susp(RP2_6) fails at vertex {" + c.failure->certificate.face->to_string() + "}");
  }
  detail("bd Delta^5: " + std::string(to_string(a.summary)) + ", sd(bd Delta^4): " + std::string(to_string(b.summary)) +
         ", susp(RP2_6): " + std::string(to_string(c.summary)));
  char buf[96];
  std::snprintf(buf, sizeof buf, "combinatorial manifold verifier, %.2f s (limit %.0f s)", secs, kManifoldSecondsMax);
  rep.line(10, a.summary == Answer::Yes && b.summary == Answer::Yes && c.summary == Answer::No && witness &&
                   secs < kManifoldSecondsMax,
           buf);
}

// ---- 11 --------------------------------------------------------------------

Artifacts determinism_run() {
  Report silent;
  Artifacts art;
  g_quiet = true;
  criterion3(silent, art);
  criterion5(silent, art);
  criterion8(silent, art.trajectories);
  g_quiet = false;
  return art;
}

void criterion11(Report& rep, const Artifacts& earlier) {
  const Artifacts first = earlier.trajectories.empty() ? determinism_run() : earlier;
  const Artifacts second = determinism_run();
  const bool same = first.simplex7 == second.simplex7 && first.simplex8 == second.simplex8 && first.sd3 == second.sd3 &&
                    first.trajectories == second.trajectories;
  std::size_t bytes = first.simplex7.size() + first.simplex8.size() + first.sd3.size();
  for (const auto& t : first.trajectories) bytes += t.size();
  rep.line(11, same && !first.trajectories.empty(),
           "criteria 3, 5, 8 rerun with identical seeds: outputs " + std::string(same ? "byte-identical" : "differ") +
               " (" + std::to_string(bytes) + " bytes compared)");
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  auto want = [&](int id) { return only.empty() || only.count(id); };

  Report rep;
  Artifacts art;
  const std::vector<std::pair<int, std::function<void()>>> steps = {
      {1, [&] { criterion1(rep); }},
      {2, [&] { criterion2(rep); }},
      {3, [&] { criterion3(rep, art); }},
      {4, [&] { criterion4(rep); }},
      {5, [&] { criterion5(rep, art); }},
      {6, [&] { criterion6(rep); }},
      {7, [&] { criterion7(rep); }},
      {8, [&] { criterion8(rep, art.trajectories); }},
      {9, [&] { criterion9(rep); }},
      {10, [&] { criterion10(rep); }},
      {11, [&] { criterion11(rep, art); }},
  };
  for (const auto& [id, run] : steps) {
    if (!want(id)) continue;
    try {
      run();
    } catch (const std::exception& e) {
      rep.line(id, false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d criteria failed\n", rep.failures);
  return rep.failures == 0 ? 0 : 1;
}
