#include "plsphere/recognizer.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "plsphere/error.hpp"

namespace plsphere {

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "YES";
    case Answer::No: return "NO";
    case Answer::Undecided: return "UNDECIDED";
    case Answer::TopologicalSphereOnly: return "TOPOLOGICAL_SPHERE_ONLY";
  }
  return "?";
}

int exit_code(Answer a) {
  switch (a) {
    case Answer::Yes: return 0;
    case Answer::No: return 1;
    case Answer::Undecided: return 2;
    case Answer::TopologicalSphereOnly: return 3;
  }
  return 2;
}

std::string_view to_string(LinkCheckMode m) {
  switch (m) {
    case LinkCheckMode::FullInductive: return "full";
    case LinkCheckMode::VerticesOnly: return "vertices";
    case LinkCheckMode::Skip: return "skip";
  }
  return "?";
}

LinkCheckMode parse_link_check_mode(std::string_view s) {
  if (s == "full") return LinkCheckMode::FullInductive;
  if (s == "vertices") return LinkCheckMode::VerticesOnly;
  if (s == "skip") return LinkCheckMode::Skip;
  throw Error(ErrorKind::InvalidSpec, "unknown link check mode '" + std::string(s) + "'");
}

std::string_view to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::None: return "None";
    case CertificateKind::PseudomanifoldFailure: return "PseudomanifoldFailure";
    case CertificateKind::SmallDimension: return "SmallDimension";
    case CertificateKind::LinkFailure: return "LinkFailure";
    case CertificateKind::SphericalMorse: return "SphericalMorse";
    case CertificateKind::NonSphericalHomology: return "NonSphericalHomology";
    case CertificateKind::TrivialPi1: return "TrivialPi1";
    case CertificateKind::NonTrivialPi1: return "NonTrivialPi1";
    case CertificateKind::FlipPath: return "FlipPath";
  }
  return "?";
}

namespace {

Verdict make(Answer a, CertificateKind kind, std::string detail) {
  Verdict v;
  v.answer = a;
  v.certificate.kind = kind;
  v.certificate.detail = std::move(detail);
  return v;
}

// Facets of the star of each vertex, for cheap link extraction.
class StarIndex {
 public:
  explicit StarIndex(const SimplicialComplex& k) : k_(k) {
    for (std::uint32_t i = 0; i < k.facets().size(); ++i)
      for (Vertex v : k.facets()[i]) star_[v].push_back(i);
  }

  SimplicialComplex link(const Face& f) const {
    std::vector<Face> parts;
    auto it = star_.find(f[0]);
    if (it == star_.end()) throw Error(ErrorKind::NotAFace, "{" + f.to_string() + "} is not a face");
    for (auto i : it->second) {
      const Face& g = k_.facets()[i];
      if (!f.is_subset_of(g)) continue;
      Face rest = g.minus(f);
      if (!rest.empty()) parts.push_back(std::move(rest));
    }
    if (parts.empty()) return {};
    return SimplicialComplex::from_faces(std::move(parts));
  }

 private:
  const SimplicialComplex& k_;
  std::unordered_map<Vertex, std::vector<std::uint32_t>> star_;
};

std::vector<Vertex> cache_key(const SimplicialComplex& l) {
  std::vector<Vertex> key;
  const SimplicialComplex n = normalized_labels(l);
  for (const Face& f : n.facets()) {
    key.insert(key.end(), f.begin(), f.end());
    key.push_back(UINT32_MAX);
  }
  return key;
}

Verdict recognize_link(const SimplicialComplex& l, const RecognitionConfig& cfg) {
  if (l.dim() <= 2) return recognize_small_dim(l);
  RecognitionConfig sub = cfg;
  sub.link_check_mode = LinkCheckMode::Skip;
  sub.threads = 1;
  sub.morse_rounds = std::min(cfg.link_morse_rounds, cfg.morse_rounds);
  Verdict v = recognize_sphere(l, sub);
  if (v.answer == Answer::Undecided && sub.morse_rounds < cfg.morse_rounds) {
    sub.morse_rounds = cfg.morse_rounds;
    v = recognize_sphere(l, sub);
  }
  return v;
}

}  // namespace

std::optional<Verdict> prerequisite_failure(const SimplicialComplex& k) {
  if (k.is_void()) throw Error(ErrorKind::EmptyInput, "void complex");
  if (!is_pure(k)) {
    Verdict v = make(Answer::No, CertificateKind::PseudomanifoldFailure, "complex is not pure");
    for (const Face& f : k.facets())
      if (f.dim() != k.dim()) {
        v.certificate.face = f;
        v.certificate.detail += ": facet {" + f.to_string() + "} has dimension " + std::to_string(f.dim());
        break;
      }
    return v;
  }
  const auto pm = is_closed_pseudomanifold(k);
  if (!pm.ok) {
    Verdict v = make(Answer::No, CertificateKind::PseudomanifoldFailure, "");
    if (pm.ridge) {
      v.certificate.face = *pm.ridge;
      v.certificate.detail = "ridge {" + pm.ridge->to_string() + "} lies in " + std::to_string(pm.facet_count) +
                             " facets";
    } else {
      v.certificate.detail = "0-dimensional complex with " + std::to_string(k.n_vertices()) + " vertices";
    }
    return v;
  }
  if (k.dim() >= 1 && !is_connected(k))
    return make(Answer::No, CertificateKind::PseudomanifoldFailure, "1-skeleton is not connected");
  return std::nullopt;
}

Verdict recognize_small_dim(const SimplicialComplex& k) {
  if (k.dim() > 2) throw Error(ErrorKind::PrereqFailed, "recognize_small_dim needs dimension <= 2");
  if (auto fail = prerequisite_failure(k)) return *fail;
  if (k.dim() == 0) return make(Answer::Yes, CertificateKind::SmallDimension, "two isolated vertices");
  if (k.dim() == 1)
    return make(Answer::Yes, CertificateKind::SmallDimension,
                "polygon with " + std::to_string(k.n_vertices()) + " vertices");
  StarIndex stars(k);
  for (Vertex v : k.vertices()) {
    SimplicialComplex l = stars.link(Face{v});
    if (!is_connected(l)) {
      Verdict out = make(Answer::No, CertificateKind::LinkFailure,
                         "link of vertex " + std::to_string(v) + " is not a single cycle");
      out.certificate.face = Face{v};
      out.certificate.link = std::move(l);
      return out;
    }
  }
  const long long chi = euler_characteristic(k);
  if (chi == 2) return make(Answer::Yes, CertificateKind::SmallDimension, "closed surface with chi = 2");
  Verdict out = make(Answer::No, CertificateKind::NonSphericalHomology, "closed surface with chi = " +
                                                                           std::to_string(chi));
  out.certificate.homology = homology(k, Coefficients::integers(), true);
  return out;
}

ManifoldReport is_combinatorial_manifold(const SimplicialComplex& k, const RecognitionConfig& cfg) {
  ManifoldReport report;
  if (auto fail = prerequisite_failure(k)) {
    report.summary = Answer::No;
    report.failure = std::move(*fail);
    report.log.push_back("prerequisites failed: " + report.failure->certificate.detail);
    return report;
  }
  const int d = k.dim();
  const HasseDiagram h = HasseDiagram::build(k, cfg.capacity);
  StarIndex stars(k);
  std::map<std::vector<Vertex>, std::shared_ptr<const Verdict>> cache;
  const int top = cfg.link_check_mode == LinkCheckMode::VerticesOnly ? std::min(0, d - 1) : d - 1;
  const unsigned threads = std::max(1u, cfg.threads);
  constexpr std::size_t kBatch = 64;

  for (int i = 0; i <= top; ++i) {
    std::uint64_t checked = 0;
    for (NodeId start = h.level_begin(i); start < h.level_end(i);) {
      const NodeId stop = static_cast<NodeId>(std::min<std::size_t>(h.level_end(i), start + kBatch));
      struct Item {
        Face face;
        SimplicialComplex link;
        std::vector<Vertex> key;
      };
      std::vector<Item> items;
      std::vector<std::size_t> todo;  // items whose key is not cached yet
      std::map<std::vector<Vertex>, std::size_t> batch_keys;
      for (NodeId n = start; n < stop; ++n) {
        Item it{h.face(n), {}, {}};
        it.link = stars.link(it.face);
        it.key = cache_key(it.link);
        if (!cache.count(it.key) && batch_keys.emplace(it.key, items.size()).second) todo.push_back(items.size());
        items.push_back(std::move(it));
      }
      report.cache_hits += items.size() - todo.size();

      std::vector<std::shared_ptr<const Verdict>> results(todo.size());
      std::atomic<std::size_t> next{0};
      std::mutex error_mutex;
      std::exception_ptr error;
      auto worker = [&] {
        for (std::size_t t; (t = next++) < todo.size();) {
          try {
            results[t] = std::make_shared<const Verdict>(recognize_link(items[todo[t]].link, cfg));
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
          }
        }
      };
      if (threads > 1 && todo.size() > 1) {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < std::min<std::size_t>(threads, todo.size()); ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
      } else {
        worker();
      }
      if (error) std::rethrow_exception(error);
      for (std::size_t t = 0; t < todo.size(); ++t) cache.emplace(items[todo[t]].key, results[t]);

      for (auto& it : items) {
        const auto& v = cache.at(it.key);
        const Answer a = v->answer == Answer::TopologicalSphereOnly ? Answer::Undecided : v->answer;
        report.faces.push_back({it.face, a});
        ++checked;
        if (a == Answer::Undecided) report.summary = Answer::Undecided;
        if (a == Answer::No) {
          Verdict fail = make(Answer::No, CertificateKind::LinkFailure,
                              "link of {" + it.face.to_string() + "} is not a sphere: " + v->certificate.detail);
          fail.certificate.face = it.face;
          fail.certificate.link = std::move(it.link);
          fail.certificate.link_verdict = v;
          report.summary = Answer::No;
          report.failure = std::move(fail);
          report.log.push_back("dimension " + std::to_string(i) + ": " + std::to_string(checked) +
                               " links checked, failure at {" + it.face.to_string() + "}");
          return report;
        }
      }
      start = stop;
    }
    report.log.push_back("dimension " + std::to_string(i) + ": " + std::to_string(checked) + " links checked");
  }
  report.log.push_back(std::to_string(report.cache_hits) + " cache hits");
  return report;
}

Verdict recognize_sphere(const SimplicialComplex& k, const RecognitionConfig& cfg) {
  if (auto fail = prerequisite_failure(k)) return *fail;
  if (k.dim() <= 2) return recognize_small_dim(k);

  std::vector<std::string> log;
  bool links_undecided = false;
  if (cfg.link_check_mode != LinkCheckMode::Skip) {
    ManifoldReport m = is_combinatorial_manifold(k, cfg);
    for (auto& line : m.log) log.push_back("links: " + line);
    if (m.summary == Answer::No) {
      Verdict v = std::move(*m.failure);
      v.log = std::move(log);
      return v;
    }
    links_undecided = m.summary == Answer::Undecided;
  }
  auto finish = [&](Verdict v) {
    if (links_undecided && (v.answer == Answer::Yes || v.answer == Answer::TopologicalSphereOnly)) {
      log.push_back("some links undecided; downgrading the answer");
      v.answer = Answer::Undecided;
    }
    v.log = std::move(log);
    return v;
  };

  const int d = k.dim();
  HasseDiagram h = HasseDiagram::build(k, cfg.capacity);
  if (cfg.run_morse) {
    std::optional<MorseVector> best;
    for (std::uint64_t r = 0; r < cfg.morse_rounds; ++r) {
      MorseResult res = random_discrete_morse(h, cfg.strategy, cfg.seed + r);
      if (is_spherical(res.vector)) {
        log.push_back("morse: spherical vector " + res.vector.to_string() + " at seed " +
                      std::to_string(cfg.seed + r));
        Verdict v = make(Answer::Yes, CertificateKind::SphericalMorse, "spherical discrete Morse vector " +
                                                                           res.vector.to_string());
        v.certificate.morse = std::move(res);
        return finish(std::move(v));
      }
      if (!best || res.vector.c < best->c) best = res.vector;
    }
    log.push_back("morse: " + std::to_string(cfg.morse_rounds) + " rounds, none spherical" +
                  (best ? ", smallest " + best->to_string() : std::string()));
  }

  if (cfg.run_homology) {
    HomologyGroups hg = homology(h, Coefficients::integers(), true);
    if (!is_spherical_homology(hg, d)) {
      log.push_back("homology: not spherical");
      Verdict v = make(Answer::No, CertificateKind::NonSphericalHomology, "reduced homology is not spherical");
      v.certificate.homology = std::move(hg);
      return finish(std::move(v));
    }
    log.push_back("homology: spherical");
  }

  std::optional<TrivialityVerdict> trivial_in_dim4;
  if (cfg.run_pi1) {
    TrivialityVerdict tv = triviality_verdict(pi1_presentation(k, cfg.seed), cfg.pi1_budget);
    log.push_back("pi1: " + std::string(to_string(tv.kind)) + " after " +
                  std::to_string(tv.simplification.operations) + " operations");
    if (tv.kind == Triviality::Trivial && d != 4) {
      Verdict v = make(Answer::Yes, CertificateKind::TrivialPi1, "trivial fundamental group and spherical homology");
      v.certificate.pi1 = std::move(tv);
      return finish(std::move(v));
    }
    if (tv.kind == Triviality::NonTrivial) {
      Verdict v = make(Answer::No, CertificateKind::NonTrivialPi1,
                       "fundamental group surjects onto " + tv.witness->to_string());
      v.certificate.pi1 = std::move(tv);
      return finish(std::move(v));
    }
    if (tv.kind == Triviality::Trivial) trivial_in_dim4 = std::move(tv);
  }

  if (cfg.run_flips) {
    FlipResult fr = bistellar_simplify(k, cfg.seed, cfg.flip_rounds, cfg.schedule);
    log.push_back("flips: " + std::to_string(fr.rounds) + " rounds, best f = " + fr.best_f.to_string());
    if (fr.reached_simplex_boundary) {
      Verdict v = make(Answer::Yes, CertificateKind::FlipPath,
                       "boundary of the simplex reached after " + std::to_string(fr.moves) + " moves");
      v.certificate.flips = std::move(fr);
      return finish(std::move(v));
    }
  }

  if (trivial_in_dim4) {
    Verdict v = make(Answer::TopologicalSphereOnly, CertificateKind::TrivialPi1,
                     "simply connected homology 4-sphere: homeomorphic to the 4-sphere, PL type not settled");
    v.certificate.pi1 = std::move(trivial_in_dim4);
    return finish(std::move(v));
  }
  return finish(make(Answer::Undecided, CertificateKind::None, "all tests inconclusive"));
}

}  // namespace plsphere
