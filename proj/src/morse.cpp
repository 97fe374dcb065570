#include "plsphere/morse.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <thread>

#include "plsphere/error.hpp"
#include "plsphere/rng.hpp"

namespace plsphere {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::RandomRandom: return "random-random";
    case Strategy::RandomLexFirst: return "random-lex-first";
    case Strategy::RandomLexLast: return "random-lex-last";
  }
  return "?";
}

Strategy parse_strategy(std::string_view name) {
  if (name == "random-random") return Strategy::RandomRandom;
  if (name == "random-lex-first") return Strategy::RandomLexFirst;
  if (name == "random-lex-last" || name == "random-revlex") return Strategy::RandomLexLast;
  throw Error(ErrorKind::InvalidSpec, "unknown strategy '" + std::string(name) + "'");
}

long long MorseVector::alternating_sum() const {
  long long s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i % 2 == 0 ? 1LL : -1LL) * static_cast<long long>(c[i]);
  return s;
}

std::string MorseVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(c[i]);
  }
  return s + ")";
}

bool is_spherical(const MorseVector& v) {
  if (v.c.empty()) return false;
  if (v.c.size() == 1) return v.c[0] == 2;
  if (v.c.front() != 1 || v.c.back() != 1) return false;
  return std::all_of(v.c.begin() + 1, v.c.end() - 1, [](auto x) { return x == 0; });
}

bool is_collapsible_witness(const MorseVector& v) {
  if (v.c.empty() || v.c[0] != 1) return false;
  return std::all_of(v.c.begin() + 1, v.c.end(), [](auto x) { return x == 0; });
}

namespace {

constexpr std::uint32_t kNone = UINT32_MAX;

// One destructive collapse run. The working dimension `wd_` is the current
// top dimension; free faces live one level below it.
class CollapseRun {
 public:
  CollapseRun(HasseDiagram& h, Strategy strategy, std::uint64_t seed, const MorseOptions& opts)
      : h_(h), strategy_(strategy), rng_(seed), opts_(opts) {}

  MorseResult run() {
    h_.revive_all();
    const int d = h_.dim();
    const std::size_t n = h_.size();
    result_.vector.c.assign(d + 1, 0);

    count_.resize(n);
    for (NodeId x = 0; x < n; ++x) count_[x] = static_cast<std::uint32_t>(h_.up(x).size());
    alive_in_level_.assign(d + 1, 0);
    for (int k = 0; k <= d; ++k) alive_in_level_[k] = h_.level_size(k);

    if (strategy_ == Strategy::RandomRandom) {
      level_alive_.assign(d + 1, {});
      level_pos_.resize(n);
      for (int k = 0; k <= d; ++k) {
        auto& list = level_alive_[k];
        list.resize(h_.level_size(k));
        std::iota(list.begin(), list.end(), h_.level_begin(k));
        for (std::size_t i = 0; i < list.size(); ++i) level_pos_[list[i]] = static_cast<std::uint32_t>(i);
      }
      free_pos_.assign(n, kNone);
    } else {
      compute_lex_ranks();
    }

    wd_ = d;
    seed_free_faces();
    bool acted = false;
    while (wd_ > 0) {
      NodeId sigma;
      if (pop_free(sigma)) {
        const NodeId tau = unique_alive_coface(sigma);
        result_.matching.emplace_back(sigma, tau);
        kill(tau, wd_);
        kill(sigma, wd_ - 1);
      } else {
        const NodeId tau = pick_critical();
        if (opts_.capture_stuck && acted && !result_.stuck_snapshot) result_.stuck_snapshot = snapshot();
        result_.critical.push_back(tau);
        ++result_.vector.c[wd_];
        kill(tau, wd_);
      }
      acted = true;
      while (wd_ > 0 && alive_in_level_[wd_] == 0) {
        --wd_;
        seed_free_faces();
      }
    }
    for (NodeId v = h_.level_begin(0); v < h_.level_end(0); ++v) {
      if (!h_.alive(v)) continue;
      result_.critical.push_back(v);
      ++result_.vector.c[0];
      h_.kill(v);
    }
    return std::move(result_);
  }

 private:
  void compute_lex_ranks() {
    // Relabel the vertices once by a uniform random permutation; faces are
    // then ordered lexicographically by their relabeled sorted vertex lists.
    const std::size_t nv = h_.level_size(0);
    std::vector<std::uint32_t> relabel(nv);
    std::iota(relabel.begin(), relabel.end(), 0);
    rng_.shuffle(std::span<std::uint32_t>(relabel));

    const int d = h_.dim();
    order_.assign(d + 1, {});
    rank_.resize(h_.size());
    std::vector<std::uint32_t> keys;
    for (int k = 0; k <= d; ++k) {
      const std::size_t w = k + 1;
      const NodeId begin = h_.level_begin(k);
      const std::size_t m = h_.level_size(k);
      keys.resize(m * w);
      for (std::size_t i = 0; i < m; ++i) {
        auto dv = h_.dense_vertices(begin + static_cast<NodeId>(i));
        auto* key = keys.data() + i * w;
        for (std::size_t j = 0; j < w; ++j) key[j] = relabel[dv[j]];
        std::sort(key, key + w);
      }
      auto& ord = order_[k];
      ord.resize(m);
      std::iota(ord.begin(), ord.end(), 0);
      std::sort(ord.begin(), ord.end(), [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(keys.data() + a * w, keys.data() + a * w + w, keys.data() + b * w,
                                            keys.data() + b * w + w);
      });
      for (std::size_t r = 0; r < m; ++r) {
        ord[r] += begin;
        rank_[ord[r]] = static_cast<std::uint32_t>(r);
      }
    }
    cursor_front_.assign(d + 1, 0);
    cursor_back_.resize(d + 1);
    for (int k = 0; k <= d; ++k) cursor_back_[k] = order_[k].size();
  }

  void seed_free_faces() {
    if (strategy_ == Strategy::RandomRandom) {
      for (NodeId x : free_list_) free_pos_[x] = kNone;
      free_list_.clear();
    } else {
      heap_ = {};
    }
    if (wd_ == 0) return;
    for (NodeId y = h_.level_begin(wd_ - 1); y < h_.level_end(wd_ - 1); ++y)
      if (h_.alive(y) && count_[y] == 1) add_free(y);
  }

  void add_free(NodeId y) {
    if (strategy_ == Strategy::RandomRandom) {
      free_pos_[y] = static_cast<std::uint32_t>(free_list_.size());
      free_list_.push_back(y);
    } else {
      heap_.push(heap_key(y));
    }
  }

  void remove_free(NodeId y) {
    if (strategy_ != Strategy::RandomRandom) return;  // heap entries are validated lazily
    const std::uint32_t pos = free_pos_[y];
    if (pos == kNone) return;
    const NodeId last = free_list_.back();
    free_list_[pos] = last;
    free_pos_[last] = pos;
    free_list_.pop_back();
    free_pos_[y] = kNone;
  }

  std::uint64_t heap_key(NodeId y) const {
    // The heap is a max-heap; invert ranks for lex-first.
    const std::uint64_t r = strategy_ == Strategy::RandomLexFirst ? (kNone - rank_[y]) : rank_[y];
    return (r << 32) | y;
  }

  bool pop_free(NodeId& out) {
    if (strategy_ == Strategy::RandomRandom) {
      if (free_list_.empty()) return false;
      out = free_list_[rng_.below(free_list_.size())];
      remove_free(out);
      return true;
    }
    while (!heap_.empty()) {
      const NodeId y = static_cast<NodeId>(heap_.top() & 0xffffffffULL);
      heap_.pop();
      if (h_.alive(y) && count_[y] == 1) {
        out = y;
        return true;
      }
    }
    return false;
  }

  NodeId unique_alive_coface(NodeId sigma) const {
    for (NodeId t : h_.up(sigma))
      if (h_.alive(t)) return t;
    throw Error(ErrorKind::InconsistentMatching, "free face without an alive coface");
  }

  NodeId pick_critical() {
    if (strategy_ == Strategy::RandomRandom) {
      const auto& list = level_alive_[wd_];
      return list[rng_.below(list.size())];
    }
    const auto& ord = order_[wd_];
    if (strategy_ == Strategy::RandomLexFirst) {
      auto& c = cursor_front_[wd_];
      while (!h_.alive(ord[c])) ++c;
      return ord[c];
    }
    auto& c = cursor_back_[wd_];
    while (!h_.alive(ord[c - 1])) --c;
    return ord[c - 1];
  }

  void kill(NodeId x, int level) {
    h_.kill(x);
    --alive_in_level_[level];
    if (strategy_ == Strategy::RandomRandom) {
      auto& list = level_alive_[level];
      const std::uint32_t pos = level_pos_[x];
      const NodeId last = list.back();
      list[pos] = last;
      level_pos_[last] = pos;
      list.pop_back();
      remove_free(x);
    }
    const bool touches_free_level = level == wd_;
    for (NodeId y : h_.down(x)) {
      if (!h_.alive(y)) continue;
      const std::uint32_t c = --count_[y];
      if (!touches_free_level) continue;
      if (c == 1)
        add_free(y);
      else if (c == 0)
        remove_free(y);
    }
  }

  SimplicialComplex snapshot() const {
    std::vector<Face> faces;
    for (NodeId x = 0; x < h_.size(); ++x)
      if (h_.alive(x) && count_[x] == 0) faces.push_back(h_.face(x));
    return SimplicialComplex::from_faces(std::move(faces));
  }

  HasseDiagram& h_;
  Strategy strategy_;
  Rng rng_;
  MorseOptions opts_;
  MorseResult result_;
  int wd_ = 0;

  std::vector<std::uint32_t> count_;  // alive cofaces per node
  std::vector<std::size_t> alive_in_level_;

  // random-random
  std::vector<NodeId> free_list_;
  std::vector<std::uint32_t> free_pos_;
  std::vector<std::vector<NodeId>> level_alive_;
  std::vector<std::uint32_t> level_pos_;

  // random-lex-*
  std::vector<std::uint32_t> rank_;
  std::vector<std::vector<NodeId>> order_;
  std::vector<std::size_t> cursor_front_, cursor_back_;
  std::priority_queue<std::uint64_t> heap_;
};

}  // namespace

MorseResult random_discrete_morse(HasseDiagram& h, Strategy strategy, std::uint64_t seed, const MorseOptions& opts) {
  MorseResult r = CollapseRun(h, strategy, seed, opts).run();
  r.seed = seed;
  r.strategy = strategy;
  return r;
}

MorseResult random_discrete_morse(const SimplicialComplex& k, Strategy strategy, std::uint64_t seed,
                                  const MorseOptions& opts, const Capacity& cap) {
  HasseDiagram h = HasseDiagram::build(k, cap);
  return random_discrete_morse(h, strategy, seed, opts);
}

bool verify_acyclic_matching(const HasseDiagram& h, const MorseResult& r) {
  const std::size_t n = h.size();
  std::vector<NodeId> partner(n, kNone);
  std::vector<std::uint8_t> used(n, 0);
  auto claim = [&](NodeId x) {
    if (x >= n) throw Error(ErrorKind::InconsistentMatching, "node id out of range");
    if (used[x]) throw Error(ErrorKind::InconsistentMatching, "face " + h.face(x).to_string() + " used twice");
    used[x] = 1;
  };
  for (auto [face, coface] : r.matching) {
    claim(face);
    claim(coface);
    auto down = h.down(coface);
    if (std::find(down.begin(), down.end(), face) == down.end())
      throw Error(ErrorKind::InconsistentMatching,
                  "{" + h.face(face).to_string() + "} is not a facet of {" + h.face(coface).to_string() + "}");
    partner[face] = coface;
  }
  for (NodeId c : r.critical) claim(c);
  if (2 * r.matching.size() + r.critical.size() != n)
    throw Error(ErrorKind::InconsistentMatching, "matching and critical cells do not cover all faces");

  // Kahn's algorithm on the diagram with matched arcs reversed.
  std::vector<std::uint32_t> indeg(n, 0);
  for (NodeId x = 0; x < n; ++x)
    for (NodeId t : h.up(x)) ++indeg[partner[x] == t ? x : t];
  std::vector<NodeId> queue;
  for (NodeId x = 0; x < n; ++x)
    if (indeg[x] == 0) queue.push_back(x);
  std::size_t processed = 0;
  while (!queue.empty()) {
    const NodeId x = queue.back();
    queue.pop_back();
    ++processed;
    // Outgoing arcs of x: up-arcs not reversed, plus the reversed arc down to
    // its matched face.
    for (NodeId t : h.up(x))
      if (partner[x] != t && --indeg[t] == 0) queue.push_back(t);
    for (NodeId s : h.down(x))
      if (partner[s] == x && --indeg[s] == 0) queue.push_back(s);
  }
  return processed == n;
}

std::string Spectrum::to_tsv(bool include_timing) const {
  std::ostringstream out;
  out << "vector\tcount\n";
  for (const auto& e : entries) out << e.vector.to_string() << '\t' << e.count << '\n';
  out << "# strategy=" << to_string(strategy) << " seed=" << seed << " rounds=" << rounds;
  if (include_timing) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " seconds=%.3f seconds_per_run=%.6f", seconds_total,
                  rounds ? seconds_total / static_cast<double>(rounds) : 0.0);
    out << buf;
  }
  out << '\n';
  return out.str();
}

Spectrum morse_spectrum(const SimplicialComplex& k, Strategy strategy, std::uint64_t rounds, std::uint64_t seed,
                        unsigned threads, const Capacity& cap) {
  if (rounds == 0) throw Error(ErrorKind::InvalidSpec, "rounds must be positive");
  const auto start = std::chrono::steady_clock::now();
  const HasseDiagram base = HasseDiagram::build(k, cap);
  std::vector<MorseVector> vectors(rounds);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(rounds, 256))));

  auto worker = [&](unsigned t) {
    HasseDiagram h = base;
    for (std::uint64_t i = t; i < rounds; i += threads) vectors[i] = random_discrete_morse(h, strategy, seed + i).vector;
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  std::map<MorseVector, std::uint64_t> counts;
  for (auto& v : vectors) ++counts[v];
  Spectrum s;
  s.strategy = strategy;
  s.seed = seed;
  s.rounds = rounds;
  for (auto& [v, c] : counts) s.entries.push_back({v, c});
  std::stable_sort(s.entries.begin(), s.entries.end(),
                   [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.count > b.count; });
  s.seconds_total = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

std::string matching_certificate(const HasseDiagram& h, const MorseResult& r) {
  std::ostringstream out;
  out << "# strategy=" << to_string(r.strategy) << " seed=" << r.seed << " vector=" << r.vector.to_string() << '\n';
  for (auto [face, coface] : r.matching) out << h.face(face).to_string() << '\t' << h.face(coface).to_string() << '\n';
  out << "critical:\n";
  for (NodeId c : r.critical) out << h.face(c).to_string() << '\n';
  return out.str();
}

}  // namespace plsphere
