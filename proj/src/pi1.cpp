#include "plsphere/pi1.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_map>

#include "plsphere/error.hpp"
#include "plsphere/rng.hpp"

namespace plsphere {

void free_reduce(Word& w) {
  std::size_t top = 0;
  for (int letter : w) {
    if (top > 0 && w[top - 1] == -letter)
      --top;
    else
      w[top++] = letter;
  }
  w.resize(top);
}

void cyclic_reduce(Word& w) {
  free_reduce(w);
  std::size_t b = 0, e = w.size();
  while (e - b >= 2 && w[b] == -w[e - 1]) {
    ++b;
    --e;
  }
  if (b > 0) w = Word(w.begin() + b, w.begin() + e);
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (int& l : out) l = -l;
  return out;
}

std::string GroupPresentation::to_text() const {
  std::ostringstream out;
  out << "generators: " << generators << '\n';
  for (const auto& r : relators) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? " " : "") << r[i];
    out << '\n';
  }
  return out.str();
}

GroupPresentation GroupPresentation::parse(std::string_view text) {
  GroupPresentation p;
  bool header = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      const std::string key = "generators:";
      if (line.rfind(key, 0) != 0) throw Error(ErrorKind::Parse, "expected 'generators: g' header");
      p.generators = std::stoul(line.substr(key.size()));
      header = true;
      continue;
    }
    std::istringstream ls(line);
    Word w;
    long long letter;
    while (ls >> letter) {
      if (letter == 0 || static_cast<std::size_t>(letter < 0 ? -letter : letter) > p.generators)
        throw Error(ErrorKind::Parse, "generator index out of range: " + std::to_string(letter));
      w.push_back(static_cast<int>(letter));
    }
    if (!ls.eof()) throw Error(ErrorKind::Parse, "bad relator line: " + line);
    p.relators.push_back(std::move(w));
  }
  if (!header) throw Error(ErrorKind::Parse, "empty presentation");
  return p;
}

GroupPresentation pi1_presentation(const SimplicialComplex& k, std::uint64_t tree_seed) {
  if (k.is_void() || k.dim() < 2)
    throw Error(ErrorKind::DimensionOutOfRange, "presentation needs a complex of dimension at least 2");
  if (!is_connected(k)) throw Error(ErrorKind::NotConnected, "complex is not connected");

  std::set<std::pair<Vertex, Vertex>> edge_set;
  std::set<std::array<Vertex, 3>> triangles;
  for (const Face& f : k.facets()) {
    const auto v = f.vertices();
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = a + 1; b < v.size(); ++b) {
        edge_set.emplace(v[a], v[b]);
        for (std::size_t c = b + 1; c < v.size(); ++c) triangles.insert({v[a], v[b], v[c]});
      }
  }
  std::vector<std::pair<Vertex, Vertex>> edges(edge_set.begin(), edge_set.end());

  std::unordered_map<Vertex, std::uint32_t> index;
  for (std::uint32_t i = 0; i < k.vertices().size(); ++i) index[k.vertices()[i]] = i;
  const std::size_t n = k.n_vertices();
  std::vector<std::vector<std::uint32_t>> adj(n);  // edge ids
  for (std::uint32_t e = 0; e < edges.size(); ++e) {
    adj[index[edges[e].first]].push_back(e);
    adj[index[edges[e].second]].push_back(e);
  }

  Rng rng(tree_seed);
  std::vector<std::uint8_t> seen(n, 0), in_tree(edges.size(), 0);
  std::queue<std::uint32_t> queue;
  const auto root = static_cast<std::uint32_t>(rng.below(n));
  seen[root] = 1;
  queue.push(root);
  while (!queue.empty()) {
    const auto u = queue.front();
    queue.pop();
    rng.shuffle(std::span<std::uint32_t>(adj[u]));
    for (auto e : adj[u]) {
      const auto a = index[edges[e].first], b = index[edges[e].second];
      const auto w = a == u ? b : a;
      if (seen[w]) continue;
      seen[w] = 1;
      in_tree[e] = 1;
      queue.push(w);
    }
  }

  GroupPresentation p;
  std::map<std::pair<Vertex, Vertex>, int> gen;
  for (std::uint32_t e = 0; e < edges.size(); ++e)
    if (!in_tree[e]) gen[edges[e]] = static_cast<int>(++p.generators);
  auto letter = [&](Vertex a, Vertex b) {
    auto it = gen.find({a, b});
    return it == gen.end() ? 0 : it->second;
  };
  for (const auto& [a, b, c] : triangles) {
    Word w;
    if (int g = letter(a, b)) w.push_back(g);
    if (int g = letter(b, c)) w.push_back(g);
    if (int g = letter(a, c)) w.push_back(-g);
    free_reduce(w);
    p.relators.push_back(std::move(w));
  }
  return p;
}

std::string AbelianGroup::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& t : torsion) parts.push_back("Z/" + t.str());
  if (parts.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
  return out;
}

AbelianGroup abelianization(const GroupPresentation& p) {
  SparseIntMatrix m(p.relators.size(), p.generators);
  for (std::size_t r = 0; r < p.relators.size(); ++r) {
    std::map<std::size_t, long long> sums;
    for (int l : p.relators[r]) sums[static_cast<std::size_t>(std::abs(l)) - 1] += l > 0 ? 1 : -1;
    for (const auto& [g, s] : sums)
      if (s != 0) m.set(r, g, s);
  }
  const auto snf = smith_normal_form(m);
  AbelianGroup a;
  a.free_rank = p.generators - snf.rank();
  a.torsion = primary_decomposition(snf.divisors);
  return a;
}

namespace {

class Simplifier {
 public:
  Simplifier(const GroupPresentation& p, std::uint64_t budget) : budget_(budget) {
    result_.presentation = p;
  }

  TietzeResult run() {
    for (;;) {
      tidy();
      if (exhausted()) break;
      if (eliminate_generator()) continue;
      if (exhausted()) break;
      if (shorten_relator()) continue;
      break;
    }
    tidy();
    return std::move(result_);
  }

 private:
  bool exhausted() {
    if (result_.operations >= budget_) result_.budget_exhausted = true;
    return result_.budget_exhausted;
  }

  void charge(std::size_t n) { result_.operations += n; }

  // Canonical representative of a relator up to rotation and inversion.
  Word canonical(const Word& w) {
    if (w.size() > 32) return w;  // long words: exact repeats only
    Word best = w;
    const Word inv = inverse(w);
    for (const Word* base : {&w, &inv}) {
      for (std::size_t s = 0; s < w.size(); ++s) {
        Word rot(base->begin() + s, base->end());
        rot.insert(rot.end(), base->begin(), base->begin() + s);
        if (rot < best) best = std::move(rot);
      }
    }
    charge(2 * w.size() * w.size());
    return best;
  }

  void tidy() {
    auto& rel = result_.presentation.relators;
    std::set<Word> seen;
    std::vector<Word> kept;
    std::size_t dropped_empty = 0, dropped_dup = 0;
    for (auto& w : rel) {
      charge(w.size() + 1);
      cyclic_reduce(w);
      if (w.empty()) {
        ++dropped_empty;
        continue;
      }
      if (!seen.insert(canonical(w)).second) {
        ++dropped_dup;
        continue;
      }
      kept.push_back(std::move(w));
    }
    rel = std::move(kept);
    if (dropped_empty) result_.trace.push_back("remove " + std::to_string(dropped_empty) + " empty relator(s)");
    if (dropped_dup) result_.trace.push_back("remove " + std::to_string(dropped_dup) + " repeated relator(s)");
  }

  bool eliminate_generator() {
    auto& p = result_.presentation;
    std::size_t best_rel = SIZE_MAX;
    int best_gen = 0;
    for (std::size_t r = 0; r < p.relators.size(); ++r) {
      const Word& w = p.relators[r];
      if (best_rel != SIZE_MAX && w.size() >= p.relators[best_rel].size()) continue;
      std::map<int, std::size_t> count;
      for (int l : w) ++count[std::abs(l)];
      charge(w.size());
      for (const auto& [g, c] : count) {
        if (c == 1) {
          best_rel = r;
          best_gen = g;
          break;
        }
      }
    }
    if (best_rel == SIZE_MAX) return false;

    // Rotate so the generator leads: x^e u = 1, hence x = u^-1 (e = 1) or u.
    Word w = p.relators[best_rel];
    const auto pos = static_cast<std::size_t>(
        std::find_if(w.begin(), w.end(), [&](int l) { return std::abs(l) == best_gen; }) - w.begin());
    std::rotate(w.begin(), w.begin() + pos, w.end());
    const int e = w[0] > 0 ? 1 : -1;
    Word u(w.begin() + 1, w.end());
    const Word x_value = e > 0 ? inverse(u) : u;
    const Word x_inverse = inverse(x_value);

    p.relators.erase(p.relators.begin() + best_rel);
    const int last = static_cast<int>(p.generators);
    for (auto& r : p.relators) {
      Word out;
      for (int l : r) {
        if (std::abs(l) == best_gen) {
          const Word& rep = l > 0 ? x_value : x_inverse;
          out.insert(out.end(), rep.begin(), rep.end());
        } else {
          out.push_back(l);
        }
      }
      // keep indices contiguous by renaming the last generator
      if (best_gen != last)
        for (int& l : out)
          if (std::abs(l) == last) l = l > 0 ? best_gen : -best_gen;
      charge(out.size() + 1);
      free_reduce(out);
      r = std::move(out);
    }
    --p.generators;
    result_.trace.push_back("eliminate generator " + std::to_string(best_gen) + " via relator of length " +
                            std::to_string(w.size()) +
                            (best_gen != last ? ", rename " + std::to_string(last) + " -> " + std::to_string(best_gen)
                                              : std::string()));
    return true;
  }

  // Finds a cyclic subword of s equal to a prefix of length m > |r|/2 of a
  // rotation of r or r^-1, and replaces it by the inverse of the rest.
  bool shorten_relator() {
    auto& rel = result_.presentation.relators;
    std::vector<std::size_t> order(rel.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return rel[a].size() < rel[b].size(); });
    for (std::size_t ri : order) {
      const Word r = rel[ri];
      const std::size_t len = r.size();
      const Word rinv = inverse(r);
      for (std::size_t si = 0; si < rel.size(); ++si) {
        if (si == ri || rel[si].size() < len) continue;
        const Word& s = rel[si];
        const std::size_t sl = s.size();
        for (const Word* base : {&r, &rinv}) {
          for (std::size_t rot = 0; rot < len; ++rot) {
            auto at = [&](std::size_t i) { return (*base)[(rot + i) % len]; };
            for (std::size_t start = 0; start < sl; ++start) {
              if (exhausted()) return false;
              std::size_t m = 0;
              while (m < len && m < sl && s[(start + m) % sl] == at(m)) ++m;
              charge(m + 1);
              if (2 * m <= len) continue;
              // s = P t where P = prefix; replace P by (rest)^-1
              Word rest;
              for (std::size_t i = m; i < len; ++i) rest.push_back(at(i));
              Word out = inverse(rest);
              for (std::size_t i = m; i < sl; ++i) out.push_back(s[(start + i) % sl]);
              cyclic_reduce(out);
              result_.trace.push_back("shorten relator of length " + std::to_string(sl) + " to " +
                                      std::to_string(out.size()) + " using relator of length " +
                                      std::to_string(len));
              rel[si] = std::move(out);
              return true;
            }
          }
        }
      }
    }
    return false;
  }

  std::uint64_t budget_;
  TietzeResult result_;
};

}  // namespace

TietzeResult tietze_simplify(const GroupPresentation& p, std::uint64_t budget) {
  return Simplifier(p, budget).run();
}

std::string_view to_string(Triviality t) {
  switch (t) {
    case Triviality::Trivial: return "Trivial";
    case Triviality::NonTrivial: return "NonTrivial";
    case Triviality::Unknown: return "Unknown";
  }
  return "?";
}

TrivialityVerdict triviality_verdict(const GroupPresentation& p, std::uint64_t budget) {
  TrivialityVerdict v;
  v.simplification = tietze_simplify(p, budget);
  const auto& q = v.simplification.presentation;
  if (q.generators == 0) {
    v.kind = Triviality::Trivial;
    return v;
  }
  AbelianGroup ab = abelianization(q);
  if (!ab.is_trivial()) {
    v.kind = Triviality::NonTrivial;
    v.witness = std::move(ab);
  } else {
    v.kind = Triviality::Unknown;
  }
  return v;
}

}  // namespace plsphere
