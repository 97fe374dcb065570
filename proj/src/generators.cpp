#include "plsphere/generators.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "plsphere/error.hpp"
#include "plsphere/flips.hpp"
#include "plsphere/rng.hpp"

namespace plsphere {

SimplicialComplex simplex(int d) {
  if (d < 0) throw Error(ErrorKind::InvalidSpec, "simplex dimension must be non-negative");
  std::vector<Vertex> v(d + 1);
  for (int i = 0; i <= d; ++i) v[i] = static_cast<Vertex>(i);
  return SimplicialComplex::from_facets({v});
}

SimplicialComplex boundary_of_simplex(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidSpec, "boundary of simplex needs n >= 1");
  std::vector<std::vector<Vertex>> facets;
  for (int skip = n; skip >= 0; --skip) {
    std::vector<Vertex> f;
    for (int i = 0; i <= n; ++i)
      if (i != skip) f.push_back(static_cast<Vertex>(i));
    facets.push_back(std::move(f));
  }
  return SimplicialComplex::from_facets(facets);
}

SimplicialComplex suspension(const SimplicialComplex& k) {
  if (k.is_void()) throw Error(ErrorKind::EmptyInput, "cannot suspend the void complex");
  const Vertex top = k.vertices().back();
  std::vector<std::vector<Vertex>> facets;
  for (const Face& f : k.facets()) {
    for (Vertex apex : {top + 1, top + 2}) {
      std::vector<Vertex> v(f.begin(), f.end());
      v.push_back(apex);
      facets.push_back(std::move(v));
    }
  }
  return SimplicialComplex::from_facets(facets);
}

SimplicialComplex rp2_6() {
  return SimplicialComplex::from_facets({{0, 1, 2}, {0, 1, 4}, {0, 2, 3}, {0, 3, 5}, {0, 4, 5},
                                         {1, 2, 5}, {1, 3, 4}, {1, 3, 5}, {2, 3, 4}, {2, 4, 5}});
}

SimplicialComplex identified_disk(const std::vector<Vertex>& word, const std::vector<std::size_t>& merges) {
  const std::size_t n = word.size();
  if (n < 3) throw Error(ErrorKind::InvalidSpec, "boundary word too short");
  const Vertex inner_base = *std::max_element(word.begin(), word.end()) + 1;
  Vertex next = inner_base;

  // inner[p] is the label of inner vertex p after merging
  std::vector<char> merged(n, 0);
  for (auto p : merges) {
    if (p >= n) throw Error(ErrorKind::InvalidSpec, "merge position out of range");
    merged[p] = 1;
  }
  std::vector<Vertex> inner(n);
  std::size_t first = 0;
  while (first < n && merged[first]) ++first;
  if (first == n) throw Error(ErrorKind::InvalidSpec, "every inner vertex merged");
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t p = (first + t) % n;
    inner[p] = merged[p] ? inner[(p + n - 1) % n] : next++;
  }

  std::vector<std::vector<Vertex>> tris;
  for (std::size_t p = 0; p < n; ++p) {
    const std::size_t q = (p + 1) % n;
    tris.push_back({word[p], word[q], inner[p]});
    tris.push_back({word[q], inner[p], inner[q]});
  }
  std::vector<Vertex> polygon;
  for (std::size_t t = 0; t < n; ++t) {
    const std::size_t p = (first + t) % n;
    if (polygon.empty() || polygon.back() != inner[p]) polygon.push_back(inner[p]);
  }
  for (std::size_t i = 1; i + 1 < polygon.size(); ++i) tris.push_back({polygon[0], polygon[i], polygon[i + 1]});

  std::set<std::vector<Vertex>> seen;
  std::vector<std::vector<Vertex>> facets;
  for (auto& t : tris) {
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] && t[1] == t[2]) throw Error(ErrorKind::InvalidSpec, "collapsed triangle");
    if (t[0] == t[1] || t[1] == t[2]) {
      // only the triangle spanning a merged inner edge may degenerate
      if (t[1] < inner_base) throw Error(ErrorKind::InvalidSpec, "boundary word repeats a letter on an edge");
      continue;
    }
    if (!seen.insert(t).second) throw Error(ErrorKind::InvalidSpec, "identification repeats a triangle");
    facets.push_back(t);
  }
  return SimplicialComplex::from_facets(facets);
}

SimplicialComplex saw_blade(int k) {
  if (k < 1) throw Error(ErrorKind::InvalidSpec, "saw blade needs k >= 1");
  std::vector<Vertex> word;
  std::vector<std::size_t> merges;
  if (k == 1) {
    word = {1, 2, 3, 1, 2, 3, 1, 3, 2};
    merges = {1, 3, 5, 7};
  } else if (k == 2) {
    word = {1, 2, 1, 2, 3, 1, 3, 2, 3};
    merges = {0, 3, 6};
  } else {
    for (int j = 1; j <= k; ++j) {
      const Vertex a = static_cast<Vertex>(j), b = static_cast<Vertex>(j % k + 1);
      merges.push_back(word.size());
      word.insert(word.end(), {a, b, a});
    }
  }
  for (auto& v : word) --v;
  return identified_disk(word, merges);
}

SimplicialComplex iterated_subdivision(const SimplicialComplex& k, int times) {
  if (times < 0) throw Error(ErrorKind::InvalidSpec, "subdivision count must be non-negative");
  SimplicialComplex out = k;
  for (int i = 0; i < times; ++i) out = barycentric_subdivision(out);
  return out;
}

SimplicialComplex perturbed_sphere(int d, std::uint64_t add_vertices, std::uint64_t one_moves,
                                   std::uint64_t mixed_rounds, std::uint64_t seed) {
  if (d < 2) throw Error(ErrorKind::InvalidSpec, "perturbed sphere needs d >= 2");
  FlipComplex fc(boundary_of_simplex(d + 1));
  Rng rng(seed);
  for (std::uint64_t i = 0; i < add_vertices; ++i) {
    const Face& facet = fc.option_face(d, rng.below(fc.option_count(d)));
    fc.apply(fc.option(facet));
  }
  for (std::uint64_t i = 0; i < one_moves; ++i)
    if (auto o = fc.random_proper_option(d - 1, rng)) fc.apply(*o);
  for (std::uint64_t i = 0; i < mixed_rounds; ++i) {
    const int j = 1 + static_cast<int>(rng.below(2));
    auto o = fc.random_proper_option(d - j, rng);
    if (!o) o = fc.random_proper_option(d - (3 - j), rng);
    if (o) fc.apply(*o);
  }
  return fc.complex();
}

namespace {

std::vector<std::string_view> split(std::string_view s, char sep, std::size_t max_parts) {
  std::vector<std::string_view> parts;
  while (parts.size() + 1 < max_parts) {
    const auto p = s.find(sep);
    if (p == std::string_view::npos) break;
    parts.push_back(s.substr(0, p));
    s = s.substr(p + 1);
  }
  parts.push_back(s);
  return parts;
}

std::uint64_t number(std::string_view s, std::string_view spec) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw Error(ErrorKind::InvalidSpec, "bad number '" + std::string(s) + "' in " + std::string(spec));
  return v;
}

int small(std::string_view s, std::string_view spec) {
  const auto v = number(s, spec);
  if (v > 64) throw Error(ErrorKind::InvalidSpec, "parameter too large in " + std::string(spec));
  return static_cast<int>(v);
}

const std::vector<std::string_view> kNames = {"simplex", "bd_simplex", "sd",    "susp",
                                              "saw_blade", "dunce_hat", "rp2_6", "perturbed_sphere"};

}  // namespace

bool looks_like_spec(std::string_view text) {
  const auto head = text.substr(0, text.find(':'));
  return std::find(kNames.begin(), kNames.end(), head) != kNames.end();
}

SimplicialComplex from_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  const auto head = spec.substr(0, colon);
  const auto rest = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  auto need_args = [&](bool want) {
    if (want == rest.empty() && want)
      throw Error(ErrorKind::InvalidSpec, "missing parameters in " + std::string(spec));
    if (!want && colon != std::string_view::npos)
      throw Error(ErrorKind::InvalidSpec, std::string(head) + " takes no parameters");
  };
  if (head == "simplex") {
    need_args(true);
    return simplex(small(rest, spec));
  }
  if (head == "bd_simplex") {
    need_args(true);
    return boundary_of_simplex(small(rest, spec));
  }
  if (head == "saw_blade") {
    need_args(true);
    return saw_blade(small(rest, spec));
  }
  if (head == "rp2_6") {
    need_args(false);
    return rp2_6();
  }
  if (head == "dunce_hat") {
    need_args(false);
    return dunce_hat();
  }
  if (head == "susp") {
    need_args(true);
    return suspension(from_spec(rest));
  }
  if (head == "sd") {
    need_args(true);
    const auto parts = split(rest, ':', 2);
    if (parts.size() != 2) throw Error(ErrorKind::InvalidSpec, "expected sd:k:<spec>");
    return iterated_subdivision(from_spec(parts[1]), small(parts[0], spec));
  }
  if (head == "perturbed_sphere") {
    need_args(true);
    const auto p = split(rest, ':', 5);
    if (p.size() != 5) throw Error(ErrorKind::InvalidSpec, "expected perturbed_sphere:d:add:one:mixed:seed");
    return perturbed_sphere(small(p[0], spec), number(p[1], spec), number(p[2], spec), number(p[3], spec),
                            number(p[4], spec));
  }
  throw Error(ErrorKind::InvalidSpec, "unknown complex specifier '" + std::string(spec) + "'");
}

}  // namespace plsphere
