#include <doctest.h>

#include <map>

#include "plsphere/error.hpp"
#include "plsphere/generators.hpp"
#include "plsphere/homology.hpp"

using namespace plsphere;

namespace {

std::map<Face, int> edge_degrees(const SimplicialComplex& k) {
  std::map<Face, int> deg;
  for (const auto& f : k.facets())
    for (std::size_t i = 0; i < f.size(); ++i) ++deg[f.without_position(i)];
  return deg;
}

}  // namespace

TEST_CASE("basic generators") {
  CHECK(simplex(0).n_vertices() == 1);
  CHECK(f_vector(simplex(3)).f == std::vector<std::uint64_t>{4, 6, 4, 1});
  CHECK(boundary_of_simplex(4).dim() == 3);
  CHECK(boundary_of_simplex(4).n_facets() == 5);
  CHECK_THROWS_AS(simplex(-1), Error);
  CHECK_THROWS_AS(boundary_of_simplex(0), Error);
  const auto s = suspension(boundary_of_simplex(2));
  CHECK(f_vector(s).f == std::vector<std::uint64_t>{5, 9, 6});
  CHECK(s.vertices().back() == 4);
  CHECK(rp2_6().n_facets() == 10);
}

TEST_CASE("saw blades: vertex counts, no free edges, acyclic, not manifolds") {
  const std::vector<std::size_t> expected{8, 9, 9, 12, 15, 18};
  for (int k = 1; k <= 6; ++k) {
    const auto c = saw_blade(k);
    CHECK(c.n_vertices() == expected[k - 1]);
    CHECK(c.dim() == 2);
    CHECK(is_pure(c));
    bool has_triple = false;
    for (const auto& [e, n] : edge_degrees(c)) {
      CHECK(n >= 2);
      has_triple |= n >= 3;
    }
    CHECK(has_triple);
    for (const auto& g : homology(c, {}, true).groups) CHECK(g.is_zero());
  }
  CHECK(dunce_hat() == saw_blade(1));
  CHECK_THROWS_AS(saw_blade(0), Error);
}

TEST_CASE("identified disk rejects bad words") {
  CHECK_THROWS_AS(identified_disk({0, 0, 1}, {}), Error);
  CHECK_THROWS_AS(identified_disk({0, 1}, {}), Error);
  CHECK_THROWS_AS(identified_disk({0, 1, 2}, {0, 1, 2}), Error);
  const auto disk = identified_disk({0, 1, 2, 3}, {});
  CHECK(euler_characteristic(disk) == 1);
}

TEST_CASE("iterated subdivision and specifiers") {
  CHECK(f_vector(iterated_subdivision(boundary_of_simplex(4), 3)).f ==
        std::vector<std::uint64_t>{12600, 81720, 138240, 69120});
  CHECK(from_spec("sd:2:bd_simplex:4") == iterated_subdivision(boundary_of_simplex(4), 2));
  CHECK(from_spec("susp:rp2_6") == suspension(rp2_6()));
  CHECK(from_spec("simplex:3") == simplex(3));
  CHECK(looks_like_spec("bd_simplex:4"));
  CHECK_FALSE(looks_like_spec("file.fct"));
  for (const char* bad : {"simplex", "simplex:x", "rp2_6:1", "sd:1", "perturbed_sphere:3:1", "torus", "simplex:99"})
    CHECK_THROWS_AS(from_spec(bad), Error);
}

TEST_CASE("perturbed spheres stay spheres") {
  const auto k = perturbed_sphere(3, 20, 200, 0, 0);
  CHECK(k.n_vertices() == 25);
  CHECK(is_closed_pseudomanifold(k).ok);
  CHECK(is_spherical_homology(k));
  CHECK(perturbed_sphere(3, 20, 200, 0, 0) == k);
  CHECK_FALSE(perturbed_sphere(3, 20, 200, 0, 1) == k);
  const auto m = perturbed_sphere(4, 5, 10, 30, 2);
  CHECK(is_spherical_homology(m));
}

TEST_CASE("saw blades for k >= 3: interior edges in 2 triangles, boundary edges in 3") {
  for (int k = 3; k <= 6; ++k) {
    const auto c = saw_blade(k);
    for (const auto& [e, n] : edge_degrees(c)) {
      const bool boundary = e[0] < static_cast<Vertex>(k) && e[1] < static_cast<Vertex>(k);
      CHECK(n == (boundary ? 3 : 2));
    }
  }
}

TEST_CASE("stellar subdivisions only: closed-form f-vector") {
  for (int d = 2; d <= 5; ++d) {
    for (std::uint64_t add : {0u, 1u, 7u}) {
      const auto f = f_vector(perturbed_sphere(d, add, 0, 0, 3)).f;
      // bd Delta^{d+1}: C(d+2, i+1) faces; a stellar move adds C(d+1, i) i-faces (i < d) and d facets
      std::vector<std::uint64_t> want(d + 1);
      auto binom = [](std::uint64_t n, std::uint64_t r) {
        std::uint64_t b = 1;
        for (std::uint64_t i = 1; i <= r; ++i) b = b * (n - r + i) / i;
        return b;
      };
      for (int i = 0; i <= d; ++i) want[i] = binom(d + 2, i + 1) + add * (i < d ? binom(d + 1, i) : d);
      CHECK(f == want);
    }
  }
}
