#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "plsphere/error.hpp"
#include "plsphere/generators.hpp"
#include "plsphere/io.hpp"

using namespace plsphere;

TEST_CASE("text facet format") {
  const auto k = io::parse_facets_text("# comment\n0 1 2\n\n  1 2 3  \n");
  CHECK(k == SimplicialComplex::from_facets({{0, 1, 2}, {1, 2, 3}}));
  CHECK_THROWS_AS(io::parse_facets_text("0 1 1\n"), Error);
  CHECK_THROWS_AS(io::parse_facets_text("0 -1 2\n"), Error);
  CHECK_THROWS_AS(io::parse_facets_text("0 x\n"), Error);
}

TEST_CASE("json facet format") {
  const auto k = io::parse_facets_json(R"({"facets": [[0,1,2],[1,2,3]]})");
  CHECK(k == SimplicialComplex::from_facets({{0, 1, 2}, {1, 2, 3}}));
  CHECK(io::parse_facets(R"({"facets": [[2,1]]})") == SimplicialComplex::from_facets({{1, 2}}));
  CHECK_THROWS_AS(io::parse_facets_json(R"({"facets": [[0,0]]})"), Error);
  CHECK_THROWS_AS(io::parse_facets_json(R"({"faces": []})"), Error);
}

TEST_CASE("write/read round trip for every generator") {
  const auto dir = std::filesystem::temp_directory_path() / "plsphere_io_test";
  std::filesystem::create_directories(dir);
  for (const char* spec : {"simplex:3", "bd_simplex:4", "rp2_6", "saw_blade:4", "dunce_hat", "susp:rp2_6",
                           "sd:1:bd_simplex:3", "perturbed_sphere:3:5:10:10:1"}) {
    const auto k = from_spec(spec);
    const auto path = (dir / "k.fct").string();
    io::write_facet_file(path, k, spec);
    CHECK(io::read_facet_file(path) == k);
    CHECK(from_spec(spec) == k);
  }
  std::filesystem::remove_all(dir);
  CHECK_THROWS_AS(io::read_facet_file("/nonexistent/plsphere/file"), Error);
}
