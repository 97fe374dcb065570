#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "plsphere/complex.hpp"

namespace plsphere {

/// Full d-simplex on vertices 0..d.
SimplicialComplex simplex(int d);
/// Boundary of the n-simplex: all n-subsets of {0..n}, dimension n-1.
SimplicialComplex boundary_of_simplex(int n);
/// Joins K with two new apexes labeled max+1 and max+2.
SimplicialComplex suspension(const SimplicialComplex& k);
/// The 6-vertex real projective plane.
SimplicialComplex rp2_6();

/// Disk whose boundary circle reads `word` (labels identified as given),
/// with an inner cycle joined to the boundary in a zig-zag. Positions in
/// `merges` fuse inner vertices p-1 and p; the inner polygon is fanned.
SimplicialComplex identified_disk(const std::vector<Vertex>& word, const std::vector<std::size_t>& merges);

/// k-bladed saw blade complex: 8 vertices for k=1 (dunce hat), 9 for
/// k=2, 3k for k>=3. Throws InvalidSpec for k < 1.
SimplicialComplex saw_blade(int k);
inline SimplicialComplex dunce_hat() { return saw_blade(1); }

SimplicialComplex iterated_subdivision(const SimplicialComplex& k, int times);

/// boundary_of_simplex(d+1) after `add_vertices` random 0-moves,
/// `one_moves` random proper 1-moves and `mixed_rounds` random proper 1- or
/// 2-moves.
SimplicialComplex perturbed_sphere(int d, std::uint64_t add_vertices, std::uint64_t one_moves,
                                   std::uint64_t mixed_rounds, std::uint64_t seed);

/// Built-in specifiers: simplex:d, bd_simplex:n, sd:k:<spec>, susp:<spec>,
/// saw_blade:k, dunce_hat, rp2_6, perturbed_sphere:d:add:one:mixed:seed.
SimplicialComplex from_spec(std::string_view spec);
/// True if `text` starts with a known specifier name.
bool looks_like_spec(std::string_view text);

}  // namespace plsphere
