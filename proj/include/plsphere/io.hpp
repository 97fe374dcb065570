#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "plsphere/complex.hpp"

namespace plsphere::io {

/// Text facet format: one facet per line, whitespace-separated vertex labels,
/// `#` comment lines, blank lines ignored.
SimplicialComplex parse_facets_text(std::string_view text);

/// JSON facet format: {"facets": [[...], ...]}.
SimplicialComplex parse_facets_json(std::string_view text);

/// Detects the format from the first non-blank character.
SimplicialComplex parse_facets(std::string_view text);

SimplicialComplex read_facet_file(const std::string& path);

void write_facets_text(std::ostream& out, const SimplicialComplex& k, std::string_view comment = {});
std::string facets_to_text(const SimplicialComplex& k, std::string_view comment = {});
void write_facet_file(const std::string& path, const SimplicialComplex& k, std::string_view comment = {});

}  // namespace plsphere::io
