#include "plsphere/io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "plsphere/error.hpp"

namespace plsphere::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

}  // namespace

SimplicialComplex parse_facets_text(std::string_view text) {
  std::vector<std::vector<Vertex>> facets;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (line.empty() || line.front() == '#') continue;
    std::vector<Vertex> facet;
    const char* p = line.data();
    const char* end = line.data() + line.size();
    while (p < end) {
      while (p < end && (*p == ' ' || *p == '\t')) ++p;
      if (p == end) break;
      std::uint64_t value = 0;
      auto [next, ec] = std::from_chars(p, end, value);
      if (ec != std::errc{} || (next < end && *next != ' ' && *next != '\t') || value > UINT32_MAX)
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_no) + ": expected non-negative integers");
      facet.push_back(static_cast<Vertex>(value));
      p = next;
    }
    facets.push_back(std::move(facet));
  }
  return SimplicialComplex::from_facets(facets);
}

SimplicialComplex parse_facets_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  if (!doc.is_object() || !doc.contains("facets") || !doc["facets"].is_array())
    throw Error(ErrorKind::Parse, "expected an object with a \"facets\" array");
  std::vector<std::vector<Vertex>> facets;
  for (const auto& f : doc["facets"]) {
    if (!f.is_array()) throw Error(ErrorKind::Parse, "each facet must be an array");
    std::vector<Vertex> facet;
    for (const auto& v : f) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() > UINT32_MAX)
        throw Error(ErrorKind::Parse, "vertex labels must be non-negative integers");
      facet.push_back(v.get<Vertex>());
    }
    facets.push_back(std::move(facet));
  }
  return SimplicialComplex::from_facets(facets);
}

SimplicialComplex parse_facets(std::string_view text) {
  const auto t = trim(text);
  if (!t.empty() && t.front() == '{') return parse_facets_json(text);
  return parse_facets_text(text);
}

SimplicialComplex read_facet_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_facets(buf.str());
}

void write_facets_text(std::ostream& out, const SimplicialComplex& k, std::string_view comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  for (const Face& f : k.facets()) out << f.to_string() << '\n';
}

std::string facets_to_text(const SimplicialComplex& k, std::string_view comment) {
  std::ostringstream out;
  write_facets_text(out, k, comment);
  return out.str();
}

void write_facet_file(const std::string& path, const SimplicialComplex& k, std::string_view comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  write_facets_text(out, k, comment);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

}  // namespace plsphere::io
