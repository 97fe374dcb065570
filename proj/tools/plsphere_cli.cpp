// Command-line front end: generate, check, morse, spectrum, homology, pi1,
// flips, recognize.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "plsphere/complex.hpp"
#include "plsphere/error.hpp"
#include "plsphere/flips.hpp"
#include "plsphere/generators.hpp"
#include "plsphere/hasse.hpp"
#include "plsphere/homology.hpp"
#include "plsphere/io.hpp"
#include "plsphere/morse.hpp"
#include "plsphere/pi1.hpp"
#include "plsphere/recognizer.hpp"

using namespace plsphere;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitCapacity = 70;
constexpr int kExitIo = 74;

struct Options {
  std::string format = "text";
  int verbosity = 0;
  Capacity capacity;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::string input;
  std::string output;
  std::string spec;
  std::uint64_t seed = 0;
  std::uint64_t rounds = 0;
  std::string strategy = "random-random";
  // morse
  std::string certificate;
  std::string snapshot;
  // spectrum
  bool no_timing = false;
  // homology
  std::string coefficients = "Z";
  bool reduced = false;
  bool via_morse = false;
  int export_dim = 0;
  std::string export_path;
  // pi1
  std::uint64_t budget = kDefaultTietzeBudget;
  std::string presentation_in;
  std::string presentation_out;
  // flips
  double alpha = 0.1, beta = 10, gamma = 2;
  std::vector<double> heat_dist;
  std::string trajectory;
  // recognize
  std::uint64_t morse_rounds = 100;
  std::uint64_t flip_rounds = 1'000'000;
  std::uint64_t link_morse_rounds = 20;
  std::string links = "full";
  bool no_morse = false, no_homology = false, no_pi1 = false, no_flips = false;
  std::string certificate_dir;
};

std::string source_name(const Options& o) { return o.spec.empty() ? o.input : o.spec; }

SimplicialComplex load(const Options& o) {
  const std::string src = source_name(o);
  if (src.empty()) throw Error(ErrorKind::Io, "no input complex given");
  if (fs::exists(src)) return io::read_facet_file(src);
  if (looks_like_spec(src)) return from_spec(src);
  throw Error(ErrorKind::Io, "cannot open " + src);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path);
}

void emit(const Options& o, const std::string& text) {
  if (o.output.empty())
    std::cout << text;
  else
    write_text(o.output, text);
}

json face_json(const Face& f) { return json(std::vector<Vertex>(f.begin(), f.end())); }

json integer_json(const Integer& x) {
  if (x >= 0 && x <= std::numeric_limits<std::uint64_t>::max()) return json(static_cast<std::uint64_t>(x));
  return json(x.str());
}

json homology_json(const HomologyGroups& h) {
  json betti = json::array(), torsion = json::array();
  for (const auto& g : h.groups) {
    betti.push_back(g.betti);
    json t = json::array();
    for (const auto& x : g.torsion) t.push_back(integer_json(x));
    torsion.push_back(t);
  }
  return {{"coefficients", h.coefficients.to_string()}, {"reduced", h.reduced}, {"betti", betti}, {"torsion", torsion}};
}

Coefficients parse_coefficients(const std::string& s) {
  if (s == "Z") return Coefficients::integers();
  if (s == "Q") return Coefficients::rationals();
  if (s.rfind("GF", 0) == 0) {
    std::string p = s.substr(2);
    if (!p.empty() && p.front() == '(' && p.back() == ')') p = p.substr(1, p.size() - 2);
    try {
      return Coefficients::prime_field(static_cast<std::uint32_t>(std::stoul(p)));
    } catch (const std::logic_error&) {
    }
  }
  throw Error(ErrorKind::InvalidSpec, "coefficients must be Z, Q or GFp");
}

std::vector<std::uint64_t> as_vector(const FVector& f) { return f.f; }

// ---- commands -----------------------------------------------------------------

int cmd_generate(const Options& o) {
  const SimplicialComplex k = from_spec(o.spec.empty() ? o.input : o.spec);
  std::string text;
  if (o.format == "json") {
    text = json{{"facets", k.facet_lists()}}.dump() + "\n";
  } else {
    text = io::facets_to_text(k, "generated by plsphere generate " + source_name(o));
  }
  emit(o, text);
  return 0;
}

int cmd_check(const Options& o) {
  const SimplicialComplex k = load(o);
  const FVector f = f_vector(k);
  const bool pure = is_pure(k);
  PseudomanifoldCheck pm;
  pm.ok = false;
  if (pure) pm = is_closed_pseudomanifold(k);
  const bool connected = is_connected(k);
  const bool ok = pure && pm.ok && (k.dim() < 1 || connected);
  if (o.format == "json") {
    json j = {{"command", "check"},
              {"input", source_name(o)},
              {"dim", k.dim()},
              {"n_vertices", k.n_vertices()},
              {"n_facets", k.n_facets()},
              {"f_vector", as_vector(f)},
              {"euler_characteristic", f.euler_characteristic()},
              {"pure", pure},
              {"pseudomanifold", pm.ok},
              {"connected", connected},
              {"ridge_witness", pm.ridge ? face_json(*pm.ridge) : json(nullptr)}};
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "dim: " << k.dim() << "\nvertices: " << k.n_vertices() << "\nfacets: " << k.n_facets()
        << "\nf-vector: " << f.to_string() << "\neuler characteristic: " << f.euler_characteristic()
        << "\npure: " << (pure ? "yes" : "no") << "\nclosed pseudomanifold: " << (pm.ok ? "yes" : "no");
    if (pm.ridge) out << " (ridge {" << pm.ridge->to_string() << "} in " << pm.facet_count << " facets)";
    out << "\nconnected: " << (connected ? "yes" : "no") << '\n';
    emit(o, out.str());
  }
  return ok ? 0 : 1;
}

int cmd_morse(const Options& o) {
  const SimplicialComplex k = load(o);
  HasseDiagram h = HasseDiagram::build(k, o.capacity);
  MorseOptions mo;
  mo.capture_stuck = !o.snapshot.empty();
  const Strategy s = parse_strategy(o.strategy);
  const MorseResult r = random_discrete_morse(h, s, o.seed, mo);
  const bool acyclic = verify_acyclic_matching(h, r);
  if (!o.certificate.empty()) write_text(o.certificate, matching_certificate(h, r));
  if (!o.snapshot.empty() && r.stuck_snapshot) io::write_facet_file(o.snapshot, *r.stuck_snapshot, "stuck complex");
  if (o.format == "json") {
    json j = {{"command", "morse"},
              {"input", source_name(o)},
              {"strategy", std::string(to_string(s))},
              {"seed", o.seed},
              {"vector", r.vector.c},
              {"spherical", is_spherical(r.vector)},
              {"collapsible", is_collapsible_witness(r.vector)},
              {"acyclic", acyclic},
              {"matched_pairs", r.matching.size()},
              {"certificate", o.certificate.empty() ? json(nullptr) : json(o.certificate)},
              {"snapshot", (o.snapshot.empty() || !r.stuck_snapshot) ? json(nullptr) : json(o.snapshot)}};
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "vector: " << r.vector.to_string() << "\nstrategy: " << to_string(s) << "\nseed: " << o.seed
        << "\nspherical: " << (is_spherical(r.vector) ? "yes" : "no")
        << "\ncollapsible: " << (is_collapsible_witness(r.vector) ? "yes" : "no")
        << "\nacyclic matching: " << (acyclic ? "yes" : "no") << '\n';
    emit(o, out.str());
  }
  return 0;
}

int cmd_spectrum(const Options& o) {
  const SimplicialComplex k = load(o);
  const Strategy s = parse_strategy(o.strategy);
  const Spectrum sp = morse_spectrum(k, s, o.rounds, o.seed, o.threads, o.capacity);
  if (o.format == "json") {
    json entries = json::array();
    for (const auto& e : sp.entries) entries.push_back({{"vector", e.vector.c}, {"count", e.count}});
    json j = {{"command", "spectrum"},
              {"input", source_name(o)},
              {"strategy", std::string(to_string(s))},
              {"seed", o.seed},
              {"rounds", o.rounds},
              {"entries", entries},
              {"seconds", o.no_timing ? json(nullptr) : json(sp.seconds_total)}};
    emit(o, j.dump(2) + "\n");
  } else {
    emit(o, sp.to_tsv(!o.no_timing));
  }
  return 0;
}

int cmd_homology(const Options& o) {
  const SimplicialComplex k = load(o);
  const Coefficients c = parse_coefficients(o.coefficients);
  HasseDiagram h = HasseDiagram::build(k, o.capacity);
  if (!o.export_path.empty()) {
    std::ofstream out(o.export_path);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + o.export_path);
    boundary_matrix(h, o.export_dim).write_triplets(out);
  }
  HomologyGroups hg;
  json residual = nullptr;
  if (o.via_morse) {
    if (c.kind != CoefficientKind::Integers || o.reduced)
      throw Error(ErrorKind::InvalidSpec, "--via-morse computes unreduced integral homology only");
    const MorseResult r = random_discrete_morse(h, parse_strategy(o.strategy), o.seed);
    MatchingHomology mh = homology_with_matching(h, r);
    hg = std::move(mh.groups);
    residual = json::array();
    for (auto [rows, cols] : mh.residual_shape) residual.push_back({rows, cols});
  } else {
    hg = homology(h, c, o.reduced);
  }
  if (o.format == "json") {
    json j = homology_json(hg);
    j["command"] = "homology";
    j["input"] = source_name(o);
    j["spherical"] = is_spherical_homology(homology(h, Coefficients::integers(), true), k.dim());
    if (!residual.is_null()) {
      j["residual_shape"] = residual;
      j["seed"] = o.seed;
    }
    emit(o, j.dump(2) + "\n");
  } else {
    emit(o, hg.to_text());
  }
  return 0;
}

int cmd_pi1(const Options& o) {
  GroupPresentation p;
  if (!o.presentation_in.empty()) {
    std::ifstream in(o.presentation_in);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + o.presentation_in);
    std::stringstream buf;
    buf << in.rdbuf();
    p = GroupPresentation::parse(buf.str());
  } else {
    p = pi1_presentation(load(o), o.seed);
  }
  if (!o.presentation_out.empty()) write_text(o.presentation_out, p.to_text());
  const TrivialityVerdict v = triviality_verdict(p, o.budget);
  const auto& q = v.simplification.presentation;
  if (o.format == "json") {
    json j = {{"command", "pi1"},
              {"input", o.presentation_in.empty() ? source_name(o) : o.presentation_in},
              {"seed", o.seed},
              {"generators", p.generators},
              {"relators", p.relators.size()},
              {"simplified_generators", q.generators},
              {"simplified_relators", q.relators.size()},
              {"verdict", std::string(to_string(v.kind))},
              {"witness", v.witness ? json(v.witness->to_string()) : json(nullptr)},
              {"operations", v.simplification.operations},
              {"budget_exhausted", v.simplification.budget_exhausted}};
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "presentation: " << p.generators << " generators, " << p.relators.size() << " relators (tree seed "
        << o.seed << ")\nsimplified: " << q.generators << " generators, " << q.relators.size()
        << " relators\nverdict: " << to_string(v.kind);
    if (v.witness) out << " (abelianization " << v.witness->to_string() << ")";
    out << "\noperations: " << v.simplification.operations << '\n';
    emit(o, out.str());
  }
  return 0;
}

FlipSchedule schedule_from(const Options& o) {
  FlipSchedule s;
  s.alpha = o.alpha;
  s.beta = o.beta;
  s.gamma = o.gamma;
  s.heat_distribution = o.heat_dist;
  return s;
}

int cmd_flips(const Options& o) {
  const SimplicialComplex k = load(o);
  const FlipResult r = bistellar_simplify(k, o.seed, o.rounds, schedule_from(o));
  if (!o.trajectory.empty()) write_text(o.trajectory, r.trajectory_tsv());
  if (!o.certificate.empty()) io::write_facet_file(o.certificate, r.complex, "simplified complex");
  if (o.format == "json") {
    json j = {{"command", "flips"},
              {"input", source_name(o)},
              {"seed", o.seed},
              {"rounds", r.rounds},
              {"moves", r.moves},
              {"reached_simplex_boundary", r.reached_simplex_boundary},
              {"initial_f", as_vector(r.initial_f)},
              {"best_f", as_vector(r.best_f)},
              {"final_f", as_vector(f_vector(r.complex))},
              {"trajectory", o.trajectory.empty() ? json(nullptr) : json(o.trajectory)},
              {"trajectory_truncated", r.trajectory_truncated}};
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "seed: " << o.seed << "\nrounds: " << r.rounds << "\nmoves: " << r.moves
        << "\ninitial f: " << r.initial_f.to_string() << "\nfinal f: " << f_vector(r.complex).to_string()
        << "\nreached simplex boundary: " << (r.reached_simplex_boundary ? "yes" : "no") << '\n';
    emit(o, out.str());
  }
  return 0;
}

json write_certificate_files(const Options& o, const SimplicialComplex& k, const Verdict& v) {
  json files = json::object();
  if (o.certificate_dir.empty()) return files;
  fs::create_directories(o.certificate_dir);
  auto path = [&](const std::string& name) { return (fs::path(o.certificate_dir) / name).string(); };
  const Certificate& c = v.certificate;
  if (c.morse) {
    const HasseDiagram h = HasseDiagram::build(k, o.capacity);
    write_text(path("matching.txt"), matching_certificate(h, *c.morse));
    files["matching"] = path("matching.txt");
  }
  if (c.homology) {
    write_text(path("homology.txt"), c.homology->to_text());
    files["homology"] = path("homology.txt");
  }
  if (c.pi1) {
    std::string text = c.pi1->simplification.presentation.to_text();
    for (const auto& line : c.pi1->simplification.trace) text += "# " + line + "\n";
    write_text(path("pi1.txt"), text);
    files["pi1"] = path("pi1.txt");
  }
  if (c.flips) {
    write_text(path("trajectory.tsv"), c.flips->trajectory_tsv());
    files["trajectory"] = path("trajectory.tsv");
  }
  if (c.link) {
    io::write_facet_file(path("link.txt"), *c.link, "link of {" + (c.face ? c.face->to_string() : "") + "}");
    files["link"] = path("link.txt");
  }
  return files;
}

int cmd_recognize(const Options& o) {
  const SimplicialComplex k = load(o);
  RecognitionConfig cfg;
  cfg.morse_rounds = o.morse_rounds;
  cfg.flip_rounds = o.flip_rounds;
  cfg.strategy = parse_strategy(o.strategy);
  cfg.seed = o.seed;
  cfg.pi1_budget = o.budget;
  cfg.link_check_mode = parse_link_check_mode(o.links);
  cfg.link_morse_rounds = o.link_morse_rounds;
  cfg.run_morse = !o.no_morse;
  cfg.run_homology = !o.no_homology;
  cfg.run_pi1 = !o.no_pi1;
  cfg.run_flips = !o.no_flips;
  cfg.schedule = schedule_from(o);
  cfg.threads = o.threads;
  cfg.capacity = o.capacity;
  const Verdict v = recognize_sphere(k, cfg);
  const json files = write_certificate_files(o, k, v);
  if (o.format == "json") {
    json cert = {{"kind", std::string(to_string(v.certificate.kind))},
                 {"detail", v.certificate.detail},
                 {"face", v.certificate.face ? face_json(*v.certificate.face) : json(nullptr)},
                 {"files", files}};
    if (v.certificate.homology) cert["homology"] = homology_json(*v.certificate.homology);
    if (v.certificate.morse) cert["morse_vector"] = v.certificate.morse->vector.c;
    json j = {{"command", "recognize"},
              {"input", source_name(o)},
              {"answer", std::string(to_string(v.answer))},
              {"exit_code", exit_code(v.answer)},
              {"certificate", cert},
              {"log", v.log},
              {"config",
               {{"seed", cfg.seed},
                {"strategy", std::string(to_string(cfg.strategy))},
                {"morse_rounds", cfg.morse_rounds},
                {"flip_rounds", cfg.flip_rounds},
                {"pi1_budget", cfg.pi1_budget},
                {"links", std::string(to_string(cfg.link_check_mode))}}}};
    emit(o, j.dump(2) + "\n");
  } else {
    std::ostringstream out;
    out << "answer: " << to_string(v.answer) << "\ncertificate: " << to_string(v.certificate.kind);
    if (!v.certificate.detail.empty()) out << " (" << v.certificate.detail << ")";
    out << "\nseed: " << cfg.seed << '\n';
    for (const auto& line : v.log) out << "  " << line << '\n';
    for (const auto& [name, p] : files.items()) out << name << ": " << p.get<std::string>() << '\n';
    emit(o, out.str());
  }
  return exit_code(v.answer);
}

void add_input(CLI::App* sub, Options& o) {
  sub->add_option("input", o.input, "Facet file or complex specifier");
  sub->add_option("--complex", o.spec, "Complex specifier, e.g. bd_simplex:5 or sd:2:bd_simplex:4");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PL sphere recognition toolkit"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json", "tsv"}));
  app.add_option("--threads", o.threads, "Worker threads");
  app.add_option("--max-faces", o.capacity.max_faces, "Face-count limit for Hasse diagrams");
  app.add_flag("-v,--verbose", o.verbosity, "Echo the resolved configuration to stderr");
  const auto strategies = CLI::IsMember({"random-random", "random-lex-first", "random-lex-last"});

  auto* gen = app.add_subcommand("generate", "Write a built-in complex as a facet file");
  gen->add_option("spec", o.input, "Complex specifier")->required();
  gen->add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* check = app.add_subcommand("check", "Purity, pseudomanifold and connectivity checks");
  add_input(check, o);

  auto* morse = app.add_subcommand("morse", "One random discrete Morse run");
  add_input(morse, o);
  morse->add_option("--strategy", o.strategy)->check(strategies);
  morse->add_option("--seed", o.seed);
  morse->add_option("--certificate", o.certificate, "Write the matching certificate here");
  morse->add_option("--snapshot", o.snapshot, "Write the first stuck subcomplex here");

  auto* spectrum = app.add_subcommand("spectrum", "Discrete Morse spectrum over many seeds");
  add_input(spectrum, o);
  spectrum->add_option("--strategy", o.strategy)->check(strategies);
  spectrum->add_option("--rounds", o.rounds)->required();
  spectrum->add_option("--seed", o.seed);
  spectrum->add_flag("--no-timing", o.no_timing, "Omit wall-clock time (byte-reproducible output)");
  spectrum->add_option("-o,--output", o.output);

  auto* hom = app.add_subcommand("homology", "Simplicial homology");
  add_input(hom, o);
  hom->add_option("--coefficients", o.coefficients, "Z, Q or GFp");
  hom->add_flag("--reduced", o.reduced);
  hom->add_flag("--via-morse", o.via_morse, "Use a random Morse matching as pivot schedule");
  hom->add_option("--strategy", o.strategy)->check(strategies);
  hom->add_option("--seed", o.seed);
  hom->add_option("--export-dim", o.export_dim, "Boundary map to export");
  hom->add_option("--export", o.export_path, "Write boundary matrix triplets here");

  auto* pi1 = app.add_subcommand("pi1", "Fundamental group presentation and triviality test");
  add_input(pi1, o);
  pi1->add_option("--seed", o.seed, "Spanning tree seed");
  pi1->add_option("--budget", o.budget, "Tietze operation budget");
  pi1->add_option("--presentation", o.presentation_in, "Read a presentation instead of a complex");
  pi1->add_option("--write-presentation", o.presentation_out, "Write the unsimplified presentation here");

  auto* flips = app.add_subcommand("flips", "Bistellar flip simplification");
  add_input(flips, o);
  flips->add_option("--rounds", o.rounds)->default_val(100000);
  flips->add_option("--seed", o.seed);
  flips->add_option("--cool-threshold-alpha", o.alpha);
  flips->add_option("--cool-threshold-beta", o.beta);
  flips->add_option("--heat-gamma", o.gamma);
  flips->add_option("--heat-dist", o.heat_dist, "Heating weights, highest move dimension first")->delimiter(',');
  flips->add_option("--trajectory", o.trajectory, "Write the move trajectory (TSV) here");
  flips->add_option("-o,--output", o.certificate, "Write the simplified complex here");

  auto* rec = app.add_subcommand("recognize", "Sphere recognition (exit 0 YES, 1 NO, 2 UNDECIDED, 3 TOP only)");
  add_input(rec, o);
  rec->add_option("--morse-rounds", o.morse_rounds);
  rec->add_option("--flip-rounds", o.flip_rounds);
  rec->add_option("--link-morse-rounds", o.link_morse_rounds);
  rec->add_option("--strategy", o.strategy)->check(strategies);
  rec->add_option("--seed", o.seed);
  rec->add_option("--pi1-budget", o.budget);
  rec->add_option("--links", o.links)->check(CLI::IsMember({"full", "vertices", "skip"}));
  rec->add_flag("--no-morse", o.no_morse);
  rec->add_flag("--no-homology", o.no_homology);
  rec->add_flag("--no-pi1", o.no_pi1);
  rec->add_flag("--no-flips", o.no_flips);
  rec->add_option("--cool-threshold-alpha", o.alpha);
  rec->add_option("--cool-threshold-beta", o.beta);
  rec->add_option("--heat-gamma", o.gamma);
  rec->add_option("--heat-dist", o.heat_dist)->delimiter(',');
  rec->add_option("--certificate-dir", o.certificate_dir, "Write certificate files here");

  for (auto* sub : app.get_subcommands({})) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (o.verbosity > 0) {
    std::cerr << "plsphere " << app.get_subcommands().front()->get_name() << " input=" << source_name(o)
              << " seed=" << o.seed << " format=" << o.format << " threads=" << o.threads << '\n';
  }

  try {
    if (*gen) return cmd_generate(o);
    if (*check) return cmd_check(o);
    if (*morse) return cmd_morse(o);
    if (*spectrum) return cmd_spectrum(o);
    if (*hom) return cmd_homology(o);
    if (*pi1) return cmd_pi1(o);
    if (*flips) return cmd_flips(o);
    if (*rec) return cmd_recognize(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::Io: return kExitIo;
      case ErrorKind::CapacityExceeded: return kExitCapacity;
      case ErrorKind::InvalidSpec: return kExitUsage;
      default: return kExitData;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
