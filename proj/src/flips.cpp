#include "plsphere/flips.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include "plsphere/error.hpp"

namespace plsphere {

void FlipComplex::IndexedSet::insert(const Face& f) {
  if (pos.count(f)) return;
  pos.emplace(f, items.size());
  items.push_back(f);
}

void FlipComplex::IndexedSet::erase(const Face& f) {
  auto it = pos.find(f);
  if (it == pos.end()) return;
  const std::size_t i = it->second;
  pos.erase(it);
  if (i + 1 != items.size()) {
    items[i] = std::move(items.back());
    pos[items[i]] = i;
  }
  items.pop_back();
}

void FlipComplex::IndexedSet::swap_items(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap(items[a], items[b]);
  pos[items[a]] = a;
  pos[items[b]] = b;
}

FlipComplex::FlipComplex(const SimplicialComplex& k) {
  const auto check = is_closed_pseudomanifold(k);
  if (!check.ok) throw Error(ErrorKind::NotPseudomanifold, "flips need a closed pseudomanifold");
  d_ = k.dim();
  f_.assign(d_ + 1, 0);
  options_.resize(d_ + 1);
  for (const Face& f : k.facets()) add_facet(f);
  next_label_ = k.vertices().empty() ? 0 : k.vertices().back() + 1;
}

FVector FlipComplex::f_vector() const {
  FVector v;
  v.f = f_;
  return v;
}

SimplicialComplex FlipComplex::complex() const {
  return SimplicialComplex::from_faces(std::vector<Face>(facets_.begin(), facets_.end()));
}

bool FlipComplex::is_simplex_boundary() const {
  return f_[0] == static_cast<std::uint64_t>(d_ + 2) && facets_.size() == static_cast<std::size_t>(d_ + 2);
}

std::vector<std::vector<Face>> FlipComplex::raw_options() const {
  std::vector<std::vector<Face>> out;
  for (const auto& s : options_) {
    out.push_back(s.items);
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

bool FlipComplex::is_raw_option(const Face& a) const {
  return a.dim() >= 0 && a.dim() <= d_ && options_[a.dim()].pos.count(a) > 0;
}

void FlipComplex::refresh(const Face& s, std::uint32_t count) {
  auto& set = options_[s.dim()];
  if (count == static_cast<std::uint32_t>(d_ - s.dim() + 1))
    set.insert(s);
  else
    set.erase(s);
}

void FlipComplex::add_facet(const Face& f) {
  facets_.insert(f);
  for (Vertex v : f) star_[v].insert(f);
  const std::size_t n = f.size();
  std::vector<Vertex> sub;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    sub.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(f[i]);
    Face s = Face::from_sorted(sub);
    auto& c = count_[s];
    if (c++ == 0) ++f_[s.dim()];
    refresh(s, c);
  }
}

void FlipComplex::remove_facet(const Face& f) {
  facets_.erase(f);
  for (Vertex v : f) {
    auto it = star_.find(v);
    it->second.erase(f);
    if (it->second.empty()) star_.erase(it);
  }
  const std::size_t n = f.size();
  std::vector<Vertex> sub;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    sub.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) sub.push_back(f[i]);
    Face s = Face::from_sorted(sub);
    auto it = count_.find(s);
    if (--it->second == 0) {
      count_.erase(it);
      --f_[s.dim()];
      options_[s.dim()].erase(s);
    } else {
      refresh(s, it->second);
    }
  }
}

std::vector<Face> FlipComplex::facets_containing(const Face& a) const {
  std::vector<Face> out;
  auto it = star_.find(a[0]);
  if (it == star_.end()) return out;
  for (const Face& f : it->second)
    if (a.is_subset_of(f)) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

FlipOption FlipComplex::option(const Face& a) const {
  if (!is_raw_option(a)) throw Error(ErrorKind::StaleOption, "{" + a.to_string() + "} is not a raw option");
  if (a.dim() == d_) return {a, Face{next_label_}};
  std::vector<Vertex> link;
  for (const Face& f : facets_containing(a))
    for (Vertex v : f)
      if (!a.contains(v)) link.push_back(v);
  std::sort(link.begin(), link.end());
  link.erase(std::unique(link.begin(), link.end()), link.end());
  return {a, Face::from_sorted(std::move(link))};
}

bool FlipComplex::stale(const FlipOption& o) const {
  if (!is_raw_option(o.face)) return true;
  if (o.face.dim() == d_) return o.replacement.size() != 1 || count_.count(Face{o.replacement[0]}) > 0;
  return option(o.face).replacement != o.replacement;
}

bool FlipComplex::is_proper(const FlipOption& o) const {
  if (stale(o)) throw Error(ErrorKind::StaleOption, "option {" + o.face.to_string() + "} no longer applies");
  if (o.face.dim() == d_) return true;
  if (o.replacement.size() != static_cast<std::size_t>(d_ - o.face.dim() + 1)) return false;
  return count_.count(o.replacement) == 0;
}

FlipOption FlipComplex::apply(const FlipOption& o) {
  if (!is_proper(o)) throw Error(ErrorKind::ImproperMove, "move on {" + o.face.to_string() + "} is not proper");
  const Face& a = o.face;
  const Face& b = o.replacement;
  std::vector<Face> removed, added;
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::vector<Vertex> v(a.begin(), a.end());
    for (std::size_t j = 0; j < b.size(); ++j)
      if (j != i) v.push_back(b[j]);
    removed.emplace_back(std::move(v));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<Vertex> v(b.begin(), b.end());
    for (std::size_t j = 0; j < a.size(); ++j)
      if (j != i) v.push_back(a[j]);
    added.emplace_back(std::move(v));
  }
  for (const Face& f : removed) remove_facet(f);
  for (const Face& f : added) add_facet(f);
  for (Vertex v : b) next_label_ = std::max(next_label_, v + 1);
  return {b, a};
}

std::optional<FlipOption> FlipComplex::random_proper_option(int i, Rng& rng) {
  if (i < 0 || i > d_) return std::nullopt;
  auto& set = options_[i];
  const std::size_t n = set.items.size();
  for (std::size_t t = 0; t < n; ++t) {
    set.swap_items(t, t + rng.below(n - t));
    FlipOption o = option(set.items[t]);
    if (is_proper(o)) return o;
  }
  return std::nullopt;
}

std::vector<std::vector<Face>> raw_options(const SimplicialComplex& k) { return FlipComplex(k).raw_options(); }

bool is_proper(const SimplicialComplex& k, const FlipOption& o) { return FlipComplex(k).is_proper(o); }

bool reached_simplex_boundary(const SimplicialComplex& k) {
  if (k.is_void() || !is_pure(k)) return false;
  const auto d = static_cast<std::size_t>(k.dim());
  return k.n_vertices() == d + 2 && k.n_facets() == d + 2;
}

std::vector<double> default_heat_distribution(int d) {
  if (d == 4) return {10, 10, 1};
  const int n = std::max(1, (d + 1) / 2);
  return std::vector<double>(n, 1.0);
}

std::string FlipResult::trajectory_tsv() const {
  std::ostringstream out;
  out << "round\tmove_dim\tface\treplacement\tf_vector\n";
  for (const auto& m : trajectory)
    out << m.round << '\t' << m.move_dim << (m.undo ? "u" : "") << '\t' << m.option.face.to_string() << '\t'
        << m.option.replacement.to_string() << '\t' << m.f_after.to_string() << '\n';
  if (trajectory_truncated) out << "# truncated\n";
  return out.str();
}

namespace {

class Annealer {
 public:
  Annealer(const SimplicialComplex& k, std::uint64_t seed, const FlipSchedule& schedule, const FlipRunOptions& opts)
      : fc_(k), rng_(seed), schedule_(schedule), opts_(opts) {
    if (schedule_.heat_distribution.empty()) schedule_.heat_distribution = default_heat_distribution(fc_.dim());
    for (double w : schedule_.heat_distribution)
      if (!(w >= 0)) throw Error(ErrorKind::InvalidSpec, "heat weights must be non-negative");
    heat_total_ = 0;
    for (double w : schedule_.heat_distribution) heat_total_ += w;
    if (heat_total_ <= 0) throw Error(ErrorKind::InvalidSpec, "heat distribution has no positive weight");
    result_.initial_f = fc_.f_vector();
    result_.best_f = result_.initial_f;
  }

  FlipResult run(std::uint64_t max_rounds) {
    const int d = fc_.dim();
    std::uint64_t idle = 0, heating = 0;
    std::uint64_t round = 0;
    while (round < max_rounds && !fc_.is_simplex_boundary()) {
      ++round;
      if (heating > 0) {
        --heating;
        const int j = draw_heating_dimension();
        if (auto o = fc_.random_proper_option(d - j, rng_)) {
          apply(*o, round);
          improved();
        }
        continue;
      }
      const FVector before = fc_.f_vector();
      bool moved = false;
      for (int j = d; j >= (d + 1) / 2 && !moved; --j) {
        if (auto o = fc_.random_proper_option(d - j, rng_)) {
          apply(*o, round);
          moved = true;
        }
      }
      improved();
      if (moved && fc_.f_vector() < before) {
        idle = 0;
      } else if (++idle >= threshold()) {
        heating = static_cast<std::uint64_t>(std::llround(schedule_.gamma * static_cast<double>(threshold())));
        idle = 0;
      }
    }
    result_.rounds = round;
    result_.reached_simplex_boundary = fc_.is_simplex_boundary();
    if (!result_.reached_simplex_boundary) rewind(round);
    result_.complex = fc_.complex();
    result_.trajectory.assign(std::make_move_iterator(trail_.begin()), std::make_move_iterator(trail_.end()));
    result_.best_f = std::min(result_.best_f, fc_.f_vector());
    return std::move(result_);
  }

 private:
  std::uint64_t threshold() const {
    const double t = schedule_.alpha * static_cast<double>(fc_.n_facets()) + schedule_.beta;
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(t)));
  }

  int draw_heating_dimension() {
    const auto& w = schedule_.heat_distribution;
    double x = rng_.uniform01() * heat_total_;
    for (std::size_t t = 0; t < w.size(); ++t) {
      if (x < w[t] || t + 1 == w.size()) return static_cast<int>(w.size() - 1 - t);
      x -= w[t];
    }
    return 0;
  }

  bool improved() {
    FVector f = fc_.f_vector();
    if (f < result_.best_f) {
      result_.best_f = std::move(f);
      since_best_.clear();
      return true;
    }
    return false;
  }

  void apply(const FlipOption& o, std::uint64_t round, bool undo = false) {
    const int j = move_dimension(fc_.dim(), o);
    FlipOption inv = fc_.apply(o);
    ++result_.moves;
    if (!undo) since_best_.push_back(std::move(inv));
    FlipMove m{round, j, o, fc_.f_vector(), undo};
    if (trail_.size() >= opts_.trajectory_limit) {
      result_.trajectory_truncated = true;
      if (opts_.trajectory_limit == 0) return;
      trail_.push_back(std::move(m));
      trail_.pop_front();
    } else {
      trail_.push_back(std::move(m));
    }
  }

  void rewind(std::uint64_t round) {
    if (fc_.f_vector() == result_.best_f) return;
    while (!since_best_.empty()) {
      FlipOption o = std::move(since_best_.back());
      since_best_.pop_back();
      apply(o, round, true);
    }
  }

  FlipComplex fc_;
  Rng rng_;
  FlipSchedule schedule_;
  FlipRunOptions opts_;
  double heat_total_ = 0;
  FlipResult result_;
  std::vector<FlipOption> since_best_;  // inverses of moves after the best state
  std::deque<FlipMove> trail_;
};

}  // namespace

FlipResult bistellar_simplify(const SimplicialComplex& k, std::uint64_t seed, std::uint64_t max_rounds,
                              const FlipSchedule& schedule, const FlipRunOptions& opts) {
  return Annealer(k, seed, schedule, opts).run(max_rounds);
}

SimplicialComplex replay(const SimplicialComplex& k, const std::vector<FlipMove>& moves) {
  FlipComplex fc(k);
  for (const auto& m : moves) fc.apply(m.option);
  return fc.complex();
}

}  // namespace plsphere
