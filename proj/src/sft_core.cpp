#include "smale/sft_core.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace smale {

namespace {

bool reaches_all(std::size_t n, const std::vector<std::vector<VertexId>>& adj) {
  std::vector<bool> seen(n, false);
  std::vector<VertexId> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

std::string join_labels(const EdgeShift& shift, const Word& word) {
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += shift.label(word[i]);
  }
  return out;
}

std::string tail_string(const Tail& t) {
  return "(" + join_labels(*t.orbit->shift(), t.orbit->word()) + ")@" + std::to_string(t.alignment);
}

void require_same_shift(const ShiftRef& a, const ShiftRef& b) {
  if (a != b) throw ShiftMismatch("points belong to different shifts");
}

}  // namespace

// ---------------------------------------------------------------- EdgeShift

EdgeShift::EdgeShift(std::size_t vertex_count, std::vector<Edge> edges, std::string name)
    : name_(std::move(name)), vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ == 0) throw InvalidShift("shift has no vertices");
  if (edges_.empty()) throw InvalidShift("shift has no edges");

  adjacency_.assign(vertex_count_, std::vector<std::uint64_t>(vertex_count_, 0));
  out_.assign(vertex_count_, {});
  std::vector<std::vector<VertexId>> fwd(vertex_count_), bwd(vertex_count_);
  std::vector<bool> has_in(vertex_count_, false);
  std::map<std::string, EdgeId> labels;
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    Edge& edge = edges_[e];
    if (edge.source >= vertex_count_ || edge.target >= vertex_count_)
      throw InvalidShift("edge " + std::to_string(e) + " has an endpoint out of range");
    if (edge.label.empty()) edge.label = std::to_string(e);
    if (!labels.emplace(edge.label, e).second)
      throw InvalidShift("duplicate edge label '" + edge.label + "'");
    ++adjacency_[edge.source][edge.target];
    out_[edge.source].push_back(e);
    has_in[edge.target] = true;
    fwd[edge.source].push_back(edge.target);
    bwd[edge.target].push_back(edge.source);
  }
  for (VertexId v = 0; v < vertex_count_; ++v) {
    if (out_[v].empty() || !has_in[v])
      throw InvalidShift("vertex " + std::to_string(v) + " is stranded");
  }
  if (!reaches_all(vertex_count_, fwd) || !reaches_all(vertex_count_, bwd))
    throw InvalidShift("graph is not strongly connected");
}

ShiftRef EdgeShift::from_adjacency(const IntMatrix& adjacency, std::string name) {
  const std::size_t n = adjacency.size();
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    if (adjacency[u].size() != n) throw InvalidShift("adjacency matrix is not square");
    for (std::size_t v = 0; v < n; ++v) {
      for (std::uint64_t k = 0; k < adjacency[u][v]; ++k)
        edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), {}});
    }
  }
  return ShiftRef(new EdgeShift(n, std::move(edges), std::move(name)));
}

ShiftRef EdgeShift::from_edges(std::size_t vertex_count, std::vector<Edge> edges,
                               std::string name) {
  return ShiftRef(new EdgeShift(vertex_count, std::move(edges), std::move(name)));
}

bool EdgeShift::is_path(std::span<const EdgeId> word) const {
  for (EdgeId e : word)
    if (e >= edges_.size()) return false;
  for (std::size_t i = 1; i < word.size(); ++i)
    if (!composes(word[i - 1], word[i])) return false;
  return true;
}

bool EdgeShift::is_cycle(std::span<const EdgeId> word) const {
  return !word.empty() && is_path(word) && composes(word.back(), word.front());
}

std::optional<EdgeId> EdgeShift::find_label(const std::string& label) const {
  for (EdgeId e = 0; e < edges_.size(); ++e)
    if (edges_[e].label == label) return e;
  return std::nullopt;
}

// ------------------------------------------------------------ PeriodicOrbit

PeriodicOrbit::PeriodicOrbit(ShiftRef shift, const Word& cycle) : shift_(std::move(shift)) {
  if (!shift_) throw InvalidShift("orbit without a shift");
  if (!shift_->is_cycle(cycle)) throw InvalidPath("cycle word is not a closed path");

  const std::size_t n = cycle.size();
  std::size_t p = n;
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (std::size_t i = d; i < n && ok; ++i) ok = cycle[i] == cycle[i % d];
    if (ok) {
      p = d;
      break;
    }
  }
  repetitions_ = n / p;
  Word root(cycle.begin(), cycle.begin() + static_cast<std::ptrdiff_t>(p));

  std::size_t best = 0;
  for (std::size_t r = 1; r < p; ++r) {
    for (std::size_t i = 0; i < p; ++i) {
      EdgeId a = root[(r + i) % p], b = root[(best + i) % p];
      if (a != b) {
        if (a < b) best = r;
        break;
      }
    }
  }
  word_.resize(p);
  for (std::size_t i = 0; i < p; ++i) word_[i] = root[(i + best) % p];
  input_phase_ = floor_mod(-static_cast<Coord>(best), static_cast<Coord>(p));
}

OrbitRef make_orbit(const ShiftRef& shift, const Word& cycle) {
  return std::make_shared<const PeriodicOrbit>(shift, cycle);
}

bool same_orbit(const OrbitRef& a, const OrbitRef& b) {
  return a == b || (a && b && *a == *b);
}

std::optional<std::size_t> find_orbit(const std::vector<OrbitRef>& set, const OrbitRef& orbit) {
  for (std::size_t i = 0; i < set.size(); ++i)
    if (same_orbit(set[i], orbit)) return i;
  return std::nullopt;
}

bool orbits_overlap(const std::vector<OrbitRef>& a, const std::vector<OrbitRef>& b) {
  return std::any_of(a.begin(), a.end(), [&](const OrbitRef& o) { return find_orbit(b, o).has_value(); });
}

Tail Tail::make(OrbitRef orbit, Coord alignment) {
  Coord a = floor_mod(alignment, orbit->period());
  return Tail{std::move(orbit), a};
}

std::vector<Tail> all_tails(const std::vector<OrbitRef>& orbits) {
  std::vector<Tail> out;
  for (const auto& o : orbits)
    for (Coord a = 0; a < o->period(); ++a) out.push_back(Tail::make(o, a));
  return out;
}

// -------------------------------------------------------- HeteroclinicPoint

HeteroclinicPoint HeteroclinicPoint::periodic(Tail tail) {
  HeteroclinicPoint x;
  x.past_ = tail;
  x.future_ = std::move(tail);
  x.periodic_ = true;
  return x;
}

HeteroclinicPoint HeteroclinicPoint::from_window(Tail past, Tail future, Coord lo, Word window) {
  const ShiftRef& shift = future.orbit->shift();
  require_same_shift(past.orbit->shift(), shift);
  const Coord hi = lo + static_cast<Coord>(window.size());
  auto coord = [&](Coord n) -> EdgeId {
    if (n < lo) return past.at(n);
    if (n >= hi) return future.at(n);
    return window[static_cast<std::size_t>(n - lo)];
  };
  for (EdgeId e : window)
    if (e >= shift->edge_count()) throw InvalidPath("edge id out of range");
  for (Coord n = lo - 1; n < hi; ++n) {
    if (!shift->composes(coord(n), coord(n + 1)))
      throw InvalidPath("coordinates " + std::to_string(n) + " and " + std::to_string(n + 1) +
                        " do not compose");
  }

  // Least b with x_n == future(n) for all n >= b.
  Coord b = lo;
  bool found = false;
  for (Coord n = hi - 1; n >= lo; --n) {
    if (coord(n) != future.at(n)) {
      b = n + 1;
      found = true;
      break;
    }
  }
  if (!found) {
    const Coord span = past.orbit->period() * future.orbit->period();
    for (Coord j = 0; j < span; ++j) {
      Coord n = lo - 1 - j;
      if (past.at(n) != future.at(n)) {
        b = n + 1;
        found = true;
        break;
      }
    }
  }
  if (!found) return periodic(future);

  Coord a = std::min(lo, b);
  while (a < b && coord(a) == past.at(a)) ++a;

  HeteroclinicPoint x;
  x.past_ = std::move(past);
  x.future_ = std::move(future);
  x.core_start_ = a;
  x.core_.reserve(static_cast<std::size_t>(b - a));
  for (Coord n = a; n < b; ++n) x.core_.push_back(coord(n));
  return x;
}

bool operator==(const HeteroclinicPoint& a, const HeteroclinicPoint& b) {
  return a.periodic_ == b.periodic_ && a.core_start_ == b.core_start_ && a.core_ == b.core_ &&
         a.future_ == b.future_ && a.past_ == b.past_;
}

bool operator<(const HeteroclinicPoint& a, const HeteroclinicPoint& b) {
  auto key = [](const HeteroclinicPoint& x) {
    return std::tie(x.past_.orbit->word(), x.past_.alignment, x.future_.orbit->word(),
                    x.future_.alignment, x.core_start_, x.core_);
  };
  return key(a) < key(b);
}

std::size_t PointHash::operator()(const HeteroclinicPoint& x) const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  };
  for (EdgeId e : x.past().orbit->word()) mix(e);
  mix(static_cast<std::uint64_t>(x.past().alignment));
  for (EdgeId e : x.future().orbit->word()) mix(e + 7919);
  mix(static_cast<std::uint64_t>(x.future().alignment));
  mix(static_cast<std::uint64_t>(x.core_start()));
  for (EdgeId e : x.core()) mix(e + 104729);
  return h;
}

std::string HeteroclinicPoint::to_string() const {
  std::ostringstream os;
  if (periodic_) {
    os << "periodic " << tail_string(future_);
    return os.str();
  }
  os << tail_string(past_) << " | " << core_start_ << ":[" << join_labels(*shift(), core_) << "] | "
     << tail_string(future_);
  return os.str();
}

HeteroclinicPoint canonicalize(const HeteroclinicPoint& x) {
  if (x.is_periodic()) return x;
  return HeteroclinicPoint::from_window(x.past(), x.future(), x.core_start(), x.core());
}

std::optional<Coord> first_difference(const HeteroclinicPoint& x, const HeteroclinicPoint& y) {
  require_same_shift(x.shift(), y.shift());
  if (x == y) return std::nullopt;
  auto mag = [](Coord c) { return c < 0 ? -c : c; };
  const Coord reach = std::max({mag(x.core_start()), mag(x.break_index()), mag(y.core_start()),
                                mag(y.break_index())}) +
                      x.past().orbit->period() * y.past().orbit->period() +
                      x.future().orbit->period() * y.future().orbit->period() + 2;
  for (Coord m = 0; m <= reach; ++m) {
    if (x.at(m) != y.at(m) || x.at(-m) != y.at(-m)) return m;
  }
  throw std::logic_error("distinct canonical forms with identical coordinates");
}

double metric(const HeteroclinicPoint& x, const HeteroclinicPoint& y) {
  auto m = first_difference(x, y);
  if (!m) return 0.0;
  return std::ldexp(1.0, -static_cast<int>(*m));
}

HeteroclinicPoint shift(const HeteroclinicPoint& x, Coord k) {
  if (k == 0) return x;
  if (x.is_periodic()) return HeteroclinicPoint::periodic(x.future().shifted(k));
  return HeteroclinicPoint::from_window(x.past().shifted(k), x.future().shifted(k),
                                        x.core_start() - k, x.core());
}

HeteroclinicPoint splice(const HeteroclinicPoint& past, const HeteroclinicPoint& future, Coord cut) {
  require_same_shift(past.shift(), future.shift());
  const Coord lo = std::min(past.core_start(), cut);
  const Coord hi = std::max(future.break_index(), cut);
  Word window;
  window.reserve(static_cast<std::size_t>(hi - lo));
  for (Coord n = lo; n < hi; ++n) window.push_back(n < cut ? past.at(n) : future.at(n));
  return HeteroclinicPoint::from_window(past.past(), future.future(), lo, std::move(window));
}

HeteroclinicPoint bracket(const HeteroclinicPoint& x, const HeteroclinicPoint& y) {
  require_same_shift(x.shift(), y.shift());
  if (x.at(0) != y.at(0)) throw BracketUndefined("bracket needs x_0 == y_0 (d(x,y) < 1)");
  return splice(y, x, 0);
}

void for_each_heteroclinic(const std::vector<OrbitRef>& P, const std::vector<OrbitRef>& Q,
                           std::size_t max_core,
                           const std::function<void(const HeteroclinicPoint&)>& visit) {
  if (orbits_overlap(P, Q)) throw OverlappingOrbitSets("P and Q overlap");
  if (P.empty() || Q.empty()) return;
  const ShiftRef& shift = P.front()->shift();
  for (const auto& o : P) require_same_shift(o->shift(), shift);
  for (const auto& o : Q) require_same_shift(o->shift(), shift);

  const auto past_tails = all_tails(Q);
  const auto future_tails = all_tails(P);
  Word word;
  for (const Tail& past : past_tails) {
    for (const Tail& future : future_tails) {
      const EdgeId last_past = past.at(-1);
      if (shift->composes(last_past, future.at(0)) && last_past != future.at(-1))
        visit(HeteroclinicPoint::from_window(past, future, 0, {}));

      for (std::size_t len = 1; len <= max_core; ++len) {
        const Coord lo = -static_cast<Coord>(len);
        word.assign(len, 0);
        // Depth-first over core words; position i sits at coordinate lo + i.
        std::function<void(std::size_t, VertexId)> dfs = [&](std::size_t i, VertexId at) {
          for (EdgeId e : shift->out_edges(at)) {
            if (i == 0 && e == past.at(lo)) continue;
            if (i + 1 == len && (e == future.at(-1) || !shift->composes(e, future.at(0)))) continue;
            word[i] = e;
            if (i + 1 == len)
              visit(HeteroclinicPoint::from_window(past, future, lo, word));
            else
              dfs(i + 1, shift->edge(e).target);
          }
        };
        dfs(0, shift->edge(past.at(lo - 1)).target);
      }
    }
  }
}

std::vector<HeteroclinicPoint> enumerate_heteroclinic(const std::vector<OrbitRef>& P,
                                                      const std::vector<OrbitRef>& Q,
                                                      std::size_t max_core) {
  std::vector<HeteroclinicPoint> out;
  for_each_heteroclinic(P, Q, max_core, [&](const HeteroclinicPoint& x) { out.push_back(x); });
  return out;
}

// ----------------------------------------------------------------- Cylinder

Cylinder::Cylinder(Tail past, Coord depth, Word word)
    : past_(std::move(past)), depth_(depth), word_(std::move(word)) {
  const ShiftRef& s = shift();
  if (!s->is_path(word_)) throw InvalidPath("cylinder word is not a path");
  if (!word_.empty() && !s->composes(past_.at(start() - 1), word_.front()))
    throw InvalidPath("cylinder word does not continue its past");
  std::size_t strip = 0;
  while (strip < word_.size() &&
         word_[strip] == past_.at(depth_ + 1 - static_cast<Coord>(word_.size()) + static_cast<Coord>(strip)))
    ++strip;
  word_.erase(word_.begin(), word_.begin() + static_cast<std::ptrdiff_t>(strip));
}

Cylinder Cylinder::around(const HeteroclinicPoint& x, Coord depth) {
  const Coord lo = std::min(x.core_start(), depth + 1);
  Word word;
  for (Coord n = lo; n <= depth; ++n) word.push_back(x.at(n));
  return Cylinder(x.past(), depth, std::move(word));
}

VertexId Cylinder::exit_vertex() const { return shift()->edge(at(depth_)).target; }

bool Cylinder::contains(const HeteroclinicPoint& x) const {
  if (x.shift() != shift() || !(x.past() == past_)) return false;
  for (Coord n = std::min(x.core_start(), start()); n <= depth_; ++n)
    if (x.at(n) != at(n)) return false;
  return true;
}

bool Cylinder::contains(const Cylinder& other) const {
  if (other.depth_ < depth_ || !(other.past_ == past_)) return false;
  for (Coord n = std::min(other.start(), start()); n <= depth_; ++n)
    if (other.at(n) != at(n)) return false;
  return true;
}

std::optional<Cylinder> Cylinder::intersect(const Cylinder& other) const {
  if (!(other.past_ == past_)) return std::nullopt;
  const Coord common = std::min(depth_, other.depth_);
  for (Coord n = std::min(start(), other.start()); n <= common; ++n)
    if (at(n) != other.at(n)) return std::nullopt;
  return depth_ >= other.depth_ ? *this : other;
}

std::vector<Cylinder> Cylinder::refine() const {
  std::vector<Cylinder> out;
  for (EdgeId e : shift()->out_edges(exit_vertex())) {
    Word w;
    w.reserve(static_cast<std::size_t>(depth_ + 2 - start()));
    for (Coord n = start(); n <= depth_; ++n) w.push_back(at(n));
    w.push_back(e);
    out.emplace_back(past_, depth_ + 1, std::move(w));
  }
  return out;
}

std::vector<Cylinder> Cylinder::refine_to(Coord depth) const {
  std::vector<Cylinder> level{*this};
  for (Coord d = depth_; d < depth; ++d) {
    std::vector<Cylinder> next;
    for (const auto& c : level) {
      auto kids = c.refine();
      next.insert(next.end(), kids.begin(), kids.end());
    }
    level = std::move(next);
  }
  return level;
}

Cylinder Cylinder::shifted(Coord k) const { return Cylinder(past_.shifted(k), depth_ - k, word_); }

HeteroclinicPoint Cylinder::extend(const OrbitRef& orbit) const {
  const ShiftRef& s = shift();
  require_same_shift(orbit->shift(), s);
  // Smallest orbit phase starting at each vertex.
  std::vector<Coord> entry_phase(s->vertex_count(), -1);
  for (Coord i = orbit->period() - 1; i >= 0; --i)
    entry_phase[s->edge(orbit->word()[static_cast<std::size_t>(i)]).source] = i;

  const VertexId from = exit_vertex();
  std::vector<EdgeId> parent(s->vertex_count(), 0);
  std::vector<bool> seen(s->vertex_count(), false);
  std::deque<VertexId> queue{from};
  seen[from] = true;
  VertexId hit = from;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    if (entry_phase[v] >= 0) {
      hit = v;
      break;
    }
    for (EdgeId e : s->out_edges(v)) {
      VertexId t = s->edge(e).target;
      if (!seen[t]) {
        seen[t] = true;
        parent[t] = e;
        queue.push_back(t);
      }
    }
  }
  Word path;
  for (VertexId v = hit; v != from; v = s->edge(parent[v]).source) path.push_back(parent[v]);
  std::reverse(path.begin(), path.end());

  Word window;
  for (Coord n = start(); n <= depth_; ++n) window.push_back(at(n));
  window.insert(window.end(), path.begin(), path.end());
  const Coord first_tail = depth_ + 1 + static_cast<Coord>(path.size());
  Tail future = Tail::make(orbit, entry_phase[hit] - first_tail);
  return HeteroclinicPoint::from_window(past_, future, start(), std::move(window));
}

std::string Cylinder::to_string() const {
  return tail_string(past_) + " | " + std::to_string(start()) + ".." + std::to_string(depth_) + ":[" +
         join_labels(*shift(), word_) + "]";
}

}  // namespace smale
