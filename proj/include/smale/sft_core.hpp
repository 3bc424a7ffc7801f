#pragma once

// Edge shifts of finite type as concrete Smale spaces.
//
// A point is a bi-infinite edge path x = (x_n)_{n in Z}.  The metric is
// d(x, y) = 2^{-min{|n| : x_n != y_n}}, so the expansion constant is 2 and the
// bracket is defined exactly when x_0 = y_0.  Only points whose two tails are
// eventually periodic are represented; that covers the heteroclinic set
// X^h(P, Q) and the periodic points themselves.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smale/errors.hpp"

namespace smale {

using EdgeId = std::uint32_t;
using VertexId = std::uint32_t;
using Coord = std::int64_t;
using Word = std::vector<EdgeId>;
using IntMatrix = std::vector<std::vector<std::uint64_t>>;

/// Non-negative remainder.
inline Coord floor_mod(Coord n, Coord m) {
  Coord r = n % m;
  return r < 0 ? r + m : r;
}

struct Edge {
  VertexId source = 0;
  VertexId target = 0;
  std::string label;
};

/// Directed multigraph defining an edge shift.  Always irreducible and
/// without stranded vertices.
class EdgeShift {
 public:
  static constexpr double kLambda = 2.0;
  static constexpr double kEpsilonX = 1.0;

  /// Edges are numbered row-major: for each (u, v), A[u][v] parallel edges.
  static std::shared_ptr<const EdgeShift> from_adjacency(const IntMatrix& adjacency,
                                                         std::string name = {});
  static std::shared_ptr<const EdgeShift> from_edges(std::size_t vertex_count,
                                                     std::vector<Edge> edges,
                                                     std::string name = {});

  const std::string& name() const { return name_; }
  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const IntMatrix& adjacency() const { return adjacency_; }
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }

  bool composes(EdgeId first, EdgeId second) const {
    return edges_[first].target == edges_[second].source;
  }
  bool is_path(std::span<const EdgeId> word) const;
  bool is_cycle(std::span<const EdgeId> word) const;
  std::optional<EdgeId> find_label(const std::string& label) const;
  const std::string& label(EdgeId e) const { return edges_.at(e).label; }

 private:
  EdgeShift(std::size_t vertex_count, std::vector<Edge> edges, std::string name);

  std::string name_;
  std::size_t vertex_count_;
  std::vector<Edge> edges_;
  IntMatrix adjacency_;
  std::vector<std::vector<EdgeId>> out_;
};

using ShiftRef = std::shared_ptr<const EdgeShift>;

/// The phi-orbit of a periodic point, stored as the least rotation of the
/// primitive root of its cycle.
class PeriodicOrbit {
 public:
  PeriodicOrbit(ShiftRef shift, const Word& cycle);

  const ShiftRef& shift() const { return shift_; }
  const Word& word() const { return word_; }
  Coord period() const { return static_cast<Coord>(word_.size()); }
  /// How many copies of the primitive root the input cycle contained.
  std::size_t repetitions() const { return repetitions_; }
  /// Offset r with input[i] == word()[(i + r) mod period].
  Coord input_phase() const { return input_phase_; }
  EdgeId at(Coord n) const { return word_[static_cast<std::size_t>(floor_mod(n, period()))]; }

  friend bool operator==(const PeriodicOrbit& a, const PeriodicOrbit& b) {
    return a.shift_ == b.shift_ && a.word_ == b.word_;
  }

 private:
  ShiftRef shift_;
  Word word_;
  std::size_t repetitions_ = 1;
  Coord input_phase_ = 0;
};

using OrbitRef = std::shared_ptr<const PeriodicOrbit>;

OrbitRef make_orbit(const ShiftRef& shift, const Word& cycle);
bool same_orbit(const OrbitRef& a, const OrbitRef& b);
/// True if some orbit occurs in both lists.
bool orbits_overlap(const std::vector<OrbitRef>& a, const std::vector<OrbitRef>& b);
std::optional<std::size_t> find_orbit(const std::vector<OrbitRef>& set, const OrbitRef& orbit);

/// A periodic pattern n -> orbit.at(n + alignment), alignment in [0, period).
struct Tail {
  OrbitRef orbit;
  Coord alignment = 0;

  static Tail make(OrbitRef orbit, Coord alignment);
  EdgeId at(Coord n) const { return orbit->at(n + alignment); }
  Tail shifted(Coord k) const { return make(orbit, alignment + k); }

  friend bool operator==(const Tail& a, const Tail& b) {
    return a.alignment == b.alignment && same_orbit(a.orbit, b.orbit);
  }
};

/// All P-tails: every orbit in the list at every alignment.
std::vector<Tail> all_tails(const std::vector<OrbitRef>& orbits);

/// A point with eventually periodic tails, in canonical form.
///
/// Canonical form: `future` is the pattern followed for n >= break_index(),
/// which is the least such index; `past` is followed for n < core_start().
/// The core occupies [core_start(), break_index()) and is empty exactly when
/// the past pattern already reaches the break.  The form is a function of the
/// coordinates alone, so equal points have identical forms.  Periodic points
/// have equal tails, an empty core and core_start() == 0.
class HeteroclinicPoint {
 public:
  /// Coordinates [lo, lo + window.size()) come from `window`, smaller ones
  /// from `past`, larger ones from `future`.  Throws InvalidPath if the
  /// concatenation is not a path.
  static HeteroclinicPoint from_window(Tail past, Tail future, Coord lo, Word window);
  static HeteroclinicPoint periodic(Tail tail);

  const Tail& past() const { return past_; }
  const Tail& future() const { return future_; }
  Coord core_start() const { return core_start_; }
  const Word& core() const { return core_; }
  Coord break_index() const { return core_start_ + static_cast<Coord>(core_.size()); }
  const ShiftRef& shift() const { return future_.orbit->shift(); }
  bool is_periodic() const { return periodic_; }

  EdgeId at(Coord n) const {
    if (n >= break_index()) return future_.at(n);
    if (n < core_start_) return past_.at(n);
    return core_[static_cast<std::size_t>(n - core_start_)];
  }

  std::string to_string() const;

  friend bool operator==(const HeteroclinicPoint& a, const HeteroclinicPoint& b);
  friend bool operator<(const HeteroclinicPoint& a, const HeteroclinicPoint& b);

 private:
  HeteroclinicPoint() = default;

  Tail past_;
  Tail future_;
  Coord core_start_ = 0;
  Word core_;
  bool periodic_ = false;
};

struct PointHash {
  std::size_t operator()(const HeteroclinicPoint& x) const;
};

/// Recomputes the canonical form from the coordinates.
HeteroclinicPoint canonicalize(const HeteroclinicPoint& x);

/// d(x, y) = 2^{-m}, m the least |n| with x_n != y_n; 0 when x == y.
double metric(const HeteroclinicPoint& x, const HeteroclinicPoint& y);
/// The m in the metric above, or nullopt when the points coincide.
std::optional<Coord> first_difference(const HeteroclinicPoint& x, const HeteroclinicPoint& y);

/// phi^k(x), with phi the left shift (phi(x)_n = x_{n+1}).
HeteroclinicPoint shift(const HeteroclinicPoint& x, Coord k);

/// Coordinates n < cut from `past`, n >= cut from `future`.
HeteroclinicPoint splice(const HeteroclinicPoint& past, const HeteroclinicPoint& future, Coord cut);

/// [x, y]: the future of x glued to the past of y.  Requires x_0 == y_0.
HeteroclinicPoint bracket(const HeteroclinicPoint& x, const HeteroclinicPoint& y);

/// Visits one representative per phi-orbit of X^h(P, Q): the point with
/// break_index() == 0 and core length <= max_core.  Order: Q orbit, Q
/// alignment, P orbit, P alignment, core length, core word.
void for_each_heteroclinic(const std::vector<OrbitRef>& P, const std::vector<OrbitRef>& Q,
                           std::size_t max_core,
                           const std::function<void(const HeteroclinicPoint&)>& visit);
std::vector<HeteroclinicPoint> enumerate_heteroclinic(const std::vector<OrbitRef>& P,
                                                      const std::vector<OrbitRef>& Q,
                                                      std::size_t max_core);

/// Points of X^u(Q) whose past is fixed through coordinate depth():
/// coordinates below start() follow `past`, [start(), depth()] follow word().
/// In metric terms this is the local unstable set X^u(x, 2^{-depth}) of any
/// of its points.
class Cylinder {
 public:
  Cylinder(Tail past, Coord depth, Word word);
  /// X^u(x, 2^{-depth}).
  static Cylinder around(const HeteroclinicPoint& x, Coord depth);

  const Tail& past() const { return past_; }
  Coord depth() const { return depth_; }
  Coord start() const { return depth_ + 1 - static_cast<Coord>(word_.size()); }
  const Word& word() const { return word_; }
  const ShiftRef& shift() const { return past_.orbit->shift(); }
  /// Target vertex of the last fixed edge.
  VertexId exit_vertex() const;

  EdgeId at(Coord n) const {
    if (n < start()) return past_.at(n);
    return word_[static_cast<std::size_t>(n - start())];
  }

  bool contains(const HeteroclinicPoint& x) const;
  bool contains(const Cylinder& other) const;
  std::optional<Cylinder> intersect(const Cylinder& other) const;
  /// Sub-cylinders one coordinate deeper.
  std::vector<Cylinder> refine() const;
  /// Sub-cylinders at the given depth (>= depth()).
  std::vector<Cylinder> refine_to(Coord depth) const;
  /// phi^k of the cylinder; fixes coordinates through depth() - k.
  Cylinder shifted(Coord k) const;
  /// A point of the cylinder whose future is the given orbit (reached by a
  /// shortest path from exit_vertex()).
  HeteroclinicPoint extend(const OrbitRef& orbit) const;

  std::string to_string() const;

  friend bool operator==(const Cylinder& a, const Cylinder& b) {
    return a.depth_ == b.depth_ && a.word_ == b.word_ && a.past_ == b.past_;
  }

 private:
  Tail past_;
  Coord depth_;
  Word word_;
};

}  // namespace smale
