#include "smale/weights.hpp"

#include <algorithm>
#include <stdexcept>

#include "smale/groupoid.hpp"

namespace smale {

const char* to_string(Omega0Kind kind) {
  switch (kind) {
    case Omega0Kind::indicator:
      return "indicator";
    case Omega0Kind::lipschitz_ramp:
      return "lipschitzRamp";
  }
  return "?";
}

WeightSystem::WeightSystem(std::vector<OrbitRef> P, std::vector<OrbitRef> Q, Omega0Kind kind,
                           Rational c0, Coord hop)
    : P_(std::move(P)), Q_(std::move(Q)), kind_(kind), c0_(std::move(c0)), hop_(hop) {
  if (P_.empty() || Q_.empty()) throw ValidationError("P and Q must be nonempty");
  shift_ = P_.front()->shift();
  for (const auto& o : P_)
    if (o->shift() != shift_) throw ShiftMismatch("P orbits belong to different shifts");
  for (const auto& o : Q_)
    if (o->shift() != shift_) throw ShiftMismatch("Q orbits belong to different shifts");
  if (orbits_overlap(P_, Q_)) throw OverlappingOrbitSets("P and Q overlap");
  if (c0_ <= 0) throw ValidationError("C0 must be positive");
  if (hop_ < 1) throw ValidationError("hop bound K must be a positive integer");
  p_tails_ = all_tails(P_);
}

bool WeightSystem::in_stable_class(const HeteroclinicPoint& x) const {
  return x.shift() == shift_ && find_orbit(P_, x.future().orbit).has_value();
}

bool WeightSystem::in_unstable_class(const HeteroclinicPoint& x) const {
  return x.shift() == shift_ && find_orbit(Q_, x.past().orbit).has_value();
}

bool WeightSystem::in_local_stable(const HeteroclinicPoint& x) const {
  return in_stable_class(x) && (x.is_periodic() || x.break_index() <= 0);
}

bool WeightSystem::in_omega_p(const HeteroclinicPoint& x) const {
  return in_local_stable(x) && !x.is_periodic();
}

bool WeightSystem::in_omega_p_complement(const HeteroclinicPoint& x) const {
  return in_stable_class(x) && !in_local_stable(x);
}

Rational omega0_on_entry_shell(const WeightSystem& w, EdgeId edge, const Tail& tail) {
  if (w.kind() == Omega0Kind::indicator) return 1;
  if (edge == tail.at(0)) throw std::logic_error("point is not in E_0");
  // d(x, X^s(P, eps)) = 2^{-M}, M the longest forward agreement of x with a
  // P-point sharing its coordinate 0.
  Coord longest = 0;
  for (const Tail& p : w.p_tails()) {
    if (p.at(0) != edge) continue;
    const Coord span = p.orbit->period() * tail.orbit->period() + 1;
    for (Coord m = 1; m <= span; ++m) {
      if (p.at(m) != tail.at(m)) {
        longest = std::max(longest, m);
        break;
      }
    }
  }
  Rational distance = Rational(1) / Rational(boost::multiprecision::cpp_int(1) << static_cast<unsigned>(longest));
  Rational value = w.c0() * distance;
  return value > 1 ? Rational(1) : value;
}

Rational omega0(const WeightSystem& w, const HeteroclinicPoint& x) {
  if (!w.in_stable_class(x)) throw NotInStableClass("point is not in X^s(P)");
  if (w.in_local_stable(x)) return 0;
  if (x.break_index() == 1) return omega0_on_entry_shell(w, x.at(0), x.future());
  return 1;
}

Coord entry_index(const WeightSystem& w, const HeteroclinicPoint& x) {
  if (!w.in_stable_class(x)) throw NotInStableClass("point is not in X^s(P)");
  if (x.is_periodic()) throw PeriodicPointExcluded("entry index is undefined on P");
  return x.break_index() - 1;
}

Rational omega_s(const WeightSystem& w, const HeteroclinicPoint& x) {
  const Coord n = entry_index(w, x);
  // phi^n(x) has coordinate 0 equal to x_n and future tail shifted by n.
  return omega0_on_entry_shell(w, x.at(n), x.future().shifted(n)) + n;
}

Coord hop_bound(const WeightSystem& w, const BasicFunction& a) {
  if (a.pieces().empty()) throw EmptySupport("basic function has empty source");
  const BasicSet& support = a.support();
  Coord k = 1;
  // Beyond entry index depth() the map h^s leaves the break untouched, so only
  // the finitely many points whose free future is already a P-tail can move.
  for (const Piece& piece : a.pieces()) {
    const Cylinder& c = piece.domain;
    const ShiftRef& s = c.shift();
    for (const Tail& tail : w.p_tails()) {
      if (s->edge(tail.at(c.depth() + 1)).source != c.exit_vertex()) continue;
      Word window;
      for (Coord n = c.start(); n <= c.depth(); ++n) window.push_back(c.at(n));
      auto y = HeteroclinicPoint::from_window(c.past(), tail, c.start(), window);
      if (y.is_periodic()) continue;
      const Coord moved = entry_index(w, support.h_s(y)) - entry_index(w, y);
      k = std::max(k, moved < 0 ? -moved : moved);
    }
  }
  return k;
}

}  // namespace smale
