#include "smale/groupoid.hpp"

#include <algorithm>
#include <cmath>

namespace smale {

Coord synchronization_time(const HeteroclinicPoint& v, const HeteroclinicPoint& w) {
  if (v.shift() != w.shift()) throw ShiftMismatch("points belong to different shifts");
  if (!(v.future() == w.future()))
    throw InvalidBasicSet("v and w are not stably equivalent");
  if (v == w) return 0;
  Coord n = std::max(v.break_index(), w.break_index()) - 1;
  while (v.at(n) == w.at(n)) --n;
  return std::max<Coord>(0, n + 2);
}

namespace {

Cylinder transport(const Cylinder& c, const HeteroclinicPoint& target, Coord sync) {
  const Coord lo = std::min({target.core_start(), c.start(), sync});
  Word word;
  for (Coord n = lo; n <= c.depth(); ++n) word.push_back(n < sync ? target.at(n) : c.at(n));
  return Cylinder(target.past(), c.depth(), std::move(word));
}

}  // namespace

BasicSet::BasicSet(HeteroclinicPoint v, HeteroclinicPoint w, std::optional<Coord> depth)
    : v_(std::move(v)),
      w_(std::move(w)),
      sync_(synchronization_time(v_, w_)),
      source_(Cylinder::around(w_, depth.value_or(std::max<Coord>(1, sync_ + 1)))),
      range_(Cylinder::around(v_, source_.depth())) {
  if (v_.is_periodic() || w_.is_periodic())
    throw InvalidBasicSet("basic set endpoints must not be periodic");
  if (source_.depth() < std::max<Coord>(1, sync_ + 1))
    throw InvalidBasicSet("radius too large: depth " + std::to_string(source_.depth()) +
                          " < " + std::to_string(std::max<Coord>(1, sync_ + 1)));
}

double BasicSet::radius() const { return std::ldexp(1.0, -static_cast<int>(depth())); }

HeteroclinicPoint BasicSet::h_s(const HeteroclinicPoint& x) const {
  if (!source_.contains(x)) throw OutsideSupport("point is outside X^u(w, delta)");
  return shift(bracket(shift(x, sync_), shift(v_, sync_)), -sync_);
}

HeteroclinicPoint BasicSet::h_s_inverse(const HeteroclinicPoint& y) const {
  if (!range_.contains(y)) throw OutsideSupport("point is outside X^u(v, delta)");
  return shift(bracket(shift(y, sync_), shift(w_, sync_)), -sync_);
}

Cylinder BasicSet::image(const Cylinder& c) const {
  if (!source_.contains(c)) throw OutsideSupport("cylinder is outside X^u(w, delta)");
  return transport(c, v_, sync_);
}

Cylinder BasicSet::preimage(const Cylinder& c) const {
  if (!range_.contains(c)) throw OutsideSupport("cylinder is outside X^u(v, delta)");
  return transport(c, w_, sync_);
}

// ------------------------------------------------------------ BasicFunction

BasicFunction::BasicFunction(BasicSet support, std::vector<Piece> pieces)
    : support_(std::move(support)) {
  for (auto& p : pieces) {
    if (!support_.source().contains(p.domain))
      throw InvalidBasicSet("piece " + p.domain.to_string() + " is outside the support");
    if (p.value.is_zero()) continue;
    for (const auto& q : pieces_)
      if (q.domain.intersect(p.domain)) throw InvalidBasicSet("pieces overlap");
    pieces_.push_back(std::move(p));
  }
}

BasicFunction BasicFunction::constant(BasicSet support, Amplitude value) {
  Cylinder domain = support.source();
  return BasicFunction(std::move(support), {Piece{std::move(domain), std::move(value)}});
}

BasicFunction BasicFunction::indicator(const Cylinder& c, const OrbitRef& future) {
  HeteroclinicPoint x = c.extend(future);
  BasicSet set(x, x, std::max<Coord>(1, c.depth()));
  std::vector<Piece> pieces;
  for (auto& sub : c.refine_to(set.depth())) pieces.push_back({std::move(sub), Amplitude(1)});
  return BasicFunction(std::move(set), std::move(pieces));
}

const Piece* BasicFunction::piece_of(const HeteroclinicPoint& x) const {
  if (!support_.source().contains(x)) return nullptr;
  for (const auto& p : pieces_)
    if (p.domain.contains(x)) return &p;
  return nullptr;
}

Amplitude BasicFunction::value_at(const HeteroclinicPoint& x) const {
  const Piece* p = piece_of(x);
  return p ? p->value : Amplitude{};
}

double BasicFunction::max_abs() const {
  double m = 0;
  for (const auto& p : pieces_) m = std::max(m, p.value.abs());
  return m;
}

BasicFunction BasicFunction::adjoint() const {
  BasicSet flipped(support_.w(), support_.v(), support_.depth());
  std::vector<Piece> pieces;
  for (const auto& p : pieces_) pieces.push_back({support_.image(p.domain), p.value.conj()});
  return BasicFunction(std::move(flipped), std::move(pieces));
}

// ----------------------------------------------------------- state vectors

NumericStateVector to_numeric(const StateVector& xi) {
  NumericStateVector out;
  for (const auto& [x, c] : xi.entries()) out.add(x, c.to_complex());
  return out;
}

Rational norm2(const StateVector& xi) {
  Rational s = 0;
  for (const auto& [x, c] : xi.entries()) s += c.abs2();
  return s;
}

double norm(const NumericStateVector& xi) {
  double s = 0;
  for (const auto& [x, c] : xi.entries()) s += std::norm(c);
  return std::sqrt(s);
}

namespace {

template <class Scalar>
Scalar lift(const Amplitude& a);
template <>
Amplitude lift<Amplitude>(const Amplitude& a) {
  return a;
}
template <>
std::complex<double> lift<std::complex<double>>(const Amplitude& a) {
  return a.to_complex();
}

template <class Scalar>
BasicStateVector<Scalar> apply_impl(const BasicFunction& a, const BasicStateVector<Scalar>& xi) {
  BasicStateVector<Scalar> out;
  for (const auto& [x, c] : xi.entries()) {
    const Piece* p = a.piece_of(x);
    if (!p) continue;
    out.add(a.support().h_s(x), lift<Scalar>(p->value) * c);
  }
  return out;
}

template <class Scalar>
BasicStateVector<Scalar> shift_impl(const BasicStateVector<Scalar>& xi, Coord k) {
  BasicStateVector<Scalar> out;
  for (const auto& [x, c] : xi.entries()) out.add(shift(x, k), c);
  return out;
}

}  // namespace

StateVector apply(const BasicFunction& a, const StateVector& xi) { return apply_impl(a, xi); }
NumericStateVector apply(const BasicFunction& a, const NumericStateVector& xi) {
  return apply_impl(a, xi);
}

StateVector apply(const GroupoidFunction& f, const StateVector& xi) {
  StateVector out;
  for (const auto& a : f) out += apply(a, xi);
  return out;
}

NumericStateVector apply(const GroupoidFunction& f, const NumericStateVector& xi) {
  NumericStateVector out;
  for (const auto& a : f) out += apply(a, xi);
  return out;
}

StateVector unitary_shift(const StateVector& xi, Coord k) { return shift_impl(xi, k); }
NumericStateVector unitary_shift(const NumericStateVector& xi, Coord k) { return shift_impl(xi, k); }

// ------------------------------------------------------------- convolution

GroupoidFunction convolve(const BasicFunction& f, const BasicFunction& g) {
  GroupoidFunction out;
  const BasicSet& gs = g.support();
  for (const auto& gp : g.pieces()) {
    const Cylinder image = gs.image(gp.domain);
    for (const auto& fp : f.pieces()) {
      auto meet = image.intersect(fp.domain);
      if (!meet) continue;
      Cylinder domain = gs.preimage(*meet);
      HeteroclinicPoint w = domain.extend(gs.w().future().orbit);
      HeteroclinicPoint v = f.support().h_s(gs.h_s(w));
      BasicSet set(std::move(v), std::move(w), domain.depth());
      out.emplace_back(std::move(set), std::vector<Piece>{{std::move(domain), fp.value * gp.value}});
    }
  }
  return out;
}

GroupoidFunction convolve(const GroupoidFunction& f, const GroupoidFunction& g) {
  GroupoidFunction out;
  for (const auto& a : f)
    for (const auto& b : g) {
      auto part = convolve(a, b);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  return out;
}

GroupoidFunction adjoint(const GroupoidFunction& f) {
  GroupoidFunction out;
  for (const auto& a : f) out.push_back(a.adjoint());
  return out;
}

// --------------------------------------------------------------- automorphism

GroupoidFunction alpha(const BasicFunction& a, Coord k) {
  if (k == 0) return {a};
  const BasicSet& s = a.support();
  HeteroclinicPoint v = shift(s.v(), k);
  HeteroclinicPoint w = shift(s.w(), k);
  const Coord depth = s.depth() - k;
  const Coord needed = std::max<Coord>(1, synchronization_time(v, w) + 1);

  if (depth >= needed) {
    std::vector<Piece> pieces;
    for (const auto& p : a.pieces()) pieces.push_back({p.domain.shifted(k), p.value});
    return {BasicFunction(BasicSet(std::move(v), std::move(w), depth), std::move(pieces))};
  }

  GroupoidFunction out;
  const OrbitRef& tail = w.future().orbit;
  for (const auto& p : a.pieces()) {
    Cylinder moved = p.domain.shifted(k);
    for (auto& sub : moved.refine_to(std::max(moved.depth(), needed))) {
      HeteroclinicPoint w2 = sub.extend(tail);
      HeteroclinicPoint v2 = shift(s.h_s(shift(w2, -k)), k);
      BasicSet set(std::move(v2), std::move(w2), sub.depth());
      out.emplace_back(std::move(set), std::vector<Piece>{{std::move(sub), p.value}});
    }
  }
  return out;
}

GroupoidFunction alpha(const GroupoidFunction& f, Coord k) {
  GroupoidFunction out;
  for (const auto& a : f) {
    auto part = alpha(a, k);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace smale
