#pragma once

// Locally constant functions on the stable groupoid G^s(X, phi, Q), their
// fundamental representation on l^2(X^h(P, Q)), and the Ruelle unitary.

#include <complex>
#include <map>
#include <optional>
#include <vector>

#include "smale/exact.hpp"
#include "smale/sft_core.hpp"

namespace smale {

/// Least N >= 0 with phi^N(w) in X^s(phi^N(v), eps_X / 2), i.e. v_n == w_n
/// for every n >= N - 1.  Requires v ~s w.
Coord synchronization_time(const HeteroclinicPoint& v, const HeteroclinicPoint& w);

/// The basic set V^s(v, w, h^s, delta) with delta = 2^{-depth}.
class BasicSet {
 public:
  /// Without an explicit depth the least admissible one, max(1, N + 1), is
  /// used.  Throws InvalidBasicSet if v and w are not stably equivalent or
  /// the depth is too shallow for h^s to be defined on X^u(w, delta).
  BasicSet(HeteroclinicPoint v, HeteroclinicPoint w, std::optional<Coord> depth = std::nullopt);

  const HeteroclinicPoint& v() const { return v_; }
  const HeteroclinicPoint& w() const { return w_; }
  Coord sync_time() const { return sync_; }
  Coord depth() const { return source_.depth(); }
  double radius() const;
  /// X^u(w, delta).
  const Cylinder& source() const { return source_; }
  /// X^u(v, delta).
  const Cylinder& range() const { return range_; }
  bool is_diagonal() const { return v_ == w_; }

  /// h^s(x) = phi^{-N} [phi^N x, phi^N v].  Throws OutsideSupport.
  HeteroclinicPoint h_s(const HeteroclinicPoint& x) const;
  HeteroclinicPoint h_s_inverse(const HeteroclinicPoint& y) const;
  /// h^s(C) for a sub-cylinder C of source().
  Cylinder image(const Cylinder& c) const;
  /// (h^s)^{-1}(C) for a sub-cylinder C of range().
  Cylinder preimage(const Cylinder& c) const;

 private:
  HeteroclinicPoint v_;
  HeteroclinicPoint w_;
  Coord sync_;
  Cylinder source_;
  Cylinder range_;
};

/// A locally constant value on a clopen piece of the source X^u(w, delta).
struct Piece {
  Cylinder domain;
  Amplitude value;
};

/// A function on G^s supported in one basic set: a(h^s(x), x) equals the
/// value of the piece containing x, and 0 off the pieces.
class BasicFunction {
 public:
  /// Pieces must be pairwise disjoint sub-cylinders of support.source();
  /// zero-valued pieces are dropped.
  BasicFunction(BasicSet support, std::vector<Piece> pieces);

  static BasicFunction constant(BasicSet support, Amplitude value);
  /// Diagonal indicator of a cylinder; `future` picks the representative
  /// point used as v = w.
  static BasicFunction indicator(const Cylinder& c, const OrbitRef& future);

  const BasicSet& support() const { return support_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_diagonal() const { return support_.is_diagonal(); }
  bool is_zero() const { return pieces_.empty(); }

  const Piece* piece_of(const HeteroclinicPoint& x) const;
  bool in_source(const HeteroclinicPoint& x) const { return piece_of(x) != nullptr; }
  /// a(h^s(x), x), zero outside Source(a).
  Amplitude value_at(const HeteroclinicPoint& x) const;
  double max_abs() const;
  /// a*(x, y) = conj(a(y, x)).
  BasicFunction adjoint() const;

 private:
  BasicSet support_;
  std::vector<Piece> pieces_;
};

/// A finite sum of basic functions; every element of C_c(G^s) with locally
/// constant values has this form.
using GroupoidFunction = std::vector<BasicFunction>;

namespace detail {
inline bool is_zero(const Amplitude& a) { return a.is_zero(); }
inline bool is_zero(const std::complex<double>& a) { return a == std::complex<double>{}; }
}  // namespace detail

/// Finitely supported vector in l^2(X^h(P, Q)).
template <class Scalar>
class BasicStateVector {
 public:
  using Map = std::map<HeteroclinicPoint, Scalar>;

  BasicStateVector() = default;
  static BasicStateVector basis(const HeteroclinicPoint& x) {
    BasicStateVector v;
    v.entries_.emplace(x, Scalar(1));
    return v;
  }

  void add(const HeteroclinicPoint& x, const Scalar& c) {
    if (detail::is_zero(c)) return;
    auto [it, inserted] = entries_.try_emplace(x, c);
    if (!inserted) {
      it->second += c;
      if (detail::is_zero(it->second)) entries_.erase(it);
    }
  }
  Scalar at(const HeteroclinicPoint& x) const {
    auto it = entries_.find(x);
    return it == entries_.end() ? Scalar{} : it->second;
  }
  const Map& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  BasicStateVector& operator+=(const BasicStateVector& o) {
    for (const auto& [x, c] : o.entries_) add(x, c);
    return *this;
  }
  BasicStateVector& operator-=(const BasicStateVector& o) {
    for (const auto& [x, c] : o.entries_) add(x, -c);
    return *this;
  }
  friend BasicStateVector operator+(BasicStateVector a, const BasicStateVector& b) { return a += b; }
  friend BasicStateVector operator-(BasicStateVector a, const BasicStateVector& b) { return a -= b; }
  BasicStateVector scaled(const Scalar& c) const {
    BasicStateVector out;
    for (const auto& [x, v] : entries_) out.add(x, v * c);
    return out;
  }
  friend bool operator==(const BasicStateVector& a, const BasicStateVector& b) {
    return a.entries_ == b.entries_;
  }

 private:
  Map entries_;
};

using StateVector = BasicStateVector<Amplitude>;
using NumericStateVector = BasicStateVector<std::complex<double>>;

NumericStateVector to_numeric(const StateVector& xi);
Rational norm2(const StateVector& xi);
double norm(const NumericStateVector& xi);

/// pi(a) xi.
StateVector apply(const BasicFunction& a, const StateVector& xi);
NumericStateVector apply(const BasicFunction& a, const NumericStateVector& xi);
StateVector apply(const GroupoidFunction& f, const StateVector& xi);
NumericStateVector apply(const GroupoidFunction& f, const NumericStateVector& xi);

/// The convolution product f . g, as a sum of basic functions.
GroupoidFunction convolve(const BasicFunction& f, const BasicFunction& g);
GroupoidFunction convolve(const GroupoidFunction& f, const GroupoidFunction& g);
GroupoidFunction adjoint(const GroupoidFunction& f);

/// u^k xi with u delta_x = delta_{phi(x)}.
StateVector unitary_shift(const StateVector& xi, Coord k);
NumericStateVector unitary_shift(const NumericStateVector& xi, Coord k);

/// alpha^k(a)(x, y) = a(phi^{-k} x, phi^{-k} y).  A single basic function
/// unless phi^k shrinks the support below the admissible radius, in which
/// case the support is split into finer basic sets.
GroupoidFunction alpha(const BasicFunction& a, Coord k);
GroupoidFunction alpha(const GroupoidFunction& f, Coord k);

}  // namespace smale
