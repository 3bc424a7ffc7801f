#pragma once

// The weight functions omega_0 and omega_s on X^s(P) \ P.
//
// The local stable neighbourhood of P is the clopen set
//   X^s(P, eps) = { x : x_n = p_n for all n >= 0, some p in P },
// so for a point with future tail in P it is exactly { break_index() <= 0 }.
// The shells E_N = phi^{-N}(E_0) are then { break_index() == N + 1 }.

#include <vector>

#include "smale/exact.hpp"
#include "smale/sft_core.hpp"

namespace smale {

class BasicFunction;

enum class Omega0Kind {
  /// 0 on X^s(P, eps), 1 elsewhere.
  indicator,
  /// min(1, C0 * d(x, X^s(P, eps))) on E_0, 0 below, 1 above.
  lipschitz_ramp,
};

const char* to_string(Omega0Kind kind);

class WeightSystem {
 public:
  WeightSystem(std::vector<OrbitRef> P, std::vector<OrbitRef> Q,
               Omega0Kind kind = Omega0Kind::indicator, Rational c0 = 1, Coord hop = 1);

  const ShiftRef& shift() const { return shift_; }
  const std::vector<OrbitRef>& P() const { return P_; }
  const std::vector<OrbitRef>& Q() const { return Q_; }
  const std::vector<Tail>& p_tails() const { return p_tails_; }
  Omega0Kind kind() const { return kind_; }
  const Rational& c0() const { return c0_; }
  Coord hop() const { return hop_; }
  /// C_s = 2 K C_0.
  Rational cs() const { return 2 * Rational(hop_) * c0_; }

  bool in_stable_class(const HeteroclinicPoint& x) const;
  bool in_unstable_class(const HeteroclinicPoint& x) const;
  bool in_heteroclinic_set(const HeteroclinicPoint& x) const {
    return in_stable_class(x) && in_unstable_class(x) && !x.is_periodic();
  }
  /// X^s(P, eps).
  bool in_local_stable(const HeteroclinicPoint& x) const;
  /// Omega_P = X^s(P, eps) \ P.
  bool in_omega_p(const HeteroclinicPoint& x) const;
  /// Omega_P^c = X^s(P) \ X^s(P, eps).
  bool in_omega_p_complement(const HeteroclinicPoint& x) const;

 private:
  ShiftRef shift_;
  std::vector<OrbitRef> P_;
  std::vector<OrbitRef> Q_;
  std::vector<Tail> p_tails_;
  Omega0Kind kind_;
  Rational c0_;
  Coord hop_;
};

/// omega_0(x).  Throws NotInStableClass unless x in X^s(P).
Rational omega0(const WeightSystem& w, const HeteroclinicPoint& x);

/// The ramp value of omega_0 on the E_0 point whose coordinate 0 is `edge`
/// and whose coordinates >= 1 follow `tail`.
Rational omega0_on_entry_shell(const WeightSystem& w, EdgeId edge, const Tail& tail);

/// The unique N with x in E_N, i.e. the last coordinate where x differs from
/// its P-tail.  Throws PeriodicPointExcluded for x in P.
Coord entry_index(const WeightSystem& w, const HeteroclinicPoint& x);

/// omega_s(x) = omega_0(phi^N x) + N for x in E_N.
Rational omega_s(const WeightSystem& w, const HeteroclinicPoint& x);

/// A K with entry_index(h^s x) within K of entry_index(x) on Source(a);
/// the least such K, but at least 1.  Throws EmptySupport.
Coord hop_bound(const WeightSystem& w, const BasicFunction& a);

}  // namespace smale
