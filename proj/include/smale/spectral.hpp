#pragma once

// Dirac operators D = omega_s and D_lambda = lambda^omega_s on
// l^2(X^h(P, Q)), their commutators, the shell counts
// c(n) = #(E_n cap Source(a)), and the localized traces built from them.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "smale/exact.hpp"
#include "smale/groupoid.hpp"
#include "smale/sft_core.hpp"
#include "smale/weights.hpp"

namespace smale {

enum class DiracType { linear, exponential };

const char* to_string(DiracType type);

struct DiracKind {
  DiracType type = DiracType::linear;
  double lambda = EdgeShift::kLambda;

  static DiracKind linear() { return {DiracType::linear, EdgeShift::kLambda}; }
  static DiracKind exponential(double lambda = EdgeShift::kLambda);
};

/// Eigenvalue of delta_x.  The exact form throws InexactEigenvalue when
/// lambda^omega_s(x) is irrational.
Rational dirac_eigenvalue(const DiracKind& k, const WeightSystem& w, const HeteroclinicPoint& x);
long double dirac_eigenvalue_numeric(const DiracKind& k, const WeightSystem& w,
                                     const HeteroclinicPoint& x);

StateVector dirac_apply(const DiracKind& k, const WeightSystem& w, const StateVector& xi);
NumericStateVector dirac_apply(const DiracKind& k, const WeightSystem& w,
                               const NumericStateVector& xi);

/// (D pi(a) - pi(a) D) xi.
StateVector commutator_apply(const DiracKind& k, const WeightSystem& w, const BasicFunction& a,
                             const StateVector& xi);
NumericStateVector commutator_apply(const DiracKind& k, const WeightSystem& w,
                                    const BasicFunction& a, const NumericStateVector& xi);

/// (D u - u D) xi.
StateVector shift_commutator_apply(const DiracKind& k, const WeightSystem& w, const StateVector& xi);
NumericStateVector shift_commutator_apply(const DiracKind& k, const WeightSystem& w,
                                          const NumericStateVector& xi);

/// Calls visit on every point of the cylinder with entry index <= max_entry,
/// in increasing entry order.
void for_each_point(const WeightSystem& w, const Cylinder& c, Coord max_entry,
                    const std::function<void(const HeteroclinicPoint&)>& visit);

struct CommutatorBound {
  double empirical_sup = 0;
  double analytic_bound = 0;
  Coord hop = 1;
  std::size_t samples = 0;
};

/// Sweeps Source(a) through entry index sample_depth.  The analytic bound is
/// (K + 1) max|a| for D and max|a| max(C_s lambda^{K+1} eps_X / 2,
/// lambda^{N + K}) for D_lambda, N the synchronization time of the support.
CommutatorBound commutator_norm_bound(const DiracKind& k, const WeightSystem& w,
                                      const BasicFunction& a, Coord sample_depth);

/// Points of E_n cap Source(a) sharing a value of a and of omega_0 o phi^n.
struct ShellTerm {
  Rational value;
  Rational omega0;
  std::uint64_t count = 0;
  bool exact = true;
  long double approx = 0;
};

/// Sequential transfer-matrix sweep over the shells E_n cap Source(a) for a
/// diagonal localization with nonnegative real values.
class ShellSweep {
 public:
  ShellSweep(const WeightSystem& w, const BasicFunction& a);
  ~ShellSweep();
  ShellSweep(ShellSweep&&) noexcept;
  ShellSweep& operator=(ShellSweep&&) noexcept;

  /// Least entry index present; c(n) = 0 below it.
  Coord first() const;
  /// From here on c(n) <= bound_constant() * growth_upper()^n.
  Coord bulk_start() const;
  /// The shell about to be returned by next().
  Coord current() const;
  std::vector<ShellTerm> next();

  long double growth_upper() const;
  long double growth_lower() const;
  long double bound_constant() const;
  /// As bound_constant() but each piece weighted by its value.
  long double weighted_bound_constant() const;
  bool empty() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct CountSeries {
  Coord first = 1;
  std::vector<std::uint64_t> counts;
  std::vector<bool> certified;
  /// c(n) = 0 for every n <= zero_through.
  Coord zero_through = 0;

  Coord last() const { return first + static_cast<Coord>(counts.size()) - 1; }
  std::uint64_t at(Coord n) const;
  bool certified_at(Coord n) const;
};

/// Exact c(n) for n <= n_max.  Rows start at min(1, M + 1).  A count is
/// certified when the transfer-matrix arithmetic stayed within 64 bits.
CountSeries count_series(const WeightSystem& w, const BasicFunction& a, Coord n_max);

/// Largest n whose points in Source(a) all have cores of length <= max_core.
Coord enumeration_reach(const BasicFunction& a, std::size_t max_core);

/// c(n) for n <= n_max by shifting every enumerated heteroclinic point into
/// each shell.  Throws TruncationInsufficient if n_max exceeds the reach.
std::map<Coord, std::uint64_t> count_by_enumeration(const WeightSystem& w, const BasicFunction& a,
                                                    Coord n_max, std::size_t max_core);

struct TraceResult {
  long double value = 0;
  long double tail_bound = 0;
  bool converged = false;
  bool diverged = false;
  Coord terms_used = 0;
  /// Certified lower bound on the per-shell growth factor of the terms.
  long double growth_lower_bound = 0;
  /// Geometric mean of term ratios over the last divergence window.
  long double observed_ratio = 0;
};

struct TraceOptions {
  Coord max_terms = 20000;
  long double divergence_ceiling = 1e6L;
  Coord divergence_window = 20;
};

/// Tr(a e^{-t(1 + D^2)}).
TraceResult theta_trace(const WeightSystem& w, const BasicFunction& a, double t, double tol,
                        const TraceOptions& opts = {});
/// Tr(a (1 + D_lambda^2)^{-s/2}) with lambda = 2.
TraceResult zeta_trace(const WeightSystem& w, const BasicFunction& a, double s, double tol,
                       const TraceOptions& opts = {});

/// Bisection for the abscissa of convergence of zeta_trace.
double zeta_abscissa(const WeightSystem& w, const BasicFunction& a, double s_lo, double s_hi,
                     int iterations = 20, double tol = 1e-8);

struct DimensionEstimate {
  double dimension = 0;
  double std_error = 0;
  double slope = 0;
  double intercept = 0;
};

/// Least-squares slope of ln c(n) on [n_min, n_max], divided by ln lambda.
DimensionEstimate spectral_dimension(const WeightSystem& w, const BasicFunction& a, Coord n_min,
                                     Coord n_max);
DimensionEstimate spectral_dimension(const CountSeries& counts, Coord n_min, Coord n_max);

/// Norm of a (1 + D^2)^{-1} restricted to E_n, against max|a| / (1 + n^2).
struct ShellNorm {
  Coord n = 0;
  double norm = 0;
  double bound = 0;
  bool holds = true;
};

std::vector<ShellNorm> resolvent_shell_norms(const WeightSystem& w, const BasicFunction& a,
                                             Coord n_max);

}  // namespace smale
