#include "smale/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "smale/perron.hpp"

namespace smale {

const char* to_string(DiracType type) {
  return type == DiracType::linear ? "linear" : "exponential";
}

DiracKind DiracKind::exponential(double lambda) {
  if (!(lambda > 1)) throw ValidationError("lambda must exceed 1");
  return {DiracType::exponential, lambda};
}

// ------------------------------------------------------------- eigenvalues

Rational dirac_eigenvalue(const DiracKind& k, const WeightSystem& w, const HeteroclinicPoint& x) {
  Rational omega = omega_s(w, x);
  if (k.type == DiracType::linear) return omega;
  const double lambda = k.lambda;
  if (lambda != std::floor(lambda) || denominator(omega) != 1)
    throw InexactEigenvalue("lambda^omega_s(x) is not rational");
  const auto base = boost::multiprecision::cpp_int(static_cast<long long>(lambda));
  const long long e = numerator(omega).convert_to<long long>();
  const auto power = boost::multiprecision::pow(base, static_cast<unsigned>(e < 0 ? -e : e));
  return e < 0 ? Rational(1) / Rational(power) : Rational(power);
}

long double dirac_eigenvalue_numeric(const DiracKind& k, const WeightSystem& w,
                                     const HeteroclinicPoint& x) {
  const long double omega = omega_s(w, x).convert_to<long double>();
  if (k.type == DiracType::linear) return omega;
  return std::pow(static_cast<long double>(k.lambda), omega);
}

namespace {

template <class Scalar>
Scalar eigen(const DiracKind& k, const WeightSystem& w, const HeteroclinicPoint& x);
template <>
Amplitude eigen<Amplitude>(const DiracKind& k, const WeightSystem& w, const HeteroclinicPoint& x) {
  return dirac_eigenvalue(k, w, x);
}
template <>
std::complex<double> eigen<std::complex<double>>(const DiracKind& k, const WeightSystem& w,
                                                 const HeteroclinicPoint& x) {
  return static_cast<double>(dirac_eigenvalue_numeric(k, w, x));
}

template <class Scalar>
Scalar amplitude(const Amplitude& a);
template <>
Amplitude amplitude<Amplitude>(const Amplitude& a) {
  return a;
}
template <>
std::complex<double> amplitude<std::complex<double>>(const Amplitude& a) {
  return a.to_complex();
}

template <class Scalar>
BasicStateVector<Scalar> dirac_impl(const DiracKind& k, const WeightSystem& w,
                                    const BasicStateVector<Scalar>& xi) {
  BasicStateVector<Scalar> out;
  for (const auto& [x, c] : xi.entries()) out.add(x, eigen<Scalar>(k, w, x) * c);
  return out;
}

template <class Scalar>
BasicStateVector<Scalar> commutator_impl(const DiracKind& k, const WeightSystem& w,
                                         const BasicFunction& a, const BasicStateVector<Scalar>& xi) {
  BasicStateVector<Scalar> out;
  for (const auto& [x, c] : xi.entries()) {
    const Piece* p = a.piece_of(x);
    if (!p) continue;
    HeteroclinicPoint y = a.support().h_s(x);
    Scalar gap = eigen<Scalar>(k, w, y) - eigen<Scalar>(k, w, x);
    out.add(y, gap * amplitude<Scalar>(p->value) * c);
  }
  return out;
}

template <class Scalar>
BasicStateVector<Scalar> shift_commutator_impl(const DiracKind& k, const WeightSystem& w,
                                               const BasicStateVector<Scalar>& xi) {
  BasicStateVector<Scalar> out;
  for (const auto& [x, c] : xi.entries()) {
    HeteroclinicPoint y = shift(x, 1);
    out.add(y, (eigen<Scalar>(k, w, y) - eigen<Scalar>(k, w, x)) * c);
  }
  return out;
}

}  // namespace

StateVector dirac_apply(const DiracKind& k, const WeightSystem& w, const StateVector& xi) {
  return dirac_impl(k, w, xi);
}
NumericStateVector dirac_apply(const DiracKind& k, const WeightSystem& w,
                               const NumericStateVector& xi) {
  return dirac_impl(k, w, xi);
}

StateVector commutator_apply(const DiracKind& k, const WeightSystem& w, const BasicFunction& a,
                             const StateVector& xi) {
  return commutator_impl(k, w, a, xi);
}
NumericStateVector commutator_apply(const DiracKind& k, const WeightSystem& w,
                                    const BasicFunction& a, const NumericStateVector& xi) {
  return commutator_impl(k, w, a, xi);
}

StateVector shift_commutator_apply(const DiracKind& k, const WeightSystem& w, const StateVector& xi) {
  return shift_commutator_impl(k, w, xi);
}
NumericStateVector shift_commutator_apply(const DiracKind& k, const WeightSystem& w,
                                          const NumericStateVector& xi) {
  return shift_commutator_impl(k, w, xi);
}

// ---------------------------------------------------------- point sweeps

namespace {

Word cylinder_window(const Cylinder& c) {
  Word window;
  for (Coord n = c.start(); n <= c.depth(); ++n) window.push_back(c.at(n));
  return window;
}

/// Points of c whose coordinates beyond depth() already follow a P-tail.
std::vector<HeteroclinicPoint> low_points(const WeightSystem& w, const Cylinder& c) {
  std::vector<HeteroclinicPoint> out;
  const ShiftRef& s = c.shift();
  const Word window = cylinder_window(c);
  for (const Tail& tail : w.p_tails()) {
    if (s->edge(tail.at(c.depth() + 1)).source != c.exit_vertex()) continue;
    auto x = HeteroclinicPoint::from_window(c.past(), tail, c.start(), window);
    if (!x.is_periodic()) out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.break_index() < b.break_index() || (a.break_index() == b.break_index() && a < b);
  });
  return out;
}

/// Exit classes: the last free edge e and the P-tail tau followed after it,
/// indexed so that tau(0) sits at the entry coordinate.
struct ExitClass {
  EdgeId edge;
  Tail tail;
};

std::vector<ExitClass> exit_classes(const WeightSystem& w) {
  std::vector<ExitClass> out;
  const ShiftRef& s = w.shift();
  for (const Tail& tail : w.p_tails())
    for (EdgeId e = 0; e < s->edge_count(); ++e)
      if (e != tail.at(0) && s->composes(e, tail.at(1))) out.push_back({e, tail});
  return out;
}

}  // namespace

void for_each_point(const WeightSystem& w, const Cylinder& c, Coord max_entry,
                    const std::function<void(const HeteroclinicPoint&)>& visit) {
  for (const auto& x : low_points(w, c))
    if (x.break_index() - 1 <= max_entry) visit(x);

  const ShiftRef& s = c.shift();
  const auto classes = exit_classes(w);
  const Word base = cylinder_window(c);
  Word path;
  for (Coord n = c.depth() + 1; n <= max_entry; ++n) {
    const std::size_t length = static_cast<std::size_t>(n - c.depth());
    std::function<void(VertexId)> dfs = [&](VertexId at) {
      if (path.size() + 1 == length) {
        for (const auto& cls : classes) {
          if (s->edge(cls.edge).source != at) continue;
          Word window = base;
          window.insert(window.end(), path.begin(), path.end());
          window.push_back(cls.edge);
          visit(HeteroclinicPoint::from_window(c.past(), cls.tail.shifted(-n), c.start(),
                                               std::move(window)));
        }
        return;
      }
      for (EdgeId e : s->out_edges(at)) {
        path.push_back(e);
        dfs(s->edge(e).target);
        path.pop_back();
      }
    };
    dfs(c.exit_vertex());
  }
}

CommutatorBound commutator_norm_bound(const DiracKind& k, const WeightSystem& w,
                                      const BasicFunction& a, Coord sample_depth) {
  if (sample_depth < 1) throw ValidationError("sample depth must be at least 1");
  CommutatorBound out;
  const double top = a.max_abs();
  if (a.is_zero()) return out;
  out.hop = hop_bound(w, a);
  const double lambda = k.lambda;
  if (k.type == DiracType::linear) {
    out.analytic_bound = static_cast<double>(out.hop + 1) * top;
  } else {
    const double lipschitz = to_double(w.cs()) * std::pow(lambda, static_cast<double>(out.hop + 1)) *
                             EdgeShift::kEpsilonX / 2;
    const double reach = std::pow(lambda, static_cast<double>(a.support().sync_time() + out.hop));
    out.analytic_bound = top * std::max(lipschitz, reach);
  }
  for (const Piece& p : a.pieces()) {
    const double value = p.value.abs();
    for_each_point(w, p.domain, sample_depth, [&](const HeteroclinicPoint& x) {
      HeteroclinicPoint y = a.support().h_s(x);
      long double gap = dirac_eigenvalue_numeric(k, w, y) - dirac_eigenvalue_numeric(k, w, x);
      out.empirical_sup = std::max(out.empirical_sup, static_cast<double>(std::fabs(gap)) * value);
      ++out.samples;
    });
  }
  return out;
}

// ------------------------------------------------------------ shell sweep

namespace {

struct PieceState {
  Rational value;
  Coord depth = 0;
  std::map<Coord, std::vector<Rational>> low;
  // (source vertex of the exit edge, omega_0 on the entry shell)
  std::vector<std::pair<VertexId, Rational>> classes;
  std::vector<std::uint64_t> exact;
  std::vector<bool> overflow;
  std::vector<long double> approx;
  long double bound = 0;
};

bool add_overflows(std::uint64_t& acc, std::uint64_t v) { return __builtin_add_overflow(acc, v, &acc); }
bool mul_overflows(std::uint64_t a, std::uint64_t b, std::uint64_t& out) {
  return __builtin_mul_overflow(a, b, &out);
}

}  // namespace

struct ShellSweep::Impl {
  const IntMatrix* adjacency = nullptr;
  std::vector<PieceState> pieces;
  Coord first = 0;
  Coord bulk = 0;
  Coord current = 0;
  long double rho_up = 0;
  long double rho_low = 0;
  long double bound = 0;
  long double weighted = 0;

  void step(PieceState& p) {
    const IntMatrix& a = *adjacency;
    const std::size_t n = a.size();
    std::vector<std::uint64_t> exact(n, 0);
    std::vector<bool> overflow(n, false);
    std::vector<long double> approx(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (p.approx[i] == 0 && p.exact[i] == 0 && !p.overflow[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!a[i][j]) continue;
        approx[j] += p.approx[i] * static_cast<long double>(a[i][j]);
        std::uint64_t prod = 0;
        if (p.overflow[i] || mul_overflows(p.exact[i], a[i][j], prod) || add_overflows(exact[j], prod))
          overflow[j] = true;
      }
    }
    p.exact = std::move(exact);
    p.overflow = std::move(overflow);
    p.approx = std::move(approx);
  }
};

ShellSweep::ShellSweep(const WeightSystem& w, const BasicFunction& a) : impl_(std::make_unique<Impl>()) {
  if (!a.is_diagonal()) throw NonDiagonalLocalization("localization must be diagonal");
  for (const Piece& p : a.pieces())
    if (!p.value.is_real() || p.value.re < 0)
      throw NonDiagonalLocalization("localization values must be nonnegative reals");
  if (a.support().v().shift() != w.shift()) throw ShiftMismatch("localization is on another shift");

  Impl& m = *impl_;
  const ShiftRef& s = w.shift();
  m.adjacency = &s->adjacency();
  const std::size_t nv = s->vertex_count();

  PerronEnclosure perron = perron_enclosure(s->adjacency(), 1e-13);
  const std::vector<long double>& y = perron.vector;
  long double hi = 0, lo = std::numeric_limits<long double>::infinity();
  for (std::size_t i = 0; i < nv; ++i) {
    long double ay = 0;
    for (std::size_t j = 0; j < nv; ++j) ay += static_cast<long double>(s->adjacency()[i][j]) * y[j];
    hi = std::max(hi, ay / y[i]);
    lo = std::min(lo, ay / y[i]);
  }
  m.rho_up = hi * (1 + 1e-12L);
  m.rho_low = lo * (1 - 1e-12L);

  const auto classes = exit_classes(w);
  bool any = false;
  for (const Piece& p : a.pieces()) {
    PieceState st;
    st.value = p.value.re;
    st.depth = p.domain.depth();
    for (const auto& x : low_points(w, p.domain)) {
      const Coord entry = x.break_index() - 1;
      st.low[entry].push_back(omega0_on_entry_shell(w, x.at(entry), x.future().shifted(entry)));
    }
    std::vector<std::size_t> multiplicity(nv, 0);
    for (const auto& cls : classes) {
      const VertexId v = s->edge(cls.edge).source;
      st.classes.emplace_back(v, omega0_on_entry_shell(w, cls.edge, cls.tail));
      ++multiplicity[v];
    }
    const VertexId u = p.domain.exit_vertex();
    st.exact.assign(nv, 0);
    st.overflow.assign(nv, false);
    st.approx.assign(nv, 0);
    st.exact[u] = 1;
    st.approx[u] = 1;
    long double ratio = 0;
    for (std::size_t v = 0; v < nv; ++v) ratio = std::max(ratio, multiplicity[v] / y[v]);
    st.bound = y[u] * ratio;

    const Coord lowest = st.low.empty() ? st.depth + 1 : std::min(st.low.begin()->first, st.depth + 1);
    m.first = any ? std::min(m.first, lowest) : lowest;
    m.bulk = any ? std::max(m.bulk, st.depth + 1) : st.depth + 1;
    any = true;
    const long double scale = std::pow(m.rho_up, -static_cast<long double>(st.depth + 1));
    m.bound += st.bound * scale;
    m.weighted += st.bound * scale * st.value.convert_to<long double>();
    m.pieces.push_back(std::move(st));
  }
  if (!any) m.first = m.bulk = 1;
  m.current = m.first;
}

ShellSweep::~ShellSweep() = default;
ShellSweep::ShellSweep(ShellSweep&&) noexcept = default;
ShellSweep& ShellSweep::operator=(ShellSweep&&) noexcept = default;

Coord ShellSweep::first() const { return impl_->first; }
Coord ShellSweep::bulk_start() const { return impl_->bulk; }
Coord ShellSweep::current() const { return impl_->current; }
long double ShellSweep::growth_upper() const { return impl_->rho_up; }
long double ShellSweep::growth_lower() const { return impl_->rho_low; }
long double ShellSweep::bound_constant() const { return impl_->bound; }
long double ShellSweep::weighted_bound_constant() const { return impl_->weighted; }
bool ShellSweep::empty() const { return impl_->pieces.empty(); }

std::vector<ShellTerm> ShellSweep::next() {
  Impl& m = *impl_;
  const Coord n = m.current++;
  std::vector<ShellTerm> terms;
  auto add = [&terms](const Rational& value, const Rational& omega0, std::uint64_t count,
                      bool exact, long double approx) {
    if (approx == 0 && count == 0 && exact) return;
    for (auto& t : terms) {
      if (t.value == value && t.omega0 == omega0) {
        if (add_overflows(t.count, count)) t.exact = false;
        t.exact = t.exact && exact;
        t.approx += approx;
        return;
      }
    }
    terms.push_back({value, omega0, count, exact, approx});
  };

  for (auto& st : m.pieces) {
    if (n <= st.depth) {
      auto it = st.low.find(n);
      if (it != st.low.end())
        for (const auto& omega0 : it->second) add(st.value, omega0, 1, true, 1);
      continue;
    }
    // Paths of n - depth free edges: v = e_u A^{n - depth - 1} counts the
    // prefixes ending at the source of the exit edge.
    for (const auto& [vertex, omega0] : st.classes)
      add(st.value, omega0, st.exact[vertex], !st.overflow[vertex], st.approx[vertex]);
    m.step(st);
  }
  return terms;
}

// ---------------------------------------------------------------- counts

std::uint64_t CountSeries::at(Coord n) const {
  if (n < first) return 0;
  if (n > last()) throw UncertifiedCounts("count requested beyond n_max");
  return counts[static_cast<std::size_t>(n - first)];
}

bool CountSeries::certified_at(Coord n) const {
  if (n < first) return true;
  if (n > last()) return false;
  return certified[static_cast<std::size_t>(n - first)];
}

CountSeries count_series(const WeightSystem& w, const BasicFunction& a, Coord n_max) {
  ShellSweep sweep(w, a);
  CountSeries out;
  out.first = std::min<Coord>(1, sweep.first());
  bool seen = false;
  out.zero_through = n_max;
  for (Coord n = out.first; n <= n_max; ++n) {
    std::uint64_t count = 0;
    bool exact = true;
    if (n >= sweep.first()) {
      for (const auto& t : sweep.next()) {
        if (add_overflows(count, t.count)) exact = false;
        exact = exact && t.exact;
      }
    }
    if (!seen && (count > 0 || !exact)) {
      seen = true;
      out.zero_through = n - 1;
    }
    out.counts.push_back(count);
    out.certified.push_back(exact);
  }
  return out;
}

Coord enumeration_reach(const BasicFunction& a, std::size_t max_core) {
  if (a.is_zero()) return std::numeric_limits<Coord>::max();
  Coord reach = std::numeric_limits<Coord>::max();
  for (const Piece& p : a.pieces())
    reach = std::min(reach, static_cast<Coord>(max_core) - 1 + p.domain.start());
  return reach;
}

std::map<Coord, std::uint64_t> count_by_enumeration(const WeightSystem& w, const BasicFunction& a,
                                                    Coord n_max, std::size_t max_core) {
  const Coord reach = enumeration_reach(a, max_core);
  if (n_max > reach)
    throw TruncationInsufficient("maxCore " + std::to_string(max_core) + " certifies n <= " +
                                 std::to_string(reach) + " only");
  std::map<Coord, std::uint64_t> out;
  if (a.is_zero()) return out;
  Coord lo = std::numeric_limits<Coord>::max();
  Coord periods = 1;
  for (const auto& o : w.P()) periods = std::max(periods, o->period());
  Coord q_periods = 1;
  for (const auto& o : w.Q()) q_periods = std::max(q_periods, o->period());
  for (const Piece& p : a.pieces()) lo = std::min(lo, p.domain.start() - 2 - periods * q_periods);
  for (Coord n = lo; n <= n_max; ++n) out[n] = 0;
  for_each_heteroclinic(w.P(), w.Q(), max_core, [&](const HeteroclinicPoint& rep) {
    for (Coord n = lo; n <= n_max; ++n)
      if (a.in_source(shift(rep, -(n + 1)))) ++out[n];
  });
  return out;
}

// ---------------------------------------------------------------- traces

namespace {

void require_tolerance(double tol) {
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");
}

long double log1p_exp(long double x) { return x > 40 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

}  // namespace

TraceResult theta_trace(const WeightSystem& w, const BasicFunction& a, double t, double tol,
                        const TraceOptions& opts) {
  if (!(t > 0)) throw NonPositiveT("t must be positive");
  require_tolerance(tol);
  ShellSweep sweep(w, a);
  TraceResult r;
  if (a.is_zero() || sweep.empty()) {
    r.converged = true;
    return r;
  }
  const long double rho = sweep.growth_upper();
  const long double weight = sweep.weighted_bound_constant();
  const long double tt = t;
  r.tail_bound = std::numeric_limits<long double>::infinity();
  while (r.terms_used < opts.max_terms) {
    const Coord n = sweep.current();
    for (const auto& term : sweep.next()) {
      const long double omega = static_cast<long double>(n) + term.omega0.convert_to<long double>();
      r.value += term.value.convert_to<long double>() * term.approx * std::exp(-tt * (1 + omega * omega));
    }
    ++r.terms_used;
    const Coord m = n + 1;
    if (m < std::max<Coord>(sweep.bulk_start(), 0)) continue;
    // Beyond shell n every omega_s is at least its shell index, so the tail
    // is dominated by weight * rho^m e^{-t(1 + m^2)}, whose ratios decrease.
    const long double ratio = rho * std::exp(-tt * (2 * m + 1));
    if (ratio >= 1) continue;
    const long double md = static_cast<long double>(m);
    r.tail_bound = weight == 0 ? 0 : std::exp(std::log(weight) + md * std::log(rho) - tt * (1 + md * md)) / (1 - ratio);
    if (r.tail_bound <= tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

TraceResult zeta_trace(const WeightSystem& w, const BasicFunction& a, double s, double tol,
                       const TraceOptions& opts) {
  if (!(s > 0)) throw NonPositiveS("s must be positive");
  require_tolerance(tol);
  ShellSweep sweep(w, a);
  TraceResult r;
  if (a.is_zero() || sweep.empty()) {
    r.converged = true;
    return r;
  }
  const long double log_lambda = std::log(static_cast<long double>(EdgeShift::kLambda));
  const long double ss = s;
  const long double rho = sweep.growth_upper();
  const long double weight = sweep.weighted_bound_constant();
  const long double ratio = rho * std::exp(-ss * log_lambda);
  r.growth_lower_bound = sweep.growth_lower() * std::exp(-ss * log_lambda);
  r.tail_bound = std::numeric_limits<long double>::infinity();

  std::deque<long double> recent;
  while (r.terms_used < opts.max_terms) {
    const Coord n = sweep.current();
    long double shell = 0;
    for (const auto& term : sweep.next()) {
      if (term.approx == 0) continue;
      const long double omega = static_cast<long double>(n) + term.omega0.convert_to<long double>();
      const long double log_term = -ss / 2 * log1p_exp(2 * omega * log_lambda);
      shell += term.value.convert_to<long double>() * std::exp(std::log(term.approx) + log_term);
    }
    r.value += shell;
    ++r.terms_used;

    recent.push_back(shell);
    if (static_cast<Coord>(recent.size()) > opts.divergence_window + 1) recent.pop_front();
    if (static_cast<Coord>(recent.size()) == opts.divergence_window + 1 && recent.front() > 0 && shell > 0)
      r.observed_ratio = std::exp((std::log(shell) - std::log(recent.front())) /
                                  static_cast<long double>(opts.divergence_window));

    const Coord m = n + 1;
    if (m >= std::max<Coord>(sweep.bulk_start(), 0) && ratio < 1) {
      r.tail_bound = weight == 0 ? 0
                                 : std::exp(std::log(weight) + static_cast<long double>(m) *
                                                                   (std::log(rho) - ss * log_lambda)) /
                                       (1 - ratio);
      if (r.tail_bound <= tol) {
        r.converged = true;
        break;
      }
    }
    if (r.value > opts.divergence_ceiling && r.growth_lower_bound > 1 && r.observed_ratio > 1) {
      r.diverged = true;
      break;
    }
  }
  return r;
}

double zeta_abscissa(const WeightSystem& w, const BasicFunction& a, double s_lo, double s_hi,
                     int iterations, double tol) {
  if (!(s_lo > 0) || !(s_hi > s_lo)) throw ValidationError("need 0 < s_lo < s_hi");
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (s_lo + s_hi);
    const TraceResult r = zeta_trace(w, a, mid, tol);
    if (r.converged)
      s_hi = mid;
    else if (r.diverged)
      s_lo = mid;
    else
      break;
  }
  return 0.5 * (s_lo + s_hi);
}

// ------------------------------------------------------- spectral dimension

DimensionEstimate spectral_dimension(const CountSeries& counts, Coord n_min, Coord n_max) {
  if (n_max - n_min < 8) throw InsufficientWindow("window must span at least 8 shells");
  if (n_min < counts.first || n_max > counts.last())
    throw UncertifiedCounts("window exceeds the computed counts");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(n_max - n_min + 1);
  std::vector<double> ys;
  for (Coord n = n_min; n <= n_max; ++n) {
    if (!counts.certified_at(n)) throw UncertifiedCounts("count at n = " + std::to_string(n) + " is not certified");
    if (counts.at(n) == 0) throw UncertifiedCounts("count at n = " + std::to_string(n) + " is zero");
    const double x = static_cast<double>(n);
    const double y = std::log(static_cast<double>(counts.at(n)));
    ys.push_back(y);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double mx = sx / m, my = sy / m;
  const double vxx = sxx - m * mx * mx;
  DimensionEstimate out;
  out.slope = (sxy - m * mx * my) / vxx;
  out.intercept = my - out.slope * mx;
  double rss = 0;
  for (Coord n = n_min; n <= n_max; ++n) {
    const double r = ys[static_cast<std::size_t>(n - n_min)] - out.intercept - out.slope * static_cast<double>(n);
    rss += r * r;
  }
  const double se = std::sqrt(rss / (m - 2) / vxx);
  const double log_lambda = std::log(EdgeShift::kLambda);
  out.dimension = out.slope / log_lambda;
  out.std_error = se / log_lambda;
  return out;
}

DimensionEstimate spectral_dimension(const WeightSystem& w, const BasicFunction& a, Coord n_min,
                                     Coord n_max) {
  if (n_max - n_min < 8) throw InsufficientWindow("window must span at least 8 shells");
  return spectral_dimension(count_series(w, a, n_max), n_min, n_max);
}

// ------------------------------------------------------------ compactness

std::vector<ShellNorm> resolvent_shell_norms(const WeightSystem& w, const BasicFunction& a,
                                             Coord n_max) {
  ShellSweep sweep(w, a);
  std::vector<ShellNorm> out;
  Rational top2 = 0;
  for (const Piece& p : a.pieces()) top2 = std::max(top2, p.value.abs2());
  const double top = std::sqrt(to_double(top2));
  if (sweep.empty()) return out;
  for (Coord n = sweep.first(); n <= n_max; ++n) {
    ShellNorm row;
    row.n = n;
    const Rational nn = Rational(n) * n + 1;
    row.bound = top / to_double(nn);
    Rational worst = 0;
    for (const auto& term : sweep.next()) {
      if (term.approx == 0) continue;
      const Rational omega = Rational(n) + term.omega0;
      const Rational denom = 1 + omega * omega;
      const Rational norm2 = term.value * term.value / (denom * denom);
      worst = std::max(worst, norm2);
    }
    row.norm = std::sqrt(to_double(worst));
    row.holds = worst * nn * nn <= top2;
    out.push_back(row);
  }
  return out;
}

}  // namespace smale
