#include "smale/checks.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "smale/entropy.hpp"
#include "smale/spectral.hpp"

namespace smale {

BasicFunction reference_localization(const WeightSystem& w, std::size_t q_index, Coord phase,
                                     Coord depth) {
  if (q_index >= w.Q().size()) throw ValidationError("localization names a missing Q orbit");
  if (depth < 1) throw ValidationError("localization depth must be at least 1");
  Cylinder c(Tail::make(w.Q()[q_index], phase), depth, {});
  return BasicFunction::indicator(c, w.P().front());
}

std::vector<HeteroclinicPoint> sample_basis(const WeightSystem& w, std::size_t max_core, Coord range) {
  std::vector<HeteroclinicPoint> out;
  for_each_heteroclinic(w.P(), w.Q(), max_core, [&](const HeteroclinicPoint& x) {
    for (Coord k = -range; k <= range; ++k) out.push_back(shift(x, k));
  });
  return out;
}

namespace {

const Amplitude& pick_value(std::mt19937_64& rng) {
  static const Amplitude values[] = {
      Amplitude(1), Amplitude(2), Amplitude(-1), Amplitude(Rational(1, 2)),
      Amplitude(1, 1), Amplitude(0, Rational(-1, 3)), Amplitude(Rational(3, 4), 2), Amplitude(0)};
  return values[rng() % std::size(values)];
}

std::vector<Piece> random_pieces(const Cylinder& source, std::mt19937_64& rng) {
  std::vector<Piece> pieces;
  const Coord extra = static_cast<Coord>(rng() % 2);
  for (auto& c : source.refine_to(source.depth() + extra)) pieces.push_back({c, pick_value(rng)});
  bool any = std::any_of(pieces.begin(), pieces.end(), [](const Piece& p) { return !p.value.is_zero(); });
  if (!any) pieces.front().value = Amplitude(1);
  return pieces;
}

}  // namespace

std::vector<BasicFunction> sample_functions(const WeightSystem& w, std::size_t count,
                                            std::uint64_t seed, std::size_t max_core) {
  const auto reps = enumerate_heteroclinic(w.P(), w.Q(), max_core);
  if (reps.empty()) throw ValidationError("no heteroclinic points to sample from");
  std::map<std::pair<Word, Coord>, std::vector<std::size_t>> by_future;
  for (std::size_t i = 0; i < reps.size(); ++i)
    by_future[{reps[i].future().orbit->word(), reps[i].future().alignment}].push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<BasicFunction> out;
  while (out.size() < count) {
    const auto& x = reps[rng() % reps.size()];
    const Coord k = static_cast<Coord>(rng() % 5) - 2;
    if (out.size() % 3 == 0) {
      const HeteroclinicPoint p = shift(x, k);
      const Coord depth = 1 + static_cast<Coord>(rng() % 4);
      BasicSet set(p, p, depth);
      out.emplace_back(set, random_pieces(set.source(), rng));
      continue;
    }
    const auto& mates = by_future[{x.future().orbit->word(), x.future().alignment}];
    const auto& y = reps[mates[rng() % mates.size()]];
    BasicSet probe(shift(y, k), shift(x, k));
    BasicSet set(shift(y, k), shift(x, k), probe.depth() + static_cast<Coord>(rng() % 2));
    out.emplace_back(set, random_pieces(set.source(), rng));
  }
  return out;
}

namespace {

class Suite {
 public:
  explicit Suite(std::vector<CheckResult>& out) : out_(out) {}

  template <class F>
  void run(const std::string& name, F&& body) {
    CheckResult r;
    r.property = name;
    try {
      body(r);
    } catch (const std::exception& e) {
      r.passed = false;
      r.detail = std::string("exception: ") + e.what();
    }
    out_.push_back(std::move(r));
  }

 private:
  std::vector<CheckResult>& out_;
};

void fail(CheckResult& r, const std::string& why) {
  if (r.passed) r.detail = why;
  r.passed = false;
}

std::vector<HeteroclinicPoint> source_points(const WeightSystem& w, const BasicFunction& a, Coord depth) {
  std::vector<HeteroclinicPoint> out;
  for (const Piece& p : a.pieces())
    for_each_point(w, p.domain, p.domain.depth() + depth, [&](const HeteroclinicPoint& x) { out.push_back(x); });
  return out;
}

/// The two defining sums of omega_s, truncated where their terms vanish.
Rational omega_s_by_sums(const WeightSystem& w, const HeteroclinicPoint& x) {
  Rational total = 0;
  const Coord b = x.break_index();
  for (Coord n = 0; n <= std::max<Coord>(b, 0); ++n) total += omega0(w, shift(x, n));
  for (Coord n = 1; n <= std::max<Coord>(2 - b, 1); ++n) total -= 1 - omega0(w, shift(x, -n));
  return total;
}

}  // namespace

std::vector<CheckResult> run_invariant_suite(const WeightSystem& w, const CheckOptions& opts) {
  std::vector<CheckResult> results;
  Suite suite(results);

  const auto basis = sample_basis(w, opts.max_core, opts.shift_range);
  const auto functions = sample_functions(w, opts.functions, opts.seed, std::min<std::size_t>(opts.max_core, 4));
  std::vector<BasicFunction> localizations;
  for (std::size_t q = 0; q < w.Q().size(); ++q) {
    localizations.push_back(reference_localization(w, q, 0, 1));
    localizations.push_back(reference_localization(w, q, 1, 2));
  }
  const DiracKind linear = DiracKind::linear();
  const DiracKind expo = DiracKind::exponential();

  suite.run("bracket axioms", [&](CheckResult& r) {
    const std::size_t m = std::min<std::size_t>(basis.size(), 60);
    for (std::size_t i = 0; i < m; ++i) {
      const auto& x = basis[i * basis.size() / m];
      if (!(bracket(x, x) == x)) fail(r, "[x,x] != x for " + x.to_string());
      for (std::size_t j = 0; j < m; ++j) {
        const auto& y = basis[j * basis.size() / m];
        if (x.at(0) != y.at(0)) continue;
        const auto xy = bracket(x, y);
        if (x.at(1) == y.at(1) && !(bracket(shift(x, 1), shift(y, 1)) == shift(xy, 1)))
          fail(r, "[phi x, phi y] != phi [x, y]");
        for (std::size_t k = 0; k < m; k += 3) {
          const auto& z = basis[k * basis.size() / m];
          if (z.at(0) != x.at(0)) continue;
          ++r.samples;
          if (!(bracket(x, bracket(y, z)) == bracket(x, z))) fail(r, "[x,[y,z]] != [x,z]");
          if (!(bracket(xy, z) == bracket(x, z))) fail(r, "[[x,y],z] != [x,z]");
        }
      }
    }
  });

  suite.run("canonical form", [&](CheckResult& r) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& x = basis[i];
      ++r.samples;
      if (!(canonicalize(x) == x)) fail(r, "canonicalize not idempotent on " + x.to_string());
      if (!(shift(shift(x, 3), -5) == shift(x, -2))) fail(r, "shift is not additive");
      const auto& y = basis[(i * 7 + 3) % basis.size()];
      if ((metric(x, y) == 0) != (x == y)) fail(r, "metric zero disagrees with equality");
    }
  });

  suite.run("expansiveness", [&](CheckResult& r) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
      const auto& x = basis[i];
      const auto& y = basis[(i * 13 + 5) % basis.size()];
      if (x.at(0) != y.at(0)) continue;
      const auto z = bracket(x, y);  // same future as x
      const auto v = bracket(y, x);  // same past as x
      ++r.samples;
      if (!(z == x) && metric(shift(x, 1), shift(z, 1)) > metric(x, z) / 2)
        fail(r, "phi does not contract a local stable pair");
      if (!(v == x) && metric(shift(x, -1), shift(v, -1)) > metric(x, v) / 2)
        fail(r, "phi^-1 does not contract a local unstable pair");
    }
  });

  suite.run("omega_s cocycle", [&](CheckResult& r) {
    for (const auto& x : basis) {
      ++r.samples;
      if (omega_s(w, shift(x, -1)) - omega_s(w, x) != 1)
        fail(r, "omega_s(phi^-1 x) - omega_s(x) != 1 at " + x.to_string());
    }
  });

  suite.run("omega_s defining sums", [&](CheckResult& r) {
    for (const auto& x : basis) {
      ++r.samples;
      if (omega_s_by_sums(w, x) != omega_s(w, x)) fail(r, "closed form differs at " + x.to_string());
    }
  });

  suite.run("omega_s sign dichotomy", [&](CheckResult& r) {
    for (const auto& x : basis) {
      ++r.samples;
      const Rational v = omega_s(w, x);
      if (w.in_omega_p(x) && v > 0) fail(r, "omega_s > 0 on Omega_P");
      if (w.in_omega_p_complement(x) && v < 0) fail(r, "omega_s < 0 on Omega_P^c");
    }
  });

  suite.run("omega_0 Urysohn conditions", [&](CheckResult& r) {
    for (const auto& x : basis) {
      ++r.samples;
      const Rational v = omega0(w, x);
      if (w.in_local_stable(x) && v != 0) fail(r, "omega_0 != 0 on X^s(P, eps)");
      if (!w.in_local_stable(shift(x, 1)) && v != 1) fail(r, "omega_0 != 1 off phi^-1 X^s(P, eps)");
      if (v < 0 || v > 1) fail(r, "omega_0 outside [0, 1]");
    }
  });

  suite.run("omega_0 Lipschitz on E_0", [&](CheckResult& r) {
    std::vector<HeteroclinicPoint> shell;
    for (const auto& x : basis)
      if (entry_index(w, x) == 0) shell.push_back(x);
    for (const auto& x : shell)
      for (const auto& y : shell) {
        if (x == y || x.at(0) != y.at(0) || x.at(1) != y.at(1) || x.at(-1) != y.at(-1)) continue;
        if (!(bracket(x, y) == x)) continue;
        const double d = metric(x, y);
        if (d >= EdgeShift::kEpsilonX / 2) continue;
        ++r.samples;
        if (!(to_double(abs(omega0(w, x) - omega0(w, y))) < to_double(w.c0()) * d))
          fail(r, "|omega_0(x) - omega_0(y)| >= C0 d(x, y)");
      }
    if (r.samples == 0) r.detail = "no distinct pairs in E_0 share a past at distance < 1/2";
  });

  suite.run("omega_s Lipschitz on stable pairs", [&](CheckResult& r) {
    for (const auto& x : basis) {
      if (entry_index(w, x) < 0) continue;
      for (const auto& y : basis) {
        if (x == y || x.at(0) != y.at(0) || x.at(1) != y.at(1) || x.at(-1) != y.at(-1)) continue;
        if (entry_index(w, y) < 0 || !(bracket(y, x) == x)) continue;
        const double d = metric(x, y);
        if (d >= EdgeShift::kEpsilonX / 2) continue;
        ++r.samples;
        if (!(to_double(abs(omega_s(w, x) - omega_s(w, y))) < to_double(w.cs()) * d))
          fail(r, "|omega_s(x) - omega_s(y)| >= C_s d(x, y)");
      }
    }
  });

  suite.run("hop bound", [&](CheckResult& r) {
    for (const auto& a : functions) {
      if (a.is_zero()) continue;
      const Coord k = hop_bound(w, a);
      for (const auto& x : source_points(w, a, opts.sample_depth)) {
        ++r.samples;
        const Coord gap = entry_index(w, a.support().h_s(x)) - entry_index(w, x);
        if (gap > k || -gap > k) fail(r, "entry index moved by more than K");
      }
    }
  });

  suite.run("h_s injective on Source", [&](CheckResult& r) {
    for (const auto& a : functions) {
      std::set<HeteroclinicPoint> images;
      for (const auto& x : source_points(w, a, opts.sample_depth)) {
        ++r.samples;
        const auto y = a.support().h_s(x);
        if (!images.insert(y).second) fail(r, "h_s is not injective");
        if (!(a.support().h_s_inverse(y) == x)) fail(r, "h_s_inverse(h_s(x)) != x");
        if (!(y.future() == x.future())) fail(r, "h_s(x) is not stably equivalent to x");
      }
    }
  });

  suite.run("involution", [&](CheckResult& r) {
    for (const auto& a : functions) {
      const BasicFunction b = a.adjoint();
      for (const auto& x : source_points(w, a, 3)) {
        ++r.samples;
        const Amplitude v = a.value_at(x);
        const auto back = apply(b, apply(a, StateVector::basis(x)));
        if (!(back == StateVector::basis(x).scaled(Amplitude(v.abs2())))) fail(r, "pi(a*) pi(a) != |a|^2");
        const auto y = a.support().h_s(x);
        if (!(apply(b, StateVector::basis(y)).at(x) == v.conj())) fail(r, "pi(a*) is not the adjoint");
      }
    }
  });

  std::set<HeteroclinicPoint> tested;
  suite.run("homomorphism", [&](CheckResult& r) {
    for (std::size_t i = 0; i < functions.size(); ++i)
      for (std::size_t j = 0; j < functions.size(); ++j) {
        const auto& f = functions[i];
        const auto& g = functions[j];
        const GroupoidFunction fg = convolve(f, g);
        auto points = source_points(w, g, 3);
        for (std::size_t k = 0; k < basis.size(); k += 5) points.push_back(basis[k]);
        for (const auto& x : points) {
          ++r.samples;
          tested.insert(x);
          const auto e = StateVector::basis(x);
          if (!(apply(fg, e) == apply(f, apply(g, e)))) fail(r, "pi(f g) != pi(f) pi(g)");
        }
      }
  });

  std::vector<HeteroclinicPoint> wide;
  for (std::size_t core = opts.max_core + 2; core <= opts.max_core + 8; ++core) {
    wide = sample_basis(w, core, opts.shift_range + 2);
    if (wide.size() >= 1000) break;
  }
  suite.run("covariance", [&](CheckResult& r) {
    std::set<HeteroclinicPoint> seen;
    for (const auto& a : functions) {
      const GroupoidFunction moved = alpha(a, 1);
      std::vector<HeteroclinicPoint> points = wide;
      for (const auto& x : source_points(w, a, opts.sample_depth)) {
        points.push_back(x);
        points.push_back(shift(x, 1));
      }
      for (const auto& x : points) {
        seen.insert(x);
        const auto e = StateVector::basis(x);
        const auto lhs = apply(moved, e);
        const auto rhs = unitary_shift(apply(a, unitary_shift(e, -1)), 1);
        if (!(lhs == rhs)) fail(r, "u pi(a) u* != pi(alpha(a))");
      }
    }
    r.samples = seen.size();
    if (r.samples < 1000) fail(r, "fewer than 1000 basis vectors");
  });

  suite.run("alpha inverse", [&](CheckResult& r) {
    for (const auto& a : functions) {
      const GroupoidFunction round = alpha(alpha(a, 1), -1);
      for (const auto& x : source_points(w, a, 3)) {
        ++r.samples;
        const auto e = StateVector::basis(x);
        if (!(apply(round, e) == apply(a, e))) fail(r, "alpha^-1 alpha(a) != a");
      }
    }
  });

  suite.run("unitary shift", [&](CheckResult& r) {
    StateVector xi;
    for (std::size_t i = 0; i < basis.size(); ++i) xi.add(basis[i], Amplitude(Rational(static_cast<long long>(i % 7) + 1, 3)));
    r.samples = xi.size();
    if (!(unitary_shift(unitary_shift(xi, 1), -1) == xi)) fail(r, "u^-1 u != 1");
    if (norm2(unitary_shift(xi, 3)) != norm2(xi)) fail(r, "u is not isometric");
  });

  suite.run("[u,D] = u", [&](CheckResult& r) {
    for (const auto& x : basis) {
      ++r.samples;
      const auto e = StateVector::basis(x);
      if (!(StateVector{} - shift_commutator_apply(linear, w, e) == unitary_shift(e, 1)))
        fail(r, "[u,D] delta_x != u delta_x");
    }
  });

  for (const DiracKind& kind : {linear, expo}) {
    suite.run(std::string("commutator bound (") + to_string(kind.type) + ")", [&](CheckResult& r) {
      std::ostringstream os;
      for (const auto& a : functions) {
        const CommutatorBound b = commutator_norm_bound(kind, w, a, a.support().depth() + opts.sample_depth);
        r.samples += b.samples;
        if (b.empirical_sup > b.analytic_bound * (1 + 1e-12))
          fail(r, "empirical sup " + std::to_string(b.empirical_sup) + " > bound " + std::to_string(b.analytic_bound));
      }
      for (const auto& a : functions) {
        const auto pts = source_points(w, a, 2);
        for (const auto& x : pts) {
          const auto lhs = commutator_apply(kind, w, a, NumericStateVector::basis(x));
          const auto y = a.support().h_s(x);
          const std::complex<double> want =
              static_cast<double>(dirac_eigenvalue_numeric(kind, w, y) - dirac_eigenvalue_numeric(kind, w, x)) *
              a.value_at(x).to_complex();
          if (std::abs(lhs.at(y) - want) > 1e-9 * (1 + std::abs(want))) fail(r, "commutator action mismatch");
        }
      }
    });
  }

  suite.run("non-extension of D_lambda to u", [&](CheckResult& r) {
    const auto reps = enumerate_heteroclinic(w.P(), w.Q(), 1);
    const auto& x = reps.front();
    double previous = 0;
    for (Coord n = 1; n <= 25; ++n) {
      const auto y = shift(x, -(n + 1));
      const auto img = shift_commutator_apply(expo, w, NumericStateVector::basis(y));
      const double got = norm(img);
      const double want = std::pow(expo.lambda, to_double(omega_s(w, shift(y, 1)))) * (expo.lambda - 1);
      ++r.samples;
      if (std::fabs(got - want) > 1e-12 * want) fail(r, "norm differs from lambda^omega_s(phi x) (lambda - 1)");
      if (!(got > previous)) fail(r, "norm is not increasing");
      previous = got;
    }
    r.detail = r.passed ? "norm at entry 25: " + std::to_string(previous) : r.detail;
  });

  suite.run("count oracle", [&](CheckResult& r) {
    for (const auto& a : localizations) {
      const Coord top = std::min(opts.count_limit, enumeration_reach(a, opts.max_core));
      const CountSeries fast = count_series(w, a, top);
      const auto slow = count_by_enumeration(w, a, top, opts.max_core);
      for (const auto& [n, c] : slow) {
        ++r.samples;
        if (fast.at(n) != c) fail(r, "c(" + std::to_string(n) + ") differs from enumeration");
      }
    }
  });

  suite.run("transversality", [&](CheckResult& r) {
    for (const auto& a : localizations) {
      const CountSeries cs = count_series(w, a, opts.norm_limit);
      ++r.samples;
      if (cs.zero_through >= opts.norm_limit) fail(r, "no shell of Source(a) is populated");
      for (Coord n = cs.first; n <= cs.zero_through; ++n)
        if (cs.at(n) != 0) fail(r, "c(n) != 0 below M");
    }
  });

  suite.run("compactness surrogate", [&](CheckResult& r) {
    for (const auto& a : localizations)
      for (const auto& row : resolvent_shell_norms(w, a, opts.norm_limit)) {
        ++r.samples;
        if (row.n >= 0 && !row.holds) fail(r, "norm on E_" + std::to_string(row.n) + " exceeds max|a|/(1+n^2)");
      }
  });

  const double target = entropy_perron(w.shift()->adjacency()).value / std::log(EdgeShift::kLambda);

  suite.run("theta summability", [&](CheckResult& r) {
    for (const auto& a : localizations)
      for (double t : {0.1, 0.5, 1.0, 2.0}) {
        ++r.samples;
        if (!theta_trace(w, a, t, 1e-9).converged) fail(r, "theta trace did not converge at t = " + std::to_string(t));
      }
  });

  suite.run("zeta threshold", [&](CheckResult& r) {
    for (const auto& a : localizations) {
      r.samples += 2;
      if (!zeta_trace(w, a, target + 0.1, 1e-8).converged) fail(r, "no convergence above the threshold");
      if (!zeta_trace(w, a, target - 0.1, 1e-8).diverged) fail(r, "no divergence below the threshold");
    }
  });

  suite.run("entropy cross-check", [&](CheckResult& r) {
    const EntropyResult perron = entropy_perron(w.shift()->adjacency());
    for (const auto& a : localizations) {
      ++r.samples;
      const EntropyResult counting = entropy_counting(w, a, opts.norm_limit);
      if (std::fabs(counting.value - perron.value) > counting.error_bound + perron.error_bound + 1e-12)
        fail(r, "counting and Perron entropy disagree beyond their error bounds");
    }
  });

  return results;
}

}  // namespace smale
