// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "smale/checks.hpp"
#include "smale/cli_io.hpp"
#include "smale/entropy.hpp"
#include "smale/spectral.hpp"
#include "support.hpp"

using namespace smale;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double cell(const RunReport& rep, const std::string& column) {
  for (std::size_t i = 0; i < rep.columns.size(); ++i)
    if (rep.columns[i] == column) return std::strtod(rep.rows.at(0).at(i).c_str(), nullptr);
  return NAN;
}

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("%s  %d  %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string config_path(const std::string& name) { return std::string(SMALE_CONFIG_DIR) + "/" + name + ".json"; }

double target_of(const fixture::Reference& r) {
  return entropy_perron(r.shift->adjacency()).value / std::log(EdgeShift::kLambda);
}

void spectral_dimension_equals_entropy() {
  bool pass = true;
  std::string detail;
  for (const auto& r : fixture::references()) {
    const auto t0 = Clock::now();
    Overrides o;
    o.window = std::pair<Coord, Coord>{5, 30};
    auto rep = run("specdim", load_config(config_path(r.name)), o);
    const double secs = seconds_since(t0);
    const double dim = cell(rep, "dimEstimate");
    const bool ok = rep.success && std::fabs(dim - r.dimension) <= 0.02 && secs < 10;
    pass = pass && ok;
    detail += r.name + " " + fmt("%.6f", dim) + " vs " + fmt("%.6f", r.dimension) + " (" + fmt("%.2f", secs) + " s); ";
  }
  report(1, "spectral dimension = log_2 of the Perron root, window 5..30, +-0.02, < 10 s each", pass, detail);
}

void sharp_threshold() {
  const auto t0 = Clock::now();
  bool pass = true;
  std::string detail;
  for (const auto& r : fixture::references()) {
    auto w = r.weights();
    auto a = fixture::localization(r, {0, 0, 1});
    const double target = target_of(r);
    auto above = zeta_trace(w, a, target + 0.1, 1e-8);
    auto below = zeta_trace(w, a, target - 0.1, 1e-8);
    const bool ok = above.converged && above.tail_bound <= 1e-8 && below.diverged;
    pass = pass && ok;
    detail += r.name + " s=" + fmt("%.4f", target + 0.1) + " tail " + fmt("%.2e", static_cast<double>(above.tail_bound)) +
              ", s=" + fmt("%.4f", target - 0.1) + (below.diverged ? " diverges" : " no divergence") + "; ";
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 30;
  report(2, "zeta converges at target + 0.1 (tail <= 1e-8) and diverges at target - 0.1, < 30 s", pass,
         detail + fmt("%.2f s", secs));
}

void theta_summability() {
  const auto t0 = Clock::now();
  bool pass = true;
  int runs = 0;
  double worst = 0;
  for (const auto& r : fixture::references()) {
    auto w = r.weights();
    for (const auto& loc : fixture::localizations(r)) {
      auto a = fixture::localization(r, loc);
      for (double t : {0.1, 0.5, 1.0, 2.0}) {
        auto res = theta_trace(w, a, t, 1e-9);
        ++runs;
        worst = std::max(worst, static_cast<double>(res.tail_bound));
        pass = pass && res.converged && res.tail_bound <= 1e-9;
      }
    }
  }
  const double secs = seconds_since(t0);
  pass = pass && secs < 10;
  report(3, "theta trace converges with tail <= 1e-9 for t in {0.1, 0.5, 1, 2}, < 10 s", pass,
         std::to_string(runs) + " runs, worst tail " + fmt("%.2e", worst) + ", " + fmt("%.2f s", secs));
}

void entropy_cross_check() {
  bool pass = true;
  std::string detail;
  for (const auto& r : fixture::references()) {
    const double p = entropy_perron(r.shift->adjacency()).value;
    const double c = entropy_counting(r.weights(), fixture::localization(r, {0, 0, 1}), 30).value;
    pass = pass && std::fabs(p - c) <= 0.03;
    detail += r.name + " perron " + fmt("%.6f", p) + " counting " + fmt("%.6f", c) + "; ";
  }
  report(4, "|entropy_counting - entropy_perron| <= 0.03 nats at nMax = 30", pass, detail);
}

void oracle_equivalence() {
  bool pass = true;
  std::size_t compared = 0;
  for (const auto& r : fixture::references()) {
    auto w = r.weights();
    for (const auto& loc : fixture::localizations(r)) {
      auto fast = count_series(w, fixture::localization(r, loc), 12);
      for (const auto& [n, c] : fixture::brute_counts(r, loc, 12)) {
        ++compared;
        if (fast.at(n) != c) {
          pass = false;
          std::printf("      %s n=%lld: transfer %llu, brute %llu\n", r.name.c_str(), static_cast<long long>(n),
                      static_cast<unsigned long long>(fast.at(n)), static_cast<unsigned long long>(c));
        }
      }
    }
  }
  report(5, "transfer-matrix counts equal brute-force enumeration for n <= 12", pass,
         std::to_string(compared) + " counts compared");
}

void invariant_suite() {
  std::size_t properties = 0, passed = 0, basis = 0;
  std::size_t cocycle_literal = 0, cocycle_inverse = 0, du_literal = 0, ud = 0;
  std::string failed;
  for (const char* name : {"full2", "full3", "golden", "full2_ramp"}) {
    auto cfg = load_config(config_path(name));
    auto w = cfg.weights();
    for (const auto& c : run_invariant_suite(w)) {
      ++properties;
      if (c.passed) ++passed;
      else failed += std::string(name) + ":" + c.property + " ";
    }
    for (const auto& x : sample_basis(w, 5, 4)) {
      ++basis;
      if (omega_s(w, shift(x, 1)) - omega_s(w, x) == 1) ++cocycle_literal;
      if (omega_s(w, shift(x, -1)) - omega_s(w, x) == 1) ++cocycle_inverse;
      const auto e = StateVector::basis(x);
      const auto du = shift_commutator_apply(DiracKind::linear(), w, e);
      if (du == unitary_shift(e, 1)) ++du_literal;
      if (StateVector{} - du == unitary_shift(e, 1)) ++ud;
    }
  }
  const bool pass = passed == properties && cocycle_literal == basis && du_literal == basis;
  std::string detail = std::to_string(passed) + "/" + std::to_string(properties) + " suite properties pass" +
                       (failed.empty() ? "" : " (failed: " + failed + ")") + "; omega_s(phi x) - omega_s(x) = 1 on " +
                       std::to_string(cocycle_literal) + "/" + std::to_string(basis) +
                       " (omega_s(phi^-1 x) - omega_s(x) = 1 on " + std::to_string(cocycle_inverse) + "/" +
                       std::to_string(basis) + "); [D,u] = u on " + std::to_string(du_literal) + "/" +
                       std::to_string(basis) + " ([u,D] = u on " + std::to_string(ud) + "/" + std::to_string(basis) + ")";
  report(6, "algebraic invariant suite", pass, detail);
}

void non_extension() {
  std::size_t literal = 0, image = 0, total = 0;
  bool monotone = true;
  double last = 0;
  for (const auto& r : fixture::references()) {
    auto w = r.weights();
    const auto x = enumerate_heteroclinic(r.P, r.Q, 2).front();
    double previous = 0;
    for (Coord n = 1; n <= 25; ++n) {
      auto y = shift(x, x.break_index() - 1 - n);
      const double got = norm(shift_commutator_apply(DiracKind::exponential(), w, to_numeric(StateVector::basis(y))));
      const double lambda = EdgeShift::kLambda;
      const double at_x = std::pow(lambda, to_double(omega_s(w, y))) * (lambda - 1);
      const double at_phi_x = std::pow(lambda, to_double(omega_s(w, shift(y, 1)))) * (lambda - 1);
      ++total;
      if (std::fabs(got - at_x) <= 1e-12 * at_x) ++literal;
      if (std::fabs(got - at_phi_x) <= 1e-12 * at_phi_x) ++image;
      monotone = monotone && got > previous;
      previous = got;
    }
    last = previous;
  }
  const bool pass = monotone && literal == total;
  report(7, "||[D_lambda,u] delta_x|| = lambda^omega_s(x) (lambda - 1), growing over entry indices 1..25", pass,
         "equality on " + std::to_string(literal) + "/" + std::to_string(total) +
             " (lambda^omega_s(phi x) (lambda - 1) on " + std::to_string(image) + "/" + std::to_string(total) +
             "); strictly increasing: " + (monotone ? "yes" : "no") + ", norm at entry 25 " + fmt("%.0f", last));
}

void compactness() {
  bool pass = true;
  std::size_t shells = 0;
  double worst = 0;
  for (const auto& r : fixture::references()) {
    auto w = r.weights();
    for (const auto& loc : fixture::localizations(r)) {
      for (const auto& s : resolvent_shell_norms(w, fixture::localization(r, loc), 30)) {
        ++shells;
        pass = pass && s.holds && s.norm <= s.bound;
        if (s.bound > 0) worst = std::max(worst, s.norm / s.bound);
      }
    }
  }
  report(8, "per-shell norm of a(1+D^2)^-1 <= max|a|/(1+n^2) for n <= 30", pass,
         std::to_string(shells) + " shells, worst norm/bound " + fmt("%.3f", worst));
}

}  // namespace

int main() {
  spectral_dimension_equals_entropy();
  sharp_threshold();
  theta_summability();
  entropy_cross_check();
  oracle_equivalence();
  invariant_suite();
  non_extension();
  compactness();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
