#pragma once

// The invariant suite run by `smale-spectra check`.

#include <cstdint>
#include <string>
#include <vector>

#include "smale/groupoid.hpp"
#include "smale/weights.hpp"

namespace smale {

/// Diagonal indicator of X^u(q, 2^{-depth}) for the Q point q at the given
/// phase, i.e. { x in X^u(Q) : x_n = q_n for n <= depth }.
BasicFunction reference_localization(const WeightSystem& w, std::size_t q_index = 0,
                                     Coord phase = 0, Coord depth = 1);

/// Deterministic pseudo-random basic functions: diagonal indicators and
/// splices between stably equivalent heteroclinic points, with values drawn
/// from a small set of exact complex rationals.
std::vector<BasicFunction> sample_functions(const WeightSystem& w, std::size_t count,
                                            std::uint64_t seed, std::size_t max_core = 4);

/// Enumerated heteroclinic points shifted by every k in [-range, range].
std::vector<HeteroclinicPoint> sample_basis(const WeightSystem& w, std::size_t max_core, Coord range);

struct CheckResult {
  std::string property;
  bool passed = true;
  std::size_t samples = 0;
  std::string detail;
};

struct CheckOptions {
  std::size_t max_core = 5;
  Coord shift_range = 4;
  std::size_t functions = 8;
  Coord sample_depth = 6;
  Coord count_limit = 12;
  Coord norm_limit = 30;
  std::uint64_t seed = 20240611;
};

std::vector<CheckResult> run_invariant_suite(const WeightSystem& w, const CheckOptions& opts = {});

}  // namespace smale
