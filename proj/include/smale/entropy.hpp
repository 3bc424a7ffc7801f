#pragma once

#include <string>

#include "smale/groupoid.hpp"
#include "smale/sft_core.hpp"
#include "smale/weights.hpp"

namespace smale {

enum class EntropyMethod { perron, counting };

const char* to_string(EntropyMethod method);

/// Topological entropy in nats.
struct EntropyResult {
  double value = 0;
  EntropyMethod method = EntropyMethod::perron;
  double error_bound = 0;
  int iterations = 0;
};

/// log of the Perron root, bracketed by Collatz-Wielandt bounds.
EntropyResult entropy_perron(const IntMatrix& a, double tol = 1e-12);

/// Growth rate of the shell counts of `a`: the regression slope of ln c(n)
/// over [ceil(n_max / 2), n_max], with an error bound from the spread over
/// neighbouring windows plus two standard errors.  Requires n_max >= 10.
EntropyResult entropy_counting(const WeightSystem& w, const BasicFunction& a, Coord n_max);

}  // namespace smale
