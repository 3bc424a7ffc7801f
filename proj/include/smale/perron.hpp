#pragma once

#include <vector>

#include "smale/sft_core.hpp"

namespace smale {

/// Two-sided Collatz-Wielandt bounds on the Perron root of an irreducible
/// nonnegative matrix, with the positive vector that realizes them.
struct PerronEnclosure {
  long double lower = 0;
  long double upper = 0;
  std::vector<long double> vector;
  int iterations = 0;
};

/// True when the directed graph of the positive entries is strongly connected.
bool is_irreducible(const IntMatrix& a);

/// Power iteration on A + I until log(upper / lower) <= 2 * tol or
/// max_iterations is reached.  Throws ZeroMatrix or ReducibleMatrix.
PerronEnclosure perron_enclosure(const IntMatrix& a, double tol, int max_iterations = 200000);

}  // namespace smale
