#include "smale/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "smale/perron.hpp"
#include "smale/spectral.hpp"

namespace smale {

const char* to_string(EntropyMethod method) {
  return method == EntropyMethod::perron ? "perron" : "counting";
}

EntropyResult entropy_perron(const IntMatrix& a, double tol) {
  const PerronEnclosure e = perron_enclosure(a, tol);
  const long double lo = std::log(e.lower), hi = std::log(e.upper);
  EntropyResult out;
  out.method = EntropyMethod::perron;
  out.value = static_cast<double>((lo + hi) / 2);
  out.error_bound = static_cast<double>((hi - lo) / 2);
  out.iterations = e.iterations;
  return out;
}

EntropyResult entropy_counting(const WeightSystem& w, const BasicFunction& a, Coord n_max) {
  if (n_max < 10) throw ValidationError("entropy_counting needs n_max >= 10");
  const CountSeries counts = count_series(w, a, n_max);
  const Coord n_min = std::min<Coord>((n_max + 1) / 2, n_max - 8);
  for (Coord n = n_min - 2; n <= n_max; ++n)
    if (n >= counts.first && !counts.certified_at(n))
      throw UncertifiedCounts("c(" + std::to_string(n) + ") overflowed 64-bit arithmetic");
  const double log_lambda = std::log(EdgeShift::kLambda);

  auto slope = [&](Coord lo, Coord hi) { return spectral_dimension(counts, lo, hi); };
  const DimensionEstimate main = slope(n_min, n_max);

  double spread = 0;
  const Coord alternatives[][2] = {{n_min - 2, n_max}, {n_min + 1, n_max}, {n_min, n_max - 1}, {n_min - 1, n_max - 1}};
  for (const auto& win : alternatives) {
    if (win[0] < counts.first || win[1] - win[0] < 8) continue;
    const DimensionEstimate alt = slope(win[0], win[1]);
    spread = std::max(spread, std::fabs(alt.slope - main.slope));
  }

  EntropyResult out;
  out.method = EntropyMethod::counting;
  out.value = main.slope;
  out.error_bound = spread + 2 * main.std_error * log_lambda;
  out.iterations = static_cast<int>(n_max - n_min + 1);
  return out;
}

}  // namespace smale
