#include "smale/perron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace smale {

namespace {

void require_square(const IntMatrix& a) {
  if (a.empty()) throw ZeroMatrix("empty matrix");
  for (const auto& row : a)
    if (row.size() != a.size()) throw ValidationError("matrix is not square");
}

bool reaches_all(const IntMatrix& a, bool transpose) {
  const std::size_t n = a.size();
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v = 0; v < n; ++v) {
      const std::uint64_t entry = transpose ? a[v][u] : a[u][v];
      if (entry && !seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

}  // namespace

bool is_irreducible(const IntMatrix& a) {
  require_square(a);
  return reaches_all(a, false) && reaches_all(a, true);
}

PerronEnclosure perron_enclosure(const IntMatrix& a, double tol, int max_iterations) {
  require_square(a);
  const std::size_t n = a.size();
  bool any = false;
  for (const auto& row : a)
    for (auto v : row) any = any || v != 0;
  if (!any) throw ZeroMatrix("adjacency matrix is zero");
  if (!is_irreducible(a)) throw ReducibleMatrix("adjacency matrix is reducible");
  if (!(tol > 0)) throw ValidationError("tolerance must be positive");

  PerronEnclosure out;
  std::vector<long double> y(n, 1.0L), ay(n);
  auto multiply = [&](const std::vector<long double>& x, std::vector<long double>& r) {
    for (std::size_t i = 0; i < n; ++i) {
      long double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += static_cast<long double>(a[i][j]) * x[j];
      r[i] = s;
    }
  };

  for (int it = 1; it <= max_iterations; ++it) {
    multiply(y, ay);
    long double lo = std::numeric_limits<long double>::infinity(), hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const long double r = ay[i] / y[i];
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    out.lower = lo;
    out.upper = hi;
    out.iterations = it;
    if ((lo > 0 && std::log(hi) - std::log(lo) <= 2.0L * tol) || it == max_iterations) break;
    // Step with A + I, which is primitive, so the iterates converge even for
    // periodic A.
    long double norm = 0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = ay[i] + y[i];
      norm = std::max(norm, y[i]);
    }
    for (auto& v : y) v /= norm;
  }
  out.vector = std::move(y);
  return out;
}

}  // namespace smale
