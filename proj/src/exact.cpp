#include "smale/exact.hpp"

#include <cmath>

namespace smale {

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) { return r.str(); }

double Amplitude::abs() const { return std::sqrt(to_double(abs2())); }

std::string to_string(const Amplitude& a) {
  if (a.is_real()) return a.re.str();
  return "(" + a.re.str() + "," + a.im.str() + ")";
}

}  // namespace smale
