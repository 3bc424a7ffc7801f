#pragma once

#include <complex>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace smale {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);
std::string to_string(const Rational& r);

/// Exact complex amplitude with rational real and imaginary parts.
struct Amplitude {
  Rational re{0};
  Rational im{0};

  Amplitude() = default;
  Amplitude(Rational real) : re(std::move(real)) {}  // NOLINT: implicit by intent
  Amplitude(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
  Amplitude(long long real) : re(real) {}  // NOLINT

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  Amplitude conj() const { return {re, -im}; }
  Rational abs2() const { return re * re + im * im; }
  double abs() const;
  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }

  Amplitude& operator+=(const Amplitude& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Amplitude& operator-=(const Amplitude& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend Amplitude operator+(Amplitude a, const Amplitude& b) { return a += b; }
  friend Amplitude operator-(Amplitude a, const Amplitude& b) { return a -= b; }
  friend Amplitude operator-(const Amplitude& a) { return {-a.re, -a.im}; }
  friend Amplitude operator*(const Amplitude& a, const Amplitude& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const Amplitude& a, const Amplitude& b) {
    return a.re == b.re && a.im == b.im;
  }
};

std::string to_string(const Amplitude& a);

}  // namespace smale
