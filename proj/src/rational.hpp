#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <sstream>
#include <string>

namespace nilred {

/// Arbitrary-precision rational scalar used by every exact-mode computation.
/// Closed under +, -, *, / (nonzero divisor); equality is exact.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline std::string to_string(const Rational& x) { return x.str(); }

/// If x == r*r for a rational r >= 0, writes r to `root` and returns true.
inline bool rational_sqrt(const Rational& x, Rational& root) {
  using boost::multiprecision::numerator;
  using boost::multiprecision::denominator;
  if (x < 0) return false;
  BigInt num = numerator(x), den = denominator(x);
  BigInt rn = boost::multiprecision::sqrt(num);
  BigInt rd = boost::multiprecision::sqrt(den);
  if (rn * rn != num || rd * rd != den) return false;
  root = Rational(rn, rd);
  return true;
}

/// Uniform scalar interface for the two arithmetic modes: exact rationals
/// and binary64 with an explicit tolerance. Algorithms templated on the
/// scalar consult these instead of comparing against literal zero.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double /*tol*/) { return x.is_zero(); }
  static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
  static double to_double(const Rational& x) { return nilred::to_double(x); }
  static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct ScalarOps<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x, double tol) { return std::fabs(x) <= tol; }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static std::string str(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
  }
};

}  // namespace nilred
