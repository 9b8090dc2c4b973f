#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mssp {

using Rational = mpq_class;

enum class WeightMode { kRational, kFloat };

// Parses "12", "-3.25", "1e-3", "7/4" exactly. Throws std::invalid_argument.
Rational parse_rational(const std::string& text);

std::string rational_to_string(const Rational& q);

template <class Num>
struct NumTraits;

template <>
struct NumTraits<double> {
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static std::string to_string(double x);
  static double to_double(double x) { return x; }
  static constexpr bool kExact = false;
};

template <>
struct NumTraits<Rational> {
  static Rational from_rational(const Rational& q) { return q; }
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static std::string to_string(const Rational& x) { return rational_to_string(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static constexpr bool kExact = true;
};

// Floating mode clamps tiny negative rounding residues.
template <class Num>
inline Num clamp_nonneg(const Num& x) {
  if (x < 0) return NumTraits<Num>::zero();
  return x;
}

// True when a and b agree to the tolerance of the mode (exact for rationals).
template <class Num>
inline bool num_close(const Num& a, const Num& b) {
  if constexpr (NumTraits<Num>::kExact) {
    return a == b;
  } else {
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) <= 1e-9 * scale;
  }
}

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace mssp
