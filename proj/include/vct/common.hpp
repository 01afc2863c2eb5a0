#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace vct {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A property stated by the source material failed under exact computation.
struct claim_violation : std::logic_error {
  using std::logic_error::logic_error;
};

struct convergence_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Least non-negative residue.
inline Int mod(Int a, const Int& n) {
  Int r = a % n;
  if (r < 0) r += n;
  return r;
}

// Inverse of q modulo n; requires gcd(q, n) = 1.
inline Int mod_inverse(const Int& q, const Int& n) {
  Int old_r = mod(q, n), r = n;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int quot = old_r / r;
    Int tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw invalid_input("mod_inverse: arguments not coprime");
  return mod(old_s, n);
}

inline long long to_ll(const Int& v) {
  return static_cast<long long>(v);
}

}  // namespace vct
