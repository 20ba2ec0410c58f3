#pragma once

#include <complex>
#include <cstdint>

#include "qappell/errors.hpp"

namespace qappell {

using Complex = std::complex<double>;

// Absolute closeness at which a denominator factor counts as a pole.
inline constexpr double kDefaultPoleEps = 1e-8;

bool is_finite(Complex z);

// Throws DomainError if z is NaN or infinite. `what` names the offending value.
void require_finite(Complex z, const char* what);

// Base of the q-series; enforces 0 < |q| < 1 strictly.
class QBase {
 public:
  explicit QBase(Complex q);
  Complex value() const { return q_; }

 private:
  Complex q_;
};

// Integer power z^e by square-and-multiply; e may be negative (z != 0).
Complex cpow_int(Complex z, long e);

// q-shifted factorial (x; q)_n.
//
// n >= 0: prod_{k=0}^{n-1} (1 - x q^k).
// n <  0: 1 / prod_{k=1}^{|n|} (1 - x q^{-k}), the finite reciprocal form of
//         the quotient definition (x;q)_n = (x;q)_inf / (x q^n;q)_inf.
// Throws DegenerateDenominator when a divisor factor is within pole_eps of 0.
Complex qpoch_finite(Complex x, const QBase& q, long n,
                     double pole_eps = kDefaultPoleEps);

// (x; q)_inf, truncated at the smallest K with |x| |q|^K / (1-|q|) < tol.
Complex qpoch_inf(Complex x, const QBase& q, double tol);

// Gaussian binomial coefficient [n k]_q = (q;q)_n / ((q;q)_k (q;q)_{n-k}).
// Exactly 0 for k < 0 or k > n. n must be non-negative.
Complex qbinom(long n, long k, const QBase& q);

}  // namespace qappell
