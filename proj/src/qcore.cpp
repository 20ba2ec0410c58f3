#include "qappell/qcore.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace qappell {

bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_finite(Complex z, const char* what) {
  if (!is_finite(z)) {
    throw DomainError(std::string("non-finite value for ") + what);
  }
}

QBase::QBase(Complex q) : q_(q) {
  require_finite(q, "q");
  const double mod = std::abs(q);
  if (!(mod > 0.0 && mod < 1.0)) {
    throw DomainError("q must satisfy 0 < |q| < 1");
  }
}

Complex cpow_int(Complex z, long e) {
  if (e < 0) {
    if (z == Complex(0.0, 0.0)) {
      throw DomainError("zero base with negative integer exponent");
    }
    return Complex(1.0, 0.0) / cpow_int(z, -e);
  }
  Complex result(1.0, 0.0);
  Complex base = z;
  unsigned long n = static_cast<unsigned long>(e);
  while (n > 0) {
    if (n & 1UL) result *= base;
    base = (n >>= 1) ? base * base : base;
  }
  return result;
}

Complex qpoch_finite(Complex x, const QBase& q, long n, double pole_eps) {
  require_finite(x, "x");
  const Complex qq = q.value();
  if (n >= 0) {
    Complex prod(1.0, 0.0);
    Complex qk(1.0, 0.0);  // q^k
    for (long k = 0; k < n; ++k) {
      prod *= Complex(1.0, 0.0) - x * qk;
      qk *= qq;
    }
    require_finite(prod, "(x;q)_n");
    return prod;
  }
  // (x;q)_{-m} = 1 / prod_{k=1}^{m} (1 - x q^{-k})
  Complex prod(1.0, 0.0);
  Complex qmk(1.0, 0.0);  // q^{-k}
  for (long k = 1; k <= -n; ++k) {
    qmk /= qq;
    const Complex factor = Complex(1.0, 0.0) - x * qmk;
    if (std::abs(factor) < pole_eps) {
      throw DegenerateDenominator("(x;q)_n with n < 0: divisor factor 1 - x q^{-" +
                                  std::to_string(k) + "} is numerically zero");
    }
    prod *= factor;
  }
  const Complex result = Complex(1.0, 0.0) / prod;
  require_finite(result, "(x;q)_n");
  return result;
}

Complex qpoch_inf(Complex x, const QBase& q, double tol) {
  require_finite(x, "x");
  if (!(tol > 0.0)) throw DomainError("tol must be positive");
  const Complex qq = q.value();
  const double qmod = std::abs(qq);
  // Tail bound: remaining factors differ from 1 by at most |x| |q|^K / (1-|q|).
  double bound = std::abs(x) / (1.0 - qmod);
  Complex prod(1.0, 0.0);
  Complex xqk = x;
  while (bound >= tol) {
    prod *= Complex(1.0, 0.0) - xqk;
    xqk *= qq;
    bound *= qmod;
  }
  require_finite(prod, "(x;q)_inf");
  return prod;
}

namespace {

// (q;q)_n, n >= 0.
Complex qq_factorial(const QBase& q, long n) {
  Complex prod(1.0, 0.0);
  Complex qj = q.value();
  for (long j = 1; j <= n; ++j) {
    prod *= Complex(1.0, 0.0) - qj;
    qj *= q.value();
  }
  return prod;
}

}  // namespace

Complex qbinom(long n, long k, const QBase& q) {
  if (n < 0) throw DomainError("qbinom: n must be non-negative");
  if (k < 0 || k > n) return Complex(0.0, 0.0);
  const Complex result = qq_factorial(q, n) / (qq_factorial(q, k) * qq_factorial(q, n - k));
  require_finite(result, "[n k]_q");
  return result;
}

}  // namespace qappell
