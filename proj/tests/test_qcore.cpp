#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qappell/qcore.hpp"

using namespace qappell;

namespace {

// Deterministic complex points for property sweeps.
std::vector<Complex> sample_disc(double max_mod, int count, unsigned salt) {
  std::vector<Complex> out;
  for (int i = 0; i < count; ++i) {
    const double t = double(i + 1) / (count + 1);
    const double mod = max_mod * t;
    const double phase = 6.283185307179586 * std::fmod(0.618033988749895 * (i + salt), 1.0);
    out.push_back(std::polar(mod, phase));
  }
  return out;
}

double rel_err(Complex got, Complex want) {
  return std::abs(got - want) / (1e-300 + std::max(1.0, std::abs(want)));
}

// q-Pascal dynamic programming table, the independent oracle for qbinom.
Complex qbinom_dp(long n, long k, Complex q) {
  if (k < 0 || k > n) return {0.0, 0.0};
  std::vector<std::vector<Complex>> t(n + 1);
  for (long r = 0; r <= n; ++r) {
    t[r].assign(r + 1, Complex(0.0, 0.0));
    t[r][0] = Complex(1.0, 0.0);
    Complex qr(1.0, 0.0);
    for (long c = 1; c <= r; ++c) {
      // [r c] = q^c [r-1 c] + [r-1 c-1]
      Complex qc = Complex(1.0, 0.0);
      for (long j = 0; j < c; ++j) qc *= q;
      const Complex upper = c <= r - 1 ? t[r - 1][c] : Complex(0.0, 0.0);
      t[r][c] = qc * upper + t[r - 1][c - 1];
    }
    (void)qr;
  }
  return t[n][k];
}

}  // namespace

TEST_CASE("qpoch_finite basic values") {
  QBase q(Complex(0.5, 0.0));
  CHECK(qpoch_finite(Complex(0.7, 0.0), q, 0) == Complex(1.0, 0.0));
  CHECK(rel_err(qpoch_finite(Complex(0.5, 0.0), q, 2), Complex(0.375, 0.0)) < 1e-15);
  // (0.3; 0.5)_{-1} = 1 / (1 - 0.3/0.5) = 2.5
  CHECK(rel_err(qpoch_finite(Complex(0.3, 0.0), q, -1), Complex(2.5, 0.0)) < 1e-14);
}

TEST_CASE("qpoch_finite negative index matches the infinite-product quotient") {
  for (const Complex& q0 : sample_disc(0.7, 6, 1)) {
    if (std::abs(q0) < 0.05) continue;
    QBase q(q0);
    for (const Complex& x : sample_disc(0.8, 6, 2)) {
      for (long n : {-1L, -2L, -4L}) {
        const Complex direct = qpoch_finite(x, q, n);
        const Complex quotient =
            qpoch_inf(x, q, 1e-16) / qpoch_inf(x * cpow_int(q0, n), q, 1e-16);
        CHECK(rel_err(direct, quotient) < 1e-12);
      }
    }
  }
}

TEST_CASE("qpoch_finite degenerate divisor") {
  QBase q(Complex(0.5, 0.0));
  // x q^{-1} = 1 exactly for x = 0.5
  CHECK_THROWS_AS(qpoch_finite(Complex(0.5, 0.0), q, -1), DegenerateDenominator);
}

TEST_CASE("qpoch_inf values and the definitional quotient") {
  QBase q(Complex(0.5, 0.0));
  CHECK(qpoch_inf(Complex(0.0, 0.0), q, 1e-14) == Complex(1.0, 0.0));

  // Long finite product oracle for (0.5; 0.5)_inf.
  Complex longprod(1.0, 0.0);
  for (int k = 0; k <= 60; ++k) longprod *= Complex(1.0, 0.0) - Complex(std::pow(0.5, k + 1), 0.0);
  CHECK(rel_err(qpoch_inf(Complex(0.5, 0.0), q, 1e-14), longprod) < 1e-13);

  // qpoch_inf(x)/qpoch_inf(x q^3) = (x; q)_3
  for (const Complex& q0 : sample_disc(0.8, 5, 3)) {
    if (std::abs(q0) < 0.05) continue;
    QBase qb(q0);
    for (const Complex& x : sample_disc(0.9, 5, 4)) {
      const Complex lhs = qpoch_inf(x, qb, 1e-15) / qpoch_inf(x * q0 * q0 * q0, qb, 1e-15);
      CHECK(rel_err(lhs, qpoch_finite(x, qb, 3)) < 1e-12);
    }
  }
}

TEST_CASE("qpoch_finite splitting identity") {
  // (x; q)_{m+n} = (x; q)_m (x q^m; q)_n for m, n in [-5, 10]
  for (const Complex& q0 : sample_disc(0.75, 4, 5)) {
    if (std::abs(q0) < 0.1) continue;
    QBase q(q0);
    for (const Complex& x : sample_disc(0.85, 4, 6)) {
      for (long m = -5; m <= 10; m += 3) {
        for (long n = -5; n <= 10; n += 2) {
          Complex lhs, rhs;
          try {
            lhs = qpoch_finite(x, q, m + n);
            rhs = qpoch_finite(x, q, m) * qpoch_finite(x * cpow_int(q0, m), q, n);
          } catch (const DegenerateDenominator&) {
            continue;  // sampled point fell on a divisor pole
          }
          CHECK(rel_err(lhs, rhs) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("qbinom basic values and out-of-range convention") {
  QBase q37(Complex(0.37, 0.0));
  CHECK(rel_err(qbinom(5, 0, q37), Complex(1.0, 0.0)) < 1e-14);
  QBase q5(Complex(0.5, 0.0));
  CHECK(rel_err(qbinom(2, 1, q5), Complex(1.5, 0.0)) < 1e-14);
  QBase q2(Complex(0.2, 0.0));
  CHECK(qbinom(3, 5, q2) == Complex(0.0, 0.0));
  CHECK(qbinom(3, -1, q2) == Complex(0.0, 0.0));
  CHECK_THROWS_AS(qbinom(-1, 0, q2), DomainError);
}

TEST_CASE("qbinom matches the q-Pascal dynamic programming oracle") {
  for (const Complex& q0 : sample_disc(0.9, 5, 7)) {
    if (std::abs(q0) < 0.05) continue;
    QBase q(q0);
    for (long n : {0L, 1L, 2L, 5L, 9L, 14L}) {
      for (long k = 0; k <= n; ++k) {
        CHECK(rel_err(qbinom(n, k, q), qbinom_dp(n, k, q0)) < 1e-12);
      }
    }
  }
}

TEST_CASE("qbinom symmetry") {
  for (const Complex& q0 : sample_disc(0.9, 6, 8)) {
    if (std::abs(q0) < 0.05) continue;
    QBase q(q0);
    for (long n = 0; n <= 16; ++n) {
      for (long k = 0; k <= n; ++k) {
        const Complex lhs = qbinom(n, k, q);
        const Complex rhs = qbinom(n, n - k, q);
        CHECK(std::abs(lhs - rhs) <= 1e-14 * std::abs(lhs));
      }
    }
  }
}

TEST_CASE("Pascal rule I over n <= 30") {
  for (const Complex& q0 : sample_disc(0.9, 4, 9)) {
    if (std::abs(q0) < 0.05) continue;
    QBase q(q0);
    for (long n = 1; n <= 30; ++n) {
      for (long k = -1; k <= n + 1; ++k) {
        const Complex want = qbinom(n, k, q);
        const Complex got =
            cpow_int(q0, k) * qbinom(n - 1, k, q) + qbinom(n - 1, k - 1, q);
        CHECK(std::abs(got - want) <= 1e-13 * std::abs(want) + 1e-300);
      }
    }
  }
}

TEST_CASE("Pascal rule II over t <= 30") {
  // q^{k-t-1} [t k] + [t k-1] = q^{k-t-1} [t+1 k]
  for (const Complex& q0 : sample_disc(0.9, 4, 10)) {
    if (std::abs(q0) < 0.05) continue;
    QBase q(q0);
    for (long t = 0; t <= 30; ++t) {
      for (long k = 0; k <= t + 1; ++k) {
        const Complex w = cpow_int(q0, k - t - 1);
        const Complex lhs = w * qbinom(t, k, q) + qbinom(t, k - 1, q);
        const Complex rhs = w * qbinom(t + 1, k, q);
        CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs) + 1e-300);
      }
    }
  }
}

TEST_CASE("triple coefficient identity over t <= 12") {
  // q^k [t k][k i] + q^i [t k-1][k-1 i] + [t k-1][k-1 i-1] = [t+1 k][k i]
  for (const Complex& q0 : sample_disc(0.9, 4, 11)) {
    if (std::abs(q0) < 0.05) continue;
    QBase q(q0);
    for (long t = 0; t <= 12; ++t) {
      for (long k = 0; k <= t + 1; ++k) {
        for (long i = 0; i <= k; ++i) {
          // k = 0 terms carry the factor [t, -1] = 0.
          Complex lhs = cpow_int(q0, k) * qbinom(t, k, q) * qbinom(k, i, q);
          if (k >= 1) {
            lhs += cpow_int(q0, i) * qbinom(t, k - 1, q) * qbinom(k - 1, i, q) +
                   qbinom(t, k - 1, q) * qbinom(k - 1, i - 1, q);
          }
          const Complex rhs = qbinom(t + 1, k, q) * qbinom(k, i, q);
          CHECK(std::abs(lhs - rhs) <= 1e-13 * std::abs(rhs) + 1e-300);
        }
      }
    }
  }
}

TEST_CASE("contiguity kernels") {
  const auto qs = sample_disc(0.8, 4, 12);
  const auto ps = sample_disc(0.85, 4, 13);
  for (const Complex& q0 : qs) {
    if (std::abs(q0) < 0.1) continue;
    QBase q(q0);
    for (const Complex& p : ps) {
      if (std::abs(Complex(1.0, 0.0) - p) < 0.05) continue;
      for (long m : {1L, 3L, 8L}) {
        for (long n : {2L, 5L}) {
          // (aq; q)_{m+n} = (a; q)_{m+n} [1 + a(1-q^m)/(1-a) + a q^m (1-q^n)/(1-a)]
          const Complex qm = cpow_int(q0, m);
          const Complex qn = cpow_int(q0, n);
          const Complex one(1.0, 0.0);
          const Complex bracket = one + p * (one - qm) / (one - p) +
                                  p * qm * (one - qn) / (one - p);
          CHECK(rel_err(qpoch_finite(p * q0, q, m + n),
                        qpoch_finite(p, q, m + n) * bracket) < 1e-12);

          // (bq; q)_m = (b; q)_m [1 + b(1-q^m)/(1-b)]
          const Complex bracket_b = one + p * (one - qm) / (one - p);
          CHECK(rel_err(qpoch_finite(p * q0, q, m),
                        qpoch_finite(p, q, m) * bracket_b) < 1e-12);

          // 1/(c/q; q)_{m+n} = [c q^{m+n}/(c-q) - q/(c-q)] / (c; q)_{m+n}
          if (std::abs(p - q0) < 0.05 || std::abs(p) < 0.05) continue;
          const Complex lhs = one / qpoch_finite(p / q0, q, m + n);
          const Complex rhs = (p * cpow_int(q0, m + n) / (p - q0) - q0 / (p - q0)) /
                              qpoch_finite(p, q, m + n);
          CHECK(rel_err(lhs, rhs) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("QBase rejects bad moduli and non-finite input") {
  CHECK_THROWS_AS(QBase(Complex(0.0, 0.0)), DomainError);
  CHECK_THROWS_AS(QBase(Complex(1.0, 0.0)), DomainError);
  CHECK_THROWS_AS(QBase(Complex(0.8, 0.8)), DomainError);
  CHECK_THROWS_AS(QBase(Complex(std::nan(""), 0.0)), DomainError);
  CHECK_NOTHROW(QBase(Complex(0.0, 0.99)));
}

TEST_CASE("cpow_int") {
  const Complex z(0.3, -0.4);
  CHECK(cpow_int(z, 0) == Complex(1.0, 0.0));
  CHECK(cpow_int(z, 1) == z);
  CHECK(rel_err(cpow_int(z, 5), z * z * z * z * z) < 1e-15);
  CHECK(rel_err(cpow_int(z, -3) * cpow_int(z, 3), Complex(1.0, 0.0)) < 1e-14);
  CHECK_THROWS_AS(cpow_int(Complex(0.0, 0.0), -1), DomainError);
}
