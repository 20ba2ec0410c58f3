#pragma once

#include <string>
#include <vector>

#include "qappell/qcore.hpp"

namespace qappell {

enum class PhiKind { Phi1, Phi2, Phi3, Phi4 };

const char* to_string(PhiKind kind);
PhiKind phi_kind_from_string(const std::string& s);

// Named parameter slots. Which slots exist depends on the kind:
//   Phi1: a, b, b'      over c
//   Phi2: a, b, b'      over c, c'
//   Phi3: a, a', b, b'  over c
//   Phi4: a, b          over c, c'
enum class Param { A, APrime, B, BPrime, C, CPrime };

const char* to_string(Param p);

// One q-Appell function instance: kind, base q, parameters and arguments.
struct PhiSpec {
  PhiKind kind;
  QBase q;
  std::vector<Complex> numerators;
  std::vector<Complex> denominators;
  Complex x;
  Complex y;

  static PhiSpec phi1(Complex q, Complex a, Complex b, Complex bp, Complex c,
                      Complex x, Complex y);
  static PhiSpec phi2(Complex q, Complex a, Complex b, Complex bp, Complex c,
                      Complex cp, Complex x, Complex y);
  static PhiSpec phi3(Complex q, Complex a, Complex ap, Complex b, Complex bp,
                      Complex c, Complex x, Complex y);
  static PhiSpec phi4(Complex q, Complex a, Complex b, Complex c, Complex cp,
                      Complex x, Complex y);

  // Throws DomainError unless list lengths match the kind, all values are
  // finite and |x| < 1, |y| < 1.
  void validate() const;

  bool has_param(Param p) const;
  Complex param(Param p) const;           // throws UnsupportedRelation if absent
  PhiSpec with_param(Param p, Complex v) const;
  // Copy with the slot multiplied by q^power.
  PhiSpec shifted(Param p, long power) const;
  // Copy with x -> x q^xpow, y -> y q^ypow.
  PhiSpec with_args_shifted(long xpow, long ypow) const;

  // The equivalent spec with the two summation indices exchanged
  // (swap b <-> b', c <-> c', a <-> a', x <-> y as the kind requires).
  PhiSpec swapped() const;
};

// Evaluation controls for the defining double series.
struct EvalConfig {
  double tol = 1e-13;    // target absolute size of the boundary terms
  int max_layers = 500;  // cap on m+n
  double pole_eps = 1e-8;
};

struct SeriesValue {
  Complex value;
  int layers_used = 0;    // largest m+n included in the sum
  double tail_bound = 0;  // heuristic geometric estimate of the truncation error
};

// The exact (m, n) summand of the defining series, built from qcore primitives.
Complex term(const PhiSpec& spec, long m, long n,
             double pole_eps = kDefaultPoleEps);

// Sums the defining double series over anti-diagonal layers m+n = 0, 1, 2, ...
// in a fixed order until the largest term on three consecutive layers falls
// below cfg.tol. Deterministic: identical inputs give bit-identical results.
SeriesValue eval_phi(const PhiSpec& spec, const EvalConfig& cfg = {});

}  // namespace qappell
