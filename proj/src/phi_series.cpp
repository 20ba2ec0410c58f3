#include "qappell/phi_series.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace qappell {

const char* to_string(PhiKind kind) {
  switch (kind) {
    case PhiKind::Phi1: return "phi1";
    case PhiKind::Phi2: return "phi2";
    case PhiKind::Phi3: return "phi3";
    case PhiKind::Phi4: return "phi4";
  }
  std::abort();
}

PhiKind phi_kind_from_string(const std::string& s) {
  if (s == "phi1") return PhiKind::Phi1;
  if (s == "phi2") return PhiKind::Phi2;
  if (s == "phi3") return PhiKind::Phi3;
  if (s == "phi4") return PhiKind::Phi4;
  throw DomainError("unknown function kind: " + s);
}

const char* to_string(Param p) {
  switch (p) {
    case Param::A: return "a";
    case Param::APrime: return "ap";
    case Param::B: return "b";
    case Param::BPrime: return "bp";
    case Param::C: return "c";
    case Param::CPrime: return "cp";
  }
  std::abort();
}

PhiSpec PhiSpec::phi1(Complex q, Complex a, Complex b, Complex bp, Complex c,
                      Complex x, Complex y) {
  return PhiSpec{PhiKind::Phi1, QBase(q), {a, b, bp}, {c}, x, y};
}

PhiSpec PhiSpec::phi2(Complex q, Complex a, Complex b, Complex bp, Complex c,
                      Complex cp, Complex x, Complex y) {
  return PhiSpec{PhiKind::Phi2, QBase(q), {a, b, bp}, {c, cp}, x, y};
}

PhiSpec PhiSpec::phi3(Complex q, Complex a, Complex ap, Complex b, Complex bp,
                      Complex c, Complex x, Complex y) {
  return PhiSpec{PhiKind::Phi3, QBase(q), {a, ap, b, bp}, {c}, x, y};
}

PhiSpec PhiSpec::phi4(Complex q, Complex a, Complex b, Complex c, Complex cp,
                      Complex x, Complex y) {
  return PhiSpec{PhiKind::Phi4, QBase(q), {a, b}, {c, cp}, x, y};
}

namespace {

struct KindShape {
  size_t numerators;
  size_t denominators;
};

KindShape shape_of(PhiKind kind) {
  switch (kind) {
    case PhiKind::Phi1: return {3, 1};
    case PhiKind::Phi2: return {3, 2};
    case PhiKind::Phi3: return {4, 1};
    case PhiKind::Phi4: return {2, 2};
  }
  std::abort();
}

// Slot of a named parameter: {in_numerators, index}, or {false, -1} if the
// kind does not carry that parameter.
struct Slot {
  bool valid = false;
  bool numerator = true;
  int index = -1;
};

Slot slot_of(PhiKind kind, Param p) {
  switch (kind) {
    case PhiKind::Phi1:
    case PhiKind::Phi2:
      switch (p) {
        case Param::A: return {true, true, 0};
        case Param::B: return {true, true, 1};
        case Param::BPrime: return {true, true, 2};
        case Param::C: return {true, false, 0};
        case Param::CPrime:
          if (kind == PhiKind::Phi2) return {true, false, 1};
          return {};
        default: return {};
      }
    case PhiKind::Phi3:
      switch (p) {
        case Param::A: return {true, true, 0};
        case Param::APrime: return {true, true, 1};
        case Param::B: return {true, true, 2};
        case Param::BPrime: return {true, true, 3};
        case Param::C: return {true, false, 0};
        default: return {};
      }
    case PhiKind::Phi4:
      switch (p) {
        case Param::A: return {true, true, 0};
        case Param::B: return {true, true, 1};
        case Param::C: return {true, false, 0};
        case Param::CPrime: return {true, false, 1};
        default: return {};
      }
  }
  std::abort();
}

}  // namespace

void PhiSpec::validate() const {
  const KindShape s = shape_of(kind);
  if (numerators.size() != s.numerators || denominators.size() != s.denominators) {
    throw DomainError(std::string("parameter list lengths do not match ") +
                      to_string(kind));
  }
  for (const Complex& v : numerators) require_finite(v, "numerator parameter");
  for (const Complex& v : denominators) require_finite(v, "denominator parameter");
  require_finite(x, "x");
  require_finite(y, "y");
  if (std::abs(x) >= 1.0 || std::abs(y) >= 1.0) {
    throw DomainError("arguments must satisfy |x| < 1 and |y| < 1");
  }
}

bool PhiSpec::has_param(Param p) const { return slot_of(kind, p).valid; }

Complex PhiSpec::param(Param p) const {
  const Slot s = slot_of(kind, p);
  if (!s.valid) {
    throw UnsupportedRelation(std::string(to_string(kind)) + " has no parameter " +
                              to_string(p));
  }
  return s.numerator ? numerators[s.index] : denominators[s.index];
}

PhiSpec PhiSpec::with_param(Param p, Complex v) const {
  const Slot s = slot_of(kind, p);
  if (!s.valid) {
    throw UnsupportedRelation(std::string(to_string(kind)) + " has no parameter " +
                              to_string(p));
  }
  PhiSpec copy = *this;
  (s.numerator ? copy.numerators[s.index] : copy.denominators[s.index]) = v;
  return copy;
}

PhiSpec PhiSpec::shifted(Param p, long power) const {
  return with_param(p, param(p) * cpow_int(q.value(), power));
}

PhiSpec PhiSpec::with_args_shifted(long xpow, long ypow) const {
  PhiSpec copy = *this;
  copy.x = x * cpow_int(q.value(), xpow);
  copy.y = y * cpow_int(q.value(), ypow);
  return copy;
}

PhiSpec PhiSpec::swapped() const {
  PhiSpec s = *this;
  s.x = y;
  s.y = x;
  switch (kind) {
    case PhiKind::Phi1:  // [a; b, b'; c]     -> [a; b', b; c]
      std::swap(s.numerators[1], s.numerators[2]);
      break;
    case PhiKind::Phi2:  // [a; b, b'; c, c'] -> [a; b', b; c', c]
      std::swap(s.numerators[1], s.numerators[2]);
      std::swap(s.denominators[0], s.denominators[1]);
      break;
    case PhiKind::Phi3:  // [a, a'; b, b'; c] -> [a', a; b', b; c]
      std::swap(s.numerators[0], s.numerators[1]);
      std::swap(s.numerators[2], s.numerators[3]);
      break;
    case PhiKind::Phi4:  // [a; b; c, c']     -> [a; b; c', c]
      std::swap(s.denominators[0], s.denominators[1]);
      break;
  }
  return s;
}

namespace {

// Which index each parameter couples to in the defining series: the x index m,
// the y index n, or their sum.
enum class Couples { M, N, S };

struct Coupling {
  Complex value;
  Couples couples;
};

// Pochhammer couplings of the four kinds (numerators, then denominators).
void couplings(const PhiSpec& spec, std::vector<Coupling>& nums,
               std::vector<Coupling>& dens) {
  const auto& p = spec.numerators;
  const auto& d = spec.denominators;
  switch (spec.kind) {
    case PhiKind::Phi1:
      nums = {{p[0], Couples::S}, {p[1], Couples::M}, {p[2], Couples::N}};
      dens = {{d[0], Couples::S}};
      return;
    case PhiKind::Phi2:
      nums = {{p[0], Couples::S}, {p[1], Couples::M}, {p[2], Couples::N}};
      dens = {{d[0], Couples::M}, {d[1], Couples::N}};
      return;
    case PhiKind::Phi3:
      nums = {{p[0], Couples::M}, {p[1], Couples::N}, {p[2], Couples::M},
              {p[3], Couples::N}};
      dens = {{d[0], Couples::S}};
      return;
    case PhiKind::Phi4:
      nums = {{p[0], Couples::S}, {p[1], Couples::S}};
      dens = {{d[0], Couples::M}, {d[1], Couples::N}};
      return;
  }
  std::abort();
}

// (x;q)_n with every factor checked against pole_eps; denominator use only.
Complex qpoch_checked(Complex x, Complex q, long n, double pole_eps) {
  Complex prod(1.0, 0.0);
  Complex qk(1.0, 0.0);
  for (long k = 0; k < n; ++k) {
    const Complex factor = Complex(1.0, 0.0) - x * qk;
    if (std::abs(factor) < pole_eps) {
      throw DegenerateDenominator(
          "denominator q-Pochhammer factor 1 - z q^" + std::to_string(k) +
          " is numerically zero");
    }
    prod *= factor;
    qk *= q;
  }
  return prod;
}

}  // namespace

Complex term(const PhiSpec& spec, long m, long n, double pole_eps) {
  spec.validate();
  if (m < 0 || n < 0) throw DomainError("term indices must be non-negative");
  const QBase& q = spec.q;
  std::vector<Coupling> nums, dens;
  couplings(spec, nums, dens);
  auto order = [&](Couples c) { return c == Couples::M ? m : c == Couples::N ? n : m + n; };
  Complex t(1.0, 0.0);
  for (const Coupling& u : nums) t *= qpoch_finite(u.value, q, order(u.couples));
  for (const Coupling& u : dens) t /= qpoch_checked(u.value, q.value(), order(u.couples), pole_eps);
  t /= qpoch_checked(q.value(), q.value(), m, pole_eps);
  t /= qpoch_checked(q.value(), q.value(), n, pole_eps);
  t *= cpow_int(spec.x, m) * cpow_int(spec.y, n);
  require_finite(t, "series term");
  return t;
}

namespace {

// Incrementally extended column products used by eval_phi. column[k] holds
// prod(numerator factors) / prod(denominator factors) for index value k,
// including the (q;q)_k factorial and the argument power when present.
class ColumnTable {
 public:
  void init(std::vector<Complex> nums, std::vector<Complex> dens, Complex q,
            Complex arg_pow_base, bool with_factorial, double pole_eps) {
    nums_ = std::move(nums);
    dens_ = std::move(dens);
    num_qpow_.assign(nums_.size(), Complex(1.0, 0.0));
    den_qpow_.assign(dens_.size(), Complex(1.0, 0.0));
    q_ = q;
    qpow_next_ = q;  // q^{k+1} for the factorial factor (1 - q^{k+1})
    arg_base_ = arg_pow_base;
    with_factorial_ = with_factorial;
    pole_eps_ = pole_eps;
    vals_.assign(1, Complex(1.0, 0.0));
  }

  // Extends so vals_[k] exists.
  void ensure(size_t k) {
    while (vals_.size() <= k) {
      const size_t s = vals_.size() - 1;  // extend from index s to s+1
      Complex next = vals_[s];
      for (size_t i = 0; i < nums_.size(); ++i) {
        next *= Complex(1.0, 0.0) - nums_[i] * num_qpow_[i];
        num_qpow_[i] *= q_;
      }
      for (size_t i = 0; i < dens_.size(); ++i) {
        const Complex factor = Complex(1.0, 0.0) - dens_[i] * den_qpow_[i];
        if (std::abs(factor) < pole_eps_) {
          throw DegenerateDenominator(
              "denominator parameter hits a pole at q-power " + std::to_string(s));
        }
        next /= factor;
        den_qpow_[i] *= q_;
      }
      if (with_factorial_) {
        next /= Complex(1.0, 0.0) - qpow_next_;
        qpow_next_ *= q_;
      }
      next *= arg_base_;
      vals_.push_back(next);
    }
  }

  const Complex& operator[](size_t k) const { return vals_[k]; }

 private:
  std::vector<Complex> nums_, dens_;
  std::vector<Complex> num_qpow_, den_qpow_;
  Complex q_, qpow_next_, arg_base_;
  bool with_factorial_ = false;
  double pole_eps_ = kDefaultPoleEps;
  std::vector<Complex> vals_;
};

}  // namespace

SeriesValue eval_phi(const PhiSpec& spec, const EvalConfig& cfg) {
  spec.validate();
  if (!(cfg.tol > 0.0)) throw DomainError("cfg.tol must be positive");
  if (cfg.max_layers < 1) throw DomainError("cfg.max_layers must be >= 1");

  const Complex q = spec.q.value();
  std::vector<Coupling> nums, dens;
  couplings(spec, nums, dens);

  // Upfront pole scan of every denominator factor reachable within the cap.
  for (const Coupling& d : dens) {
    Complex qj(1.0, 0.0);
    for (int j = 0; j <= cfg.max_layers; ++j) {
      if (std::abs(Complex(1.0, 0.0) - d.value * qj) < cfg.pole_eps) {
        throw DegenerateDenominator("denominator parameter within pole_eps of q^-" +
                                    std::to_string(j));
      }
      qj *= q;
    }
  }

  auto pick = [&](const std::vector<Coupling>& src, Couples which) {
    std::vector<Complex> out;
    for (const Coupling& u : src)
      if (u.couples == which) out.push_back(u.value);
    return out;
  };

  // term(m, n) = S[m+n] * M[m] * N[n]
  ColumnTable M, N, S;
  M.init(pick(nums, Couples::M), pick(dens, Couples::M), q, spec.x, true, cfg.pole_eps);
  N.init(pick(nums, Couples::N), pick(dens, Couples::N), q, spec.y, true, cfg.pole_eps);
  S.init(pick(nums, Couples::S), pick(dens, Couples::S), q, Complex(1.0, 0.0), false,
         cfg.pole_eps);

  Complex total(0.0, 0.0);
  double quiet[3] = {0, 0, 0};  // layer maxima of the last three layers
  int layers = 0;
  for (int s = 0;; ++s) {
    M.ensure(s);
    N.ensure(s);
    S.ensure(s);
    Complex layer_sum(0.0, 0.0);
    double layer_max = 0.0;
    for (int m = 0; m <= s; ++m) {
      const Complex t = S[s] * M[m] * N[s - m];
      layer_sum += t;
      layer_max = std::max(layer_max, std::abs(t));
    }
    total += layer_sum;
    layers = s;
    quiet[s % 3] = layer_max;
    if (s >= 2 && quiet[0] < cfg.tol && quiet[1] < cfg.tol && quiet[2] < cfg.tol) break;
    if (s == cfg.max_layers) {
      throw NoConvergence("layer cap " + std::to_string(cfg.max_layers) +
                          " reached before tolerance " + std::to_string(cfg.tol));
    }
  }
  require_finite(total, "series value");

  const double rho = std::max({std::abs(spec.x), std::abs(spec.y), std::abs(q)});
  const double boundary = std::max({quiet[0], quiet[1], quiet[2]});
  SeriesValue out;
  out.value = total;
  out.layers_used = layers;
  out.tail_bound = boundary * rho / ((1.0 - rho) * (1.0 - rho));
  return out;
}

}  // namespace qappell
