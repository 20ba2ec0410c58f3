#include "qappell/recursions.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace qappell {

namespace {

const Complex kOne(1.0, 0.0);

enum class Shape { AIterated, AClosed, BIterated, BClosed, CShift };

Shape shape_of(int theorem) {
  switch (theorem) {
    case 1: case 6: case 14: return Shape::AIterated;
    case 2: case 7: case 15: return Shape::AClosed;
    case 3: case 8: case 11: return Shape::BIterated;
    case 4: case 9: case 12: return Shape::BClosed;
    case 5: case 10: case 13: case 16: return Shape::CShift;
    default:
      throw UnsupportedRelation("no theorem " + std::to_string(theorem));
  }
}

long binom2(long m) { return m >= 2 ? m * (m - 1) / 2 : 0; }

void check_coeff_denominator(Complex d, const char* what) {
  if (std::abs(d) < kDefaultPoleEps) {
    throw DegenerateCoefficient(std::string("coefficient denominator ") + what +
                                " is numerically zero");
  }
}

// Finite q-Pochhammer appearing in a coefficient denominator; every factor
// bounded away from zero.
Complex den_poch(Complex z, Complex q, long n, const char* what) {
  Complex prod = kOne;
  Complex qk = kOne;
  for (long k = 0; k < n; ++k) {
    const Complex factor = kOne - z * qk;
    check_coeff_denominator(factor, what);
    prod *= factor;
    qk *= q;
  }
  return prod;
}

// Numerator q-Pochhammer (z; q)_n, n >= 0.
Complex num_poch(Complex z, Complex q, long n) {
  Complex prod = kOne;
  Complex qk = kOne;
  for (long k = 0; k < n; ++k) {
    prod *= kOne - z * qk;
    qk *= q;
  }
  return prod;
}

bool c_couples_to_both(PhiKind kind) {
  return kind == PhiKind::Phi1 || kind == PhiKind::Phi3;
}

TermList a_iterated(const PhiSpec& base, int n, bool up) {
  const Complex q = base.q.value();
  const Complex a = base.param(Param::A);
  const Complex b = base.param(Param::B);
  const Complex c = base.param(Param::C);
  const bool split = base.kind != PhiKind::Phi1;
  const Param bslot = base.kind == PhiKind::Phi4 ? Param::B : Param::BPrime;
  const Param cslot = split ? Param::CPrime : Param::C;
  const Complex by = base.param(bslot);
  const Complex cy = base.param(cslot);
  check_coeff_denominator(kOne - c, "(1-c)");
  check_coeff_denominator(kOne - cy, split ? "(1-c')" : "(1-c)");

  TermList tl;
  tl.terms.push_back({kOne, base});
  const Complex cx_base = a * base.x * (kOne - b) / (kOne - c);
  const Complex cy_base = a * base.y * (kOne - by) / (kOne - cy);
  for (int k = 1; k <= n; ++k) {
    const Complex w = up ? cpow_int(q, k - 1) : -cpow_int(q, -k);
    const long apow = up ? k : 1 - k;
    tl.terms.push_back(
        {cx_base * w,
         base.shifted(Param::A, apow).shifted(Param::B, 1).shifted(Param::C, 1)});
  }
  for (int k = 1; k <= n; ++k) {
    const Complex w = up ? cpow_int(q, k - 1) : -cpow_int(q, -k);
    const long apow = up ? k : 1 - k;
    tl.terms.push_back({cy_base * w, base.shifted(Param::A, apow)
                                         .shifted(bslot, 1)
                                         .shifted(cslot, 1)
                                         .with_args_shifted(1, 0)});
  }
  return tl;
}

TermList a_closed(const PhiSpec& base, int n, bool up) {
  const QBase& qb = base.q;
  const Complex q = qb.value();
  const Complex a = base.param(Param::A);
  const Complex b = base.param(Param::B);
  const Complex c = base.param(Param::C);

  TermList tl;
  for (long k = 0; k <= n; ++k) {
    for (long i = 0; i <= k; ++i) {
      Complex num, den;
      PhiSpec s = base;
      switch (base.kind) {
        case PhiKind::Phi1:
          num = num_poch(b, q, k - i) * num_poch(base.param(Param::BPrime), q, i);
          den = den_poch(c, q, k, "(c;q)_k");
          s = base.shifted(Param::B, k - i).shifted(Param::BPrime, i)
                  .shifted(Param::C, k);
          break;
        case PhiKind::Phi2:
          num = num_poch(b, q, k - i) * num_poch(base.param(Param::BPrime), q, i);
          den = den_poch(c, q, k - i, "(c;q)_{k-i}") *
                den_poch(base.param(Param::CPrime), q, i, "(c';q)_i");
          s = base.shifted(Param::B, k - i).shifted(Param::BPrime, i)
                  .shifted(Param::C, k - i).shifted(Param::CPrime, i);
          break;
        case PhiKind::Phi4:
          num = num_poch(b, q, k);
          den = den_poch(c, q, k - i, "(c;q)_{k-i}") *
                den_poch(base.param(Param::CPrime), q, i, "(c';q)_i");
          s = base.shifted(Param::B, k).shifted(Param::C, k - i)
                  .shifted(Param::CPrime, i);
          break;
        default:
          throw UnsupportedRelation("no closed a-recursion for phi3");
      }
      if (up) s = s.shifted(Param::A, k);
      s = s.with_args_shifted(i, 0);
      const Complex qpow =
          up ? cpow_int(q, 2 * binom2(k)) : cpow_int(q, binom2(k) - long(n) * k);
      const Complex apow = up ? cpow_int(a, k) : cpow_int(-a, k);
      const Complex coeff = qbinom(n, k, qb) * qbinom(k, i, qb) * (num / den) *
                            qpow * apow * cpow_int(base.x, k - i) *
                            cpow_int(base.y, i);
      tl.terms.push_back({coeff, s});
    }
  }
  return tl;
}

TermList b_iterated(const PhiSpec& base, int n, bool up) {
  const Complex q = base.q.value();
  const Complex a = base.param(Param::A);
  const Complex b = base.param(Param::B);
  const Complex c = base.param(Param::C);
  check_coeff_denominator(kOne - c, "(1-c)");

  TermList tl;
  tl.terms.push_back({kOne, base});
  const Complex cx_base = b * base.x * (kOne - a) / (kOne - c);
  for (int k = 1; k <= n; ++k) {
    const Complex w = up ? cpow_int(q, k - 1) : -cpow_int(q, -k);
    const long bpow = up ? k : 1 - k;
    tl.terms.push_back(
        {cx_base * w,
         base.shifted(Param::A, 1).shifted(Param::B, bpow).shifted(Param::C, 1)});
  }
  return tl;
}

TermList b_closed(const PhiSpec& base, int n, bool up) {
  const QBase& qb = base.q;
  const Complex q = qb.value();
  const Complex a = base.param(Param::A);
  const Complex b = base.param(Param::B);
  const Complex c = base.param(Param::C);

  TermList tl;
  for (long k = 0; k <= n; ++k) {
    const Complex qpow =
        up ? cpow_int(q, 2 * binom2(k)) : cpow_int(q, binom2(k) - long(n) * k);
    const Complex bxpow = up ? cpow_int(b * base.x, k) : cpow_int(-b * base.x, k);
    const Complex coeff = qbinom(n, k, qb) * qpow * bxpow * num_poch(a, q, k) /
                          den_poch(c, q, k, "(c;q)_k");
    PhiSpec s = base.shifted(Param::A, k).shifted(Param::C, k);
    if (up) s = s.shifted(Param::B, k);
    tl.terms.push_back({coeff, s});
  }
  return tl;
}

TermList c_shift_down(const PhiSpec& base, int n, bool printed) {
  const QBase& qb = base.q;
  const Complex q = qb.value();
  const Complex c = base.param(Param::C);
  if (!(std::abs(c) > 0.0)) {
    throw DegenerateCoefficient("c = 0 in a c-down recursion");
  }
  const Complex prefactor = kOne / den_poch(q / c, q, n, "(q/c;q)_n");
  const long exp_delta = printed ? -1 : 0;
  const bool both = c_couples_to_both(base.kind);

  TermList tl;
  for (long k = 0; k <= n; ++k) {
    const Complex coeff = prefactor * qbinom(n, k, qb) * cpow_int(-c, k - n) *
                          cpow_int(q, binom2(n + 1 - k) + exp_delta);
    tl.terms.push_back({coeff, base.with_args_shifted(k, both ? k : 0)});
  }
  return tl;
}

TermList c_shift_up(const PhiSpec& base, int n, bool printed) {
  const QBase& qb = base.q;
  const Complex q = qb.value();
  const Complex c = base.param(Param::C);
  const bool both = c_couples_to_both(base.kind);

  TermList tl;
  for (long k = 0; k <= n; ++k) {
    const Complex coeff = qbinom(n, k, qb) * cpow_int(c, k) *
                          cpow_int(q, 2 * binom2(k)) *
                          num_poch(c * cpow_int(q, k), q, n - k);
    long yshift = 0;
    if (both) {
      yshift = k;
    } else if (base.kind == PhiKind::Phi4 && printed) {
      yshift = k;  // flagged printing; the definition keeps y fixed
    }
    tl.terms.push_back(
        {coeff, base.shifted(Param::C, k).with_args_shifted(k, yshift)});
  }
  return tl;
}

}  // namespace

bool theorem_exists(int theorem) { return theorem >= 1 && theorem <= 16; }

PhiKind theorem_kind(int theorem) {
  if (theorem >= 1 && theorem <= 5) return PhiKind::Phi1;
  if (theorem >= 6 && theorem <= 10) return PhiKind::Phi2;
  if (theorem >= 11 && theorem <= 13) return PhiKind::Phi3;
  if (theorem >= 14 && theorem <= 16) return PhiKind::Phi4;
  throw UnsupportedRelation("no theorem " + std::to_string(theorem));
}

bool is_flagged(const TheoremId& id) {
  if (id.formula == Formula::First) {
    return id.theorem == 5 || id.theorem == 10 || id.theorem == 13 ||
           id.theorem == 16;
  }
  return id.theorem == 16;
}

RelationId generating_relation(const TheoremId& id) {
  const Shape shape = shape_of(id.theorem);
  Param p = Param::A;
  Direction d = Direction::Up;
  switch (shape) {
    case Shape::AIterated:
    case Shape::AClosed:
      p = Param::A;
      d = id.formula == Formula::First ? Direction::Up : Direction::Down;
      break;
    case Shape::BIterated:
    case Shape::BClosed:
      p = Param::B;
      d = id.formula == Formula::First ? Direction::Up : Direction::Down;
      break;
    case Shape::CShift:
      p = Param::C;
      d = id.formula == Formula::First ? Direction::Down : Direction::Up;
      break;
  }
  return RelationId{theorem_kind(id.theorem), p, d, id.variant};
}

PhiSpec recursion_lhs(const TheoremId& id, const PhiSpec& base, int n) {
  const RelationId rel = generating_relation(id);
  if (base.kind != rel.kind) {
    throw UnsupportedRelation("base spec kind does not match the theorem");
  }
  return base.shifted(rel.parameter, rel.direction == Direction::Up ? n : -n);
}

TermList recursion_rhs(const ShiftRequest& req) {
  if (req.n < 0 || req.n > kMaxShiftOrder) {
    throw DomainError("shift order n must lie in [0, " +
                      std::to_string(kMaxShiftOrder) + "]");
  }
  const TheoremId& id = req.id;
  if (req.base.kind != theorem_kind(id.theorem)) {
    throw UnsupportedRelation("base spec kind does not match the theorem");
  }
  const bool first = id.formula == Formula::First;
  const bool printed = id.variant == Variant::AsPrinted;
  switch (shape_of(id.theorem)) {
    case Shape::AIterated: return a_iterated(req.base, req.n, first);
    case Shape::AClosed: return a_closed(req.base, req.n, first);
    case Shape::BIterated: return b_iterated(req.base, req.n, first);
    case Shape::BClosed: return b_closed(req.base, req.n, first);
    case Shape::CShift:
      return first ? c_shift_down(req.base, req.n, printed)
                   : c_shift_up(req.base, req.n, printed);
  }
  std::abort();
}

SeriesValue evaluate_term_list(const TermList& tl, const EvalConfig& cfg) {
  SeriesValue out;
  for (size_t i = 0; i < tl.terms.size(); ++i) {
    const Term& t = tl.terms[i];
    SeriesValue v;
    try {
      v = eval_phi(t.spec, cfg);
    } catch (const Error& e) {
      const std::string where = "term " + std::to_string(i) + ": ";
      try {
        throw;
      } catch (const DegenerateDenominator&) {
        throw DegenerateDenominator(where + e.what());
      } catch (const NoConvergence&) {
        throw NoConvergence(where + e.what());
      } catch (const DomainError&) {
        throw DomainError(where + e.what());
      } catch (const Error&) {
        throw Error(where + e.what());
      }
    }
    out.value += t.coeff * v.value;
    out.tail_bound += std::abs(t.coeff) * v.tail_bound;
    out.layers_used = std::max(out.layers_used, v.layers_used);
  }
  return out;
}

double recursion_residual(const ShiftRequest& req, const EvalConfig& cfg) {
  const Complex lhs = eval_phi(recursion_lhs(req.id, req.base, req.n), cfg).value;
  const Complex rhs = evaluate_term_list(recursion_rhs(req), cfg).value;
  return residual_norm(lhs, rhs);
}

double cross_check(const std::pair<TheoremId, TheoremId>& pair,
                   const PhiSpec& base, int n, const EvalConfig& cfg) {
  const RelationId r1 = generating_relation(pair.first);
  const RelationId r2 = generating_relation(pair.second);
  if (r1.kind != r2.kind || r1.parameter != r2.parameter ||
      r1.direction != r2.direction) {
    throw UnsupportedRelation("cross-check pair must target the same shift");
  }
  const Complex v1 = evaluate_term_list(recursion_rhs({pair.first, base, n}), cfg).value;
  const Complex v2 = evaluate_term_list(recursion_rhs({pair.second, base, n}), cfg).value;
  return residual_norm(v1, v2);
}

const std::vector<std::pair<int, int>>& cross_check_pairs() {
  static const std::vector<std::pair<int, int>> pairs = {
      {1, 2}, {3, 4}, {6, 7}, {8, 9}, {11, 12}, {14, 15}};
  return pairs;
}

std::string theorem_name(const TheoremId& id, bool include_variant) {
  std::string s = "thm" + std::to_string(id.theorem) + "." +
                  (id.formula == Formula::First ? "1" : "2");
  if (include_variant) s += std::string(".") + to_string(id.variant);
  return s;
}

ParsedTheorem parse_theorem(const std::string& name) {
  if (name.rfind("thm", 0) != 0) throw UnknownIdentity("unknown identity: " + name);
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : name.substr(3)) {
    if (ch == '.') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 2 && parts.size() != 3) {
    throw UnknownIdentity("unknown identity: " + name);
  }
  TheoremId id;
  try {
    size_t pos = 0;
    id.theorem = std::stoi(parts[0], &pos);
    if (pos != parts[0].size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw UnknownIdentity("unknown identity: " + name);
  }
  if (!theorem_exists(id.theorem)) throw UnknownIdentity("unknown identity: " + name);
  if (parts[1] == "1") id.formula = Formula::First;
  else if (parts[1] == "2") id.formula = Formula::Second;
  else throw UnknownIdentity("unknown identity: " + name);
  ParsedTheorem out{id, false};
  if (parts.size() == 3) {
    if (!is_flagged(id)) {
      throw UnknownIdentity("identity " + theorem_name(id, false) +
                            " has no printed/derived variants");
    }
    if (parts[2] == "printed") out.id.variant = Variant::AsPrinted;
    else if (parts[2] == "derived") out.id.variant = Variant::DefinitionDerived;
    else throw UnknownIdentity("unknown identity: " + name);
    out.variant_pinned = true;
  }
  return out;
}

const std::vector<TheoremEntry>& recursions_catalog() {
  static const std::vector<TheoremEntry> entries = [] {
    std::vector<TheoremEntry> v;
    auto add = [&](int thm, Formula f, std::string anchor, std::string note = "") {
      TheoremId id{thm, f, Variant::AsPrinted};
      v.push_back({id, theorem_kind(thm), std::move(anchor), is_flagged(id),
                   std::move(note)});
    };
    const std::string exp_note =
        "printed exponent binom(n+1-k,2)-1 is off by a global factor q; the "
        "derived variant uses binom(n+1-k,2)";
    const std::string shift_note =
        "printed arguments shift y -> yq^k; the series definition keeps y fixed";
    add(1, Formula::First, "Theorem 1, eq. (1)");
    add(1, Formula::Second, "Theorem 1, eq. (2)");
    add(2, Formula::First, "Theorem 2, eq. (5)");
    add(2, Formula::Second, "Theorem 2, eq. (6)");
    add(3, Formula::First, "Theorem 3, eq. (8)");
    add(3, Formula::Second, "Theorem 3, eq. (9)");
    add(4, Formula::First, "Theorem 4, eq. (12)");
    add(4, Formula::Second, "Theorem 4, eq. (13)");
    add(5, Formula::First, "Theorem 5, eq. (14)", exp_note);
    add(5, Formula::Second, "Theorem 5, eq. (15)");
    for (int thm = 6; thm <= 16; ++thm) {
      const std::string label = "Theorem " + std::to_string(thm);
      add(thm, Formula::First, label + " (i)",
          is_flagged({thm, Formula::First}) ? exp_note : "");
      add(thm, Formula::Second, label + " (ii)",
          is_flagged({thm, Formula::Second}) ? shift_note : "");
    }
    return v;
  }();
  return entries;
}

}  // namespace qappell
