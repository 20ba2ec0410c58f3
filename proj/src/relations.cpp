#include "qappell/relations.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace qappell {

const char* to_string(Direction d) { return d == Direction::Up ? "up" : "down"; }

const char* to_string(Variant v) {
  return v == Variant::AsPrinted ? "printed" : "derived";
}

bool relation_exists(PhiKind kind, Param parameter) {
  switch (kind) {
    case PhiKind::Phi1:
    case PhiKind::Phi2:
      return parameter == Param::A || parameter == Param::B || parameter == Param::C;
    case PhiKind::Phi3:
      return parameter == Param::B || parameter == Param::C;
    case PhiKind::Phi4:
      return parameter == Param::A || parameter == Param::C;
  }
  std::abort();
}

bool is_flagged(const RelationId& rel) {
  return (rel.kind == PhiKind::Phi2 || rel.kind == PhiKind::Phi4) &&
         rel.parameter == Param::C;
}

namespace {

const Complex kOne(1.0, 0.0);

void require_relation(const RelationId& rel) {
  if (!relation_exists(rel.kind, rel.parameter)) {
    throw UnsupportedRelation(std::string("no ") + to_string(rel.parameter) +
                              "-relation for " + to_string(rel.kind));
  }
}

void check_coeff_denominator(Complex d, const char* what) {
  if (std::abs(d) < kDefaultPoleEps) {
    throw DegenerateCoefficient(std::string("coefficient denominator ") + what +
                                " is numerically zero");
  }
}

// In Phi1/Phi3 the c-Pochhammer couples to m+n, so a c-shift drags both
// arguments; in Phi2/Phi4 it couples to m only and drags x alone.
bool c_couples_to_both(PhiKind kind) {
  return kind == PhiKind::Phi1 || kind == PhiKind::Phi3;
}

TermList a_up(const PhiSpec& base) {
  const Complex a = base.param(Param::A);
  const Complex b = base.param(Param::B);
  const Complex c = base.param(Param::C);
  const bool split = base.kind != PhiKind::Phi1;  // y-term denominator is c'
  const Complex cy = split ? base.param(Param::CPrime) : c;
  check_coeff_denominator(kOne - c, "(1-c)");
  check_coeff_denominator(kOne - cy, split ? "(1-c')" : "(1-c)");

  TermList tl;
  tl.terms.push_back({kOne, base});
  // x-correction: a -> aq, b -> bq, c -> cq
  {
    PhiSpec s = base.shifted(Param::A, 1).shifted(Param::B, 1).shifted(Param::C, 1);
    tl.terms.push_back({a * base.x * (kOne - b) / (kOne - c), s});
  }
  // y-correction: a -> aq, (b' or b) -> *q, (c or c') -> *q, x -> xq
  {
    const Param bslot = base.kind == PhiKind::Phi4 ? Param::B : Param::BPrime;
    const Param cslot = split ? Param::CPrime : Param::C;
    const Complex by = base.param(bslot);
    PhiSpec s = base.shifted(Param::A, 1).shifted(bslot, 1).shifted(cslot, 1)
                    .with_args_shifted(1, 0);
    tl.terms.push_back({a * base.y * (kOne - by) / (kOne - cy), s});
  }
  return tl;
}

TermList a_down(const PhiSpec& base) {
  const Complex q = base.q.value();
  const Complex a = base.param(Param::A);
  const Complex b = base.param(Param::B);
  const Complex c = base.param(Param::C);
  const bool split = base.kind != PhiKind::Phi1;
  const Complex cy = split ? base.param(Param::CPrime) : c;
  check_coeff_denominator(kOne - c, "(1-c)");
  check_coeff_denominator(kOne - cy, split ? "(1-c')" : "(1-c)");

  TermList tl;
  tl.terms.push_back({kOne, base});
  {
    PhiSpec s = base.shifted(Param::B, 1).shifted(Param::C, 1);
    tl.terms.push_back({-a * base.x * (kOne - b) / (q * (kOne - c)), s});
  }
  {
    const Param bslot = base.kind == PhiKind::Phi4 ? Param::B : Param::BPrime;
    const Param cslot = split ? Param::CPrime : Param::C;
    const Complex by = base.param(bslot);
    PhiSpec s = base.shifted(bslot, 1).shifted(cslot, 1).with_args_shifted(1, 0);
    tl.terms.push_back({-a * base.y * (kOne - by) / (q * (kOne - cy)), s});
  }
  return tl;
}

TermList b_up(const PhiSpec& base) {
  const Complex a = base.param(Param::A);
  const Complex b = base.param(Param::B);
  const Complex c = base.param(Param::C);
  check_coeff_denominator(kOne - c, "(1-c)");
  TermList tl;
  tl.terms.push_back({kOne, base});
  PhiSpec s = base.shifted(Param::A, 1).shifted(Param::B, 1).shifted(Param::C, 1);
  tl.terms.push_back({b * base.x * (kOne - a) / (kOne - c), s});
  return tl;
}

TermList b_down(const PhiSpec& base) {
  const Complex q = base.q.value();
  const Complex a = base.param(Param::A);
  const Complex b = base.param(Param::B);
  const Complex c = base.param(Param::C);
  check_coeff_denominator(kOne - c, "(1-c)");
  TermList tl;
  tl.terms.push_back({kOne, base});
  PhiSpec s = base.shifted(Param::A, 1).shifted(Param::C, 1);
  tl.terms.push_back({-b * base.x * (kOne - a) / (q * (kOne - c)), s});
  return tl;
}

TermList c_up(const PhiSpec& base, Variant variant) {
  const Complex c = base.param(Param::C);
  const long yshift =
      (c_couples_to_both(base.kind) || variant == Variant::AsPrinted) ? 1 : 0;
  TermList tl;
  tl.terms.push_back({kOne - c, base});
  tl.terms.push_back({c, base.shifted(Param::C, 1).with_args_shifted(1, yshift)});
  return tl;
}

TermList c_down(const PhiSpec& base, Variant variant) {
  const Complex q = base.q.value();
  const Complex c = base.param(Param::C);
  if (!(std::abs(c) > 0.0)) {
    throw DegenerateCoefficient("c = 0 in a c-down relation");
  }
  const Complex ratio = q / c;
  check_coeff_denominator(kOne - ratio, "(1-q/c)");
  const long yshift =
      (c_couples_to_both(base.kind) || variant == Variant::AsPrinted) ? 1 : 0;
  TermList tl;
  tl.terms.push_back({kOne / (kOne - ratio), base.with_args_shifted(1, yshift)});
  tl.terms.push_back({-ratio / (kOne - ratio), base});
  return tl;
}

}  // namespace

PhiSpec contiguous_lhs(const RelationId& rel, const PhiSpec& base) {
  require_relation(rel);
  if (base.kind != rel.kind) {
    throw UnsupportedRelation("base spec kind does not match the relation");
  }
  return base.shifted(rel.parameter, rel.direction == Direction::Up ? 1 : -1);
}

TermList contiguous_rhs(const RelationId& rel, const PhiSpec& base) {
  require_relation(rel);
  if (base.kind != rel.kind) {
    throw UnsupportedRelation("base spec kind does not match the relation");
  }
  switch (rel.parameter) {
    case Param::A:
      return rel.direction == Direction::Up ? a_up(base) : a_down(base);
    case Param::B:
      return rel.direction == Direction::Up ? b_up(base) : b_down(base);
    case Param::C:
      return rel.direction == Direction::Up ? c_up(base, rel.variant)
                                            : c_down(base, rel.variant);
    default:
      throw UnsupportedRelation("contiguous relations shift a, b or c only");
  }
}

double residual_norm(Complex lhs, Complex rhs) {
  return std::abs(lhs - rhs) /
         (1e-300 + std::max({1.0, std::abs(lhs), std::abs(rhs)}));
}

double contiguous_residual(const RelationId& rel, const PhiSpec& base,
                           const EvalConfig& cfg) {
  const Complex lhs = eval_phi(contiguous_lhs(rel, base), cfg).value;
  Complex rhs(0.0, 0.0);
  for (const Term& t : contiguous_rhs(rel, base).terms) {
    rhs += t.coeff * eval_phi(t.spec, cfg).value;
  }
  return residual_norm(lhs, rhs);
}

std::string relation_name(const RelationId& rel, bool include_variant) {
  std::string s = std::string(to_string(rel.kind)) + "." + to_string(rel.parameter) +
                  "." + to_string(rel.direction);
  if (include_variant) s += std::string(".") + to_string(rel.variant);
  return s;
}

ParsedRelation parse_relation(const std::string& name) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : name) {
    if (ch == '.') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3 && parts.size() != 4) {
    throw UnknownIdentity("unknown identity: " + name);
  }
  RelationId rel;
  if (parts[0] == "phi1") rel.kind = PhiKind::Phi1;
  else if (parts[0] == "phi2") rel.kind = PhiKind::Phi2;
  else if (parts[0] == "phi3") rel.kind = PhiKind::Phi3;
  else if (parts[0] == "phi4") rel.kind = PhiKind::Phi4;
  else throw UnknownIdentity("unknown identity: " + name);
  if (parts[1] == "a") rel.parameter = Param::A;
  else if (parts[1] == "b") rel.parameter = Param::B;
  else if (parts[1] == "c") rel.parameter = Param::C;
  else throw UnknownIdentity("unknown identity: " + name);
  if (parts[2] == "up") rel.direction = Direction::Up;
  else if (parts[2] == "down") rel.direction = Direction::Down;
  else throw UnknownIdentity("unknown identity: " + name);
  if (!relation_exists(rel.kind, rel.parameter)) {
    throw UnknownIdentity("unknown identity: " + name);
  }
  ParsedRelation out{rel, false};
  if (parts.size() == 4) {
    if (!is_flagged(rel)) {
      throw UnknownIdentity("identity " + relation_name(rel, false) +
                            " has no printed/derived variants");
    }
    if (parts[3] == "printed") out.id.variant = Variant::AsPrinted;
    else if (parts[3] == "derived") out.id.variant = Variant::DefinitionDerived;
    else throw UnknownIdentity("unknown identity: " + name);
    out.variant_pinned = true;
  }
  return out;
}

const std::vector<RelationEntry>& relations_catalog() {
  static const std::vector<RelationEntry> entries = [] {
    std::vector<RelationEntry> v;
    auto add = [&](PhiKind k, Param p, Direction d, std::string anchor,
                   std::string note = "") {
      RelationId id{k, p, d, Variant::AsPrinted};
      v.push_back({id, std::move(anchor), is_flagged(id), std::move(note)});
    };
    const std::string shift_note =
        "printed auxiliary term shifts y -> yq; the series definition keeps y fixed";
    add(PhiKind::Phi1, Param::A, Direction::Up, "eq. (3)");
    add(PhiKind::Phi1, Param::A, Direction::Down, "eq. (4)");
    add(PhiKind::Phi1, Param::B, Direction::Up, "eq. (10)");
    add(PhiKind::Phi1, Param::B, Direction::Down, "eq. (11)");
    add(PhiKind::Phi1, Param::C, Direction::Up, "display after eq. (16)");
    add(PhiKind::Phi1, Param::C, Direction::Down, "eq. (16)");
    add(PhiKind::Phi2, Param::A, Direction::Up, "sec. 2 display");
    add(PhiKind::Phi2, Param::A, Direction::Down, "sec. 2 display");
    add(PhiKind::Phi2, Param::B, Direction::Up, "sec. 2 display");
    add(PhiKind::Phi2, Param::B, Direction::Down, "sec. 2 display");
    add(PhiKind::Phi2, Param::C, Direction::Up, "sec. 2 display", shift_note);
    add(PhiKind::Phi2, Param::C, Direction::Down, "sec. 2 display", shift_note);
    add(PhiKind::Phi3, Param::B, Direction::Up, "sec. 3 display");
    add(PhiKind::Phi3, Param::B, Direction::Down, "sec. 3 display");
    add(PhiKind::Phi3, Param::C, Direction::Up, "sec. 3 display");
    add(PhiKind::Phi3, Param::C, Direction::Down, "sec. 3 display");
    add(PhiKind::Phi4, Param::A, Direction::Up, "sec. 4 display");
    add(PhiKind::Phi4, Param::A, Direction::Down, "sec. 4 display");
    add(PhiKind::Phi4, Param::C, Direction::Up, "sec. 4 display", shift_note);
    add(PhiKind::Phi4, Param::C, Direction::Down, "sec. 4 display", shift_note);
    return v;
  }();
  return entries;
}

}  // namespace qappell
