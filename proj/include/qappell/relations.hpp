#pragma once

#include <string>
#include <vector>

#include "qappell/phi_series.hpp"

namespace qappell {

enum class Direction { Up, Down };
enum class Variant { AsPrinted, DefinitionDerived };

const char* to_string(Direction d);
const char* to_string(Variant v);

// One weighted Phi instance; a TermList is one side of an identity.
struct Term {
  Complex coeff;
  PhiSpec spec;
};

struct TermList {
  std::vector<Term> terms;
};

// Identifies one single-step contiguous relation: the named parameter of the
// given kind shifted by q (Up) or 1/q (Down). `variant` only matters for the
// flagged c-relations of Phi2/Phi4, where the printed argument shifts
// disagree with what the defining series gives.
struct RelationId {
  PhiKind kind;
  Param parameter;  // A, B or C
  Direction direction;
  Variant variant = Variant::AsPrinted;
};

// Phi1: a,b,c  Phi2: a,b,c  Phi3: b,c  Phi4: a,c  (20 relations).
bool relation_exists(PhiKind kind, Param parameter);
bool is_flagged(const RelationId& rel);

// Left-hand side of the relation: base with the parameter shifted by q^{+-1}.
PhiSpec contiguous_lhs(const RelationId& rel, const PhiSpec& base);

// Right-hand side as a term list over the base point.
TermList contiguous_rhs(const RelationId& rel, const PhiSpec& base);

// r = |L - R| / (1e-300 + max(1, |L|, |R|)).
double residual_norm(Complex lhs, Complex rhs);

// Residual of the relation at one base point: eval_phi on the shifted spec
// against the evaluated right-hand side.
double contiguous_residual(const RelationId& rel, const PhiSpec& base,
                           const EvalConfig& cfg = {});

// String IDs: phi<k>.<param>.<up|down>[.printed|.derived]. The variant suffix
// is only meaningful (and only accepted) for flagged relations.
std::string relation_name(const RelationId& rel, bool include_variant);

struct ParsedRelation {
  RelationId id;
  bool variant_pinned = false;
};
ParsedRelation parse_relation(const std::string& name);  // throws UnknownIdentity

struct RelationEntry {
  RelationId id;  // canonical (variant AsPrinted)
  std::string anchor;
  bool flagged;
  std::string note;  // discrepancy description for flagged entries
};

// The 20 contiguous relations in catalog order.
const std::vector<RelationEntry>& relations_catalog();

}  // namespace qappell
