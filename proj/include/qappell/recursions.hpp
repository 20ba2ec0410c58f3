#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qappell/relations.hpp"

namespace qappell {

enum class Formula { First, Second };

// One of the 32 n-step recursion formulas (16 theorems, two formulas each).
struct TheoremId {
  int theorem = 1;  // 1..16
  Formula formula = Formula::First;
  Variant variant = Variant::AsPrinted;
};

struct ShiftRequest {
  TheoremId id;
  PhiSpec base;
  int n = 1;  // shift order; capped at kMaxShiftOrder (0 returns the identity)
};

inline constexpr int kMaxShiftOrder = 12;

bool theorem_exists(int theorem);
PhiKind theorem_kind(int theorem);
bool is_flagged(const TheoremId& id);

// The contiguous relation the formula degenerates to at n = 1.
RelationId generating_relation(const TheoremId& id);

// Left-hand side: base with the theorem's parameter shifted by q^{+-n}.
PhiSpec recursion_lhs(const TheoremId& id, const PhiSpec& base, int n);

// Full right-hand side of the recursion formula as a term list.
// Iterated a-forms have 1+2n terms, iterated b-forms 1+n, closed a-forms
// (n+1)(n+2)/2 and closed b/c-forms n+1.
TermList recursion_rhs(const ShiftRequest& req);

// Sum of coeff_i * eval_phi(spec_i); tail bound adds |coeff_i| * tail_i.
// Evaluation errors are rethrown annotated with the offending term index.
SeriesValue evaluate_term_list(const TermList& tl, const EvalConfig& cfg = {});

// Residual of the recursion at one base point.
double recursion_residual(const ShiftRequest& req, const EvalConfig& cfg = {});

// Residual between the two right-hand sides of a theorem pair that targets
// the same shift (no evaluation of the shifted function itself).
double cross_check(const std::pair<TheoremId, TheoremId>& pair,
                   const PhiSpec& base, int n, const EvalConfig& cfg = {});

// The iterated/closed pairs targeting the same shift:
// (1,2), (3,4), (6,7), (8,9), (11,12), (14,15).
const std::vector<std::pair<int, int>>& cross_check_pairs();

// String IDs: thm<N>.<1|2>[.printed|.derived].
std::string theorem_name(const TheoremId& id, bool include_variant);

struct ParsedTheorem {
  TheoremId id;
  bool variant_pinned = false;
};
ParsedTheorem parse_theorem(const std::string& name);  // throws UnknownIdentity

struct TheoremEntry {
  TheoremId id;  // canonical (variant AsPrinted)
  PhiKind kind;
  std::string anchor;
  bool flagged;
  std::string note;
};

// The 32 recursion formulas in catalog order.
const std::vector<TheoremEntry>& recursions_catalog();

}  // namespace qappell
