#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entail/sorted.hpp"
#include "entail/syntax.hpp"

namespace entail {

// The three arguments of the recursive translation: pure part, left spatial
// formula and the ordered right-hand pairs (the order is the index set's
// linear order).
struct Obligation {
  PureRef pure = Pure::mk_true();
  Sigma left;
  std::vector<std::pair<PureRef, Sigma>> rights;
};

// Deterministic source of variables unused anywhere in the entailment;
// names use the reserved prefix plus this supply's namespace.
class FreshSupply {
public:
  explicit FreshSupply(std::string ns = "") : ns_(std::move(ns)) {}

  std::string draw();
  const std::vector<std::string>& drawn() const { return drawn_; }

private:
  std::string ns_;
  std::size_t counter_ = 0;
  std::vector<std::string> drawn_;
};

struct ConditionViolation {
  std::size_t succedent_index = 0;
  SpatialAtom atom;                    // the offending array atom
  std::vector<std::string> variables;  // existential variables in its size
};

struct ConditionReport {
  bool ok = true;
  std::vector<ConditionViolation> violations;
  std::string str() const;
};

// Every succedent array's size (hi - lo) must be free of that succedent's
// existential variables.
ConditionReport check_condition(const Entailment& e);

enum class Clause {
  EmpL, EmpR, EmpNEmp, EmpEmp, NEmpEmp, Empty,
  PtoPto, PtoArr, ArrPto, ArrArr,
};

const char* clause_name(Clause c);

// One entry per clause application; parent links give the recursion tree.
struct TraceStep {
  int parent = -1;
  Clause clause = Clause::Empty;
  std::size_t stars = 0;   // |Sigma| + sum |Sigma_i|
  std::size_t pairs = 0;   // |S|
  bool is_base = false;
  int depth = 0;
};
using Trace = std::vector<TraceStep>;

struct TranslateOptions {
  bool simplify = false;        // fold accumulated pure parts
  Trace* trace = nullptr;       // optional instrumentation sink
  std::size_t step_limit = 2'000'000;
};

struct TranslateOverflow : std::runtime_error {
  TranslateOverflow() : std::runtime_error("translation step limit exceeded") {}
};

struct TranslateResult {
  PureRef formula;
  std::vector<std::string> fresh;  // variables drawn, in draw order
};

// Unfolds the clause system top-to-bottom; all produced atoms are
// normalized, eliminating the transient extended terms.
TranslateResult translate_p(const Obligation& ob, FreshSupply& fresh,
                            const TranslateOptions& opts = {});

struct ConditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Closed validity formula for one sorted entailment: universally closes the
// free variables and the drawn fresh variables, existentially binds the
// succedent binders in index order, and guards every quantified variable
// with nonnegativity. Throws ConditionError on a non-conforming input.
PureRef build_validity_formula(const SortedEntailment& se, FreshSupply& fresh,
                               const TranslateOptions& opts = {});

// Light structural simplification: ground-atom folding, true/false
// absorption, duplicate-conjunct removal.
PureRef simplify_pure(const PureRef& f);

// Reusable validation for the instrumentation: every root-to-leaf chain
// must reach a base clause, checkpoint measures must not increase, and the
// depth must stay within 4 * (initial stars + pairs + 1).
struct TraceCheck {
  bool ok = true;
  std::string problem;
};
TraceCheck validate_trace(const Trace& trace);

}  // namespace entail
