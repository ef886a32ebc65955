#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "entail/backend.hpp"
#include "entail/optimizer.hpp"
#include "entail/semantics.hpp"
#include "entail/translation.hpp"

namespace entail {

struct Verdict {
  enum class Kind { Valid, Invalid, ConditionViolation, Unknown };

  Kind kind = Kind::Unknown;
  // Invalid: identity of a failing decomposed entailment, plus an optional
  // heap-level witness from the bounded oracle.
  std::optional<std::size_t> failing_sorted_index;
  std::optional<Countermodel> countermodel;
  ConditionReport condition;
  BackendVerdict::Reason unknown_reason = BackendVerdict::Reason::None;

  bool is_valid() const { return kind == Kind::Valid; }
  bool is_invalid() const { return kind == Kind::Invalid; }
  std::string str() const;
};

struct RunOptions {
  bool enable_u = true;
  bool enable_f = true;
  bool enable_simplify = false;
  SolverConfig solver;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> oracle_bounds;
};

struct RunStats {
  std::size_t permutations = 0;       // decomposed sorted entailments
  std::size_t succedents_pruned = 0;
  std::size_t frames_removed = 0;
  std::uint64_t solver_calls = 0;
};

struct DecideResult {
  Verdict verdict;
  RunStats stats;
};

// Condition check, then optimize (frame rule + antecedent-unsat
// short-circuit), decompose, prune, translate, and decide each sorted
// entailment; Invalid short-circuits, any Unknown blocks a Valid claim.
DecideResult decide_detailed(const Entailment& e, const RunOptions& opts);
Verdict decide(const Entailment& e, const RunOptions& opts);

}  // namespace entail
