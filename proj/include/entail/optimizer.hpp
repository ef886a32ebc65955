#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "entail/backend.hpp"
#include "entail/syntax.hpp"

namespace entail {

struct PruneLog {
  struct Dropped {
    std::size_t index = 0;
    PureRef reason;  // the joint formula shown unsatisfiable
  };
  std::vector<Dropped> dropped;
  bool antecedent_unsat = false;
};

// Pairwise address-disjointness of one atom against a spatial formula.
PureRef disj_formula(const SpatialAtom& atom, const Sigma& sigma);

// Pure characterization of "some heap satisfies sigma": pairwise
// disjointness, nonempty array ranges, addresses >= 1.
PureRef well_formed(const Sigma& sigma);

// Sum of cell counts as a term: 1 per points-to, hi-lo+1 per array.
Term size_term(const Sigma& sigma);

// Invertible frame rule, applied while a (non-emp, binder-free) antecedent
// atom occurs syntactically in every succedent. Returns the rewritten
// entailment and the number of frames removed.
std::pair<Entailment, std::size_t> apply_frame_rule(const Entailment& e);

// True iff the antecedent has no model: Exists(free vars). Pi AND
// wellFormed(Sigma) is unsatisfiable. Unknown solver answers count as
// "not proven unsat".
bool antecedent_unsat(const SymbolicHeap& phi, const SolverConfig& cfg,
                      SolverStats* stats = nullptr);

// Drops succedents that are jointly unsatisfiable with the antecedent under
// the sound size-equality encoding; Unknown keeps the succedent. When the
// antecedent alone is unsatisfiable, every succedent is dropped and the log
// flag is set.
std::pair<Entailment, PruneLog> prune_succedents(const Entailment& e,
                                                 const SolverConfig& cfg,
                                                 SolverStats* stats = nullptr);

}  // namespace entail
