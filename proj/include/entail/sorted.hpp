#pragma once

#include <vector>

#include "entail/syntax.hpp"

namespace entail {

// A decomposed entailment whose members each carry Sorted(spatial) in the
// pure part. raw_* keep the pure parts without the sorted conjunct; the
// translation consumes those and reintroduces sortedness itself.
struct SortedEntailment {
  SymbolicHeap antecedent;
  std::vector<SymbolicHeap> succedents;
  PureRef antecedent_raw_pure;
  std::vector<PureRef> succedent_raw_pures;

  Entailment as_entailment() const { return Entailment{antecedent, succedents}; }
};

// t < Sigma: compares t with the first address of sigma; true on emp.
PureRef lt_sigma(const Term& t, const Sigma& sigma);

// Sorted(Sigma) = 0 < Sigma /\ Sorted'(Sigma).
PureRef sorted_formula(const Sigma& sigma);

// One sorted entailment per permutation of the antecedent spatial part;
// each succedent list enumerates all permutations of every succedent
// (index-major, permutation-minor). The input is valid iff every result is.
std::vector<SortedEntailment> decompose(const Entailment& e);

}  // namespace entail
