#include "entail/sorted.hpp"

namespace entail {

namespace {
PureRef lt_sigma_from(const Term& t, const Sigma& sigma, std::size_t from) {
  for (std::size_t i = from; i < sigma.atoms.size(); ++i) {
    const auto& a = sigma.atoms[i];
    if (a.is_emp()) continue;
    return Pure::mk_atom(Rel::Lt, t, a.fst);
  }
  return Pure::mk_true();
}

PureRef sorted_prime(const Sigma& sigma, std::size_t from) {
  if (from >= sigma.atoms.size()) return Pure::mk_true();
  const auto& a = sigma.atoms[from];
  switch (a.kind) {
    case SpatialAtom::Kind::Emp: return sorted_prime(sigma, from + 1);
    case SpatialAtom::Kind::PointsTo:
      return Pure::mk_and(lt_sigma_from(a.fst, sigma, from + 1),
                          sorted_prime(sigma, from + 1));
    case SpatialAtom::Kind::Arr:
      return Pure::mk_and(
          Pure::mk_atom(Rel::Le, a.fst, a.snd),
          Pure::mk_and(lt_sigma_from(a.snd, sigma, from + 1),
                       sorted_prime(sigma, from + 1)));
  }
  return Pure::mk_true();
}
}  // namespace

PureRef lt_sigma(const Term& t, const Sigma& sigma) {
  return lt_sigma_from(t, sigma, 0);
}

PureRef sorted_formula(const Sigma& sigma) {
  return Pure::mk_and(lt_sigma(Term(0), sigma), sorted_prime(sigma, 0));
}

std::vector<SortedEntailment> decompose(const Entailment& e) {
  // Sorted conjuncts go to the right of the existing pure part.
  auto sorted_heap = [](const SymbolicHeap& h) {
    SymbolicHeap out = h;
    out.pure = Pure::mk_and(h.pure, sorted_formula(h.spatial));
    return out;
  };

  std::vector<SymbolicHeap> all_succ;
  std::vector<PureRef> all_succ_raw;
  for (const auto& succ : e.succedents) {
    for (auto& p : permutations(succ)) {
      all_succ_raw.push_back(p.pure);
      all_succ.push_back(sorted_heap(p));
    }
  }

  std::vector<SortedEntailment> out;
  for (auto& ap : permutations(e.antecedent)) {
    SortedEntailment se;
    se.antecedent_raw_pure = ap.pure;
    se.antecedent = sorted_heap(ap);
    se.succedents = all_succ;
    se.succedent_raw_pures = all_succ_raw;
    out.push_back(std::move(se));
  }
  return out;
}

}  // namespace entail
