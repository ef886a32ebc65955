#include "entail/optimizer.hpp"

#include <algorithm>

namespace entail {

namespace {
PureRef disj_pair(const SpatialAtom& a, const SpatialAtom& b) {
  using K = SpatialAtom::Kind;
  if (a.kind == K::Emp || b.kind == K::Emp) return Pure::mk_true();
  if (a.kind == K::PointsTo && b.kind == K::PointsTo)
    return Pure::mk_atom(Rel::Ne, a.fst, b.fst);
  if (a.kind == K::PointsTo && b.kind == K::Arr)
    return Pure::mk_or(Pure::mk_atom(Rel::Lt, a.fst, b.fst),
                       Pure::mk_atom(Rel::Lt, b.snd, a.fst));
  if (a.kind == K::Arr && b.kind == K::PointsTo)
    return Pure::mk_or(Pure::mk_atom(Rel::Lt, b.fst, a.fst),
                       Pure::mk_atom(Rel::Lt, a.snd, b.fst));
  // Arr vs Arr
  return Pure::mk_or(Pure::mk_atom(Rel::Lt, a.snd, b.fst),
                     Pure::mk_atom(Rel::Lt, b.snd, a.fst));
}
}  // namespace

PureRef disj_formula(const SpatialAtom& atom, const Sigma& sigma) {
  PureRef out = Pure::mk_true();
  for (const auto& other : sigma.atoms)
    out = Pure::mk_and(out, disj_pair(atom, other));
  return out;
}

PureRef well_formed(const Sigma& sigma) {
  PureRef out = Pure::mk_true();
  const auto& atoms = sigma.atoms;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const auto& a = atoms[i];
    if (a.is_emp()) continue;
    out = Pure::mk_and(out, Pure::mk_atom(Rel::Le, Term(1), a.fst));
    if (a.kind == SpatialAtom::Kind::Arr)
      out = Pure::mk_and(out, Pure::mk_atom(Rel::Le, a.fst, a.snd));
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      out = Pure::mk_and(out, disj_pair(a, atoms[j]));
  }
  return out;
}

Term size_term(const Sigma& sigma) {
  Term total(0);
  for (const auto& a : sigma.atoms) {
    switch (a.kind) {
      case SpatialAtom::Kind::Emp: break;
      case SpatialAtom::Kind::PointsTo: total = total.plus_const(1); break;
      case SpatialAtom::Kind::Arr:
        total = total.plus(a.snd).minus(a.fst).plus_const(1);
        break;
    }
  }
  return total;
}

namespace {
bool remove_one(Sigma& sigma, const SpatialAtom& atom) {
  auto it = std::find(sigma.atoms.begin(), sigma.atoms.end(), atom);
  if (it == sigma.atoms.end()) return false;
  sigma.atoms.erase(it);
  return true;
}
}  // namespace

std::pair<Entailment, std::size_t> apply_frame_rule(const Entailment& e) {
  Entailment cur = e;
  std::size_t removed = 0;
  for (;;) {
    std::size_t pick = cur.antecedent.spatial.atoms.size();
    for (std::size_t i = 0; i < cur.antecedent.spatial.atoms.size(); ++i) {
      const auto& sigma = cur.antecedent.spatial.atoms[i];
      if (sigma.is_emp()) continue;
      auto sigma_vars = free_vars(Sigma{{sigma}});
      bool ok = !cur.succedents.empty();
      for (const auto& succ : cur.succedents) {
        bool occurs =
            std::find(succ.spatial.atoms.begin(), succ.spatial.atoms.end(),
                      sigma) != succ.spatial.atoms.end();
        bool binder_free = true;
        for (const auto& y : succ.ex_vars)
          if (sigma_vars.count(y)) binder_free = false;
        if (!occurs || !binder_free) {
          ok = false;
          break;
        }
      }
      if (ok) {
        pick = i;
        break;
      }
    }
    if (pick == cur.antecedent.spatial.atoms.size()) break;

    SpatialAtom frame = cur.antecedent.spatial.atoms[pick];
    cur.antecedent.spatial.atoms.erase(cur.antecedent.spatial.atoms.begin() +
                                       static_cast<std::ptrdiff_t>(pick));
    for (auto& succ : cur.succedents) remove_one(succ.spatial, frame);
    cur.antecedent.pure = Pure::mk_and(
        cur.antecedent.pure, disj_formula(frame, cur.antecedent.spatial));
    ++removed;
  }
  return {cur, removed};
}

namespace {
// Closes a formula existentially over its free variables (sorted order) and
// asks the backend whether it is unsatisfiable.
bool proves_unsat(const PureRef& f, const SolverConfig& cfg,
                  SolverStats* stats) {
  PureRef closed = f;
  auto vars = free_vars(f);
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    closed = Pure::mk_exists(*it, closed);
  // unsat(f) iff not-Exists(f) is valid
  BackendVerdict v = decide_validity(Pure::mk_not(closed), cfg, stats);
  return v.is_valid();
}
}  // namespace

bool antecedent_unsat(const SymbolicHeap& phi, const SolverConfig& cfg,
                      SolverStats* stats) {
  PureRef f = Pure::mk_and(phi.pure, well_formed(phi.spatial));
  return proves_unsat(f, cfg, stats);
}

std::pair<Entailment, PruneLog> prune_succedents(const Entailment& e,
                                                 const SolverConfig& cfg,
                                                 SolverStats* stats) {
  PruneLog log;
  Entailment out;
  out.antecedent = e.antecedent;

  PureRef ante =
      Pure::mk_and(e.antecedent.pure, well_formed(e.antecedent.spatial));
  if (proves_unsat(ante, cfg, stats)) {
    log.antecedent_unsat = true;
    for (std::size_t i = 0; i < e.succedents.size(); ++i)
      log.dropped.push_back({i, ante});
    return {out, log};
  }

  Term ante_size = size_term(e.antecedent.spatial);
  for (std::size_t i = 0; i < e.succedents.size(); ++i) {
    const auto& succ = e.succedents[i];
    PureRef inner = Pure::mk_and(
        Pure::mk_and(succ.pure, well_formed(succ.spatial)),
        Pure::mk_atom(Rel::Eq, ante_size, size_term(succ.spatial)));
    for (auto it = succ.ex_vars.rbegin(); it != succ.ex_vars.rend(); ++it)
      inner = Pure::mk_exists(*it, inner);
    PureRef joint = Pure::mk_and(ante, inner);
    if (proves_unsat(joint, cfg, stats))
      log.dropped.push_back({i, joint});
    else
      out.succedents.push_back(succ);
  }
  return {out, log};
}

}  // namespace entail
