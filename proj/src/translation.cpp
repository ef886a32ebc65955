#include "entail/translation.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "entail/semantics.hpp"

namespace entail {

std::string FreshSupply::draw() {
  std::string name = "_z" + ns_ + "_" + std::to_string(counter_++);
  drawn_.push_back(name);
  return name;
}

std::string ConditionReport::str() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << "condition violated:";
  for (const auto& v : violations) {
    os << " [succedent " << v.succedent_index << ": " << v.atom.str()
       << " size depends on";
    for (const auto& n : v.variables) os << " " << n;
    os << "]";
  }
  return os.str();
}

ConditionReport check_condition(const Entailment& e) {
  ConditionReport report;
  for (std::size_t i = 0; i < e.succedents.size(); ++i) {
    const auto& succ = e.succedents[i];
    for (const auto& atom : succ.spatial.atoms) {
      if (atom.kind != SpatialAtom::Kind::Arr) continue;
      Term size = atom.snd.minus(atom.fst);
      std::vector<std::string> bad;
      for (const auto& v : succ.ex_vars)
        if (size.coeff(v) != 0) bad.push_back(v);
      if (!bad.empty()) {
        report.ok = false;
        report.violations.push_back({i, atom, std::move(bad)});
      }
    }
  }
  return report;
}

const char* clause_name(Clause c) {
  switch (c) {
    case Clause::EmpL: return "EmpL";
    case Clause::EmpR: return "EmpR";
    case Clause::EmpNEmp: return "EmpNEmp";
    case Clause::EmpEmp: return "EmpEmp";
    case Clause::NEmpEmp: return "NEmpEmp";
    case Clause::Empty: return "empty";
    case Clause::PtoPto: return "PtoPto";
    case Clause::PtoArr: return "PtoArr";
    case Clause::ArrPto: return "ArrPto";
    case Clause::ArrArr: return "ArrArr";
  }
  return "?";
}

namespace {

Sigma tail_of(const Sigma& s) {
  Sigma t;
  t.atoms.assign(s.atoms.begin() + 1, s.atoms.end());
  return t;
}

Sigma cons(SpatialAtom a, const Sigma& s) {
  Sigma t;
  t.atoms.reserve(s.atoms.size() + 1);
  t.atoms.push_back(std::move(a));
  t.atoms.insert(t.atoms.end(), s.atoms.begin(), s.atoms.end());
  return t;
}

Sigma cons2(SpatialAtom a, SpatialAtom b, const Sigma& s) {
  Sigma t;
  t.atoms.reserve(s.atoms.size() + 2);
  t.atoms.push_back(std::move(a));
  t.atoms.push_back(std::move(b));
  t.atoms.insert(t.atoms.end(), s.atoms.begin(), s.atoms.end());
  return t;
}

struct Translator {
  FreshSupply& fresh;
  const TranslateOptions& opts;
  std::size_t steps = 0;

  PureRef acc(PureRef f) const { return opts.simplify ? simplify_pure(f) : f; }

  int record(int parent, Clause c, std::size_t stars, std::size_t pairs,
             bool base) {
    if (++steps > opts.step_limit) throw TranslateOverflow();
    if (!opts.trace) return parent;
    int depth = parent < 0 ? 0 : (*opts.trace)[parent].depth + 1;
    opts.trace->push_back({parent, c, stars, pairs, base, depth});
    return static_cast<int>(opts.trace->size()) - 1;
  }

  static std::size_t stars_of(const Sigma& left,
                              const std::vector<std::pair<PureRef, Sigma>>& rights) {
    std::size_t n = left.star_count();
    for (const auto& [p, s] : rights) n += s.star_count();
    return n;
  }

  PureRef go(PureRef pi, Sigma left, std::vector<std::pair<PureRef, Sigma>> rights,
             int parent) {
    std::size_t stars = stars_of(left, rights);
    std::size_t pairs = rights.size();

    // (EmpL): strip a leading emp on the left
    if (!left.atoms.empty() && left.atoms.front().is_emp()) {
      int id = record(parent, Clause::EmpL, stars, pairs, false);
      return go(std::move(pi), tail_of(left), std::move(rights), id);
    }
    // (EmpR): strip a leading emp in the lowest-index right pair having one
    for (std::size_t i = 0; i < rights.size(); ++i) {
      if (!rights[i].second.atoms.empty() &&
          rights[i].second.atoms.front().is_emp()) {
        int id = record(parent, Clause::EmpR, stars, pairs, false);
        rights[i].second = tail_of(rights[i].second);
        return go(std::move(pi), std::move(left), std::move(rights), id);
      }
    }

    bool left_emp = left.atoms.empty();
    if (left_emp) {
      // (EmpNEmp): drop a right pair with non-emp spatial part
      for (std::size_t i = 0; i < rights.size(); ++i) {
        if (!rights[i].second.atoms.empty()) {
          int id = record(parent, Clause::EmpNEmp, stars, pairs, false);
          rights.erase(rights.begin() + static_cast<std::ptrdiff_t>(i));
          return go(std::move(pi), std::move(left), std::move(rights), id);
        }
      }
      if (!rights.empty()) {
        // (EmpEmp): everything is emp
        record(parent, Clause::EmpEmp, stars, pairs, true);
        std::vector<PureRef> dis;
        dis.reserve(rights.size());
        for (auto& [p, s] : rights) dis.push_back(p);
        return Pure::mk_implies(pi, Pure::mk_or_all(dis));
      }
      // S empty: fall through to (empty)
    } else {
      // (NEmpEmp): drop a right pair with emp spatial part
      for (std::size_t i = 0; i < rights.size(); ++i) {
        if (rights[i].second.atoms.empty()) {
          int id = record(parent, Clause::NEmpEmp, stars, pairs, false);
          rights.erase(rights.begin() + static_cast<std::ptrdiff_t>(i));
          return go(std::move(pi), std::move(left), std::move(rights), id);
        }
      }
    }

    if (rights.empty()) {
      // (empty): the left symbolic heap must be unsatisfiable
      record(parent, Clause::Empty, stars, pairs, true);
      return Pure::mk_not(Pure::mk_and(pi, sorted_formula(left)));
    }

    // Heads are now all non-emp on both sides.
    const SpatialAtom& head = left.atoms.front();
    if (head.kind == SpatialAtom::Kind::PointsTo) {
      bool all_pto = true;
      std::size_t arr_idx = rights.size();
      for (std::size_t i = 0; i < rights.size(); ++i) {
        if (rights[i].second.atoms.front().kind == SpatialAtom::Kind::Arr) {
          all_pto = false;
          if (arr_idx == rights.size()) arr_idx = i;
        }
      }
      if (all_pto) {
        // (PtoPto): consume matched points-to heads
        int id = record(parent, Clause::PtoPto, stars, pairs, false);
        Sigma rest = tail_of(left);
        PureRef npi = acc(Pure::mk_and(pi, lt_sigma(head.fst, rest)));
        std::vector<std::pair<PureRef, Sigma>> nr;
        nr.reserve(rights.size());
        for (auto& [p, s] : rights) {
          const SpatialAtom& h = s.atoms.front();
          Sigma srest = tail_of(s);
          PureRef np = Pure::mk_and(p, Pure::mk_atom(Rel::Eq, head.fst, h.fst));
          np = Pure::mk_and(np, Pure::mk_atom(Rel::Eq, head.snd, h.snd));
          np = acc(Pure::mk_and(np, lt_sigma(h.fst, srest)));
          nr.emplace_back(std::move(np), std::move(srest));
        }
        return go(std::move(npi), std::move(rest), std::move(nr), id);
      }
      // (PtoArr): three-way split on the lowest-index array-headed pair
      int id = record(parent, Clause::PtoArr, stars, pairs, false);
      const auto& [p_i, s_i] = rights[arr_idx];
      SpatialAtom arr = s_i.atoms.front();
      Sigma s_rest = tail_of(s_i);
      const Term& ti = arr.fst;
      const Term& ti2 = arr.snd;

      auto r_eq = rights;
      r_eq[arr_idx].second = cons(SpatialAtom::points_to(ti, head.snd), s_rest);
      PureRef c1 = go(acc(Pure::mk_and(pi, Pure::mk_atom(Rel::Eq, ti2, ti))),
                      left, std::move(r_eq), id);

      auto r_gt = rights;
      r_gt[arr_idx].second =
          cons2(SpatialAtom::points_to(ti, head.snd),
                SpatialAtom::arr(ti.plus_const(1), ti2), s_rest);
      PureRef c2 = go(acc(Pure::mk_and(pi, Pure::mk_atom(Rel::Lt, ti, ti2))),
                      left, std::move(r_gt), id);

      auto r_lt = rights;
      r_lt.erase(r_lt.begin() + static_cast<std::ptrdiff_t>(arr_idx));
      PureRef c3 = go(acc(Pure::mk_and(pi, Pure::mk_atom(Rel::Lt, ti2, ti))),
                      left, std::move(r_lt), id);
      return Pure::mk_and_all({c1, c2, c3});
    }

    // Left head is an array.
    bool some_pto = false;
    for (const auto& [p, s] : rights)
      if (s.atoms.front().kind == SpatialAtom::Kind::PointsTo) some_pto = true;

    const Term& t = head.fst;
    const Term& t2 = head.snd;
    Sigma rest = tail_of(left);

    if (some_pto) {
      // (ArrPto): split the left head array, fresh z then z'
      int id = record(parent, Clause::ArrPto, stars, pairs, false);
      std::string z = fresh.draw();
      std::string z2 = fresh.draw();
      PureRef c1 = go(
          acc(Pure::mk_and(pi, Pure::mk_atom(Rel::Lt, t, t2))),
          cons2(SpatialAtom::points_to(t, Term::var(z)),
                SpatialAtom::arr(t.plus_const(1), t2), rest),
          rights, id);
      PureRef c2 = go(acc(Pure::mk_and(pi, Pure::mk_atom(Rel::Eq, t2, t))),
                      cons(SpatialAtom::points_to(t, Term::var(z2)), rest),
                      std::move(rights), id);
      return Pure::mk_and(c1, c2);
    }

    // (ArrArr): all heads are arrays
    int id = record(parent, Clause::ArrArr, stars, pairs, false);
    std::size_t n = rights.size();
    Term m = t2.minus(t);
    std::vector<Term> ms;
    ms.reserve(n);
    for (const auto& [p, s] : rights)
      ms.push_back(s.atoms.front().snd.minus(s.atoms.front().fst));

    auto split_pairs = [&](const Term& step) {
      return [&, step](unsigned long mask) {
        std::vector<std::pair<PureRef, Sigma>> nr;
        nr.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
          const auto& [p_i, s_i] = rights[i];
          const SpatialAtom& a = s_i.atoms.front();
          Sigma s_rest = tail_of(s_i);
          if (mask & (1UL << i)) {
            PureRef np =
                acc(Pure::mk_and(p_i, lt_sigma(a.fst.plus(step), s_rest)));
            nr.emplace_back(np, std::move(s_rest));
          } else {
            nr.emplace_back(
                p_i, cons(SpatialAtom::arr(a.fst.plus(step).plus_const(1),
                                           a.snd),
                          s_rest));
          }
        }
        return nr;
      };
    };

    std::vector<PureRef> conjuncts;
    unsigned long full = n >= 63 ? 0 : (1UL << n);
    if (full == 0) throw TranslateOverflow();

    for (unsigned long mask = 0; mask < full; ++mask) {
      PureRef np = pi;
      for (std::size_t i = 0; i < n; ++i)
        np = Pure::mk_and(np, Pure::mk_atom(
                                  (mask & (1UL << i)) ? Rel::Eq : Rel::Lt, m,
                                  ms[i]));
      np = Pure::mk_and(np, Pure::mk_atom(Rel::Le, t, t2));
      np = acc(Pure::mk_and(np, lt_sigma(t2, rest)));
      conjuncts.push_back(go(np, rest, split_pairs(m)(mask), id));
    }
    for (unsigned long mask = 1; mask < full; ++mask) {
      std::size_t min_i = 0;
      while (!(mask & (1UL << min_i))) ++min_i;
      const Term& mp = ms[min_i];
      PureRef np = Pure::mk_and(pi, Pure::mk_atom(Rel::Lt, mp, m));
      for (std::size_t i = 0; i < n; ++i)
        np = Pure::mk_and(np, Pure::mk_atom(
                                  (mask & (1UL << i)) ? Rel::Eq : Rel::Lt, mp,
                                  ms[i]));
      np = acc(np);
      Sigma nleft = cons(SpatialAtom::arr(t.plus(mp).plus_const(1), t2), rest);
      conjuncts.push_back(go(np, std::move(nleft), split_pairs(mp)(mask), id));
    }
    return Pure::mk_and_all(conjuncts);
  }
};

}  // namespace

TranslateResult translate_p(const Obligation& ob, FreshSupply& fresh,
                            const TranslateOptions& opts) {
  Translator tr{fresh, opts};
  std::size_t mark = fresh.drawn().size();
  PureRef f = tr.go(ob.pure, ob.left, ob.rights, -1);
  TranslateResult out;
  out.formula = std::move(f);
  out.fresh.assign(fresh.drawn().begin() + static_cast<std::ptrdiff_t>(mark),
                   fresh.drawn().end());
  return out;
}

namespace {
PureRef forall_nat(const std::string& v, PureRef body) {
  return Pure::mk_forall(
      v, Pure::mk_implies(Pure::mk_atom(Rel::Le, Term(0), Term::var(v)),
                          std::move(body)));
}

PureRef exists_nat(const std::string& v, PureRef body) {
  return Pure::mk_exists(
      v, Pure::mk_and(Pure::mk_atom(Rel::Le, Term(0), Term::var(v)),
                      std::move(body)));
}
}  // namespace

PureRef build_validity_formula(const SortedEntailment& se, FreshSupply& fresh,
                               const TranslateOptions& opts) {
  ConditionReport report = check_condition(se.as_entailment());
  if (!report.ok) throw ConditionError(report.str());

  Obligation ob;
  ob.pure = se.antecedent_raw_pure;
  ob.left = se.antecedent.spatial;
  ob.rights.reserve(se.succedents.size());
  for (std::size_t i = 0; i < se.succedents.size(); ++i)
    ob.rights.emplace_back(se.succedent_raw_pures[i],
                           se.succedents[i].spatial);

  TranslateResult res = translate_p(ob, fresh, opts);

  std::vector<std::string> ys;
  for (const auto& succ : se.succedents)
    ys.insert(ys.end(), succ.ex_vars.begin(), succ.ex_vars.end());

  std::set<std::string> free = free_vars(se.as_entailment());

  PureRef body = res.formula;
  for (auto it = ys.rbegin(); it != ys.rend(); ++it)
    body = exists_nat(*it, body);
  for (auto it = res.fresh.rbegin(); it != res.fresh.rend(); ++it)
    body = forall_nat(*it, body);
  for (auto it = free.rbegin(); it != free.rend(); ++it)
    body = forall_nat(*it, body);
  return body;
}

namespace {
bool atom_ground(const PureAtom& a) {
  return a.lhs.is_constant() && a.rhs.is_constant();
}

bool atom_value(const PureAtom& a) {
  long long l = a.lhs.constant(), r = a.rhs.constant();
  switch (a.rel) {
    case Rel::Eq: return l == r;
    case Rel::Ne: return l != r;
    case Rel::Lt: return l < r;
    case Rel::Le: return l <= r;
  }
  return false;
}

void flatten_and(const PureRef& f, std::vector<PureRef>& out) {
  if (f->kind() == Pure::Kind::And) {
    flatten_and(f->lhs(), out);
    flatten_and(f->rhs(), out);
  } else {
    out.push_back(f);
  }
}
}  // namespace

PureRef simplify_pure(const PureRef& f) {
  switch (f->kind()) {
    case Pure::Kind::True:
    case Pure::Kind::False: return f;
    case Pure::Kind::Atom:
      if (atom_ground(f->atom())) return Pure::mk_bool(atom_value(f->atom()));
      return f;
    case Pure::Kind::And: {
      std::vector<PureRef> parts;
      flatten_and(f, parts);
      std::vector<PureRef> kept;
      for (const auto& p : parts) {
        PureRef s = simplify_pure(p);
        if (s->kind() == Pure::Kind::True) continue;
        if (s->kind() == Pure::Kind::False) return Pure::mk_false();
        bool dup = false;
        for (const auto& k : kept)
          if (pure_equal(k, s)) dup = true;
        if (!dup) kept.push_back(std::move(s));
      }
      return Pure::mk_and_all(kept);
    }
    case Pure::Kind::Or: {
      PureRef a = simplify_pure(f->lhs());
      PureRef b = simplify_pure(f->rhs());
      if (a->kind() == Pure::Kind::True || b->kind() == Pure::Kind::True)
        return Pure::mk_true();
      if (a->kind() == Pure::Kind::False) return b;
      if (b->kind() == Pure::Kind::False) return a;
      return Pure::mk_or(a, b);
    }
    case Pure::Kind::Not: {
      PureRef a = simplify_pure(f->lhs());
      if (a->kind() == Pure::Kind::True) return Pure::mk_false();
      if (a->kind() == Pure::Kind::False) return Pure::mk_true();
      return Pure::mk_not(a);
    }
    case Pure::Kind::Implies: {
      PureRef a = simplify_pure(f->lhs());
      PureRef b = simplify_pure(f->rhs());
      if (a->kind() == Pure::Kind::False) return Pure::mk_true();
      if (a->kind() == Pure::Kind::True) return b;
      if (b->kind() == Pure::Kind::True) return Pure::mk_true();
      return Pure::mk_implies(a, b);
    }
    case Pure::Kind::Exists:
      return Pure::mk_exists(f->var(), simplify_pure(f->body()));
    case Pure::Kind::Forall:
      return Pure::mk_forall(f->var(), simplify_pure(f->body()));
  }
  return f;
}

namespace {
bool is_checkpoint(Clause c) {
  return c != Clause::PtoArr && c != Clause::ArrPto;
}
}  // namespace

TraceCheck validate_trace(const Trace& trace) {
  TraceCheck out;
  if (trace.empty()) return out;

  std::size_t initial = trace[0].stars + trace[0].pairs;
  int depth_limit = 4 * (static_cast<int>(initial) + 1);

  std::vector<bool> has_child(trace.size(), false);
  for (const auto& s : trace)
    if (s.parent >= 0) has_child[static_cast<std::size_t>(s.parent)] = true;

  for (std::size_t i = 0; i < trace.size(); ++i) {
    const auto& s = trace[i];
    if (s.depth > depth_limit) {
      out.ok = false;
      out.problem = "depth " + std::to_string(s.depth) + " exceeds 4*(" +
                    std::to_string(initial) + "+1)";
      return out;
    }
    if (!has_child[i]) {
      // leaf: must be a base clause
      if (!s.is_base) {
        out.ok = false;
        out.problem = std::string("leaf is not a base clause: ") +
                      clause_name(s.clause);
        return out;
      }
      // walk the chain root-to-leaf and check checkpoint measures
      std::vector<const TraceStep*> chain;
      for (int j = static_cast<int>(i); j >= 0; j = trace[j].parent)
        chain.push_back(&trace[static_cast<std::size_t>(j)]);
      std::reverse(chain.begin(), chain.end());
      bool have_prev = false;
      std::pair<std::size_t, std::size_t> prev{0, 0};
      for (const auto* step : chain) {
        if (!is_checkpoint(step->clause)) continue;
        std::pair<std::size_t, std::size_t> cur{step->stars, step->pairs};
        if (have_prev && cur > prev) {
          out.ok = false;
          out.problem = std::string("measure increased at checkpoint ") +
                        clause_name(step->clause);
          return out;
        }
        prev = cur;
        have_prev = true;
      }
    }
  }
  return out;
}

}  // namespace entail
