#include "entail/semantics.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace entail {

namespace {
// Advances a mixed-radix counter with digits 0..bound; returns false on wrap.
bool next_tuple(std::vector<std::uint64_t>& v, std::uint64_t bound) {
  std::size_t i = v.size();
  while (i > 0) {
    --i;
    if (v[i] < bound) {
      ++v[i];
      std::fill(v.begin() + i + 1, v.end(), 0);
      return true;
    }
  }
  return false;
}
}  // namespace

std::string Countermodel::str() const {
  std::ostringstream os;
  os << "store {";
  bool first = true;
  for (const auto& [v, n] : store.values) {
    if (!first) os << ", ";
    first = false;
    os << v << "=" << n;
  }
  os << "} heap {";
  first = true;
  for (const auto& [a, n] : heap.cells) {
    if (!first) os << ", ";
    first = false;
    os << a << "->" << n;
  }
  os << "}";
  return os.str();
}

long long eval_term(const Store& s, const Term& t) {
  long long acc = t.constant();
  for (const auto& [v, c] : t.coeffs())
    acc += c * static_cast<long long>(s.get(v));
  return acc;
}

namespace {
bool eval_atom(const Store& s, const PureAtom& a) {
  long long l = eval_term(s, a.lhs);
  long long r = eval_term(s, a.rhs);
  switch (a.rel) {
    case Rel::Eq: return l == r;
    case Rel::Ne: return l != r;
    case Rel::Lt: return l < r;
    case Rel::Le: return l <= r;
  }
  return false;
}
}  // namespace

bool eval_pure(const Store& s, const PureRef& f, std::uint64_t quant_bound) {
  switch (f->kind()) {
    case Pure::Kind::True: return true;
    case Pure::Kind::False: return false;
    case Pure::Kind::Atom: return eval_atom(s, f->atom());
    case Pure::Kind::And:
      return eval_pure(s, f->lhs(), quant_bound) &&
             eval_pure(s, f->rhs(), quant_bound);
    case Pure::Kind::Or:
      return eval_pure(s, f->lhs(), quant_bound) ||
             eval_pure(s, f->rhs(), quant_bound);
    case Pure::Kind::Not: return !eval_pure(s, f->lhs(), quant_bound);
    case Pure::Kind::Implies:
      return !eval_pure(s, f->lhs(), quant_bound) ||
             eval_pure(s, f->rhs(), quant_bound);
    case Pure::Kind::Exists: {
      Store s2 = s;
      for (std::uint64_t a = 0; a <= quant_bound; ++a) {
        s2.values[f->var()] = a;
        if (eval_pure(s2, f->body(), quant_bound)) return true;
      }
      return false;
    }
    case Pure::Kind::Forall: {
      Store s2 = s;
      for (std::uint64_t a = 0; a <= quant_bound; ++a) {
        s2.values[f->var()] = a;
        if (!eval_pure(s2, f->body(), quant_bound)) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {
// Spatial satisfaction: atoms consume exactly their own cells; the heap
// must be covered completely and disjointly.
bool sat_spatial(const Store& s, const Heap& h, const Sigma& sigma) {
  std::map<std::uint64_t, std::uint64_t> remaining = h.cells;
  for (const auto& a : sigma.atoms) {
    switch (a.kind) {
      case SpatialAtom::Kind::Emp: break;
      case SpatialAtom::Kind::PointsTo: {
        long long addr = eval_term(s, a.fst);
        long long val = eval_term(s, a.snd);
        if (addr < 1 || val < 0) return false;
        auto it = remaining.find(static_cast<std::uint64_t>(addr));
        if (it == remaining.end() ||
            it->second != static_cast<std::uint64_t>(val))
          return false;
        remaining.erase(it);
        break;
      }
      case SpatialAtom::Kind::Arr: {
        long long lo = eval_term(s, a.fst);
        long long hi = eval_term(s, a.snd);
        if (lo > hi || lo < 1) return false;
        for (long long x = lo; x <= hi; ++x) {
          auto it = remaining.find(static_cast<std::uint64_t>(x));
          if (it == remaining.end()) return false;
          remaining.erase(it);
        }
        break;
      }
    }
  }
  return remaining.empty();
}
}  // namespace

bool sat_qf(const Store& s, const Heap& h, const SymbolicHeap& phi,
            std::uint64_t quant_bound) {
  if (!phi.ex_vars.empty()) {
    // Enumerate the existential prefix.
    std::vector<std::uint64_t> vals(phi.ex_vars.size(), 0);
    Store s2 = s;
    SymbolicHeap open;
    open.pure = phi.pure;
    open.spatial = phi.spatial;
    for (;;) {
      for (std::size_t i = 0; i < vals.size(); ++i)
        s2.values[phi.ex_vars[i]] = vals[i];
      if (sat_qf(s2, h, open, quant_bound)) return true;
      if (!next_tuple(vals, quant_bound)) return false;
    }
  }
  return eval_pure(s, phi.pure, quant_bound) && sat_spatial(s, h, phi.spatial);
}

std::optional<std::set<std::uint64_t>> dom_of(const Store& s,
                                              const Sigma& sigma) {
  std::set<std::uint64_t> out;
  for (const auto& a : sigma.atoms) {
    switch (a.kind) {
      case SpatialAtom::Kind::Emp: break;
      case SpatialAtom::Kind::PointsTo: {
        long long addr = eval_term(s, a.fst);
        out.insert(static_cast<std::uint64_t>(std::max(0LL, addr)));
        break;
      }
      case SpatialAtom::Kind::Arr: {
        long long lo = eval_term(s, a.fst);
        long long hi = eval_term(s, a.snd);
        if (lo > hi) return std::nullopt;
        for (long long x = lo; x <= hi; ++x)
          out.insert(static_cast<std::uint64_t>(std::max(0LL, x)));
        break;
      }
    }
  }
  return out;
}

namespace {
// Builds the forced part of an antecedent heap (points-to cells) and the
// list of free cells (array cells). Returns false when atoms collide or
// fall outside Loc.
bool forced_heap(const Store& s, const Sigma& sigma, Heap& base,
                 std::vector<std::uint64_t>& free_cells) {
  base.cells.clear();
  free_cells.clear();
  std::set<std::uint64_t> used;
  for (const auto& a : sigma.atoms) {
    switch (a.kind) {
      case SpatialAtom::Kind::Emp: break;
      case SpatialAtom::Kind::PointsTo: {
        long long addr = eval_term(s, a.fst);
        long long val = eval_term(s, a.snd);
        if (addr < 1 || val < 0) return false;
        auto ua = static_cast<std::uint64_t>(addr);
        if (!used.insert(ua).second) return false;
        base.cells[ua] = static_cast<std::uint64_t>(val);
        break;
      }
      case SpatialAtom::Kind::Arr: {
        long long lo = eval_term(s, a.fst);
        long long hi = eval_term(s, a.snd);
        if (lo > hi || lo < 1) return false;
        for (long long x = lo; x <= hi; ++x) {
          auto ux = static_cast<std::uint64_t>(x);
          if (!used.insert(ux).second) return false;
          free_cells.push_back(ux);
        }
        break;
      }
    }
  }
  std::sort(free_cells.begin(), free_cells.end());
  return true;
}
}  // namespace

std::optional<Countermodel> oracle_search(const Entailment& e,
                                          std::uint64_t store_bound,
                                          std::uint64_t value_bound) {
  std::uint64_t qb = std::max(store_bound, value_bound);
  std::vector<std::string> vars(free_vars(e).begin(), free_vars(e).end());

  std::vector<std::uint64_t> sv(vars.size(), 0);
  for (;;) {
    Store s;
    for (std::size_t i = 0; i < vars.size(); ++i) s.values[vars[i]] = sv[i];

    if (eval_pure(s, e.antecedent.pure, qb)) {
      Heap base;
      std::vector<std::uint64_t> cells;
      if (forced_heap(s, e.antecedent.spatial, base, cells)) {
        std::vector<std::uint64_t> hv(cells.size(), 0);
        for (;;) {
          Heap h = base;
          for (std::size_t i = 0; i < cells.size(); ++i)
            h.cells[cells[i]] = hv[i];
          if (sat_qf(s, h, e.antecedent, qb)) {
            bool some = false;
            for (const auto& succ : e.succedents) {
              if (sat_qf(s, h, succ, qb)) {
                some = true;
                break;
              }
            }
            if (!some) return Countermodel{s, h};
          }
          // last cell cycles fastest
          if (!next_tuple(hv, value_bound)) break;
        }
      }
    }

    if (!next_tuple(sv, store_bound)) break;
  }
  return std::nullopt;
}

}  // namespace entail
