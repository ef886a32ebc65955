#include "entail/syntax.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace entail {

Term Term::var(const std::string& name, long long coeff) {
  Term t;
  if (coeff != 0) t.coeffs_[name] = coeff;
  return t;
}

long long Term::coeff(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? 0 : it->second;
}

bool Term::is_surface() const {
  if (constant_ < 0) return false;
  for (const auto& [v, c] : coeffs_)
    if (c < 0) return false;
  return true;
}

Term& Term::add(const Term& other, long long scale) {
  constant_ += other.constant_ * scale;
  for (const auto& [v, c] : other.coeffs_) {
    long long n = (coeffs_.count(v) ? coeffs_[v] : 0) + c * scale;
    if (n == 0)
      coeffs_.erase(v);
    else
      coeffs_[v] = n;
  }
  return *this;
}

Term Term::plus(const Term& other) const {
  Term t = *this;
  t.add(other);
  return t;
}

Term Term::minus(const Term& other) const {
  Term t = *this;
  t.add(other, -1);
  return t;
}

Term Term::plus_const(long long k) const {
  Term t = *this;
  t.constant_ += k;
  return t;
}

Term Term::scaled(long long k) const {
  Term t;
  t.add(*this, k);
  return t;
}

std::pair<Term, Term> Term::split_signs() const {
  Term pos, neg;
  if (constant_ >= 0)
    pos.constant_ = constant_;
  else
    neg.constant_ = -constant_;
  for (const auto& [v, c] : coeffs_) {
    if (c > 0)
      pos.coeffs_[v] = c;
    else
      neg.coeffs_[v] = -c;
  }
  return {pos, neg};
}

bool Term::operator<(const Term& other) const {
  if (constant_ != other.constant_) return constant_ < other.constant_;
  return coeffs_ < other.coeffs_;
}

std::string Term::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    if (c == 1)
      os << v;
    else if (c == -1)
      os << "-" << v;
    else
      os << c << "*" << v;
  }
  if (constant_ != 0 || first) {
    if (!first) os << (constant_ >= 0 ? " + " : " - ");
    os << (first ? constant_ : std::abs(constant_));
  }
  return os.str();
}

const char* rel_name(Rel r) {
  switch (r) {
    case Rel::Eq: return "=";
    case Rel::Ne: return "!=";
    case Rel::Lt: return "<";
    case Rel::Le: return "<=";
  }
  return "?";
}

PureAtom normalize_atom(const PureAtom& atom) {
  Term diff = atom.lhs.minus(atom.rhs);
  auto [pos, neg] = diff.split_signs();
  return PureAtom{atom.rel, pos, neg};
}

PureAtom make_atom(Rel rel, const Term& lhs, const Term& rhs) {
  return normalize_atom(PureAtom{rel, lhs, rhs});
}

PureRef Pure::mk_node(Kind k, PureAtom atom, PureRef l, PureRef r,
                      std::string v) {
  return std::make_shared<Pure>(Key{}, k, std::move(atom), std::move(l),
                                std::move(r), std::move(v));
}

PureRef Pure::mk_true() {
  static PureRef t = mk_node(Kind::True, {}, nullptr, nullptr, {});
  return t;
}

PureRef Pure::mk_false() {
  static PureRef f = mk_node(Kind::False, {}, nullptr, nullptr, {});
  return f;
}

PureRef Pure::mk_atom(Rel rel, const Term& lhs, const Term& rhs) {
  return mk_atom(PureAtom{rel, lhs, rhs});
}

PureRef Pure::mk_atom(const PureAtom& a) {
  return mk_node(Kind::Atom, normalize_atom(a), nullptr, nullptr, {});
}

PureRef Pure::mk_and(PureRef a, PureRef b) {
  return mk_node(Kind::And, {}, std::move(a), std::move(b), {});
}

PureRef Pure::mk_or(PureRef a, PureRef b) {
  return mk_node(Kind::Or, {}, std::move(a), std::move(b), {});
}

PureRef Pure::mk_not(PureRef a) {
  return mk_node(Kind::Not, {}, std::move(a), nullptr, {});
}

PureRef Pure::mk_implies(PureRef a, PureRef b) {
  return mk_node(Kind::Implies, {}, std::move(a), std::move(b), {});
}

PureRef Pure::mk_exists(const std::string& v, PureRef body) {
  return mk_node(Kind::Exists, {}, std::move(body), nullptr, v);
}

PureRef Pure::mk_forall(const std::string& v, PureRef body) {
  return mk_node(Kind::Forall, {}, std::move(body), nullptr, v);
}

PureRef Pure::mk_and_all(const std::vector<PureRef>& fs) {
  if (fs.empty()) return mk_true();
  PureRef acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it)
    acc = mk_and(*it, acc);
  return acc;
}

PureRef Pure::mk_or_all(const std::vector<PureRef>& fs) {
  if (fs.empty()) return mk_false();
  PureRef acc = fs.back();
  for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it)
    acc = mk_or(*it, acc);
  return acc;
}

std::string Pure::str() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::True: os << "true"; break;
    case Kind::False: os << "false"; break;
    case Kind::Atom:
      os << atom_.lhs.str() << " " << rel_name(atom_.rel) << " "
         << atom_.rhs.str();
      break;
    case Kind::And:
      os << "(" << lhs_->str() << " & " << rhs_->str() << ")";
      break;
    case Kind::Or:
      os << "(" << lhs_->str() << " | " << rhs_->str() << ")";
      break;
    case Kind::Not: os << "~(" << lhs_->str() << ")"; break;
    case Kind::Implies:
      os << "(" << lhs_->str() << " => " << rhs_->str() << ")";
      break;
    case Kind::Exists:
      os << "(Ex " << var_ << ". " << lhs_->str() << ")";
      break;
    case Kind::Forall:
      os << "(All " << var_ << ". " << lhs_->str() << ")";
      break;
  }
  return os.str();
}

bool pure_equal(const PureRef& a, const PureRef& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Pure::Kind::True:
    case Pure::Kind::False: return true;
    case Pure::Kind::Atom: return a->atom() == b->atom();
    case Pure::Kind::And:
    case Pure::Kind::Or:
    case Pure::Kind::Implies:
      return pure_equal(a->lhs(), b->lhs()) && pure_equal(a->rhs(), b->rhs());
    case Pure::Kind::Not: return pure_equal(a->lhs(), b->lhs());
    case Pure::Kind::Exists:
    case Pure::Kind::Forall:
      return a->var() == b->var() && pure_equal(a->body(), b->body());
  }
  return false;
}

SpatialAtom SpatialAtom::points_to(Term addr, Term val) {
  SpatialAtom a;
  a.kind = Kind::PointsTo;
  a.fst = std::move(addr);
  a.snd = std::move(val);
  return a;
}

SpatialAtom SpatialAtom::arr(Term lo, Term hi) {
  SpatialAtom a;
  a.kind = Kind::Arr;
  a.fst = std::move(lo);
  a.snd = std::move(hi);
  return a;
}

bool SpatialAtom::operator==(const SpatialAtom& other) const {
  if (kind != other.kind) return false;
  if (kind == Kind::Emp) return true;
  return fst == other.fst && snd == other.snd;
}

std::string SpatialAtom::str() const {
  switch (kind) {
    case Kind::Emp: return "emp";
    case Kind::PointsTo: return fst.str() + " -> " + snd.str();
    case Kind::Arr: return "Arr(" + fst.str() + ", " + snd.str() + ")";
  }
  return "?";
}

bool Sigma::all_emp() const {
  return std::all_of(atoms.begin(), atoms.end(),
                     [](const SpatialAtom& a) { return a.is_emp(); });
}

std::string Sigma::str() const {
  if (atoms.empty()) return "emp";
  std::string s;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    if (i) s += " * ";
    s += atoms[i].str();
  }
  return s;
}

std::string SymbolicHeap::str() const {
  std::ostringstream os;
  if (!ex_vars.empty()) {
    os << "Ex";
    for (const auto& v : ex_vars) os << " " << v;
    os << ". ";
  }
  if (pure && pure->kind() != Pure::Kind::True)
    os << pure->str() << " & ";
  os << spatial.str();
  return os.str();
}

std::string Entailment::str() const {
  std::ostringstream os;
  os << antecedent.str() << " |- ";
  for (std::size_t i = 0; i < succedents.size(); ++i) {
    if (i) os << ", ";
    os << succedents[i].str();
  }
  return os.str();
}

std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> vs;
  for (const auto& [v, c] : t.coeffs()) vs.insert(v);
  return vs;
}

namespace {
void collect(const PureRef& f, std::set<std::string>& bound,
             std::set<std::string>& out) {
  if (!f) return;
  switch (f->kind()) {
    case Pure::Kind::True:
    case Pure::Kind::False: return;
    case Pure::Kind::Atom:
      for (const auto& t : {f->atom().lhs, f->atom().rhs})
        for (const auto& [v, c] : t.coeffs())
          if (!bound.count(v)) out.insert(v);
      return;
    case Pure::Kind::And:
    case Pure::Kind::Or:
    case Pure::Kind::Implies:
      collect(f->lhs(), bound, out);
      collect(f->rhs(), bound, out);
      return;
    case Pure::Kind::Not: collect(f->lhs(), bound, out); return;
    case Pure::Kind::Exists:
    case Pure::Kind::Forall: {
      bool added = bound.insert(f->var()).second;
      collect(f->body(), bound, out);
      if (added) bound.erase(f->var());
      return;
    }
  }
}
}  // namespace

std::set<std::string> free_vars(const PureRef& f) {
  std::set<std::string> bound, out;
  collect(f, bound, out);
  return out;
}

std::set<std::string> free_vars(const Sigma& s) {
  std::set<std::string> out;
  for (const auto& a : s.atoms) {
    if (a.is_emp()) continue;
    auto f = free_vars(a.fst);
    out.insert(f.begin(), f.end());
    auto g = free_vars(a.snd);
    out.insert(g.begin(), g.end());
  }
  return out;
}

std::set<std::string> free_vars(const SymbolicHeap& h) {
  auto out = free_vars(h.pure);
  auto sp = free_vars(h.spatial);
  out.insert(sp.begin(), sp.end());
  for (const auto& v : h.ex_vars) out.erase(v);
  return out;
}

std::set<std::string> free_vars(const Entailment& e) {
  auto out = free_vars(e.antecedent);
  for (const auto& h : e.succedents) {
    auto s = free_vars(h);
    out.insert(s.begin(), s.end());
  }
  return out;
}

Term substitute(const Term& t, const Bindings& b) {
  Term out(t.constant());
  for (const auto& [v, c] : t.coeffs()) {
    auto it = b.find(v);
    if (it == b.end())
      out.add(Term::var(v, c));
    else
      out.add(it->second, c);
  }
  return out;
}

namespace {
std::string fresh_subst_name(const std::set<std::string>& avoid) {
  static const std::string base = "_s";
  for (long long k = 0;; ++k) {
    std::string cand = base + std::to_string(k);
    if (!avoid.count(cand)) return cand;
  }
}

PureRef subst_pure(const PureRef& f, const Bindings& b) {
  if (!f || b.empty()) return f;
  switch (f->kind()) {
    case Pure::Kind::True:
    case Pure::Kind::False: return f;
    case Pure::Kind::Atom:
      return Pure::mk_atom(f->atom().rel, substitute(f->atom().lhs, b),
                           substitute(f->atom().rhs, b));
    case Pure::Kind::And:
      return Pure::mk_and(subst_pure(f->lhs(), b), subst_pure(f->rhs(), b));
    case Pure::Kind::Or:
      return Pure::mk_or(subst_pure(f->lhs(), b), subst_pure(f->rhs(), b));
    case Pure::Kind::Implies:
      return Pure::mk_implies(subst_pure(f->lhs(), b),
                              subst_pure(f->rhs(), b));
    case Pure::Kind::Not: return Pure::mk_not(subst_pure(f->lhs(), b));
    case Pure::Kind::Exists:
    case Pure::Kind::Forall: {
      Bindings inner = b;
      inner.erase(f->var());
      if (inner.empty()) return f;
      // Rename the binder if a binding range mentions it.
      bool captured = false;
      for (const auto& [v, t] : inner)
        if (t.coeff(f->var()) != 0) captured = true;
      std::string bv = f->var();
      PureRef body = f->body();
      if (captured) {
        std::set<std::string> avoid = free_vars(body);
        for (const auto& [v, t] : inner) {
          auto fv = free_vars(t);
          avoid.insert(fv.begin(), fv.end());
        }
        std::string nv = fresh_subst_name(avoid);
        Bindings ren{{bv, Term::var(nv)}};
        body = subst_pure(body, ren);
        bv = nv;
      }
      body = subst_pure(body, inner);
      return f->kind() == Pure::Kind::Exists ? Pure::mk_exists(bv, body)
                                             : Pure::mk_forall(bv, body);
    }
  }
  return f;
}
}  // namespace

PureRef substitute(const PureRef& f, const Bindings& b) {
  return subst_pure(f, b);
}

Sigma substitute(const Sigma& s, const Bindings& b) {
  Sigma out;
  out.atoms.reserve(s.atoms.size());
  for (const auto& a : s.atoms) {
    if (a.is_emp()) {
      out.atoms.push_back(a);
      continue;
    }
    SpatialAtom n = a;
    n.fst = substitute(a.fst, b);
    n.snd = substitute(a.snd, b);
    out.atoms.push_back(std::move(n));
  }
  return out;
}

std::vector<Sigma> permutations(const Sigma& s) {
  std::vector<std::size_t> idx(s.atoms.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<Sigma> out;
  do {
    Sigma p;
    p.atoms.reserve(idx.size());
    for (std::size_t i : idx) p.atoms.push_back(s.atoms[i]);
    out.push_back(std::move(p));
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

std::vector<SymbolicHeap> permutations(const SymbolicHeap& h) {
  std::vector<SymbolicHeap> out;
  for (auto& sp : permutations(h.spatial)) {
    SymbolicHeap p = h;
    p.spatial = std::move(sp);
    out.push_back(std::move(p));
  }
  return out;
}

bool is_reserved_name(const std::string& name) {
  return !name.empty() && name[0] == kReservedPrefix;
}

}  // namespace entail
