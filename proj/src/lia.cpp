#include "entail/lia.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

namespace entail::lia {

long long add_ck(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow();
  return r;
}

long long mul_ck(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
  return r;
}

namespace {
long long gcd_ll(long long a, long long b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long long lcm_ck(long long a, long long b) {
  if (a == 0 || b == 0) return 0;
  return mul_ck(a / gcd_ll(a, b), b);
}

long long mod_pos(long long a, long long m) {
  long long r = a % m;
  return r < 0 ? r + m : r;
}
}  // namespace

Lin Lin::var(const std::string& v, long long coeff) {
  Lin t;
  if (coeff != 0) t.c[v] = coeff;
  return t;
}

long long Lin::coeff(const std::string& v) const {
  auto it = c.find(v);
  return it == c.end() ? 0 : it->second;
}

Lin& Lin::add(const Lin& o, long long scale) {
  k = add_ck(k, mul_ck(o.k, scale));
  for (const auto& [v, cf] : o.c) {
    long long n = add_ck(coeff(v), mul_ck(cf, scale));
    if (n == 0)
      c.erase(v);
    else
      c[v] = n;
  }
  return *this;
}

Lin Lin::scaled(long long s) const {
  Lin out;
  out.add(*this, s);
  return out;
}

Lin Lin::without(const std::string& v) const {
  Lin out = *this;
  out.c.erase(v);
  return out;
}

std::string Node::str() const {
  std::ostringstream os;
  auto lin = [](const Lin& t) {
    std::string s = std::to_string(t.k);
    for (const auto& [v, c] : t.c)
      s += (c >= 0 ? "+" : "") + std::to_string(c) + v;
    return s;
  };
  switch (kind) {
    case Kind::Bool: os << (bval ? "T" : "F"); break;
    case Kind::Lt: os << lin(t) << "<0"; break;
    case Kind::Eq: os << lin(t) << "=0"; break;
    case Kind::Ne: os << lin(t) << "!=0"; break;
    case Kind::Dvd:
      os << (dvd_neg ? "!" : "") << d << "|" << lin(t);
      break;
    case Kind::And:
    case Kind::Or: {
      os << (kind == Kind::And ? "(and" : "(or");
      for (const auto& k2 : kids) os << " " << k2->str();
      os << ")";
      break;
    }
    case Kind::Not: os << "(not " << kids[0]->str() << ")"; break;
    case Kind::Exists: os << "(E " << var << ". " << kids[0]->str() << ")"; break;
    case Kind::Forall: os << "(A " << var << ". " << kids[0]->str() << ")"; break;
  }
  return os.str();
}

namespace {
Ref node(Node n) { return std::make_shared<Node>(std::move(n)); }
}  // namespace

Ref mk_bool(bool b) {
  static Ref t = [] {
    Node n;
    n.kind = Node::Kind::Bool;
    n.bval = true;
    return node(std::move(n));
  }();
  static Ref f = [] {
    Node n;
    n.kind = Node::Kind::Bool;
    n.bval = false;
    return node(std::move(n));
  }();
  return b ? t : f;
}

Ref mk_lt(Lin t) {
  if (t.is_const()) return mk_bool(t.k < 0);
  Node n;
  n.kind = Node::Kind::Lt;
  n.t = std::move(t);
  return node(std::move(n));
}

Ref mk_le(Lin t) {
  // t <= 0  iff  t - 1 < 0 over the integers
  t.k = add_ck(t.k, -1);
  return mk_lt(std::move(t));
}

Ref mk_eq(Lin t) {
  if (t.is_const()) return mk_bool(t.k == 0);
  // sign-normalize: first coefficient positive
  if (!t.c.empty() && t.c.begin()->second < 0) t = t.scaled(-1);
  Node n;
  n.kind = Node::Kind::Eq;
  n.t = std::move(t);
  return node(std::move(n));
}

Ref mk_ne(Lin t) {
  if (t.is_const()) return mk_bool(t.k != 0);
  if (!t.c.empty() && t.c.begin()->second < 0) t = t.scaled(-1);
  Node n;
  n.kind = Node::Kind::Ne;
  n.t = std::move(t);
  return node(std::move(n));
}

Ref mk_dvd(long long d, Lin t, bool neg) {
  d = std::llabs(d);
  if (d == 0) throw Unsupported("divisibility by zero");
  if (d == 1) return mk_bool(!neg);
  if (t.is_const()) return mk_bool((mod_pos(t.k, d) == 0) != neg);
  Node n;
  n.kind = Node::Kind::Dvd;
  n.t = std::move(t);
  n.d = d;
  n.dvd_neg = neg;
  return node(std::move(n));
}

Ref mk_and(std::vector<Ref> kids) {
  std::vector<Ref> out;
  for (auto& k : kids) {
    if (k->kind == Node::Kind::Bool) {
      if (!k->bval) return mk_bool(false);
      continue;
    }
    if (k->kind == Node::Kind::And) {
      out.insert(out.end(), k->kids.begin(), k->kids.end());
      continue;
    }
    out.push_back(std::move(k));
  }
  if (out.empty()) return mk_bool(true);
  if (out.size() == 1) return out[0];
  Node n;
  n.kind = Node::Kind::And;
  n.kids = std::move(out);
  return node(std::move(n));
}

Ref mk_or(std::vector<Ref> kids) {
  std::vector<Ref> out;
  for (auto& k : kids) {
    if (k->kind == Node::Kind::Bool) {
      if (k->bval) return mk_bool(true);
      continue;
    }
    if (k->kind == Node::Kind::Or) {
      out.insert(out.end(), k->kids.begin(), k->kids.end());
      continue;
    }
    out.push_back(std::move(k));
  }
  if (out.empty()) return mk_bool(false);
  if (out.size() == 1) return out[0];
  Node n;
  n.kind = Node::Kind::Or;
  n.kids = std::move(out);
  return node(std::move(n));
}

Ref mk_not(Ref a) {
  if (a->kind == Node::Kind::Bool) return mk_bool(!a->bval);
  Node n;
  n.kind = Node::Kind::Not;
  n.kids = {std::move(a)};
  return node(std::move(n));
}

Ref mk_exists(const std::string& v, Ref body) {
  Node n;
  n.kind = Node::Kind::Exists;
  n.var = v;
  n.kids = {std::move(body)};
  return node(std::move(n));
}

Ref mk_forall(const std::string& v, Ref body) {
  Node n;
  n.kind = Node::Kind::Forall;
  n.var = v;
  n.kids = {std::move(body)};
  return node(std::move(n));
}

namespace {
// Negation normal form over quantifier-free input; atoms are closed under
// negation so no Not nodes remain.
Ref nnf(const Ref& f, bool positive) {
  switch (f->kind) {
    case Node::Kind::Bool: return mk_bool(f->bval == positive);
    case Node::Kind::Lt:
      if (positive) return f;
      // not(t < 0)  iff  -t - 1 < 0
      return mk_lt(f->t.scaled(-1).add(Lin(-1)));
    case Node::Kind::Eq:
      return positive ? f : mk_ne(f->t);
    case Node::Kind::Ne:
      return positive ? f : mk_eq(f->t);
    case Node::Kind::Dvd:
      return positive ? f : mk_dvd(f->d, f->t, !f->dvd_neg);
    case Node::Kind::And: {
      std::vector<Ref> ks;
      ks.reserve(f->kids.size());
      for (const auto& k : f->kids) ks.push_back(nnf(k, positive));
      return positive ? mk_and(std::move(ks)) : mk_or(std::move(ks));
    }
    case Node::Kind::Or: {
      std::vector<Ref> ks;
      ks.reserve(f->kids.size());
      for (const auto& k : f->kids) ks.push_back(nnf(k, positive));
      return positive ? mk_or(std::move(ks)) : mk_and(std::move(ks));
    }
    case Node::Kind::Not: return nnf(f->kids[0], !positive);
    case Node::Kind::Exists: {
      Ref b = nnf(f->kids[0], positive);
      return positive ? mk_exists(f->var, b) : mk_forall(f->var, b);
    }
    case Node::Kind::Forall: {
      Ref b = nnf(f->kids[0], positive);
      return positive ? mk_forall(f->var, b) : mk_exists(f->var, b);
    }
  }
  return f;
}

// Substitutes x := e in a formula whose atoms carry x with coefficient in
// {-1, 0, +1} (the post-scaling shape used during elimination).
Ref subst_var(const Ref& f, const std::string& x, const Lin& e) {
  switch (f->kind) {
    case Node::Kind::Bool: return f;
    case Node::Kind::Lt:
    case Node::Kind::Eq:
    case Node::Kind::Ne:
    case Node::Kind::Dvd: {
      long long cx = f->t.coeff(x);
      if (cx == 0) return f;
      Lin t = f->t.without(x);
      t.add(e, cx);
      switch (f->kind) {
        case Node::Kind::Lt: return mk_lt(std::move(t));
        case Node::Kind::Eq: return mk_eq(std::move(t));
        case Node::Kind::Ne: return mk_ne(std::move(t));
        default: return mk_dvd(f->d, std::move(t), f->dvd_neg);
      }
    }
    case Node::Kind::And:
    case Node::Kind::Or: {
      std::vector<Ref> ks;
      ks.reserve(f->kids.size());
      for (const auto& k : f->kids) ks.push_back(subst_var(k, x, e));
      return f->kind == Node::Kind::And ? mk_and(std::move(ks))
                                        : mk_or(std::move(ks));
    }
    case Node::Kind::Not: return mk_not(subst_var(f->kids[0], x, e));
    case Node::Kind::Exists:
    case Node::Kind::Forall: {
      if (f->var == x) return f;
      Ref b = subst_var(f->kids[0], x, e);
      return f->kind == Node::Kind::Exists ? mk_exists(f->var, b)
                                           : mk_forall(f->var, b);
    }
  }
  return f;
}

void collect_coeff_lcm(const Ref& f, const std::string& x, long long& l) {
  switch (f->kind) {
    case Node::Kind::Lt:
    case Node::Kind::Eq:
    case Node::Kind::Ne:
    case Node::Kind::Dvd: {
      long long cx = f->t.coeff(x);
      if (cx != 0) l = lcm_ck(l, std::llabs(cx));
      return;
    }
    case Node::Kind::And:
    case Node::Kind::Or:
    case Node::Kind::Not:
      for (const auto& k : f->kids) collect_coeff_lcm(k, x, l);
      return;
    default: return;
  }
}

// Rescales atoms so the coefficient of x is exactly +1 or -1 (conceptually
// substituting x' = L*x; the added L | x' conjunct is handled by the caller).
Ref unitize(const Ref& f, const std::string& x, long long L) {
  switch (f->kind) {
    case Node::Kind::Bool: return f;
    case Node::Kind::Lt: {
      long long cx = f->t.coeff(x);
      if (cx == 0) return f;
      long long lam = L / std::llabs(cx);
      Lin t = f->t.scaled(lam);
      long long sign = t.coeff(x) > 0 ? 1 : -1;
      t.c[x] = sign;
      return mk_lt(std::move(t));
    }
    case Node::Kind::Eq:
    case Node::Kind::Ne: {
      long long cx = f->t.coeff(x);
      if (cx == 0) return f;
      long long lam = L / std::llabs(cx);
      Lin t = f->t.scaled(lam);
      if (t.coeff(x) < 0) t = t.scaled(-1);
      t.c[x] = 1;
      return f->kind == Node::Kind::Eq ? mk_eq(std::move(t))
                                       : mk_ne(std::move(t));
    }
    case Node::Kind::Dvd: {
      long long cx = f->t.coeff(x);
      if (cx == 0) return f;
      long long lam = L / std::llabs(cx);
      Lin t = f->t.scaled(lam);
      long long d = mul_ck(f->d, lam);
      if (t.coeff(x) < 0) t = t.scaled(-1);  // d | t  iff  d | -t
      t.c[x] = 1;
      return mk_dvd(d, std::move(t), f->dvd_neg);
    }
    case Node::Kind::And:
    case Node::Kind::Or: {
      std::vector<Ref> ks;
      ks.reserve(f->kids.size());
      for (const auto& k : f->kids) ks.push_back(unitize(k, x, L));
      return f->kind == Node::Kind::And ? mk_and(std::move(ks))
                                        : mk_or(std::move(ks));
    }
    default:
      throw Unsupported("unitize on non-NNF input");
  }
}

Ref minus_inf(const Ref& f, const std::string& x) {
  switch (f->kind) {
    case Node::Kind::Bool: return f;
    case Node::Kind::Lt: {
      long long cx = f->t.coeff(x);
      if (cx == 0) return f;
      return mk_bool(cx > 0);  // x + s < 0 true at -inf; -x + s < 0 false
    }
    case Node::Kind::Eq:
      return f->t.coeff(x) == 0 ? f : mk_bool(false);
    case Node::Kind::Ne:
      return f->t.coeff(x) == 0 ? f : mk_bool(true);
    case Node::Kind::Dvd: return f;
    case Node::Kind::And:
    case Node::Kind::Or: {
      std::vector<Ref> ks;
      ks.reserve(f->kids.size());
      for (const auto& k : f->kids) ks.push_back(minus_inf(k, x));
      return f->kind == Node::Kind::And ? mk_and(std::move(ks))
                                        : mk_or(std::move(ks));
    }
    default:
      throw Unsupported("minus_inf on non-NNF input");
  }
}

void collect_dvd_lcm(const Ref& f, const std::string& x, long long& D) {
  switch (f->kind) {
    case Node::Kind::Dvd:
      if (f->t.coeff(x) != 0) D = lcm_ck(D, f->d);
      return;
    case Node::Kind::And:
    case Node::Kind::Or:
      for (const auto& k : f->kids) collect_dvd_lcm(k, x, D);
      return;
    default: return;
  }
}

// Lower-boundary terms for the Cooper disjunction. Coefficients of x are
// +-1 after unitize; the sign-normalizing atom builders may flip either.
void collect_bset(const Ref& f, const std::string& x, std::set<Lin>& B) {
  switch (f->kind) {
    case Node::Kind::Lt: {
      if (f->t.coeff(x) == -1) B.insert(f->t.without(x));  // x > s
      return;
    }
    case Node::Kind::Eq: {
      long long cx = f->t.coeff(x);
      if (cx != 0)  // x = -cx*s: boundary one below the solution
        B.insert(f->t.without(x).scaled(-cx).add(Lin(-1)));
      return;
    }
    case Node::Kind::Ne: {
      long long cx = f->t.coeff(x);
      if (cx != 0) B.insert(f->t.without(x).scaled(-cx));
      return;
    }
    case Node::Kind::And:
    case Node::Kind::Or:
      for (const auto& k : f->kids) collect_bset(k, x, B);
      return;
    default: return;
  }
}

// Eliminates one existential quantifier from a QF NNF body.
Ref cooper(const std::string& x, const Ref& body) {
  long long L = 1;
  collect_coeff_lcm(body, x, L);

  Ref f = unitize(body, x, L);
  if (L > 1) f = mk_and({f, mk_dvd(L, Lin::var(x))});

  long long D = 1;
  collect_dvd_lcm(f, x, D);
  std::set<Lin> B;
  collect_bset(f, x, B);
  Ref finf = minus_inf(f, x);

  std::vector<Ref> disjuncts;
  for (long long j = 1; j <= D; ++j)
    disjuncts.push_back(subst_var(finf, x, Lin(j)));
  for (const auto& b : B)
    for (long long j = 1; j <= D; ++j) {
      Lin e = b;
      e.add(Lin(j));
      disjuncts.push_back(subst_var(f, x, e));
    }
  return mk_or(std::move(disjuncts));
}
}  // namespace

Ref eliminate(const Ref& f) {
  switch (f->kind) {
    case Node::Kind::Bool:
    case Node::Kind::Lt:
    case Node::Kind::Eq:
    case Node::Kind::Ne:
    case Node::Kind::Dvd: return f;
    case Node::Kind::And:
    case Node::Kind::Or: {
      std::vector<Ref> ks;
      ks.reserve(f->kids.size());
      for (const auto& k : f->kids) ks.push_back(eliminate(k));
      return f->kind == Node::Kind::And ? mk_and(std::move(ks))
                                        : mk_or(std::move(ks));
    }
    case Node::Kind::Not: return mk_not(eliminate(f->kids[0]));
    case Node::Kind::Exists: {
      Ref body = eliminate(f->kids[0]);
      return cooper(f->var, nnf(body, true));
    }
    case Node::Kind::Forall: {
      Ref body = eliminate(f->kids[0]);
      return nnf(mk_not(cooper(f->var, nnf(body, false))), true);
    }
  }
  return f;
}

bool eval_ground(const Ref& f) {
  switch (f->kind) {
    case Node::Kind::Bool: return f->bval;
    case Node::Kind::Lt:
      if (!f->t.is_const()) throw Unsupported("free variable in ground eval");
      return f->t.k < 0;
    case Node::Kind::Eq:
      if (!f->t.is_const()) throw Unsupported("free variable in ground eval");
      return f->t.k == 0;
    case Node::Kind::Ne:
      if (!f->t.is_const()) throw Unsupported("free variable in ground eval");
      return f->t.k != 0;
    case Node::Kind::Dvd:
      if (!f->t.is_const()) throw Unsupported("free variable in ground eval");
      return (mod_pos(f->t.k, f->d) == 0) != f->dvd_neg;
    case Node::Kind::And:
      for (const auto& k : f->kids)
        if (!eval_ground(k)) return false;
      return true;
    case Node::Kind::Or:
      for (const auto& k : f->kids)
        if (eval_ground(k)) return true;
      return false;
    case Node::Kind::Not: return !eval_ground(f->kids[0]);
    default: throw Unsupported("quantifier in ground eval");
  }
}

bool sat(const std::vector<Ref>& asserts,
         const std::vector<std::string>& decls) {
  Ref f = mk_and(std::vector<Ref>(asserts));
  for (auto it = decls.rbegin(); it != decls.rend(); ++it)
    f = mk_exists(*it, f);
  return eval_ground(eliminate(f));
}

}  // namespace entail::lia
