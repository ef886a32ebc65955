#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace entail {

// Linear integer expression: constant + coefficient map over variable names.
// Surface terms (as parsed) have all coefficients and the constant >= 0;
// negative coefficients appear only transiently inside the translation and
// are moved across the relation by normalize_atom.
class Term {
public:
  Term() = default;
  explicit Term(long long constant) : constant_(constant) {}
  static Term var(const std::string& name, long long coeff = 1);

  long long constant() const { return constant_; }
  const std::map<std::string, long long>& coeffs() const { return coeffs_; }
  long long coeff(const std::string& name) const;

  bool is_constant() const { return coeffs_.empty(); }
  bool is_surface() const;  // constant >= 0 and every coefficient >= 0

  Term& add(const Term& other, long long scale = 1);
  Term plus(const Term& other) const;
  Term minus(const Term& other) const;
  Term plus_const(long long k) const;
  Term scaled(long long k) const;

  // Splits into (nonnegative part, negated negative part): *this == pos - neg
  // with both parts surface-level.
  std::pair<Term, Term> split_signs() const;

  bool operator==(const Term& other) const {
    return constant_ == other.constant_ && coeffs_ == other.coeffs_;
  }
  bool operator!=(const Term& other) const { return !(*this == other); }
  bool operator<(const Term& other) const;  // arbitrary total order

  std::string str() const;

private:
  long long constant_ = 0;
  std::map<std::string, long long> coeffs_;  // no zero entries
};

enum class Rel { Eq, Ne, Lt, Le };

const char* rel_name(Rel r);

struct PureAtom {
  Rel rel = Rel::Eq;
  Term lhs;
  Term rhs;

  bool operator==(const PureAtom& other) const {
    return rel == other.rel && lhs == other.lhs && rhs == other.rhs;
  }
};

// Moves negative contributions across the relation so both sides are
// surface-level again; this is the extended-term elimination that replaces
// t'+(u-t) = t'' with t'+u = t''+t.
PureAtom normalize_atom(const PureAtom& atom);
PureAtom make_atom(Rel rel, const Term& lhs, const Term& rhs);

class Pure;
using PureRef = std::shared_ptr<const Pure>;

// Presburger formula tree. Shared immutable nodes.
class Pure {
  struct Key {};  // construction restricted to the mk_* factories

public:
  enum class Kind { True, False, Atom, And, Or, Not, Implies, Exists, Forall };

  Pure(Key, Kind k, PureAtom a, PureRef l, PureRef r, std::string v)
      : kind_(k), atom_(std::move(a)), lhs_(std::move(l)), rhs_(std::move(r)),
        var_(std::move(v)) {}

  Kind kind() const { return kind_; }
  const PureAtom& atom() const { return atom_; }
  const PureRef& lhs() const { return lhs_; }
  const PureRef& rhs() const { return rhs_; }
  const PureRef& body() const { return lhs_; }
  const std::string& var() const { return var_; }

  static PureRef mk_true();
  static PureRef mk_false();
  static PureRef mk_bool(bool b) { return b ? mk_true() : mk_false(); }
  // Atom construction normalizes via normalize_atom.
  static PureRef mk_atom(Rel rel, const Term& lhs, const Term& rhs);
  static PureRef mk_atom(const PureAtom& a);
  static PureRef mk_and(PureRef a, PureRef b);
  static PureRef mk_or(PureRef a, PureRef b);
  static PureRef mk_not(PureRef a);
  static PureRef mk_implies(PureRef a, PureRef b);
  static PureRef mk_exists(const std::string& v, PureRef body);
  static PureRef mk_forall(const std::string& v, PureRef body);
  // Right-folded chains; empty vector yields true (and) / false (or).
  static PureRef mk_and_all(const std::vector<PureRef>& fs);
  static PureRef mk_or_all(const std::vector<PureRef>& fs);

  std::string str() const;

private:
  static PureRef mk_node(Kind k, PureAtom atom, PureRef l, PureRef r,
                         std::string v);

  Kind kind_ = Kind::True;
  PureAtom atom_;
  PureRef lhs_;
  PureRef rhs_;
  std::string var_;
};

// Structural equality (no alpha conversion).
bool pure_equal(const PureRef& a, const PureRef& b);

struct SpatialAtom {
  enum class Kind { Emp, PointsTo, Arr };
  Kind kind = Kind::Emp;
  Term fst;  // address (PointsTo) or lower bound (Arr)
  Term snd;  // value (PointsTo) or upper bound (Arr)

  static SpatialAtom emp() { return {}; }
  static SpatialAtom points_to(Term addr, Term val);
  static SpatialAtom arr(Term lo, Term hi);

  bool is_emp() const { return kind == Kind::Emp; }
  bool operator==(const SpatialAtom& other) const;
  std::string str() const;
};

// Ordered list of spatial atoms; the order is the separating-conjunction
// list structure and is semantically significant for sorting.
struct Sigma {
  std::vector<SpatialAtom> atoms;

  Sigma() = default;
  explicit Sigma(std::vector<SpatialAtom> a) : atoms(std::move(a)) {}

  // Number of '*' symbols: list length minus one, floored at zero.
  std::size_t star_count() const {
    return atoms.empty() ? 0 : atoms.size() - 1;
  }
  bool all_emp() const;
  bool operator==(const Sigma& other) const { return atoms == other.atoms; }
  std::string str() const;
};

struct SymbolicHeap {
  std::vector<std::string> ex_vars;  // existential prefix, globally distinct
  PureRef pure = Pure::mk_true();
  Sigma spatial;

  std::string str() const;
};

// Antecedent is QF (no existential prefix); succedent order fixes the
// index set I and its linear order.
struct Entailment {
  SymbolicHeap antecedent;
  std::vector<SymbolicHeap> succedents;

  std::string str() const;
};

// Free-variable computation. SymbolicHeap removes its own binders.
std::set<std::string> free_vars(const Term& t);
std::set<std::string> free_vars(const PureRef& f);
std::set<std::string> free_vars(const Sigma& s);
std::set<std::string> free_vars(const SymbolicHeap& h);
std::set<std::string> free_vars(const Entailment& e);

// Capture-avoiding simultaneous substitution.
using Bindings = std::map<std::string, Term>;
Term substitute(const Term& t, const Bindings& b);
PureRef substitute(const PureRef& f, const Bindings& b);
Sigma substitute(const Sigma& s, const Bindings& b);

// All reorderings of the spatial part, enumerated in lexicographic order
// on atom indices; other fields unchanged.
std::vector<SymbolicHeap> permutations(const SymbolicHeap& h);
std::vector<Sigma> permutations(const Sigma& s);

// Variables drawn internally use this prefix; the parser rejects free
// user variables that collide with it.
inline constexpr char kReservedPrefix = '_';
bool is_reserved_name(const std::string& name);

}  // namespace entail
