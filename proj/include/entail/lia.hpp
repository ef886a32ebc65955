#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

// Decision procedure for quantified linear integer arithmetic via Cooper
// quantifier elimination. Backs the bundled `pressmt` SMT-LIB tool and the
// in-process cross checks in the test suite.
namespace entail::lia {

struct Overflow : std::runtime_error {
  Overflow() : std::runtime_error("arithmetic overflow in lia") {}
};

struct Unsupported : std::runtime_error {
  explicit Unsupported(const std::string& what)
      : std::runtime_error("unsupported: " + what) {}
};

long long add_ck(long long a, long long b);
long long mul_ck(long long a, long long b);

// Linear expression over integers.
struct Lin {
  long long k = 0;
  std::map<std::string, long long> c;

  Lin() = default;
  explicit Lin(long long constant) : k(constant) {}
  static Lin var(const std::string& v, long long coeff = 1);

  bool is_const() const { return c.empty(); }
  long long coeff(const std::string& v) const;
  Lin& add(const Lin& o, long long scale = 1);
  Lin scaled(long long s) const;
  Lin without(const std::string& v) const;

  bool operator==(const Lin& o) const { return k == o.k && c == o.c; }
  bool operator<(const Lin& o) const {
    return k != o.k ? k < o.k : c < o.c;
  }
};

class Node;
using Ref = std::shared_ptr<const Node>;

class Node {
public:
  // Lt: t < 0; Eq: t = 0; Ne: t != 0; Dvd: d | t (negated when dvd_neg).
  enum class Kind { Bool, Lt, Eq, Ne, Dvd, And, Or, Not, Exists, Forall };

  Kind kind;
  bool bval = false;
  Lin t;
  long long d = 0;
  bool dvd_neg = false;
  std::vector<Ref> kids;
  std::string var;

  std::string str() const;
};

Ref mk_bool(bool b);
Ref mk_lt(Lin t);             // t < 0
Ref mk_le(Lin t);             // t <= 0 (stored as t - 1 < 0... see impl)
Ref mk_eq(Lin t);
Ref mk_ne(Lin t);
Ref mk_dvd(long long d, Lin t, bool neg = false);
Ref mk_and(std::vector<Ref> kids);
Ref mk_or(std::vector<Ref> kids);
Ref mk_not(Ref a);
Ref mk_exists(const std::string& v, Ref body);
Ref mk_forall(const std::string& v, Ref body);

// Eliminates all quantifiers; the result contains only the free variables
// of the input.
Ref eliminate(const Ref& f);

// Evaluates a variable-free formula.
bool eval_ground(const Ref& f);

// Satisfiability of the conjunction of asserts with the declared variables
// taken as existentially quantified integers.
bool sat(const std::vector<Ref>& asserts, const std::vector<std::string>& decls);

enum class Answer { Sat, Unsat, Unknown };

// Runs an SMT-LIB 2 script (the subset produced by the backend emitter:
// declarations, assertions, check-sat over Int with quantifiers). Writes
// one answer line per check-sat to `out`. Returns the last answer.
Answer run_script(std::istream& in, std::ostream& out);

}  // namespace entail::lia
