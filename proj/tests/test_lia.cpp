#include <doctest.h>

#include <random>
#include <sstream>

#include "entail/lia.hpp"

using namespace entail::lia;

namespace {
Lin var(const std::string& v) { return Lin::var(v); }

Lin lin(long long k) { return Lin(k); }

// a - b
Lin diff(Lin a, const Lin& b) {
  a.add(b, -1);
  return a;
}

bool decide_closed(const Ref& f) { return eval_ground(eliminate(f)); }
}  // namespace

TEST_CASE("ground atoms and connectives") {
  CHECK(eval_ground(mk_lt(lin(-1))));
  CHECK(!eval_ground(mk_lt(lin(0))));
  CHECK(eval_ground(mk_dvd(3, lin(9))));
  CHECK(!eval_ground(mk_dvd(3, lin(10))));
  CHECK(eval_ground(mk_dvd(3, lin(-9))));
  CHECK(eval_ground(mk_and({mk_bool(true), mk_ne(lin(2))})));
}

TEST_CASE("classic quantified facts") {
  // forall x exists y: y = x + 1
  Ref f = mk_forall(
      "x", mk_exists("y", mk_eq(diff(var("y"), var("x").scaled(1)).add(lin(-1)))));
  CHECK(decide_closed(f));

  // exists x: 2|x and not 2|x is unsat
  CHECK(!decide_closed(
      mk_exists("x", mk_and({mk_dvd(2, var("x")), mk_dvd(2, var("x"), true)}))));

  // forall x: 2|x or 2|x+1
  CHECK(decide_closed(mk_forall(
      "x", mk_or({mk_dvd(2, var("x")), mk_dvd(2, var("x").scaled(1).add(lin(1)))}))));

  // exists x: 3x = 7 has no integer solution
  CHECK(!decide_closed(mk_exists("x", mk_eq(var("x").scaled(3).add(lin(-7))))));
  // exists x: 3x = 9
  CHECK(decide_closed(mk_exists("x", mk_eq(var("x").scaled(3).add(lin(-9))))));

  // forall x: x < 5 or x > 3
  CHECK(decide_closed(mk_forall(
      "x", mk_or({mk_lt(var("x").add(lin(-5))), mk_lt(diff(lin(3), var("x")))}))));

  // exists x forall y: x <= y fails over unbounded integers
  CHECK(!decide_closed(
      mk_exists("x", mk_forall("y", mk_le(diff(var("x"), var("y")))))));

  // alternation: forall x exists y: 2y = x or 2y = x+1
  CHECK(decide_closed(mk_forall(
      "x", mk_exists("y", mk_or({mk_eq(diff(var("y").scaled(2), var("x"))),
                                 mk_eq(diff(var("y").scaled(2),
                                            var("x").scaled(1).add(lin(1))))})))));
}

TEST_CASE("sat interface over declared constants") {
  // x >= 0 and x < 0 unsat
  CHECK(!sat({mk_le(diff(lin(0), var("x"))), mk_lt(var("x"))}, {"x"}));
  // x > 3 and 2|x sat
  CHECK(sat({mk_lt(diff(lin(3), var("x"))), mk_dvd(2, var("x"))}, {"x"}));
}

namespace {
// Random QF formula over vars with small coefficients.
struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  std::uint64_t pick(std::uint64_t n) { return g() % n; }
  long long coeff() { return static_cast<long long>(pick(7)) - 3; }
};

Ref random_qf(Rng& r, const std::vector<std::string>& vars, int depth) {
  if (depth == 0 || r.pick(3) == 0) {
    Lin t(static_cast<long long>(r.pick(9)) - 4);
    for (const auto& v : vars) t.add(Lin::var(v), r.coeff());
    switch (r.pick(4)) {
      case 0: return mk_lt(t);
      case 1: return mk_le(t);
      case 2: return mk_eq(t);
      default: return mk_dvd(2 + r.pick(3), t, r.pick(2) == 0);
    }
  }
  switch (r.pick(3)) {
    case 0:
      return mk_and({random_qf(r, vars, depth - 1),
                     random_qf(r, vars, depth - 1)});
    case 1:
      return mk_or({random_qf(r, vars, depth - 1),
                    random_qf(r, vars, depth - 1)});
    default: return mk_not(random_qf(r, vars, depth - 1));
  }
}

// 0 <= v <= bound
Ref range_guard(const std::string& v, long long bound) {
  return mk_and({mk_le(Lin::var(v).scaled(-1)),
                 mk_le(Lin::var(v).add(Lin(-bound)))});
}

bool brute_eval(const Ref& f, std::map<std::string, long long>& env);

bool brute_atom(const Lin& t, const std::map<std::string, long long>& env,
                long long& out) {
  long long acc = t.k;
  for (const auto& [v, c] : t.c) {
    auto it = env.find(v);
    REQUIRE(it != env.end());
    acc += c * it->second;
  }
  out = acc;
  return true;
}

// exact evaluation with all quantifiers known to range over 0..bound
bool brute_eval_bounded(const Ref& f, std::map<std::string, long long>& env,
                        long long bound) {
  switch (f->kind) {
    case Node::Kind::Bool: return f->bval;
    case Node::Kind::Lt: {
      long long v;
      brute_atom(f->t, env, v);
      return v < 0;
    }
    case Node::Kind::Eq: {
      long long v;
      brute_atom(f->t, env, v);
      return v == 0;
    }
    case Node::Kind::Ne: {
      long long v;
      brute_atom(f->t, env, v);
      return v != 0;
    }
    case Node::Kind::Dvd: {
      long long v;
      brute_atom(f->t, env, v);
      long long m = ((v % f->d) + f->d) % f->d;
      return (m == 0) != f->dvd_neg;
    }
    case Node::Kind::And:
      for (const auto& k : f->kids)
        if (!brute_eval_bounded(k, env, bound)) return false;
      return true;
    case Node::Kind::Or:
      for (const auto& k : f->kids)
        if (brute_eval_bounded(k, env, bound)) return true;
      return false;
    case Node::Kind::Not: return !brute_eval_bounded(f->kids[0], env, bound);
    case Node::Kind::Exists: {
      for (long long a = 0; a <= bound; ++a) {
        env[f->var] = a;
        if (brute_eval_bounded(f->kids[0], env, bound)) {
          env.erase(f->var);
          return true;
        }
      }
      env.erase(f->var);
      return false;
    }
    case Node::Kind::Forall: {
      for (long long a = 0; a <= bound; ++a) {
        env[f->var] = a;
        if (!brute_eval_bounded(f->kids[0], env, bound)) {
          env.erase(f->var);
          return false;
        }
      }
      env.erase(f->var);
      return true;
    }
  }
  return false;
}
}  // namespace

TEST_CASE("cooper elimination agrees with brute force on range-bounded "
          "quantifiers") {
  // When every quantifier is guarded into 0..B, bounded brute force is
  // exact, so the two deciders must agree exactly.
  const long long B = 4;
  Rng r(20260809);
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> qvars;
    int nq = 1 + static_cast<int>(r.pick(3));
    for (int i = 0; i < nq; ++i) qvars.push_back("q" + std::to_string(i));

    Ref body = random_qf(r, qvars, 2);
    Ref guarded = body;
    Ref brute = body;
    for (int i = nq; i-- > 0;) {
      const std::string& v = qvars[static_cast<std::size_t>(i)];
      bool uni = r.pick(2) == 0;
      if (uni) {
        guarded = mk_forall(v, mk_or({mk_not(range_guard(v, B)), guarded}));
        brute = mk_forall(v, brute);
      } else {
        guarded = mk_exists(v, mk_and({range_guard(v, B), guarded}));
        brute = mk_exists(v, brute);
      }
    }
    std::map<std::string, long long> env;
    bool expect = brute_eval_bounded(brute, env, B);
    bool got = decide_closed(guarded);
    if (expect != got) {
      CAPTURE(trial);
      CAPTURE(guarded->str());
      REQUIRE(expect == got);
    }
    ++checked;
  }
  CHECK(checked == 300);
}

TEST_CASE("smtlib script subset") {
  std::istringstream script(R"((set-logic LIA)
(assert (not (forall ((x Int)) (=> (>= x 0) (> (+ x 1) 0)))))
(check-sat)
)");
  std::ostringstream out;
  CHECK(run_script(script, out) == Answer::Unsat);
  CHECK(out.str() == "unsat\n");

  std::istringstream script2(R"(
(declare-const a Int)
(declare-fun b () Int)
(assert (= (+ a b) 5))
(assert (distinct a b))
(check-sat)
)");
  std::ostringstream out2;
  CHECK(run_script(script2, out2) == Answer::Sat);

  std::istringstream script3(R"(
(assert (exists ((x Int)) (and (< 3 x) (< x 3))))
(check-sat)
)");
  std::ostringstream out3;
  CHECK(run_script(script3, out3) == Answer::Unsat);

  // shadowing binders resolve innermost-first
  std::istringstream script4(R"(
(assert (forall ((x Int)) (exists ((x Int)) (= x 42))))
(check-sat)
)");
  std::ostringstream out4;
  CHECK(run_script(script4, out4) == Answer::Sat);
}
