#include <doctest.h>

#include <algorithm>
#include <set>

#include "entail/syntax.hpp"
#include "test_support.hpp"

using namespace entail;
using test_support::all_stores;

namespace {
Term v(const std::string& n) { return Term::var(n); }

bool atoms_equivalent(const PureAtom& a, const PureAtom& b) {
  return test_support::equivalent_on_stores(Pure::mk_atom(a), Pure::mk_atom(b),
                                            8);
}
}  // namespace

TEST_CASE("normalize_atom moves negative contributions across the relation") {
  // x + (5-3) = y
  PureAtom a{Rel::Eq, v("x").plus_const(5).plus_const(-3), v("y")};
  PureAtom n = normalize_atom(a);
  CHECK(n.lhs.is_surface());
  CHECK(n.rhs.is_surface());
  CHECK(atoms_equivalent(n, PureAtom{Rel::Eq, v("x").plus_const(5),
                                     v("y").plus_const(3)}));

  PureAtom id{Rel::Eq, v("x"), v("x")};
  PureAtom nid = normalize_atom(id);
  CHECK(atoms_equivalent(nid, id));

  // t + (u - t) < w with t=z1, u=2, w=z2
  PureAtom c{Rel::Lt, v("z1").plus(Term(2).minus(v("z1"))), v("z2")};
  PureAtom nc = normalize_atom(c);
  CHECK(nc.lhs.is_surface());
  CHECK(nc.rhs.is_surface());
  CHECK(atoms_equivalent(
      nc, PureAtom{Rel::Lt, v("z1").plus_const(2), v("z2").plus(v("z1"))}));
}

TEST_CASE("normalize_atom preserves satisfying stores exhaustively") {
  // a few mixed-sign atoms over <= 3 variables, stores over 0..8
  std::vector<PureAtom> cases = {
      {Rel::Le, v("x").minus(v("y")), Term(2)},
      {Rel::Lt, Term(0).minus(v("x")).plus_const(3), v("z").minus(v("y"))},
      {Rel::Ne, v("x").plus(v("y")).plus_const(-4), v("z").scaled(2)},
      {Rel::Eq, v("x").scaled(-2).plus_const(7), v("y").minus(v("z"))},
  };
  for (const auto& a : cases) {
    PureAtom n = normalize_atom(a);
    CHECK(n.lhs.is_surface());
    CHECK(n.rhs.is_surface());
    CHECK(atoms_equivalent(a, n));
  }
}

TEST_CASE("free variables") {
  CHECK(free_vars(v("x").plus(v("y")).plus_const(1)) ==
        std::set<std::string>{"x", "y"});

  SymbolicHeap h;
  h.ex_vars = {"y"};
  h.pure = Pure::mk_atom(Rel::Lt, Term(0), v("y"));
  h.spatial.atoms = {SpatialAtom::points_to(v("x"), v("y"))};
  CHECK(free_vars(h) == std::set<std::string>{"x"});

  CHECK(free_vars(Sigma{{SpatialAtom::emp()}}).empty());
}

TEST_CASE("substitution") {
  PureRef f = Pure::mk_atom(Rel::Lt, v("x"), v("y"));
  PureRef g = substitute(f, {{"x", Term(3)}});
  CHECK(free_vars(g) == std::set<std::string>{"y"});
  CHECK(test_support::equivalent_on_stores(
      g, Pure::mk_atom(Rel::Lt, Term(3), v("y")), 8));

  // capture avoidance: (Ex y. x < y)[x := y]
  PureRef ex = Pure::mk_exists("y", Pure::mk_atom(Rel::Lt, v("x"), v("y")));
  PureRef sub = substitute(ex, {{"x", v("y")}});
  CHECK(free_vars(sub) == std::set<std::string>{"y"});
  // y < y' for some y' is true over naturals (y' = y + 1 <= bound)
  Store s;
  s.values["y"] = 3;
  CHECK(eval_pure(s, sub, 8));

  Sigma arr{{SpatialAtom::arr(v("t"), v("t").plus(v("u")))}};
  Sigma arr2 = substitute(arr, {{"u", Term(2)}});
  CHECK(arr2.atoms[0].snd == v("t").plus_const(2));
}

TEST_CASE("substitute/free_vars interaction") {
  std::vector<PureRef> formulas = {
      Pure::mk_and(Pure::mk_atom(Rel::Lt, v("x"), v("y")),
                   Pure::mk_atom(Rel::Eq, v("x"), Term(2))),
      Pure::mk_or(Pure::mk_not(Pure::mk_atom(Rel::Le, v("x"), Term(1))),
                  Pure::mk_exists("q", Pure::mk_atom(Rel::Eq, v("q"), v("x")))),
  };
  Term t = v("y").plus_const(1);
  for (const auto& f : formulas) {
    auto fv = free_vars(f);
    REQUIRE(fv.count("x"));
    auto after = free_vars(substitute(f, {{"x", t}}));
    fv.erase("x");
    for (const auto& w : free_vars(t)) fv.insert(w);
    CHECK(after == fv);
  }
}

TEST_CASE("permutations enumerate all reorderings deterministically") {
  SymbolicHeap h;
  SpatialAtom s1 = SpatialAtom::points_to(Term(1), Term(10));
  SpatialAtom s2 = SpatialAtom::points_to(Term(2), Term(20));

  h.spatial.atoms = {s1, s2};
  auto perms = permutations(h);
  REQUIRE(perms.size() == 2);
  CHECK(perms[0].spatial.atoms == std::vector<SpatialAtom>{s1, s2});
  CHECK(perms[1].spatial.atoms == std::vector<SpatialAtom>{s2, s1});

  SymbolicHeap emp;
  emp.spatial.atoms = {SpatialAtom::emp()};
  CHECK(permutations(emp).size() == 1);

  SpatialAtom s3 = SpatialAtom::arr(Term(4), Term(6));
  SymbolicHeap three;
  three.spatial.atoms = {s1, s2, s3};
  auto p3 = permutations(three);
  CHECK(p3.size() == 6);
  std::set<std::vector<std::string>> distinct;
  for (const auto& p : p3) {
    REQUIRE(p.spatial.atoms.size() == 3);
    // multiset-equal to the input
    auto sorted = p.spatial.atoms;
    std::sort(sorted.begin(), sorted.end(),
              [](const SpatialAtom& a, const SpatialAtom& b) {
                return a.str() < b.str();
              });
    CHECK(sorted[0].str() <= sorted[1].str());
    std::vector<std::string> key;
    for (const auto& a : p.spatial.atoms) key.push_back(a.str());
    distinct.insert(key);
  }
  CHECK(distinct.size() == 6);
}

TEST_CASE("sigma star count") {
  Sigma emp_list{{SpatialAtom::emp()}};
  CHECK(emp_list.star_count() == 0);
  Sigma two{{SpatialAtom::emp(), SpatialAtom::points_to(Term(1), Term(0))}};
  CHECK(two.star_count() == 1);
  CHECK(Sigma{}.star_count() == 0);
}
