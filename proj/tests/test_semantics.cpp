#include <doctest.h>

#include <vector>

#include "entail/semantics.hpp"
#include "test_support.hpp"

using namespace entail;

namespace {
Term v(const std::string& n) { return Term::var(n); }

SymbolicHeap qf(std::vector<SpatialAtom> atoms,
                PureRef pure = Pure::mk_true()) {
  SymbolicHeap h;
  h.pure = std::move(pure);
  h.spatial.atoms = std::move(atoms);
  return h;
}

// Independent check of the separating-conjunction clause: enumerate every
// split of h into h1 + h2.
bool sat_star_by_splits(const Store& s, const Heap& h, const Sigma& s1,
                        const Sigma& s2, std::uint64_t qb) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> cells(h.cells.begin(),
                                                             h.cells.end());
  std::size_t n = cells.size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    Heap h1, h2;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1ULL << i))
        h1.cells.insert(cells[i]);
      else
        h2.cells.insert(cells[i]);
    }
    SymbolicHeap a = qf(s1.atoms), b = qf(s2.atoms);
    if (sat_qf(s, h1, a, qb) && sat_qf(s, h2, b, qb)) return true;
  }
  return false;
}
}  // namespace

TEST_CASE("sat_qf basic clauses") {
  Store s;
  s.values["x"] = 1;
  Heap h0;
  h0.cells = {{1, 0}};
  CHECK(sat_qf(s, h0, qf({SpatialAtom::points_to(v("x"), Term(0))}), 8));

  Heap h7;
  h7.cells = {{1, 7}};
  CHECK(sat_qf(s, h7, qf({SpatialAtom::arr(v("x"), v("x"))}), 8));
  CHECK(!sat_qf(s, h7, qf({SpatialAtom::points_to(v("x"), Term(0))}), 8));

  Store empty;
  Heap none;
  CHECK(sat_qf(empty, none, qf({SpatialAtom::emp()}), 8));
  CHECK(!sat_qf(empty, none, qf({SpatialAtom::arr(Term(1), Term(0))}), 8));
}

TEST_CASE("sat_qf existential prefix and pure quantifiers") {
  // Ex y (y > 0 & x -> y)
  SymbolicHeap phi;
  phi.ex_vars = {"y"};
  phi.pure = Pure::mk_atom(Rel::Lt, Term(0), v("y"));
  phi.spatial.atoms = {SpatialAtom::points_to(v("x"), v("y"))};

  Store s;
  s.values["x"] = 1;
  Heap h;
  h.cells = {{1, 7}};
  CHECK(sat_qf(s, h, phi, 8));
  Heap hz;
  hz.cells = {{1, 0}};
  CHECK(!sat_qf(s, hz, phi, 8));
}

TEST_CASE("separating conjunction agrees with split enumeration") {
  std::vector<std::pair<Sigma, Sigma>> cases = {
      {Sigma{{SpatialAtom::points_to(v("x"), Term(1))}},
       Sigma{{SpatialAtom::arr(v("y"), v("y").plus_const(1))}}},
      {Sigma{{SpatialAtom::arr(Term(1), Term(2))}},
       Sigma{{SpatialAtom::points_to(Term(3), Term(0))}}},
      {Sigma{{SpatialAtom::emp()}}, Sigma{{SpatialAtom::arr(v("x"), v("y"))}}},
  };

  for (const auto& [s1, s2] : cases) {
    Sigma joined = s1;
    joined.atoms.insert(joined.atoms.end(), s2.atoms.begin(), s2.atoms.end());
    for (const auto& s : test_support::all_stores({"x", "y"}, 4)) {
      // heaps over addresses 1..6 with small values, size <= 3 cells
      std::vector<std::uint64_t> addrs{1, 2, 3, 4, 5, 6};
      for (std::uint64_t mask = 0; mask < 64; ++mask) {
        if (__builtin_popcountll(mask) > 3) continue;
        Heap h;
        for (std::size_t i = 0; i < addrs.size(); ++i)
          if (mask & (1ULL << i)) h.cells[addrs[i]] = (i * 3 + 1) % 5;
        bool direct = sat_qf(s, h, qf(joined.atoms), 6);
        bool split = sat_star_by_splits(s, h, s1, s2, 6);
        REQUIRE(direct == split);
      }
    }
  }
}

TEST_CASE("dom_of") {
  Store s;
  s.values["x"] = 2;
  auto d = dom_of(s, Sigma{{SpatialAtom::arr(v("x"), v("x").plus_const(2))}});
  REQUIRE(d.has_value());
  CHECK(*d == std::set<std::uint64_t>{2, 3, 4});

  Store empty;
  CHECK(dom_of(empty, Sigma{{SpatialAtom::emp()}})->empty());

  Store s3;
  s3.values["x"] = 3;
  CHECK(!dom_of(s3, Sigma{{SpatialAtom::arr(v("x"), Term(2))}}).has_value());
}

TEST_CASE("oracle_search spec examples") {
  // Arr(x,x) |- x -> 0, Ex y (y > 0 & x -> y): valid, no countermodel
  Entailment motivating;
  motivating.antecedent = qf({SpatialAtom::arr(v("x"), v("x"))});
  motivating.succedents.push_back(
      qf({SpatialAtom::points_to(v("x"), Term(0))}));
  SymbolicHeap snd;
  snd.ex_vars = {"y"};
  snd.pure = Pure::mk_atom(Rel::Lt, Term(0), v("y"));
  snd.spatial.atoms = {SpatialAtom::points_to(v("x"), v("y"))};
  motivating.succedents.push_back(snd);
  CHECK(!oracle_search(motivating, 3, 3).has_value());

  // x -> 0 |- x -> 1: countermodel at the first store with x >= 1
  Entailment bad;
  bad.antecedent = qf({SpatialAtom::points_to(v("x"), Term(0))});
  bad.succedents.push_back(qf({SpatialAtom::points_to(v("x"), Term(1))}));
  auto cm = oracle_search(bad, 1, 1);
  REQUIRE(cm.has_value());
  CHECK(cm->store.get("x") == 1);
  CHECK(cm->heap.cells == std::map<std::uint64_t, std::uint64_t>{{1, 0}});

  // Arr(1,2) |- 1 -> 0 * Arr(2,2): first countermodel h = {1->1, 2->0}
  Entailment arr;
  arr.antecedent = qf({SpatialAtom::arr(Term(1), Term(2))});
  arr.succedents.push_back(qf({SpatialAtom::points_to(Term(1), Term(0)),
                               SpatialAtom::arr(Term(2), Term(2))}));
  auto cm2 = oracle_search(arr, 2, 2);
  REQUIRE(cm2.has_value());
  CHECK(cm2->heap.cells ==
        std::map<std::uint64_t, std::uint64_t>{{1, 1}, {2, 0}});
}

TEST_CASE("oracle countermodels replay and persist under larger bounds") {
  Entailment bad;
  bad.antecedent = qf({SpatialAtom::arr(Term(1), Term(2))});
  bad.succedents.push_back(qf({SpatialAtom::points_to(Term(1), Term(0)),
                               SpatialAtom::arr(Term(2), Term(2))}));

  auto cm = oracle_search(bad, 2, 2);
  REQUIRE(cm.has_value());
  CHECK(sat_qf(cm->store, cm->heap, bad.antecedent, 2));
  for (const auto& succ : bad.succedents)
    CHECK(!sat_qf(cm->store, cm->heap, succ, 2));

  CHECK(oracle_search(bad, 3, 3).has_value());
  CHECK(oracle_search(bad, 4, 5).has_value());
}
