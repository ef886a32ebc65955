#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "entail/syntax.hpp"

namespace entail {

// Valuation of variables over naturals; absent variables read as 0.
struct Store {
  std::map<std::string, std::uint64_t> values;

  std::uint64_t get(const std::string& v) const {
    auto it = values.find(v);
    return it == values.end() ? 0 : it->second;
  }
};

// Finite partial map from positive addresses to values.
struct Heap {
  std::map<std::uint64_t, std::uint64_t> cells;

  bool operator==(const Heap& other) const { return cells == other.cells; }
};

struct Countermodel {
  Store store;
  Heap heap;

  std::string str() const;
};

long long eval_term(const Store& s, const Term& t);

// Bounded evaluation of a pure formula: quantifiers range over 0..bound.
bool eval_pure(const Store& s, const PureRef& f, std::uint64_t quant_bound);

// s,h |= phi with quantifiers (pure-formula binders and phi's existential
// prefix) enumerated over 0..quant_bound. Exact when phi is quantifier-free.
bool sat_qf(const Store& s, const Heap& h, const SymbolicHeap& phi,
            std::uint64_t quant_bound);

// Address set used by sigma under s; nullopt when some array range is empty
// (s(lo) > s(hi)). Overlapping atoms still union.
std::optional<std::set<std::uint64_t>> dom_of(const Store& s,
                                              const Sigma& sigma);

// Brute-force countermodel search over stores with values 0..store_bound and
// array cell contents 0..value_bound. Returns the first countermodel in
// enumeration order, or nullopt when the bounded space is exhausted (which
// is evidence, not a validity proof).
std::optional<Countermodel> oracle_search(const Entailment& e,
                                          std::uint64_t store_bound,
                                          std::uint64_t value_bound);

}  // namespace entail
