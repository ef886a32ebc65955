#pragma once

#include <cstdint>
#include <vector>

#include "entail/backend.hpp"
#include "entail/semantics.hpp"
#include "entail/syntax.hpp"

namespace test_support {

// The bundled solver sits next to the test binaries in build/bin.
inline entail::SolverConfig solver(long long timeout_ms = 10000) {
  entail::SolverConfig cfg = entail::default_solver_config();
  cfg.timeout_ms = timeout_ms;
  return cfg;
}

// All stores over the given variables with values 0..bound.
inline std::vector<entail::Store> all_stores(
    const std::vector<std::string>& vars, std::uint64_t bound) {
  std::vector<entail::Store> out;
  std::vector<std::uint64_t> v(vars.size(), 0);
  for (;;) {
    entail::Store s;
    for (std::size_t i = 0; i < vars.size(); ++i) s.values[vars[i]] = v[i];
    out.push_back(std::move(s));
    std::size_t i = v.size();
    bool carried = false;
    while (i > 0) {
      --i;
      if (v[i] < bound) {
        ++v[i];
        for (std::size_t j = i + 1; j < v.size(); ++j) v[j] = 0;
        carried = true;
        break;
      }
    }
    if (!carried) return out;
  }
}

// Store-level logical equivalence of two pure formulas, exhaustively over
// the union of their free variables.
inline bool equivalent_on_stores(const entail::PureRef& a,
                                 const entail::PureRef& b, std::uint64_t bound,
                                 std::uint64_t quant_bound = 8) {
  auto fa = entail::free_vars(a);
  auto fb = entail::free_vars(b);
  fa.insert(fb.begin(), fb.end());
  std::vector<std::string> vars(fa.begin(), fa.end());
  for (const auto& s : all_stores(vars, bound))
    if (entail::eval_pure(s, a, quant_bound) !=
        entail::eval_pure(s, b, quant_bound))
      return false;
  return true;
}

}  // namespace test_support
