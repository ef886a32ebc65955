#pragma once

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "entail/syntax.hpp"

namespace entail {

struct SolverConfig {
  std::string executable;            // path or bare name looked up in PATH
  std::vector<std::string> args;
  long long timeout_ms = 60000;      // > 0
  std::string working_dir;           // empty: inherit
  std::string dump_dir;              // when set, every script is written here
};

// Raised before spawning when the configured solver cannot be executed.
struct SolverConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BackendVerdict {
  enum class Kind { Valid, Invalid, Unknown };
  enum class Reason { None, Timeout, SolverError, Unsupported };

  Kind kind = Kind::Unknown;
  Reason reason = Reason::None;

  static BackendVerdict valid() { return {Kind::Valid, Reason::None}; }
  static BackendVerdict invalid() { return {Kind::Invalid, Reason::None}; }
  static BackendVerdict unknown(Reason r) { return {Kind::Unknown, r}; }

  bool is_valid() const { return kind == Kind::Valid; }
  bool is_invalid() const { return kind == Kind::Invalid; }
  bool is_unknown() const { return kind == Kind::Unknown; }
  std::string str() const;
};

struct SolverStats {
  std::atomic<std::uint64_t> calls{0};
};

// Serializes a closed formula as an SMT-LIB 2 script asserting its negation
// under natural-number semantics: every quantified variable carries a >= 0
// guard. "unsat" from the solver means the formula is valid. The output is
// byte-deterministic for a given formula.
std::string emit_smtlib(const PureRef& f);

// Serializes one formula (not a script); used by emit_smtlib and tests.
std::string smtlib_formula(const PureRef& f);

// Spawns the solver, feeds the script on stdin, returns raw stdout text.
// Raises SolverConfigError when the executable cannot be found. Timeout or
// a failed process yields an empty/garbage answer that the caller maps to
// Unknown; the structured result is exposed via RawResult.
struct RawResult {
  enum class Status { Ok, Timeout, Error };
  Status status = Status::Error;
  std::string output;
};
RawResult run_solver(const std::string& script, const SolverConfig& cfg);

// Bounded evaluation of a closed formula: quantifiers range over 0..bound.
// Exact for formulas whose quantifiers are semantically bounded; used as a
// test oracle, never as the production decision path.
bool bounded_eval(const PureRef& f, std::uint64_t bound);

// emit + run + map: unsat -> Valid, sat -> Invalid, otherwise Unknown.
BackendVerdict decide_validity(const PureRef& f, const SolverConfig& cfg,
                               SolverStats* stats = nullptr);

// Locates the default solver: $ENTAIL_SOLVER, then a `pressmt` binary next
// to the running executable, then PATH.
SolverConfig default_solver_config();

}  // namespace entail
