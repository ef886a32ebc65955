#include "entail/pipeline.hpp"

#include <sstream>

namespace entail {

std::string Verdict::str() const {
  switch (kind) {
    case Kind::Valid: return "valid";
    case Kind::Invalid: {
      std::ostringstream os;
      os << "invalid";
      if (failing_sorted_index)
        os << " (sorted entailment #" << *failing_sorted_index << ")";
      if (countermodel) os << " " << countermodel->str();
      return os.str();
    }
    case Kind::ConditionViolation: return condition.str();
    case Kind::Unknown:
      return BackendVerdict::unknown(unknown_reason).str();
  }
  return "unknown";
}

DecideResult decide_detailed(const Entailment& e, const RunOptions& opts) {
  DecideResult out;
  SolverStats solver_stats;

  ConditionReport report = check_condition(e);
  if (!report.ok) {
    out.verdict.kind = Verdict::Kind::ConditionViolation;
    out.verdict.condition = std::move(report);
    return out;
  }

  Entailment work = e;
  if (opts.enable_f) {
    auto [framed, removed] = apply_frame_rule(work);
    work = std::move(framed);
    out.stats.frames_removed = removed;
  }

  if (opts.enable_u &&
      antecedent_unsat(work.antecedent, opts.solver, &solver_stats)) {
    out.verdict.kind = Verdict::Kind::Valid;
    out.stats.solver_calls = solver_stats.calls.load();
    return out;
  }

  std::vector<SortedEntailment> sorted = decompose(work);
  out.stats.permutations = sorted.size();

  bool any_unknown = false;
  BackendVerdict::Reason unknown_reason = BackendVerdict::Reason::None;

  for (std::size_t idx = 0; idx < sorted.size(); ++idx) {
    SortedEntailment se = sorted[idx];

    if (opts.enable_u) {
      auto [pruned, log] =
          prune_succedents(se.as_entailment(), opts.solver, &solver_stats);
      out.stats.succedents_pruned += log.dropped.size();
      if (log.antecedent_unsat) continue;  // trivially valid member
      if (!log.dropped.empty()) {
        SortedEntailment slim;
        slim.antecedent = se.antecedent;
        slim.antecedent_raw_pure = se.antecedent_raw_pure;
        std::size_t k = 0;
        for (std::size_t j = 0; j < se.succedents.size(); ++j) {
          if (k < log.dropped.size() && log.dropped[k].index == j) {
            ++k;
            continue;
          }
          slim.succedents.push_back(se.succedents[j]);
          slim.succedent_raw_pures.push_back(se.succedent_raw_pures[j]);
        }
        se = std::move(slim);
      }
    }

    FreshSupply fresh(std::to_string(idx));
    TranslateOptions topts;
    topts.simplify = opts.enable_simplify;
    PureRef formula;
    try {
      formula = build_validity_formula(se, fresh, topts);
    } catch (const TranslateOverflow&) {
      any_unknown = true;
      unknown_reason = BackendVerdict::Reason::Unsupported;
      continue;
    }

    BackendVerdict verdict =
        decide_validity(formula, opts.solver, &solver_stats);
    if (verdict.is_invalid()) {
      out.verdict.kind = Verdict::Kind::Invalid;
      out.verdict.failing_sorted_index = idx;
      if (opts.oracle_bounds)
        out.verdict.countermodel = oracle_search(e, opts.oracle_bounds->first,
                                                 opts.oracle_bounds->second);
      out.stats.solver_calls = solver_stats.calls.load();
      return out;
    }
    if (verdict.is_unknown()) {
      any_unknown = true;
      unknown_reason = verdict.reason;
    }
  }

  out.stats.solver_calls = solver_stats.calls.load();
  if (any_unknown) {
    out.verdict.kind = Verdict::Kind::Unknown;
    out.verdict.unknown_reason = unknown_reason;
  } else {
    out.verdict.kind = Verdict::Kind::Valid;
  }
  return out;
}

Verdict decide(const Entailment& e, const RunOptions& opts) {
  return decide_detailed(e, opts).verdict;
}

}  // namespace entail
