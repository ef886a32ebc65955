#include "entail/batch.hpp"

#include <atomic>
#include <chrono>
#include <iomanip>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "entail/semantics.hpp"

namespace entail {

std::size_t BatchReport::count(Verdict::Kind k) const {
  std::size_t n = 0;
  for (const auto& e : entries)
    if (e.verdict.kind == k) ++n;
  return n;
}

namespace {
EntryReport process_entry(const std::string& name, const Entailment& e,
                          const BatchOptions& opts) {
  EntryReport r;
  r.name = name;
  auto start = std::chrono::steady_clock::now();
  try {
    DecideResult res = decide_detailed(e, opts.run);
    r.verdict = res.verdict;
    r.stats = res.stats;
    if (opts.oracle_crosscheck && opts.run.oracle_bounds) {
      auto cm = oracle_search(e, opts.run.oracle_bounds->first,
                              opts.run.oracle_bounds->second);
      r.oracle_found = cm.has_value();
      r.oracle_conflict = cm.has_value() && r.verdict.is_valid();
      if (cm && !r.verdict.countermodel) r.verdict.countermodel = cm;
    }
  } catch (const std::exception& ex) {
    r.error = ex.what();
    r.verdict.kind = Verdict::Kind::Unknown;
    r.verdict.unknown_reason = BackendVerdict::Reason::SolverError;
  }
  auto end = std::chrono::steady_clock::now();
  r.seconds = std::chrono::duration<double>(end - start).count();
  return r;
}
}  // namespace

BatchReport run_batch(const InputFile& file, const BatchOptions& opts) {
  BatchReport report;
  report.entries.resize(file.entries.size());

  int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < file.entries.size(); ++i)
      report.entries[i] = process_entry(file.entries[i].first,
                                        file.entries[i].second, opts);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= file.entries.size()) return;
        report.entries[i] = process_entry(file.entries[i].first,
                                          file.entries[i].second, opts);
      }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  for (const auto& r : report.entries) {
    bool timeout = r.verdict.kind == Verdict::Kind::Unknown &&
                   r.verdict.unknown_reason == BackendVerdict::Reason::Timeout;
    if (timeout)
      ++report.buckets[4];
    else if (r.seconds < 0.1)
      ++report.buckets[0];
    else if (r.seconds < 1.0)
      ++report.buckets[1];
    else if (r.seconds < 10.0)
      ++report.buckets[2];
    else
      ++report.buckets[3];
  }
  return report;
}

namespace {
const char* verdict_word(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::Valid: return "valid";
    case Verdict::Kind::Invalid: return "invalid";
    case Verdict::Kind::ConditionViolation: return "condition-violation";
    case Verdict::Kind::Unknown: return "unknown";
  }
  return "unknown";
}
}  // namespace

std::string format_text(const BatchReport& report) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  for (const auto& r : report.entries) {
    os << std::left << std::setw(24) << r.name << " " << std::setw(20)
       << verdict_word(r.verdict) << " " << std::right << std::setw(8)
       << r.seconds << "s"
       << "  perms=" << r.stats.permutations
       << " pruned=" << r.stats.succedents_pruned
       << " frames=" << r.stats.frames_removed
       << " calls=" << r.stats.solver_calls;
    if (r.oracle_found.has_value()) {
      os << " oracle=" << (*r.oracle_found ? "countermodel" : "none");
      if (r.oracle_conflict) os << " CONFLICT";
    }
    if (!r.error.empty()) os << " error=" << r.error;
    os << "\n";
  }
  os << "summary: " << report.entries.size() << " entailments | <0.1s: "
     << report.buckets[0] << "  <1s: " << report.buckets[1]
     << "  <10s: " << report.buckets[2] << "  <300s: " << report.buckets[3]
     << "  timeout: " << report.buckets[4] << "\n";
  return os.str();
}

std::string format_json(const BatchReport& report) {
  nlohmann::json out;
  out["entailments"] = nlohmann::json::array();
  for (const auto& r : report.entries) {
    nlohmann::json e;
    e["name"] = r.name;
    e["verdict"] = verdict_word(r.verdict);
    if (r.verdict.kind == Verdict::Kind::Unknown)
      e["reason"] = BackendVerdict::unknown(r.verdict.unknown_reason).str();
    if (r.verdict.kind == Verdict::Kind::ConditionViolation)
      e["condition"] = r.verdict.condition.str();
    if (r.verdict.countermodel)
      e["countermodel"] = r.verdict.countermodel->str();
    e["seconds"] = r.seconds;
    e["permutations"] = r.stats.permutations;
    e["pruned"] = r.stats.succedents_pruned;
    e["frames_removed"] = r.stats.frames_removed;
    e["solver_calls"] = r.stats.solver_calls;
    if (r.oracle_found.has_value()) {
      e["oracle"] = *r.oracle_found ? "countermodel" : "none";
      e["oracle_conflict"] = r.oracle_conflict;
    }
    if (!r.error.empty()) e["error"] = r.error;
    out["entailments"].push_back(std::move(e));
  }
  out["summary"] = {{"count", report.entries.size()},
                    {"lt_0.1s", report.buckets[0]},
                    {"lt_1s", report.buckets[1]},
                    {"lt_10s", report.buckets[2]},
                    {"lt_300s", report.buckets[3]},
                    {"timeout", report.buckets[4]}};
  return out.dump(2) + "\n";
}

}  // namespace entail
