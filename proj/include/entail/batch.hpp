#pragma once

#include <optional>
#include <string>
#include <vector>

#include "entail/parser.hpp"
#include "entail/pipeline.hpp"

namespace entail {

struct EntryReport {
  std::string name;
  Verdict verdict;
  double seconds = 0.0;
  RunStats stats;
  std::string error;  // isolated per-entry failure, batch continues
  // cross-check mode: oracle result and whether it contradicts the verdict
  std::optional<bool> oracle_found;
  bool oracle_conflict = false;
};

struct BatchReport {
  std::vector<EntryReport> entries;
  // histogram buckets: <0.1s, <1s, <10s, <300s, timeout
  std::size_t buckets[5] = {0, 0, 0, 0, 0};

  std::size_t count(Verdict::Kind k) const;
};

struct BatchOptions {
  RunOptions run;
  int jobs = 1;
  bool oracle_crosscheck = false;  // uses run.oracle_bounds
};

BatchReport run_batch(const InputFile& file, const BatchOptions& opts);

std::string format_text(const BatchReport& report);
std::string format_json(const BatchReport& report);

}  // namespace entail
