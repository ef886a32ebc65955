#pragma once

#include <cstdint>
#include <string>

#include "entail/parser.hpp"

namespace entail {

enum class BenchFamily { Base, SingleFrame, SingleNFrame, Multi };

struct BenchSpec {
  BenchFamily family = BenchFamily::Base;
  int frame_size = 2;  // n for the frame families, 2 or 3
  std::size_t count = 120;
  std::uint64_t seed = 0;
  double valid_ratio = 0.5;
};

// Parses "base", "multi", "singleframe2", "singlenframe3", ... (case
// insensitive). Throws std::invalid_argument on unknown names.
BenchFamily parse_family(std::string name, int& frame_size);

// Seeded synthetic generator. Instances cycle through the points-to, array
// and mixed groups; labels alternate toward the valid ratio and instances
// are valid or invalid by construction. Every instance satisfies the
// size-condition. Same spec and seed give byte-identical output.
InputFile generate_bench(const BenchSpec& spec);

}  // namespace entail
