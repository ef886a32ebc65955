// pressmt: a small SMT-LIB 2 solver for quantified linear integer
// arithmetic, deciding by Cooper quantifier elimination. Reads a script
// from stdin (or a file argument) and prints sat/unsat per (check-sat).

#include <fstream>
#include <iostream>

#include "entail/lia.hpp"

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  try {
    if (argc > 1 && std::string(argv[1]) != "-") {
      std::ifstream in(argv[1]);
      if (!in) {
        std::cerr << "pressmt: cannot open " << argv[1] << "\n";
        return 1;
      }
      entail::lia::run_script(in, std::cout);
    } else {
      entail::lia::run_script(std::cin, std::cout);
    }
  } catch (const entail::lia::Overflow&) {
    std::cout << "unknown\n";
    return 0;
  } catch (const std::exception& ex) {
    std::cerr << "pressmt: " << ex.what() << "\n";
    std::cout << "unknown\n";
    return 0;
  }
  return 0;
}
