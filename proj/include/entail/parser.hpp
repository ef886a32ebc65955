#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entail/syntax.hpp"

namespace entail {

struct ParseError : std::runtime_error {
  int line = 0;
  int column = 0;
  ParseError(int l, int c, const std::string& message)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": " + message),
        line(l), column(c) {}
};

// Grammar (ASCII):
//   entailment := heap "|-" heap ("," heap)*
//   heap       := ["Ex" var+ "."] [pure "&"] spatial
//   pure       := purecmp ("&" purecmp)*
//   purecmp    := term ("=" | "!=" | "<" | "<=" | ">" | ">=") term
//   spatial    := atom ("*" atom)*
//   atom       := "emp" | term "->" term | "Arr(" term "," term ")"
//   term       := factor ("+" factor)*
//   factor     := var | natural
// ">" and ">=" are sugar for the swapped "<" and "<=". Existential binders
// are alpha-renamed into the reserved "_" namespace; antecedent binders are
// hoisted to fresh free variables. Free variables may not start with "_".
Entailment parse_entailment(const std::string& text);

// Ordered list of named entailments. File format: one entailment per line,
// optionally prefixed "name: "; blank lines and "#" comments are skipped.
struct InputFile {
  std::vector<std::pair<std::string, Entailment>> entries;
};

InputFile parse_input_file(const std::string& text);

// Renders grammar-shaped entailments (pure parts that are conjunctions of
// atoms, terms with small coefficients). Reparsing yields an
// alpha-equivalent entailment.
std::string print_entailment(const Entailment& e);
std::string print_input_file(const InputFile& file);

// Alpha-equivalence of entailments (binder names ignored).
bool alpha_equal(const Entailment& a, const Entailment& b);

}  // namespace entail
