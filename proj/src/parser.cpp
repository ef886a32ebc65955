#include "entail/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace entail {

namespace {

enum class Tok {
  Ident, Nat, Turnstile, Comma, Amp, Star, ArrowTo, Plus, Eq, Ne, Lt, Le,
  Gt, Ge, LParen, RParen, Dot, End,
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long long value = 0;
  int line = 1;
  int col = 1;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(uc(text_[pos_]))) bump();
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= text_.size()) {
      tok_.kind = Tok::End;
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(uc(c))) {
      std::string num;
      while (pos_ < text_.size() && std::isdigit(uc(text_[pos_]))) {
        num.push_back(text_[pos_]);
        bump();
      }
      tok_.kind = Tok::Nat;
      tok_.text = num;
      tok_.value = std::stoll(num);
      return;
    }
    if (std::isalpha(uc(c)) || c == '_') {
      std::string id;
      while (pos_ < text_.size() &&
             (std::isalnum(uc(text_[pos_])) || text_[pos_] == '_')) {
        id.push_back(text_[pos_]);
        bump();
      }
      tok_.kind = Tok::Ident;
      tok_.text = id;
      return;
    }
    auto two = [&](char a, char b) {
      return c == a && pos_ + 1 < text_.size() && text_[pos_ + 1] == b;
    };
    if (two('|', '-')) { bump(); bump(); tok_.kind = Tok::Turnstile; return; }
    if (two('-', '>')) { bump(); bump(); tok_.kind = Tok::ArrowTo; return; }
    if (two('!', '=')) { bump(); bump(); tok_.kind = Tok::Ne; return; }
    if (two('<', '=')) { bump(); bump(); tok_.kind = Tok::Le; return; }
    if (two('>', '=')) { bump(); bump(); tok_.kind = Tok::Ge; return; }
    switch (c) {
      case ',': bump(); tok_.kind = Tok::Comma; return;
      case '&': bump(); tok_.kind = Tok::Amp; return;
      case '*': bump(); tok_.kind = Tok::Star; return;
      case '+': bump(); tok_.kind = Tok::Plus; return;
      case '=': bump(); tok_.kind = Tok::Eq; return;
      case '<': bump(); tok_.kind = Tok::Lt; return;
      case '>': bump(); tok_.kind = Tok::Gt; return;
      case '(': bump(); tok_.kind = Tok::LParen; return;
      case ')': bump(); tok_.kind = Tok::RParen; return;
      case '.': bump(); tok_.kind = Tok::Dot; return;
      default:
        throw ParseError(line_, col_, std::string("unexpected character '") +
                                          c + "'");
    }
  }

  static int uc(char c) { return static_cast<unsigned char>(c); }

  void bump() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

class Parser {
public:
  explicit Parser(const std::string& text) : lex_(text) {}

  Entailment parse() {
    SymbolicHeap ante = heap();
    expect(Tok::Turnstile, "'|-'");
    Entailment e;
    e.succedents.push_back(heap());
    while (lex_.peek().kind == Tok::Comma) {
      lex_.take();
      e.succedents.push_back(heap());
    }
    if (lex_.peek().kind != Tok::End)
      fail("trailing input after entailment");

    // Free variables must not collide with the reserved namespace.
    for (const auto& v : free_vars(Entailment{ante, e.succedents}))
      if (is_reserved_name(v))
        fail("variable '" + v + "' uses the reserved '_' prefix");

    // Antecedent existentials are opened to fresh free variables (named
    // after the binder so the result stays printable).
    if (!ante.ex_vars.empty()) {
      std::set<std::string> used = free_vars(Entailment{ante, e.succedents});
      for (const auto& h : e.succedents)
        used.insert(h.ex_vars.begin(), h.ex_vars.end());
      used.insert(ante.ex_vars.begin(), ante.ex_vars.end());
      Bindings open;
      for (const auto& v : ante.ex_vars) {
        std::string base = "a";
        std::string cand = base;
        for (int k = 0; used.count(cand); ++k) cand = base + std::to_string(k);
        used.insert(cand);
        open[v] = Term::var(cand);
      }
      ante.pure = substitute(ante.pure, open);
      ante.spatial = substitute(ante.spatial, open);
      ante.ex_vars.clear();
    }
    e.antecedent = std::move(ante);
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(lex_.peek().line, lex_.peek().col, msg);
  }

  Token expect(Tok kind, const std::string& what) {
    if (lex_.peek().kind != kind) fail("expected " + what);
    return lex_.take();
  }

  bool at_term_start() const {
    return lex_.peek().kind == Tok::Nat ||
           (lex_.peek().kind == Tok::Ident && lex_.peek().text != "emp" &&
            lex_.peek().text != "Arr" && lex_.peek().text != "Ex");
  }

  Term term(const std::map<std::string, std::string>& scope) {
    Term t = factor(scope);
    while (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      t = t.plus(factor(scope));
    }
    return t;
  }

  Term factor(const std::map<std::string, std::string>& scope) {
    if (lex_.peek().kind == Tok::Nat) return Term(lex_.take().value);
    if (lex_.peek().kind == Tok::Ident) {
      Token tok = lex_.take();
      auto it = scope.find(tok.text);
      return Term::var(it == scope.end() ? tok.text : it->second);
    }
    fail("expected a variable or number");
  }

  SpatialAtom spatial_atom(const std::map<std::string, std::string>& scope) {
    if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "emp") {
      lex_.take();
      return SpatialAtom::emp();
    }
    if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "Arr") {
      lex_.take();
      expect(Tok::LParen, "'(' after Arr");
      Term lo = term(scope);
      expect(Tok::Comma, "',' in Arr");
      Term hi = term(scope);
      expect(Tok::RParen, "')' after Arr");
      return SpatialAtom::arr(lo, hi);
    }
    Term addr = term(scope);
    expect(Tok::ArrowTo, "'->'");
    Term val = term(scope);
    return SpatialAtom::points_to(addr, val);
  }

  SymbolicHeap heap() {
    SymbolicHeap h;
    std::map<std::string, std::string> scope;

    if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "Ex") {
      lex_.take();
      while (lex_.peek().kind == Tok::Ident) {
        Token v = lex_.take();
        if (scope.count(v.text))
          throw ParseError(v.line, v.col,
                           "variable '" + v.text + "' bound twice");
        std::string internal = "_y" + std::to_string(binders_++);
        scope[v.text] = internal;
        h.ex_vars.push_back(internal);
      }
      if (h.ex_vars.empty()) fail("expected binder names after Ex");
      expect(Tok::Dot, "'.' after binders");
    }

    // pure conjuncts, then the spatial part; both start with a term, so
    // decide after parsing the left-hand side of each unit
    std::vector<PureRef> pure;
    Sigma spatial;
    for (;;) {
      if (!at_term_start()) {
        spatial.atoms.push_back(spatial_atom(scope));
        break;
      }
      Term lhs = term(scope);
      Tok k = lex_.peek().kind;
      if (k == Tok::ArrowTo) {
        lex_.take();
        Term val = term(scope);
        spatial.atoms.push_back(SpatialAtom::points_to(lhs, val));
        break;
      }
      Rel rel;
      bool swap = false;
      switch (k) {
        case Tok::Eq: rel = Rel::Eq; break;
        case Tok::Ne: rel = Rel::Ne; break;
        case Tok::Lt: rel = Rel::Lt; break;
        case Tok::Le: rel = Rel::Le; break;
        case Tok::Gt: rel = Rel::Lt; swap = true; break;
        case Tok::Ge: rel = Rel::Le; swap = true; break;
        default: fail("expected a comparison, '->', or spatial atom");
      }
      lex_.take();
      Term rhs = term(scope);
      pure.push_back(swap ? Pure::mk_atom(rel, rhs, lhs)
                          : Pure::mk_atom(rel, lhs, rhs));
      expect(Tok::Amp, "'&' after pure comparison");
    }
    while (lex_.peek().kind == Tok::Star) {
      lex_.take();
      spatial.atoms.push_back(spatial_atom(scope));
    }

    h.pure = Pure::mk_and_all(pure);
    h.spatial = std::move(spatial);
    return h;
  }

  Lexer lex_;
  int binders_ = 0;
};

}  // namespace

Entailment parse_entailment(const std::string& text) {
  Parser p(text);
  return p.parse();
}

InputFile parse_input_file(const std::string& text) {
  InputFile file;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int unnamed = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string trimmed = line;
    auto notspace = [](unsigned char c) { return !std::isspace(c); };
    trimmed.erase(trimmed.begin(),
                  std::find_if(trimmed.begin(), trimmed.end(), notspace));
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(
                                   trimmed.back())))
      trimmed.pop_back();
    if (trimmed.empty() || trimmed[0] == '#') continue;

    std::string name;
    std::string body = trimmed;
    auto colon = trimmed.find(':');
    if (colon != std::string::npos) {
      name = trimmed.substr(0, colon);
      while (!name.empty() &&
             std::isspace(static_cast<unsigned char>(name.back())))
        name.pop_back();
      body = trimmed.substr(colon + 1);
    }
    if (name.empty()) name = "e" + std::to_string(unnamed++);
    try {
      file.entries.emplace_back(name, parse_entailment(body));
    } catch (const ParseError& err) {
      throw ParseError(lineno, err.column,
                       std::string(err.what()) + " (entry '" + name + "')");
    }
  }
  return file;
}

namespace {
void print_term(std::ostringstream& os, const Term& t) {
  bool first = true;
  auto emit = [&](const std::string& s) {
    if (!first) os << " + ";
    first = false;
    os << s;
  };
  for (const auto& [v, c] : t.coeffs()) {
    if (c < 0)
      throw std::invalid_argument("term not grammar-printable: " + t.str());
    for (long long i = 0; i < c; ++i) emit(v);
  }
  if (t.constant() < 0)
    throw std::invalid_argument("term not grammar-printable: " + t.str());
  if (t.constant() != 0 || first) emit(std::to_string(t.constant()));
}

void print_pure_conjuncts(std::ostringstream& os, const PureRef& f,
                          bool& any) {
  switch (f->kind()) {
    case Pure::Kind::True: return;
    case Pure::Kind::And:
      print_pure_conjuncts(os, f->lhs(), any);
      print_pure_conjuncts(os, f->rhs(), any);
      return;
    case Pure::Kind::Atom: {
      if (any) os << " & ";
      any = true;
      const auto& a = f->atom();
      print_term(os, a.lhs);
      os << " " << rel_name(a.rel) << " ";
      print_term(os, a.rhs);
      return;
    }
    default:
      throw std::invalid_argument("pure part not grammar-printable");
  }
}

void print_heap(std::ostringstream& os, const SymbolicHeap& h) {
  if (!h.ex_vars.empty()) {
    os << "Ex";
    for (const auto& v : h.ex_vars) os << " " << v;
    os << ". ";
  }
  bool any = false;
  print_pure_conjuncts(os, h.pure, any);
  if (any) os << " & ";
  if (h.spatial.atoms.empty()) {
    os << "emp";
  } else {
    for (std::size_t i = 0; i < h.spatial.atoms.size(); ++i) {
      if (i) os << " * ";
      const auto& a = h.spatial.atoms[i];
      switch (a.kind) {
        case SpatialAtom::Kind::Emp: os << "emp"; break;
        case SpatialAtom::Kind::PointsTo:
          print_term(os, a.fst);
          os << " -> ";
          print_term(os, a.snd);
          break;
        case SpatialAtom::Kind::Arr:
          os << "Arr(";
          print_term(os, a.fst);
          os << ", ";
          print_term(os, a.snd);
          os << ")";
          break;
      }
    }
  }
}
}  // namespace

std::string print_entailment(const Entailment& e) {
  std::ostringstream os;
  print_heap(os, e.antecedent);
  os << " |- ";
  for (std::size_t i = 0; i < e.succedents.size(); ++i) {
    if (i) os << ", ";
    print_heap(os, e.succedents[i]);
  }
  return os.str();
}

std::string print_input_file(const InputFile& file) {
  std::ostringstream os;
  for (const auto& [name, e] : file.entries)
    os << name << ": " << print_entailment(e) << "\n";
  return os.str();
}

namespace {
bool term_alpha_equal(const Term& a, const Term& b,
                      const std::map<std::string, std::string>& ab) {
  if (a.constant() != b.constant()) return false;
  if (a.coeffs().size() != b.coeffs().size()) return false;
  for (const auto& [v, c] : a.coeffs()) {
    auto it = ab.find(v);
    const std::string& target = it == ab.end() ? v : it->second;
    auto jt = b.coeffs().find(target);
    if (jt == b.coeffs().end() || jt->second != c) return false;
  }
  return true;
}

bool pure_alpha_equal(const PureRef& a, const PureRef& b,
                      std::map<std::string, std::string>& ab) {
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Pure::Kind::True:
    case Pure::Kind::False: return true;
    case Pure::Kind::Atom:
      return a->atom().rel == b->atom().rel &&
             term_alpha_equal(a->atom().lhs, b->atom().lhs, ab) &&
             term_alpha_equal(a->atom().rhs, b->atom().rhs, ab);
    case Pure::Kind::And:
    case Pure::Kind::Or:
    case Pure::Kind::Implies:
      return pure_alpha_equal(a->lhs(), b->lhs(), ab) &&
             pure_alpha_equal(a->rhs(), b->rhs(), ab);
    case Pure::Kind::Not: return pure_alpha_equal(a->lhs(), b->lhs(), ab);
    case Pure::Kind::Exists:
    case Pure::Kind::Forall: {
      auto saved = ab;
      ab[a->var()] = b->var();
      bool ok = pure_alpha_equal(a->body(), b->body(), ab);
      ab = saved;
      return ok;
    }
  }
  return false;
}

bool heap_alpha_equal(const SymbolicHeap& a, const SymbolicHeap& b) {
  if (a.ex_vars.size() != b.ex_vars.size()) return false;
  if (a.spatial.atoms.size() != b.spatial.atoms.size()) return false;
  std::map<std::string, std::string> ab;
  for (std::size_t i = 0; i < a.ex_vars.size(); ++i)
    ab[a.ex_vars[i]] = b.ex_vars[i];
  if (!pure_alpha_equal(a.pure, b.pure, ab)) return false;
  for (std::size_t i = 0; i < a.spatial.atoms.size(); ++i) {
    const auto& x = a.spatial.atoms[i];
    const auto& y = b.spatial.atoms[i];
    if (x.kind != y.kind) return false;
    if (x.is_emp()) continue;
    if (!term_alpha_equal(x.fst, y.fst, ab) ||
        !term_alpha_equal(x.snd, y.snd, ab))
      return false;
  }
  return true;
}
}  // namespace

bool alpha_equal(const Entailment& a, const Entailment& b) {
  if (a.succedents.size() != b.succedents.size()) return false;
  if (!heap_alpha_equal(a.antecedent, b.antecedent)) return false;
  for (std::size_t i = 0; i < a.succedents.size(); ++i)
    if (!heap_alpha_equal(a.succedents[i], b.succedents[i])) return false;
  return true;
}

}  // namespace entail
