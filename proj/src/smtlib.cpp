#include <cctype>
#include <istream>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "entail/lia.hpp"

namespace entail::lia {

namespace {

struct Sexp {
  // atom when list is empty and text set; nil text means empty list "()"
  std::string text;
  std::vector<Sexp> list;
  bool is_atom = false;
};

struct Reader {
  std::istream& in;
  int c = ' ';

  explicit Reader(std::istream& s) : in(s) { next(); }
  void next() { c = in.get(); }

  void skip_ws() {
    for (;;) {
      while (c != EOF && std::isspace(c)) next();
      if (c == ';') {
        while (c != EOF && c != '\n') next();
        continue;
      }
      break;
    }
  }

  bool at_eof() {
    skip_ws();
    return c == EOF;
  }

  Sexp read() {
    skip_ws();
    if (c == EOF) throw Unsupported("unexpected end of input");
    if (c == '(') {
      next();
      Sexp s;
      for (;;) {
        skip_ws();
        if (c == ')') {
          next();
          return s;
        }
        if (c == EOF) throw Unsupported("unbalanced parenthesis");
        s.list.push_back(read());
      }
    }
    if (c == '|') {  // quoted symbol
      next();
      Sexp s;
      s.is_atom = true;
      while (c != EOF && c != '|') {
        s.text.push_back(static_cast<char>(c));
        next();
      }
      if (c == '|') next();
      return s;
    }
    if (c == '"') {  // string literal, kept opaque
      next();
      Sexp s;
      s.is_atom = true;
      while (c != EOF && c != '"') {
        s.text.push_back(static_cast<char>(c));
        next();
      }
      if (c == '"') next();
      return s;
    }
    Sexp s;
    s.is_atom = true;
    while (c != EOF && !std::isspace(c) && c != '(' && c != ')' && c != ';') {
      s.text.push_back(static_cast<char>(c));
      next();
    }
    if (s.text.empty()) throw Unsupported("stray character in input");
    return s;
  }
};

bool is_numeral(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

// Scope mapping surface names to internal (alpha-renamed) names.
struct Env {
  std::map<std::string, std::string> names;
  long long counter = 0;

  std::string bind(const std::string& surface) {
    std::string internal = surface + "!" + std::to_string(counter++);
    names[surface] = internal;
    return internal;
  }
};

Lin to_lin(const Sexp& e, Env& env);

Lin apply_arith(const std::string& op, const Sexp& e, Env& env) {
  if (op == "+") {
    Lin acc;
    for (std::size_t i = 1; i < e.list.size(); ++i)
      acc.add(to_lin(e.list[i], env));
    return acc;
  }
  if (op == "-") {
    if (e.list.size() == 2) return to_lin(e.list[1], env).scaled(-1);
    Lin acc = to_lin(e.list[1], env);
    for (std::size_t i = 2; i < e.list.size(); ++i)
      acc.add(to_lin(e.list[i], env), -1);
    return acc;
  }
  if (op == "*") {
    Lin acc(1);
    bool have_lin = false;
    long long scale = 1;
    Lin lin_part;
    for (std::size_t i = 1; i < e.list.size(); ++i) {
      Lin v = to_lin(e.list[i], env);
      if (v.is_const()) {
        scale = mul_ck(scale, v.k);
      } else if (!have_lin) {
        have_lin = true;
        lin_part = v;
      } else {
        throw Unsupported("nonlinear multiplication");
      }
    }
    return have_lin ? lin_part.scaled(scale) : Lin(scale);
  }
  throw Unsupported("arithmetic operator " + op);
}

Lin to_lin(const Sexp& e, Env& env) {
  if (e.is_atom) {
    if (is_numeral(e.text)) return Lin(std::stoll(e.text));
    auto it = env.names.find(e.text);
    if (it == env.names.end())
      throw Unsupported("undeclared symbol " + e.text);
    return Lin::var(it->second);
  }
  if (e.list.empty() || !e.list[0].is_atom)
    throw Unsupported("malformed term");
  return apply_arith(e.list[0].text, e, env);
}

Ref to_formula(const Sexp& e, Env& env);

Ref chain_rel(const std::string& op, const Sexp& e, Env& env) {
  std::vector<Ref> parts;
  for (std::size_t i = 1; i + 1 < e.list.size(); ++i) {
    Lin a = to_lin(e.list[i], env);
    Lin b = to_lin(e.list[i + 1], env);
    Lin d = a;
    d.add(b, -1);  // a - b
    if (op == "<")
      parts.push_back(mk_lt(d));
    else if (op == "<=")
      parts.push_back(mk_le(d));
    else if (op == ">")
      parts.push_back(mk_lt(d.scaled(-1)));
    else if (op == ">=")
      parts.push_back(mk_le(d.scaled(-1)));
    else if (op == "=")
      parts.push_back(mk_eq(d));
    else
      throw Unsupported("relation " + op);
  }
  if (parts.empty()) throw Unsupported("relation arity");
  return mk_and(std::move(parts));
}

Ref quantified(bool universal, const Sexp& e, Env& env) {
  if (e.list.size() != 3) throw Unsupported("quantifier arity");
  const Sexp& binders = e.list[1];
  Env inner = env;
  std::vector<std::string> names;
  for (const auto& b : binders.list) {
    if (b.list.size() != 2 || !b.list[0].is_atom)
      throw Unsupported("binder shape");
    if (b.list[1].is_atom && b.list[1].text != "Int")
      throw Unsupported("sort " + b.list[1].text);
    names.push_back(inner.bind(b.list[0].text));
  }
  env.counter = inner.counter;
  Ref body = to_formula(e.list[2], inner);
  env.counter = inner.counter;
  for (auto it = names.rbegin(); it != names.rend(); ++it)
    body = universal ? mk_forall(*it, body) : mk_exists(*it, body);
  return body;
}

Ref to_formula(const Sexp& e, Env& env) {
  if (e.is_atom) {
    if (e.text == "true") return mk_bool(true);
    if (e.text == "false") return mk_bool(false);
    throw Unsupported("boolean symbol " + e.text);
  }
  if (e.list.empty() || !e.list[0].is_atom)
    throw Unsupported("malformed formula");
  const std::string& op = e.list[0].text;
  if (op == "and" || op == "or") {
    std::vector<Ref> ks;
    for (std::size_t i = 1; i < e.list.size(); ++i)
      ks.push_back(to_formula(e.list[i], env));
    return op == "and" ? mk_and(std::move(ks)) : mk_or(std::move(ks));
  }
  if (op == "not") {
    if (e.list.size() != 2) throw Unsupported("not arity");
    return mk_not(to_formula(e.list[1], env));
  }
  if (op == "=>") {
    if (e.list.size() < 3) throw Unsupported("=> arity");
    Ref acc = to_formula(e.list.back(), env);
    for (std::size_t i = e.list.size() - 1; i-- > 1;)
      acc = mk_or({mk_not(to_formula(e.list[i], env)), acc});
    return acc;
  }
  if (op == "distinct") {
    std::vector<Ref> parts;
    for (std::size_t i = 1; i < e.list.size(); ++i)
      for (std::size_t j = i + 1; j < e.list.size(); ++j) {
        Lin d = to_lin(e.list[i], env);
        d.add(to_lin(e.list[j], env), -1);
        parts.push_back(mk_ne(d));
      }
    return mk_and(std::move(parts));
  }
  if (op == "forall") return quantified(true, e, env);
  if (op == "exists") return quantified(false, e, env);
  if (op == "<" || op == "<=" || op == ">" || op == ">=" || op == "=")
    return chain_rel(op, e, env);
  throw Unsupported("operator " + op);
}

}  // namespace

Answer run_script(std::istream& in, std::ostream& out) {
  Reader reader(in);
  Env env;
  std::vector<Ref> asserts;
  std::vector<std::string> decls;
  Answer last = Answer::Unknown;

  while (!reader.at_eof()) {
    Sexp cmd = reader.read();
    if (cmd.is_atom || cmd.list.empty() || !cmd.list[0].is_atom)
      throw Unsupported("malformed command");
    const std::string& head = cmd.list[0].text;
    if (head == "set-logic" || head == "set-info" || head == "set-option")
      continue;
    if (head == "exit") break;
    if (head == "declare-const") {
      if (cmd.list.size() != 3 || !cmd.list[1].is_atom)
        throw Unsupported("declare-const shape");
      if (cmd.list[2].is_atom && cmd.list[2].text != "Int")
        throw Unsupported("sort " + cmd.list[2].text);
      decls.push_back(env.bind(cmd.list[1].text));
      continue;
    }
    if (head == "declare-fun") {
      if (cmd.list.size() != 4 || !cmd.list[1].is_atom ||
          !cmd.list[2].list.empty())
        throw Unsupported("only 0-ary declare-fun is supported");
      if (cmd.list[3].is_atom && cmd.list[3].text != "Int")
        throw Unsupported("sort " + cmd.list[3].text);
      decls.push_back(env.bind(cmd.list[1].text));
      continue;
    }
    if (head == "assert") {
      if (cmd.list.size() != 2) throw Unsupported("assert arity");
      asserts.push_back(to_formula(cmd.list[1], env));
      continue;
    }
    if (head == "check-sat") {
      bool s = sat(asserts, decls);
      last = s ? Answer::Sat : Answer::Unsat;
      out << (s ? "sat" : "unsat") << "\n";
      continue;
    }
    throw Unsupported("command " + head);
  }
  return last;
}

}  // namespace entail::lia
