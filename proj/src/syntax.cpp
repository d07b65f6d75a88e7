#include "setsharing/syntax.hpp"

#include <atomic>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace setsharing {

namespace {

struct SymbolTable {
  std::mutex mu;
  std::map<std::string, uint32_t> by_name;
  std::vector<std::string> names;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

std::atomic<uint32_t> g_fresh_counter{0};

bool looks_like_fresh_name(const std::string& name) {
  if (name.size() < 3 || name[0] != '_' || name[1] != 'G') return false;
  for (size_t i = 2; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

}  // namespace

VarId intern_user_var(const std::string& name) {
  if (looks_like_fresh_name(name))
    throw ParseError("variable name '" + name + "' is reserved for the fresh namespace", 0, 0);
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.by_name.find(name);
  if (it != t.by_name.end()) return VarId{it->second, VarNs::user};
  uint32_t idx = static_cast<uint32_t>(t.names.size());
  t.names.push_back(name);
  t.by_name.emplace(name, idx);
  return VarId{idx, VarNs::user};
}

VarId fresh_var() {
  return VarId{g_fresh_counter.fetch_add(1, std::memory_order_relaxed), VarNs::fresh};
}

std::string var_name(VarId v) {
  if (v.ns == VarNs::fresh) return "_G" + std::to_string(v.index);
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  if (v.index < t.names.size()) return t.names[v.index];
  return "?" + std::to_string(v.index);
}

Term Term::var(VarId v) {
  auto rep = std::make_shared<Rep>();
  rep->var = v;
  return Term(std::move(rep));
}

Term Term::fn(std::string symbol, std::vector<Term> args) {
  auto rep = std::make_shared<Rep>();
  rep->symbol = std::move(symbol);
  rep->args = std::move(args);
  return Term(std::move(rep));
}

bool operator==(const Term& a, const Term& b) {
  if (a.rep_ == b.rep_) return true;
  return Term::cmp(a, b) == 0;
}

int Term::cmp(const Term& a, const Term& b) {
  if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
  if (a.is_var()) {
    VarId va = a.as_var(), vb = b.as_var();
    if (va == vb) return 0;
    return va < vb ? -1 : 1;
  }
  if (int c = a.symbol().compare(b.symbol())) return c < 0 ? -1 : 1;
  if (a.arity() != b.arity()) return a.arity() < b.arity() ? -1 : 1;
  for (size_t i = 0; i < a.arity(); ++i)
    if (int c = cmp(a.args()[i], b.args()[i])) return c;
  return 0;
}

Signature Signature::of(const Program& p, const Goal& g) {
  Signature sig;
  auto walk = [&sig](const Term& t, auto&& self) -> void {
    if (t.is_var()) return;
    sig.symbols.emplace(t.symbol(), t.arity());
    for (const Term& a : t.args()) self(a, self);
  };
  auto walk_atom = [&](const Atom& a) {
    for (const Term& t : a.args) walk(t, walk);
  };
  for (const Clause& c : p.clauses) {
    walk_atom(c.head);
    for (const Atom& a : c.body) walk_atom(a);
  }
  for (const Atom& a : g) walk_atom(a);
  sig.symbols.emplace(kReservedConst, 0);
  sig.symbols.emplace(kReservedBin, 2);
  return sig;
}

bool Signature::has_constant() const {
  for (auto& [s, n] : symbols)
    if (n == 0) return true;
  return false;
}

bool Signature::has_wide_symbol() const {
  for (auto& [s, n] : symbols)
    if (n >= 2) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Parser. Edinburgh-flavored subset: facts/rules, `%` line comments,
// [H|T]/[] sugar desugared to '.'/2 and []/0.

namespace {

struct Lexer {
  const std::string& text;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }

  void advance() {
    if (pos < text.size()) {
      if (text[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  void skip_ws() {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '%') {
        while (pos < text.size() && text[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool eof() {
    skip_ws();
    return pos >= text.size();
  }

  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }

  bool try_consume(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  bool try_consume_str(const std::string& s) {
    skip_ws();
    if (text.compare(pos, s.size(), s) == 0) {
      for (size_t i = 0; i < s.size(); ++i) advance();
      return true;
    }
    return false;
  }

  void expect(char c, const std::string& what) {
    if (!try_consume(c)) fail("expected '" + std::string(1, c) + "' " + what);
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  // Lowercase identifier or digit sequence (numeric constants are plain
  // zero-arity functors here).
  std::string functor_name() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input, expected functor");
    char c = text[pos];
    std::string out;
    if (std::islower(static_cast<unsigned char>(c))) {
      while (pos < text.size() && ident_char(text[pos])) {
        out += text[pos];
        advance();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        out += text[pos];
        advance();
      }
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    return out;
  }

  std::string variable_name() {
    std::string out;
    while (pos < text.size() && ident_char(text[pos])) {
      out += text[pos];
      advance();
    }
    return out;
  }
};

struct Parser {
  Lexer lex;
  int anon_counter = 0;

  explicit Parser(const std::string& t) : lex(t) {}

  Term parse_term() {
    char c = lex.peek();
    if (c == '\0') lex.fail("unexpected end of input, expected term");
    if (c == '[') return parse_list();
    if (std::isupper(static_cast<unsigned char>(c)) || c == '_') {
      int l = lex.line, co = lex.col;
      std::string name = lex.variable_name();
      if (name == "_") {
        // Each bare underscore is a distinct variable.
        name = "_Anon" + std::to_string(anon_counter++);
      }
      try {
        return Term::var(intern_user_var(name));
      } catch (const ParseError& e) {
        throw ParseError(e.what(), l, co);
      }
    }
    if (c == '$') lex.fail("reserved symbol names starting with '$' cannot appear in source");
    std::string name = lex.functor_name();
    std::vector<Term> args;
    if (lex.try_consume('(')) {
      args.push_back(parse_term());
      while (lex.try_consume(',')) args.push_back(parse_term());
      lex.expect(')', "to close argument list");
    }
    return Term::fn(std::move(name), std::move(args));
  }

  Term parse_list() {
    lex.expect('[', "to open list");
    if (lex.try_consume(']')) return Term::constant("[]");
    std::vector<Term> items;
    items.push_back(parse_term());
    while (lex.try_consume(',')) items.push_back(parse_term());
    Term tail = Term::constant("[]");
    if (lex.try_consume('|')) {
      tail = parse_term();
    }
    lex.expect(']', "to close list");
    for (auto it = items.rbegin(); it != items.rend(); ++it)
      tail = Term::fn(".", {*it, tail});
    return tail;
  }

  Atom parse_atom() {
    char c = lex.peek();
    if (!std::islower(static_cast<unsigned char>(c)))
      lex.fail("expected predicate name");
    std::string name = lex.functor_name();
    std::vector<Term> args;
    if (lex.try_consume('(')) {
      args.push_back(parse_term());
      while (lex.try_consume(',')) args.push_back(parse_term());
      lex.expect(')', "to close argument list");
    }
    return Atom{std::move(name), std::move(args)};
  }

  Clause parse_clause() {
    Atom head = parse_atom();
    Goal body;
    if (lex.try_consume_str(":-")) {
      body.push_back(parse_atom());
      while (lex.try_consume(',')) body.push_back(parse_atom());
    }
    lex.expect('.', "to terminate clause");
    return Clause{std::move(head), std::move(body)};
  }

  Program parse_program() {
    Program p;
    while (!lex.eof()) p.clauses.push_back(parse_clause());
    return p;
  }

  Goal parse_goal() {
    Goal g;
    if (lex.eof()) return g;
    g.push_back(parse_atom());
    while (lex.try_consume(',')) g.push_back(parse_atom());
    if (!lex.eof()) lex.fail("trailing input after goal");
    return g;
  }
};

bool is_list_cell(const Term& t) {
  return !t.is_var() && t.symbol() == "." && t.arity() == 2;
}

bool is_nil(const Term& t) {
  return !t.is_var() && t.symbol() == "[]" && t.arity() == 0;
}

void print_term(std::ostream& os, const Term& t) {
  if (t.is_var()) {
    os << var_name(t.as_var());
    return;
  }
  if (is_nil(t)) {
    os << "[]";
    return;
  }
  if (is_list_cell(t)) {
    os << '[';
    const Term* cur = &t;
    bool first = true;
    while (is_list_cell(*cur)) {
      if (!first) os << ',';
      print_term(os, cur->args()[0]);
      first = false;
      cur = &cur->args()[1];
    }
    if (!is_nil(*cur)) {
      os << '|';
      print_term(os, *cur);
    }
    os << ']';
    return;
  }
  os << t.symbol();
  if (!t.args().empty()) {
    os << '(';
    for (size_t i = 0; i < t.args().size(); ++i) {
      if (i) os << ',';
      print_term(os, t.args()[i]);
    }
    os << ')';
  }
}

}  // namespace

Program parse_program(const std::string& text) { return Parser(text).parse_program(); }

Goal parse_goal(const std::string& text) { return Parser(text).parse_goal(); }

Term parse_term_text(const std::string& text) {
  Parser p(text);
  Term t = p.parse_term();
  if (!p.lex.eof()) p.lex.fail("trailing input after term");
  return t;
}

std::string to_string(const Term& t) {
  std::ostringstream os;
  print_term(os, t);
  return os.str();
}

std::string to_string(const Atom& a) {
  std::ostringstream os;
  os << a.predicate;
  if (!a.args.empty()) {
    os << '(';
    for (size_t i = 0; i < a.args.size(); ++i) {
      if (i) os << ',';
      print_term(os, a.args[i]);
    }
    os << ')';
  }
  return os.str();
}

std::string to_string(const Goal& g) {
  std::string out;
  for (size_t i = 0; i < g.size(); ++i) {
    if (i) out += ", ";
    out += to_string(g[i]);
  }
  return out;
}

std::string to_string(const Clause& c) {
  std::string out = to_string(c.head);
  if (!c.body.empty()) out += " :- " + to_string(c.body);
  return out + ".";
}

std::string to_string(const Program& p) {
  std::string out;
  for (const Clause& c : p.clauses) out += to_string(c) + "\n";
  return out;
}

std::string to_string(const VarSet& vs) {
  std::string out = "{";
  bool first = true;
  for (VarId v : vs) {
    if (!first) out += ",";
    out += var_name(v);
    first = false;
  }
  return out + "}";
}

void collect_vars(const Term& t, std::vector<VarId>& out) {
  if (t.is_var()) {
    out.push_back(t.as_var());
    return;
  }
  for (const Term& a : t.args()) collect_vars(a, out);
}

VarSet vars_of(const Term& t) {
  std::vector<VarId> occ;
  collect_vars(t, occ);
  return VarSet(occ.begin(), occ.end());
}

VarSet vars_of(const Atom& a) {
  std::vector<VarId> occ;
  for (const Term& t : a.args) collect_vars(t, occ);
  return VarSet(occ.begin(), occ.end());
}

VarSet vars_of(const Goal& g) {
  VarSet out;
  for (const Atom& a : g) {
    VarSet v = vars_of(a);
    out.insert(v.begin(), v.end());
  }
  return out;
}

VarSet vars_of(const Clause& c) {
  VarSet out = vars_of(c.head);
  VarSet b = vars_of(c.body);
  out.insert(b.begin(), b.end());
  return out;
}

namespace {
VarSet once_only(const std::vector<VarId>& occ) {
  std::map<VarId, int> counts;
  for (VarId v : occ) ++counts[v];
  VarSet out;
  for (auto& [v, n] : counts)
    if (n == 1) out.insert(v);
  return out;
}
}  // namespace

VarSet uvars_of(const Term& t) {
  std::vector<VarId> occ;
  collect_vars(t, occ);
  return once_only(occ);
}

VarSet uvars_of(const Atom& a) {
  std::vector<VarId> occ;
  for (const Term& t : a.args) collect_vars(t, occ);
  return once_only(occ);
}

VarSet uvars_of(const std::pair<Term, Term>& equation) {
  std::vector<VarId> occ;
  collect_vars(equation.first, occ);
  collect_vars(equation.second, occ);
  return once_only(occ);
}

VarSet uvars_of(const Clause& c) {
  std::vector<VarId> occ;
  for (const Term& t : c.head.args) collect_vars(t, occ);
  for (const Atom& a : c.body)
    for (const Term& t : a.args) collect_vars(t, occ);
  return once_only(occ);
}

}  // namespace setsharing
