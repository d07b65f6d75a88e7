#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace setsharing {

// Variables live in two disjoint namespaces: `user` variables are interned
// from source text, `fresh` variables come from the global supply and render
// as `_G<n>`. The pair (ns, index) is the global variable order used for all
// deterministic tie-breaking.
enum class VarNs : uint8_t { user = 0, fresh = 1 };

struct VarId {
  uint32_t index = 0;
  VarNs ns = VarNs::user;

  friend bool operator==(const VarId& a, const VarId& b) {
    return a.ns == b.ns && a.index == b.index;
  }
  friend bool operator!=(const VarId& a, const VarId& b) { return !(a == b); }
  friend bool operator<(const VarId& a, const VarId& b) {
    if (a.ns != b.ns) return a.ns < b.ns;
    return a.index < b.index;
  }
};

using VarSet = std::set<VarId>;

// Interns a user variable name. Rejects names shaped like the fresh
// rendering (`_G<n>`), which would let source text capture renamed-apart
// variables.
VarId intern_user_var(const std::string& name);

// Draws a globally unique fresh variable. Safe under concurrent use.
VarId fresh_var();

// Rendering of any variable; user variables print their source name.
std::string var_name(VarId v);

// Reserved witness symbols. They cannot be written in source programs.
inline const std::string kReservedConst = "$a";
inline const std::string kReservedBin = "$c";

// Finite first-order terms. Immutable; cheap to copy (shared representation).
class Term {
 public:
  Term() : Term(constant(kReservedConst)) {}

  static Term var(VarId v);
  static Term fn(std::string symbol, std::vector<Term> args);
  static Term constant(std::string symbol) { return fn(std::move(symbol), {}); }

  bool is_var() const { return rep_->var.has_value(); }
  VarId as_var() const { return *rep_->var; }
  const std::string& symbol() const { return rep_->symbol; }
  const std::vector<Term>& args() const { return rep_->args; }
  size_t arity() const { return rep_->args.size(); }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  // Total structural order (vars first, by VarId; then symbol/arity/args).
  friend bool operator<(const Term& a, const Term& b) { return cmp(a, b) < 0; }

 private:
  struct Rep {
    std::optional<VarId> var;
    std::string symbol;
    std::vector<Term> args;
  };
  explicit Term(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
  static int cmp(const Term& a, const Term& b);
  std::shared_ptr<const Rep> rep_;
};

struct Atom {
  std::string predicate;
  std::vector<Term> args;

  friend bool operator==(const Atom& a, const Atom& b) {
    return a.predicate == b.predicate && a.args == b.args;
  }
};

using Goal = std::vector<Atom>;

struct Clause {
  Atom head;
  Goal body;
};

struct Program {
  std::vector<Clause> clauses;
};

// Set of (symbol, arity) pairs observed in a program/goal, always augmented
// with the reserved constant and binary symbol so witness construction has
// the shapes it needs.
struct Signature {
  std::set<std::pair<std::string, size_t>> symbols;

  static Signature of(const Program& p, const Goal& g);
  bool has_constant() const;
  bool has_wide_symbol() const;  // arity >= 2
};

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(std::string msg, int line_, int col_)
      : std::runtime_error(std::move(msg)), line(line_), column(col_) {}
};

Program parse_program(const std::string& text);
Goal parse_goal(const std::string& text);
Term parse_term_text(const std::string& text);

std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Goal& g);
std::string to_string(const Clause& c);
std::string to_string(const Program& p);
std::string to_string(const VarSet& vs);

// Occurring variables of any syntactic object.
void collect_vars(const Term& t, std::vector<VarId>& out);
VarSet vars_of(const Term& t);
VarSet vars_of(const Atom& a);
VarSet vars_of(const Goal& g);
VarSet vars_of(const Clause& c);

// Variables occurring exactly once in the object.
VarSet uvars_of(const Term& t);
VarSet uvars_of(const Atom& a);
VarSet uvars_of(const std::pair<Term, Term>& equation);
VarSet uvars_of(const Clause& c);

}  // namespace setsharing
