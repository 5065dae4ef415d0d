#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lve/types.hpp"

namespace lve {

// A matrix M : P1 * ... * Pk -> Q. Rows enumerate the input slots in
// mixed radix (first slot most significant), columns enumerate Web(Q).
struct StochasticMatrix {
  std::string name;
  std::vector<Type> inputs;
  Type output;
  std::vector<double> entries;  // row-major

  std::size_t rows() const;
  std::size_t cols() const { return output.web_size(); }
  double at(std::size_t row, std::size_t col) const { return entries[row * cols() + col]; }
};

using MatrixRef = std::shared_ptr<const StochasticMatrix>;

// Validates shape, positivity of slot types and non-negative entries.
MatrixRef make_matrix(std::string name, std::vector<Type> inputs, Type output,
                      std::vector<double> entries);

// Throws NotStochastic unless every row sums to 1 within tol.
void check_stochastic(const StochasticMatrix& m, double tol = 1e-9);

// Patterns: a variable or a pair. Variables are distinct and only the
// rightmost leaf may have an arrow type.
class Pattern {
 public:
  static Pattern leaf(Variable v);
  static Pattern pair(Pattern left, Pattern right);
  // Right-nested pattern over the given variables (at least one).
  static Pattern of(const std::vector<Variable>& vars);

  bool is_leaf() const noexcept;
  const Variable& var() const;
  const Pattern& left() const;
  const Pattern& right() const;

  // Leaves from left to right.
  const std::vector<Variable>& leaves() const noexcept;
  VarSet vars() const;
  Type type() const;
  bool is_positive() const;
  std::size_t size() const { return leaves().size(); }

  friend bool operator==(const Pattern& a, const Pattern& b);
  friend bool operator!=(const Pattern& a, const Pattern& b) { return !(a == b); }

 private:
  struct Node;
  explicit Pattern(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct PatternSplit {
  std::optional<Variable> arrow;
  std::optional<Pattern> positive;
};

PatternSplit pattern_split(const Pattern& p);

// The pattern with x removed, or nothing if x was the whole pattern.
std::optional<Pattern> remove_var(const Pattern& p, const std::string& x);

class Expr {
 public:
  enum class Kind { Var, MatApp, ArrowApp, Pair, Lam, Let };

  static Expr var(Variable v);
  static Expr mat_app(MatrixRef m, std::vector<Variable> args);
  static Expr arrow_app(Variable f, Pattern args);
  static Expr pair(Expr first, Expr second);
  static Expr lam(Pattern param, Expr body);
  static Expr let(Pattern binder, Expr bound, Expr body);

  Kind kind() const noexcept;

  // Var: the variable. ArrowApp: the applied arrow variable.
  const Variable& variable() const;
  const MatrixRef& matrix() const;
  const std::vector<Variable>& args() const;
  // ArrowApp: argument. Lam: parameter. Let: binder.
  const Pattern& pattern() const;
  // Pair: first component. Let: bound expression.
  const Expr& first() const;
  // Pair: second component. Lam and Let: body.
  const Expr& second() const;
  const Expr& body() const { return second(); }
  const Expr& bound() const { return first(); }

  const VarSet& free_vars() const noexcept;
  std::size_t size() const noexcept;

  // Identity of the shared node, used as a memoisation key.
  const void* id() const noexcept { return node_.get(); }
  std::shared_ptr<const void> handle() const noexcept { return node_; }

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

// Syntactic equality (names included).
bool operator==(const Expr& a, const Expr& b);
inline bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

Expr pattern_expr(const Pattern& p);
// The pattern denoted by a tree of variables and pairs, if it is one.
std::optional<Pattern> as_pattern(const Expr& e);

struct Definition {
  Pattern binder;
  Expr bound;
};

// let v1 = e1; ...; vn = en in w
struct LetTerm {
  std::vector<Definition> defs;
  Pattern output;

  Expr to_expr() const;
  // Peels nested lets down to a pattern-shaped body. Throws NotLetTerm.
  static LetTerm from_expr(const Expr& e);

  bool is_positive() const { return output.is_positive(); }
  VarSet free_vars() const;
  std::size_t size() const;

  // Free variables of the suffix starting at definition k (k == defs.size()
  // gives the output alone).
  VarSet suffix_free_vars(std::size_t k) const;
  // Index of the definition binding x at top level.
  std::optional<std::size_t> definition_of(const std::string& x) const;
};

bool operator==(const LetTerm& a, const LetTerm& b);
inline bool operator!=(const LetTerm& a, const LetTerm& b) { return !(a == b); }

// Equality up to consistent renaming of bound variables.
bool alpha_equivalent(const Expr& a, const Expr& b);
bool alpha_equivalent(const LetTerm& a, const LetTerm& b);

// Every variable name occurring in the term, bound or free.
std::set<std::string> all_names(const Expr& e);
std::set<std::string> all_names(const LetTerm& l);

// Renames free occurrences. Returns nothing if a replacement would be
// captured by an inner binder.
std::optional<Expr> rename_free(const Expr& e, const std::map<std::string, Variable>& renaming);

// Deterministic fresh names: base__1, base__2, ... skipping used names.
// An existing "__k" suffix on the base is stripped first.
class NameSupply {
 public:
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}
  std::string fresh(const std::string& base);
  void reserve(const std::string& name) { used_.insert(name); }

 private:
  std::set<std::string> used_;
};

std::string name_base(const std::string& name);

// Renames binders so that every bound variable name occurs bound exactly
// once and never clashes with a free name.
LetTerm canonicalize(const LetTerm& l);

// Top-level binders pairwise disjoint, disjoint from FV(l), and each binder
// not free in its own or any earlier bound expression.
bool has_distinct_definitions(const LetTerm& l);

}  // namespace lve
