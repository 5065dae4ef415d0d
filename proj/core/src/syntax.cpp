#include "lve/syntax.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "lve/error.hpp"

namespace lve {

// ---------------------------------------------------------------- matrices

std::size_t StochasticMatrix::rows() const {
  std::size_t n = 1;
  for (const auto& t : inputs) n *= t.web_size();
  return n;
}

MatrixRef make_matrix(std::string name, std::vector<Type> inputs, Type output,
                      std::vector<double> entries) {
  for (const auto& t : inputs) {
    if (!t.is_positive()) {
      fail(ErrorKind::InvalidType, "matrix " + name + " has a non-positive input " + t.str());
    }
  }
  if (!output.is_positive()) {
    fail(ErrorKind::InvalidType, "matrix " + name + " has a non-positive output " + output.str());
  }
  auto m = std::make_shared<StochasticMatrix>();
  m->name = std::move(name);
  m->inputs = std::move(inputs);
  m->output = std::move(output);
  m->entries = std::move(entries);
  if (m->entries.size() != m->rows() * m->cols()) {
    std::ostringstream os;
    os << "matrix " << m->name << " expects " << m->rows() << "x" << m->cols() << " entries, got "
       << m->entries.size();
    fail(ErrorKind::CptShapeMismatch, os.str());
  }
  for (double x : m->entries) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      fail(ErrorKind::NotStochastic, "matrix " + m->name + " has a negative or non-finite entry");
    }
  }
  return m;
}

void check_stochastic(const StochasticMatrix& m, double tol) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double sum = 0;
    for (std::size_t c = 0; c < m.cols(); ++c) sum += m.at(r, c);
    if (std::abs(sum - 1.0) > tol) {
      std::ostringstream os;
      os << "row " << r << " of matrix " << m.name << " sums to " << sum;
      fail(ErrorKind::NotStochastic, os.str());
    }
  }
}

// ---------------------------------------------------------------- patterns

struct Pattern::Node {
  std::optional<Variable> var;
  std::vector<Pattern> children;
  std::vector<Variable> leaves;
};

Pattern::Pattern(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Pattern Pattern::leaf(Variable v) {
  auto node = std::make_shared<Node>();
  node->leaves = {v};
  node->var = std::move(v);
  return Pattern(std::move(node));
}

Pattern Pattern::pair(Pattern left, Pattern right) {
  if (!left.is_positive()) {
    fail(ErrorKind::MalformedPattern, "an arrow variable may only be the rightmost leaf");
  }
  auto node = std::make_shared<Node>();
  node->leaves = left.leaves();
  for (const auto& v : right.leaves()) {
    for (const auto& w : node->leaves) {
      if (w.name == v.name) fail(ErrorKind::MalformedPattern, "variable " + v.name + " repeated");
    }
    node->leaves.push_back(v);
  }
  node->children = {std::move(left), std::move(right)};
  return Pattern(std::move(node));
}

Pattern Pattern::of(const std::vector<Variable>& vars) {
  if (vars.empty()) fail(ErrorKind::MalformedPattern, "empty pattern");
  Pattern acc = leaf(vars.back());
  for (std::size_t i = vars.size() - 1; i-- > 0;) acc = pair(leaf(vars[i]), acc);
  return acc;
}

bool Pattern::is_leaf() const noexcept { return node_->var.has_value(); }

const Variable& Pattern::var() const {
  if (!is_leaf()) fail(ErrorKind::MalformedPattern, "not a variable pattern");
  return *node_->var;
}

const Pattern& Pattern::left() const {
  if (is_leaf()) fail(ErrorKind::MalformedPattern, "not a pair pattern");
  return node_->children[0];
}

const Pattern& Pattern::right() const {
  if (is_leaf()) fail(ErrorKind::MalformedPattern, "not a pair pattern");
  return node_->children[1];
}

const std::vector<Variable>& Pattern::leaves() const noexcept { return node_->leaves; }

VarSet Pattern::vars() const { return VarSet(leaves()); }

Type Pattern::type() const {
  if (is_leaf()) return var().type;
  return Type::tensor(left().type(), right().type());
}

bool Pattern::is_positive() const { return leaves().back().is_positive(); }

bool operator==(const Pattern& a, const Pattern& b) {
  if (a.node_ == b.node_) return true;
  if (a.is_leaf() != b.is_leaf()) return false;
  if (a.is_leaf()) return a.var() == b.var();
  return a.left() == b.left() && a.right() == b.right();
}

PatternSplit pattern_split(const Pattern& p) {
  PatternSplit out;
  const Variable& last = p.leaves().back();
  if (last.is_positive()) {
    out.positive = p;
    return out;
  }
  out.arrow = last;
  out.positive = remove_var(p, last.name);
  return out;
}

std::optional<Pattern> remove_var(const Pattern& p, const std::string& x) {
  if (p.is_leaf()) {
    if (p.var().name == x) return std::nullopt;
    return p;
  }
  auto l = remove_var(p.left(), x);
  auto r = remove_var(p.right(), x);
  if (!l) return r;
  if (!r) return l;
  return Pattern::pair(*l, *r);
}

// ------------------------------------------------------------- expressions

struct Expr::Node {
  Kind kind;
  Variable var;
  MatrixRef matrix;
  std::vector<Variable> args;
  std::optional<Pattern> pattern;
  std::vector<Expr> children;
  VarSet fv;
  std::size_t size = 0;
};

Expr::Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Expr Expr::var(Variable v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->fv = VarSet{v};
  n->var = std::move(v);
  n->size = 1;
  return Expr(std::move(n));
}

Expr Expr::mat_app(MatrixRef m, std::vector<Variable> args) {
  if (!m) fail(ErrorKind::UndeclaredMatrix, "null matrix");
  auto n = std::make_shared<Node>();
  n->kind = Kind::MatApp;
  for (const auto& a : args) {
    if (n->fv.contains(a.name)) {
      fail(ErrorKind::ApplicationMismatch, "argument " + a.name + " repeated in " + m->name);
    }
    n->fv.insert(a);
  }
  n->matrix = std::move(m);
  n->args = std::move(args);
  n->size = 1 + n->args.size();
  return Expr(std::move(n));
}

Expr Expr::arrow_app(Variable f, Pattern args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::ArrowApp;
  n->fv = args.vars();
  if (n->fv.contains(f.name)) {
    fail(ErrorKind::ApplicationMismatch, "arrow " + f.name + " applied to itself");
  }
  n->fv.insert(f);
  n->size = 1 + args.size();
  n->var = std::move(f);
  n->pattern = std::move(args);
  return Expr(std::move(n));
}

Expr Expr::pair(Expr first, Expr second) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pair;
  n->fv = first.free_vars() | second.free_vars();
  n->size = first.size() + second.size();
  n->children = {std::move(first), std::move(second)};
  return Expr(std::move(n));
}

Expr Expr::lam(Pattern param, Expr body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lam;
  n->fv = body.free_vars() - param.vars();
  n->size = param.size() + body.size();
  n->pattern = std::move(param);
  n->children = {body, body};
  return Expr(std::move(n));
}

Expr Expr::let(Pattern binder, Expr bound, Expr body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Let;
  n->fv = bound.free_vars() | (body.free_vars() - binder.vars());
  n->size = binder.size() + bound.size() + body.size();
  n->pattern = std::move(binder);
  n->children = {std::move(bound), std::move(body)};
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

const Variable& Expr::variable() const {
  if (kind() != Kind::Var && kind() != Kind::ArrowApp) {
    fail(ErrorKind::NotLetTerm, "expression has no head variable");
  }
  return node_->var;
}

const MatrixRef& Expr::matrix() const {
  if (kind() != Kind::MatApp) fail(ErrorKind::NotLetTerm, "not a matrix application");
  return node_->matrix;
}

const std::vector<Variable>& Expr::args() const {
  if (kind() != Kind::MatApp) fail(ErrorKind::NotLetTerm, "not a matrix application");
  return node_->args;
}

const Pattern& Expr::pattern() const {
  if (!node_->pattern) fail(ErrorKind::NotLetTerm, "expression has no pattern");
  return *node_->pattern;
}

const Expr& Expr::first() const {
  if (kind() != Kind::Pair && kind() != Kind::Let) {
    fail(ErrorKind::NotLetTerm, "expression has no first component");
  }
  return node_->children[0];
}

const Expr& Expr::second() const {
  if (node_->children.size() != 2) fail(ErrorKind::NotLetTerm, "expression has no body");
  return node_->children[1];
}

const VarSet& Expr::free_vars() const noexcept { return node_->fv; }

std::size_t Expr::size() const noexcept { return node_->size; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.id() == b.id()) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Expr::Kind::Var:
      return a.variable() == b.variable();
    case Expr::Kind::MatApp:
      return a.matrix()->name == b.matrix()->name && a.args() == b.args();
    case Expr::Kind::ArrowApp:
      return a.variable() == b.variable() && a.pattern() == b.pattern();
    case Expr::Kind::Pair:
      return a.first() == b.first() && a.second() == b.second();
    case Expr::Kind::Lam:
      return a.pattern() == b.pattern() && a.body() == b.body();
    case Expr::Kind::Let:
      return a.pattern() == b.pattern() && a.bound() == b.bound() && a.body() == b.body();
  }
  return false;
}

Expr pattern_expr(const Pattern& p) {
  if (p.is_leaf()) return Expr::var(p.var());
  return Expr::pair(pattern_expr(p.left()), pattern_expr(p.right()));
}

std::optional<Pattern> as_pattern(const Expr& e) {
  if (e.kind() == Expr::Kind::Var) return Pattern::leaf(e.variable());
  if (e.kind() != Expr::Kind::Pair) return std::nullopt;
  auto l = as_pattern(e.first());
  if (!l) return std::nullopt;
  auto r = as_pattern(e.second());
  if (!r) return std::nullopt;
  if (!l->is_positive()) return std::nullopt;
  if (l->vars().intersects(r->vars())) return std::nullopt;
  return Pattern::pair(*l, *r);
}

// --------------------------------------------------------------- let-terms

Expr LetTerm::to_expr() const {
  Expr acc = pattern_expr(output);
  for (std::size_t i = defs.size(); i-- > 0;) acc = Expr::let(defs[i].binder, defs[i].bound, acc);
  return acc;
}

LetTerm LetTerm::from_expr(const Expr& e) {
  std::vector<Definition> defs;
  Expr cur = e;
  while (cur.kind() == Expr::Kind::Let) {
    defs.push_back({cur.pattern(), cur.bound()});
    cur = cur.body();
  }
  auto out = as_pattern(cur);
  if (!out) fail(ErrorKind::NotLetTerm, "body is not a pattern");
  return LetTerm{std::move(defs), *out};
}

VarSet LetTerm::suffix_free_vars(std::size_t k) const {
  VarSet acc = output.vars();
  for (std::size_t i = defs.size(); i-- > k;) {
    acc = defs[i].bound.free_vars() | (acc - defs[i].binder.vars());
  }
  return acc;
}

VarSet LetTerm::free_vars() const { return suffix_free_vars(0); }

std::size_t LetTerm::size() const {
  std::size_t n = output.size();
  for (const auto& d : defs) n += d.binder.size() + d.bound.size();
  return n;
}

std::optional<std::size_t> LetTerm::definition_of(const std::string& x) const {
  for (std::size_t i = 0; i < defs.size(); ++i) {
    if (defs[i].binder.vars().contains(x)) return i;
  }
  return std::nullopt;
}

bool operator==(const LetTerm& a, const LetTerm& b) {
  if (a.defs.size() != b.defs.size() || a.output != b.output) return false;
  for (std::size_t i = 0; i < a.defs.size(); ++i) {
    if (a.defs[i].binder != b.defs[i].binder || a.defs[i].bound != b.defs[i].bound) return false;
  }
  return true;
}

// ------------------------------------------------------- alpha-equivalence

namespace {

using Env = std::map<std::string, int>;

struct AlphaState {
  int next = 0;
};

bool alpha_var(const Variable& x, const Env& ex, const Variable& y, const Env& ey) {
  if (x.type != y.type) return false;
  auto ix = ex.find(x.name);
  auto iy = ey.find(y.name);
  if ((ix == ex.end()) != (iy == ey.end())) return false;
  if (ix == ex.end()) return x.name == y.name;
  return ix->second == iy->second;
}

bool bind(const Pattern& p, Env& ep, const Pattern& q, Env& eq, AlphaState& st) {
  if (p.is_leaf() != q.is_leaf()) return false;
  if (p.is_leaf()) {
    if (p.var().type != q.var().type) return false;
    int id = st.next++;
    ep[p.var().name] = id;
    eq[q.var().name] = id;
    return true;
  }
  return bind(p.left(), ep, q.left(), eq, st) && bind(p.right(), ep, q.right(), eq, st);
}

bool alpha_pattern_use(const Pattern& p, const Env& ep, const Pattern& q, const Env& eq) {
  if (p.is_leaf() != q.is_leaf()) return false;
  if (p.is_leaf()) return alpha_var(p.var(), ep, q.var(), eq);
  return alpha_pattern_use(p.left(), ep, q.left(), eq) &&
         alpha_pattern_use(p.right(), ep, q.right(), eq);
}

bool alpha(const Expr& a, const Env& ea, const Expr& b, const Env& eb, AlphaState& st) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Var:
      return alpha_var(a.variable(), ea, b.variable(), eb);
    case Expr::Kind::MatApp: {
      if (a.matrix()->name != b.matrix()->name || a.args().size() != b.args().size()) return false;
      for (std::size_t i = 0; i < a.args().size(); ++i) {
        if (!alpha_var(a.args()[i], ea, b.args()[i], eb)) return false;
      }
      return true;
    }
    case Expr::Kind::ArrowApp:
      return alpha_var(a.variable(), ea, b.variable(), eb) &&
             alpha_pattern_use(a.pattern(), ea, b.pattern(), eb);
    case Expr::Kind::Pair:
      return alpha(a.first(), ea, b.first(), eb, st) && alpha(a.second(), ea, b.second(), eb, st);
    case Expr::Kind::Lam: {
      Env na = ea, nb = eb;
      return bind(a.pattern(), na, b.pattern(), nb, st) && alpha(a.body(), na, b.body(), nb, st);
    }
    case Expr::Kind::Let: {
      if (!alpha(a.bound(), ea, b.bound(), eb, st)) return false;
      Env na = ea, nb = eb;
      return bind(a.pattern(), na, b.pattern(), nb, st) && alpha(a.body(), na, b.body(), nb, st);
    }
  }
  return false;
}

}  // namespace

bool alpha_equivalent(const Expr& a, const Expr& b) {
  AlphaState st;
  return alpha(a, {}, b, {}, st);
}

bool alpha_equivalent(const LetTerm& a, const LetTerm& b) {
  return alpha_equivalent(a.to_expr(), b.to_expr());
}

// ------------------------------------------------------------------ names

namespace {

void collect_names(const Pattern& p, std::set<std::string>& out) {
  for (const auto& v : p.leaves()) out.insert(v.name);
}

void collect_names(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case Expr::Kind::Var:
      out.insert(e.variable().name);
      return;
    case Expr::Kind::MatApp:
      for (const auto& a : e.args()) out.insert(a.name);
      return;
    case Expr::Kind::ArrowApp:
      out.insert(e.variable().name);
      collect_names(e.pattern(), out);
      return;
    case Expr::Kind::Pair:
      collect_names(e.first(), out);
      collect_names(e.second(), out);
      return;
    case Expr::Kind::Lam:
      collect_names(e.pattern(), out);
      collect_names(e.body(), out);
      return;
    case Expr::Kind::Let:
      collect_names(e.pattern(), out);
      collect_names(e.bound(), out);
      collect_names(e.body(), out);
      return;
  }
}

}  // namespace

std::set<std::string> all_names(const Expr& e) {
  std::set<std::string> out;
  collect_names(e, out);
  return out;
}

std::set<std::string> all_names(const LetTerm& l) {
  std::set<std::string> out;
  collect_names(l.output, out);
  for (const auto& d : l.defs) {
    collect_names(d.binder, out);
    collect_names(d.bound, out);
  }
  return out;
}

namespace {

Variable rename_var(const Variable& v, const std::map<std::string, Variable>& r) {
  auto it = r.find(v.name);
  return it == r.end() ? v : it->second;
}

Pattern rename_pattern(const Pattern& p, const std::map<std::string, Variable>& r) {
  if (p.is_leaf()) return Pattern::leaf(rename_var(p.var(), r));
  return Pattern::pair(rename_pattern(p.left(), r), rename_pattern(p.right(), r));
}

// Drops the entries shadowed by p. Signals capture through `captured`.
std::map<std::string, Variable> under_binder(const Pattern& p, const Expr& body,
                                             const std::map<std::string, Variable>& r,
                                             bool& captured) {
  std::map<std::string, Variable> inner;
  VarSet bound = p.vars();
  for (const auto& [from, to] : r) {
    if (bound.contains(from)) continue;
    if (!body.free_vars().contains(from)) continue;
    if (bound.contains(to.name)) captured = true;
    inner.emplace(from, to);
  }
  return inner;
}

std::optional<Expr> rename_rec(const Expr& e, const std::map<std::string, Variable>& r) {
  if (r.empty()) return e;
  bool touches = false;
  for (const auto& kv : r) {
    if (e.free_vars().contains(kv.first)) {
      touches = true;
      break;
    }
  }
  if (!touches) return e;
  switch (e.kind()) {
    case Expr::Kind::Var:
      return Expr::var(rename_var(e.variable(), r));
    case Expr::Kind::MatApp: {
      std::vector<Variable> args;
      for (const auto& a : e.args()) args.push_back(rename_var(a, r));
      return Expr::mat_app(e.matrix(), std::move(args));
    }
    case Expr::Kind::ArrowApp:
      return Expr::arrow_app(rename_var(e.variable(), r), rename_pattern(e.pattern(), r));
    case Expr::Kind::Pair: {
      auto a = rename_rec(e.first(), r);
      auto b = rename_rec(e.second(), r);
      if (!a || !b) return std::nullopt;
      return Expr::pair(*a, *b);
    }
    case Expr::Kind::Lam: {
      bool captured = false;
      auto inner = under_binder(e.pattern(), e.body(), r, captured);
      if (captured) return std::nullopt;
      auto body = rename_rec(e.body(), inner);
      if (!body) return std::nullopt;
      return Expr::lam(e.pattern(), *body);
    }
    case Expr::Kind::Let: {
      auto bound = rename_rec(e.bound(), r);
      if (!bound) return std::nullopt;
      bool captured = false;
      auto inner = under_binder(e.pattern(), e.body(), r, captured);
      if (captured) return std::nullopt;
      auto body = rename_rec(e.body(), inner);
      if (!body) return std::nullopt;
      return Expr::let(e.pattern(), *bound, *body);
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Expr> rename_free(const Expr& e, const std::map<std::string, Variable>& renaming) {
  return rename_rec(e, renaming);
}

std::string name_base(const std::string& name) {
  auto pos = name.rfind("__");
  if (pos == std::string::npos || pos == 0 || pos + 2 == name.size()) return name;
  for (std::size_t i = pos + 2; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return name;
  }
  return name.substr(0, pos);
}

std::string NameSupply::fresh(const std::string& base) {
  std::string root = name_base(base);
  for (std::size_t k = 1;; ++k) {
    std::string candidate = root + "__" + std::to_string(k);
    if (used_.insert(candidate).second) return candidate;
  }
}

// ---------------------------------------------------------- canonicalising

namespace {

class Canonicalizer {
 public:
  Canonicalizer(std::set<std::string> used, const VarSet& free) : supply_(std::move(used)) {
    for (const auto& v : free) seen_.insert(v.name);
  }

  Expr run(const Expr& e, const std::map<std::string, Variable>& env) {
    switch (e.kind()) {
      case Expr::Kind::Var:
        return Expr::var(rename_var(e.variable(), env));
      case Expr::Kind::MatApp: {
        std::vector<Variable> args;
        for (const auto& a : e.args()) args.push_back(rename_var(a, env));
        return Expr::mat_app(e.matrix(), std::move(args));
      }
      case Expr::Kind::ArrowApp:
        return Expr::arrow_app(rename_var(e.variable(), env), rename_pattern(e.pattern(), env));
      case Expr::Kind::Pair:
        return Expr::pair(run(e.first(), env), run(e.second(), env));
      case Expr::Kind::Lam: {
        auto inner = env;
        Pattern p = bind(e.pattern(), inner);
        return Expr::lam(p, run(e.body(), inner));
      }
      case Expr::Kind::Let: {
        Expr bound = run(e.bound(), env);
        auto inner = env;
        Pattern p = bind(e.pattern(), inner);
        return Expr::let(p, bound, run(e.body(), inner));
      }
    }
    return e;
  }

 private:
  Pattern bind(const Pattern& p, std::map<std::string, Variable>& env) {
    if (p.is_leaf()) {
      const Variable& v = p.var();
      Variable out = v;
      if (!seen_.insert(v.name).second) {
        out.name = supply_.fresh(v.name);
        seen_.insert(out.name);
      }
      env[v.name] = out;
      return Pattern::leaf(out);
    }
    Pattern l = bind(p.left(), env);
    Pattern r = bind(p.right(), env);
    return Pattern::pair(l, r);
  }

  NameSupply supply_;
  std::set<std::string> seen_;
};

}  // namespace

LetTerm canonicalize(const LetTerm& l) {
  Expr e = l.to_expr();
  Canonicalizer c(all_names(e), e.free_vars());
  return LetTerm::from_expr(c.run(e, {}));
}

bool has_distinct_definitions(const LetTerm& l) {
  VarSet fv = l.free_vars();
  VarSet bound;
  for (const auto& d : l.defs) {
    VarSet vs = d.binder.vars();
    if (vs.intersects(bound) || vs.intersects(fv)) return false;
    if (vs.intersects(d.bound.free_vars())) return false;
    bound = bound | vs;
  }
  return true;
}

}  // namespace lve
