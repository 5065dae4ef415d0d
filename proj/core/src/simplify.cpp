#include "lve/simplify.hpp"

namespace lve {

namespace {

// One bottom-up pass; `changed` is set when a rule fired.
Expr pass(const Expr& e, bool& changed);

std::optional<Expr> rewrite_let(const Pattern& p, const Expr& bound, const Expr& body) {
  // let p = e in p
  if (auto q = as_pattern(body); q && *q == p) return bound;

  // let x = y in s
  if (p.is_leaf() && bound.kind() == Expr::Kind::Var && p.var().type == bound.variable().type) {
    if (auto s = rename_free(body, {{p.var().name, bound.variable()}})) return *s;
  }

  // let p = (let q = e0 in e1) in s
  if (bound.kind() == Expr::Kind::Let) {
    const Pattern& q = bound.pattern();
    if (!q.vars().intersects(body.free_vars() - p.vars())) {
      return Expr::let(q, bound.bound(), Expr::let(p, bound.body(), body));
    }
  }

  // let (p1, p2) = (e1, e2) in s
  if (!p.is_leaf() && bound.kind() == Expr::Kind::Pair) {
    const Pattern& p1 = p.left();
    const Pattern& p2 = p.right();
    const Expr& e1 = bound.first();
    const Expr& e2 = bound.second();
    if (!p1.vars().intersects(e2.free_vars())) {
      return Expr::let(p1, e1, Expr::let(p2, e2, body));
    }
    if (!p2.vars().intersects(e1.free_vars())) {
      return Expr::let(p2, e2, Expr::let(p1, e1, body));
    }
  }
  return std::nullopt;
}

Expr pass(const Expr& e, bool& changed) {
  switch (e.kind()) {
    case Expr::Kind::Var:
    case Expr::Kind::MatApp:
    case Expr::Kind::ArrowApp:
      return e;
    case Expr::Kind::Pair: {
      bool c = false;
      Expr a = pass(e.first(), c);
      Expr b = pass(e.second(), c);
      if (!c) return e;
      changed = true;
      return Expr::pair(a, b);
    }
    case Expr::Kind::Lam: {
      bool c = false;
      Expr b = pass(e.body(), c);
      if (!c) return e;
      changed = true;
      return Expr::lam(e.pattern(), b);
    }
    case Expr::Kind::Let: {
      bool c = false;
      Expr bound = pass(e.bound(), c);
      Expr body = pass(e.body(), c);
      if (auto r = rewrite_let(e.pattern(), bound, body)) {
        changed = true;
        return *r;
      }
      if (!c) return e;
      changed = true;
      return Expr::let(e.pattern(), bound, body);
    }
  }
  return e;
}

}  // namespace

Expr simplify(const Expr& e) {
  Expr cur = e;
  for (;;) {
    bool changed = false;
    cur = pass(cur, changed);
    if (!changed) return cur;
  }
}

LetTerm simplify(const LetTerm& l) {
  LetTerm out = l;
  for (auto& d : out.defs) d.bound = simplify(d.bound);
  return out;
}

}  // namespace lve
