#include "lve/typecheck.hpp"

#include <map>

#include "lve/error.hpp"

namespace lve {

namespace {

void record(const Variable& v, std::map<std::string, Type>& seen) {
  auto [it, inserted] = seen.emplace(v.name, v.type);
  if (!inserted && it->second != v.type) {
    fail(ErrorKind::InconsistentVariableType,
         "variable " + v.name + " used at " + it->second.str() + " and " + v.type.str());
  }
}

void record(const Pattern& p, std::map<std::string, Type>& seen) {
  for (const auto& v : p.leaves()) record(v, seen);
}

void consistency(const Expr& e, std::map<std::string, Type>& seen) {
  switch (e.kind()) {
    case Expr::Kind::Var:
      record(e.variable(), seen);
      return;
    case Expr::Kind::MatApp:
      for (const auto& a : e.args()) record(a, seen);
      return;
    case Expr::Kind::ArrowApp:
      record(e.variable(), seen);
      record(e.pattern(), seen);
      return;
    case Expr::Kind::Pair:
      consistency(e.first(), seen);
      consistency(e.second(), seen);
      return;
    case Expr::Kind::Lam:
      record(e.pattern(), seen);
      consistency(e.body(), seen);
      return;
    case Expr::Kind::Let:
      record(e.pattern(), seen);
      consistency(e.bound(), seen);
      consistency(e.body(), seen);
      return;
  }
}

void check_variable_type(const Variable& v) {
  if (!v.is_positive() && !v.type.is_arrow()) {
    fail(ErrorKind::InvalidType, "variable " + v.name + " must be positive or an arrow, has " +
                                     v.type.str());
  }
}

Type check(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Var:
      check_variable_type(e.variable());
      return e.variable().type;

    case Expr::Kind::MatApp: {
      const auto& m = *e.matrix();
      if (m.inputs.size() != e.args().size()) {
        fail(ErrorKind::ApplicationMismatch, m.name + " expects " +
                                                 std::to_string(m.inputs.size()) +
                                                 " arguments, got " +
                                                 std::to_string(e.args().size()));
      }
      for (std::size_t i = 0; i < m.inputs.size(); ++i) {
        if (e.args()[i].type != m.inputs[i]) {
          fail(ErrorKind::ApplicationMismatch, "argument " + e.args()[i].name + " of " + m.name +
                                                   " has type " + e.args()[i].type.str() +
                                                   ", expected " + m.inputs[i].str());
        }
      }
      return m.output;
    }

    case Expr::Kind::ArrowApp: {
      const Variable& f = e.variable();
      if (!f.type.is_arrow()) {
        fail(ErrorKind::ApplicationMismatch, f.name + " is applied but has type " + f.type.str());
      }
      if (!e.pattern().is_positive()) {
        fail(ErrorKind::ApplicationMismatch, "argument of " + f.name + " is not positive");
      }
      Type arg = e.pattern().type();
      if (arg != f.type.left()) {
        fail(ErrorKind::ApplicationMismatch, f.name + " expects " + f.type.left().str() +
                                                 ", applied to " + arg.str());
      }
      return f.type.right();
    }

    case Expr::Kind::Pair: {
      VarSet shared = e.first().free_vars().arrows() & e.second().free_vars().arrows();
      if (!shared.empty()) {
        fail(ErrorKind::ArrowSharing, "arrow variables " + shared.str() + " used in both components");
      }
      Type a = check(e.first());
      Type b = check(e.second());
      if (!a.is_positive()) {
        fail(ErrorKind::NonPositivePairLeft, "first component of a pair has type " + a.str());
      }
      return Type::tensor(a, b);
    }

    case Expr::Kind::Lam: {
      if (!e.pattern().is_positive()) {
        fail(ErrorKind::NonPositiveLamParam,
             "lambda parameter has type " + e.pattern().type().str());
      }
      Type body = check(e.body());
      return Type::arrow(e.pattern().type(), body);
    }

    case Expr::Kind::Let: {
      VarSet shared = e.bound().free_vars().arrows() & e.body().free_vars().arrows();
      if (!shared.empty()) {
        fail(ErrorKind::ArrowSharing,
             "arrow variables " + shared.str() + " used in both the bound expression and the body");
      }
      Type bound = check(e.bound());
      Type binder = e.pattern().type();
      if (bound != binder) {
        fail(ErrorKind::PatternTypeMismatch,
             "pattern has type " + binder.str() + " but is bound to " + bound.str());
      }
      Type body = check(e.body());
      auto split = pattern_split(e.pattern());
      if (split.arrow && !e.body().free_vars().contains(split.arrow->name)) {
        fail(ErrorKind::UnusedArrowBinder, "arrow " + split.arrow->name + " bound but not used");
      }
      return body;
    }
  }
  return Type::boolean();
}

}  // namespace

void check_name_consistency(const Expr& e) {
  std::map<std::string, Type> seen;
  consistency(e, seen);
}

Type typecheck(const Expr& e) {
  check_name_consistency(e);
  return check(e);
}

Type typecheck(const LetTerm& l) { return typecheck(l.to_expr()); }

Type type_of(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Var:
      return e.variable().type;
    case Expr::Kind::MatApp:
      return e.matrix()->output;
    case Expr::Kind::ArrowApp:
      return e.variable().type.right();
    case Expr::Kind::Pair:
      return Type::tensor(type_of(e.first()), type_of(e.second()));
    case Expr::Kind::Lam:
      return Type::arrow(e.pattern().type(), type_of(e.body()));
    case Expr::Kind::Let:
      return type_of(e.body());
  }
  return Type::boolean();
}

}  // namespace lve
