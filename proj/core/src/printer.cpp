#include "lve/printer.hpp"

#include <cstdio>
#include <map>
#include <set>
#include <sstream>

namespace lve {

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

namespace {

std::string exact_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string shorter = format_number(x);
  return std::stod(shorter) == x ? shorter : std::string(buf);
}

void print(const Expr& e, std::ostream& os);

void print_bound(const Expr& e, std::ostream& os) {
  if (e.kind() == Expr::Kind::Let || e.kind() == Expr::Kind::Lam) {
    os << "(";
    print(e, os);
    os << ")";
  } else {
    print(e, os);
  }
}

void print(const Expr& e, std::ostream& os) {
  switch (e.kind()) {
    case Expr::Kind::Var:
      os << e.variable().name;
      return;
    case Expr::Kind::MatApp: {
      os << e.matrix()->name;
      if (e.args().empty()) return;
      os << "(";
      for (std::size_t i = 0; i < e.args().size(); ++i) os << (i ? ", " : "") << e.args()[i].name;
      os << ")";
      return;
    }
    case Expr::Kind::ArrowApp: {
      os << e.variable().name << "(";
      const Pattern* p = &e.pattern();
      bool first = true;
      while (!p->is_leaf()) {
        os << (first ? "" : ", ") << pretty_print(p->left());
        first = false;
        p = &p->right();
      }
      os << (first ? "" : ", ") << p->var().name << ")";
      return;
    }
    case Expr::Kind::Pair:
      os << "(";
      print(e.first(), os);
      os << ", ";
      print(e.second(), os);
      os << ")";
      return;
    case Expr::Kind::Lam:
      os << "\\" << pretty_print(e.pattern()) << ". ";
      print(e.body(), os);
      return;
    case Expr::Kind::Let:
      os << "let " << pretty_print(e.pattern()) << " = ";
      print_bound(e.bound(), os);
      os << " in ";
      print(e.body(), os);
      return;
  }
}

void collect_matrices(const Expr& e, std::vector<MatrixRef>& out, std::set<std::string>& seen) {
  switch (e.kind()) {
    case Expr::Kind::MatApp:
      if (seen.insert(e.matrix()->name).second) out.push_back(e.matrix());
      return;
    case Expr::Kind::Pair:
    case Expr::Kind::Let:
      collect_matrices(e.first(), out, seen);
      collect_matrices(e.second(), out, seen);
      return;
    case Expr::Kind::Lam:
      collect_matrices(e.body(), out, seen);
      return;
    default:
      return;
  }
}

void collect_typed(const Pattern& p, std::map<std::string, Type>& out) {
  for (const auto& v : p.leaves()) {
    if (!v.type.is_bool()) out.emplace(v.name, v.type);
  }
}

void collect_typed(const Expr& e, std::map<std::string, Type>& out) {
  switch (e.kind()) {
    case Expr::Kind::Var:
      if (!e.variable().type.is_bool()) out.emplace(e.variable().name, e.variable().type);
      return;
    case Expr::Kind::MatApp:
      return;
    case Expr::Kind::ArrowApp:
      out.emplace(e.variable().name, e.variable().type);
      collect_typed(e.pattern(), out);
      return;
    case Expr::Kind::Pair:
      collect_typed(e.first(), out);
      collect_typed(e.second(), out);
      return;
    case Expr::Kind::Lam:
      collect_typed(e.pattern(), out);
      collect_typed(e.body(), out);
      return;
    case Expr::Kind::Let:
      collect_typed(e.pattern(), out);
      collect_typed(e.bound(), out);
      collect_typed(e.body(), out);
      return;
  }
}

std::string slot_text(const Type& t) {
  return t.is_bool() ? t.str() : "(" + t.str() + ")";
}

}  // namespace

std::vector<MatrixRef> matrices_of(const LetTerm& l) {
  std::vector<MatrixRef> out;
  std::set<std::string> seen;
  for (const auto& d : l.defs) collect_matrices(d.bound, out, seen);
  return out;
}

std::string pretty_print(const Pattern& p) {
  if (p.is_leaf()) return p.var().name;
  return "(" + pretty_print(p.left()) + ", " + pretty_print(p.right()) + ")";
}

std::string pretty_print(const Expr& e) {
  std::ostringstream os;
  print(e, os);
  return os.str();
}

std::string pretty_print(const LetTerm& l) {
  std::ostringstream os;
  for (const auto& d : l.defs) {
    os << pretty_print(d.binder) << " = ";
    print(d.bound, os);
    os << ";\n";
  }
  if (!l.defs.empty()) os << "in ";
  os << pretty_print(l.output);
  return os.str();
}

std::string print_program(const Program& p) {
  std::ostringstream os;
  std::set<std::string> printed;
  auto declare = [&](const MatrixRef& m) {
    if (!printed.insert(m->name).second) return;
    os << "matrix " << m->name << " : ";
    if (m->inputs.size() == 1 && !m->inputs[0].is_bool()) {
      os << "(" << slot_text(m->inputs[0]) << ") ";
    } else {
      for (std::size_t i = 0; i < m->inputs.size(); ++i) {
        os << (i ? " * " : "") << slot_text(m->inputs[i]);
      }
      if (!m->inputs.empty()) os << " ";
    }
    os << "-> " << m->output.str() << " = [";
    for (std::size_t r = 0; r < m->rows(); ++r) {
      os << (r ? "; " : "");
      for (std::size_t c = 0; c < m->cols(); ++c) os << (c ? ", " : "") << exact_number(m->at(r, c));
    }
    os << "];\n";
  };
  for (const auto& m : p.matrices) declare(m);
  for (const auto& m : matrices_of(p.term)) declare(m);

  std::map<std::string, Type> typed;
  collect_typed(p.term.to_expr(), typed);
  for (const auto& [name, type] : typed) os << "var " << name << " : " << type.str() << ";\n";
  if (!printed.empty() || !typed.empty()) os << "\n";
  os << pretty_print(p.term) << "\n";
  return os.str();
}

}  // namespace lve
