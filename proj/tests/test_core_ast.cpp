#include <gtest/gtest.h>

#include <random>

#include "lve/denote.hpp"
#include "lve/network.hpp"
#include "lve/printer.hpp"
#include "lve/rewrite.hpp"
#include "lve/syntax.hpp"
#include "lve/typecheck.hpp"
#include "lve/verify.hpp"
#include "support.hpp"

using namespace lve;
using support::error_kind;

namespace {

const Type B = Type::boolean();
const Type BB = Type::arrow(B, B);

Variable arrow_var(const std::string& n) { return Variable(n, BB); }

MatrixRef coin(double p) { return make_matrix("C", {}, B, {p, 1 - p}); }

// Free variables by direct occurrence walk, kept apart from the cached
// computation on expression nodes.
std::set<std::string> occurrences(const Expr& e, std::set<std::string> bound = {}) {
  std::set<std::string> out;
  auto add = [&](const std::string& n) {
    if (!bound.count(n)) out.insert(n);
  };
  auto merge = [&](const std::set<std::string>& s) { out.insert(s.begin(), s.end()); };
  switch (e.kind()) {
    case Expr::Kind::Var: add(e.variable().name); break;
    case Expr::Kind::MatApp:
      for (const auto& a : e.args()) add(a.name);
      break;
    case Expr::Kind::ArrowApp:
      add(e.variable().name);
      for (const auto& a : e.pattern().leaves()) add(a.name);
      break;
    case Expr::Kind::Pair:
      merge(occurrences(e.first(), bound));
      merge(occurrences(e.second(), bound));
      break;
    case Expr::Kind::Lam: {
      auto inner = bound;
      for (const auto& v : e.pattern().leaves()) inner.insert(v.name);
      merge(occurrences(e.body(), inner));
      break;
    }
    case Expr::Kind::Let: {
      merge(occurrences(e.bound(), bound));
      auto inner = bound;
      for (const auto& v : e.pattern().leaves()) inner.insert(v.name);
      merge(occurrences(e.body(), inner));
      break;
    }
  }
  return out;
}

std::set<std::string> names_of(const VarSet& v) {
  auto n = v.names();
  return {n.begin(), n.end()};
}

}  // namespace

TEST(Types, PositivityAndWebs) {
  Type bb = Type::tensor(B, B);
  EXPECT_TRUE(bb.is_positive());
  EXPECT_FALSE(BB.is_positive());
  EXPECT_FALSE(Type::tensor(B, BB).is_positive());
  EXPECT_EQ(bb.web_size(), 4u);
  EXPECT_EQ(Type::arrow(bb, B).web_size(), 8u);
  EXPECT_EQ(Type::tensor(B, BB).str(), "Bool * (Bool -o Bool)");
}

TEST(Types, DimAndHeight) {
  EXPECT_EQ(dim(Type::tensor(B, Type::tensor(B, B))), 8u);
  EXPECT_EQ(ht(Type::tensor(B, B)), 1u);
  EXPECT_EQ(ht(Type::tensor(B, BB)), 2u);
  EXPECT_EQ(ht(Type::arrow(Type::tensor(B, B), BB)), 8u);
}

TEST(Types, TensorOfIsRightNested) {
  Type t = tensor_of({B, B, BB});
  EXPECT_EQ(t, Type::tensor(B, Type::tensor(B, BB)));
  EXPECT_EQ(tensor_of({B}), B);
}

TEST(Types, VarSetRejectsConflictingTypes) {
  VarSet s{Variable("x")};
  EXPECT_EQ(error_kind([&] { s.insert(arrow_var("x")); }), "InconsistentVariableType");
  VarSet t{Variable("y"), Variable("x")};
  EXPECT_EQ(t.names(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ((s | t).size(), 2u);
  EXPECT_EQ((t - s).names(), std::vector<std::string>{"y"});
}

TEST(Typecheck, CopyOfPositiveVariable) {
  Variable v("v"), w("w");
  Expr e = Expr::let(Pattern::leaf(w), Expr::var(v), Expr::pair(Expr::var(v), Expr::var(w)));
  EXPECT_EQ(typecheck(e), Type::tensor(B, B));
}

TEST(Typecheck, CopyOfArrowVariableIsRejected) {
  Variable v = arrow_var("v"), w = arrow_var("w");
  Expr e = Expr::let(Pattern::leaf(w), Expr::var(v), Expr::pair(Expr::var(v), Expr::var(w)));
  EXPECT_EQ(error_kind([&] { typecheck(e); }), "ArrowSharing");
}

TEST(Typecheck, SingleVariable) { EXPECT_EQ(typecheck(Expr::var(Variable("x"))), B); }

TEST(Typecheck, UnusedArrowBinder) {
  Variable f = arrow_var("f"), x("x"), y("y");
  auto prog = support::chain6();
  Expr e = Expr::let(Pattern::leaf(f),
                     Expr::lam(Pattern::leaf(x), Expr::mat_app(support::matrix(prog, "M2"), {x})),
                     Expr::var(y));
  EXPECT_EQ(error_kind([&] { typecheck(e); }), "UnusedArrowBinder");
}

TEST(Typecheck, ApplicationMismatch) {
  Variable f = arrow_var("f"), a("a"), b("b");
  Expr e = Expr::arrow_app(f, Pattern::pair(Pattern::leaf(a), Pattern::leaf(b)));
  EXPECT_EQ(error_kind([&] { typecheck(e); }), "ApplicationMismatch");
}

TEST(Typecheck, PatternTypeMismatch) {
  Variable a("a"), b("b");
  Expr e = Expr::let(Pattern::pair(Pattern::leaf(a), Pattern::leaf(b)), Expr::mat_app(coin(0.3), {}),
                     Expr::var(a));
  EXPECT_EQ(error_kind([&] { typecheck(e); }), "PatternTypeMismatch");
}

TEST(Typecheck, LambdaParameterMustBePositive) {
  Variable f = arrow_var("f"), x("x");
  EXPECT_EQ(error_kind([&] {
              typecheck(Expr::lam(Pattern::leaf(f), Expr::arrow_app(f, Pattern::leaf(x))));
            }),
            "NonPositiveLamParam");
}

TEST(Typecheck, NameUsedAtTwoTypes) {
  Variable x("x"), fx = arrow_var("x");
  EXPECT_EQ(error_kind([&] { typecheck(Expr::pair(Expr::var(x), Expr::var(fx))); }),
            "InconsistentVariableType");
}

TEST(Typecheck, ArrowOutputType) {
  auto l = support::chain6_after("x2");
  EXPECT_EQ(typecheck(l), Type::tensor(B, B));
  EXPECT_EQ(typecheck(l.defs[0].bound), Type::tensor(B, BB));
}

TEST(FreeVars, ArrowApplicationUnderLet) {
  Variable f = arrow_var("f"), x("x"), y("y"), z("z");
  Expr e = Expr::let(Pattern::leaf(y), Expr::arrow_app(f, Pattern::leaf(x)),
                     Expr::pair(Expr::var(z), Expr::var(y)));
  EXPECT_EQ(names_of(e.free_vars()), (std::set<std::string>{"f", "x", "z"}));
  EXPECT_EQ(e.free_vars().arrows().names(), std::vector<std::string>{"f"});
}

TEST(FreeVars, ClosedTerm) { EXPECT_TRUE(support::chain6().term.free_vars().empty()); }

TEST(FreeVars, LambdaHasNoFreeArrows) {
  auto prog = support::chain6();
  Variable x("x"), x2("x2");
  Expr e = Expr::lam(Pattern::leaf(x), Expr::mat_app(support::matrix(prog, "M6"), {x2, x}));
  EXPECT_TRUE(e.free_vars().arrows().empty());
  EXPECT_EQ(names_of(e.free_vars()), std::set<std::string>{"x2"});
}

TEST(FreeVars, AgreesWithOccurrenceWalk) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.nodes = 5;
    auto l = ingest_network(random_network(cfg)).term;
    auto order = eliminable_variables(l);
    auto r = vel_seq(l, order);
    for (const auto& step : r.trace.steps) {
      for (std::size_t k = 0; k <= step.after.defs.size(); ++k) {
        // suffix k as an expression
        LetTerm suffix{{step.after.defs.begin() + static_cast<long>(k), step.after.defs.end()},
                       step.after.output};
        EXPECT_EQ(names_of(step.after.suffix_free_vars(k)), occurrences(suffix.to_expr()));
      }
      EXPECT_EQ(names_of(step.after.free_vars()), occurrences(step.after.to_expr()));
    }
  }
}

TEST(Patterns, SplitArrowFromPositivePart) {
  Variable x3("x3"), f = arrow_var("f"), x("x"), y("y"), g = arrow_var("g");
  auto s = pattern_split(Pattern::pair(Pattern::leaf(x3), Pattern::leaf(f)));
  ASSERT_TRUE(s.arrow && s.positive);
  EXPECT_EQ(s.arrow->name, "f");
  EXPECT_EQ(*s.positive, Pattern::leaf(x3));

  s = pattern_split(Pattern::leaf(x));
  EXPECT_FALSE(s.arrow);
  EXPECT_EQ(*s.positive, Pattern::leaf(x));

  s = pattern_split(Pattern::of({x, y, g}));
  EXPECT_EQ(s.arrow->name, "g");
  EXPECT_EQ(*s.positive, Pattern::pair(Pattern::leaf(x), Pattern::leaf(y)));

  s = pattern_split(Pattern::leaf(g));
  EXPECT_TRUE(s.arrow);
  EXPECT_FALSE(s.positive);
}

TEST(Patterns, Malformed) {
  Variable x("x"), f = arrow_var("f");
  EXPECT_EQ(error_kind([&] { Pattern::pair(Pattern::leaf(x), Pattern::leaf(x)); }),
            "MalformedPattern");
  EXPECT_EQ(error_kind([&] { Pattern::pair(Pattern::leaf(f), Pattern::leaf(x)); }),
            "MalformedPattern");
}

TEST(Size, Clauses) {
  auto prog = support::chain6();
  Variable x("x"), x1("x1"), x2("x2");
  EXPECT_EQ(Expr::var(x).size(), 1u);
  EXPECT_EQ(Expr::mat_app(support::matrix(prog, "M3"), {x2}).size(), 2u);
  Expr e = Expr::let(Pattern::leaf(x1), Expr::mat_app(support::matrix(prog, "M1"), {}),
                     Expr::pair(Expr::var(x1), Expr::mat_app(support::matrix(prog, "M2"), {x1})));
  EXPECT_EQ(e.size(), 5u);
}

TEST(Size, NetworkAndEliminations) {
  EXPECT_EQ(support::chain6().term.size(), 20u);
  EXPECT_EQ(support::chain6_after("x1").size(), 24u);
  EXPECT_EQ(support::chain6_after("x2").size(), 36u);
}

TEST(Canonicalize, RenamesShadowedBinder) {
  auto prog = support::chain6();
  Variable x("x");
  Expr e = Expr::let(Pattern::leaf(x), Expr::mat_app(support::matrix(prog, "M1"), {}),
                     Expr::let(Pattern::leaf(x), Expr::mat_app(support::matrix(prog, "M2"), {x}),
                               Expr::var(x)));
  auto l = LetTerm::from_expr(e);
  auto c = canonicalize(l);
  ASSERT_EQ(c.defs.size(), 2u);
  EXPECT_EQ(c.defs[0].binder.var().name, "x");
  EXPECT_EQ(c.defs[1].binder.var().name, "x__1");
  EXPECT_EQ(c.output.var().name, "x__1");
  EXPECT_TRUE(alpha_equivalent(l, c));
  EXPECT_EQ(canonicalize(c), c);
  EXPECT_TRUE(has_distinct_definitions(c));
  EXPECT_FALSE(has_distinct_definitions(l));
  EXPECT_LE(max_difference(denote(l), denote(c)), 1e-12);
}

TEST(Canonicalize, DistinctNamesUnchanged) {
  auto l = support::chain6().term;
  EXPECT_EQ(canonicalize(l), l);
}

TEST(Canonicalize, PreservesTypeSizeAndMeaning) {
  for (const char* v : {"x1", "x2", "x4", "x5"}) {
    auto l = support::chain6_after(v);
    auto c = canonicalize(l);
    EXPECT_EQ(canonicalize(c), c) << v;
    EXPECT_EQ(typecheck(c), typecheck(l));
    EXPECT_EQ(c.size(), l.size());
    EXPECT_LE(max_difference(denote(l), denote(c)), 1e-12);
  }
}

TEST(LetTerms, RoundTripThroughExpressions) {
  auto l = support::chain6().term;
  auto back = LetTerm::from_expr(l.to_expr());
  EXPECT_EQ(back, l);
  EXPECT_EQ(error_kind([] { LetTerm::from_expr(Expr::mat_app(coin(0.5), {})); }), "NotLetTerm");
}

TEST(AlphaEquivalence, DistinguishesFreeNames) {
  Variable x("x"), y("y"), z("z");
  Expr a = Expr::lam(Pattern::leaf(x), Expr::pair(Expr::var(x), Expr::var(z)));
  Expr b = Expr::lam(Pattern::leaf(y), Expr::pair(Expr::var(y), Expr::var(z)));
  Expr c = Expr::lam(Pattern::leaf(y), Expr::pair(Expr::var(y), Expr::var(x)));
  EXPECT_TRUE(alpha_equivalent(a, b));
  EXPECT_FALSE(alpha_equivalent(a, c));
  EXPECT_FALSE(a == b);
}
