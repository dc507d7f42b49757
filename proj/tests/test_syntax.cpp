#include <catch2/catch_amalgamated.hpp>

#include "dal/ast.hpp"
#include "dal/normalize.hpp"
#include "dal/parser.hpp"
#include "dal/printer.hpp"
#include "dal/subst.hpp"
#include "dal/vars.hpp"
#include "gen.hpp"

using namespace dal;

TEST_CASE("parse recovers the documented trees") {
  SECTION("conjunction of a differential equation and range bounds") {
    FormulaPtr f = parse_formula("x' = 1 & -1 < x & x <= 1");
    REQUIRE(f->tag == FormulaTag::And);
    REQUIRE(f->a->tag == FormulaTag::Cmp);
    REQUIRE(f->a->op == CmpOp::Eq);
    REQUIRE(f->a->lhs->tag == TermTag::DiffVar);
    REQUIRE(f->a->lhs->name == "x");
    REQUIRE(is_const(f->a->rhs, 1));
    const FormulaPtr& rest = f->b;
    REQUIRE(rest->tag == FormulaTag::And);
    REQUIRE(rest->a->op == CmpOp::Lt);
    REQUIRE(is_const(rest->a->lhs, -1));
    REQUIRE(rest->b->op == CmpOp::Le);
    REQUIRE(is_const(rest->b->rhs, 1));
  }

  SECTION("differential-algebraic program") {
    ProgramPtr p = parse_program("{x & x'=-1 & x>=0}");
    REQUIRE(p->tag == ProgramTag::DAP);
    REQUIRE(p->vars == std::vector<std::string>{"x"});
    REQUIRE(p->fml->tag == FormulaTag::And);
    REQUIRE(equal(p->fml->a->rhs, mk_const(-1)));
    REQUIRE(p->fml->b->op == CmpOp::Ge);
  }

  SECTION("atomic constant") {
    TermPtr t = parse_term("0");
    REQUIRE(t->tag == TermTag::Const);
    REQUIRE(t->value == 0);
  }

  SECTION("powers expand to repeated products") {
    TermPtr t = parse_term("x^3");
    REQUIRE(t->tag == TermTag::Times);
    REQUIRE(equal(t, mk_times(mk_var("x"), mk_times(mk_var("x"), mk_var("x")))));
    REQUIRE(equal(parse_term("x^0"), mk_const(1)));
    REQUIRE(equal(parse_term("x^1"), mk_var("x")));
  }

  SECTION("vectorial equality expands to a conjunction") {
    FormulaPtr f = parse_formula("(x,y) = f(x,y)");
    REQUIRE(f->tag == FormulaTag::And);
    REQUIRE(f->a->op == CmpOp::Eq);
    REQUIRE(f->a->rhs->tag == TermTag::Func);
    REQUIRE(f->a->rhs->name == "f1");
    REQUIRE(f->b->rhs->name == "f2");
  }

  SECTION("errors carry positions") {
    REQUIRE_THROWS_AS(parse_term("x +"), DalError);
    REQUIRE_THROWS_AS(parse_term("x''"), DalError);
    try {
      parse_formula("x <");
      FAIL("expected a parse error");
    } catch (const DalError& e) {
      REQUIRE(e.position() >= 0);
    }
  }

  SECTION("arity conflicts are rejected") {
    Signature sig;
    parse_formula("f(x) = 1", sig);
    REQUIRE_THROWS_AS(parse_formula("f(x,y) = 1", sig), DalError);
  }

  SECTION("modalities inside a differential-algebraic constraint are rejected") {
    REQUIRE_THROWS_AS(parse_program("{x & [x:=1]x=1}"), DalError);
    REQUIRE_THROWS_AS(parse_program("{x,x & x'=1}"), DalError);
  }
}

TEST_CASE("print produces the documented spellings") {
  REQUIRE(print(mk_const(Rat(1, 2))) == "1/2");
  REQUIRE(print(mk_diffvar("x")) == "x'");
  std::string pendulum = "x'=v & v'=lambda*x & y'=w & w'=lambda*y-g & x^2+y^2=1";
  REQUIRE(print(parse_formula(pendulum)) == pendulum);
}

TEST_CASE("round-trip on sampled corners") {
  for (const char* text : {
           "x'=1 & -1<x & x<=1",
           "g*y-(v^2+w^2)",
           "-x'",
           "-1*3",
           "x-3",
           "2*x*x'+2*y*y'=0",
           "(x+y)^2",
           "\\forall x \\forall x' (x<=1 -> x'=0)",
           "[{x,y & x'=y & x^2+y^2=1}]P",
           "<{x & x'=1 | (x=y & x'=y')}>(x!=y)",
           "(x:=1;y:=2)*",
           "?x<=0 ++ {x & x'=1}",
           "[x':=-x']\\exists y1 x=y1",
       }) {
    INFO(text);
    FormulaPtr f1, f2;
    TermPtr t1, t2;
    ProgramPtr p1, p2;
    // each text is one of the three kinds; try formula, then program, then term
    try {
      f1 = parse_formula(text);
    } catch (const DalError&) {
    }
    if (f1) {
      REQUIRE(print(parse_formula(print(f1))) == print(f1));
      continue;
    }
    try {
      p1 = parse_program(text);
    } catch (const DalError&) {
    }
    if (p1) {
      REQUIRE(print(parse_program(print(p1))) == print(p1));
      continue;
    }
    t1 = parse_term(text);
    REQUIRE(print(parse_term(print(t1))) == print(t1));
  }
}

TEST_CASE("round-trip property over random trees") {
  dalgen::Gen gen(20250810);
  for (int i = 0; i < 400; ++i) {
    TermPtr t = gen.term(5);
    INFO("term: " << print(t));
    TermPtr back = parse_term(print(t));
    REQUIRE(equal(back, t));
  }
  for (int i = 0; i < 400; ++i) {
    FormulaPtr f = gen.formula(5);
    INFO("formula: " << print(f));
    FormulaPtr back = parse_formula(print(f));
    REQUIRE(equal(back, f));
  }
  for (int i = 0; i < 200; ++i) {
    ProgramPtr p = gen.program(5);
    INFO("program: " << print(p));
    ProgramPtr back = parse_program(print(p));
    REQUIRE(equal(back, p));
  }
}

TEST_CASE("free variables") {
  SECTION("term") {
    VarSet fv = free_vars(parse_term("x*y'"));
    REQUIRE(fv == VarSet{Var("x"), Var("y", true)});
  }
  SECTION("binder removes the quantified variable") {
    VarSet fv = free_vars(parse_formula("\\forall x x<=y"));
    REQUIRE(fv == VarSet{Var("y")});
  }
  SECTION("differential terms read primes of their free variables") {
    VarSet fv = free_vars(parse_term("(x*x)'"));
    REQUIRE(fv == VarSet{Var("x"), Var("x", true)});
  }
  SECTION("differential-algebraic program") {
    VarSet fv = free_vars(parse_program("{x & x'=-1 & z<=0}"));
    REQUIRE(fv == VarSet{Var("x"), Var("x", true), Var("z")});
  }
}

TEST_CASE("bound variables") {
  REQUIRE(bound_vars(parse_program("x := y+1")) == VarSet{Var("x")});
  REQUIRE(bound_vars(parse_program("?x<=1")) == VarSet{});
  REQUIRE(bound_vars(parse_program("{x,y & x'=1}")) ==
          VarSet{Var("x"), Var("x", true), Var("y"), Var("y", true)});
  REQUIRE(bound_vars(parse_program("(?x<=1 ++ y:=2)*")) == VarSet{Var("y")});
}

TEST_CASE("substitution") {
  SECTION("plain replacement") {
    FormulaPtr f = substitute_one(parse_formula("x <= y"), Var("x"), parse_term("z+1"));
    REQUIRE(print(f) == "z+1<=y");
  }
  SECTION("capture forces a rename") {
    bool renamed = false;
    FormulaPtr f =
        substitute_one(parse_formula("\\forall x x<=y"), Var("y"), mk_var("x"), &renamed);
    REQUIRE(renamed);
    REQUIRE(print(f) == "\\forall x1 x1<=x");
  }
  SECTION("reverse-flow style prime replacement") {
    FormulaPtr f = parse_formula("x'=1 & x<=1");
    FormulaPtr g = substitute_one(f, Var("x", true), mk_neg(mk_diffvar("x")));
    REQUIRE(print(g) == "-x'=1 & x<=1");
  }
  SECTION("substitution under an unexpanded differential is refused") {
    FormulaPtr f = parse_formula("(x*x)' <= 1");
    REQUIRE_THROWS_AS(substitute_one(f, Var("x", true), mk_const(0)), DalError);
  }
  SECTION("composition on disjoint domains") {
    dalgen::Gen gen(7);
    for (int i = 0; i < 50; ++i) {
      FormulaPtr f = gen.semi_algebraic(3, {"x", "y", "z"});
      SubstMap sigma{{Var("x"), parse_term("w+1")}};
      SubstMap tau{{Var("y"), parse_term("2*w")}};
      SubstMap both{{Var("x"), parse_term("w+1")}, {Var("y"), parse_term("2*w")}};
      FormulaPtr lhs = substitute(substitute(f, sigma), tau);
      FormulaPtr rhs = substitute(f, both);
      INFO(print(f));
      REQUIRE(equal(lhs, rhs));
    }
  }
  SECTION("free variables shrink as documented") {
    dalgen::Gen gen(8);
    for (int i = 0; i < 50; ++i) {
      FormulaPtr f = gen.semi_algebraic(3, {"x", "y"});
      TermPtr e = gen.poly_term(2, {"z", "w"});
      FormulaPtr g = substitute_one(f, Var("x"), e);
      VarSet bound;
      VarSet expect = free_vars(f);
      expect.erase(Var("x"));
      for (const auto& v : free_vars(e)) expect.insert(v);
      for (const auto& v : free_vars(g)) REQUIRE(expect.count(v));
    }
  }
}

TEST_CASE("fresh variable selection") {
  REQUIRE(fresh_vars(VarSet{Var("x"), Var("x", true)}, {"y"}) ==
          std::vector<std::string>{"y"});
  REQUIRE(fresh_vars(VarSet{Var("x"), Var("y"), Var("y", true)}, {"y"}) ==
          std::vector<std::string>{"y1"});
  REQUIRE(fresh_vars(VarSet{Var("y"), Var("y1")}, {"y", "y"}) ==
          std::vector<std::string>{"y2", "y3"});

  dalgen::Gen gen(9);
  for (int i = 0; i < 50; ++i) {
    FormulaPtr f = gen.formula(4);
    VarSet avoid = all_vars(f);
    auto names = fresh_vars(avoid, {"y", "y"});
    for (const auto& n : names) {
      REQUIRE_FALSE(avoid.count(Var(n)));
      REQUIRE_FALSE(avoid.count(Var(n, true)));
    }
    REQUIRE(names[0] != names[1]);
  }
}

TEST_CASE("normalize") {
  REQUIRE(print(normalize(parse_term("-1*(-1*x')"))) == "x'");
  REQUIRE(print(normalize(parse_term("2+3"))) == "5");
  REQUIRE(print(normalize(parse_term("x*(y*0)"))) == "0");
  REQUIRE(print(normalize(parse_term("x'*x + x*x'"))) == "2*x*x'");
  REQUIRE(print(normalize(parse_term("x^2+y^2-1"))) == "x^2+y^2-1");

  SECTION("idempotence") {
    dalgen::Gen gen(10);
    for (int i = 0; i < 300; ++i) {
      TermPtr t = gen.term(5);
      TermPtr n1 = normalize(t);
      TermPtr n2 = normalize(n1);
      INFO(print(t) << " ~> " << print(n1));
      REQUIRE(equal(n1, n2));
    }
  }
}

TEST_CASE("desugaring fixes kernel equality") {
  FormulaPtr a = parse_formula("x<y | y<x");
  FormulaPtr b = parse_formula("!(!(x<y) & !(y<x))");
  REQUIRE(kernel_equal(a, b));
  REQUIRE_FALSE(kernel_equal(a, parse_formula("x<y")));
  REQUIRE(kernel_equal(parse_formula("x>=y"), parse_formula("y<=x")));
  REQUIRE(kernel_equal(parse_formula("<x:=1>P"), parse_formula("![x:=1](!P)")));
}
