// Formula layer: parsing, printing, labels, structural operations.
#include <random>

#include "doctest.h"
#include "fil/formula.hpp"

using namespace fil;

static FormulaPtr rt(const std::string& s) { return parse(s); }

TEST_CASE("atoms and constants") {
  CHECK(rt("p")->kind == Kind::Var);
  CHECK(rt("true")->kind == Kind::Top);
  CHECK(rt("false")->kind == Kind::Bot);
  CHECK(rt("p")->name == "p");
  CHECK(print(rt("true")) == "true");
}

TEST_CASE("precedence and associativity") {
  CHECK(print(rt("a -> b -> c")) == "a -> b -> c");
  CHECK(equal(rt("a -> b -> c"), mk_impl(mk_var("a"), mk_impl(mk_var("b"), mk_var("c")))));
  CHECK(print(rt("(a -> b) -> c")) == "(a -> b) -> c");
  CHECK(equal(rt("a & b \\/ c"), mk_or(mk_and(mk_var("a"), mk_var("b")), mk_var("c"))));
  CHECK(equal(rt("a | b"), rt("a \\/ b")));
  CHECK(equal(rt("~a & b"), mk_and(mk_neg(mk_var("a")), mk_var("b"))));
  CHECK(equal(rt("a & b & c"), mk_and(mk_and(mk_var("a"), mk_var("b")), mk_var("c"))));
  CHECK(print(rt("a & (b & c)")) == "a & (b & c)");
  CHECK(equal(rt("a \\/ b |> c -> d"),
              mk_impl(mk_rhd({}, mk_or(mk_var("a"), mk_var("b")), mk_var("c")),
                      mk_var("d"))));
}

TEST_CASE("rhd is non-associative") {
  CHECK_THROWS_AS(rt("a |> b |> c"), ParseError);
  CHECK(print(rt("a |> (b |> c)")) == "a |> (b |> c)");
  CHECK(print(rt("(a |> b) |> c")) == "(a |> b) |> c");
}

TEST_CASE("labels parse and normalize") {
  FormulaPtr f = rt("#[k] p");
  CHECK(f->kind == Kind::Box);
  CHECK(f->label == Label{"k"});
  CHECK(equal(rt("#[id] p"), rt("# p")));
  CHECK(equal(rt("#[] p"), rt("# p")));
  CHECK(equal(rt("a |>[id] b"), rt("a |> b")));
  CHECK(rt("a |>[k,j] b")->label == Label({"k", "j"}));
  CHECK_THROWS_AS(rt("#[k,k] p"), ParseError);
  CHECK_THROWS_AS(rt("#[k,id] p"), ParseError);
  CHECK_THROWS_AS(rt("#[id,k] p"), ParseError);
  CHECK_THROWS_AS(rt("#[id,id] p"), ParseError);
}

TEST_CASE("diamond is sugar for ~#~") {
  CHECK(equal(rt("<> p"), rt("~# ~p")));
  CHECK(equal(rt("<>[k] p"), mk_neg(mk_box({"k"}, mk_neg(mk_var("p"))))));
  CHECK(print(rt("~#[k] ~p")) == "<>[k] p");
  CHECK(print(rt("<> <> p")) == "<> <> p");
  CHECK(print(mk_dia({}, mk_neg(mk_var("c")))) == "<> ~c");
}

TEST_CASE("parse errors carry position") {
  try {
    rt("a &\n& b");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.col == 1);
  }
  CHECK_THROWS_AS(rt(""), ParseError);
  CHECK_THROWS_AS(rt("a -> "), ParseError);
  CHECK_THROWS_AS(rt("a <- b"), ParseError);
  CHECK_THROWS_AS(rt("(a"), ParseError);
  CHECK_THROWS_AS(rt("a)"), ParseError);
  CHECK_THROWS_AS(rt("#[k p"), ParseError);
}

TEST_CASE("comments are skipped") {
  CHECK(equal(rt("a % trailing\n& b"), rt("a & b")));
}

TEST_CASE("erase_labels strips every label") {
  FormulaPtr f = rt("#[k] (a |>[k,j] b) -> <>[j] c");
  FormulaPtr e = erase_labels(f);
  CHECK(interp_vars(e).empty());
  CHECK(equal(e, rt("# (a |> b) -> <> c")));
  CHECK(equal(erase_labels(e), e));
}

TEST_CASE("interp_vars and prop_vars") {
  FormulaPtr f = rt("#[k] (a |>[k,j] b) -> <>[m] c");
  CHECK(interp_vars(f) == std::set<std::string>({"k", "j", "m"}));
  CHECK(prop_vars(f) == std::set<std::string>({"a", "b", "c"}));
}

TEST_CASE("replace_subformula is top-down and does not rescan") {
  FormulaPtr a = mk_var("a");
  // a := a & b everywhere: the inserted a is untouched
  FormulaPtr f = rt("a -> a");
  FormulaPtr g = replace_subformula(f, a, mk_and(a, mk_var("b")));
  CHECK(print(g) == "a & b -> a & b");
  // whole-match precedence: replacing a & b inside (a & b) & c
  FormulaPtr h = replace_subformula(rt("(a & b) & c"), rt("a & b"), mk_var("x"));
  CHECK(print(h) == "x & c");
}

TEST_CASE("structural order is total and consistent") {
  FormulaPtr xs[] = {rt("a"), rt("b"), rt("true"), rt("a & b"), rt("#[k] a"),
                     rt("# a"), rt("a |> b"), rt("a |>[k] b")};
  for (auto& x : xs)
    for (auto& y : xs) {
      int c = cmp(x, y), d = cmp(y, x);
      CHECK(c == -d);
      CHECK((c == 0) == equal(x, y));
    }
}

// Seeded random well-formed formula generator for round-trip checks.
static FormulaPtr random_formula(std::mt19937& rng, int depth) {
  static const char* vars[] = {"p", "q", "r", "a", "b", "c"};
  static const Label labels[] = {{}, {"k"}, {"j"}, {"k", "j"}};
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 8);
  switch (pick(rng)) {
    case 0:
    case 1:
      return mk_var(vars[rng() % 6]);
    case 2:
      return rng() % 2 ? mk_top() : mk_bot();
    case 3:
      return mk_neg(random_formula(rng, depth - 1));
    case 4:
      return mk_and(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5:
      return mk_or(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 6:
      return mk_impl(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 7:
      return rng() % 2 ? mk_box(labels[rng() % 4], random_formula(rng, depth - 1))
                       : mk_dia(labels[rng() % 4], random_formula(rng, depth - 1));
    default:
      return mk_rhd(labels[rng() % 4], random_formula(rng, depth - 1),
                    random_formula(rng, depth - 1));
  }
}

TEST_CASE("parse/print round trip on 200 random formulas") {
  std::mt19937 rng(20260818);
  for (int i = 0; i < 200; ++i) {
    FormulaPtr f = random_formula(rng, 5);
    FormulaPtr g = parse(print(f));
    CHECK(equal(f, g));
    CHECK(print(g) == print(f));
  }
}
