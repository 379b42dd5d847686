// fil :: tests for finite-model semantics and countermodel search
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "fil/formula.hpp"
#include "fil/veltman.hpp"

using namespace fil;

namespace {

FormulaPtr ff(const std::string& s) { return parse(s); }

// Reference semantics written with plain loops, independent of the bitmask
// evaluator under test.
bool oracle(const VeltmanModel& m, int w, const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::Var: {
      auto it = m.val.find(f->name);
      return it != m.val.end() && ((it->second >> w) & 1u);
    }
    case Kind::Top:
      return true;
    case Kind::Bot:
      return false;
    case Kind::Neg:
      return !oracle(m, w, f->lhs);
    case Kind::And:
      return oracle(m, w, f->lhs) && oracle(m, w, f->rhs);
    case Kind::Or:
      return oracle(m, w, f->lhs) || oracle(m, w, f->rhs);
    case Kind::Impl:
      return !oracle(m, w, f->lhs) || oracle(m, w, f->rhs);
    case Kind::Box: {
      REQUIRE(f->label.empty());
      for (int u = 0; u < m.n; ++u)
        if (((m.R[w] >> u) & 1u) && !oracle(m, u, f->lhs)) return false;
      return true;
    }
    case Kind::Rhd: {
      REQUIRE(f->label.empty());
      for (int u = 0; u < m.n; ++u) {
        if (!((m.R[w] >> u) & 1u) || !oracle(m, u, f->lhs)) continue;
        bool hit = false;
        for (int v = 0; v < m.n && !hit; ++v)
          if (((m.S[w][u] >> v) & 1u) && oracle(m, v, f->rhs)) hit = true;
        if (!hit) return false;
      }
      return true;
    }
  }
  return false;
}

VeltmanModel model_w_counter() {
  return parse_model(
      "worlds 4\n"
      "R: 0 1\nR: 0 2\nR: 0 3\nR: 2 3\n"
      "S 0: 1 1\nS 0: 2 2\nS 0: 3 3\n"
      "S 0: 1 2\nS 0: 2 3\nS 0: 1 3\nS 0: 3 2\n"
      "S 2: 3 3\n"
      "val p: 1 3\nval q: 2\n");
}

VeltmanModel model_p_counter() {
  return parse_model(
      "worlds 3\n"
      "R: 0 1\nR: 1 2\nR: 0 2\n"
      "S 0: 1 1\nS 0: 2 2\nS 0: 1 2\nS 0: 2 1\n"
      "S 1: 2 2\n"
      "val p: 2\nval q: 1\n");
}

void cross_check(const VeltmanModel& m, const FormulaPtr& f) {
  std::uint32_t bits = eval_all(m, f);
  for (int w = 0; w < m.n; ++w) {
    CAPTURE(w);
    CHECK(((bits >> w) & 1u) == static_cast<unsigned>(oracle(m, w, f)));
    CHECK(eval(m, w, f) == oracle(m, w, f));
  }
}

}  // namespace

TEST_CASE("single reflexive-free world is well-formed") {
  VeltmanModel m = parse_model("worlds 1\n");
  CHECK(check_wf(m));
  CHECK(eval(m, 0, ff("# false")));     // no successors
  CHECK(eval(m, 0, ff("p |> q")));      // vacuous
  CHECK_FALSE(eval(m, 0, ff("<> true")));
}

TEST_CASE("well-formedness violations are caught") {
  // missing S-reflexivity on an R-successor
  VeltmanModel m = parse_model("worlds 2\nR: 0 1\n");
  CHECK_FALSE(check_wf(m));
  m = parse_model("worlds 2\nR: 0 1\nS 0: 1 1\n");
  CHECK(check_wf(m));
  // reflexive R
  CHECK_FALSE(check_wf(parse_model("worlds 2\nR: 0 0\n")));
  // intransitive R
  CHECK_FALSE(check_wf(
      parse_model("worlds 3\nR: 0 1\nR: 1 2\nS 0: 1 1\nS 1: 2 2\n")));
  // S pair outside R[w] x R[w]
  CHECK_FALSE(check_wf(parse_model("worlds 2\nR: 0 1\nS 0: 1 1\nS 1: 0 0\n")));
  // intransitive S
  CHECK_FALSE(check_wf(parse_model(
      "worlds 4\nR: 0 1\nR: 0 2\nR: 0 3\n"
      "S 0: 1 1\nS 0: 2 2\nS 0: 3 3\nS 0: 1 2\nS 0: 2 3\n")));
  // wRuRv without u S_w v
  CHECK_FALSE(check_wf(parse_model(
      "worlds 3\nR: 0 1\nR: 1 2\nR: 0 2\nS 0: 1 1\nS 0: 2 2\nS 1: 2 2\n")));
}

TEST_CASE("hand-built countermodels are well-formed and behave as designed") {
  VeltmanModel mw = model_w_counter();
  REQUIRE(check_wf(mw));
  CHECK(oracle(mw, 0, ff("p |> q")));
  CHECK_FALSE(oracle(mw, 0, ff("p |> q & # ~p")));
  CHECK_FALSE(eval(mw, 0, ff("(p |> q) -> (p |> q & # ~p)")));

  VeltmanModel mp = model_p_counter();
  REQUIRE(check_wf(mp));
  CHECK(oracle(mp, 0, ff("p |> q")));
  CHECK_FALSE(oracle(mp, 0, ff("#(p |> q)")));
  CHECK_FALSE(eval(mp, 0, ff("(p |> q) -> #(p |> q)")));
}

TEST_CASE("bitmask evaluator agrees with the loop oracle") {
  std::vector<FormulaPtr> fs = {
      ff("p"),           ff("~p | q"),          ff("# p"),
      ff("<> p"),        ff("p |> q"),          ff("(p |> q) -> (p |> q & # ~p)"),
      ff("# (p -> q)"),  ff("p & q |> p | q"),  ff("# # p"),
      ff("(p |> q) -> #(p |> q)"),              ff("<>(p & ~q) |> q"),
      ff("true |> false"),
  };
  for (const auto& m : {model_w_counter(), model_p_counter()})
    for (const auto& f : fs) cross_check(m, f);
}

TEST_CASE("labels have no finite-model reading") {
  VeltmanModel m = parse_model("worlds 1\n");
  CHECK_THROWS_AS(eval(m, 0, ff("#[k] p")), std::invalid_argument);
  CHECK_THROWS_AS(eval(m, 0, ff("p |>[k] q")), std::invalid_argument);
  CHECK_THROWS_AS(eval(m, 5, ff("p")), std::invalid_argument);
}

TEST_CASE("model text round trips") {
  for (const auto& m : {model_w_counter(), model_p_counter()}) {
    std::string text = format_model(m);
    VeltmanModel back = parse_model(text);
    CHECK(back.n == m.n);
    CHECK(back.R == m.R);
    CHECK(back.S == m.S);
    CHECK(back.val == m.val);
    CHECK(format_model(back) == text);
  }
}

TEST_CASE("model parser rejects malformed input") {
  CHECK_THROWS_AS(parse_model(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("R: 0 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("worlds 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("worlds 33\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("worlds 2\nR: 0 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("worlds 2\nR: 0\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("worlds 2\nS 0 1 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("worlds 2\nworlds 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_model("worlds 2\nfrobnicate\n"), std::invalid_argument);
}

TEST_CASE("frame enumeration counts match the strict poset census") {
  // distinct transitive irreflexive R masks on n labeled worlds
  const long expected[] = {1, 3, 19, 219};
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    std::set<std::vector<std::uint32_t>> rs;
    long frames = 0;
    enumerate_frames(n, [&](const Frame& fr) {
      ++frames;
      rs.insert(fr.R);
      VeltmanModel m;
      m.n = fr.n;
      m.R = fr.R;
      m.S = fr.S;
      if (frames % 97 == 0) CHECK(check_wf(m));
      return true;
    });
    CHECK(static_cast<long>(rs.size()) == expected[n - 1]);
    CHECK(frames >= static_cast<long>(rs.size()));
  }
  CHECK_THROWS_AS(enumerate_frames(0, [](const Frame&) { return true; }),
                  std::domain_error);
  CHECK_THROWS_AS(enumerate_frames(6, [](const Frame&) { return true; }),
                  std::domain_error);
}

TEST_CASE("enumeration is deterministic and stops on request") {
  std::vector<std::string> first;
  for (int round = 0; round < 2; ++round) {
    std::vector<std::string> sig;
    enumerate_frames(3, [&](const Frame& fr) {
      VeltmanModel m;
      m.n = fr.n;
      m.R = fr.R;
      m.S = fr.S;
      sig.push_back(format_model(m));
      return true;
    });
    CHECK(sig.size() == 34);  // every well-formed three-world frame
    if (round == 0)
      first = sig;
    else
      CHECK(first == sig);
  }
  int seen = 0;
  enumerate_frames(3, [&](const Frame&) { return ++seen < 20; });
  CHECK(seen == 20);
}

TEST_CASE("growing S preserves interpretability facts") {
  VeltmanModel m = model_w_counter();
  FormulaPtr f = ff("p |> q");
  REQUIRE(eval(m, 0, f));
  VeltmanModel big = m;
  for (int w = 0; w < big.n; ++w)
    for (int u = 0; u < big.n; ++u)
      if ((big.R[w] >> u) & 1u) big.S[w][u] = big.R[w];
  REQUIRE(check_wf(big));
  CHECK(eval(big, 0, f));  // more S-options can only help the |> clause
}

TEST_CASE("frame validity classifies and reports the lowest world") {
  Frame fr;
  fr.n = 2;
  fr.R = {2u, 0u};  // 0 R 1
  fr.S = {{0u, 2u}, {0u, 0u}};
  FrameResult r = frame_valid(fr, ff("# p -> p"), {"p"});
  REQUIRE(r.status == FrameStatus::Falsified);
  // first valuation in code order is p = {}; the end world then refutes #p -> p
  CHECK(r.world == 1);
  CHECK(check_wf(r.model));
  CHECK_FALSE(oracle(r.model, r.world, ff("# p -> p")));

  CHECK(frame_valid(fr, ff("# p -> # # p"), {"p"}).status == FrameStatus::Valid);
  CHECK(frame_valid(fr, ff("p -> p"), {"p", "q", "r"}, 8).status ==
        FrameStatus::BudgetExceeded);
}

TEST_CASE("countermodel search finds the known separations") {
  SearchBudget wide;
  wide.max_worlds = 5;
  SearchResult w = countermodel_search(ff("(p |> q) -> (p |> q & # ~p)"), wide);
  REQUIRE(w.status == SearchStatus::Found);
  CHECK(check_wf(w.model));
  CHECK(w.model.n <= 5);
  REQUIRE(w.world >= 0);
  CHECK_FALSE(oracle(w.model, w.world, ff("(p |> q) -> (p |> q & # ~p)")));

  SearchResult p = countermodel_search(ff("(p |> q) -> #(p |> q)"), {});
  REQUIRE(p.status == SearchStatus::Found);
  CHECK(check_wf(p.model));
  CHECK(p.model.n <= 4);
  REQUIRE(p.world >= 0);
  CHECK_FALSE(oracle(p.model, p.world, ff("(p |> q) -> #(p |> q)")));
}

TEST_CASE("search is deterministic") {
  SearchResult a = countermodel_search(ff("(p |> q) -> #(p |> q)"), {});
  SearchResult b = countermodel_search(ff("(p |> q) -> #(p |> q)"), {});
  REQUIRE(a.status == SearchStatus::Found);
  REQUIRE(b.status == SearchStatus::Found);
  CHECK(format_model(a.model) == format_model(b.model));
  CHECK(a.world == b.world);
}

TEST_CASE("valid principles pass the budgeted sweep") {
  CHECK(countermodel_search(ff("p -> p"), {}).status ==
        SearchStatus::ValidWithinBudget);
  CHECK(countermodel_search(ff("#(p -> q) -> (# p -> # q)"), {}).status ==
        SearchStatus::ValidWithinBudget);
  CHECK(countermodel_search(ff("(p |> q) & (q |> r) -> (p |> r)"), {}).status ==
        SearchStatus::ValidWithinBudget);
}

TEST_CASE("budget edges are reported, not silently clipped") {
  CHECK(countermodel_search(ff("p1 & p2 & p3 & p4 -> p1"), {}).status ==
        SearchStatus::BudgetExceeded);
  SearchBudget six;
  six.max_worlds = 6;
  CHECK(countermodel_search(ff("p -> p"), six).status ==
        SearchStatus::BudgetExceeded);
  CHECK_THROWS_AS(countermodel_search(ff("p"), {0, 3}), std::invalid_argument);
  CHECK_THROWS_AS(countermodel_search(ff("p |>[k] q"), {}),
                  std::invalid_argument);
}
