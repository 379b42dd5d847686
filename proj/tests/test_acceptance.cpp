// fil :: acceptance gate — prints one verdict line per criterion
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fil/formula.hpp"
#include "fil/proof.hpp"
#include "fil/series.hpp"
#include "fil/synth.hpp"
#include "fil/veltman.hpp"
#include "w_mutants.hpp"

using namespace fil;

namespace {

using Clock = std::chrono::steady_clock;

double secs_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = false;
  std::string note;
  double seconds = 0;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---- criterion 1: fixture fidelity ----------------------------------------

Outcome c1_fixture() {
  Outcome o;
  auto t0 = Clock::now();
  std::string text = slurp(std::string(FIL_FIXTURE_DIR) + "/w_principle.fil");
  if (text.empty()) {
    o.note = "cannot read the fixture";
    return o;
  }
  Derivation base = parse_derivation(text);
  CheckReport rep = check(base);
  if (!rep.accepted || !rep.theorem ||
      !equal(rep.theorem->conclusion, parse("(a |> b) -> (a |> b & # ~a)")) ||
      !rep.theorem->context.empty()) {
    o.note = "fixture not accepted as a categorical proof of the principle";
    o.seconds = secs_since(t0);
    return o;
  }
  auto mutants = wmut::catalogue();
  int rejected = 0;
  for (std::size_t i = 0; i < mutants.size(); ++i) {
    Derivation d = parse_derivation(text);
    mutants[i](d);
    if (!check(d).accepted) {
      ++rejected;
    } else {
      o.note = "mutant " + std::to_string(i) + " was accepted";
      o.seconds = secs_since(t0);
      return o;
    }
  }
  o.seconds = secs_since(t0);
  o.pass = rejected == 30 && o.seconds < 1.0;
  o.note = std::to_string(rejected) + "/30 mutants rejected";
  if (o.seconds >= 1.0) o.note += "; over the 1 s budget";
  return o;
}

// ---- criteria 2-4: synthesis ----------------------------------------------

struct Bank {
  std::vector<std::pair<std::string, Derivation>> items;  // every accepted derivation
};

Outcome c2_principles(Bank& bank) {
  Outcome o;
  auto t0 = Clock::now();
  const std::pair<const char*, const char*> want[] = {
      {"W", "(a |> b) -> (a |> b & # ~a)"},
      {"M0", "(a |> b) -> (<>a & # c |> b & # c)"},
      {"R", "(a |> b) -> (~(a |> ~c) |> b & # c)"},
  };
  for (auto& [name, formula] : want) {
    auto t1 = Clock::now();
    Derivation d = name == std::string("W")    ? derive_W()
                   : name == std::string("M0") ? derive_M0()
                                               : derive_R();
    CheckReport rep = check(d);
    double dt = secs_since(t1);
    if (!rep.accepted || !rep.theorem || !rep.theorem->context.empty() ||
        !equal(rep.theorem->conclusion, parse(formula))) {
      o.note = std::string(name) + " failed the kernel or proves the wrong formula";
      o.seconds = secs_since(t0);
      return o;
    }
    if (dt >= 1.0) {
      o.note = std::string(name) + " took " + std::to_string(dt) + " s (budget 1 s)";
      o.seconds = secs_since(t0);
      return o;
    }
    bank.items.emplace_back(name, std::move(d));
  }
  o.seconds = secs_since(t0);
  o.pass = true;
  o.note = "W, M0, R each under 1 s";
  return o;
}

Outcome c_series(Bank& bank, const char* label, Derivation (*derive)(int),
                 FormulaPtr (*gen)(int)) {
  Outcome o;
  auto t0 = Clock::now();
  double last = 0;
  for (int n = 0; n <= 5; ++n) {
    auto t1 = Clock::now();
    Derivation d = derive(n);
    CheckReport rep = check(d);
    last = secs_since(t1);
    if (!rep.accepted || !rep.theorem || !rep.theorem->context.empty() ||
        !equal(rep.theorem->conclusion, gen(n))) {
      o.note = std::string(label) + "(" + std::to_string(n) + ") rejected or off-target";
      o.seconds = secs_since(t0);
      return o;
    }
    bank.items.emplace_back(std::string(label) + ":" + std::to_string(n), std::move(d));
  }
  o.seconds = secs_since(t0);
  o.pass = last < 10.0;
  o.note = "n = 0..5 accepted; n = 5 took " + std::to_string(last).substr(0, 4) + " s";
  if (!o.pass) o.note += " (budget 10 s)";
  return o;
}

// ---- criterion 5: generator ground truth ----------------------------------

Outcome c5_ground_truth() {
  Outcome o;
  auto t0 = Clock::now();
  const std::pair<FormulaPtr, const char*> table[] = {
      {gen_slim(0), "(a0 |> b0) -> (~(a0 |> ~c0) |> b0 & # c0)"},
      {gen_slim(1),
       "(a1 |> b1 & (a0 |> b0)) -> "
       "(~(a1 |> ~c1) & (e1 |> ~(a0 |> ~c0)) |> "
       "b1 & (a0 |> b0) & # c1 & (e1 |> a0) & (e1 |> b0 & # c0))"},
      {gen_broad(0), "(a |> b) -> (~(a |> ~c) |> b & # c)"},
      {gen_broad(1), "(a |> b) -> (<> ~(d1 |> ~c) & (d1 |> a) |> b & # c)"},
      {gen_broad(2),
       "(a |> b) -> (<>((d1 |> d2) & <> ~(d1 |> ~c)) & (d2 |> a) |> b & # c)"},
      {gen_X(0), "a0 |> b0"},
      {gen_Z(0), "b0 & # c0"},
      {gen_U(1), "<> ~(d1 |> ~c)"},
      {gen_V(1), "#(d1 |> ~c)"},
  };
  int hit = 0;
  for (auto& [got, want] : table) {
    if (equal(got, parse(want)))
      ++hit;
    else if (o.note.empty())
      o.note = std::string("mismatch against: ") + want;
  }
  o.seconds = secs_since(t0);
  o.pass = hit == 9;
  if (o.pass) o.note = "9/9 hand-transcribed displays matched";
  return o;
}

// ---- criterion 6: erasure -------------------------------------------------

Outcome c6_erasure(const Bank& bank) {
  Outcome o;
  auto t0 = Clock::now();
  if (bank.items.size() != 15) {
    o.note = "expected 15 stashed derivations, have " + std::to_string(bank.items.size());
    o.seconds = secs_since(t0);
    return o;
  }
  for (auto& [name, d] : bank.items) {
    CheckReport fil_rep = check(d);
    Derivation ilp = to_ilp(d);
    CheckReport rep = check(ilp);
    if (!rep.accepted || !rep.theorem ||
        !equal(rep.theorem->conclusion, erase_labels(fil_rep.theorem->conclusion)) ||
        !rep.theorem->context.empty()) {
      o.note = "erased " + name + " failed in ILP mode";
      o.seconds = secs_since(t0);
      return o;
    }
  }
  o.seconds = secs_since(t0);
  o.pass = true;
  o.note = "15/15 erased derivations accepted in ILP mode";
  return o;
}

// ---- criterion 7: semantic soundness smoke test ----------------------------

const char* const kAxiomInstances[40] = {
    // distribution
    "#(p -> q) -> (# p -> # q)",
    "#(p -> q & r) -> (# p -> #(q & r))",
    "#((p |> q) -> r) -> (#(p |> q) -> # r)",
    "#(~p -> q) -> (# ~p -> # q)",
    "#(p -> p | q) -> (# p -> #(p | q))",
    "#(q -> r) -> (# q -> # r)",
    // transitivity of the box
    "# p -> # # p",
    "# ~p -> # # ~p",
    "#(p & q) -> # #(p & q)",
    "#(p -> q) -> # #(p -> q)",
    // the fixed point of provability
    "#(# p -> p) -> # p",
    "#(# ~q -> ~q) -> # ~q",
    "#(#(p & r) -> (p & r)) -> #(p & r)",
    // from boxed implication to interpretability
    "#(p -> q) -> (p |> q)",
    "#(p & q -> p) -> (p & q |> p)",
    "#(~p -> p) -> (~p |> p)",
    "#(p -> q | r) -> (p |> q | r)",
    "#(false -> p) -> (false |> p)",
    "#(q -> q) -> (q |> q)",
    // transitivity of interpretability
    "(p |> q) & (q |> r) -> (p |> r)",
    "(p |> q & r) & (q & r |> p) -> (p |> p)",
    "(r |> p) & (p |> q) -> (r |> q)",
    "(p |> ~q) & (~q |> r) -> (p |> r)",
    // joining alternatives
    "(p |> r) & (q |> r) -> (p | q |> r)",
    "(p |> q) & (r |> q) -> (p | r |> q)",
    "(~p |> q) & (p |> q) -> (~p | p |> q)",
    "(p & q |> r) & (q |> r) -> ((p & q) | q |> r)",
    // interpretability refines consistency
    "(p |> q) -> (<> p -> <> q)",
    "(q |> r) -> (<> q -> <> r)",
    "(p & q |> r) -> (<>(p & q) -> <> r)",
    "(p |> q | r) -> (<> p -> <>(q | r))",
    "(r |> p) -> (<> r -> <> p)",
    // possible worlds interpret themselves
    "<> p |> p",
    "<> ~q |> ~q",
    "<>(p & q) |> p & q",
    "<> r |> r",
    // propositional shapes over modal atoms
    "(p |> q) | ~(p |> q)",
    "# p -> # p",
    "(p |> q) -> ((q |> r) -> (p |> q))",
    "p & (p -> q) -> q",
};

Outcome c7_soundness() {
  Outcome o;
  auto t0 = Clock::now();
  long frames = 0;
  for (const char* text : kAxiomInstances) {
    FormulaPtr f = parse(text);
    auto pv = prop_vars(f);
    std::vector<std::string> letters(pv.begin(), pv.end());
    for (int n = 1; n <= 4 && o.note.empty(); ++n) {
      enumerate_frames(n, [&](const Frame& fr) {
        ++frames;
        FrameResult r = frame_valid(fr, f, letters);
        if (r.status != FrameStatus::Valid) {
          o.note = std::string("falsified or out of budget: ") + text;
          return false;
        }
        return true;
      });
    }
    if (!o.note.empty()) break;
  }
  o.seconds = secs_since(t0);
  if (o.note.empty()) {
    o.pass = o.seconds < 300.0;
    std::ostringstream n;
    n << "40 instances over " << frames << " frame checks";
    if (!o.pass) n << "; over the 5 min budget";
    o.note = n.str();
  }
  return o;
}

// ---- criterion 8: separations ----------------------------------------------

// Loop-based re-evaluation, independent of the bitmask evaluator.
bool naive_eval(const VeltmanModel& m, int w, const FormulaPtr& f) {
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
      return !naive_eval(m, w, f->lhs);
    case Kind::And:
      return naive_eval(m, w, f->lhs) && naive_eval(m, w, f->rhs);
    case Kind::Or:
      return naive_eval(m, w, f->lhs) || naive_eval(m, w, f->rhs);
    case Kind::Impl:
      return !naive_eval(m, w, f->lhs) || naive_eval(m, w, f->rhs);
    case Kind::Box:
      for (int u = 0; u < m.n; ++u)
        if (((m.R[w] >> u) & 1u) && !naive_eval(m, u, f->lhs)) return false;
      return true;
    case Kind::Rhd:
      for (int u = 0; u < m.n; ++u) {
        if (!((m.R[w] >> u) & 1u) || !naive_eval(m, u, f->lhs)) continue;
        bool hit = false;
        for (int v = 0; v < m.n && !hit; ++v)
          if (((m.S[w][u] >> v) & 1u) && naive_eval(m, v, f->rhs)) hit = true;
        if (!hit) return false;
      }
      return true;
  }
  return false;
}

Outcome c8_separations() {
  Outcome o;
  auto t0 = Clock::now();
  struct Case {
    const char* name;
    const char* formula;
    int max_worlds;
  };
  const Case cases[] = {
      {"the first principle instance", "(p |> q) -> (p |> q & # ~p)", 5},
      {"the persistence instance", "(p |> q) -> #(p |> q)", 4},
  };
  for (const Case& c : cases) {
    FormulaPtr f = parse(c.formula);
    SearchBudget budget;
    budget.max_worlds = c.max_worlds;
    SearchResult r = countermodel_search(f, budget);
    if (r.status != SearchStatus::Found) {
      o.note = std::string("no countermodel for ") + c.name + " within budget";
      o.seconds = secs_since(t0);
      return o;
    }
    if (r.model.n > c.max_worlds || !check_wf(r.model) || r.world < 0 ||
        r.world >= r.model.n || naive_eval(r.model, r.world, f)) {
      o.note = std::string("countermodel for ") + c.name + " failed re-validation";
      o.seconds = secs_since(t0);
      return o;
    }
  }
  o.seconds = secs_since(t0);
  o.pass = true;
  o.note = "both countermodels found, well-formed, and independently re-checked";
  return o;
}

// ---- criterion 9: parser corpus --------------------------------------------

Label random_label(std::mt19937& g) {
  static const std::vector<Label> pool = {
      {}, {"k"}, {"j"}, {"l"}, {"k", "j"}, {"j", "l"}, {"l", "k"}, {"k", "j", "l"}};
  return pool[g() % pool.size()];
}

FormulaPtr random_formula(std::mt19937& g, int depth) {
  static const char* vars[] = {"p", "q", "r", "s"};
  int top = depth <= 0 ? 5 : 12;
  switch (g() % top) {
    case 0:
      return mk_top();
    case 1:
      return mk_bot();
    case 2:
    case 3:
    case 4:
      return mk_var(vars[g() % 4]);
    case 5:
      return mk_neg(random_formula(g, depth - 1));
    case 6: {
      auto l = random_formula(g, depth - 1);
      return mk_and(l, random_formula(g, depth - 1));
    }
    case 7: {
      auto l = random_formula(g, depth - 1);
      return mk_or(l, random_formula(g, depth - 1));
    }
    case 8: {
      auto l = random_formula(g, depth - 1);
      return mk_impl(l, random_formula(g, depth - 1));
    }
    case 9:
      return mk_box(random_label(g), random_formula(g, depth - 1));
    case 10:
      return mk_dia(random_label(g), random_formula(g, depth - 1));
    default: {
      auto l = random_formula(g, depth - 1);
      return mk_rhd(random_label(g), l, random_formula(g, depth - 1));
    }
  }
}

Outcome c9_round_trip() {
  Outcome o;
  auto t0 = Clock::now();
  std::vector<FormulaPtr> corpus;
  for (int n = 0; n <= 6; ++n) {
    corpus.push_back(gen_slim(n));
    corpus.push_back(gen_slim(n, true));
    corpus.push_back(gen_broad(n));
    corpus.push_back(gen_original(n));
    corpus.push_back(gen_X(n));
    corpus.push_back(gen_Y(n));
    corpus.push_back(gen_Z(n));
  }
  for (int n = 1; n <= 6; ++n) {
    corpus.push_back(gen_U(n));
    corpus.push_back(gen_V(n));
  }
  std::size_t series_count = corpus.size();
  std::mt19937 g(12345);
  for (int i = 0; i < 200; ++i) corpus.push_back(random_formula(g, 4));
  long ok = 0;
  for (const auto& f : corpus) {
    std::string once = print(f);
    FormulaPtr back;
    try {
      back = parse(once);
    } catch (const ParseError&) {
      o.note = "printed form failed to parse: " + once.substr(0, 60);
      break;
    }
    if (equal(back, f) && print(back) == once)
      ++ok;
    else if (o.note.empty()) {
      o.note = "round trip moved: " + once.substr(0, 60);
      break;
    }
  }
  o.seconds = secs_since(t0);
  o.pass = ok == static_cast<long>(corpus.size());
  if (o.pass) {
    std::ostringstream n;
    n << series_count << " series formulas + 200 random formulas stable";
    o.note = n.str();
  }
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  Bank bank;
  auto report = [&](int idx, const char* name, const Outcome& o) {
    std::cout << "criterion " << idx << ": " << (o.pass ? "PASS" : "FAIL") << " — " << name
              << " (" << std::fixed << std::setprecision(2) << o.seconds << " s";
    if (!o.note.empty()) std::cout << "; " << o.note;
    std::cout << ")" << std::endl;
    if (!o.pass) ++failures;
  };
  auto guarded = [](auto&& fn) -> Outcome {
    try {
      return fn();
    } catch (const std::exception& e) {
      Outcome o;
      o.note = std::string("exception: ") + e.what();
      return o;
    }
  };
  report(1, "fixture fidelity", guarded([] { return c1_fixture(); }));
  report(2, "principle synthesis", guarded([&] { return c2_principles(bank); }));
  report(3, "slim series synthesis",
         guarded([&] { return c_series(bank, "slim", derive_slim, +[](int n) {
                         return gen_slim(n, false);
                       }); }));
  report(4, "broad series synthesis",
         guarded([&] { return c_series(bank, "broad", derive_broad, gen_broad); }));
  report(5, "generator ground truth", guarded([] { return c5_ground_truth(); }));
  report(6, "erasure oracle", guarded([&] { return c6_erasure(bank); }));
  report(7, "semantic soundness smoke test", guarded([] { return c7_soundness(); }));
  report(8, "separations", guarded([] { return c8_separations(); }));
  report(9, "parser corpus round trip", guarded([] { return c9_round_trip(); }));
  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all 9 criteria passed" << std::endl;
  return 0;
}
