// fil :: proof kernel — schema matching, tautology checking, line-by-line audit
#include "fil/proof.hpp"

#include <algorithm>

namespace fil {

const char* schema_name(Schema s) {
  switch (s) {
    case Schema::L1: return "L1";
    case Schema::L2: return "L2";
    case Schema::L3: return "L3";
    case Schema::J1: return "J1";
    case Schema::J2a: return "J2a";
    case Schema::J2b: return "J2b";
    case Schema::J3: return "J3";
    case Schema::J4: return "J4";
    case Schema::J5: return "J5";
    case Schema::BoxDrop: return "BoxDrop";
    case Schema::RhdExtend: return "RhdExtend";
    case Schema::P: return "P";
  }
  return "?";
}

std::optional<Schema> schema_by_name(const std::string& s) {
  static const std::pair<const char*, Schema> table[] = {
      {"L1", Schema::L1},   {"L2", Schema::L2},
      {"L3", Schema::L3},   {"J1", Schema::J1},
      {"J2a", Schema::J2a}, {"J2b", Schema::J2b},
      {"J3", Schema::J3},   {"J4", Schema::J4},
      {"J5", Schema::J5},   {"BoxDrop", Schema::BoxDrop},
      {"RhdExtend", Schema::RhdExtend}, {"P", Schema::P}};
  for (auto& [n, v] : table)
    if (s == n) return v;
  return std::nullopt;
}

bool schema_allowed(Mode m, Schema s) {
  if (m == Mode::FIL) return s != Schema::P;
  return s != Schema::BoxDrop && s != Schema::RhdExtend;
}

namespace {

bool is_box(const FormulaPtr& f) { return f->kind == Kind::Box; }
bool is_rhd(const FormulaPtr& f) { return f->kind == Kind::Rhd; }
bool is_impl(const FormulaPtr& f) { return f->kind == Kind::Impl; }
bool is_and(const FormulaPtr& f) { return f->kind == Kind::And; }

// a·k decomposition: drop == ext + one trailing variable.
bool extends_by_one(const Label& shorter, const Label& longer) {
  return longer.size() == shorter.size() + 1 &&
         std::equal(shorter.begin(), shorter.end(), longer.begin());
}

}  // namespace

bool match_axiom(Schema s, const FormulaPtr& f) {
  if (!is_impl(f)) return false;
  const FormulaPtr &l = f->lhs, &r = f->rhs;
  switch (s) {
    case Schema::L1: {
      // #^a(A->B) -> (#^a A -> #^a B)
      if (!is_box(l) || !is_impl(l->lhs) || !is_impl(r)) return false;
      const FormulaPtr &ra = r->lhs, &rb = r->rhs;
      if (!is_box(ra) || !is_box(rb)) return false;
      return l->label == ra->label && l->label == rb->label &&
             equal(l->lhs->lhs, ra->lhs) && equal(l->lhs->rhs, rb->lhs);
    }
    case Schema::L2: {
      // #^a A -> #^b #^a A
      if (!is_box(l) || !is_box(r) || !is_box(r->lhs)) return false;
      return r->lhs->label == l->label && equal(r->lhs->lhs, l->lhs);
    }
    case Schema::L3: {
      // #^a(#^a A -> A) -> #^a A
      if (!is_box(l) || !is_impl(l->lhs) || !is_box(r)) return false;
      const FormulaPtr& inner = l->lhs;
      if (!is_box(inner->lhs)) return false;
      return l->label == r->label && inner->lhs->label == l->label &&
             equal(inner->lhs->lhs, inner->rhs) && equal(inner->rhs, r->lhs);
    }
    case Schema::J1: {
      // #^a(A->B) -> (A |>^a B)
      if (!is_box(l) || !is_impl(l->lhs) || !is_rhd(r)) return false;
      return l->label == r->label && equal(l->lhs->lhs, r->lhs) &&
             equal(l->lhs->rhs, r->rhs);
    }
    case Schema::J2a: {
      // (A |> B) & (B |>^a C) -> (A |>^a C); the first conjunct is unlabeled
      if (!is_and(l) || !is_rhd(l->lhs) || !is_rhd(l->rhs) || !is_rhd(r)) return false;
      const FormulaPtr &ab = l->lhs, &bc = l->rhs;
      return ab->label.empty() && bc->label == r->label && equal(ab->rhs, bc->lhs) &&
             equal(ab->lhs, r->lhs) && equal(bc->rhs, r->rhs);
    }
    case Schema::J2b: {
      // (A |>^a B) & #^a(B->C) -> (A |>^a C)
      if (!is_and(l) || !is_rhd(l->lhs) || !is_box(l->rhs) || !is_impl(l->rhs->lhs) ||
          !is_rhd(r))
        return false;
      const FormulaPtr &ab = l->lhs, &bx = l->rhs;
      return ab->label == bx->label && ab->label == r->label &&
             equal(bx->lhs->lhs, ab->rhs) && equal(ab->lhs, r->lhs) &&
             equal(bx->lhs->rhs, r->rhs);
    }
    case Schema::J3: {
      // (A |>^a C) & (B |>^a C) -> (A \/ B |>^a C)
      if (!is_and(l) || !is_rhd(l->lhs) || !is_rhd(l->rhs) || !is_rhd(r)) return false;
      const FormulaPtr &ac = l->lhs, &bc = l->rhs;
      if (ac->label != bc->label || ac->label != r->label) return false;
      if (r->lhs->kind != Kind::Or) return false;
      return equal(ac->rhs, bc->rhs) && equal(ac->rhs, r->rhs) &&
             equal(r->lhs->lhs, ac->lhs) && equal(r->lhs->rhs, bc->lhs);
    }
    case Schema::J4: {
      // (A |>^a B) -> (<>A -> <>^a B)
      if (!is_rhd(l) || !is_impl(r)) return false;
      Label da, db;
      FormulaPtr ia, ib;
      if (!is_diamond(r->lhs, &da, &ia) || !is_diamond(r->rhs, &db, &ib)) return false;
      return da.empty() && db == l->label && equal(ia, l->lhs) && equal(ib, l->rhs);
    }
    case Schema::J5: {
      // (A |>^a <>^b B) -> (A |>^b B)
      if (!is_rhd(l) || !is_rhd(r)) return false;
      Label db;
      FormulaPtr ib;
      if (!is_diamond(l->rhs, &db, &ib)) return false;
      return db == r->label && equal(l->lhs, r->lhs) && equal(ib, r->rhs);
    }
    case Schema::BoxDrop: {
      // #^{a·k} A -> #^a A
      if (!is_box(l) || !is_box(r)) return false;
      return extends_by_one(r->label, l->label) && equal(l->lhs, r->lhs);
    }
    case Schema::RhdExtend: {
      // (A |>^a B) -> (A |>^{a·k} B)
      if (!is_rhd(l) || !is_rhd(r)) return false;
      return extends_by_one(l->label, r->label) && equal(l->lhs, r->lhs) &&
             equal(l->rhs, r->rhs);
    }
    case Schema::P: {
      // (A |> B) -> #(A |> B), everything unlabeled
      if (!is_rhd(l) || !is_box(r) || !is_rhd(r->lhs)) return false;
      return l->label.empty() && r->label.empty() && r->lhs->label.empty() &&
             equal(r->lhs->lhs, l->lhs) && equal(r->lhs->rhs, l->rhs);
    }
  }
  return false;
}

namespace {

void collect_atoms(const FormulaPtr& f, std::vector<FormulaPtr>& atoms) {
  switch (f->kind) {
    case Kind::Var:
    case Kind::Box:
    case Kind::Rhd: {
      for (auto& a : atoms)
        if (equal(a, f)) return;
      atoms.push_back(f);
      return;
    }
    case Kind::Top:
    case Kind::Bot:
      return;
    default:
      if (f->lhs) collect_atoms(f->lhs, atoms);
      if (f->rhs) collect_atoms(f->rhs, atoms);
  }
}

bool eval_bool(const FormulaPtr& f, const std::vector<FormulaPtr>& atoms,
               unsigned mask) {
  switch (f->kind) {
    case Kind::Top: return true;
    case Kind::Bot: return false;
    case Kind::Neg: return !eval_bool(f->lhs, atoms, mask);
    case Kind::And: return eval_bool(f->lhs, atoms, mask) && eval_bool(f->rhs, atoms, mask);
    case Kind::Or: return eval_bool(f->lhs, atoms, mask) || eval_bool(f->rhs, atoms, mask);
    case Kind::Impl:
      return !eval_bool(f->lhs, atoms, mask) || eval_bool(f->rhs, atoms, mask);
    default:
      for (std::size_t i = 0; i < atoms.size(); ++i)
        if (equal(atoms[i], f)) return (mask >> i) & 1u;
      return false;  // unreachable: every modal atom was collected
  }
}

constexpr std::size_t kTautAtomCap = 24;

}  // namespace

bool taut_check(const FormulaPtr& f) {
  std::vector<FormulaPtr> atoms;
  collect_atoms(f, atoms);
  if (atoms.size() > kTautAtomCap) return false;  // refuse rather than hang: sound
  unsigned total = 1u << atoms.size();
  for (unsigned m = 0; m < total; ++m)
    if (!eval_bool(f, atoms, m)) return false;
  return true;
}

Context canon_context(Context ctx) {
  std::sort(ctx.begin(), ctx.end(), [](const FormulaPtr& a, const FormulaPtr& b) {
    return less(a, b);
  });
  return ctx;
}

bool context_equal(const Context& a, const Context& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equal(a[i], b[i])) return false;
  return true;
}

bool context_member(const Context& ctx, const FormulaPtr& f) {
  for (auto& g : ctx)
    if (equal(g, f)) return true;
  return false;
}

Context context_add(const Context& ctx, const FormulaPtr& f) {
  Context out = ctx;
  out.push_back(f);
  return canon_context(std::move(out));
}

std::optional<Context> context_remove(const Context& ctx, const FormulaPtr& f) {
  for (std::size_t i = 0; i < ctx.size(); ++i)
    if (equal(ctx[i], f)) {
      Context out = ctx;
      out.erase(out.begin() + static_cast<long>(i));
      return out;  // still sorted
    }
  return std::nullopt;
}

bool judgment_equal(const Judgment& a, const Judgment& b) {
  return equal(a.conclusion, b.conclusion) && context_equal(a.context, b.context);
}

namespace {

bool label_free(const FormulaPtr& f) { return interp_vars(f).empty(); }

struct Checker {
  const Derivation& d;
  CheckReport rep;
  std::map<long, std::size_t> by_index;

  void err(long index, std::string code, std::string detail) {
    rep.errors.push_back({index, std::move(code), std::move(detail)});
  }

  const Line* ref(const Line& at, long want) {
    auto it = by_index.find(want);
    if (it == by_index.end() || d.lines[it->second].index >= at.index) {
      err(at.index, "BadReference", "line " + std::to_string(want) + " not available");
      return nullptr;
    }
    return &d.lines[it->second];
  }

  bool check_line(const Line& ln) {
    const Judgment& cur = ln.judgment;
    const Justification& js = ln.just;
    switch (js.tag) {
      case Justification::Tag::Assume:
        if (!context_member(cur.context, cur.conclusion)) {
          err(ln.index, "ContextMismatch", "conclusion is not among the hypotheses");
          return false;
        }
        return true;

      case Justification::Tag::Taut:
        if (!taut_check(cur.conclusion)) {
          err(ln.index, "TautologyFailure", print(cur.conclusion));
          return false;
        }
        return true;

      case Justification::Tag::Ax: {
        if (!schema_allowed(d.mode, js.schema)) {
          err(ln.index, "SchemaMismatch",
              std::string(schema_name(js.schema)) + " is not available in this mode");
          return false;
        }
        if (!match_axiom(js.schema, cur.conclusion)) {
          err(ln.index, "SchemaMismatch",
              "not an instance of " + std::string(schema_name(js.schema)));
          return false;
        }
        return true;
      }

      case Justification::Tag::MP: {
        const Line* li = ref(ln, js.i);
        const Line* lj = ref(ln, js.j);
        if (!li || !lj) return false;
        if (!context_equal(li->judgment.context, cur.context) ||
            !context_equal(lj->judgment.context, cur.context)) {
          err(ln.index, "ContextMismatch", "mp premises must share this line's hypotheses");
          return false;
        }
        const FormulaPtr& imp = li->judgment.conclusion;
        if (imp->kind != Kind::Impl || !equal(imp->lhs, lj->judgment.conclusion) ||
            !equal(imp->rhs, cur.conclusion)) {
          err(ln.index, "SchemaMismatch", "mp premises do not fit the conclusion");
          return false;
        }
        return true;
      }

      case Justification::Tag::Nec: {
        if (!label_ok(js.a)) {
          err(ln.index, "LabelViolation", "bad label " + label_str(js.a));
          return false;
        }
        if (d.mode == Mode::ILP && !js.a.empty()) {
          err(ln.index, "LabelViolation", "nec label must be empty in this mode");
          return false;
        }
        const Line* li = ref(ln, js.i);
        if (!li) return false;
        if (!li->judgment.context.empty()) {
          err(ln.index, "ContextMismatch", "nec premise must have no hypotheses");
          return false;
        }
        const FormulaPtr& c = cur.conclusion;
        if (c->kind != Kind::Box || c->label != js.a ||
            !equal(c->lhs, li->judgment.conclusion)) {
          err(ln.index, "SchemaMismatch", "conclusion is not the boxed premise");
          return false;
        }
        return true;
      }

      case Justification::Tag::DedIn: {
        const Line* li = ref(ln, js.i);
        if (!li) return false;
        const FormulaPtr& imp = li->judgment.conclusion;
        if (imp->kind != Kind::Impl) {
          err(ln.index, "SchemaMismatch", "ded-in premise must conclude an implication");
          return false;
        }
        if (!equal(imp->rhs, cur.conclusion) ||
            !context_equal(cur.context, context_add(li->judgment.context, imp->lhs))) {
          err(ln.index, "ContextMismatch", "ded-in does not fit the stated judgment");
          return false;
        }
        return true;
      }

      case Justification::Tag::DedOut: {
        const Line* li = ref(ln, js.i);
        if (!li) return false;
        const FormulaPtr& c = cur.conclusion;
        if (c->kind != Kind::Impl) {
          err(ln.index, "SchemaMismatch", "ded-out conclusion must be an implication");
          return false;
        }
        if (!equal(li->judgment.conclusion, c->rhs) ||
            !context_equal(li->judgment.context, context_add(cur.context, c->lhs))) {
          err(ln.index, "ContextMismatch", "ded-out does not fit the stated judgment");
          return false;
        }
        return true;
      }

      case Justification::Tag::PRule:
        return check_prule(ln);
    }
    return false;
  }

  bool check_prule(const Line& ln) {
    const Judgment& cur = ln.judgment;
    const Justification& js = ln.just;
    if (d.mode == Mode::ILP) {
      err(ln.index, "SchemaMismatch", "p-rule is not available in this mode");
      return false;
    }
    if (!label_ok(js.a) || !label_ok(js.b)) {
      err(ln.index, "LabelViolation", "bad label argument");
      return false;
    }
    if (js.k.empty()) {
      err(ln.index, "LabelViolation", "missing fresh variable");
      return false;
    }
    if (std::find(js.a.begin(), js.a.end(), js.k) != js.a.end()) {
      err(ln.index, "FreshnessViolation", js.k + " occurs in the rule label");
      return false;
    }
    const Line* li = ref(ln, js.i);
    if (!li) return false;
    if (!equal(li->judgment.conclusion, cur.conclusion)) {
      err(ln.index, "ContextMismatch", "p-rule must not change the conclusion");
      return false;
    }
    Label ak = js.a;
    ak.push_back(js.k);

    std::set<std::string> cvars = interp_vars(cur.conclusion);
    const Context& pctx = li->judgment.context;
    std::optional<LineError> first_fail;
    auto fail_candidate = [&](std::string code, std::string detail) {
      if (!first_fail) first_fail = LineError{ln.index, std::move(code), std::move(detail)};
    };

    std::vector<FormulaPtr> tried;
    for (const FormulaPtr& e : pctx) {
      if (e->kind != Kind::Box || e->label != js.b) continue;
      const FormulaPtr& inner = e->lhs;
      if (inner->kind != Kind::Rhd || inner->label != ak) continue;
      bool seen = false;
      for (auto& t : tried)
        if (equal(t, e)) seen = true;
      if (seen) continue;
      tried.push_back(e);

      FormulaPtr A = inner->lhs, B = inner->rhs;
      Context rest = *context_remove(pctx, e);
      Context delta, gamma;
      bool delta_ok = true;
      for (const FormulaPtr& g : rest) {
        std::set<std::string> vs = interp_vars(g);
        if (!vs.count(js.k)) {
          gamma.push_back(g);
          continue;
        }
        // k-containing members must be licenses for exactly this (a, k):
        // (E |>^{a·k} F -> E |>^a F) or (#^a E -> #^{a·k} E)
        bool lic = false;
        if (g->kind == Kind::Impl) {
          const FormulaPtr &gl = g->lhs, &gr = g->rhs;
          if (gl->kind == Kind::Rhd && gr->kind == Kind::Rhd && gl->label == ak &&
              gr->label == js.a && equal(gl->lhs, gr->lhs) && equal(gl->rhs, gr->rhs))
            lic = true;
          if (gl->kind == Kind::Box && gr->kind == Kind::Box && gl->label == js.a &&
              gr->label == ak && equal(gl->lhs, gr->lhs))
            lic = true;
        }
        if (!lic) {
          fail_candidate("DeltaShapeViolation", print(g));
          delta_ok = false;
          break;
        }
        delta.push_back(g);
      }
      if (!delta_ok) continue;

      std::set<std::string> avars = interp_vars(A);
      collect_interp_vars(B, avars);
      if (avars.count(js.k)) {
        fail_candidate("FreshnessViolation",
                       js.k + " occurs in the principal interpretability statement");
        continue;
      }
      if (cvars.count(js.k)) {
        fail_candidate("FreshnessViolation", js.k + " occurs in the conclusion");
        continue;
      }
      Context want = context_add(gamma, mk_rhd(js.a, A, B));
      if (!context_equal(cur.context, want)) {
        fail_candidate("ContextMismatch", "hypotheses do not match the discharged form");
        continue;
      }
      rep.prule_info[ln.index] =
          PRuleResolution{e, A, B, canon_context(delta), canon_context(gamma)};
      return true;
    }
    if (first_fail)
      rep.errors.push_back(*first_fail);
    else
      err(ln.index, "SchemaMismatch", "no principal formula for the p-rule in the premise");
    return false;
  }

  void run() {
    if (d.lines.empty()) {
      err(0, "NoLines", "derivation has no lines");
      rep.accepted = false;
      return;
    }
    long prev = 0;
    bool first = true;
    bool ok = true;
    for (const Line& ln : d.lines) {
      if (!first && ln.index <= prev) {
        err(ln.index, "IndexOrder", "line indices must be strictly increasing");
        ok = false;
      }
      first = false;
      prev = ln.index;
      if (d.mode == Mode::ILP) {
        bool lf = label_free(ln.judgment.conclusion);
        for (auto& h : ln.judgment.context) lf = lf && label_free(h);
        if (!lf) {
          err(ln.index, "LabelViolation", "labels must be empty in this mode");
          ok = false;
          by_index[ln.index] = static_cast<std::size_t>(&ln - d.lines.data());
          continue;
        }
      }
      if (!check_line(ln)) ok = false;
      by_index[ln.index] = static_cast<std::size_t>(&ln - d.lines.data());
    }
    rep.accepted = ok;
    if (ok) rep.theorem = d.lines.back().judgment;
  }
};

}  // namespace

CheckReport check(const Derivation& d) {
  Checker ck{d, {}, {}};
  ck.run();
  return ck.rep;
}

}  // namespace fil
