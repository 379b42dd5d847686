// fil :: derivation builder and the synthesized proofs
#include "fil/synth.hpp"

#include <algorithm>
#include <deque>
#include <iterator>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fil/series.hpp"

namespace fil {

std::string FreshSupply::take() {
  for (;;) {
    std::string name = "k" + std::to_string(counter++);
    if (used.insert(name).second) return name;
  }
}

namespace {

FormulaPtr v(const char* base, int n) { return mk_var(base + std::to_string(n)); }
FormulaPtr dia0(FormulaPtr f) { return mk_dia({}, std::move(f)); }

// Emits lines with judgments computed from the rule being applied, so a bug
// here surfaces as a kernel rejection in the tests rather than silent drift.
class Builder {
 public:
  long add(Context ctx, FormulaPtr concl, Justification js) {
    Line ln;
    ln.index = next_++;
    ln.judgment.context = canon_context(std::move(ctx));
    ln.judgment.conclusion = std::move(concl);
    ln.just = std::move(js);
    lines_.push_back(std::move(ln));
    return lines_.back().index;
  }

  const Judgment& at(long i) const {
    // Indices are dense and 1-based here.
    if (i < 1 || i >= next_) throw std::logic_error("builder: unknown line");
    return lines_[static_cast<std::size_t>(i - 1)].judgment;
  }
  FormulaPtr concl(long i) const { return at(i).conclusion; }

  long assume(const Context& ctx, FormulaPtr f) {
    Context c = canon_context(ctx);
    if (!context_member(c, f)) throw std::logic_error("assume: " + print(f));
    return add(std::move(c), std::move(f),
               {Justification::Tag::Assume, {}, 0, 0, {}, {}, ""});
  }

  long taut(const Context& ctx, FormulaPtr f) {
    if (!taut_check(f)) throw std::logic_error("not a tautology: " + print(f));
    return add(ctx, std::move(f), {Justification::Tag::Taut, {}, 0, 0, {}, {}, ""});
  }

  long ax(const Context& ctx, Schema s, FormulaPtr f) {
    if (!match_axiom(s, f))
      throw std::logic_error(std::string("not an instance of ") + schema_name(s) + ": " +
                             print(f));
    return add(ctx, std::move(f), {Justification::Tag::Ax, s, 0, 0, {}, {}, ""});
  }

  long mp(long i, long j) {
    const Judgment& ji = at(i);
    const Judgment& jj = at(j);
    if (ji.conclusion->kind != Kind::Impl || !equal(ji.conclusion->lhs, jj.conclusion) ||
        !context_equal(ji.context, jj.context))
      throw std::logic_error("mp: premises do not fit");
    return add(ji.context, ji.conclusion->rhs,
               {Justification::Tag::MP, {}, i, j, {}, {}, ""});
  }

  long nec(const Context& ctx, const Label& la, long i) {
    const Judgment& ji = at(i);
    if (!ji.context.empty()) throw std::logic_error("nec: premise has hypotheses");
    return add(ctx, mk_box(la, ji.conclusion),
               {Justification::Tag::Nec, {}, i, 0, la, {}, ""});
  }

  long ded_in(long i) {
    const Judgment& ji = at(i);
    if (ji.conclusion->kind != Kind::Impl)
      throw std::logic_error("ded_in: not an implication");
    return add(context_add(ji.context, ji.conclusion->lhs), ji.conclusion->rhs,
               {Justification::Tag::DedIn, {}, i, 0, {}, {}, ""});
  }

  long ded_out(long i, const FormulaPtr& hyp) {
    const Judgment& ji = at(i);
    auto rest = context_remove(ji.context, hyp);
    if (!rest) throw std::logic_error("ded_out: hypothesis not present: " + print(hyp));
    return add(*rest, mk_impl(hyp, ji.conclusion),
               {Justification::Tag::DedOut, {}, i, 0, {}, {}, ""});
  }

  long prule(const Label& a, const Label& b, const std::string& k, long i) {
    const Judgment& ji = at(i);
    Label ak = label_extend(a, k);
    for (const FormulaPtr& e : ji.context) {
      if (e->kind != Kind::Box || e->label != b) continue;
      if (e->lhs->kind != Kind::Rhd || e->lhs->label != ak) continue;
      Context rest = *context_remove(ji.context, e);
      Context gamma;
      for (auto& g : rest)
        if (!interp_vars(g).count(k)) gamma.push_back(g);
      return add(context_add(gamma, mk_rhd(a, e->lhs->lhs, e->lhs->rhs)), ji.conclusion,
                 {Justification::Tag::PRule, {}, i, 0, a, b, k});
    }
    throw std::logic_error("prule: no principal formula");
  }

  // --- tactics -------------------------------------------------------------

  // Tautological consequence: premises (all at ctx) propositionally entail
  // target. One taut line plus an mp per premise.
  long tc(const Context& ctx, FormulaPtr target, const std::vector<long>& prems) {
    Context c = canon_context(ctx);
    FormulaPtr f = target;
    for (auto it = prems.rbegin(); it != prems.rend(); ++it)
      f = mk_impl(concl(*it), f);
    long cur = taut(c, f);
    for (long p : prems) {
      if (!context_equal(at(p).context, c)) throw std::logic_error("tc: context mismatch");
      cur = mp(cur, p);
    }
    return cur;
  }

  long conj2(long i, long j) {
    return tc(at(i).context, mk_and(concl(i), concl(j)), {i, j});
  }

  // From ∅ |- P -> Q emit ctx |- #^la P -> #^la Q.
  long box_mono(const Label& la, const Context& ctx, long impl0) {
    const Judgment& j0 = at(impl0);
    if (!j0.context.empty() || j0.conclusion->kind != Kind::Impl)
      throw std::logic_error("box_mono: premise must be a closed implication");
    long n = nec(ctx, la, impl0);
    FormulaPtr bp = mk_box(la, j0.conclusion->lhs), bq = mk_box(la, j0.conclusion->rhs);
    long a = ax(canon_context(ctx), Schema::L1, mk_impl(concl(n), mk_impl(bp, bq)));
    return mp(a, n);
  }

  // ctx |- #^la P  and  ∅ |- P -> Q  ⇒  ctx |- #^la Q.
  long box_apply(const Label& la, long boxp, long impl0) {
    long bm = box_mono(la, at(boxp).context, impl0);
    return mp(bm, boxp);
  }

  // ctx |- X |>^la Y  and  ∅ |- Y -> Z  ⇒  ctx |- X |>^la Z   (via J2b)
  long rhd_weaken(long rhdline, long impl0) {
    const Judgment& jr = at(rhdline);
    const FormulaPtr& r = jr.conclusion;
    if (r->kind != Kind::Rhd) throw std::logic_error("rhd_weaken: not a |> line");
    const Judgment& j0 = at(impl0);
    if (j0.conclusion->kind != Kind::Impl || !equal(j0.conclusion->lhs, r->rhs))
      throw std::logic_error("rhd_weaken: mismatch");
    long n = nec(jr.context, r->label, impl0);
    long c = conj2(rhdline, n);
    FormulaPtr target = mk_rhd(r->label, r->lhs, j0.conclusion->rhs);
    long a = ax(jr.context, Schema::J2b, mk_impl(concl(c), target));
    return mp(a, c);
  }

  // ∅ |- A -> B  ⇒  ctx |- A |>^la B   (via J1)
  long rhd_of_impl(const Label& la, const Context& ctx, long impl0) {
    const Judgment& j0 = at(impl0);
    long n = nec(ctx, la, impl0);
    long a = ax(canon_context(ctx), Schema::J1,
                mk_impl(concl(n), mk_rhd(la, j0.conclusion->lhs, j0.conclusion->rhs)));
    return mp(a, n);
  }

  // hyp ∈ ctx and hyp -> part a tautology ⇒ ctx |- part.
  long project(const Context& ctx, const FormulaPtr& hyp, FormulaPtr part) {
    long a = assume(ctx, hyp);
    long t = taut(canon_context(ctx), mk_impl(hyp, std::move(part)));
    return mp(t, a);
  }

  // Append a finished derivation, renumbering lines and references; returns
  // the new index of its last line.
  long splice(const Derivation& sub) {
    std::map<long, long> remap;
    long last = 0;
    for (const Line& ln : sub.lines) {
      Justification js = ln.just;
      switch (js.tag) {
        case Justification::Tag::MP:
          js.i = remap.at(js.i);
          js.j = remap.at(js.j);
          break;
        case Justification::Tag::Nec:
        case Justification::Tag::DedIn:
        case Justification::Tag::DedOut:
        case Justification::Tag::PRule:
          js.i = remap.at(js.i);
          break;
        default:
          break;
      }
      last = add(ln.judgment.context, ln.judgment.conclusion, js);
      remap[ln.index] = last;
    }
    return last;
  }

  Derivation finish() {
    Derivation d;
    d.mode = Mode::FIL;
    d.lines.assign(std::make_move_iterator(lines_.begin()),
                   std::make_move_iterator(lines_.end()));
    lines_.clear();
    return d;
  }

 private:
  // A deque so judgments handed out by at() stay put while new lines land.
  std::deque<Line> lines_;
  long next_ = 1;
};

// Shared step: from line `prem` (Γ, Δ, #^b(A |> B) |- C) to Γ, A |>^a <>B |- C.
// The J5 axiom rewrites inside the box, then the p-rule discharges it with k.
long gen_p0_expand(Builder& bl, const Label& a, const Label& b, const FormulaPtr& A,
                   const FormulaPtr& B, const std::string& k, long prem) {
  FormulaPtr principal = mk_box(b, mk_rhd({}, A, B));
  FormulaPtr C = bl.concl(prem);
  long d1 = bl.ded_out(prem, principal);
  Label ak = label_extend(a, k);
  long j5 = bl.ax({}, Schema::J5,
                  mk_impl(mk_rhd(ak, A, dia0(B)), mk_rhd({}, A, B)));
  const Context& rest = bl.at(d1).context;
  long bm = bl.box_mono(b, rest, j5);
  FormulaPtr newp = mk_box(b, mk_rhd(ak, A, dia0(B)));
  long ch = bl.tc(rest, mk_impl(newp, C), {bm, d1});
  long di = bl.ded_in(ch);
  return bl.prule(a, b, k, di);
}

// ∅ |- # ~~c -> # c, the bridge between the two renderings of "c holds below".
long nn_box_bridge(Builder& bl, const FormulaPtr& c) {
  long t = bl.taut({}, mk_impl(mk_neg(mk_neg(c)), c));
  return bl.box_mono({}, {}, t);
}

// The ten-line argument behind principle W, elaborated to kernel granularity.
Derivation build_W() {
  Builder bl;
  FormulaPtr a = mk_var("a"), b = mk_var("b");
  Label k{"k0"};
  FormulaPtr akb = mk_rhd(k, a, b);
  FormulaPtr h1 = mk_box({}, akb);
  FormulaPtr dA = dia0(a), dkB = mk_dia(k, b);
  FormulaPtr BA = mk_and(b, dA);         // b ∧ <>a
  FormulaPtr bk = mk_box(k, mk_neg(b));  // #^k ~b
  FormulaPtr bbk = mk_and(b, bk);
  FormulaPtr lic = mk_impl(mk_rhd(k, BA, bbk), mk_rhd({}, BA, bbk));
  Context M = canon_context({h1, lic});

  long l1 = bl.assume(M, h1);
  long j4 = bl.ax({}, Schema::J4, mk_impl(akb, mk_impl(dA, dkB)));
  long l3 = bl.box_apply({}, l1, j4);  // #(<>a -> <>^k b)
  FormulaPtr bna = mk_box({}, mk_neg(a));
  long t4 = bl.taut({}, mk_impl(mk_impl(dA, dkB), mk_impl(bk, bna)));
  long l4 = bl.box_apply({}, l3, t4);  // #(#^k ~b -> # ~a)
  long j1 = bl.ax(M, Schema::J1, mk_impl(bl.concl(l3), mk_rhd({}, dA, dkB)));
  long l5 = bl.mp(j1, l3);  // <>a |> <>^k b
  long tp = bl.taut({}, mk_impl(BA, dA));
  long r1 = bl.rhd_of_impl({}, M, tp);
  long c1 = bl.conj2(r1, l5);
  long j2a = bl.ax(M, Schema::J2a, mk_impl(bl.concl(c1), mk_rhd({}, BA, dkB)));
  long l6 = bl.mp(j2a, c1);  // b ∧ <>a |> <>^k b
  long f1 = bl.taut({}, mk_impl(mk_neg(bbk), mk_impl(bk, mk_neg(b))));
  long f2 = bl.box_mono(k, {}, f1);
  long f3 = bl.ax({}, Schema::L3, mk_impl(mk_box(k, mk_impl(bk, mk_neg(b))), bk));
  long f4 = bl.tc({}, mk_impl(dkB, mk_dia(k, bbk)), {f2, f3});
  long l7 = bl.rhd_weaken(l6, f4);  // b ∧ <>a |> <>^k (b ∧ #^k ~b)
  long j5 = bl.ax(M, Schema::J5, mk_impl(bl.concl(l7), mk_rhd(k, BA, bbk)));
  long l8 = bl.mp(j5, l7);
  long l2 = bl.assume(M, lic);
  long l9 = bl.mp(l2, l8);  // b ∧ <>a |> b ∧ #^k ~b
  FormulaPtr bna2 = mk_and(b, bna);
  long t10 = bl.taut({}, mk_impl(mk_impl(bk, bna), mk_impl(bbk, bna2)));
  long bm = bl.box_mono({}, M, t10);
  long b2 = bl.mp(bm, l4);
  long c2 = bl.conj2(l9, b2);
  long j2b = bl.ax(M, Schema::J2b, mk_impl(bl.concl(c2), mk_rhd({}, BA, bna2)));
  long l10 = bl.mp(j2b, c2);  // b ∧ <>a |> b ∧ # ~a

  long lp = bl.prule({}, {}, "k0", l10);  // {a |> b} |- ...
  Context N{mk_rhd({}, a, b)};
  long s1 = bl.assume(N, mk_rhd({}, a, b));
  long tbr = bl.taut({}, mk_impl(b, mk_or(bna2, BA)));
  long r2 = bl.rhd_weaken(s1, tbr);  // a |> (b ∧ # ~a) \/ (b ∧ <>a)
  long tr = bl.taut({}, mk_impl(bna2, bna2));
  long rr = bl.rhd_of_impl({}, N, tr);
  long c3 = bl.conj2(rr, lp);
  long j3 = bl.ax(N, Schema::J3, mk_impl(bl.concl(c3), mk_rhd({}, mk_or(bna2, BA), bna2)));
  long r3 = bl.mp(j3, c3);
  long c4 = bl.conj2(r2, r3);
  long j2a2 = bl.ax(N, Schema::J2a, mk_impl(bl.concl(c4), mk_rhd({}, a, bna2)));
  long r4 = bl.mp(j2a2, c4);
  bl.ded_out(r4, mk_rhd({}, a, b));
  return bl.finish();
}

Derivation build_M0() {
  Builder bl;
  FormulaPtr a = mk_var("a"), b = mk_var("b"), c = mk_var("c");
  Label k{"k0"};
  FormulaPtr akb = mk_rhd(k, a, b);
  FormulaPtr h1 = mk_box({}, akb);
  FormulaPtr dA = dia0(a), dkB = mk_dia(k, b), boxc = mk_box({}, c);
  FormulaPtr E = mk_and(dA, boxc);  // <>a ∧ #c
  FormulaPtr F = mk_and(b, boxc);   // b ∧ #c
  FormulaPtr lic = mk_impl(mk_rhd(k, E, F), mk_rhd({}, E, F));
  Context M = canon_context({h1, lic});

  long l1 = bl.assume(M, h1);
  long l2 = bl.assume(M, lic);
  long j4 = bl.ax({}, Schema::J4, mk_impl(akb, mk_impl(dA, dkB)));
  long l3 = bl.box_apply({}, l1, j4);  // #(<>a -> <>^k b)
  FormulaPtr G1 = mk_and(dkB, boxc);
  long t1 = bl.taut({}, mk_impl(mk_impl(dA, dkB), mk_impl(E, G1)));
  long l4 = bl.box_apply({}, l3, t1);  // #(E -> <>^k b ∧ #c)
  long j1 = bl.ax(M, Schema::J1, mk_impl(bl.concl(l4), mk_rhd({}, E, G1)));
  long l5 = bl.mp(j1, l4);
  // strengthen #c to #^k #c inside the target
  FormulaPtr bkc = mk_box(k, boxc);
  FormulaPtr G2 = mk_and(dkB, bkc);
  long l2ax = bl.ax({}, Schema::L2, mk_impl(boxc, bkc));
  long t2 = bl.tc({}, mk_impl(G1, G2), {l2ax});
  long l6 = bl.rhd_weaken(l5, t2);  // E |> <>^k b ∧ #^k #c
  // <>^k b ∧ #^k #c -> <>^k (b ∧ #c)
  long k1 = bl.taut({}, mk_impl(mk_neg(F), mk_impl(boxc, mk_neg(b))));
  long k2 = bl.box_mono(k, {}, k1);
  long k3 = bl.ax({}, Schema::L1,
                  mk_impl(mk_box(k, mk_impl(boxc, mk_neg(b))),
                          mk_impl(bkc, mk_box(k, mk_neg(b)))));
  long k4 = bl.tc({}, mk_impl(G2, mk_dia(k, F)), {k2, k3});
  long l7 = bl.rhd_weaken(l6, k4);  // E |> <>^k (b ∧ #c)
  long j5 = bl.ax(M, Schema::J5, mk_impl(bl.concl(l7), mk_rhd(k, E, F)));
  long l8 = bl.mp(j5, l7);
  long l9 = bl.mp(l2, l8);  // E |> F
  long lp = bl.prule({}, {}, "k0", l9);
  bl.ded_out(lp, mk_rhd({}, a, b));
  return bl.finish();
}

Derivation build_R() {
  Builder bl;
  FormulaPtr a = mk_var("a"), b = mk_var("b"), c = mk_var("c");
  Label k{"k0"};
  FormulaPtr akb = mk_rhd(k, a, b);
  FormulaPtr h1 = mk_box({}, akb);
  FormulaPtr Q = mk_neg(mk_rhd({}, a, mk_neg(c)));  // ~(a |> ~c)
  FormulaPtr boxc = mk_box({}, c);
  FormulaPtr F = mk_and(b, boxc);
  FormulaPtr lic = mk_impl(mk_rhd(k, Q, F), mk_rhd({}, Q, F));
  Context M = canon_context({h1, lic});

  // closed: (Q ∧ a |>^k b) -> <>^k (b ∧ #c)
  FormulaPtr dnc = dia0(mk_neg(c));
  long r2 = nn_box_bridge(bl, c);  // # ~~c -> # c
  long r3 = bl.tc({}, mk_impl(mk_neg(F), mk_impl(b, dnc)), {r2});
  long r4 = bl.box_mono(k, {}, r3);  // #^k ~F -> #^k (b -> <>~c)
  long r5 = bl.ax({}, Schema::J2b,
                  mk_impl(mk_and(akb, mk_box(k, mk_impl(b, dnc))), mk_rhd(k, a, dnc)));
  long r6 = bl.ax({}, Schema::J5, mk_impl(mk_rhd(k, a, dnc), mk_rhd({}, a, mk_neg(c))));
  FormulaPtr QA = mk_and(Q, akb);
  long phi = bl.tc({}, mk_impl(QA, mk_dia(k, F)), {r4, r5, r6});

  long l1 = bl.assume(M, h1);
  long l2 = bl.assume(M, lic);
  long t = bl.taut({}, mk_impl(akb, mk_impl(Q, QA)));
  long b1 = bl.box_apply({}, l1, t);  // #(Q -> Q ∧ a|>^k b)
  long j1 = bl.ax(M, Schema::J1, mk_impl(bl.concl(b1), mk_rhd({}, Q, QA)));
  long m1 = bl.mp(j1, b1);
  long m2 = bl.rhd_weaken(m1, phi);  // Q |> <>^k F
  long j5 = bl.ax(M, Schema::J5, mk_impl(bl.concl(m2), mk_rhd(k, Q, F)));
  long m3 = bl.mp(j5, m2);
  long m4 = bl.mp(l2, m3);  // Q |> F
  long lp = bl.prule({}, {}, "k0", m4);
  bl.ded_out(lp, mk_rhd({}, a, b));
  return bl.finish();
}

std::pair<Derivation, Derivation> build_j5_equivalence() {
  // Direction 1: from the primed shape as a hypothesis, conclude <>a |> a
  // without touching the J5 axiom.
  Derivation d1;
  {
    Builder bl;
    FormulaPtr a = mk_var("a");
    FormulaPtr da = dia0(a);
    FormulaPtr hyp = mk_impl(mk_rhd({}, da, da), mk_rhd({}, da, a));
    Context H{hyp};
    long t = bl.taut({}, mk_impl(da, da));
    long r = bl.rhd_of_impl({}, H, t);  // <>a |> <>a
    long h = bl.assume(H, hyp);
    bl.mp(h, r);  // <>a |> a
    d1 = bl.finish();
  }
  // Direction 2: b |> <>c -> b |> c, using the axiom for <>c |> c and then
  // composing through transitivity.
  Derivation d2;
  {
    Builder bl;
    FormulaPtr b = mk_var("b"), c = mk_var("c");
    FormulaPtr dc = dia0(c);
    FormulaPtr hyp = mk_rhd({}, b, dc);
    Context H{hyp};
    long t = bl.taut({}, mk_impl(dc, dc));
    long r = bl.rhd_of_impl({}, H, t);  // <>c |> <>c
    long j5 = bl.ax(H, Schema::J5, mk_impl(mk_rhd({}, dc, dc), mk_rhd({}, dc, c)));
    long m = bl.mp(j5, r);  // <>c |> c
    long h = bl.assume(H, hyp);
    long cj = bl.conj2(h, m);
    long j2a = bl.ax(H, Schema::J2a, mk_impl(bl.concl(cj), mk_rhd({}, b, c)));
    long m2 = bl.mp(j2a, cj);
    bl.ded_out(m2, hyp);
    d2 = bl.finish();
  }
  return {std::move(d1), std::move(d2)};
}

// ∅ |- (d_n |>^a <>~c) -> V_n.
long lemma_broad1(Builder& bl, int n, const Label& a, FreshSupply& fs) {
  FormulaPtr c = mk_var("c");
  FormulaPtr dnc = dia0(mk_neg(c));
  if (n == 1) {
    FormulaPtr v1 = gen_V(1);  // #(d1 |> ~c)
    long a0 = bl.assume({v1}, v1);
    long gp = gen_p0_expand(bl, a, {}, v("d", 1), mk_neg(c), fs.take(), a0);
    return bl.ded_out(gp, mk_rhd(a, v("d", 1), dnc));
  }
  std::string k = fs.take();
  Label ak = label_extend(a, k);
  long ih = lemma_broad1(bl, n - 1, ak, fs);  // (d_{n-1} |>^{a·k} <>~c) -> V_{n-1}
  FormulaPtr W = mk_rhd({}, v("d", n - 1), v("d", n));
  FormulaPtr X = mk_rhd(ak, v("d", n), dnc);
  FormulaPtr Y = mk_rhd(ak, v("d", n - 1), dnc);
  FormulaPtr Vp = gen_V(n - 1);
  long j2a = bl.ax({}, Schema::J2a, mk_impl(mk_and(W, X), Y));
  FormulaPtr WV = mk_impl(W, Vp);
  long t = bl.tc({}, mk_impl(X, WV), {j2a, ih});
  FormulaPtr h = mk_box({}, X);
  Context H{h};
  long n1 = bl.nec(H, {}, t);
  long l1 = bl.ax(H, Schema::L1,
                  mk_impl(bl.concl(n1), mk_impl(h, mk_box({}, WV))));
  long m1 = bl.mp(l1, n1);
  long a1 = bl.assume(H, h);
  long m2 = bl.mp(m1, a1);  // {#X} |- V_n
  long pr = bl.prule(a, {}, k, m2);
  return bl.ded_out(pr, mk_rhd(a, v("d", n), dnc));
}

// ∅ |- U_n -> ~V_n.
long broad_uv_bridge(Builder& bl, int n) {
  FormulaPtr c = mk_var("c");
  FormulaPtr base = mk_rhd({}, v("d", 1), mk_neg(c));
  long u1 = bl.taut({}, mk_impl(base, mk_neg(mk_neg(base))));
  long u2 = bl.box_mono({}, {}, u1);
  long cur = bl.tc({}, mk_impl(gen_U(1), mk_neg(gen_V(1))), {u2});
  for (int i = 2; i <= n; ++i) {
    FormulaPtr W = mk_rhd({}, v("d", i - 1), v("d", i));
    FormulaPtr WU = mk_and(W, gen_U(i - 1));
    FormulaPtr WV = mk_impl(W, gen_V(i - 1));
    long v2 = bl.tc({}, mk_impl(WV, mk_neg(WU)), {cur});
    long v3 = bl.box_mono({}, {}, v2);  // #(W -> V_{i-1}) -> # ~(W ∧ U_{i-1})
    cur = bl.tc({}, mk_impl(gen_U(i), mk_neg(gen_V(i))), {v3});
  }
  return cur;
}

// ∅ |- (U_n ∧ (d_n |> a)) ∧ (a |>^k b)  ->  <>^k (b ∧ #c).
long lemma_broad2(Builder& bl, int n, const std::string& kv, FreshSupply& fs) {
  Label k{kv};
  FormulaPtr a = mk_var("a"), b = mk_var("b"), c = mk_var("c");
  FormulaPtr dnc = dia0(mk_neg(c));
  FormulaPtr F = mk_and(b, mk_box({}, c));
  FormulaPtr dna = mk_rhd({}, v("d", n), a);
  FormulaPtr akb = mk_rhd(k, a, b);
  FormulaPtr bkG = mk_box(k, mk_impl(b, dnc));
  FormulaPtr Vn = gen_V(n);
  long j2a = bl.ax({}, Schema::J2a,
                   mk_impl(mk_and(dna, mk_rhd(k, a, dnc)), mk_rhd(k, v("d", n), dnc)));
  long j2b = bl.ax({}, Schema::J2b, mk_impl(mk_and(akb, bkG), mk_rhd(k, a, dnc)));
  long ih1 = lemma_broad1(bl, n, k, fs);
  long phi = bl.tc({}, mk_impl(mk_and(mk_and(dna, akb), bkG), Vn), {j2a, j2b, ih1});
  long t2 = nn_box_bridge(bl, c);
  long t3 = bl.tc({}, mk_impl(mk_neg(F), mk_impl(b, dnc)), {t2});
  long t4 = bl.box_mono(k, {}, t3);  // #^k ~F -> #^k (b -> <>~c)
  long br = broad_uv_bridge(bl, n);
  FormulaPtr lhs3 = mk_and(mk_and(gen_U(n), dna), akb);
  return bl.tc({}, mk_impl(lhs3, mk_dia(k, F)), {phi, t4, br});
}

Derivation build_broad(int n) {
  if (n == 0) return build_R();
  Builder bl;
  FreshSupply fs;
  std::string kv = fs.take();
  Label k{kv};
  FormulaPtr a = mk_var("a"), b = mk_var("b"), c = mk_var("c");
  FormulaPtr akb = mk_rhd(k, a, b);
  FormulaPtr s1h = mk_box({}, akb);
  FormulaPtr F = mk_and(b, mk_box({}, c));
  FormulaPtr lhs2 = mk_and(gen_U(n), mk_rhd({}, v("d", n), a));
  FormulaPtr lhs3 = mk_and(lhs2, akb);
  FormulaPtr lic = mk_impl(mk_rhd(k, lhs2, F), mk_rhd({}, lhs2, F));
  Context N = canon_context({s1h, lic});

  long a1 = bl.assume(N, s1h);
  long t = bl.taut({}, mk_impl(akb, mk_impl(lhs2, lhs3)));
  long b1 = bl.box_apply({}, a1, t);  // #(lhs2 -> lhs3)
  long j1 = bl.ax(N, Schema::J1, mk_impl(bl.concl(b1), mk_rhd({}, lhs2, lhs3)));
  long m1 = bl.mp(j1, b1);
  long psi = lemma_broad2(bl, n, kv, fs);
  long n2 = bl.nec(N, {}, psi);
  long j1b = bl.ax(N, Schema::J1, mk_impl(bl.concl(n2), mk_rhd({}, lhs3, mk_dia(k, F))));
  long m2 = bl.mp(j1b, n2);
  long j5 = bl.ax(N, Schema::J5, mk_impl(bl.concl(m2), mk_rhd(k, lhs3, F)));
  long m3 = bl.mp(j5, m2);
  long cj = bl.conj2(m1, m3);
  long j2a = bl.ax(N, Schema::J2a, mk_impl(bl.concl(cj), mk_rhd(k, lhs2, F)));
  long m4 = bl.mp(j2a, cj);
  long a2 = bl.assume(N, lic);
  long m5 = bl.mp(a2, m4);  // lhs2 |> F
  long pr = bl.prule({}, {}, kv, m5);
  bl.ded_out(pr, mk_rhd({}, a, b));
  return bl.finish();
}

// ∅ |- (a_n |>^{kv} rhs_n) ∧ Y_n -> <>^{kv} Z_n, where rhs_n is b_0 at the
// base and b_n ∧ X_{n-1} above it.
long lemma_slim(Builder& bl, int n, const std::string& kv, FreshSupply& fs) {
  Label k{kv};
  if (n == 0) {
    FormulaPtr a0 = v("a", 0), b0 = v("b", 0), c0 = v("c", 0);
    FormulaPtr chi = mk_rhd(k, a0, b0);
    FormulaPtr Y0 = gen_Y(0), Z0 = gen_Z(0);
    FormulaPtr dnc = dia0(mk_neg(c0));
    long r2 = nn_box_bridge(bl, c0);
    long r3 = bl.tc({}, mk_impl(mk_neg(Z0), mk_impl(b0, dnc)), {r2});
    long r4 = bl.box_mono(k, {}, r3);
    long r5 = bl.ax({}, Schema::J2b,
                    mk_impl(mk_and(chi, mk_box(k, mk_impl(b0, dnc))), mk_rhd(k, a0, dnc)));
    long r6 = bl.ax({}, Schema::J5,
                    mk_impl(mk_rhd(k, a0, dnc), mk_rhd({}, a0, mk_neg(c0))));
    return bl.tc({}, mk_impl(mk_and(chi, Y0), mk_dia(k, Z0)), {r4, r5, r6});
  }

  int p = n - 1;
  std::string j = fs.take(), l = fs.take();
  Label jl{j}, ll{l};
  FormulaPtr A = v("a", n), Bm = v("b", n), Cm = v("c", n), E = v("e", n);
  FormulaPtr ap = v("a", p);
  FormulaPtr Xp = gen_X(p), Yp = gen_Y(p), Zp = gen_Z(p);
  FormulaPtr rhs_p = p == 0 ? v("b", 0) : mk_and(v("b", p), gen_X(p - 1));
  FormulaPtr dncm = dia0(mk_neg(Cm));
  FormulaPtr EA = mk_rhd({}, E, ap);
  FormulaPtr EZ = mk_rhd({}, E, Zp);
  FormulaPtr D3 = mk_or(mk_or(dncm, mk_neg(EA)), mk_neg(EZ));
  FormulaPtr D2 = mk_or(dncm, mk_neg(EZ));
  FormulaPtr BX = mk_and(Bm, Xp);
  FormulaPtr G = mk_impl(BX, D3);
  FormulaPtr chi = mk_rhd(k, A, BX);
  FormulaPtr beta = mk_rhd({}, E, Yp);
  FormulaPtr gam = mk_box(k, G);
  FormulaPtr LHS = mk_and(mk_and(chi, beta), gam);
  FormulaPtr EjY = mk_rhd(jl, E, Yp);
  FormulaPtr h1 = mk_box(k, EA);
  FormulaPtr h2 = mk_box(k, EjY);
  FormulaPtr u = mk_and(mk_and(Xp, EjY), D2);
  FormulaPtr delta = mk_rhd({}, A, mk_neg(Cm));
  Context M = canon_context({LHS, h1, h2});

  // chase the |>^{kv} target down to u
  long pal = bl.project(M, LHS, chi);
  long pga = bl.project(M, LHS, gam);
  long t1 = bl.taut({}, mk_impl(G, mk_impl(BX, mk_and(Xp, D3))));
  long bm1 = bl.box_mono(k, M, t1);
  long bG = bl.mp(bm1, pga);
  long c1 = bl.conj2(pal, bG);
  long q2 = bl.mp(bl.ax(M, Schema::J2b, mk_impl(bl.concl(c1), mk_rhd(k, A, mk_and(Xp, D3)))),
                  c1);
  long ah1 = bl.assume(M, h1);
  long t2 = bl.taut({}, mk_impl(EA, mk_impl(mk_and(Xp, D3), mk_and(Xp, D2))));
  long bm2 = bl.box_mono(k, M, t2);
  long b2 = bl.mp(bm2, ah1);
  long c2 = bl.conj2(q2, b2);
  long s1 = bl.mp(bl.ax(M, Schema::J2b, mk_impl(bl.concl(c2), mk_rhd(k, A, mk_and(Xp, D2)))),
                  c2);
  long ah2 = bl.assume(M, h2);
  long t3 = bl.taut({}, mk_impl(EjY, mk_impl(mk_and(Xp, D2), u)));
  long bm3 = bl.box_mono(k, M, t3);
  long b3 = bl.mp(bm3, ah2);
  long c3 = bl.conj2(s1, b3);
  long s2 = bl.mp(bl.ax(M, Schema::J2b, mk_impl(bl.concl(c3), mk_rhd(k, A, u))), c3);

  // closed subderivation: ∅ |- u -> <>~c_n
  FormulaPtr chil = mk_rhd(ll, ap, rhs_p);
  FormulaPtr licl = mk_impl(mk_rhd(ll, E, Zp), EZ);
  FormulaPtr h3 = mk_box(jl, chil);
  Context S = canon_context({u, licl, h3});
  long pEj = bl.project(S, u, EjY);
  long ah3 = bl.assume(S, h3);
  long t4 = bl.taut({}, mk_impl(chil, mk_impl(Yp, mk_and(chil, Yp))));
  long bm4 = bl.box_mono(jl, S, t4);
  long b4 = bl.mp(bm4, ah3);
  long c4 = bl.conj2(pEj, b4);
  long d2 = bl.mp(
      bl.ax(S, Schema::J2b, mk_impl(bl.concl(c4), mk_rhd(jl, E, mk_and(chil, Yp)))), c4);
  long ih = lemma_slim(bl, p, l, fs);
  long d4 = bl.rhd_weaken(d2, ih);  // E |>^j <>^l Z_p
  long d5 = bl.mp(bl.ax(S, Schema::J5, mk_impl(bl.concl(d4), mk_rhd(ll, E, Zp))), d4);
  long al = bl.assume(S, licl);
  long d6 = bl.mp(al, d5);  // E |> Z_p
  long pD2 = bl.project(S, u, D2);
  long d7 = bl.tc(S, dncm, {pD2, d6});
  long pr1 = bl.prule({}, jl, l, d7);  // {u, X_p} |- <>~c_n
  long dd = bl.ded_out(pr1, Xp);
  long pXn = bl.project({u}, u, Xp);
  long m0 = bl.mp(dd, pXn);
  long T = bl.ded_out(m0, u);  // ∅ |- u -> <>~c_n

  // back in the main context: A |>^{kv} <>~c_n, then drop the label by J5
  long nT = bl.nec(M, k, T);
  long c5 = bl.conj2(s2, nT);
  long w1 = bl.mp(bl.ax(M, Schema::J2b, mk_impl(bl.concl(c5), mk_rhd(k, A, dncm))), c5);
  long dline = bl.mp(bl.ax(M, Schema::J5, mk_impl(bl.concl(w1), delta)), w1);

  // discharge h2, then h1 (via the gen_p0 machinery reusing l), then cut both
  long pr2 = bl.prule({}, k, j, dline);  // {LHS, h1, beta} |- delta
  long dd2 = bl.ded_out(pr2, beta);
  Context M2 = canon_context({LHS, h1});
  long pb = bl.project(M2, LHS, beta);
  long m2 = bl.mp(dd2, pb);  // {LHS, h1} |- delta
  long gp = gen_p0_expand(bl, {}, k, E, ap, l, m2);  // {LHS, E |> <>a_p} |- delta
  FormulaPtr EdA = mk_rhd({}, E, dia0(ap));
  long dd3 = bl.ded_out(gp, EdA);
  // {LHS} |- E |> <>a_p, from beta and Y_p -> <>a_p
  long y1 = bl.taut({}, mk_impl(mk_neg(ap), mk_impl(ap, mk_neg(v("c", p)))));
  long y2 = bl.box_mono({}, {}, y1);
  long y3 = bl.ax({}, Schema::J1,
                  mk_impl(mk_box({}, mk_impl(ap, mk_neg(v("c", p)))),
                          mk_rhd({}, ap, mk_neg(v("c", p)))));
  long y4 = bl.tc({}, mk_impl(Yp, dia0(ap)), {y2, y3});
  Context ML{LHS};
  long pb2 = bl.project(ML, LHS, beta);
  long ed = bl.rhd_weaken(pb2, y4);
  long m3 = bl.mp(dd3, ed);  // {LHS} |- delta
  long goal_eq = bl.ded_out(m3, LHS);

  // package: bound ~Z_n -> G through the box bridge, then combine
  FormulaPtr Ym = gen_Y(n), Zm = gen_Z(n);
  long g2 = nn_box_bridge(bl, Cm);
  long g3 = bl.tc({}, mk_impl(mk_neg(Zm), G), {g2});
  long g4 = bl.box_mono(k, {}, g3);  // #^k ~Z_n -> #^k G
  return bl.tc({}, mk_impl(mk_and(chi, Ym), mk_dia(k, Zm)), {goal_eq, g4});
}

Derivation build_slim(int n) {
  Builder bl;
  FreshSupply fs;
  std::string kv = fs.take();
  Label k{kv};
  FormulaPtr an = v("a", n);
  FormulaPtr rhs_n = n == 0 ? v("b", 0) : mk_and(v("b", n), gen_X(n - 1));
  FormulaPtr chi = mk_rhd(k, an, rhs_n);
  FormulaPtr Xn = gen_X(n), Yn = gen_Y(n), Zn = gen_Z(n);
  FormulaPtr s1h = mk_box({}, chi);
  FormulaPtr lic = mk_impl(mk_rhd(k, Yn, Zn), mk_rhd({}, Yn, Zn));
  Context N = canon_context({s1h, lic});

  long a1 = bl.assume(N, s1h);
  long t = bl.taut({}, mk_impl(chi, mk_impl(Yn, mk_and(chi, Yn))));
  long b1 = bl.box_apply({}, a1, t);  // #(Y_n -> chi ∧ Y_n)
  long j1 = bl.ax(N, Schema::J1, mk_impl(bl.concl(b1), mk_rhd({}, Yn, mk_and(chi, Yn))));
  long w1 = bl.mp(j1, b1);
  long lem = lemma_slim(bl, n, kv, fs);
  long w2 = bl.rhd_weaken(w1, lem);  // Y_n |> <>^k Z_n
  long j5 = bl.ax(N, Schema::J5, mk_impl(bl.concl(w2), mk_rhd(k, Yn, Zn)));
  long w3 = bl.mp(j5, w2);
  long a2 = bl.assume(N, lic);
  long w4 = bl.mp(a2, w3);  // Y_n |> Z_n
  long pr = bl.prule({}, {}, kv, w4);  // {X_n} |- Y_n |> Z_n
  bl.ded_out(pr, Xn);
  return bl.finish();
}

}  // namespace

Derivation derive_W() { return build_W(); }
Derivation derive_M0() { return build_M0(); }
Derivation derive_R() { return build_R(); }
Derivation derive_slim(int n) {
  if (n < 0) throw std::domain_error("negative series index");
  return build_slim(n);
}
Derivation derive_broad(int n) {
  if (n < 0) throw std::domain_error("negative series index");
  return build_broad(n);
}
std::pair<Derivation, Derivation> derive_j5_equivalence() { return build_j5_equivalence(); }

Derivation derive_gen_p0(const Label& a, const Label& b, const FormulaPtr& A,
                         const FormulaPtr& B, const FormulaPtr& C, const Context& gamma,
                         const Derivation& premise) {
  CheckReport rep = check(premise);
  if (!rep.accepted || !rep.theorem)
    throw std::invalid_argument("premise derivation does not pass the check");
  const Judgment& th = *rep.theorem;
  if (!equal(th.conclusion, C))
    throw std::invalid_argument("premise proves a different conclusion");
  FormulaPtr principal = mk_box(b, mk_rhd({}, A, B));
  Context rest = th.context;
  auto take = [&](const FormulaPtr& f) {
    auto r = context_remove(rest, f);
    if (!r) throw std::invalid_argument("premise hypotheses do not match: " + print(f));
    rest = *r;
  };
  take(principal);
  for (auto& g : gamma) take(g);
  // what is left must be licenses for one shared fresh variable
  std::string k;
  for (auto& g : rest) {
    if (g->kind != Kind::Impl) throw std::invalid_argument("stray hypothesis: " + print(g));
    Label lng;
    if (g->lhs->kind == Kind::Rhd && g->rhs->kind == Kind::Rhd)
      lng = g->lhs->label;
    else if (g->lhs->kind == Kind::Box && g->rhs->kind == Kind::Box)
      lng = g->rhs->label;
    else
      throw std::invalid_argument("stray hypothesis: " + print(g));
    if (lng.size() != a.size() + 1 || !std::equal(a.begin(), a.end(), lng.begin()))
      throw std::invalid_argument("license label mismatch: " + print(g));
    if (k.empty())
      k = lng.back();
    else if (k != lng.back())
      throw std::invalid_argument("licenses disagree on the fresh variable");
  }
  if (k.empty()) {
    FreshSupply fs;
    for (auto& g : th.context) {
      auto vs = interp_vars(g);
      fs.used.insert(vs.begin(), vs.end());
    }
    auto vs = interp_vars(C);
    fs.used.insert(vs.begin(), vs.end());
    fs.used.insert(a.begin(), a.end());
    fs.used.insert(b.begin(), b.end());
    k = fs.take();
  }

  Builder bl;
  long prem = bl.splice(premise);
  gen_p0_expand(bl, a, b, A, B, k, prem);
  return bl.finish();
}

}  // namespace fil
