// fil :: label erasure — replay an accepted labeled derivation in the erased core
#include <stdexcept>

#include "fil/proof.hpp"

namespace fil {
namespace {

Context erase_context(const Context& ctx) {
  Context out;
  out.reserve(ctx.size());
  for (auto& f : ctx) out.push_back(erase_labels(f));
  return canon_context(std::move(out));
}

struct Emitter {
  Derivation out;
  long next = 1;

  long emit(Context ctx, FormulaPtr concl, Justification js) {
    Line ln;
    ln.index = next++;
    ln.judgment.context = std::move(ctx);
    ln.judgment.conclusion = std::move(concl);
    ln.just = std::move(js);
    out.lines.push_back(std::move(ln));
    return out.lines.back().index;
  }

  long taut(const Context& ctx, FormulaPtr f) {
    return emit(ctx, std::move(f), {Justification::Tag::Taut, Schema::L1, 0, 0, {}, {}, ""});
  }
  long mp(const Context& ctx, FormulaPtr f, long i, long j) {
    return emit(ctx, std::move(f), {Justification::Tag::MP, Schema::L1, i, j, {}, {}, ""});
  }
};

}  // namespace

Derivation to_ilp(const Derivation& d) {
  if (d.mode != Mode::FIL)
    throw std::invalid_argument("to_ilp expects a labeled derivation");
  CheckReport rep = check(d);
  if (!rep.accepted)
    throw std::invalid_argument("to_ilp requires a derivation that passes the check");

  Emitter em;
  em.out.mode = Mode::ILP;
  std::map<long, long> remap;  // original index -> erased index of the same judgment

  for (const Line& ln : d.lines) {
    Context ctx = erase_context(ln.judgment.context);
    FormulaPtr concl = erase_labels(ln.judgment.conclusion);
    Justification js = ln.just;

    switch (js.tag) {
      case Justification::Tag::Assume:
      case Justification::Tag::Taut:
        remap[ln.index] = em.emit(std::move(ctx), std::move(concl), js);
        break;

      case Justification::Tag::Ax:
        // Extension/restriction instances erase to X -> X.
        if (js.schema == Schema::BoxDrop || js.schema == Schema::RhdExtend)
          js.tag = Justification::Tag::Taut;
        remap[ln.index] = em.emit(std::move(ctx), std::move(concl), js);
        break;

      case Justification::Tag::MP:
        js.i = remap.at(js.i);
        js.j = remap.at(js.j);
        remap[ln.index] = em.emit(std::move(ctx), std::move(concl), js);
        break;

      case Justification::Tag::Nec:
        js.a.clear();
        js.i = remap.at(js.i);
        remap[ln.index] = em.emit(std::move(ctx), std::move(concl), js);
        break;

      case Justification::Tag::DedIn:
      case Justification::Tag::DedOut:
        js.i = remap.at(js.i);
        remap[ln.index] = em.emit(std::move(ctx), std::move(concl), js);
        break;

      case Justification::Tag::PRule: {
        // Replay as an axiom-P block: peel the principal box and the licenses
        // off the premise, weaken into the discharged context, restore the box
        // via ax P, discharge the licenses as tautologies, and chain mp.
        const PRuleResolution& res = rep.prule_info.at(ln.index);
        FormulaPtr ab = mk_rhd({}, erase_labels(res.A), erase_labels(res.B));
        FormulaPtr boxed = mk_box({}, ab);
        Context gamma_e = erase_context(res.gamma);
        Context delta_e;
        for (auto& g : res.delta) delta_e.push_back(erase_labels(g));

        // 1) premise Γe, Δe, #(Ae|>Be) |- Ce   →   ded-out the box
        Context cur = context_add(gamma_e, boxed);
        for (auto& g : delta_e) cur = context_add(cur, g);
        // cur == erased premise context
        FormulaPtr chain = mk_impl(boxed, concl);
        Context c1 = *context_remove(cur, boxed);
        long prev = em.emit(c1, chain,
                            {Justification::Tag::DedOut, Schema::L1, remap.at(js.i), 0,
                             {}, {}, ""});
        // 2) ded-out each license; build the nested implication
        Context c2 = c1;
        for (auto& g : delta_e) {
          chain = mk_impl(g, chain);
          c2 = *context_remove(c2, g);
          prev = em.emit(c2, chain,
                         {Justification::Tag::DedOut, Schema::L1, prev, 0, {}, {}, ""});
        }
        // c2 == gamma_e, chain == δm -> ... -> δ1 -> #(Ae|>Be) -> Ce
        // 3) weaken into Γe, Ae|>Be
        Context w = context_add(gamma_e, ab);
        long t = em.taut(gamma_e, mk_impl(chain, mk_impl(ab, chain)));
        long m1 = em.mp(gamma_e, mk_impl(ab, chain), t, prev);
        long at_w = em.emit(w, chain,
                            {Justification::Tag::DedIn, Schema::L1, m1, 0, {}, {}, ""});
        // 4) assume Ae|>Be; ax P; mp to get the boxed form
        long asm_line = em.emit(w, ab, {Justification::Tag::Assume, Schema::L1, 0, 0, {}, {}, ""});
        long axp = em.emit(w, mk_impl(ab, boxed),
                           {Justification::Tag::Ax, Schema::P, 0, 0, {}, {}, ""});
        long box_line = em.mp(w, boxed, axp, asm_line);
        // 5) peel the chain: licenses are X->X tautologies
        long cur_line = at_w;
        FormulaPtr cur_f = chain;
        for (std::size_t i = delta_e.size(); i-- > 0;) {
          long lic = em.taut(w, cur_f->lhs);
          cur_line = em.mp(w, cur_f->rhs, cur_line, lic);
          cur_f = cur_f->rhs;
        }
        long done = em.mp(w, concl, cur_line, box_line);
        remap[ln.index] = done;
        break;
      }
    }
  }
  return em.out;
}

}  // namespace fil
