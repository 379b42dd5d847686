// fil :: series generators
#include "fil/series.hpp"

#include <stdexcept>
#include <string>

namespace fil {
namespace {

FormulaPtr v(const char* base, int n) { return mk_var(base + std::to_string(n)); }

void need(int n, int least) {
  if (n < least)
    throw std::domain_error("series index " + std::to_string(n) + " out of range");
}

}  // namespace

FormulaPtr gen_X(int n, bool keep_top) {
  need(n, 0);
  FormulaPtr body = keep_top ? mk_and(v("b", 0), mk_top()) : v("b", 0);
  FormulaPtr x = mk_rhd({}, v("a", 0), body);
  for (int i = 1; i <= n; ++i) x = mk_rhd({}, v("a", i), mk_and(v("b", i), x));
  return x;
}

FormulaPtr gen_Y(int n) {
  need(n, 0);
  auto blk = [](int i) { return mk_neg(mk_rhd({}, v("a", i), mk_neg(v("c", i)))); };
  FormulaPtr y = blk(0);
  for (int i = 1; i <= n; ++i) y = mk_and(blk(i), mk_rhd({}, v("e", i), y));
  return y;
}

FormulaPtr gen_Z(int n, bool keep_top) {
  need(n, 0);
  FormulaPtr z = mk_and(v("b", 0), mk_box({}, v("c", 0)));
  for (int i = 1; i <= n; ++i) {
    FormulaPtr x = gen_X(i - 1, keep_top);
    z = mk_and(mk_and(mk_and(mk_and(v("b", i), x), mk_box({}, v("c", i))),
                      mk_rhd({}, v("e", i), v("a", i - 1))),
               mk_rhd({}, v("e", i), z));
  }
  return z;
}

FormulaPtr gen_slim(int n, bool keep_top) {
  need(n, 0);
  return mk_impl(gen_X(n, keep_top), mk_rhd({}, gen_Y(n), gen_Z(n, keep_top)));
}

FormulaPtr gen_U(int n) {
  need(n, 1);
  FormulaPtr u = mk_dia({}, mk_neg(mk_rhd({}, v("d", 1), mk_neg(mk_var("c")))));
  for (int i = 2; i <= n; ++i)
    u = mk_dia({}, mk_and(mk_rhd({}, v("d", i - 1), v("d", i)), u));
  return u;
}

FormulaPtr gen_V(int n) {
  need(n, 1);
  FormulaPtr w = mk_box({}, mk_rhd({}, v("d", 1), mk_neg(mk_var("c"))));
  for (int i = 2; i <= n; ++i)
    w = mk_box({}, mk_impl(mk_rhd({}, v("d", i - 1), v("d", i)), w));
  return w;
}

FormulaPtr gen_broad(int n) {
  need(n, 0);
  FormulaPtr a = mk_var("a"), b = mk_var("b"), c = mk_var("c");
  FormulaPtr rhs = mk_and(b, mk_box({}, c));
  FormulaPtr lhs = n == 0 ? mk_neg(mk_rhd({}, a, mk_neg(c)))
                          : mk_and(gen_U(n), mk_rhd({}, v("d", n), a));
  return mk_impl(mk_rhd({}, a, b), mk_rhd({}, lhs, rhs));
}

FormulaPtr gen_original(int n) {
  need(n, 0);
  FormulaPtr r = mk_impl(
      mk_rhd({}, v("a", 0), v("b", 0)),
      mk_rhd({}, mk_neg(mk_rhd({}, v("a", 0), mk_neg(v("c", 0)))),
             mk_and(v("b", 0), mk_box({}, v("c", 0)))));
  for (int step = 1; step <= n; ++step) {
    int k = (step - 1) / 2;  // level whose letters the step rewrites
    if (step % 2 == 1) {
      // odd step: graft the next existential witness pair onto level k
      FormulaPtr blk = mk_neg(mk_rhd({}, v("a", k), mk_neg(v("c", k))));
      r = replace_subformula(
          r, blk, mk_and(blk, mk_rhd({}, v("e", k + 1), mk_dia({}, v("a", k + 1)))));
      FormulaPtr bc = mk_and(v("b", k), mk_box({}, v("c", k)));
      r = replace_subformula(r, bc,
                             mk_and(bc, mk_rhd({}, v("e", k + 1), v("a", k + 1))));
    } else {
      // even step: close the witness pair into a full next level
      r = replace_subformula(
          r, v("b", k), mk_and(v("b", k), mk_rhd({}, v("a", k + 1), v("b", k + 1))));
      r = replace_subformula(r, mk_dia({}, v("a", k + 1)),
                             mk_neg(mk_rhd({}, v("a", k + 1), mk_neg(v("c", k + 1)))));
      FormulaPtr ea = mk_rhd({}, v("e", k + 1), v("a", k + 1));
      r = replace_subformula(
          r, ea,
          mk_and(ea, mk_rhd({}, v("e", k + 1),
                            mk_and(v("b", k + 1), mk_box({}, v("c", k + 1))))));
    }
  }
  return r;
}

}  // namespace fil
