// fil :: formula constructors and structural operations
#include "fil/formula.hpp"

#include <algorithm>

namespace fil {

bool label_ok(const Label& la) {
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (la[i].empty()) return false;
    for (std::size_t j = i + 1; j < la.size(); ++j)
      if (la[i] == la[j]) return false;
  }
  return true;
}

Label label_extend(const Label& la, const std::string& k) {
  Label out = la;
  out.push_back(k);
  if (!label_ok(out))
    throw std::invalid_argument("label extension breaks distinctness: " + label_str(out));
  return out;
}

std::string label_str(const Label& la) {
  if (la.empty()) return "";
  std::string s = "[";
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (i) s += ',';
    s += la[i];
  }
  s += ']';
  return s;
}

static FormulaPtr node(Kind k, std::string name, Label la, FormulaPtr l, FormulaPtr r) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->name = std::move(name);
  f->label = std::move(la);
  f->lhs = std::move(l);
  f->rhs = std::move(r);
  return f;
}

FormulaPtr mk_var(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  return node(Kind::Var, std::move(name), {}, nullptr, nullptr);
}
FormulaPtr mk_top() { return node(Kind::Top, "", {}, nullptr, nullptr); }
FormulaPtr mk_bot() { return node(Kind::Bot, "", {}, nullptr, nullptr); }
FormulaPtr mk_neg(FormulaPtr a) { return node(Kind::Neg, "", {}, std::move(a), nullptr); }
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
  return node(Kind::And, "", {}, std::move(a), std::move(b));
}
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
  return node(Kind::Or, "", {}, std::move(a), std::move(b));
}
FormulaPtr mk_impl(FormulaPtr a, FormulaPtr b) {
  return node(Kind::Impl, "", {}, std::move(a), std::move(b));
}
FormulaPtr mk_box(Label la, FormulaPtr a) {
  if (!label_ok(la)) throw std::invalid_argument("bad label " + label_str(la));
  return node(Kind::Box, "", std::move(la), std::move(a), nullptr);
}
FormulaPtr mk_rhd(Label la, FormulaPtr a, FormulaPtr b) {
  if (!label_ok(la)) throw std::invalid_argument("bad label " + label_str(la));
  return node(Kind::Rhd, "", std::move(la), std::move(a), std::move(b));
}
FormulaPtr mk_dia(const Label& la, FormulaPtr a) {
  return mk_neg(mk_box(la, mk_neg(std::move(a))));
}

int cmp(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case Kind::Var:
      return a->name.compare(b->name) < 0 ? -1 : (a->name == b->name ? 0 : 1);
    case Kind::Top:
    case Kind::Bot:
      return 0;
    case Kind::Neg:
      return cmp(a->lhs, b->lhs);
    case Kind::And:
    case Kind::Or:
    case Kind::Impl: {
      int c = cmp(a->lhs, b->lhs);
      return c ? c : cmp(a->rhs, b->rhs);
    }
    case Kind::Box: {
      if (a->label != b->label) return a->label < b->label ? -1 : 1;
      return cmp(a->lhs, b->lhs);
    }
    case Kind::Rhd: {
      if (a->label != b->label) return a->label < b->label ? -1 : 1;
      int c = cmp(a->lhs, b->lhs);
      return c ? c : cmp(a->rhs, b->rhs);
    }
  }
  return 0;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return cmp(a, b) == 0; }
bool less(const FormulaPtr& a, const FormulaPtr& b) { return cmp(a, b) < 0; }

bool is_diamond(const FormulaPtr& f, Label* la, FormulaPtr* inner) {
  if (f->kind != Kind::Neg) return false;
  const FormulaPtr& box = f->lhs;
  if (box->kind != Kind::Box || box->lhs->kind != Kind::Neg) return false;
  if (la) *la = box->label;
  if (inner) *inner = box->lhs->lhs;
  return true;
}

std::size_t node_count(const FormulaPtr& f) {
  std::size_t n = 1;
  if (f->lhs) n += node_count(f->lhs);
  if (f->rhs) n += node_count(f->rhs);
  return n;
}

FormulaPtr erase_labels(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::Neg:
      return mk_neg(erase_labels(f->lhs));
    case Kind::And:
      return mk_and(erase_labels(f->lhs), erase_labels(f->rhs));
    case Kind::Or:
      return mk_or(erase_labels(f->lhs), erase_labels(f->rhs));
    case Kind::Impl:
      return mk_impl(erase_labels(f->lhs), erase_labels(f->rhs));
    case Kind::Box:
      return mk_box({}, erase_labels(f->lhs));
    case Kind::Rhd:
      return mk_rhd({}, erase_labels(f->lhs), erase_labels(f->rhs));
  }
  return f;
}

void collect_interp_vars(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->kind == Kind::Box || f->kind == Kind::Rhd)
    out.insert(f->label.begin(), f->label.end());
  if (f->lhs) collect_interp_vars(f->lhs, out);
  if (f->rhs) collect_interp_vars(f->rhs, out);
}

std::set<std::string> interp_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_interp_vars(f, out);
  return out;
}

void collect_prop_vars(const FormulaPtr& f, std::set<std::string>& out) {
  if (f->kind == Kind::Var) out.insert(f->name);
  if (f->lhs) collect_prop_vars(f->lhs, out);
  if (f->rhs) collect_prop_vars(f->rhs, out);
}

std::set<std::string> prop_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_prop_vars(f, out);
  return out;
}

FormulaPtr replace_subformula(const FormulaPtr& f, const FormulaPtr& pat,
                              const FormulaPtr& rep) {
  if (equal(f, pat)) return rep;
  switch (f->kind) {
    case Kind::Var:
    case Kind::Top:
    case Kind::Bot:
      return f;
    case Kind::Neg:
      return mk_neg(replace_subformula(f->lhs, pat, rep));
    case Kind::And:
      return mk_and(replace_subformula(f->lhs, pat, rep),
                    replace_subformula(f->rhs, pat, rep));
    case Kind::Or:
      return mk_or(replace_subformula(f->lhs, pat, rep),
                   replace_subformula(f->rhs, pat, rep));
    case Kind::Impl:
      return mk_impl(replace_subformula(f->lhs, pat, rep),
                     replace_subformula(f->rhs, pat, rep));
    case Kind::Box:
      return mk_box(f->label, replace_subformula(f->lhs, pat, rep));
    case Kind::Rhd:
      return mk_rhd(f->label, replace_subformula(f->lhs, pat, rep),
                    replace_subformula(f->rhs, pat, rep));
  }
  return f;
}

}  // namespace fil
