// fil :: minimal-parenthesis printer; re-sugars ~#^a ~A to <>^a A
#include "fil/formula.hpp"

namespace fil {
namespace {

// Precedence floor each position demands: -> 1, |> 2, \/ 3, & 4, unary 5.
// A node prints parenthesized when its own level is below the floor.
int level(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::Impl: return 1;
    case Kind::Rhd: return 2;
    case Kind::Or: return 3;
    case Kind::And: return 4;
    default: return 5;  // Neg/Box/diamond bind tightest; atoms never need parens
  }
}

void rec(const FormulaPtr& f, int floor, std::string& out) {
  Label la;
  FormulaPtr inner;
  bool dia = is_diamond(f, &la, &inner);
  int lv = dia ? 5 : level(f);
  bool paren = lv < floor;
  if (paren) out += '(';
  if (dia) {
    out += "<>";
    out += label_str(la);
    out += ' ';
    rec(inner, 5, out);
  } else {
    switch (f->kind) {
      case Kind::Var: out += f->name; break;
      case Kind::Top: out += "true"; break;
      case Kind::Bot: out += "false"; break;
      case Kind::Neg:
        out += '~';
        rec(f->lhs, 5, out);
        break;
      case Kind::And:
        rec(f->lhs, 4, out);  // left-associative: left child may be another &
        out += " & ";
        rec(f->rhs, 5, out);
        break;
      case Kind::Or:
        rec(f->lhs, 3, out);
        out += " \\/ ";
        rec(f->rhs, 4, out);
        break;
      case Kind::Impl:
        rec(f->lhs, 2, out);  // right-associative
        out += " -> ";
        rec(f->rhs, 1, out);
        break;
      case Kind::Box:
        out += '#';
        out += label_str(f->label);
        out += ' ';
        rec(f->lhs, 5, out);
        break;
      case Kind::Rhd:
        rec(f->lhs, 3, out);  // non-associative: nested |> always parenthesized
        out += " |>";
        out += label_str(f->label);
        out += ' ';
        rec(f->rhs, 3, out);
        break;
    }
  }
  if (paren) out += ')';
}

}  // namespace

std::string print(const FormulaPtr& f) {
  std::string out;
  rec(f, 1, out);
  return out;
}

}  // namespace fil
