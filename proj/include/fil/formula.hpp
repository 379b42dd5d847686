// fil :: formula AST, labels, parser, printer, structural operations
#pragma once

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fil {

// A label is a finite sequence of pairwise-distinct interpretation-variable
// names. The empty label is the identity interpretation; `id` exists only as
// parser input and is normalized away, never stored.
using Label = std::vector<std::string>;

bool label_ok(const Label& la);                 // nonempty names, pairwise distinct
Label label_extend(const Label& la, const std::string& k);  // la·k, throws if k in la
std::string label_str(const Label& la);         // "[k,j]" or "" when empty

enum class Kind { Var, Top, Bot, Neg, And, Or, Impl, Box, Rhd };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable, shared. Box uses label+lhs; Rhd uses label+lhs+rhs.
// Diamonds are sugar: <>^a A == ~#^a ~A, desugared at construction.
struct Formula {
  Kind kind;
  std::string name;  // Var only
  Label label;       // Box/Rhd only
  FormulaPtr lhs, rhs;
};

FormulaPtr mk_var(std::string name);
FormulaPtr mk_top();
FormulaPtr mk_bot();
FormulaPtr mk_neg(FormulaPtr a);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_impl(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_box(Label la, FormulaPtr a);      // throws std::invalid_argument on bad label
FormulaPtr mk_rhd(Label la, FormulaPtr a, FormulaPtr b);
FormulaPtr mk_dia(const Label& la, FormulaPtr a);  // sugar: ~#^a ~A

bool equal(const FormulaPtr& a, const FormulaPtr& b);
int cmp(const FormulaPtr& a, const FormulaPtr& b);  // total structural order
bool less(const FormulaPtr& a, const FormulaPtr& b);

// Recognize ~#^a ~A; fills la/inner when it matches.
bool is_diamond(const FormulaPtr& f, Label* la = nullptr, FormulaPtr* inner = nullptr);

std::size_t node_count(const FormulaPtr& f);
FormulaPtr erase_labels(const FormulaPtr& f);
void collect_interp_vars(const FormulaPtr& f, std::set<std::string>& out);
std::set<std::string> interp_vars(const FormulaPtr& f);
void collect_prop_vars(const FormulaPtr& f, std::set<std::string>& out);
std::set<std::string> prop_vars(const FormulaPtr& f);

// Replace every occurrence of `pat` in `f` by `rep`, top-down: a replaced
// subtree is not rescanned, so self-referential replacements terminate.
FormulaPtr replace_subformula(const FormulaPtr& f, const FormulaPtr& pat,
                              const FormulaPtr& rep);

std::string print(const FormulaPtr& f);

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(const std::string& msg, int line_, int col_)
      : std::runtime_error(msg), line(line_), col(col_) {}
};

// Concrete syntax: ->, |>, \/ (or |), &, ~, #, <>, true, false, [a,b] labels,
// % comments. Throws ParseError with 1-based position info.
FormulaPtr parse(const std::string& text);

}  // namespace fil
