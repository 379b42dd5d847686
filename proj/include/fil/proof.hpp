// fil :: Hilbert-style proof kernel for the labeled logic and its erased core
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fil/formula.hpp"

namespace fil {

// FIL: labeled schemas + nec + deduction moves + the P-rule.
// ILP: everything label-free; axiom P replaces the P-rule; no BoxDrop/RhdExtend.
enum class Mode { FIL, ILP };

enum class Schema { L1, L2, L3, J1, J2a, J2b, J3, J4, J5, BoxDrop, RhdExtend, P };

const char* schema_name(Schema s);
std::optional<Schema> schema_by_name(const std::string& s);
bool schema_allowed(Mode m, Schema s);

// Structural instance check, independent of mode.
bool match_axiom(Schema s, const FormulaPtr& f);

// Propositional tautology over modal atoms: maximal #/|> subformulas and
// propositional variables are opaque atoms; true/false are constants.
bool taut_check(const FormulaPtr& f);

// Hypotheses form a multiset, canonicalized to a sorted vector for comparison.
using Context = std::vector<FormulaPtr>;
Context canon_context(Context ctx);
bool context_equal(const Context& a, const Context& b);
bool context_member(const Context& ctx, const FormulaPtr& f);
Context context_add(const Context& ctx, const FormulaPtr& f);
// Removes one occurrence; nullopt when absent.
std::optional<Context> context_remove(const Context& ctx, const FormulaPtr& f);

struct Judgment {
  Context context;  // canonical
  FormulaPtr conclusion;
};
bool judgment_equal(const Judgment& a, const Judgment& b);

struct Justification {
  enum class Tag { Assume, Taut, Ax, MP, Nec, DedIn, DedOut, PRule } tag;
  Schema schema = Schema::L1;  // Ax
  long i = 0, j = 0;           // line references: MP uses i (implication), j; others i
  Label a, b;                  // Nec uses a; PRule uses a, b
  std::string k;               // PRule fresh variable
};

struct Line {
  long index = 0;  // strictly increasing, not necessarily contiguous
  Judgment judgment;
  Justification just;
};

struct Derivation {
  Mode mode = Mode::FIL;
  std::vector<Line> lines;
};

// How an accepted p-rule line decomposed its premise context; needed to
// replay the step as an erased axiom-P block.
struct PRuleResolution {
  FormulaPtr principal;  // #^b (A |>^{a·k} B) as it sat in the premise context
  FormulaPtr A, B;
  Context delta, gamma;
};

struct LineError {
  long index = 0;          // line index in the derivation (0 = whole file)
  std::string code;        // FreshnessViolation, DeltaShapeViolation, ContextMismatch,
                           // SchemaMismatch, TautologyFailure, BadReference, NoLines,
                           // LabelViolation, IndexOrder
  std::string detail;
};

struct CheckReport {
  bool accepted = false;
  std::optional<Judgment> theorem;  // last line when accepted
  std::vector<LineError> errors;
  std::map<long, PRuleResolution> prule_info;  // by line index
};

CheckReport check(const Derivation& d);

// Erase an accepted FIL derivation to an ILP one proving the erased theorem.
// Throws std::invalid_argument when d does not pass the FIL check.
Derivation to_ilp(const Derivation& d);

// Text format: `INDEX . [HYPS] |- FORMULA ; RULE ARGS`, % comments.
Derivation parse_derivation(const std::string& text, Mode mode = Mode::FIL);
std::string format_derivation(const Derivation& d);

}  // namespace fil
