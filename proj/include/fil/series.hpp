// fil :: the graded principle series — slim (X/Y/Z), broad (U/V), original
#pragma once

#include "fil/formula.hpp"

namespace fil {

// Slim family over letters a_n, b_n, c_n, e_n. The vacuous ∧true in the base
// is elided unless keep_top is set.
FormulaPtr gen_X(int n, bool keep_top = false);
FormulaPtr gen_Y(int n);
FormulaPtr gen_Z(int n, bool keep_top = false);
FormulaPtr gen_slim(int n, bool keep_top = false);

// Broad family over letters a, b, c, d_n. U/V start at 1 (std::domain_error
// below); gen_broad(0) is the plain principle without the U/V tower.
FormulaPtr gen_U(int n);
FormulaPtr gen_V(int n);
FormulaPtr gen_broad(int n);

// The historical presentation, built by iterated subformula substitution.
FormulaPtr gen_original(int n);

}  // namespace fil
