// fil :: proof synthesis — kernel-checkable derivations for the principle table
#pragma once

#include <set>
#include <utility>

#include "fil/proof.hpp"

namespace fil {

// Deterministic k0, k1, … naming; names already reserved are skipped so
// synthesized output is byte-identical run to run.
struct FreshSupply {
  int counter = 0;
  std::set<std::string> used;
  std::string take();
  void reserve(const std::string& name) { used.insert(name); }
};

Derivation derive_W();
Derivation derive_M0();
Derivation derive_R();
Derivation derive_slim(int n);
Derivation derive_broad(int n);

// Two derivations: the primed hypothesis yielding <>a |> a, and the
// axiom-backed proof of b |> <>c -> b |> c.
std::pair<Derivation, Derivation> derive_j5_equivalence();

// Rule transformer: from a derivation of Γ, Δ, #^b(A |> B) |- C obtain one of
// Γ, A |>^a <>B |- C. Δ members must be licenses for a single fresh variable;
// throws std::invalid_argument on a premise shape mismatch.
Derivation derive_gen_p0(const Label& a, const Label& b, const FormulaPtr& A,
                         const FormulaPtr& B, const FormulaPtr& C,
                         const Context& gamma, const Derivation& premise);

}  // namespace fil
