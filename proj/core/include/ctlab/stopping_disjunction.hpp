#pragma once

// Disjunctions with a stopping condition: alpha_i selects the first index
// whose beta decides the whole formula.

#include <cstdint>
#include <optional>
#include <vector>

#include "ctlab/evaluation.hpp"
#include "ctlab/syntax.hpp"

namespace ctlab {

struct StopDisjSpec {
  std::vector<Formula> alphas;  // sentences, size hi+1
  std::vector<Formula> betas;   // size hi+1
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};

// Fits a spec over the full lists: lo = 0, hi = size - 1.
StopDisjSpec make_spec(std::vector<Formula> alphas, std::vector<Formula> betas);

// D(c)   = a_c & b_c
// D(i)   = (a_i -> b_i) & ((a_i & b_i) | (!a_i & D(i+1)))
// built from hi downwards. SpecInvariantViolation on a malformed spec.
Formula build_stop_disjunction(const StopDisjSpec& spec);

// ((a_0 & b_0) | (a_1 & b_1)) | ... ; LengthMismatch, InvalidParameter on empty.
Formula build_naive_disjunction(const std::vector<Formula>& alphas, const std::vector<Formula>& betas);

// Least i with judge(alphas[i]) == True. UndecidedPrefix when an Unknown comes
// first.
std::optional<std::uint64_t> least_true_index(const std::vector<Formula>& alphas, const TruthOracle& o);

// judge(D) == judge(beta_k0), or judge(D) == False when no alpha holds.
// The search for k0 starts at spec.lo. Betas must be sentences here.
bool verify_stop_property(const StopDisjSpec& spec, const TruthOracle& o);

struct SweepResult {
  std::uint64_t cases = 0;
  std::uint64_t passed = 0;
  bool ok() const noexcept { return cases == passed; }
};

struct ExhaustiveSweep {
  SweepResult with_true_alpha;  // judge(D) == judge(beta_k0)
  SweepResult all_alpha_false;  // judge(D) == False
};

// Every truth assignment to opaque atoms a_0..a_c, b_0..b_c, lo = 0, hi = c.
ExhaustiveSweep sweep_truth_tables(std::uint64_t c);

// The atom pair used by the sweeps: a_i = (2i = 0), b_i = (2i+1 = 0).
Formula sweep_alpha_atom(std::uint64_t i);
Formula sweep_beta_atom(std::uint64_t i);

struct NaiveFoil {
  StopDisjSpec spec;
  AtomTable atoms;
  std::uint64_t k0 = 0;
  bool naive = false;      // propositional value of the naive disjunction
  bool stopping = false;   // ... of the stopping disjunction
  bool beta_k0 = false;
};

// A machine-checked assignment on which the naive disjunction and beta_k0
// disagree while the stopping disjunction agrees with beta_k0.
NaiveFoil find_naive_foil(std::uint64_t max_c = 2);

}  // namespace ctlab
