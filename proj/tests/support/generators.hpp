#pragma once

// Seeded random generators shared by the unit tests and the acceptance
// binary.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <unordered_set>
#include <vector>

#include "ctlab/errors.hpp"
#include "ctlab/goedel.hpp"
#include "ctlab/satclass.hpp"
#include "ctlab/syntax.hpp"

namespace ctlab::gen {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& r, std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(r);
}
inline bool coin(Rng& r, double p = 0.5) { return std::bernoulli_distribution(p)(r); }

// Variables are drawn from v0..v(nvars-1); nvars == 0 gives closed terms.
inline Term term(Rng& r, int depth, VarIndex nvars) {
  if (depth <= 0) {
    if (nvars > 0 && coin(r)) return Term::var(uniform(r, 0, nvars - 1));
    return numeral(uniform(r, 0, 3));
  }
  switch (uniform(r, 0, 4)) {
    case 0:
      return Term::succ(term(r, depth - 1, nvars));
    case 1:
      return Term::add(term(r, depth - 1, nvars), term(r, depth - 1, nvars));
    case 2:
      return Term::mul(term(r, depth - 1, nvars), term(r, depth - 1, nvars));
    default:
      return term(r, 0, nvars);
  }
}

// Arbitrary kernel formula; bound variables are drawn from the same pool.
inline Formula formula(Rng& r, int depth, VarIndex nvars) {
  if (depth <= 1) return Formula::eq(term(r, 2, nvars), term(r, 2, nvars));
  switch (uniform(r, 0, 3)) {
    case 0:
      return Formula::neg(formula(r, depth - 1, nvars));
    case 1:
      return Formula::disj(formula(r, depth - 1, nvars), formula(r, uniform(r, 1, depth - 1), nvars));
    case 2:
      return Formula::exists(uniform(r, 0, std::max<VarIndex>(nvars, 1) - 1), formula(r, depth - 1, nvars));
    default:
      return Formula::eq(term(r, 2, nvars), term(r, 2, nvars));
  }
}

// Sentences whose quantifiers are all bounded by small numerals:
// E v. (v <= k & body), and the dual universal. `scope` lists the variables
// bound so far.
inline Formula delta0(Rng& r, int depth, std::vector<VarIndex>& scope) {
  auto atom = [&] {
    auto t = [&] {
      Term x = term(r, 1, 0);
      if (!scope.empty() && coin(r, 0.7)) {
        Term v = Term::var(scope[uniform(r, 0, scope.size() - 1)]);
        x = coin(r) ? v : Term::add(v, x);
      }
      return x;
    };
    return coin(r, 0.25) ? leq(t(), t()) : Formula::eq(t(), t());
  };
  if (depth <= 1) return atom();
  switch (uniform(r, 0, 4)) {
    case 0:
      return Formula::neg(delta0(r, depth - 1, scope));
    case 1:
    case 2: {
      Formula a = delta0(r, depth - 1, scope);
      return Formula::disj(a, delta0(r, uniform(r, 1, depth - 1), scope));
    }
    case 3: {
      const VarIndex v = scope.empty() ? 0 : scope.back() + 1;
      scope.push_back(v);
      Formula body = delta0(r, depth - 1, scope);
      scope.pop_back();
      Formula guard = leq(Term::var(v), numeral(uniform(r, 0, 5)));
      return coin(r) ? Formula::exists(v, Formula::conj(guard, body))
                     : Formula::forall(v, Formula::implies(guard, body));
    }
    default:
      return atom();
  }
}

// Closes a set of sentences under sentence subformulas and existential
// instances up to `instances`.
inline std::vector<Formula> sentence_closure(const std::vector<Formula>& roots, std::uint64_t instances) {
  std::vector<Formula> out;
  std::unordered_set<Formula, FormulaHash> seen;
  std::vector<Formula> stack(roots.rbegin(), roots.rend());
  while (!stack.empty()) {
    Formula f = stack.back();
    stack.pop_back();
    if (!seen.insert(f).second) continue;
    out.push_back(f);
    switch (f.kind()) {
      case Formula::Kind::Eq:
        break;
      case Formula::Kind::Not:
        stack.push_back(f.sub());
        break;
      case Formula::Kind::Or:
        stack.push_back(f.left());
        stack.push_back(f.right());
        break;
      case Formula::Kind::Exists:
        for (std::uint64_t x = 0; x <= instances; ++x) {
          stack.push_back(substitute(f.body(), {{f.bound_var(), numeral(x)}}));
        }
        break;
    }
  }
  return out;
}

// Two distinct closed terms with value v.
inline std::pair<Term, Term> equal_value_pair(Rng& r, std::uint64_t v) {
  Term a = numeral(v);
  std::uint64_t k = uniform(r, 0, v);
  Term b = Term::add(numeral(k), numeral(v - k));
  if (coin(r) && v > 0) b = Term::mul(Term::succ(Term::zero()), numeral(v));
  return {a, b};
}

// Codes of closed-term sequences, grouped in pairs of equal value vectors.
inline std::vector<GoedelCode> equal_value_seqs(Rng& r, std::size_t pairs, std::size_t max_len) {
  std::vector<GoedelCode> out;
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::size_t len = uniform(r, 1, max_len);
    std::vector<GoedelCode> a, b;
    for (std::size_t k = 0; k < len; ++k) {
      auto [s, t] = equal_value_pair(r, uniform(r, 0, 4));
      a.push_back(encode_term(s));
      b.push_back(encode_term(t));
    }
    out.push_back(encode_seq(a));
    out.push_back(encode_seq(b));
  }
  return out;
}

// Formula over v0, v1 that is never an eta layer, used as a comp instance.
inline Formula comp_formula(Rng& r, int depth) {
  auto atom = [&] { return Formula::eq(term(r, 1, 2), term(r, 1, 2)); };
  if (depth <= 1) return atom();
  switch (uniform(r, 0, 3)) {
    case 0:
      return Formula::neg(comp_formula(r, depth - 1));
    case 1:
      return Formula::disj(comp_formula(r, depth - 1), comp_formula(r, uniform(r, 1, depth - 1)));
    case 2:
      return Formula::exists(uniform(r, 0, 1), comp_formula(r, depth - 1));
    default:
      return atom();
  }
}

inline std::set<Natural> random_a_set(Rng& r, std::uint64_t w) {
  std::set<Natural> a;
  for (std::uint64_t x = 0; x <= w + 2; ++x) {
    if (coin(r, 0.4)) a.insert(Natural(x));
  }
  return a;
}

// A consistent constraint set: comps, a_set and eta index are random; base
// entries are sampled from a first construction so they cannot conflict.
// Nullopt when the universe exceeds max_occurrences.
inline std::optional<ConstraintSet> consistent_fragment(Rng& r, std::size_t max_occurrences = 200) {
  ConstraintSet g;
  g.witness_bound = 2;
  g.eta_b = uniform(r, 1, 4);
  g.a_set = random_a_set(r, g.witness_bound);
  const std::size_t n = uniform(r, 1, 4);
  for (std::size_t i = 0; i < n; ++i) g.comp_instances.push_back(comp_formula(r, uniform(r, 1, 6)));
  if (constraint_universe(g).size() > max_occurrences) return std::nullopt;

  SatAssignment first = build_satisfaction(g);
  const auto& occs = first.occurrences();
  for (std::size_t k = 0; k < 3 && !occs.empty(); ++k) {
    const Occurrence& o = occs[uniform(r, 0, occs.size() - 1)];
    g.base_truth.emplace_back(o, *first.verdict(o));
  }
  return g;
}

}  // namespace ctlab::gen
