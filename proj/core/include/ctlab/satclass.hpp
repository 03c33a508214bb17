#pragma once

// Finite satisfaction classes. Occurrences (formula, valuation) are grouped
// into classes of sentences that differ only by closed terms of equal value;
// classes are ordered by the direct-subformula relation and receive verdicts
// bottom-up from the constraints and the compositional clauses.

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ctlab/evaluation.hpp"
#include "ctlab/syntax.hpp"

namespace ctlab {

struct Occurrence {
  Formula formula;
  Valuation valuation;  // restricted to the free variables by normalize()

  Formula sentence() const { return apply_valuation(formula, valuation); }
  friend bool operator==(const Occurrence&, const Occurrence&) = default;
};

// Drops valuation entries outside FV. InadmissibleValuation if one is missing.
Occurrence normalize(Occurrence o);

struct ConstraintSet {
  std::vector<Formula> comp_instances;
  std::vector<std::pair<Occurrence, bool>> preservation;
  std::vector<std::pair<Occurrence, bool>> base_truth;
  std::set<Natural> a_set;
  std::uint64_t eta_b = 0;  // 0: no eta clause
  // Valuations of comp instances, and existential witnesses, range over
  // [0, witness_bound].
  std::uint64_t witness_bound = 3;
};

// The sentence with every maximal closed subterm replaced by a canonical
// term of the same value. Two occurrences are one step apart iff their keys
// are equal.
Formula canonical_key(const Occurrence& o);

// Anti-unification of the two sentences: equal outside closed-term
// positions, equal values at those.
bool occurrence_equiv_step(const Occurrence& a, const Occurrence& b);

using Partition = std::vector<std::vector<std::size_t>>;

// Union-find over occurrence_equiv_step; classes and members in input order.
Partition equiv_classes(const std::vector<Occurrence>& occs);

struct ClassDag {
  std::vector<std::vector<std::size_t>> children;  // direct-subformula classes
  std::vector<std::size_t> topo;                    // children before parents

  bool minimal(std::size_t c) const { return children[c].empty(); }
  // Transitive closure query: a strictly below b.
  bool below(std::size_t a, std::size_t b) const;
};

// CyclicOrder if the relation is not well founded.
ClassDag subformula_order(const std::vector<Occurrence>& occs, const Partition& classes);

class SatAssignment {
 public:
  struct Class {
    Formula key;
    std::vector<std::size_t> members;
    bool verdict = false;
  };

  const std::vector<Occurrence>& occurrences() const noexcept { return occs_; }
  const std::vector<Class>& classes() const noexcept { return classes_; }
  const ClassDag& order() const noexcept { return order_; }
  std::size_t class_of(std::size_t occurrence) const { return class_of_.at(occurrence); }

  std::optional<std::size_t> find_class(const Formula& sentence) const;
  std::optional<bool> verdict(const Occurrence& o) const;
  // Mutation hook for tests.
  void set_verdict(std::size_t cls, bool v) { classes_.at(cls).verdict = v; }

 private:
  friend SatAssignment build_satisfaction(const ConstraintSet& gamma);
  std::vector<Occurrence> occs_;
  std::vector<std::size_t> class_of_;
  std::vector<Class> classes_;
  ClassDag order_;
  std::unordered_map<Formula, std::size_t, FormulaHash> index_;
};

// InconsistentConstraints when two sources disagree on a class.
SatAssignment build_satisfaction(const ConstraintSet& gamma);

// Every occurrence the construction considers: comp instances under all
// valuations in range, their direct subformula occurrences, the
// preservation and base occurrences, and eta_b at x in [0, W] and in A.
std::vector<Occurrence> constraint_universe(const ConstraintSet& gamma);

enum class ThetaClause : std::uint8_t { Comp, RegularityI, RegularityII, Base, Eta, Preserve };
inline constexpr std::size_t kThetaClauses = 6;
std::string_view to_string(ThetaClause c);

struct ThetaViolation {
  ThetaClause clause;
  std::vector<Occurrence> witnesses;
  std::string detail;
};

struct ThetaReport {
  std::array<std::uint64_t, kThetaClauses> checked{};
  std::vector<ThetaViolation> violations;
  bool clean() const noexcept { return violations.empty(); }
};

ThetaReport verify_theta_fragment(const SatAssignment& s, const ConstraintSet& gamma);

std::string format_assignment(const SatAssignment& s);
std::string format_theta_report(const ThetaReport& r);

// Judges sentences by class lookup; Unknown off the fragment.
class SatOracle final : public TruthOracle {
 public:
  explicit SatOracle(const SatAssignment& s) : s_(s) {}
  Verdict judge(const Formula& sentence) const override;

 private:
  const SatAssignment& s_;
};

// Sections [COMP] [PRESERVE] [BASE] [A] [ETA]; '#' starts a comment.
// Occurrence lines: "formula ; v0=3,v1=5 ; true". SyntaxError.
ConstraintSet parse_constraints(std::string_view text);

}  // namespace ctlab
