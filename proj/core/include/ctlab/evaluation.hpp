#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "ctlab/goedel.hpp"
#include "ctlab/natural.hpp"
#include "ctlab/syntax.hpp"

namespace ctlab {

enum class Verdict : std::uint8_t { False, True, Unknown };

std::string_view to_string(Verdict v);
inline Verdict verdict_of(bool b) { return b ? Verdict::True : Verdict::False; }
Verdict kleene_not(Verdict v);
Verdict kleene_or(Verdict a, Verdict b);

class TruthOracle {
 public:
  virtual ~TruthOracle() = default;
  // Implementations are deterministic and safe to call concurrently.
  virtual Verdict judge(const Formula& sentence) const = 0;
};

struct Budget {
  std::uint64_t witness_bound = 64;
  std::uint64_t node_budget = 1'000'000;
};

Natural eval_closed_term(const Term& t);  // OpenTerm

// Kleene evaluation over the natural numbers. An existential is False only
// when its body pins the witness below a term (v <= t, or a conjunction with
// such a conjunct, or the dual universal) and every candidate up to the
// witness bound fails. E z. (b = (z + a)) is decided directly as a <= b.
Verdict eval_sentence(const Formula& s, const Budget& b);  // NotASentence

using AtomTable = std::unordered_map<Formula, bool, FormulaHash>;

// Two-valued evaluation with the table's sentences as opaque atoms; anything
// else must be built from atoms by ! and |. MissingAtom otherwise.
bool eval_prop(const Formula& f, const AtomTable& atoms);

class StandardModelOracle final : public TruthOracle {
 public:
  explicit StandardModelOracle(Budget b = {});
  ~StandardModelOracle() override;
  Verdict judge(const Formula& sentence) const override;
  const Budget& budget() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Closed-world structure on [0, window]: quantifiers range over the window,
// terms still evaluate in the naturals. Override entries (sentence -> truth)
// win over composition wherever they match a subformula instance.
class WindowOracle final : public TruthOracle {
 public:
  explicit WindowOracle(std::uint64_t window, std::uint64_t node_budget = 50'000'000,
                        AtomTable overrides = {});
  ~WindowOracle() override;
  Verdict judge(const Formula& sentence) const override;
  std::uint64_t window() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

class PropositionalOracle final : public TruthOracle {
 public:
  explicit PropositionalOracle(AtomTable atoms) : atoms_(std::move(atoms)) {}
  Verdict judge(const Formula& sentence) const override;  // MissingAtom
  const AtomTable& atoms() const noexcept { return atoms_; }

 private:
  AtomTable atoms_;
};

class TableOracle final : public TruthOracle {
 public:
  explicit TableOracle(std::unordered_set<Formula, FormulaHash> truths) : truths_(std::move(truths)) {}
  Verdict judge(const Formula& sentence) const override;

 private:
  std::unordered_set<Formula, FormulaHash> truths_;
};

// --- axiom conformance ------------------------------------------------------

// Axiom numbering: 1 atomic, 2 negation, 3 disjunction, 4 existential,
// 5 regularity.
struct CtViolation {
  int axiom = 0;
  std::vector<Formula> sentences;
  std::string expected;
  std::string actual;
};

struct AxiomTally {
  std::uint64_t checked = 0;
  std::uint64_t unknown = 0;
  std::uint64_t skipped = 0;
};

struct CtReport {
  std::array<AxiomTally, 6> tally{};
  std::vector<CtViolation> violations;

  bool clean() const noexcept { return violations.empty(); }
  std::uint64_t unknown_total() const noexcept;
};

struct CtOptions {
  // Existential instances phi[x/v] are judged for x <= instance_bound.
  std::uint64_t instance_bound = 16;
};

// Axioms 1-4 for every sentence of the fragment, axiom 5 for every open
// subformula of the fragment against every pair of distinct supplied
// closed-term sequences of matching length and equal values.
CtReport check_ct_axioms(const TruthOracle& o, const std::vector<Formula>& fragment,
                         const std::vector<GoedelCode>& term_seqs, const CtOptions& opt = {});

struct DepthCut {
  std::function<bool(std::uint64_t)> contains;
};
struct CodeCut {
  Natural bound;
};
using Cut = std::variant<DepthCut, CodeCut>;

// As check_ct_axioms with axioms 2-4 gated by the cut; 1 and 5 ungated.
CtReport check_ct_restricted(const TruthOracle& o, const Cut& cut, const std::vector<Formula>& fragment,
                             const std::vector<GoedelCode>& term_seqs, const CtOptions& opt = {});

// "AXIOM k VIOLATION: ..." lines followed by per-axiom tallies.
std::string format_report(const CtReport& r);

}  // namespace ctlab
