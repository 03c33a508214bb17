#pragma once

// Terms and formulas of first-order arithmetic over {0, S, +, *, =}.
//
// Both are immutable handles onto shared nodes. Every node caches its hash,
// free variables, size and (for closed terms) its value, so the large shared
// DAGs produced by the rank builders stay cheap to hash and compare.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctlab/natural.hpp"

namespace ctlab {

using VarIndex = std::uint64_t;

// Slot of the distinguished free variable in one-variable predicates (the v
// of eta_b, the x of gamma_j and of every type formula).
inline constexpr VarIndex kSubject = 0;

// Numerals longer than this are refused; use binary_term for big values.
inline constexpr std::uint64_t kMaxNumeral = std::uint64_t{1} << 20;

class Term {
 public:
  enum class Kind : std::uint8_t { Zero, Succ, Add, Mul, Var };

  Term();  // 0

  static Term zero();
  static Term succ(Term t);
  static Term add(Term l, Term r);
  static Term mul(Term l, Term r);
  static Term var(VarIndex i);

  Kind kind() const noexcept { return n_->kind; }
  const Term& arg() const;  // Succ
  const Term& lhs() const;  // Add, Mul
  const Term& rhs() const;
  VarIndex index() const;   // Var

  bool closed() const noexcept { return n_->free.empty(); }
  const std::vector<VarIndex>& free_vars() const noexcept { return n_->free; }
  // Throws OpenTerm when the term has variables.
  const Natural& value() const;

  std::size_t hash() const noexcept { return n_->hash; }
  std::uint64_t size() const noexcept { return n_->size; }
  // One past the largest variable index occurring in the term; 0 if none.
  VarIndex var_bound() const noexcept { return n_->var_bound; }

  bool same_node(const Term& o) const noexcept { return n_ == o.n_; }
  const void* id() const noexcept { return n_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node {
    Kind kind;
    VarIndex var = 0;
    std::vector<Term> kids;
    std::vector<VarIndex> free;
    std::size_t hash = 0;
    std::uint64_t size = 1;
    VarIndex var_bound = 0;
    Natural value;
  };
  explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static Term make(Kind k, VarIndex v, std::vector<Term> kids);

  std::shared_ptr<const Node> n_;
};

class Formula {
 public:
  enum class Kind : std::uint8_t { Eq, Not, Or, Exists };

  Formula();  // 0 = 0

  static Formula eq(Term l, Term r);
  static Formula neg(Formula f);
  static Formula disj(Formula l, Formula r);
  static Formula exists(VarIndex v, Formula body);

  // Derived connectives, expanded on construction.
  static Formula conj(Formula l, Formula r);     // !(!l | !r)
  static Formula implies(Formula l, Formula r);  // !l | r
  static Formula iff(Formula l, Formula r);      // (l -> r) & (r -> l)
  static Formula forall(VarIndex v, Formula body);  // !E v. !body

  Kind kind() const noexcept { return n_->kind; }
  const Term& left_term() const;   // Eq
  const Term& right_term() const;
  const Formula& sub() const;      // Not
  const Formula& left() const;     // Or
  const Formula& right() const;
  VarIndex bound_var() const;      // Exists
  const Formula& body() const;

  const std::vector<VarIndex>& free_vars() const noexcept { return n_->free; }
  bool is_sentence() const noexcept { return n_->free.empty(); }
  bool has_free(VarIndex v) const noexcept;

  std::uint64_t depth() const noexcept { return n_->depth; }
  // Tree size, saturating at UINT64_MAX (shared subtrees count every time).
  std::uint64_t size() const noexcept { return n_->size; }
  VarIndex var_bound() const noexcept { return n_->var_bound; }
  std::size_t hash() const noexcept { return n_->hash; }
  // Hash that ignores every term position; invariant under substitution.
  std::size_t shape_hash() const noexcept { return n_->shape; }

  bool same_node(const Formula& o) const noexcept { return n_ == o.n_; }
  const void* id() const noexcept { return n_.get(); }

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    VarIndex var = 0;
    std::vector<Term> terms;
    std::vector<Formula> kids;
    std::vector<VarIndex> free;
    std::size_t hash = 0;
    std::size_t shape = 0;
    std::uint64_t size = 1;
    std::uint64_t depth = 1;
    VarIndex var_bound = 0;
  };
  explicit Formula(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static std::optional<std::pair<const Formula*, const Formula*>> as_conjunction_parts(const Formula& f);

  std::shared_ptr<const Node> n_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};
struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

using Valuation = std::map<VarIndex, Natural>;
using TermSubst = std::map<VarIndex, Term>;

// --- numerals -------------------------------------------------------------

Term numeral(std::uint64_t n);
Term numeral(const Natural& n);  // InvalidParameter above kMaxNumeral
// A closed term of size O(log n) with value n (Horner scheme in base 2).
Term binary_term(const Natural& n);
std::uint64_t succ_count(const Term& t);

// --- text -----------------------------------------------------------------

Term parse_term(std::string_view text);
Formula parse_formula(std::string_view text);
std::string render(const Term& t);
std::string render(const Formula& f);

// --- structure ------------------------------------------------------------

const std::vector<VarIndex>& free_vars(const Formula& f);
std::vector<Formula> direct_subformulas(const Formula& f);
std::uint64_t syntactic_depth(const Formula& f);

// Recognizes the kernel image of a conjunction, !(!a | !b).
std::optional<std::pair<Formula, Formula>> as_conjunction(const Formula& f);

// Simultaneous substitution at free occurrences. Every image must be closed
// (OpenTermSubstitution otherwise).
Formula substitute(const Formula& f, const TermSubst& s);
Term substitute(const Term& t, const TermSubst& s);

// phi[alpha]: numerals for the free variables. InadmissibleValuation when a
// free variable is missing from the valuation.
Formula apply_valuation(const Formula& f, const Valuation& a);
// The valuation restricted to f's free variables.
Valuation restrict_to(const Valuation& a, const Formula& f);

// --- named families -------------------------------------------------------

Formula top();     // 0 = 0
Formula bottom();  // !(0 = 0)

// Left-grouped iterated connectives; empty lists give top() / bottom().
Formula conj_all(const std::vector<Formula>& fs);
Formula disj_all(const std::vector<Formula>& fs);

// a <= b, spelled E z. (b = (z + a)) with z above every variable of a and b.
Formula leq(const Term& a, const Term& b);

struct LeqShape {
  Term small;   // a
  Term large;   // b
  VarIndex witness;
};
// Matches E z. (l = r) where one side is (z + a) or (a + z) with z not in a,
// and z does not occur on the other side. Reads as a <= other side.
std::optional<LeqShape> as_leq(const Formula& f);

// eta_b with v = v0 and x_i = v(i+1); free variables {v0, v1}.
Formula build_eta(std::uint64_t b);
// eta_b with v0 -> numeral(x), v1 -> 0.
Formula close_eta(std::uint64_t b, const Natural& x);
// eta_b with only the x_0 carrier closed; v0 stays free.
Formula eta_predicate(std::uint64_t b);
// The quantified layers E x_k ... E x_b C, k = 1..b, outermost first.
std::vector<Formula> eta_layers(std::uint64_t b);

}  // namespace ctlab

template <>
struct std::hash<ctlab::Term> {
  std::size_t operator()(const ctlab::Term& t) const noexcept { return t.hash(); }
};
template <>
struct std::hash<ctlab::Formula> {
  std::size_t operator()(const ctlab::Formula& f) const noexcept { return f.hash(); }
};
