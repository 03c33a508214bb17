#pragma once

// Rank functions on one-variable formulas and the alpha/beta/gamma builders
// that drive them. Everything is a finite approximation: types are finite
// lists, quantifiers over closed-term sequences run over codes up to a
// bound, and domains are cut at an explicit bound.
//
// All three ranks use the same counting convention: Finite(n) means levels
// 0..n-1 are verified and level n is refuted.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctlab/evaluation.hpp"
#include "ctlab/goedel.hpp"
#include "ctlab/syntax.hpp"

namespace ctlab {

class Rank {
 public:
  enum class Kind : std::uint8_t { MinusInfinity, Finite, AtLeast, Infinity };

  static Rank minus_infinity() { return Rank(Kind::MinusInfinity, 0); }
  static Rank finite(std::uint64_t n) { return Rank(Kind::Finite, n); }
  // Levels below n verified, level n blocked by an undecided check.
  static Rank at_least(std::uint64_t n) { return Rank(Kind::AtLeast, n); }
  static Rank infinity() { return Rank(Kind::Infinity, 0); }

  Kind kind() const noexcept { return kind_; }
  std::uint64_t value() const noexcept { return n_; }

  friend bool operator==(const Rank&, const Rank&) = default;
  // Unordered where an AtLeast bound leaves the comparison open.
  friend std::partial_ordering operator<=>(const Rank& a, const Rank& b);

 private:
  Rank(Kind k, std::uint64_t n) : kind_(k), n_(n) {}
  Kind kind_;
  std::uint64_t n_;
};

std::string to_string(const Rank& r);
// r >= Finite(n) is certain.
bool certainly_at_least(const Rank& r, std::uint64_t n);
// r <= Finite(n) is certain.
bool certainly_at_most(const Rank& r, std::uint64_t n);

struct TrajectoryClass {
  enum class Kind : std::uint8_t { StrictlyIncreasing, ReachesMax, Violation };
  Kind kind = Kind::StrictlyIncreasing;
  std::size_t index = 0;  // meaningful for ReachesMax and Violation
};

std::string to_string(const TrajectoryClass& c);
TrajectoryClass check_rank_trajectory(const std::vector<Rank>& ranks);

// --- p-rank ---------------------------------------------------------------

struct TypeSpec {
  std::vector<Formula> phis;  // one free variable each
  bool monotone = true;
};

// phi_i := i <= v0, i < count.
TypeSpec ge_type(std::uint64_t count);

// Ranks phi over x <= domain_bound. TooManyFreeVars.
Rank p_rank(const Formula& phi, const TypeSpec& p, const TruthOracle& o, std::uint64_t domain_bound);

// alpha_0 = !E v0. psi(v0); alpha_n = E v0. (psi(v0) & !beta_n(v0)).
// IndexOutOfRange for n >= 1 past the type.
Formula build_alpha_p(std::uint64_t n, const Formula& psi, const TypeSpec& p);
// phi_n (monotone) or phi_0 & ... & phi_n, with subject v0. IndexOutOfRange.
Formula build_beta_p(std::uint64_t n, const TypeSpec& p);
// [gamma_0 .. gamma_d]; gamma_0 = (v0 = v0). Needs d < |phis|.
std::vector<Formula> gamma_sequence_p(const TypeSpec& p, std::uint64_t d);

// --- UTB rank -------------------------------------------------------------

// The i-th code (increasing order) accepted by is_form_le1.
Formula enumerate_formula(std::uint64_t i);
GoedelCode enumerate_formula_code(std::uint64_t i);

// Induction matrices: formulas with free variables among {v0, v1}, v0
// never bound and occurring only as the left side of v0 = t with v0 not
// in t. That atom reads P(t); v1 is the induction variable.
Formula induction_matrix(std::uint64_t i);

// (th(0) & A v1. (th(v1) -> th(S(v1)))) -> A v1. th(v1), where th is the
// i-th matrix with P(t) replaced by psi(t). WrongArity unless psi has
// exactly one free variable.
Formula induction_instance(std::uint64_t i, const Formula& psi);

// Codes c <= check_bound with is_cltermseq(c) and length n.
std::vector<GoedelCode> closed_term_seqs(std::uint64_t length, std::uint64_t check_bound);

// The closed instance phi(s) and its value instance phi(num [[s]]).
struct SeqInstance {
  Formula syntactic;
  Formula valued;
};
SeqInstance instantiate_seq(const Formula& phi, const GoedelCode& seq);

inline constexpr std::uint64_t kDefaultCheckBound = 64;

Formula build_alpha_utb(std::uint64_t n, const Formula& psi, std::uint64_t check_bound = kDefaultCheckBound);
Formula build_beta_utb(std::uint64_t n, std::uint64_t check_bound = kDefaultCheckBound);

// Levels 0..level_limit; all passing gives AtLeast(level_limit + 1).
// Emptiness is probed on x <= check_bound and on every code the levels
// touch.
Rank utb_rank(const Formula& gamma, const TruthOracle& o, std::uint64_t check_bound = kDefaultCheckBound,
              std::uint64_t level_limit = 4);

// --- extension rank -------------------------------------------------------

// Level n: every x <= domain_bound with phi(x) True has n < x <= b[n].
// Never Infinity; all levels passing gives AtLeast(|b|).
Rank ext_rank(const Formula& phi, const std::vector<Natural>& b, const TruthOracle& o, std::uint64_t domain_bound);

// E v0. phi(v0) & A v0. A y. ((phi(v0) & eta_{a_n}(y)) -> (n < v0 & v0 <= y)).
Formula build_alpha_ext(std::uint64_t n, const Formula& phi, const std::vector<std::uint64_t>& a_seq);
// [gamma_0 .. gamma_count-1]; betas eta_{a_{i+1}}(v0), i = 0..c. Needs c+1 < |a|.
std::vector<Formula> gamma_sequence_ext(const std::vector<std::uint64_t>& a_seq, std::uint64_t c,
                                        std::uint64_t count);

}  // namespace ctlab
