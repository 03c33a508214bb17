#include "ctlab/errors.hpp"
#include "ctlab/rank.hpp"
#include "ctlab/stopping_disjunction.hpp"
#include "rank_common.hpp"

namespace ctlab {

TypeSpec ge_type(std::uint64_t count) {
  TypeSpec p;
  for (std::uint64_t i = 0; i < count; ++i) p.phis.push_back(leq(numeral(i), Term::var(kSubject)));
  return p;
}

Rank p_rank(const Formula& phi, const TypeSpec& p, const TruthOracle& o, std::uint64_t domain_bound) {
  if (phi.free_vars().size() > 1) throw TooManyFreeVars("p_rank needs at most one free variable");
  std::vector<std::uint64_t> sat, open;
  for (std::uint64_t x = 0; x <= domain_bound; ++x) {
    Verdict v = o.judge(detail::instantiate(phi, x));
    if (v == Verdict::True) sat.push_back(x);
    if (v == Verdict::Unknown) open.push_back(x);
  }
  if (sat.empty()) return open.empty() ? Rank::minus_infinity() : Rank::at_least(0);

  for (std::uint64_t i = 0; i < p.phis.size(); ++i) {
    bool blocked = false;
    for (std::uint64_t x : sat) {
      Verdict v = o.judge(detail::instantiate(p.phis[i], x));
      if (v == Verdict::False) return Rank::finite(i);
      blocked = blocked || v == Verdict::Unknown;
    }
    // An undecided member could still refute this level.
    for (std::uint64_t x : open) {
      blocked = blocked || o.judge(detail::instantiate(p.phis[i], x)) != Verdict::True;
    }
    if (blocked) return Rank::at_least(i);
  }
  return Rank::infinity();
}

Formula build_beta_p(std::uint64_t n, const TypeSpec& p) {
  if (n >= p.phis.size()) {
    throw IndexOutOfRange("beta_" + std::to_string(n) + " past a type of length " + std::to_string(p.phis.size()));
  }
  if (p.monotone) return detail::as_subject(p.phis[n]);
  std::vector<Formula> parts;
  for (std::uint64_t i = 0; i <= n; ++i) parts.push_back(detail::as_subject(p.phis[i]));
  return conj_all(parts);
}

Formula build_alpha_p(std::uint64_t n, const Formula& psi, const TypeSpec& p) {
  Formula s = detail::as_subject(psi);
  if (n == 0) return Formula::neg(Formula::exists(kSubject, s));
  return Formula::exists(kSubject, Formula::conj(s, Formula::neg(build_beta_p(n, p))));
}

std::vector<Formula> gamma_sequence_p(const TypeSpec& p, std::uint64_t d) {
  if (d >= p.phis.size()) throw IndexOutOfRange("gamma sequence needs d < type length");
  std::vector<Formula> betas;
  for (std::uint64_t i = 0; i <= d; ++i) betas.push_back(build_beta_p(i, p));
  std::vector<Formula> out{Formula::eq(Term::var(kSubject), Term::var(kSubject))};
  for (std::uint64_t j = 0; j < d; ++j) {
    StopDisjSpec spec{{}, betas, 0, d};
    for (std::uint64_t i = 0; i <= d; ++i) spec.alphas.push_back(build_alpha_p(i, out.back(), p));
    out.push_back(build_stop_disjunction(spec));
  }
  return out;
}

}  // namespace ctlab
