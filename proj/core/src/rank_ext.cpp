#include "ctlab/errors.hpp"
#include "ctlab/rank.hpp"
#include "ctlab/stopping_disjunction.hpp"
#include "open_subst.hpp"
#include "rank_common.hpp"

namespace ctlab {

Rank ext_rank(const Formula& phi, const std::vector<Natural>& b, const TruthOracle& o, std::uint64_t domain_bound) {
  if (phi.free_vars().size() > 1) throw TooManyFreeVars("ext_rank needs at most one free variable");
  std::vector<std::uint64_t> sat, open;
  for (std::uint64_t x = 0; x <= domain_bound; ++x) {
    Verdict v = o.judge(detail::instantiate(phi, x));
    if (v == Verdict::True) sat.push_back(x);
    if (v == Verdict::Unknown) open.push_back(x);
  }
  if (sat.empty()) return open.empty() ? Rank::minus_infinity() : Rank::at_least(0);

  for (std::uint64_t n = 0; n < b.size(); ++n) {
    auto inside = [&](std::uint64_t x) { return x > n && x <= b[n]; };
    for (std::uint64_t x : sat) {
      if (!inside(x)) return Rank::finite(n);
    }
    for (std::uint64_t x : open) {
      if (!inside(x)) return Rank::at_least(n);
    }
  }
  return Rank::at_least(b.size());
}

Formula build_alpha_ext(std::uint64_t n, const Formula& phi, const std::vector<std::uint64_t>& a_seq) {
  if (n >= a_seq.size()) throw IndexOutOfRange("a_" + std::to_string(n) + " past the sequence");
  if (a_seq[n] == 0) throw InvalidParameter("eta index must be >= 1");
  const Formula s = detail::as_subject(phi);
  const VarIndex y = 1;
  const Term x = Term::var(kSubject);
  Formula eta_y = detail::substitute_open(eta_predicate(a_seq[n]), {{kSubject, Term::var(y)}});
  Formula guard = Formula::conj(leq(numeral(n + 1), x), leq(x, Term::var(y)));
  Formula all = Formula::forall(kSubject, Formula::forall(y, Formula::implies(Formula::conj(s, eta_y), guard)));
  return Formula::conj(Formula::exists(kSubject, s), all);
}

std::vector<Formula> gamma_sequence_ext(const std::vector<std::uint64_t>& a_seq, std::uint64_t c,
                                        std::uint64_t count) {
  if (c + 1 >= a_seq.size()) throw IndexOutOfRange("gamma_ext needs c+1 < |a|");
  std::vector<Formula> betas;
  for (std::uint64_t i = 0; i <= c; ++i) betas.push_back(eta_predicate(a_seq[i + 1]));
  std::vector<Formula> out;
  if (count == 0) return out;
  out.push_back(Formula::eq(Term::var(kSubject), Term::var(kSubject)));
  while (out.size() < count) {
    StopDisjSpec spec{{}, betas, 0, c};
    for (std::uint64_t i = 0; i <= c; ++i) spec.alphas.push_back(build_alpha_ext(i, out.back(), a_seq));
    out.push_back(build_stop_disjunction(spec));
  }
  return out;
}

}  // namespace ctlab
