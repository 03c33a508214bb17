#include <mutex>

#include "ctlab/errors.hpp"
#include "ctlab/rank.hpp"
#include "open_subst.hpp"
#include "rank_common.hpp"

namespace ctlab {

namespace {

bool matrix_ok(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Eq: {
      const Term& l = f.left_term();
      const Term& r = f.right_term();
      auto has0 = [](const Term& t) { return !t.free_vars().empty() && t.free_vars().front() == 0; };
      if (has0(r)) return false;
      return !has0(l) || (l.kind() == Term::Kind::Var && l.index() == 0);
    }
    case Formula::Kind::Not:
      return matrix_ok(f.sub());
    case Formula::Kind::Or:
      return matrix_ok(f.left()) && matrix_ok(f.right());
    case Formula::Kind::Exists:
      return f.bound_var() != 0 && matrix_ok(f.body());
  }
  return false;
}

bool is_induction_matrix(const Formula& f) {
  for (VarIndex v : f.free_vars()) {
    if (v > 1) return false;
  }
  return matrix_ok(f);
}

// Increasing-code enumeration of decodable formulas passing a filter.
class Enumeration {
 public:
  explicit Enumeration(bool (*keep)(const Formula&)) : keep_(keep) {}

  std::pair<GoedelCode, Formula> at(std::uint64_t i) {
    std::lock_guard<std::mutex> lock(mu_);
    while (found_.size() <= i) {
      GoedelCode c = next_++;
      if (!is_form(c)) continue;
      Formula f = decode_formula(c);
      if (keep_(f)) found_.emplace_back(c, std::move(f));
    }
    return found_[i];
  }

 private:
  bool (*keep_)(const Formula&);
  std::mutex mu_;
  GoedelCode next_ = 0;
  std::vector<std::pair<GoedelCode, Formula>> found_;
};

Enumeration& le1_enumeration() {
  static Enumeration e([](const Formula& f) { return f.free_vars().size() <= 1; });
  return e;
}

Enumeration& matrix_enumeration() {
  static Enumeration e(is_induction_matrix);
  return e;
}

Formula replace_p(const Formula& f, const Formula& psi) {
  if (!f.has_free(0)) return f;
  switch (f.kind()) {
    case Formula::Kind::Eq:
      return detail::substitute_open(psi, {{kSubject, f.right_term()}});
    case Formula::Kind::Not:
      return Formula::neg(replace_p(f.sub(), psi));
    case Formula::Kind::Or:
      return Formula::disj(replace_p(f.left(), psi), replace_p(f.right(), psi));
    case Formula::Kind::Exists:
      return Formula::exists(f.bound_var(), replace_p(f.body(), psi));
  }
  return f;
}

}  // namespace

Formula enumerate_formula(std::uint64_t i) { return le1_enumeration().at(i).second; }
GoedelCode enumerate_formula_code(std::uint64_t i) { return le1_enumeration().at(i).first; }
Formula induction_matrix(std::uint64_t i) { return matrix_enumeration().at(i).second; }

Formula induction_instance(std::uint64_t i, const Formula& psi) {
  if (psi.free_vars().size() != 1) throw WrongArity("the induction parameter needs exactly one free variable");
  const VarIndex x = 1;
  Formula th = replace_p(induction_matrix(i), detail::as_subject(psi));
  Formula base = substitute(th, {{x, Term::zero()}});
  Formula next = detail::substitute_open(th, {{x, Term::succ(Term::var(x))}});
  Formula step = Formula::forall(x, Formula::implies(th, next));
  return Formula::implies(Formula::conj(base, step), Formula::forall(x, th));
}

std::vector<GoedelCode> closed_term_seqs(std::uint64_t length, std::uint64_t check_bound) {
  std::vector<GoedelCode> out;
  for (std::uint64_t c = 0; c <= check_bound; ++c) {
    if (is_cltermseq(c) && seq_len(c) == length) out.emplace_back(c);
  }
  return out;
}

SeqInstance instantiate_seq(const Formula& phi, const GoedelCode& seq) {
  const auto& fv = phi.free_vars();
  auto items = decode_seq(seq);
  if (items.size() != fv.size()) throw WrongArity("sequence length differs from the free-variable count");
  TermSubst syn, val;
  for (std::size_t k = 0; k < fv.size(); ++k) {
    Term t = decode_term(items[k]);
    val.emplace(fv[k], detail::value_term(t.value()));
    syn.emplace(fv[k], std::move(t));
  }
  return {substitute(phi, syn), substitute(phi, val)};
}

Formula build_beta_utb(std::uint64_t n, std::uint64_t check_bound) {
  std::vector<Formula> outer;
  for (std::uint64_t i = 0; i <= n; ++i) {
    Formula phi = enumerate_formula(i);
    std::vector<Formula> inner;
    for (const auto& s : closed_term_seqs(phi.free_vars().size(), check_bound)) {
      SeqInstance in = instantiate_seq(phi, s);
      Term code = detail::value_term(encode_formula(in.syntactic));
      inner.push_back(Formula::conj(Formula::eq(Term::var(kSubject), code), in.valued));
    }
    outer.push_back(disj_all(inner));
  }
  return disj_all(outer);
}

Formula build_alpha_utb(std::uint64_t n, const Formula& psi, std::uint64_t check_bound) {
  Formula phi = enumerate_formula(n);
  std::vector<Formula> bad;
  for (const auto& s : closed_term_seqs(phi.free_vars().size(), check_bound)) {
    SeqInstance in = instantiate_seq(phi, s);
    Formula at = detail::instantiate(psi, encode_formula(in.syntactic));
    bad.push_back(Formula::neg(Formula::iff(at, in.valued)));
  }
  return Formula::disj(Formula::neg(induction_instance(n, psi)), disj_all(bad));
}

Rank utb_rank(const Formula& gamma, const TruthOracle& o, std::uint64_t check_bound, std::uint64_t level_limit) {
  if (gamma.free_vars().size() > 1) throw TooManyFreeVars("utb_rank needs at most one free variable");
  const Formula g = gamma.is_sentence()
                        ? Formula::conj(gamma, Formula::eq(Term::var(kSubject), Term::var(kSubject)))
                        : detail::as_subject(gamma);

  struct Level {
    std::vector<SeqInstance> inst;
    std::vector<Natural> codes;
  };
  std::vector<Level> levels(level_limit + 1);
  std::vector<Natural> probes;
  for (std::uint64_t x = 0; x <= check_bound; ++x) probes.emplace_back(x);
  for (std::uint64_t i = 0; i <= level_limit; ++i) {
    Formula phi = enumerate_formula(i);
    for (const auto& s : closed_term_seqs(phi.free_vars().size(), check_bound)) {
      levels[i].inst.push_back(instantiate_seq(phi, s));
      levels[i].codes.push_back(encode_formula(levels[i].inst.back().syntactic));
      probes.push_back(levels[i].codes.back());
    }
  }

  bool nonempty = false, open = false;
  for (const auto& x : probes) {
    Verdict v = o.judge(detail::instantiate(g, x));
    nonempty = nonempty || v == Verdict::True;
    open = open || v == Verdict::Unknown;
  }
  if (!nonempty) return open ? Rank::at_least(0) : Rank::minus_infinity();

  for (std::uint64_t i = 0; i <= level_limit; ++i) {
    bool blocked = false;
    Verdict ind = o.judge(induction_instance(i, g));
    if (ind == Verdict::False) return Rank::finite(i);
    blocked = ind == Verdict::Unknown;
    for (std::size_t k = 0; k < levels[i].inst.size(); ++k) {
      Verdict lhs = o.judge(detail::instantiate(g, levels[i].codes[k]));
      Verdict rhs = o.judge(levels[i].inst[k].valued);
      if (lhs == Verdict::Unknown || rhs == Verdict::Unknown) {
        blocked = true;
      } else if (lhs != rhs) {
        return Rank::finite(i);
      }
    }
    if (blocked) return Rank::at_least(i);
  }
  return Rank::at_least(level_limit + 1);
}

}  // namespace ctlab
