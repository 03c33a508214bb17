#include "ctlab/stopping_disjunction.hpp"

#include "ctlab/errors.hpp"

namespace ctlab {

StopDisjSpec make_spec(std::vector<Formula> alphas, std::vector<Formula> betas) {
  if (alphas.empty()) throw SpecInvariantViolation("stopping disjunction needs at least one index");
  const std::uint64_t hi = alphas.size() - 1;
  return StopDisjSpec{std::move(alphas), std::move(betas), 0, hi};
}

namespace {

void validate(const StopDisjSpec& s) {
  if (s.alphas.size() != s.betas.size()) throw SpecInvariantViolation("alphas and betas differ in length");
  if (s.alphas.size() != s.hi + 1) throw SpecInvariantViolation("list length must be hi+1");
  if (s.lo > s.hi) throw SpecInvariantViolation("lo > hi");
  for (const auto& a : s.alphas) {
    if (!a.is_sentence()) throw SpecInvariantViolation("alpha is not a sentence: " + render(a));
  }
}

}  // namespace

Formula build_stop_disjunction(const StopDisjSpec& spec) {
  validate(spec);
  const auto& a = spec.alphas;
  const auto& b = spec.betas;
  Formula acc = Formula::conj(a[spec.hi], b[spec.hi]);
  for (std::uint64_t i = spec.hi; i-- > spec.lo;) {
    acc = Formula::conj(Formula::implies(a[i], b[i]),
                        Formula::disj(Formula::conj(a[i], b[i]), Formula::conj(Formula::neg(a[i]), acc)));
  }
  return acc;
}

Formula build_naive_disjunction(const std::vector<Formula>& alphas, const std::vector<Formula>& betas) {
  if (alphas.size() != betas.size()) throw LengthMismatch("alphas and betas differ in length");
  if (alphas.empty()) throw InvalidParameter("naive disjunction of no disjuncts");
  std::vector<Formula> parts;
  parts.reserve(alphas.size());
  for (std::size_t i = 0; i < alphas.size(); ++i) parts.push_back(Formula::conj(alphas[i], betas[i]));
  return disj_all(parts);
}

std::optional<std::uint64_t> least_true_index(const std::vector<Formula>& alphas, const TruthOracle& o) {
  for (std::uint64_t i = 0; i < alphas.size(); ++i) {
    Verdict v = o.judge(alphas[i]);
    if (v == Verdict::True) return i;
    if (v == Verdict::Unknown) throw UndecidedPrefix("alpha_" + std::to_string(i) + " is undecided");
  }
  return std::nullopt;
}

bool verify_stop_property(const StopDisjSpec& spec, const TruthOracle& o) {
  Formula d = build_stop_disjunction(spec);
  std::vector<Formula> range(spec.alphas.begin() + spec.lo, spec.alphas.end());
  auto k = least_true_index(range, o);
  Verdict expected = k ? o.judge(spec.betas[spec.lo + *k]) : Verdict::False;
  return o.judge(d) == expected;
}

Formula sweep_alpha_atom(std::uint64_t i) { return Formula::eq(numeral(2 * i), Term::zero()); }
Formula sweep_beta_atom(std::uint64_t i) { return Formula::eq(numeral(2 * i + 1), Term::zero()); }

namespace {

struct Atoms {
  std::vector<Formula> alphas, betas;
};

Atoms atoms_for(std::uint64_t c) {
  Atoms at;
  for (std::uint64_t i = 0; i <= c; ++i) {
    at.alphas.push_back(sweep_alpha_atom(i));
    at.betas.push_back(sweep_beta_atom(i));
  }
  return at;
}

AtomTable table_for(const Atoms& at, std::uint64_t alpha_bits, std::uint64_t beta_bits) {
  AtomTable t;
  for (std::size_t i = 0; i < at.alphas.size(); ++i) {
    t.emplace(at.alphas[i], (alpha_bits >> i) & 1);
    t.emplace(at.betas[i], (beta_bits >> i) & 1);
  }
  return t;
}

}  // namespace

ExhaustiveSweep sweep_truth_tables(std::uint64_t c) {
  if (c > 20) throw InvalidParameter("exhaustive sweep beyond c = 20 is not supported");
  Atoms at = atoms_for(c);
  StopDisjSpec spec{at.alphas, at.betas, 0, c};
  Formula d = build_stop_disjunction(spec);
  ExhaustiveSweep out;
  const std::uint64_t n = std::uint64_t{1} << (c + 1);
  for (std::uint64_t ab = 0; ab < n; ++ab) {
    for (std::uint64_t bb = 0; bb < n; ++bb) {
      AtomTable t = table_for(at, ab, bb);
      bool value = eval_prop(d, t);
      if (ab == 0) {
        ++out.all_alpha_false.cases;
        if (!value) ++out.all_alpha_false.passed;
        continue;
      }
      std::uint64_t k0 = 0;
      while (!((ab >> k0) & 1)) ++k0;
      ++out.with_true_alpha.cases;
      if (value == static_cast<bool>((bb >> k0) & 1)) ++out.with_true_alpha.passed;
    }
  }
  return out;
}

NaiveFoil find_naive_foil(std::uint64_t max_c) {
  for (std::uint64_t c = 0; c <= max_c; ++c) {
    Atoms at = atoms_for(c);
    StopDisjSpec spec{at.alphas, at.betas, 0, c};
    Formula d = build_stop_disjunction(spec);
    Formula naive = build_naive_disjunction(at.alphas, at.betas);
    const std::uint64_t n = std::uint64_t{1} << (c + 1);
    for (std::uint64_t ab = 1; ab < n; ++ab) {
      for (std::uint64_t bb = 0; bb < n; ++bb) {
        AtomTable t = table_for(at, ab, bb);
        std::uint64_t k0 = 0;
        while (!((ab >> k0) & 1)) ++k0;
        bool beta = (bb >> k0) & 1;
        bool nv = eval_prop(naive, t);
        if (nv == beta) continue;
        const bool sv = eval_prop(d, t);
        return NaiveFoil{spec, std::move(t), k0, nv, sv, beta};
      }
    }
  }
  throw InvalidParameter("no disagreement found up to c = " + std::to_string(max_c));
}

}  // namespace ctlab
