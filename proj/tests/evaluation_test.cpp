#include <gtest/gtest.h>

#include <set>
#include <thread>

#include "ctlab/errors.hpp"
#include "ctlab/evaluation.hpp"
#include "support/generators.hpp"

using namespace ctlab;

namespace {

Formula f(const char* s) { return parse_formula(s); }
Verdict standard(const Formula& s, std::uint64_t w = 64) { return eval_sentence(s, Budget{w, 1'000'000}); }

}  // namespace

TEST(ClosedTerms, Examples) {
  EXPECT_EQ(eval_closed_term(Term::add(numeral(3), numeral(1))), 4);
  EXPECT_EQ(eval_closed_term(Term::zero()), 0);
  EXPECT_EQ(eval_closed_term(Term::mul(numeral(2), numeral(3))), 6);
  EXPECT_THROW(eval_closed_term(Term::var(0)), OpenTerm);
}

TEST(Kleene, Tables) {
  const Verdict T = Verdict::True, F = Verdict::False, U = Verdict::Unknown;
  EXPECT_EQ(kleene_not(U), U);
  EXPECT_EQ(kleene_or(T, U), T);
  EXPECT_EQ(kleene_or(F, U), U);
  EXPECT_EQ(kleene_or(F, F), F);
}

TEST(Standard, Examples) {
  EXPECT_EQ(standard(Formula::eq(numeral(2), numeral(2))), Verdict::True);
  EXPECT_EQ(standard(Formula::exists(0, Formula::eq(Term::var(0), numeral(5))), 5), Verdict::True);
  EXPECT_EQ(standard(f("E v0. !v0 = v0")), Verdict::Unknown);
  EXPECT_THROW(standard(f("v0 = 0")), NotASentence);
}

TEST(Standard, BoundedQuantifiersDecide) {
  const Term x = Term::var(0);
  Formula bounded = Formula::exists(0, Formula::conj(leq(x, numeral(4)), Formula::eq(Term::mul(x, x), numeral(10))));
  EXPECT_EQ(standard(bounded), Verdict::False);
  Formula all = Formula::forall(0, Formula::implies(leq(x, numeral(6)), leq(x, Term::mul(x, x))));
  EXPECT_EQ(standard(all), Verdict::True);
  EXPECT_EQ(standard(leq(numeral(1000), numeral(999))), Verdict::False);
  EXPECT_EQ(standard(leq(numeral(999), numeral(1000))), Verdict::True);
}

TEST(Standard, UnboundedFalseIsNeverClaimed) {
  // No witness below the bound, but the quantifier is not syntactically bounded.
  EXPECT_EQ(standard(f("E v0. v0 = S(S(S(S(S(S(0))))))"), 3), Verdict::Unknown);
}

TEST(Standard, NodeBudgetGivesUnknown) {
  Formula s = f("E v0. E v1. (v0 * v1) = S(S(S(S(S(S(S(0)))))))");
  EXPECT_EQ(eval_sentence(s, Budget{64, 1'000'000}), Verdict::True);
  EXPECT_EQ(eval_sentence(s, Budget{64, 3}), Verdict::Unknown);
}

TEST(Standard, MonotoneInBudget) {
  gen::Rng r(31);
  for (int i = 0; i < 150; ++i) {
    Formula s = gen::formula(r, 5, 0);
    if (!s.is_sentence()) continue;
    Verdict small = eval_sentence(s, Budget{4, 2000});
    if (small == Verdict::Unknown) continue;
    EXPECT_EQ(eval_sentence(s, Budget{32, 200000}), small) << render(s);
  }
}

TEST(Prop, Examples) {
  Formula a = f("0 = 0"), b = f("S(0) = 0");
  AtomTable t{{a, true}, {b, false}};
  EXPECT_TRUE(eval_prop(a, t));
  EXPECT_FALSE(eval_prop(Formula::conj(a, b), t));
  EXPECT_THROW(eval_prop(f("S(S(0)) = 0"), t), MissingAtom);
}

TEST(Prop, AtomsAreOpaque) {
  // The table, not arithmetic, decides.
  Formula a = f("0 = S(0)");
  EXPECT_TRUE(eval_prop(Formula::neg(Formula::neg(a)), {{a, true}}));
}

TEST(Prop, AgreesWithStandardOnTwoValuedFragment) {
  gen::Rng r(32);
  for (int i = 0; i < 200; ++i) {
    std::vector<Formula> atoms;
    for (int k = 0; k < 3; ++k) atoms.push_back(Formula::eq(gen::term(r, 2, 0), gen::term(r, 2, 0)));
    AtomTable t;
    for (const auto& a : atoms) t.emplace(a, standard(a) == Verdict::True);
    Formula g = atoms[0];
    for (int k = 0; k < 4; ++k) {
      const Formula& a = atoms[gen::uniform(r, 0, 2)];
      g = gen::coin(r) ? Formula::disj(g, a) : Formula::conj(Formula::neg(g), a);
    }
    EXPECT_EQ(verdict_of(eval_prop(g, t)), standard(g));
  }
}

TEST(Oracles, PropositionalAndTable) {
  Formula a = f("0 = 0"), b = f("S(0) = 0");
  PropositionalOracle p({{a, false}, {b, true}});
  EXPECT_EQ(p.judge(Formula::disj(a, b)), Verdict::True);
  EXPECT_THROW(p.judge(f("S(S(0)) = 0")), MissingAtom);
  TableOracle t({b});
  EXPECT_EQ(t.judge(b), Verdict::True);
  EXPECT_EQ(t.judge(a), Verdict::False);
}

TEST(Oracles, WindowIsClosedWorld) {
  WindowOracle w(5);
  EXPECT_EQ(w.judge(f("A v0. E v1. v1 = S(v0)")), Verdict::False);  // 5 has no successor in [0, 5]
  EXPECT_EQ(w.judge(f("E v0. v0 = S(S(S(S(S(0)))))")), Verdict::True);
  EXPECT_EQ(w.judge(f("E v0. v0 = S(S(S(S(S(S(0))))))")), Verdict::False);
  EXPECT_EQ(w.window(), 5u);
}

TEST(Oracles, WindowOverridesWin) {
  Formula e = close_eta(2, 3);
  WindowOracle plain(4);
  EXPECT_EQ(plain.judge(e), Verdict::True);
  WindowOracle over(4, 50'000'000, {{e, false}});
  EXPECT_EQ(over.judge(e), Verdict::False);
  // Also inside a quantifier, where the instance only appears after binding.
  Formula some = Formula::exists(0, Formula::conj(Formula::eq(Term::var(0), numeral(3)), eta_predicate(2)));
  EXPECT_EQ(plain.judge(some), Verdict::True);
  EXPECT_EQ(over.judge(some), Verdict::False);
}

TEST(Oracles, ConcurrentJudgmentsAgree) {
  StandardModelOracle o(Budget{16, 100000});
  gen::Rng r(33);
  std::vector<Formula> ss;
  for (int i = 0; i < 64; ++i) {
    std::vector<VarIndex> scope;
    ss.push_back(gen::delta0(r, 4, scope));
  }
  std::vector<Verdict> serial;
  for (const auto& s : ss) serial.push_back(o.judge(s));
  std::vector<Verdict> par(ss.size());
  std::vector<std::thread> ts;
  for (int k = 0; k < 4; ++k) {
    ts.emplace_back([&, k] {
      for (std::size_t i = k; i < ss.size(); i += 4) par[i] = o.judge(ss[i]);
    });
  }
  for (auto& t : ts) t.join();
  EXPECT_EQ(par, serial);
}

TEST(CloseEta, TrueInStandardModel) {
  StandardModelOracle o(Budget{16, 1'000'000});
  for (std::uint64_t b = 1; b <= 8; ++b) {
    for (std::uint64_t x = 0; x <= 8; ++x) EXPECT_EQ(o.judge(close_eta(b, x)), Verdict::True) << b << " " << x;
  }
}

TEST(CtCheck, TableMissingDisjunctsViolatesAxiom3) {
  Formula a = f("0 = S(0)"), b = f("S(0) = 0");
  Formula d = Formula::disj(a, b);
  TableOracle o({d});
  CtReport r = check_ct_axioms(o, {d}, {});
  ASSERT_FALSE(r.clean());
  EXPECT_EQ(r.violations.front().axiom, 3);
  EXPECT_NE(format_report(r).find("AXIOM 3 VIOLATION"), std::string::npos);
}

TEST(CtCheck, AtomAndNegationViolations) {
  Formula a = f("0 = S(0)");
  TableOracle o({a, Formula::neg(a)});
  CtReport r = check_ct_axioms(o, {a, Formula::neg(a)}, {});
  std::set<int> axioms;
  for (const auto& v : r.violations) axioms.insert(v.axiom);
  EXPECT_EQ(axioms, (std::set<int>{1, 2}));
}

TEST(CtCheck, ExistentialWitnessViolation) {
  Formula e = f("E v0. v0 = S(0)");
  TableOracle o({f("S(0) = S(0)")});
  CtReport r = check_ct_axioms(o, {e}, {});
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].axiom, 4);
}

TEST(CtCheck, RegularityAnchor) {
  Formula phi = f("v0 = S(0)");
  Formula ex = Formula::exists(0, phi);  // phi is an open subformula of the fragment
  GoedelCode s = encode_seq({encode_term(Term::add(numeral(1), Term::zero()))});
  GoedelCode t = encode_seq({encode_term(numeral(1))});
  // A table that is true on phi(t) only breaks regularity.
  TableOracle bad({substitute(phi, {{0, numeral(1)}})});
  CtReport r = check_ct_axioms(bad, {ex}, {s, t});
  EXPECT_EQ(r.tally[5].checked, 1u);
  bool saw = false;
  for (const auto& v : r.violations) saw = saw || v.axiom == 5;
  EXPECT_TRUE(saw);
  StandardModelOracle good(Budget{8, 10000});
  CtReport g = check_ct_axioms(good, {ex}, {s, t});
  EXPECT_EQ(g.tally[5].checked, 1u);
  EXPECT_TRUE(g.clean()) << format_report(g);
}

TEST(CtCheck, StandardModelCleanOnDelta0) {
  gen::Rng r(34);
  std::vector<Formula> roots;
  for (int i = 0; i < 20; ++i) {
    std::vector<VarIndex> scope;
    roots.push_back(gen::delta0(r, 4, scope));
  }
  StandardModelOracle o(Budget{64, 1'000'000});
  CtReport rep = check_ct_axioms(o, gen::sentence_closure(roots, 6), gen::equal_value_seqs(r, 6, 2), {6});
  EXPECT_TRUE(rep.clean()) << format_report(rep);
  EXPECT_GT(rep.tally[4].checked, 0u);
}

TEST(CtRestricted, DepthGateSkipsNegation) {
  Formula deep = Formula::neg(f("!!!0 = 0"));
  ASSERT_EQ(syntactic_depth(deep), 5u);
  TableOracle o({});
  CtReport r = check_ct_restricted(o, DepthCut{[](std::uint64_t d) { return d <= 3; }}, {deep}, {});
  EXPECT_EQ(r.tally[2].skipped, 1u);
  EXPECT_EQ(r.tally[2].checked, 0u);
}

TEST(CtRestricted, FullCutMatchesUnrestricted) {
  gen::Rng r(35);
  std::vector<Formula> roots;
  for (int i = 0; i < 10; ++i) {
    std::vector<VarIndex> scope;
    roots.push_back(gen::delta0(r, 4, scope));
  }
  auto frag = gen::sentence_closure(roots, 3);
  StandardModelOracle o(Budget{16, 100000});
  CtReport a = check_ct_axioms(o, frag, {});
  CtReport b = check_ct_restricted(o, DepthCut{[](std::uint64_t) { return true; }}, frag, {});
  EXPECT_EQ(format_report(a), format_report(b));
}

TEST(CtRestricted, AtomsCheckedAboveTheCodeCut) {
  Formula big = Formula::eq(numeral(40), numeral(41));
  TableOracle o({big});
  CtReport r = check_ct_restricted(o, CodeCut{Natural(1)}, {big}, {});
  EXPECT_EQ(r.tally[1].checked, 1u);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].axiom, 1);
}
