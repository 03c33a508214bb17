#include <map>
#include <sstream>
#include <unordered_set>

#include "ctlab/errors.hpp"
#include "ctlab/evaluation.hpp"

namespace ctlab {

std::uint64_t CtReport::unknown_total() const noexcept {
  std::uint64_t n = 0;
  for (const auto& t : tally) n += t.unknown;
  return n;
}

namespace {

using Gate = std::function<bool(const Formula&)>;

class Checker {
 public:
  Checker(const TruthOracle& o, const CtOptions& opt, Gate gate) : o_(o), opt_(opt), gate_(std::move(gate)) {}

  CtReport run(const std::vector<Formula>& fragment, const std::vector<GoedelCode>& term_seqs) {
    std::vector<Formula> sentences;
    std::unordered_set<Formula, FormulaHash> seen;
    for (const auto& f : fragment) {
      if (!f.is_sentence()) throw NotASentence("fragment entry is not a sentence: " + render(f));
      if (seen.insert(f).second) sentences.push_back(f);
    }
    for (const auto& s : sentences) check_sentence(s);
    regularity(sentences, term_seqs);
    return std::move(report_);
  }

 private:
  Verdict judge(const Formula& s) { return o_.judge(s); }

  void violation(int axiom, std::vector<Formula> sentences, Verdict expected, Verdict actual) {
    report_.violations.push_back(
        {axiom, std::move(sentences), std::string(to_string(expected)), std::string(to_string(actual))});
  }

  // Compares when both sides are decided.
  void compare(int axiom, std::vector<Formula> sentences, Verdict expected, Verdict actual) {
    auto& t = report_.tally[axiom];
    if (expected == Verdict::Unknown || actual == Verdict::Unknown) {
      ++t.unknown;
      return;
    }
    ++t.checked;
    if (expected != actual) violation(axiom, std::move(sentences), expected, actual);
  }

  void check_sentence(const Formula& s) {
    switch (s.kind()) {
      case Formula::Kind::Eq:
        compare(1, {s}, verdict_of(s.left_term().value() == s.right_term().value()), judge(s));
        break;
      case Formula::Kind::Not:
        if (!gate_(s.sub())) {
          ++report_.tally[2].skipped;
          break;
        }
        compare(2, {s, s.sub()}, kleene_not(judge(s.sub())), judge(s));
        break;
      case Formula::Kind::Or:
        if (!gate_(s)) {
          ++report_.tally[3].skipped;
          break;
        }
        compare(3, {s, s.left(), s.right()}, kleene_or(judge(s.left()), judge(s.right())), judge(s));
        break;
      case Formula::Kind::Exists:
        if (!gate_(s)) {
          ++report_.tally[4].skipped;
          break;
        }
        check_exists(s);
        break;
    }
  }

  void check_exists(const Formula& s) {
    auto& t = report_.tally[4];
    const Verdict whole = judge(s);
    if (whole == Verdict::Unknown) {
      ++t.unknown;
      return;
    }
    bool any_unknown = false;
    for (std::uint64_t x = 0; x <= opt_.instance_bound; ++x) {
      Formula inst = substitute(s.body(), {{s.bound_var(), numeral(x)}});
      Verdict r = judge(inst);
      if (r == Verdict::True) {
        ++t.checked;
        if (whole == Verdict::False) violation(4, {s, inst}, Verdict::True, whole);
        return;
      }
      if (r == Verdict::Unknown) any_unknown = true;
    }
    // No witness up to the bound: only a False verdict is consistent with
    // that, and only conditionally on larger witnesses.
    if (whole == Verdict::True || any_unknown) {
      ++t.unknown;
      return;
    }
    ++t.checked;
  }

  void regularity(const std::vector<Formula>& sentences, const std::vector<GoedelCode>& term_seqs) {
    // Closed-term sequences grouped by their value vector.
    std::map<std::vector<Natural>, std::vector<std::vector<Term>>> groups;
    std::unordered_set<GoedelCode, std::function<std::size_t(const GoedelCode&)>> seen(
        16, [](const GoedelCode& c) { return hash_value(c); });
    for (const auto& c : term_seqs) {
      if (!is_cltermseq(c) || !seen.insert(c).second) continue;
      std::vector<Term> ts;
      std::vector<Natural> vals;
      for (const auto& item : decode_seq(c)) {
        ts.push_back(decode_term(item));
        vals.push_back(ts.back().value());
      }
      if (ts.empty()) continue;
      groups[vals].push_back(std::move(ts));
    }
    if (groups.empty()) return;

    std::vector<Formula> templates;
    std::unordered_set<Formula, FormulaHash> seen_t;
    std::vector<Formula> stack(sentences.begin(), sentences.end());
    while (!stack.empty()) {
      Formula f = stack.back();
      stack.pop_back();
      if (!seen_t.insert(f).second) continue;
      if (!f.is_sentence()) templates.push_back(f);
      for (auto& d : direct_subformulas(f)) stack.push_back(std::move(d));
    }

    for (const auto& phi : templates) {
      const auto& fv = phi.free_vars();
      for (const auto& [vals, members] : groups) {
        if (vals.size() != fv.size() || members.size() < 2) continue;
        for (std::size_t i = 0; i < members.size(); ++i) {
          for (std::size_t j = i + 1; j < members.size(); ++j) {
            TermSubst si, sj;
            for (std::size_t k = 0; k < fv.size(); ++k) {
              si.emplace(fv[k], members[i][k]);
              sj.emplace(fv[k], members[j][k]);
            }
            Formula a = substitute(phi, si);
            Formula b = substitute(phi, sj);
            compare(5, {a, b}, judge(a), judge(b));
          }
        }
      }
    }
  }

  const TruthOracle& o_;
  const CtOptions& opt_;
  Gate gate_;
  CtReport report_;
};

}  // namespace

CtReport check_ct_axioms(const TruthOracle& o, const std::vector<Formula>& fragment,
                         const std::vector<GoedelCode>& term_seqs, const CtOptions& opt) {
  return Checker(o, opt, [](const Formula&) { return true; }).run(fragment, term_seqs);
}

CtReport check_ct_restricted(const TruthOracle& o, const Cut& cut, const std::vector<Formula>& fragment,
                             const std::vector<GoedelCode>& term_seqs, const CtOptions& opt) {
  Gate gate;
  if (const auto* d = std::get_if<DepthCut>(&cut)) {
    auto contains = d->contains;
    gate = [contains](const Formula& f) { return contains(syntactic_depth(f)); };
  } else {
    Natural bound = std::get<CodeCut>(cut).bound;
    gate = [bound](const Formula& f) { return encode_formula(f) <= bound; };
  }
  return Checker(o, opt, std::move(gate)).run(fragment, term_seqs);
}

std::string format_report(const CtReport& r) {
  std::ostringstream out;
  for (const auto& v : r.violations) {
    out << "AXIOM " << v.axiom << " VIOLATION:";
    for (std::size_t i = 0; i < v.sentences.size(); ++i) out << (i ? " ; " : " ") << render(v.sentences[i]);
    out << " (expected " << v.expected << ", got " << v.actual << ")\n";
  }
  for (int k = 1; k <= 5; ++k) {
    const auto& t = r.tally[k];
    out << "axiom " << k << ": checked " << t.checked << ", unknown " << t.unknown << ", skipped " << t.skipped
        << "\n";
  }
  out << (r.clean() ? "clean" : std::to_string(r.violations.size()) + " violation(s)") << "\n";
  return out.str();
}

}  // namespace ctlab
