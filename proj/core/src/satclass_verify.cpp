#include <sstream>

#include "ctlab/satclass.hpp"
#include "satclass_common.hpp"

namespace ctlab {

std::string_view to_string(ThetaClause c) {
  switch (c) {
    case ThetaClause::Comp:
      return "COMP";
    case ThetaClause::RegularityI:
      return "REG1";
    case ThetaClause::RegularityII:
      return "REG2";
    case ThetaClause::Base:
      return "BASE";
    case ThetaClause::Eta:
      return "ETA";
    case ThetaClause::Preserve:
      return "PRESERVE";
  }
  return "?";
}

namespace {

const char* tf(bool b) { return b ? "true" : "false"; }

class Verifier {
 public:
  Verifier(const SatAssignment& s, const ConstraintSet& g) : s_(s), g_(g) {}

  ThetaReport run() {
    comp();
    regularity();
    pinned(ThetaClause::Base, g_.base_truth);
    pinned(ThetaClause::Preserve, g_.preservation);
    eta();
    return std::move(r_);
  }

 private:
  void fail(ThetaClause c, std::vector<Occurrence> w, std::string detail) {
    r_.violations.push_back({c, std::move(w), std::move(detail)});
  }
  void tick(ThetaClause c) { ++r_.checked[static_cast<std::size_t>(c)]; }

  // Off-fragment occurrences count as false.
  bool value(const Occurrence& o) const { return s_.verdict(o).value_or(false); }

  void comp() {
    for (const auto& f : g_.comp_instances) {
      for (auto& a : detail::all_valuations(f.free_vars(), g_.witness_bound)) {
        Occurrence o = normalize({f, std::move(a)});
        tick(ThetaClause::Comp);
        auto have = s_.verdict(o);
        if (!have) {
          fail(ThetaClause::Comp, {o}, "comp occurrence missing from the assignment");
          continue;
        }
        bool want = false;
        auto kids = detail::child_occurrences(o, g_.witness_bound);
        switch (f.kind()) {
          case Formula::Kind::Eq: {
            Formula s = o.sentence();
            want = s.left_term().value() == s.right_term().value();
            break;
          }
          case Formula::Kind::Not:
            want = !value(kids[0]);
            break;
          case Formula::Kind::Or:
            want = value(kids[0]) || value(kids[1]);
            break;
          case Formula::Kind::Exists:
            for (const auto& k : kids) want = want || value(k);
            break;
        }
        if (*have != want) {
          kids.insert(kids.begin(), o);
          fail(ThetaClause::Comp, std::move(kids),
               std::string("S gives ") + tf(*have) + ", the clause gives " + tf(want));
        }
      }
    }
  }

  void regularity() {
    const auto& os = s_.occurrences();
    std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < os.size(); ++i) {
      const bool v = s_.classes()[s_.class_of(i)].verdict;
      Formula closed = os[i].sentence();
      tick(ThetaClause::RegularityI);
      auto c = s_.find_class(closed);
      if (!c || s_.classes()[*c].verdict != v) {
        fail(ThetaClause::RegularityI, {os[i], Occurrence{closed, {}}}, "S(phi, a) differs from S(phi[a], {})");
      }
      buckets[closed.shape_hash()].push_back(i);
    }
    for (const auto& [_, idx] : buckets) {
      for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
          const auto& a = os[idx[i]];
          const auto& b = os[idx[j]];
          if (!occurrence_equiv_step(a, b)) continue;
          tick(ThetaClause::RegularityII);
          const bool va = s_.classes()[s_.class_of(idx[i])].verdict;
          const bool vb = s_.classes()[s_.class_of(idx[j])].verdict;
          if (va != vb) fail(ThetaClause::RegularityII, {a, b}, "equal-valued term swap changes the verdict");
        }
      }
    }
  }

  void pinned(ThetaClause c, const std::vector<std::pair<Occurrence, bool>>& entries) {
    for (const auto& [o, want] : entries) {
      tick(c);
      auto have = s_.verdict(normalize(o));
      if (!have || *have != want) {
        fail(c, {o}, std::string("required ") + tf(want) + ", S gives " + (have ? tf(*have) : "nothing"));
      }
    }
  }

  void eta() {
    if (g_.eta_b == 0) return;
    std::set<Natural> xs(g_.a_set);
    for (std::uint64_t x = 0; x <= g_.witness_bound; ++x) xs.insert(x);
    for (const auto& x : xs) {
      Occurrence o{build_eta(g_.eta_b), {{kSubject, x}, {1, Natural(0)}}};
      tick(ThetaClause::Eta);
      const bool want = g_.a_set.count(x) != 0;
      auto have = s_.verdict(o);
      if (!have || *have != want) {
        fail(ThetaClause::Eta, {o}, "x = " + x.str() + (want ? " is" : " is not") + " in A");
      }
    }
  }

  const SatAssignment& s_;
  const ConstraintSet& g_;
  ThetaReport r_;
};

}  // namespace

ThetaReport verify_theta_fragment(const SatAssignment& s, const ConstraintSet& gamma) {
  return Verifier(s, gamma).run();
}

std::string format_theta_report(const ThetaReport& r) {
  std::ostringstream out;
  for (const auto& v : r.violations) {
    out << to_string(v.clause) << " VIOLATION: " << v.detail << ":";
    for (const auto& w : v.witnesses) out << " [" << render(w.sentence()) << "]";
    out << "\n";
  }
  for (std::size_t c = 0; c < kThetaClauses; ++c) {
    out << to_string(static_cast<ThetaClause>(c)) << ": checked " << r.checked[c] << "\n";
  }
  out << (r.clean() ? "clean" : std::to_string(r.violations.size()) + " violation(s)") << "\n";
  return out.str();
}

}  // namespace ctlab
