#include "ctlab/rank.hpp"

#include "ctlab/errors.hpp"
#include "open_subst.hpp"
#include "rank_common.hpp"

namespace ctlab {

namespace detail {

Formula as_subject(const Formula& f) {
  const auto& fv = f.free_vars();
  if (fv.size() > 1) throw TooManyFreeVars("expected at most one free variable: " + render(f));
  if (fv.empty() || fv[0] == kSubject) return f;
  return substitute_open(f, {{fv[0], Term::var(kSubject)}});
}

Term value_term(const Natural& x) { return x <= 64 ? numeral(x) : binary_term(x); }

Formula instantiate(const Formula& f, const Natural& x) {
  const auto& fv = f.free_vars();
  if (fv.size() > 1) throw TooManyFreeVars("expected at most one free variable: " + render(f));
  if (fv.empty()) return f;
  return substitute(f, {{fv[0], value_term(x)}});
}

}  // namespace detail

std::partial_ordering operator<=>(const Rank& a, const Rank& b) {
  using K = Rank::Kind;
  const auto po = [](std::uint64_t x, std::uint64_t y) -> std::partial_ordering { return x <=> y; };
  if (a.kind() == K::MinusInfinity || b.kind() == K::MinusInfinity) {
    return po(a.kind() != K::MinusInfinity, b.kind() != K::MinusInfinity);
  }
  if (a.kind() == K::Finite && b.kind() == K::Finite) return po(a.value(), b.value());
  if (a.kind() == K::Infinity && b.kind() == K::Infinity) return std::partial_ordering::equivalent;
  if (a.kind() == K::Infinity) return b.kind() == K::Finite ? std::partial_ordering::greater
                                                            : std::partial_ordering::unordered;
  if (b.kind() == K::Infinity) return a.kind() == K::Finite ? std::partial_ordering::less
                                                            : std::partial_ordering::unordered;
  if (a.kind() == K::AtLeast && b.kind() == K::AtLeast) {
    return a.value() == b.value() ? std::partial_ordering::equivalent : std::partial_ordering::unordered;
  }
  if (a.kind() == K::AtLeast) return b.value() < a.value() ? std::partial_ordering::greater
                                                           : std::partial_ordering::unordered;
  return a.value() < b.value() ? std::partial_ordering::less : std::partial_ordering::unordered;
}

std::string to_string(const Rank& r) {
  switch (r.kind()) {
    case Rank::Kind::MinusInfinity:
      return "-inf";
    case Rank::Kind::Finite:
      return std::to_string(r.value());
    case Rank::Kind::AtLeast:
      return ">=" + std::to_string(r.value());
    case Rank::Kind::Infinity:
      return "inf";
  }
  return "?";
}

bool certainly_at_least(const Rank& r, std::uint64_t n) {
  switch (r.kind()) {
    case Rank::Kind::MinusInfinity:
      return false;
    case Rank::Kind::Finite:
    case Rank::Kind::AtLeast:
      return r.value() >= n;
    case Rank::Kind::Infinity:
      return true;
  }
  return false;
}

bool certainly_at_most(const Rank& r, std::uint64_t n) {
  return r.kind() == Rank::Kind::MinusInfinity || (r.kind() == Rank::Kind::Finite && r.value() <= n);
}

std::string to_string(const TrajectoryClass& c) {
  switch (c.kind) {
    case TrajectoryClass::Kind::StrictlyIncreasing:
      return "strictly-increasing";
    case TrajectoryClass::Kind::ReachesMax:
      return "reaches-max at " + std::to_string(c.index);
    case TrajectoryClass::Kind::Violation:
      return "violation at " + std::to_string(c.index);
  }
  return "?";
}

TrajectoryClass check_rank_trajectory(const std::vector<Rank>& ranks) {
  for (std::size_t i = 0; i < ranks.size(); ++i) {
    const Rank& r = ranks[i];
    if (r.kind() == Rank::Kind::Infinity || r.kind() == Rank::Kind::AtLeast) {
      return {TrajectoryClass::Kind::ReachesMax, i};
    }
    if (i > 0 && !(r > ranks[i - 1])) return {TrajectoryClass::Kind::Violation, i};
  }
  return {TrajectoryClass::Kind::StrictlyIncreasing, 0};
}

}  // namespace ctlab
