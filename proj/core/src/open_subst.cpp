#include "open_subst.hpp"

#include <algorithm>
#include <unordered_map>

namespace ctlab::detail {
namespace {

class OpenSubstituter {
 public:
  OpenSubstituter(TermSubst s, VarIndex* fresh) : s_(std::move(s)), fresh_(fresh) {}

  Term run(const Term& t) {
    if (!relevant(t.free_vars())) return t;
    switch (t.kind()) {
      case Term::Kind::Var:
        return s_.at(t.index());
      case Term::Kind::Succ:
        return Term::succ(run(t.arg()));
      case Term::Kind::Add:
        return Term::add(run(t.lhs()), run(t.rhs()));
      case Term::Kind::Mul:
        return Term::mul(run(t.lhs()), run(t.rhs()));
      case Term::Kind::Zero:
        break;
    }
    return t;
  }

  Formula run(const Formula& f) {
    if (!relevant(f.free_vars())) return f;
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
    Formula out;
    switch (f.kind()) {
      case Formula::Kind::Eq:
        out = Formula::eq(run(f.left_term()), run(f.right_term()));
        break;
      case Formula::Kind::Not:
        out = Formula::neg(run(f.sub()));
        break;
      case Formula::Kind::Or:
        out = Formula::disj(run(f.left()), run(f.right()));
        break;
      case Formula::Kind::Exists:
        out = binder(f);
        break;
    }
    memo_.emplace(f.id(), out);
    return out;
  }

 private:
  bool relevant(const std::vector<VarIndex>& free) const {
    return std::any_of(free.begin(), free.end(), [&](VarIndex v) { return s_.count(v) != 0; });
  }

  Formula binder(const Formula& f) {
    VarIndex v = f.bound_var();
    TermSubst inner;
    bool captures = false;
    for (const auto& [w, t] : s_) {
      if (w == v || !f.body().has_free(w)) continue;
      inner.emplace(w, t);
      const auto& tv = t.free_vars();
      captures = captures || std::binary_search(tv.begin(), tv.end(), v);
    }
    Formula body = f.body();
    if (captures) {
      VarIndex u = (*fresh_)++;
      body = OpenSubstituter({{v, Term::var(u)}}, fresh_).run(body);
      v = u;
    }
    return Formula::exists(v, OpenSubstituter(std::move(inner), fresh_).run(body));
  }

  TermSubst s_;
  VarIndex* fresh_;
  std::unordered_map<const void*, Formula> memo_;
};

}  // namespace

Formula substitute_open(const Formula& f, const TermSubst& s) {
  if (s.empty()) return f;
  VarIndex fresh = f.var_bound();
  for (const auto& [v, t] : s) fresh = std::max({fresh, t.var_bound(), v + 1});
  return OpenSubstituter(s, &fresh).run(f);
}

}  // namespace ctlab::detail
