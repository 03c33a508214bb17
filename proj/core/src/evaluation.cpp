#include "ctlab/evaluation.hpp"

#include <algorithm>
#include <mutex>
#include <optional>

#include "ctlab/errors.hpp"
#include "hashing.hpp"

namespace ctlab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::True:
      return "true";
    case Verdict::False:
      return "false";
    case Verdict::Unknown:
      return "unknown";
  }
  return "unknown";
}

Verdict kleene_not(Verdict v) {
  if (v == Verdict::True) return Verdict::False;
  if (v == Verdict::False) return Verdict::True;
  return Verdict::Unknown;
}

Verdict kleene_or(Verdict a, Verdict b) {
  if (a == Verdict::True || b == Verdict::True) return Verdict::True;
  if (a == Verdict::False && b == Verdict::False) return Verdict::False;
  return Verdict::Unknown;
}

Natural eval_closed_term(const Term& t) { return t.value(); }

namespace {

enum class Mode { Standard, Window };

struct MemoKey {
  Formula node;
  std::vector<Natural> vals;

  bool operator==(const MemoKey& o) const { return node.same_node(o.node) && vals == o.vals; }
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const noexcept {
    std::size_t h = std::hash<const void*>{}(k.node.id());
    for (const auto& v : k.vals) h = detail::mix(h, hash_value(v));
    return h;
  }
};

// Nodes below this tree size are cheaper to re-evaluate than to look up.
constexpr std::uint64_t kMemoMinSize = 24;

class Engine {
 public:
  Engine(Mode mode, std::uint64_t bound, std::uint64_t node_budget, AtomTable overrides)
      : mode_(mode), bound_(bound), node_budget_(node_budget), overrides_(std::move(overrides)) {
    for (const auto& [f, _] : overrides_) override_shapes_.insert(f.shape_hash());
  }

  Verdict judge(const Formula& s) {
    if (!s.is_sentence()) throw NotASentence("not a sentence: " + render(s));
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = sticky_.find(s); it != sticky_.end()) return it->second;
    remaining_ = node_budget_;
    env_.clear();
    Verdict v = eval(s);
    sticky_.emplace(s, v);
    return v;
  }

 private:
  const Natural& lookup(VarIndex v) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == v) return it->second;
    }
    throw std::logic_error("unbound variable v" + std::to_string(v) + " during evaluation");
  }

  Natural value(const Term& t) const {
    if (t.closed()) return t.value();
    switch (t.kind()) {
      case Term::Kind::Var:
        return lookup(t.index());
      case Term::Kind::Succ:
        return value(t.arg()) + 1;
      case Term::Kind::Add:
        return value(t.lhs()) + value(t.rhs());
      case Term::Kind::Mul:
        return value(t.lhs()) * value(t.rhs());
      case Term::Kind::Zero:
        break;
    }
    return 0;
  }

  std::optional<bool> override_for(const Formula& f) const {
    if (override_shapes_.empty() || !override_shapes_.count(f.shape_hash())) return std::nullopt;
    TermSubst s;
    for (VarIndex v : f.free_vars()) {
      const Natural& x = lookup(v);
      if (x > kMaxNumeral) return std::nullopt;
      s.emplace(v, numeral(x));
    }
    auto it = overrides_.find(substitute(f, s));
    if (it == overrides_.end()) return std::nullopt;
    return it->second;
  }

  // Term t with v <= t forced by f (f implies the bound).
  static std::optional<Term> bound_in(const Formula& f, VarIndex v) {
    if (auto l = as_leq(f)) {
      if (l->small.kind() == Term::Kind::Var && l->small.index() == v &&
          !std::binary_search(l->large.free_vars().begin(), l->large.free_vars().end(), v)) {
        return l->large;
      }
      return std::nullopt;
    }
    // !(P | Q) implies D whenever P or Q is !D.
    if (f.kind() == Formula::Kind::Not && f.sub().kind() == Formula::Kind::Or) {
      for (const Formula* side : {&f.sub().left(), &f.sub().right()}) {
        if (side->kind() != Formula::Kind::Not) continue;
        if (auto t = bound_in(side->sub(), v)) return t;
      }
    }
    return std::nullopt;
  }

  Verdict search(const Formula& f, std::uint64_t limit, bool exhaustive) {
    const VarIndex v = f.bound_var();
    bool unknown = false;
    for (std::uint64_t x = 0; x <= limit; ++x) {
      env_.emplace_back(v, Natural(x));
      Verdict r = eval(f.body());
      env_.pop_back();
      if (r == Verdict::True) return Verdict::True;
      if (r == Verdict::Unknown) unknown = true;
      if (remaining_ == 0) return Verdict::Unknown;
    }
    if (unknown || !exhaustive) return Verdict::Unknown;
    return Verdict::False;
  }

  Verdict exists(const Formula& f) {
    if (auto l = as_leq(f)) {
      Natural a = value(l->small);
      Natural b = value(l->large);
      if (mode_ == Mode::Window) return verdict_of(a <= b && b - a <= bound_);
      return verdict_of(a <= b);
    }
    if (mode_ == Mode::Window) return search(f, bound_, true);
    if (auto t = bound_in(f.body(), f.bound_var())) {
      Natural k = value(*t);
      if (k <= bound_) return search(f, k.convert_to<std::uint64_t>(), true);
    }
    return search(f, bound_, false);
  }

  Verdict eval(const Formula& f) {
    if (remaining_ == 0) return Verdict::Unknown;
    --remaining_;
    if (auto o = override_for(f)) return verdict_of(*o);

    std::optional<MemoKey> key;
    if (f.kind() == Formula::Kind::Exists || f.size() >= kMemoMinSize) {
      key.emplace(MemoKey{f, {}});
      key->vals.reserve(f.free_vars().size());
      for (VarIndex v : f.free_vars()) key->vals.push_back(lookup(v));
      if (auto it = memo_.find(*key); it != memo_.end()) return verdict_of(it->second);
    }

    Verdict r = Verdict::Unknown;
    switch (f.kind()) {
      case Formula::Kind::Eq:
        r = verdict_of(value(f.left_term()) == value(f.right_term()));
        break;
      case Formula::Kind::Not:
        r = kleene_not(eval(f.sub()));
        break;
      case Formula::Kind::Or: {
        Verdict l = eval(f.left());
        r = l == Verdict::True ? l : kleene_or(l, eval(f.right()));
        break;
      }
      case Formula::Kind::Exists:
        r = exists(f);
        break;
    }
    if (key && r != Verdict::Unknown) memo_.emplace(std::move(*key), r == Verdict::True);
    return r;
  }

  const Mode mode_;
  const std::uint64_t bound_;
  const std::uint64_t node_budget_;
  const AtomTable overrides_;
  std::unordered_set<std::size_t> override_shapes_;

  std::mutex mu_;
  std::uint64_t remaining_ = 0;
  std::vector<std::pair<VarIndex, Natural>> env_;
  std::unordered_map<MemoKey, bool, MemoKeyHash> memo_;
  std::unordered_map<Formula, Verdict, FormulaHash> sticky_;
};

}  // namespace

struct StandardModelOracle::Impl {
  explicit Impl(Budget b) : budget(b), engine(Mode::Standard, b.witness_bound, b.node_budget, {}) {}
  Budget budget;
  mutable Engine engine;
};

StandardModelOracle::StandardModelOracle(Budget b) {
  if (b.witness_bound < 1 || b.node_budget < 1) throw InvalidParameter("budget fields must be >= 1");
  impl_ = std::make_unique<Impl>(b);
}
StandardModelOracle::~StandardModelOracle() = default;
Verdict StandardModelOracle::judge(const Formula& s) const { return impl_->engine.judge(s); }
const Budget& StandardModelOracle::budget() const noexcept { return impl_->budget; }

struct WindowOracle::Impl {
  Impl(std::uint64_t w, std::uint64_t budget, AtomTable overrides)
      : window(w), engine(Mode::Window, w, budget, std::move(overrides)) {}
  std::uint64_t window;
  mutable Engine engine;
};

WindowOracle::WindowOracle(std::uint64_t window, std::uint64_t node_budget, AtomTable overrides) {
  if (node_budget < 1) throw InvalidParameter("node budget must be >= 1");
  for (const auto& [f, _] : overrides) {
    if (!f.is_sentence()) throw NotASentence("override entry is not a sentence: " + render(f));
  }
  impl_ = std::make_unique<Impl>(window, node_budget, std::move(overrides));
}
WindowOracle::~WindowOracle() = default;
Verdict WindowOracle::judge(const Formula& s) const { return impl_->engine.judge(s); }
std::uint64_t WindowOracle::window() const noexcept { return impl_->window; }

Verdict eval_sentence(const Formula& s, const Budget& b) { return StandardModelOracle(b).judge(s); }

namespace {

bool prop(const Formula& f, const AtomTable& atoms, std::unordered_map<const void*, bool>& memo) {
  if (auto it = atoms.find(f); it != atoms.end()) return it->second;
  if (auto it = memo.find(f.id()); it != memo.end()) return it->second;
  bool r = false;
  switch (f.kind()) {
    case Formula::Kind::Not:
      r = !prop(f.sub(), atoms, memo);
      break;
    case Formula::Kind::Or:
      r = prop(f.left(), atoms, memo) || prop(f.right(), atoms, memo);
      break;
    default:
      throw MissingAtom("no table entry for " + render(f));
  }
  memo.emplace(f.id(), r);
  return r;
}

}  // namespace

bool eval_prop(const Formula& f, const AtomTable& atoms) {
  std::unordered_map<const void*, bool> memo;
  return prop(f, atoms, memo);
}

Verdict PropositionalOracle::judge(const Formula& s) const { return verdict_of(eval_prop(s, atoms_)); }

Verdict TableOracle::judge(const Formula& s) const { return verdict_of(truths_.count(s) != 0); }

}  // namespace ctlab
