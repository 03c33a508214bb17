#include "ctlab/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <unordered_map>

#include "ctlab/errors.hpp"
#include "hashing.hpp"

namespace ctlab {

Natural parse_natural(const std::string& text) {
  if (text.empty() ||
      !std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw std::invalid_argument("not a natural number: '" + text + "'");
  }
  return Natural(text);
}

std::size_t hash_value(const Natural& n) {
  std::size_t h = 0x51ed270b27u;
  const mpz_srcptr z = n.backend().data();
  const std::size_t limbs = mpz_size(z);
  for (std::size_t i = 0; i < limbs; ++i) h = detail::mix(h, static_cast<std::size_t>(mpz_getlimbn(z, i)));
  return detail::mix(h, mpz_sgn(z) < 0 ? 1u : 0u);
}

namespace {

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t m = std::numeric_limits<std::uint64_t>::max();
  return a > m - b ? m : a + b;
}

std::vector<VarIndex> merge_vars(const std::vector<VarIndex>& a, const std::vector<VarIndex>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<VarIndex> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

// --- Term -----------------------------------------------------------------

Term::Term() : Term(zero()) {}

Term Term::make(Kind k, VarIndex v, std::vector<Term> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->var = v;
  std::size_t h = detail::mix(0x7e57u, static_cast<std::size_t>(k));
  switch (k) {
    case Kind::Zero:
      n->value = 0;
      break;
    case Kind::Var:
      n->free = {v};
      n->var_bound = v + 1;
      h = detail::mix(h, static_cast<std::size_t>(v));
      break;
    case Kind::Succ: {
      const Term& a = kids[0];
      n->free = a.n_->free;
      n->size = sat_add(a.n_->size, 1);
      n->var_bound = a.n_->var_bound;
      if (n->free.empty()) n->value = a.n_->value + 1;
      h = detail::mix(h, a.n_->hash);
      break;
    }
    case Kind::Add:
    case Kind::Mul: {
      const Term& a = kids[0];
      const Term& b = kids[1];
      n->free = merge_vars(a.n_->free, b.n_->free);
      n->size = sat_add(sat_add(a.n_->size, b.n_->size), 1);
      n->var_bound = std::max(a.n_->var_bound, b.n_->var_bound);
      if (n->free.empty()) {
        if (k == Kind::Add) {
          n->value = a.n_->value + b.n_->value;
        } else {
          n->value = a.n_->value * b.n_->value;
        }
      }
      h = detail::mix(detail::mix(h, a.n_->hash), b.n_->hash);
      break;
    }
  }
  n->hash = h;
  n->kids = std::move(kids);
  return Term(std::move(n));
}

Term Term::zero() {
  static const Term z = make(Kind::Zero, 0, {});
  return z;
}
Term Term::succ(Term t) { return make(Kind::Succ, 0, {std::move(t)}); }
Term Term::add(Term l, Term r) { return make(Kind::Add, 0, {std::move(l), std::move(r)}); }
Term Term::mul(Term l, Term r) { return make(Kind::Mul, 0, {std::move(l), std::move(r)}); }
Term Term::var(VarIndex i) { return make(Kind::Var, i, {}); }

const Term& Term::arg() const {
  if (kind() != Kind::Succ) throw std::logic_error("Term::arg on non-successor");
  return n_->kids[0];
}
const Term& Term::lhs() const {
  if (kind() != Kind::Add && kind() != Kind::Mul) throw std::logic_error("Term::lhs on non-binary term");
  return n_->kids[0];
}
const Term& Term::rhs() const {
  if (kind() != Kind::Add && kind() != Kind::Mul) throw std::logic_error("Term::rhs on non-binary term");
  return n_->kids[1];
}
VarIndex Term::index() const {
  if (kind() != Kind::Var) throw std::logic_error("Term::index on non-variable");
  return n_->var;
}
const Natural& Term::value() const {
  if (!closed()) throw OpenTerm("value of open term " + render(*this));
  return n_->value;
}

bool operator==(const Term& a, const Term& b) {
  const Term::Node* x = a.n_.get();
  const Term::Node* y = b.n_.get();
  for (;;) {
    if (x == y) return true;
    if (x->hash != y->hash || x->kind != y->kind || x->size != y->size) return false;
    switch (x->kind) {
      case Term::Kind::Zero:
        return true;
      case Term::Kind::Var:
        return x->var == y->var;
      case Term::Kind::Succ:
        x = x->kids[0].n_.get();
        y = y->kids[0].n_.get();
        break;
      case Term::Kind::Add:
      case Term::Kind::Mul:
        if (!(x->kids[0] == y->kids[0])) return false;
        x = x->kids[1].n_.get();
        y = y->kids[1].n_.get();
        break;
    }
  }
}

// --- Formula --------------------------------------------------------------

Formula::Formula() : Formula(top()) {}

Formula Formula::eq(Term l, Term r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Eq;
  n->free = merge_vars(l.free_vars(), r.free_vars());
  n->size = sat_add(sat_add(l.size(), r.size()), 1);
  n->var_bound = std::max(l.var_bound(), r.var_bound());
  n->hash = detail::mix(detail::mix(0xe9u, l.hash()), r.hash());
  n->shape = 0xe9u;
  n->terms = {std::move(l), std::move(r)};
  return Formula(std::move(n));
}

Formula Formula::neg(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->free = f.n_->free;
  n->size = sat_add(f.n_->size, 1);
  n->var_bound = f.n_->var_bound;
  // !(!a | !b) is how a conjunction is spelled; it counts as one node.
  if (auto c = as_conjunction_parts(f)) {
    n->depth = std::max(c->first->n_->depth, c->second->n_->depth) + 1;
  } else {
    n->depth = f.n_->depth + 1;
  }
  n->hash = detail::mix(0x4e07u, f.n_->hash);
  n->shape = detail::mix(0x4e07u, f.n_->shape);
  n->kids = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::disj(Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->free = merge_vars(l.n_->free, r.n_->free);
  n->size = sat_add(sat_add(l.n_->size, r.n_->size), 1);
  n->depth = std::max(l.n_->depth, r.n_->depth) + 1;
  n->var_bound = std::max(l.n_->var_bound, r.n_->var_bound);
  n->hash = detail::mix(detail::mix(0x0au, l.n_->hash), r.n_->hash);
  n->shape = detail::mix(detail::mix(0x0au, l.n_->shape), r.n_->shape);
  n->kids = {std::move(l), std::move(r)};
  return Formula(std::move(n));
}

Formula Formula::exists(VarIndex v, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exists;
  n->var = v;
  n->free = body.n_->free;
  n->free.erase(std::remove(n->free.begin(), n->free.end(), v), n->free.end());
  n->size = sat_add(body.n_->size, 1);
  n->depth = body.n_->depth + 1;
  n->var_bound = std::max(body.n_->var_bound, v + 1);
  n->hash = detail::mix(detail::mix(0xe8u, static_cast<std::size_t>(v)), body.n_->hash);
  n->shape = detail::mix(detail::mix(0xe8u, static_cast<std::size_t>(v)), body.n_->shape);
  n->kids = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::conj(Formula l, Formula r) { return neg(disj(neg(std::move(l)), neg(std::move(r)))); }
Formula Formula::implies(Formula l, Formula r) { return disj(neg(std::move(l)), std::move(r)); }
Formula Formula::iff(Formula l, Formula r) { return conj(implies(l, r), implies(r, l)); }
Formula Formula::forall(VarIndex v, Formula body) { return neg(exists(v, neg(std::move(body)))); }

std::optional<std::pair<const Formula*, const Formula*>> Formula::as_conjunction_parts(const Formula& f) {
  // f is the operand of the outer negation: expect !a | !b.
  if (f.kind() != Kind::Or) return std::nullopt;
  const Formula& l = f.n_->kids[0];
  const Formula& r = f.n_->kids[1];
  if (l.kind() != Kind::Not || r.kind() != Kind::Not) return std::nullopt;
  return std::make_pair(&l.n_->kids[0], &r.n_->kids[0]);
}

const Term& Formula::left_term() const {
  if (kind() != Kind::Eq) throw std::logic_error("Formula::left_term on non-equation");
  return n_->terms[0];
}
const Term& Formula::right_term() const {
  if (kind() != Kind::Eq) throw std::logic_error("Formula::right_term on non-equation");
  return n_->terms[1];
}
const Formula& Formula::sub() const {
  if (kind() != Kind::Not) throw std::logic_error("Formula::sub on non-negation");
  return n_->kids[0];
}
const Formula& Formula::left() const {
  if (kind() != Kind::Or) throw std::logic_error("Formula::left on non-disjunction");
  return n_->kids[0];
}
const Formula& Formula::right() const {
  if (kind() != Kind::Or) throw std::logic_error("Formula::right on non-disjunction");
  return n_->kids[1];
}
VarIndex Formula::bound_var() const {
  if (kind() != Kind::Exists) throw std::logic_error("Formula::bound_var on non-quantifier");
  return n_->var;
}
const Formula& Formula::body() const {
  if (kind() != Kind::Exists) throw std::logic_error("Formula::body on non-quantifier");
  return n_->kids[0];
}

bool Formula::has_free(VarIndex v) const noexcept {
  return std::binary_search(n_->free.begin(), n_->free.end(), v);
}

bool operator==(const Formula& a, const Formula& b) {
  const Formula::Node* x = a.n_.get();
  const Formula::Node* y = b.n_.get();
  for (;;) {
    if (x == y) return true;
    if (x->hash != y->hash || x->kind != y->kind || x->size != y->size) return false;
    switch (x->kind) {
      case Formula::Kind::Eq:
        return x->terms[0] == y->terms[0] && x->terms[1] == y->terms[1];
      case Formula::Kind::Not:
        x = x->kids[0].n_.get();
        y = y->kids[0].n_.get();
        break;
      case Formula::Kind::Or:
        if (!(x->kids[0] == y->kids[0])) return false;
        x = x->kids[1].n_.get();
        y = y->kids[1].n_.get();
        break;
      case Formula::Kind::Exists:
        if (x->var != y->var) return false;
        x = x->kids[0].n_.get();
        y = y->kids[0].n_.get();
        break;
    }
  }
}

// --- numerals -------------------------------------------------------------

namespace {

constexpr std::uint64_t kNumeralTable = 4096;

const std::vector<Term>& numeral_table() {
  static const std::vector<Term> table = [] {
    std::vector<Term> t;
    t.reserve(kNumeralTable + 1);
    t.push_back(Term::zero());
    for (std::uint64_t i = 1; i <= kNumeralTable; ++i) t.push_back(Term::succ(t.back()));
    return t;
  }();
  return table;
}

}  // namespace

Term numeral(std::uint64_t n) {
  const auto& table = numeral_table();
  if (n <= kNumeralTable) return table[n];
  if (n > kMaxNumeral) throw InvalidParameter("numeral too long: " + std::to_string(n));
  Term t = table.back();
  for (std::uint64_t i = kNumeralTable; i < n; ++i) t = Term::succ(std::move(t));
  return t;
}

Term numeral(const Natural& n) {
  if (n < 0 || n > kMaxNumeral) throw InvalidParameter("numeral out of range: " + n.str());
  return numeral(n.convert_to<std::uint64_t>());
}

Term binary_term(const Natural& n) {
  if (n < 0) throw InvalidParameter("negative value");
  if (n <= 2) return numeral(n.convert_to<std::uint64_t>());
  Term half = Term::mul(numeral(2), binary_term(n >> 1));
  return bit_test(n, 0) ? Term::succ(std::move(half)) : half;
}

std::uint64_t succ_count(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Zero:
    case Term::Kind::Var:
      return 0;
    case Term::Kind::Succ: {
      std::uint64_t k = 0;
      const Term* cur = &t;
      while (cur->kind() == Term::Kind::Succ) {
        ++k;
        cur = &cur->arg();
      }
      return k + succ_count(*cur);
    }
    default:
      return succ_count(t.lhs()) + succ_count(t.rhs());
  }
}

// --- parsing --------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Term whole_term() {
    Term t = term();
    finish();
    return t;
  }
  Formula whole_formula() {
    Formula f = formula();
    finish();
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, pos_); }

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(std::string_view tok) {
    ws();
    return s_.substr(pos_, tok.size()) == tok;
  }
  bool accept(std::string_view tok) {
    if (!peek(tok)) return false;
    pos_ += tok.size();
    return true;
  }
  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }
  void finish() {
    ws();
    if (pos_ != s_.size()) fail("trailing input");
  }

  VarIndex var_index() {
    ws();
    std::size_t start = pos_;
    VarIndex v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      VarIndex d = static_cast<VarIndex>(s_[pos_] - '0');
      if (v > (std::numeric_limits<VarIndex>::max() - d) / 10) fail("variable index overflow");
      v = v * 10 + d;
      ++pos_;
    }
    if (pos_ == start) fail("expected variable index");
    return v;
  }

  Term term() {
    std::size_t succs = 0;
    while (accept("S")) {
      expect("(");
      ++succs;
    }
    Term t = term_atom();
    for (std::size_t i = 0; i < succs; ++i) {
      expect(")");
      t = Term::succ(std::move(t));
    }
    return t;
  }

  Term term_atom() {
    if (accept("0")) return Term::zero();
    if (accept("v")) return Term::var(var_index());
    if (accept("(")) {
      Term l = term();
      if (accept("+")) {
        Term r = term();
        expect(")");
        return Term::add(std::move(l), std::move(r));
      }
      if (accept("*")) {
        Term r = term();
        expect(")");
        return Term::mul(std::move(l), std::move(r));
      }
      fail("expected '+' or '*'");
    }
    fail("expected term");
  }

  Formula atom() {
    Term l = term();
    expect("=");
    Term r = term();
    return Formula::eq(std::move(l), std::move(r));
  }

  Formula quantifier(bool universal) {
    expect("v");
    VarIndex v = var_index();
    expect(".");
    Formula body = formula();
    return universal ? Formula::forall(v, std::move(body)) : Formula::exists(v, std::move(body));
  }

  Formula formula() {
    if (accept("!")) return Formula::neg(formula());
    if (accept("E")) return quantifier(false);
    if (accept("A")) return quantifier(true);
    if (!peek("(")) return atom();

    // "(" opens either a compound term of an equation or a formula group.
    const std::size_t start = pos_;
    try {
      return atom();
    } catch (const SyntaxError& as_atom) {
      const std::size_t atom_reach = as_atom.offset();
      pos_ = start;
      try {
        return group();
      } catch (const SyntaxError& as_group) {
        if (atom_reach > as_group.offset()) throw;
        throw as_group;
      }
    }
  }

  Formula group() {
    expect("(");
    Formula l = formula();
    if (accept(")")) return l;
    if (accept("|")) {
      Formula r = formula();
      expect(")");
      return Formula::disj(std::move(l), std::move(r));
    }
    if (accept("&")) {
      Formula r = formula();
      expect(")");
      return Formula::conj(std::move(l), std::move(r));
    }
    if (accept("->")) {
      Formula r = formula();
      expect(")");
      return Formula::implies(std::move(l), std::move(r));
    }
    if (accept("<->")) {
      Formula r = formula();
      expect(")");
      return Formula::iff(std::move(l), std::move(r));
    }
    fail("expected connective or ')'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void render_to(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      out += '0';
      return;
    case Term::Kind::Var:
      out += 'v';
      out += std::to_string(t.index());
      return;
    case Term::Kind::Succ: {
      std::size_t k = 0;
      const Term* cur = &t;
      while (cur->kind() == Term::Kind::Succ) {
        out += "S(";
        ++k;
        cur = &cur->arg();
      }
      render_to(*cur, out);
      out.append(k, ')');
      return;
    }
    case Term::Kind::Add:
    case Term::Kind::Mul:
      out += '(';
      render_to(t.lhs(), out);
      out += t.kind() == Term::Kind::Add ? " + " : " * ";
      render_to(t.rhs(), out);
      out += ')';
      return;
  }
}

void render_to(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      render_to(f.left_term(), out);
      out += " = ";
      render_to(f.right_term(), out);
      return;
    case Formula::Kind::Not:
      out += '!';
      render_to(f.sub(), out);
      return;
    case Formula::Kind::Or:
      out += '(';
      render_to(f.left(), out);
      out += " | ";
      render_to(f.right(), out);
      out += ')';
      return;
    case Formula::Kind::Exists:
      out += "E v";
      out += std::to_string(f.bound_var());
      out += ". ";
      render_to(f.body(), out);
      return;
  }
}

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).whole_term(); }
Formula parse_formula(std::string_view text) { return Parser(text).whole_formula(); }

std::string render(const Term& t) {
  std::string out;
  render_to(t, out);
  return out;
}

std::string render(const Formula& f) {
  std::string out;
  render_to(f, out);
  return out;
}

// --- structure ------------------------------------------------------------

const std::vector<VarIndex>& free_vars(const Formula& f) { return f.free_vars(); }

std::vector<Formula> direct_subformulas(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      return {};
    case Formula::Kind::Not:
      return {f.sub()};
    case Formula::Kind::Or:
      return {f.left(), f.right()};
    case Formula::Kind::Exists:
      return {f.body()};
  }
  return {};
}

std::uint64_t syntactic_depth(const Formula& f) { return f.depth(); }

std::optional<std::pair<Formula, Formula>> as_conjunction(const Formula& f) {
  if (f.kind() != Formula::Kind::Not) return std::nullopt;
  const Formula& o = f.sub();
  if (o.kind() != Formula::Kind::Or) return std::nullopt;
  if (o.left().kind() != Formula::Kind::Not || o.right().kind() != Formula::Kind::Not) return std::nullopt;
  return std::make_pair(o.left().sub(), o.right().sub());
}

namespace {

bool touches(const std::vector<VarIndex>& free, const TermSubst& s) {
  for (VarIndex v : free) {
    if (s.count(v)) return true;
  }
  return false;
}

class ClosedSubstituter {
 public:
  explicit ClosedSubstituter(const TermSubst& s) : s_(s) {}

  Term run(const Term& t) {
    if (!touches(t.free_vars(), s_)) return t;
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
    if (!touches(f.free_vars(), s_)) return f;
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
        if (s_.count(f.bound_var())) {
          TermSubst inner = s_;
          inner.erase(f.bound_var());
          out = Formula::exists(f.bound_var(), ClosedSubstituter(inner).run(f.body()));
        } else {
          out = Formula::exists(f.bound_var(), run(f.body()));
        }
        break;
    }
    memo_.emplace(f.id(), out);
    return out;
  }

 private:
  const TermSubst& s_;
  std::unordered_map<const void*, Formula> memo_;
};

void require_closed(const TermSubst& s) {
  for (const auto& [v, t] : s) {
    if (!t.closed()) {
      throw OpenTermSubstitution("image of v" + std::to_string(v) + " is open: " + render(t));
    }
  }
}

}  // namespace

Formula substitute(const Formula& f, const TermSubst& s) {
  require_closed(s);
  if (s.empty()) return f;
  return ClosedSubstituter(s).run(f);
}

Term substitute(const Term& t, const TermSubst& s) {
  require_closed(s);
  if (s.empty()) return t;
  return ClosedSubstituter(s).run(t);
}

Formula apply_valuation(const Formula& f, const Valuation& a) {
  TermSubst s;
  for (VarIndex v : f.free_vars()) {
    auto it = a.find(v);
    if (it == a.end()) throw InadmissibleValuation("no value for free variable v" + std::to_string(v));
    s.emplace(v, numeral(it->second));
  }
  return substitute(f, s);
}

Valuation restrict_to(const Valuation& a, const Formula& f) {
  Valuation out;
  for (VarIndex v : f.free_vars()) {
    if (auto it = a.find(v); it != a.end()) out.emplace(v, it->second);
  }
  return out;
}

// --- named families -------------------------------------------------------

Formula top() {
  static const Formula t = Formula::eq(Term::zero(), Term::zero());
  return t;
}

Formula bottom() {
  static const Formula b = Formula::neg(top());
  return b;
}

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return top();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::conj(std::move(acc), fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return bottom();
  Formula acc = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) acc = Formula::disj(std::move(acc), fs[i]);
  return acc;
}

Formula leq(const Term& a, const Term& b) {
  const VarIndex z = std::max(a.var_bound(), b.var_bound());
  return Formula::exists(z, Formula::eq(b, Term::add(Term::var(z), a)));
}

std::optional<LeqShape> as_leq(const Formula& f) {
  if (f.kind() != Formula::Kind::Exists) return std::nullopt;
  const Formula& e = f.body();
  if (e.kind() != Formula::Kind::Eq) return std::nullopt;
  const VarIndex z = f.bound_var();
  auto free_of_z = [z](const Term& t) {
    return !std::binary_search(t.free_vars().begin(), t.free_vars().end(), z);
  };
  auto try_side = [&](const Term& sum, const Term& other) -> std::optional<LeqShape> {
    if (sum.kind() != Term::Kind::Add || !free_of_z(other)) return std::nullopt;
    const Term& l = sum.lhs();
    const Term& r = sum.rhs();
    if (l.kind() == Term::Kind::Var && l.index() == z && free_of_z(r)) return LeqShape{r, other, z};
    if (r.kind() == Term::Kind::Var && r.index() == z && free_of_z(l)) return LeqShape{l, other, z};
    return std::nullopt;
  };
  if (auto m = try_side(e.right_term(), e.left_term())) return m;
  return try_side(e.left_term(), e.right_term());
}

Formula build_eta(std::uint64_t b) {
  if (b == 0) throw InvalidParameter("eta_b needs b >= 1");
  auto refl = [](VarIndex i) { return Formula::eq(Term::var(i), Term::var(i)); };
  Formula matrix = refl(0);
  for (std::uint64_t i = 0; i <= b; ++i) matrix = Formula::conj(std::move(matrix), refl(i + 1));
  for (std::uint64_t k = b; k >= 1; --k) matrix = Formula::exists(k + 1, std::move(matrix));
  return matrix;
}

Formula close_eta(std::uint64_t b, const Natural& x) {
  return substitute(build_eta(b), {{0, numeral(x)}, {1, Term::zero()}});
}

Formula eta_predicate(std::uint64_t b) { return substitute(build_eta(b), {{1, Term::zero()}}); }

std::vector<Formula> eta_layers(std::uint64_t b) {
  std::vector<Formula> layers;
  Formula cur = build_eta(b);
  for (std::uint64_t k = 1; k <= b; ++k) {
    layers.push_back(cur);
    cur = cur.body();
  }
  return layers;
}

}  // namespace ctlab
