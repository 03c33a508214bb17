#include "ctlab/goedel.hpp"

#include <limits>
#include <optional>

#include "ctlab/errors.hpp"

namespace ctlab {

namespace {

constexpr unsigned kZero = 0;
constexpr unsigned kSucc = 1;
constexpr unsigned kAdd = 2;
constexpr unsigned kMul = 3;
constexpr unsigned kVar = 4;
constexpr unsigned kEq = 5;
constexpr unsigned kNot = 6;
constexpr unsigned kOr = 7;
constexpr unsigned kExists = 8;

std::optional<unsigned> small_tag(const Natural& t) {
  if (t > kExists) return std::nullopt;
  return t.convert_to<unsigned>();
}

std::optional<VarIndex> var_index_of(const Natural& k) {
  if (k > std::numeric_limits<VarIndex>::max()) return std::nullopt;
  return k.convert_to<VarIndex>();
}

std::optional<Term> try_term(const Natural& c) {
  auto [tag, payload] = unpair(c);
  auto t = small_tag(tag);
  if (!t) return std::nullopt;
  switch (*t) {
    case kZero:
      if (payload != 0) return std::nullopt;
      return Term::zero();
    case kSucc: {
      // Walk the successor chain without recursing on it.
      std::size_t k = 1;
      Natural cur = payload;
      for (;;) {
        auto [tg, pl] = unpair(cur);
        if (tg != kSucc) break;
        ++k;
        cur = std::move(pl);
      }
      auto inner = try_term(cur);
      if (!inner) return std::nullopt;
      Term out = *inner;
      for (std::size_t i = 0; i < k; ++i) out = Term::succ(std::move(out));
      return out;
    }
    case kAdd:
    case kMul: {
      auto [l, r] = unpair(payload);
      auto lt = try_term(l);
      if (!lt) return std::nullopt;
      auto rt = try_term(r);
      if (!rt) return std::nullopt;
      return *t == kAdd ? Term::add(*lt, *rt) : Term::mul(*lt, *rt);
    }
    case kVar: {
      auto v = var_index_of(payload);
      if (!v) return std::nullopt;
      return Term::var(*v);
    }
    default:
      return std::nullopt;
  }
}

std::optional<Formula> try_formula(const Natural& c) {
  auto [tag, payload] = unpair(c);
  auto t = small_tag(tag);
  if (!t) return std::nullopt;
  switch (*t) {
    case kEq: {
      auto [l, r] = unpair(payload);
      auto lt = try_term(l);
      if (!lt) return std::nullopt;
      auto rt = try_term(r);
      if (!rt) return std::nullopt;
      return Formula::eq(*lt, *rt);
    }
    case kNot: {
      auto f = try_formula(payload);
      if (!f) return std::nullopt;
      return Formula::neg(*f);
    }
    case kOr: {
      auto [l, r] = unpair(payload);
      auto lf = try_formula(l);
      if (!lf) return std::nullopt;
      auto rf = try_formula(r);
      if (!rf) return std::nullopt;
      return Formula::disj(*lf, *rf);
    }
    case kExists: {
      auto [k, b] = unpair(payload);
      auto v = var_index_of(k);
      if (!v) return std::nullopt;
      auto body = try_formula(b);
      if (!body) return std::nullopt;
      return Formula::exists(*v, *body);
    }
    default:
      return std::nullopt;
  }
}

// Visits the items of a sequence code in order; stops early when f returns
// false. A zero tail stands for a run of zero items, which is visited once.
template <class F>
bool for_each_item(const Natural& c, F&& f) {
  auto [n, rest] = unpair(c);
  if (n == 0) {
    if (rest != 0) throw NotASeqCode("empty sequence with nonzero payload");
    return true;
  }
  Natural remaining = n;
  while (remaining > 0) {
    if (rest == 0) return f(Natural(0));
    if (remaining == 1) return f(rest);
    auto [item, tail] = unpair(rest);
    if (!f(item)) return false;
    rest = std::move(tail);
    --remaining;
  }
  return true;
}

}  // namespace

Natural pair(const Natural& x, const Natural& y) {
  Natural s = x + y;
  return s * (s + 1) / 2 + y;
}

std::pair<Natural, Natural> unpair(const Natural& z) {
  if (z < 0) throw InvalidParameter("unpair of a negative number");
  Natural w = (boost::multiprecision::sqrt(Natural(8 * z + 1)) - 1) / 2;
  Natural t = w * (w + 1) / 2;
  Natural y = z - t;
  return {w - y, y};
}

GoedelCode encode_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Zero:
      return pair(kZero, 0);
    case Term::Kind::Var:
      return pair(kVar, Natural(t.index()));
    case Term::Kind::Succ: {
      std::size_t k = 0;
      const Term* cur = &t;
      while (cur->kind() == Term::Kind::Succ) {
        ++k;
        cur = &cur->arg();
      }
      Natural c = encode_term(*cur);
      for (std::size_t i = 0; i < k; ++i) c = pair(kSucc, c);
      return c;
    }
    case Term::Kind::Add:
      return pair(kAdd, pair(encode_term(t.lhs()), encode_term(t.rhs())));
    case Term::Kind::Mul:
      return pair(kMul, pair(encode_term(t.lhs()), encode_term(t.rhs())));
  }
  return 0;
}

Term decode_term(const GoedelCode& c) {
  if (c < 0) throw NotATermCode("negative code");
  auto t = try_term(c);
  if (!t) throw NotATermCode("not a term code: " + c.str());
  return *t;
}

GoedelCode encode_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      return pair(kEq, pair(encode_term(f.left_term()), encode_term(f.right_term())));
    case Formula::Kind::Not:
      return pair(kNot, encode_formula(f.sub()));
    case Formula::Kind::Or:
      return pair(kOr, pair(encode_formula(f.left()), encode_formula(f.right())));
    case Formula::Kind::Exists:
      return pair(kExists, pair(Natural(f.bound_var()), encode_formula(f.body())));
  }
  return 0;
}

Formula decode_formula(const GoedelCode& c) {
  if (c < 0) throw NotAFormulaCode("negative code");
  auto f = try_formula(c);
  if (!f) throw NotAFormulaCode("not a formula code: " + c.str());
  return *f;
}

namespace {

// Items are paired as a balanced tree, the left half taking the extra item,
// so a code nests only log2(n) pairings deep.
Natural encode_items(const std::vector<GoedelCode>& xs, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return xs[lo];
  const std::size_t mid = lo + (hi - lo + 1) / 2;
  return pair(encode_items(xs, lo, mid), encode_items(xs, mid, hi));
}

void decode_items(const Natural& c, std::size_t n, std::vector<GoedelCode>& out) {
  if (n == 1) {
    out.push_back(c);
    return;
  }
  const std::size_t left = (n + 1) / 2;
  auto [l, r] = unpair(c);
  decode_items(l, left, out);
  decode_items(r, n - left, out);
}

}  // namespace

GoedelCode encode_seq(const std::vector<GoedelCode>& xs) {
  if (xs.empty()) return pair(0, 0);
  return pair(Natural(xs.size()), encode_items(xs, 0, xs.size()));
}

bool is_seq(const GoedelCode& c) {
  if (c < 0) return false;
  auto [n, rest] = unpair(c);
  return n != 0 || rest == 0;
}

Natural seq_len(const GoedelCode& c) {
  if (!is_seq(c)) throw NotASeqCode("not a sequence code: " + c.str());
  return unpair(c).first;
}

std::vector<GoedelCode> decode_seq(const GoedelCode& c) {
  Natural n = seq_len(c);
  if (n > kMaxSeqDecode) throw NotASeqCode("sequence too long to materialize: " + n.str());
  std::vector<GoedelCode> out;
  if (n == 0) return out;
  out.reserve(n.convert_to<std::size_t>());
  decode_items(unpair(c).second, n.convert_to<std::size_t>(), out);
  return out;
}

GoedelCode seq_get(const GoedelCode& c, const Natural& i) {
  Natural n = seq_len(c);
  if (i < 0 || i >= n) throw IndexOutOfRange("index " + i.str() + " of sequence of length " + n.str());
  Natural cur = unpair(c).second;
  Natural k = i;
  while (n > 1) {
    Natural left = (n + 1) / 2;
    auto [l, r] = unpair(cur);
    if (k < left) {
      cur = std::move(l);
      n = std::move(left);
    } else {
      cur = std::move(r);
      k -= left;
      n -= left;
    }
  }
  return cur;
}

bool is_var(const GoedelCode& c) {
  if (c < 0) return false;
  auto [tag, payload] = unpair(c);
  return tag == kVar && var_index_of(payload).has_value();
}

bool is_term(const GoedelCode& c) { return c >= 0 && try_term(c).has_value(); }

bool is_closed_term(const GoedelCode& c) {
  if (c < 0) return false;
  auto t = try_term(c);
  return t && t->closed();
}

bool is_form(const GoedelCode& c) { return c >= 0 && try_formula(c).has_value(); }

bool is_form_le1(const GoedelCode& c) {
  if (c < 0) return false;
  auto f = try_formula(c);
  return f && f->free_vars().size() <= 1;
}

bool is_sent(const GoedelCode& c) {
  if (c < 0) return false;
  auto f = try_formula(c);
  return f && f->is_sentence();
}

bool is_termseq(const GoedelCode& c) {
  if (!is_seq(c)) return false;
  return for_each_item(c, [](const Natural& x) { return is_term(x); });
}

bool is_cltermseq(const GoedelCode& c) {
  if (!is_seq(c)) return false;
  return for_each_item(c, [](const Natural& x) { return is_closed_term(x); });
}

}  // namespace ctlab
