#include "ctlab/satclass.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ctlab/errors.hpp"
#include "rank_common.hpp"
#include "satclass_common.hpp"

namespace ctlab {

Occurrence normalize(Occurrence o) {
  Valuation v;
  for (VarIndex x : o.formula.free_vars()) {
    auto it = o.valuation.find(x);
    if (it == o.valuation.end()) {
      throw InadmissibleValuation("no value for v" + std::to_string(x) + " in " + render(o.formula));
    }
    v.emplace(x, it->second);
  }
  o.valuation = std::move(v);
  return o;
}

namespace {

Term canonical_term(const Term& t) {
  if (t.closed()) return detail::value_term(t.value());
  switch (t.kind()) {
    case Term::Kind::Succ:
      return Term::succ(canonical_term(t.arg()));
    case Term::Kind::Add:
      return Term::add(canonical_term(t.lhs()), canonical_term(t.rhs()));
    case Term::Kind::Mul:
      return Term::mul(canonical_term(t.lhs()), canonical_term(t.rhs()));
    default:
      return t;
  }
}

Formula canonical(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Eq:
      return Formula::eq(canonical_term(f.left_term()), canonical_term(f.right_term()));
    case Formula::Kind::Not:
      return Formula::neg(canonical(f.sub()));
    case Formula::Kind::Or:
      return Formula::disj(canonical(f.left()), canonical(f.right()));
    case Formula::Kind::Exists:
      return Formula::exists(f.bound_var(), canonical(f.body()));
  }
  return f;
}

bool au_term(const Term& a, const Term& b) {
  if (a.closed() && b.closed()) return a.value() == b.value();
  if (a.closed() || b.closed() || a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Term::Kind::Var:
      return a.index() == b.index();
    case Term::Kind::Succ:
      return au_term(a.arg(), b.arg());
    case Term::Kind::Add:
    case Term::Kind::Mul:
      return au_term(a.lhs(), b.lhs()) && au_term(a.rhs(), b.rhs());
    case Term::Kind::Zero:
      break;
  }
  return true;
}

bool au(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Formula::Kind::Eq:
      return au_term(a.left_term(), b.left_term()) && au_term(a.right_term(), b.right_term());
    case Formula::Kind::Not:
      return au(a.sub(), b.sub());
    case Formula::Kind::Or:
      return au(a.left(), b.left()) && au(a.right(), b.right());
    case Formula::Kind::Exists:
      return a.bound_var() == b.bound_var() && au(a.body(), b.body());
  }
  return false;
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> parent;
};

std::vector<std::size_t> topo_sort(const std::vector<std::vector<std::size_t>>& children) {
  const std::size_t n = children.size();
  std::vector<std::size_t> pending(n);
  std::vector<std::vector<std::size_t>> parents(n);
  for (std::size_t p = 0; p < n; ++p) {
    pending[p] = children[p].size();
    for (std::size_t c : children[p]) parents[c].push_back(p);
  }
  std::vector<std::size_t> order, ready;
  for (std::size_t i = n; i-- > 0;) {
    if (pending[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    std::size_t c = ready.back();
    ready.pop_back();
    order.push_back(c);
    for (std::size_t p : parents[c]) {
      if (--pending[p] == 0) ready.push_back(p);
    }
  }
  if (order.size() != n) throw CyclicOrder("subformula order has a cycle");
  return order;
}

void add_edge(std::vector<std::vector<std::size_t>>& children, std::size_t child, std::size_t parent) {
  auto& v = children[parent];
  if (std::find(v.begin(), v.end(), child) == v.end()) v.push_back(child);
}

bool arithmetic_truth(const Formula& atom) { return atom.left_term().value() == atom.right_term().value(); }

}  // namespace

Formula canonical_key(const Occurrence& o) { return canonical(o.sentence()); }

bool occurrence_equiv_step(const Occurrence& a, const Occurrence& b) { return au(a.sentence(), b.sentence()); }

Partition equiv_classes(const std::vector<Occurrence>& occs) {
  std::vector<Formula> sentences;
  sentences.reserve(occs.size());
  for (const auto& o : occs) sentences.push_back(o.sentence());
  // Anti-unification preserves the connective skeleton, so only sentences
  // of one shape can be related.
  std::unordered_map<std::size_t, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < occs.size(); ++i) buckets[sentences[i].shape_hash()].push_back(i);
  UnionFind uf(occs.size());
  for (const auto& [_, idx] : buckets) {
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        if (uf.find(idx[i]) != uf.find(idx[j]) && au(sentences[idx[i]], sentences[idx[j]])) uf.unite(idx[i], idx[j]);
      }
    }
  }
  Partition out;
  std::unordered_map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < occs.size(); ++i) {
    auto [it, fresh] = slot.emplace(uf.find(i), out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(i);
  }
  return out;
}

bool ClassDag::below(std::size_t a, std::size_t b) const {
  std::vector<std::size_t> stack = children.at(b);
  std::vector<bool> seen(children.size());
  while (!stack.empty()) {
    std::size_t c = stack.back();
    stack.pop_back();
    if (c == a) return true;
    if (seen[c]) continue;
    seen[c] = true;
    stack.insert(stack.end(), children[c].begin(), children[c].end());
  }
  return false;
}

ClassDag subformula_order(const std::vector<Occurrence>& occs, const Partition& classes) {
  std::vector<std::size_t> cls(occs.size());
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (std::size_t m : classes[c]) cls.at(m) = c;
  }
  std::unordered_map<Formula, std::vector<std::size_t>, FormulaHash> by_formula;
  for (std::size_t i = 0; i < occs.size(); ++i) by_formula[occs[i].formula].push_back(i);

  ClassDag dag;
  dag.children.resize(classes.size());
  for (std::size_t p = 0; p < occs.size(); ++p) {
    const Formula& f = occs[p].formula;
    const VarIndex bound = f.kind() == Formula::Kind::Exists ? f.bound_var() : 0;
    for (const auto& d : direct_subformulas(f)) {
      auto it = by_formula.find(d);
      if (it == by_formula.end()) continue;
      for (std::size_t c : it->second) {
        bool fits = true;
        for (const auto& [v, x] : occs[c].valuation) {
          if (f.kind() == Formula::Kind::Exists && v == bound) continue;
          auto pv = occs[p].valuation.find(v);
          fits = fits && pv != occs[p].valuation.end() && pv->second == x;
        }
        if (fits) add_edge(dag.children, cls[c], cls[p]);
      }
    }
  }
  dag.topo = topo_sort(dag.children);
  return dag;
}

namespace detail {

std::vector<Valuation> all_valuations(const std::vector<VarIndex>& vars, std::uint64_t w) {
  std::vector<Valuation> out{Valuation{}};
  for (VarIndex v : vars) {
    std::vector<Valuation> next;
    next.reserve(out.size() * (w + 1));
    for (const auto& a : out) {
      for (std::uint64_t x = 0; x <= w; ++x) {
        Valuation b = a;
        b[v] = x;
        next.push_back(std::move(b));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Occurrence> child_occurrences(const Occurrence& o, std::uint64_t w) {
  std::vector<Occurrence> out;
  const Formula& f = o.formula;
  switch (f.kind()) {
    case Formula::Kind::Eq:
      break;
    case Formula::Kind::Not:
      out.push_back(normalize({f.sub(), o.valuation}));
      break;
    case Formula::Kind::Or:
      out.push_back(normalize({f.left(), o.valuation}));
      out.push_back(normalize({f.right(), o.valuation}));
      break;
    case Formula::Kind::Exists:
      for (std::uint64_t x = 0; x <= w; ++x) {
        Valuation a = o.valuation;
        a[f.bound_var()] = x;
        out.push_back(normalize({f.body(), std::move(a)}));
      }
      break;
  }
  return out;
}

std::optional<bool> eta_forced(const Occurrence& o, const ConstraintSet& gamma) {
  if (gamma.eta_b == 0 || o.formula.kind() != Formula::Kind::Exists) return std::nullopt;
  auto it = o.valuation.find(kSubject);
  if (it == o.valuation.end()) return std::nullopt;
  for (const auto& layer : eta_layers(gamma.eta_b)) {
    if (layer == o.formula) return gamma.a_set.count(it->second) != 0;
  }
  return std::nullopt;
}

}  // namespace detail

namespace {

class UniverseBuilder {
 public:
  std::size_t add(Occurrence o) {
    o = normalize(std::move(o));
    auto& bucket = by_formula_[o.formula];
    for (const auto& [val, idx] : bucket) {
      if (val == o.valuation) return idx;
    }
    bucket.emplace_back(o.valuation, occs_.size());
    occs_.push_back(std::move(o));
    return occs_.size() - 1;
  }
  std::size_t size() const noexcept { return occs_.size(); }
  std::vector<Occurrence> take() { return std::move(occs_); }

 private:
  std::vector<Occurrence> occs_;
  std::unordered_map<Formula, std::vector<std::pair<Valuation, std::size_t>>, FormulaHash> by_formula_;
};

Occurrence eta_occurrence(std::uint64_t b, const Natural& x) {
  return {build_eta(b), {{kSubject, x}, {1, Natural(0)}}};
}

// Universe plus the number of leading comp occurrences.
std::pair<std::vector<Occurrence>, std::size_t> universe(const ConstraintSet& g) {
  UniverseBuilder u;
  std::vector<Occurrence> comps;
  for (const auto& f : g.comp_instances) {
    for (auto& a : detail::all_valuations(f.free_vars(), g.witness_bound)) {
      comps.push_back({f, std::move(a)});
    }
  }
  for (const auto& c : comps) u.add(c);
  const std::size_t n_comp = u.size();
  for (const auto& c : comps) {
    for (auto& ch : detail::child_occurrences(c, g.witness_bound)) u.add(std::move(ch));
  }
  for (const auto& [o, _] : g.preservation) u.add(o);
  for (const auto& [o, _] : g.base_truth) u.add(o);
  if (g.eta_b > 0) {
    for (std::uint64_t x = 0; x <= g.witness_bound; ++x) u.add(eta_occurrence(g.eta_b, x));
    for (const auto& x : g.a_set) u.add(eta_occurrence(g.eta_b, x));
  }
  return {u.take(), n_comp};
}

struct Candidate {
  bool value;
  std::string source;
};

}  // namespace

std::vector<Occurrence> constraint_universe(const ConstraintSet& gamma) { return universe(gamma).first; }

std::optional<std::size_t> SatAssignment::find_class(const Formula& sentence) const {
  if (!sentence.is_sentence()) return std::nullopt;
  auto it = index_.find(canonical(sentence));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::optional<bool> SatAssignment::verdict(const Occurrence& o) const {
  auto c = find_class(apply_valuation(o.formula, o.valuation));
  if (!c) return std::nullopt;
  return classes_[*c].verdict;
}

SatAssignment build_satisfaction(const ConstraintSet& g) {
  SatAssignment s;
  auto [occs, n_comp] = universe(g);
  s.occs_ = std::move(occs);
  const auto& os = s.occs_;

  s.class_of_.resize(os.size());
  for (std::size_t i = 0; i < os.size(); ++i) {
    Formula key = canonical_key(os[i]);
    auto [it, fresh] = s.index_.emplace(key, s.classes_.size());
    if (fresh) s.classes_.push_back({key, {}, false});
    s.class_of_[i] = it->second;
    s.classes_[it->second].members.push_back(i);
  }
  const std::size_t nc = s.classes_.size();

  auto class_for = [&](const Occurrence& o) -> std::optional<std::size_t> { return s.find_class(o.sentence()); };

  // Edges from the classes of every member's direct subformula occurrences.
  std::vector<std::vector<std::vector<std::size_t>>> kids(os.size());
  s.order_.children.resize(nc);
  for (std::size_t i = 0; i < os.size(); ++i) {
    for (const auto& ch : detail::child_occurrences(os[i], g.witness_bound)) {
      auto c = class_for(ch);
      kids[i].push_back(c ? std::vector<std::size_t>{*c} : std::vector<std::size_t>{});
      if (c) add_edge(s.order_.children, *c, s.class_of_[i]);
    }
  }
  s.order_.topo = topo_sort(s.order_.children);

  std::vector<std::vector<Candidate>> cand(nc);
  auto pinned = [&](const std::vector<std::pair<Occurrence, bool>>& entries, const char* what) {
    for (const auto& [o, v] : entries) {
      Occurrence n = normalize(o);
      cand[*class_for(n)].push_back({v, std::string(what) + " entry " + render(n.sentence())});
    }
  };
  pinned(g.base_truth, "base");
  pinned(g.preservation, "preservation");
  for (std::size_t i = 0; i < os.size(); ++i) {
    if (auto e = detail::eta_forced(os[i], g)) {
      cand[s.class_of_[i]].push_back({*e, "eta clause at " + render(os[i].sentence())});
    }
  }

  std::vector<bool> done(nc, false);
  // Compositional value of one occurrence from its children's classes.
  auto compose = [&](std::size_t i) -> std::optional<bool> {
    const Formula& f = os[i].formula;
    std::vector<bool> vals;
    for (const auto& k : kids[i]) {
      if (k.empty() || !done[k[0]]) return std::nullopt;
      vals.push_back(s.classes_[k[0]].verdict);
    }
    switch (f.kind()) {
      case Formula::Kind::Eq:
        return arithmetic_truth(os[i].sentence());
      case Formula::Kind::Not:
        return !vals[0];
      case Formula::Kind::Or:
        return vals[0] || vals[1];
      case Formula::Kind::Exists:
        return std::any_of(vals.begin(), vals.end(), [](bool b) { return b; });
    }
    return std::nullopt;
  };

  for (std::size_t c : s.order_.topo) {
    auto& cls = s.classes_[c];
    auto& cs = cand[c];
    for (std::size_t m : cls.members) {
      if (m >= n_comp) continue;
      auto v = compose(m);
      if (!v) throw SpecInvariantViolation("comp occurrence without its subformula classes");
      cs.push_back({*v, "compositional clause at " + render(os[m].sentence())});
    }
    if (!cs.empty()) {
      for (const auto& other : cs) {
        if (other.value != cs.front().value) {
          throw InconsistentConstraints("class " + render(cls.key) + ": " + cs.front().source + " gives " +
                                        (cs.front().value ? "true" : "false") + " but " + other.source +
                                        " gives " + (other.value ? "true" : "false"));
        }
      }
      cls.verdict = cs.front().value;
    } else if (cls.key.kind() == Formula::Kind::Eq) {
      cls.verdict = arithmetic_truth(cls.key);
    } else {
      // Minimal classes with nothing forcing them stay out of S.
      cls.verdict = false;
      for (std::size_t m : cls.members) {
        if (auto v = compose(m)) {
          cls.verdict = *v;
          break;
        }
      }
    }
    done[c] = true;
  }
  return s;
}

Verdict SatOracle::judge(const Formula& sentence) const {
  auto c = s_.find_class(sentence);
  if (!c) return Verdict::Unknown;
  return verdict_of(s_.classes()[*c].verdict);
}

std::string format_assignment(const SatAssignment& s) {
  std::vector<std::string> lines;
  for (const auto& c : s.classes()) {
    lines.push_back("CLASS " + render(c.key) + " -> " + (c.verdict ? "true" : "false"));
  }
  std::sort(lines.begin(), lines.end());
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  for (;;) {
    auto p = s.find(sep);
    out.push_back(trim(s.substr(0, p)));
    if (p == std::string_view::npos) return out;
    s.remove_prefix(p + 1);
  }
}

Valuation parse_valuation(std::string_view text, std::size_t at) {
  Valuation v;
  if (text.empty()) return v;
  for (auto item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string_view::npos || item.size() < 2 || item[0] != 'v') {
      throw SyntaxError("expected vK=N in valuation", at);
    }
    try {
      VarIndex k = std::stoull(std::string(trim(item.substr(1, eq - 1))));
      v[k] = parse_natural(std::string(trim(item.substr(eq + 1))));
    } catch (const std::invalid_argument&) {
      throw SyntaxError("bad number in valuation", at);
    } catch (const std::out_of_range&) {
      throw SyntaxError("variable index out of range", at);
    }
  }
  return v;
}

Formula formula_at(std::string_view text, std::size_t at) {
  try {
    return parse_formula(text);
  } catch (const SyntaxError& e) {
    throw SyntaxError("bad formula '" + std::string(text) + "'", at + e.offset());
  }
}

bool parse_bool(std::string_view t, std::size_t at) {
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw SyntaxError("expected true or false", at);
}

}  // namespace

ConstraintSet parse_constraints(std::string_view text) {
  ConstraintSet g;
  enum class Sec { None, Comp, Preserve, Base, A, Eta } sec = Sec::None;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    auto nl = text.find('\n', offset);
    std::string_view raw = text.substr(offset, nl == std::string_view::npos ? std::string_view::npos : nl - offset);
    const std::size_t at = offset;
    offset = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line == "[COMP]") sec = Sec::Comp;
      else if (line == "[PRESERVE]") sec = Sec::Preserve;
      else if (line == "[BASE]") sec = Sec::Base;
      else if (line == "[A]") sec = Sec::A;
      else if (line == "[ETA]") sec = Sec::Eta;
      else throw SyntaxError("unknown section " + std::string(line), at);
      continue;
    }
    try {
      switch (sec) {
        case Sec::None:
          throw SyntaxError("entry before any section", at);
        case Sec::Comp:
          g.comp_instances.push_back(formula_at(line, at));
          break;
        case Sec::Preserve:
        case Sec::Base: {
          auto parts = split(line, ';');
          if (parts.size() != 3) throw SyntaxError("expected 'formula ; valuation ; bool'", at);
          Occurrence o{formula_at(parts[0], at), parse_valuation(parts[1], at)};
          (sec == Sec::Base ? g.base_truth : g.preservation).emplace_back(std::move(o), parse_bool(parts[2], at));
          break;
        }
        case Sec::A:
          for (auto item : split(line, ',')) {
            for (std::size_t p = 0; p < item.size();) {
              auto q = item.find(' ', p);
              auto tok = trim(item.substr(p, q == std::string_view::npos ? std::string_view::npos : q - p));
              if (!tok.empty()) g.a_set.insert(parse_natural(std::string(tok)));
              if (q == std::string_view::npos) break;
              p = q + 1;
            }
          }
          break;
        case Sec::Eta:
          g.eta_b = std::stoull(std::string(line));
          break;
      }
    } catch (const std::invalid_argument&) {
      throw SyntaxError("bad number", at);
    } catch (const std::out_of_range&) {
      throw SyntaxError("number out of range", at);
    }
  }
  return g;
}

}  // namespace ctlab
