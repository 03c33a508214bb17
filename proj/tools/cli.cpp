#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ctlab/errors.hpp"
#include "ctlab/evaluation.hpp"
#include "ctlab/goedel.hpp"
#include "ctlab/rank.hpp"
#include "ctlab/satclass.hpp"
#include "ctlab/stopping_disjunction.hpp"
#include "ctlab/syntax.hpp"

namespace ctlab::cli {

namespace {

// Formulas above this many nodes are summarized instead of printed.
constexpr std::uint64_t kPrintLimit = 4000;

std::string slurp(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidParameter("cannot open " + path);
  return slurp(f);
}

std::string trimmed(std::string s) {
  auto ws = [](unsigned char c) { return std::isspace(c); };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), ws));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), ws).base(), s.end());
  return s;
}

// One formula per non-empty line; '#' starts a comment.
std::vector<Formula> formula_lines(const std::string& text) {
  std::vector<Formula> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trimmed(line);
    if (!line.empty()) out.push_back(parse_formula(line));
  }
  return out;
}

std::string summary(const Formula& f) {
  std::string s = "size " + std::to_string(f.size()) + ", depth " + std::to_string(syntactic_depth(f));
  if (f.size() <= kPrintLimit) s += ": " + render(f);
  return s;
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::True:
      return kOk;
    case Verdict::False:
      return kFailed;
    case Verdict::Unknown:
      return kUndecided;
  }
  return kUndecided;
}

struct Options {
  bool term = false;
  std::uint64_t witness_bound = 64;
  std::uint64_t node_budget = 1'000'000;
  std::uint64_t window = 0;
  std::uint64_t eta_b = 1;
  std::string eta_x;
  std::string alphas_file, betas_file;
  bool naive = false;
  std::uint64_t exhaustive = 4;
  std::string type_file;
  std::uint64_t ge_type = 32;
  bool non_monotone = false;
  std::uint64_t domain_bound = 64;
  std::uint64_t check_bound = kDefaultCheckBound;
  std::uint64_t levels = 4;
  std::vector<std::uint64_t> a_seq;
  std::vector<std::uint64_t> b_seq;
  std::uint64_t c = 0;
  std::uint64_t d = 4;
  std::string path;
  std::uint64_t sat_witness = 3;
  std::uint64_t instance_bound = 16;
  std::string terms_file;
  std::uint64_t depth_cut = 0;
  std::string code_cut;
};

std::unique_ptr<TruthOracle> make_oracle(const Options& o, AtomTable overrides = {}) {
  if (o.window > 0) return std::make_unique<WindowOracle>(o.window, 50'000'000, std::move(overrides));
  return std::make_unique<StandardModelOracle>(Budget{o.witness_bound, o.node_budget});
}

TypeSpec type_from(const Options& o) {
  TypeSpec p = o.type_file.empty() ? ge_type(o.ge_type) : TypeSpec{formula_lines(read_file(o.type_file)), true};
  p.monotone = !o.non_monotone;
  return p;
}

// eta_{a_k} defines {b_k} on the window.
AtomTable eta_overrides(const Options& o) {
  if (o.a_seq.size() != o.b_seq.size()) throw InvalidParameter("--a and --b need equal lengths");
  AtomTable t;
  for (std::size_t k = 0; k < o.a_seq.size(); ++k) {
    for (std::uint64_t x = 0; x <= o.window; ++x) {
      auto [it, fresh] = t.emplace(close_eta(o.a_seq[k], x), x == o.b_seq[k]);
      if (!fresh && it->second != (x == o.b_seq[k])) throw InvalidParameter("--a repeats an index with different b");
    }
  }
  return t;
}

std::vector<Natural> naturals(const std::vector<std::uint64_t>& xs) { return {xs.begin(), xs.end()}; }

int cmd_parse(const Options& o, std::istream& in, std::ostream& out, bool verbose) {
  const std::string text = slurp(in);
  if (o.term) {
    Term t = parse_term(text);
    out << render(t) << "\n";
    if (verbose && t.closed()) out << "value " << t.value() << "\n";
    return kOk;
  }
  Formula f = parse_formula(text);
  out << render(f) << "\n";
  if (verbose) {
    out << "free {";
    for (std::size_t i = 0; i < f.free_vars().size(); ++i) out << (i ? ", " : "") << "v" << f.free_vars()[i];
    out << "}\ndepth " << syntactic_depth(f) << "\n";
  }
  return kOk;
}

int cmd_encode(const Options& o, std::istream& in, std::ostream& out) {
  const std::string text = slurp(in);
  out << (o.term ? encode_term(parse_term(text)) : encode_formula(parse_formula(text))) << "\n";
  return kOk;
}

int cmd_decode(const Options& o, std::istream& in, std::ostream& out) {
  Natural c = parse_natural(trimmed(slurp(in)));
  out << (o.term ? render(decode_term(c)) : render(decode_formula(c))) << "\n";
  return kOk;
}

int cmd_eval(const Options& o, std::istream& in, std::ostream& out) {
  Formula s = parse_formula(slurp(in));
  Verdict v = make_oracle(o)->judge(s);
  out << to_string(v) << "\n";
  return verdict_exit(v);
}

int cmd_eta(const Options& o, std::ostream& out) {
  Formula f = o.eta_x.empty() ? build_eta(o.eta_b) : close_eta(o.eta_b, parse_natural(o.eta_x));
  out << render(f) << "\n" << "depth " << syntactic_depth(f) << "\n";
  return kOk;
}

int cmd_stop_build(const Options& o, std::ostream& out) {
  auto alphas = formula_lines(read_file(o.alphas_file));
  auto betas = formula_lines(read_file(o.betas_file));
  Formula f = o.naive ? build_naive_disjunction(alphas, betas) : build_stop_disjunction(make_spec(alphas, betas));
  out << render(f) << "\n";
  return kOk;
}

int cmd_stop_verify(const Options& o, std::ostream& out) {
  bool ok = true;
  for (std::uint64_t c = 0; c <= o.exhaustive; ++c) {
    ExhaustiveSweep s = sweep_truth_tables(c);
    out << "c=" << c << " some-alpha-true " << s.with_true_alpha.passed << "/" << s.with_true_alpha.cases
        << " all-alpha-false " << s.all_alpha_false.passed << "/" << s.all_alpha_false.cases << "\n";
    ok = ok && s.with_true_alpha.ok() && s.all_alpha_false.ok();
  }
  out << (ok ? "pass" : "FAIL") << "\n";
  return ok ? kOk : kFailed;
}

int cmd_rank(const std::string& kind, const Options& o, std::istream& in, std::ostream& out) {
  Formula phi = parse_formula(slurp(in));
  Rank r = Rank::minus_infinity();
  if (kind == "p") {
    r = p_rank(phi, type_from(o), *make_oracle(o), o.domain_bound);
  } else if (kind == "utb") {
    r = utb_rank(phi, *make_oracle(o), o.check_bound, o.levels);
  } else {
    r = ext_rank(phi, naturals(o.b_seq), *make_oracle(o, eta_overrides(o)), o.domain_bound);
  }
  out << to_string(r) << "\n";
  return kOk;
}

int print_trajectory(const std::vector<Formula>& gammas, const std::vector<Rank>& ranks, std::ostream& out) {
  for (std::size_t j = 0; j < gammas.size(); ++j) {
    out << "gamma_" << j << " rank " << to_string(ranks[j]) << " " << summary(gammas[j]) << "\n";
  }
  TrajectoryClass c = check_rank_trajectory(ranks);
  out << to_string(c) << "\n";
  return c.kind == TrajectoryClass::Kind::Violation ? kFailed : kOk;
}

int cmd_gamma(const std::string& kind, const Options& o, std::ostream& out) {
  std::vector<Formula> gammas;
  std::vector<Rank> ranks;
  if (kind == "p") {
    TypeSpec p = type_from(o);
    auto oracle = make_oracle(o);
    gammas = gamma_sequence_p(p, o.d);
    for (const auto& g : gammas) ranks.push_back(p_rank(g, p, *oracle, o.domain_bound));
  } else {
    auto oracle = make_oracle(o, eta_overrides(o));
    gammas = gamma_sequence_ext(o.a_seq, o.c, o.d + 1);
    for (const auto& g : gammas) ranks.push_back(ext_rank(g, naturals(o.b_seq), *oracle, o.domain_bound));
  }
  return print_trajectory(gammas, ranks, out);
}

int cmd_satbuild(const Options& o, std::ostream& out, std::ostream& err) {
  ConstraintSet g = parse_constraints(read_file(o.path));
  g.witness_bound = o.sat_witness;
  SatAssignment s = [&] {
    try {
      return build_satisfaction(g);
    } catch (const InconsistentConstraints& e) {
      err << "inconsistent: " << e.what() << "\n";
      throw;
    }
  }();
  ThetaReport r = verify_theta_fragment(s, g);
  out << format_assignment(s) << format_theta_report(r);
  return r.clean() ? kOk : kFailed;
}

int cmd_check_ct(const Options& o, std::ostream& out) {
  auto fragment = formula_lines(read_file(o.path));
  std::vector<GoedelCode> seqs;
  if (!o.terms_file.empty()) {
    std::istringstream in(read_file(o.terms_file));
    std::string tok;
    while (in >> tok) seqs.push_back(parse_natural(tok));
  }
  auto oracle = make_oracle(o);
  CtOptions opt{o.instance_bound};
  CtReport r;
  if (o.depth_cut > 0) {
    const std::uint64_t cut = o.depth_cut;
    r = check_ct_restricted(*oracle, DepthCut{[cut](std::uint64_t d) { return d <= cut; }}, fragment, seqs, opt);
  } else if (!o.code_cut.empty()) {
    r = check_ct_restricted(*oracle, CodeCut{parse_natural(o.code_cut)}, fragment, seqs, opt);
  } else {
    r = check_ct_axioms(*oracle, fragment, seqs, opt);
  }
  out << format_report(r);
  return r.clean() ? kOk : kFailed;
}

void oracle_flags(CLI::App* c, Options& o) {
  c->add_option("--witness-bound", o.witness_bound, "existential search bound")->check(CLI::PositiveNumber);
  c->add_option("--node-budget", o.node_budget, "evaluation steps per sentence")->check(CLI::PositiveNumber);
  c->add_option("--window", o.window, "quantify over [0, N] instead of searching the naturals");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"compositional truth lab", "ctlab"};
  app.require_subcommand(1);
  Options o;

  auto* parse = app.add_subcommand("parse", "parse stdin and print it with its free variables and depth");
  auto* render_cmd = app.add_subcommand("render", "parse stdin and print the kernel rendering");
  auto* encode = app.add_subcommand("encode", "print the code of the formula on stdin");
  auto* decode = app.add_subcommand("decode", "print the formula coded by the number on stdin");
  for (auto* c : {parse, render_cmd, encode, decode}) c->add_flag("--term", o.term, "read a term");

  auto* eval = app.add_subcommand("eval", "judge the sentence on stdin; exit 0/1/2 for true/false/unknown");
  oracle_flags(eval, o);

  auto* eta = app.add_subcommand("eta", "print eta_b");
  eta->add_option("--b", o.eta_b, "b >= 1")->required();
  eta->add_option("--x", o.eta_x, "close with v0 := x and v1 := 0");

  auto* stop = app.add_subcommand("stopdisj", "disjunctions with a stopping condition");
  stop->require_subcommand(1);
  auto* stop_build = stop->add_subcommand("build", "build from alpha and beta files");
  stop_build->add_option("--alphas", o.alphas_file)->required()->check(CLI::ExistingFile);
  stop_build->add_option("--betas", o.betas_file)->required()->check(CLI::ExistingFile);
  stop_build->add_flag("--naive", o.naive, "left-grouped disjunction instead");
  auto* stop_verify = stop->add_subcommand("verify", "truth-table sweep");
  stop_verify->add_option("--exhaustive", o.exhaustive, "largest c")->check(CLI::Range(0, 12));

  auto* rank = app.add_subcommand("rank", "rank of the formula on stdin");
  rank->require_subcommand(1);
  auto* gamma = app.add_subcommand("gamma", "gamma sequence and its rank trajectory");
  gamma->require_subcommand(1);
  std::vector<std::pair<std::string, CLI::App*>> rank_cmds, gamma_cmds;
  for (std::string kind : {"p", "utb", "ext"}) {
    auto* r = rank->add_subcommand(kind);
    rank_cmds.emplace_back(kind, r);
    CLI::App* g = kind == "utb" ? nullptr : gamma->add_subcommand(kind);
    if (g) gamma_cmds.emplace_back(kind, g);
    for (auto* c : {r, g}) {
      if (!c) continue;
      oracle_flags(c, o);
      c->add_option("--domain-bound", o.domain_bound, "largest x examined");
      if (kind == "p") {
        c->add_option("--type-file", o.type_file, "one formula per line")->check(CLI::ExistingFile);
        c->add_option("--ge-type", o.ge_type, "use phi_i = (i <= v0), i < N");
        c->add_flag("--non-monotone", o.non_monotone, "betas are conjunctions of the type prefix");
      }
      if (kind == "ext") {
        c->add_option("--a", o.a_seq, "eta indices")->delimiter(',')->required();
        c->add_option("--b", o.b_seq, "b_k, the element eta_{a_k} defines")->delimiter(',')->required();
      }
      if (kind == "utb") {
        c->add_option("--check-bound", o.check_bound, "largest sequence code");
        c->add_option("--levels", o.levels, "largest level checked");
      }
    }
    if (g) {
      g->add_option("--d", o.d, "last gamma index");
      if (kind == "ext") g->add_option("--c", o.c, "last disjunct index");
    }
  }

  auto* sat = app.add_subcommand("satbuild", "build and verify a satisfaction class from a constraint file");
  sat->add_option("file", o.path)->required()->check(CLI::ExistingFile);
  sat->add_option("--witness-bound", o.sat_witness, "valuation and witness range");

  auto* ct = app.add_subcommand("check-ct", "check the compositional axioms on a fragment file");
  ct->add_option("file", o.path)->required()->check(CLI::ExistingFile);
  oracle_flags(ct, o);
  ct->add_option("--terms", o.terms_file, "whitespace-separated closed-term sequence codes")
      ->check(CLI::ExistingFile);
  ct->add_option("--instance-bound", o.instance_bound, "existential instances checked");
  auto* depth = ct->add_option("--depth-cut", o.depth_cut, "gate clauses on depth <= N");
  ct->add_option("--code-cut", o.code_cut, "gate clauses on code <= C")->excludes(depth);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*parse) return cmd_parse(o, in, out, true);
    if (*render_cmd) return cmd_parse(o, in, out, false);
    if (*encode) return cmd_encode(o, in, out);
    if (*decode) return cmd_decode(o, in, out);
    if (*eval) return cmd_eval(o, in, out);
    if (*eta) return cmd_eta(o, out);
    if (*stop_build) return cmd_stop_build(o, out);
    if (*stop_verify) return cmd_stop_verify(o, out);
    for (const auto& [kind, c] : rank_cmds) {
      if (*c) return cmd_rank(kind, o, in, out);
    }
    for (const auto& [kind, c] : gamma_cmds) {
      if (*c) return cmd_gamma(kind, o, out);
    }
    if (*sat) return cmd_satbuild(o, out, err);
    if (*ct) return cmd_check_ct(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
  err << "no command\n";
  return kUsage;
}

}  // namespace ctlab::cli
