#include "simprox/cli.hpp"

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "simprox/cf_construction.hpp"
#include "simprox/digit_construction.hpp"
#include "simprox/errors.hpp"
#include "simprox/json_io.hpp"
#include "simprox/lattice_checks.hpp"
#include "simprox/powers_core.hpp"
#include "simprox/verify_report.hpp"

namespace simprox {

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 64;

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::Pass:
    case Verdict::Warning:
      return kExitPass;
    case Verdict::Fail:
      return kExitFail;
    default:
      return kExitInconclusive;
  }
}

int auto_jobs(int jobs) {
  if (jobs > 0) return jobs;
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

Int ipow(const Int& b, long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

long parse_index(const std::string& s, const char* what) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(s, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != s.size())
    throw std::invalid_argument(std::string(what) + ": bad integer \"" + s + "\"");
  return v;
}

// "2:10,4:62" -> {2: 10, 4: 62}
std::map<long, long> parse_overrides(const std::string& s) {
  std::map<long, long> out;
  if (s.empty()) return out;
  for (const std::string& item : split(s, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("--branch entries look like index:value");
    out[parse_index(item.substr(0, colon), "--branch index")] =
        parse_index(item.substr(colon + 1), "--branch value");
  }
  return out;
}

// "14,16" -> {14: 1, 16: 1}
std::map<long, int> parse_bumps(const std::string& s) {
  std::map<long, int> out;
  if (s.empty()) return out;
  for (const std::string& item : split(s, ','))
    out[parse_index(item, "--bump index")] = 1;
  return out;
}

std::pair<Rational, Rational> parse_interval(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("--interval wants lo,hi with rational endpoints");
  return {Rational::parse(s.substr(0, comma)), Rational::parse(s.substr(comma + 1))};
}

ApproxFunction make_psi(const std::string& spec,
                        const std::vector<std::string>& declares) {
  ApproxFunction psi = ApproxFunction::parse(spec);
  for (const std::string& d : declares) psi.declare(PropertyId::parse(d));
  return psi;
}

void warn_if_hurwitz_binds(const ApproxFunction& psi, long k) {
  if (k != 1) return;
  if (hurwitz_guard(psi) == Verdict::Warning)
    std::cerr << "warning: psi(x)*x stays above 1/sqrt(5) on [2, 1000]; the "
                 "strict lower window must fail at infinitely many points\n";
}

// stdout carries the report; --report duplicates it to a file
void emit_report(const VerificationReport& rep, const std::string& path) {
  if (!path.empty()) write_report_json(rep, path);
  std::cout << report_to_json(rep);
  std::cerr << "verdict: " << to_string(rep.verdict()) << '\n';
}

// Everything the flags can set, in one place.
struct Options {
  std::string psi, interval, out, in, report, format, style, zeta;
  std::string bump, branch, delta = "zero";
  std::vector<std::string> declares;
  long k = 1, terms = 0, depth = 0, base = 3, e1 = 4, blocks = 0, a1 = 0;
  long amp = 1, nlo = 1, nhi = 0, zmax = 0, xmax = 0, zfloor = 1, Q = 0;
  std::string c, eps, Qrat;
  int jobs = 0;
  bool simple = false;
};

int do_construct_cf(const Options& o) {
  ApproxFunction psi = make_psi(o.psi, o.declares);
  auto [lo, hi] = parse_interval(o.interval);
  if (o.k >= 2) {
    if (!o.bump.empty())
      throw std::invalid_argument("--bump applies to the k = 1 recursion only");
    TheorOutcome out = theor_construct(psi, o.k, lo, hi, TheoremClaim::First,
                                       std::nullopt, o.terms);
    write_cf_json(out.zeta, o.out, out.notes);
    std::cerr << "cf with " << out.zeta.length() << " quotients -> " << o.out
              << '\n';
    return kExitPass;
  }
  BranchPlan plan;
  plan.prefix = target_interval(lo, hi);
  plan.bit_schedule = parse_bumps(o.bump);
  JarnikResult r = jarnik_quotients(psi, plan, o.terms);
  std::string prov = "jarnik: psi = " + psi.spec_string() + ", interval (" +
                     lo.str() + ", " + hi.str() + "), terms " +
                     std::to_string(o.terms);
  if (!o.bump.empty()) prov += ", bumps " + o.bump;
  write_cf_json(r.cf, o.out, prov);
  std::cerr << "cf with " << r.cf.length() << " quotients -> " << o.out << '\n';
  return kExitPass;
}

int do_construct_digits(const Options& o) {
  ApproxFunction psi = make_psi(o.psi, o.declares);
  DeltaSchedule delta = DeltaSchedule::parse(o.delta);
  if (o.simple) {
    if (o.a1 < 1)
      throw std::invalid_argument("--simple needs --a1 >= 1");
    SparseConstruction s = sparse_sequence(psi, o.k, o.base, o.a1, o.blocks,
                                           parse_overrides(o.branch), delta);
    write_digits_json(s.number, o.out, s.provenance);
    std::cerr << "digits at " << s.number.positions().size()
              << " positions -> " << o.out << '\n';
    return kExitPass;
  }
  BlockSpec spec;
  spec.b = o.base;
  spec.A = o.amp;
  spec.k = o.k;
  spec.e1 = o.e1;
  spec.delta = delta;
  BlockConstruction bc = block_sequence(psi, spec, o.blocks);
  write_digits_json(bc.number, o.out, bc.provenance);
  std::cerr << "digits with " << bc.number.blocks().size() << " blocks, "
            << bc.number.positions().size() << " positions -> " << o.out
            << '\n';
  return kExitPass;
}

int do_transform(const Options& o) {
  ApproxFunction t = make_psi(o.psi, o.declares).transformed_j(o.k);
  std::cout << t.spec_string() << '\n';
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot open " + o.out + " for writing");
    f << t.spec_string() << '\n';
  }
  return kExitPass;
}

int do_expand(const Options& o) {
  LoadedNumber n = read_number_json(o.in);
  std::string format = o.format;
  if (format == "auto") format = n.digits ? "base-b-string" : "quotients";
  std::string text;
  if (format == "base-b-string") {
    if (!n.digits)
      throw std::invalid_argument("base-b-string expansion needs a digits file");
    long depth = o.depth > 0 ? o.depth : n.digits->last_position();
    text = n.digits->digit_string(depth);
  } else if (format == "quotients") {
    if (!n.cf)
      throw std::invalid_argument("quotient expansion needs a cf file");
    long count = n.cf->length();
    if (o.depth > 0 && o.depth < count) count = o.depth;
    std::string s = "[" + n.cf->b0().get_str();
    for (long i = 0; i < count; ++i)
      s += (i == 0 ? "; " : ", ") + n.cf->quotients()[i].get_str();
    text = s + "]";
  } else {
    throw std::invalid_argument("--format is base-b-string or quotients");
  }
  std::cout << text << '\n';
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot open " + o.out + " for writing");
    f << text << '\n';
  }
  return kExitPass;
}

int do_verify_schatz(const Options& o) {
  LoadedNumber n = read_number_json(o.in);
  if (!n.cf)
    throw std::invalid_argument("schatz verification wants a cf file");
  ApproxFunction psi = make_psi(o.psi, o.declares);
  warn_if_hurwitz_binds(psi, 1);
  long nhi = o.nhi > 0 ? o.nhi : n.cf->length() - 1;
  VerificationReport rep =
      verify_schatz(*n.cf, psi, Rational::parse(o.c), o.nlo, nhi);
  emit_report(rep, o.report);
  return verdict_exit(rep.verdict());
}

int do_verify_window(const Options& o) {
  LoadedNumber n = read_number_json(o.in);
  ApproxFunction psi = make_psi(o.psi, o.declares);
  warn_if_hurwitz_binds(psi, o.k);

  // special points follow the construction: convergent denominators to the
  // k-th power for cf subjects, b^(k f_n) at block ends for digit subjects
  std::vector<std::pair<long, Int>> specials;
  WindowStyle style = WindowStyle::StrictBoth;
  if (n.cf) {
    long nhi = o.nhi > 0 ? o.nhi : n.cf->length() - 1;
    nhi = std::min(nhi, n.cf->length() - 1);
    for (long i = o.nlo; i <= nhi; ++i)
      specials.emplace_back(i, ipow(n.cf->q(i), o.k));
  } else {
    style = WindowStyle::LowerNonStrict;
    const auto& blocks = n.digits->blocks();
    long count = static_cast<long>(blocks.size());
    long nhi = o.nhi > 0 ? o.nhi : count - 1;
    nhi = std::min(nhi, count - 1);
    for (long i = o.nlo; i <= nhi; ++i)
      specials.emplace_back(i, ipow(Int(n.digits->base()),
                                    o.k * blocks[i - 1].second));
  }
  if (o.style == "strict") style = WindowStyle::StrictBoth;
  else if (o.style == "lower-eq") style = WindowStyle::LowerNonStrict;
  else if (o.style != "auto")
    throw std::invalid_argument("--style is strict, lower-eq, or auto");

  VerificationReport rep =
      window_check(n.real(), psi, o.k, Rational::parse(o.c), style, specials,
                   o.zmax, o.zfloor, auto_jobs(o.jobs));
  if (n.digits) rep.base = n.digits->base();
  emit_report(rep, o.report);
  return verdict_exit(rep.verdict());
}

int do_verify_dieprop(const Options& o) {
  LoadedNumber n = read_number_json(o.in);
  if (!n.digits)
    throw std::invalid_argument("dieprop verification wants a digits file");
  VerificationReport rep =
      dieprop_check(*n.digits, Rational::parse(o.eps), o.xmax);
  emit_report(rep, o.report);
  return verdict_exit(rep.verdict());
}

int do_verify_klar(const Options& o) {
  LoadedNumber n = read_number_json(o.in);
  if (!n.digits)
    throw std::invalid_argument("klar verification wants a digits file");
  long count = static_cast<long>(n.digits->blocks().size());
  long nhi = o.nhi > 0 ? o.nhi : count - 1;
  VerificationReport rep =
      klar_check(*n.digits, Rational::parse(o.eps), o.nlo, nhi);
  emit_report(rep, o.report);
  return verdict_exit(rep.verdict());
}

// --zeta a/b or --in file.json; the caller keeps both alive
const RealNumber& subject(const Options& o, LoadedNumber& loaded,
                          std::unique_ptr<RationalReal>& owned) {
  if (!o.zeta.empty()) {
    owned = std::make_unique<RationalReal>(Rational::parse(o.zeta));
    return *owned;
  }
  if (!o.in.empty()) {
    loaded = read_number_json(o.in);
    return loaded.real();
  }
  throw std::invalid_argument("give the subject as --zeta a/b or --in file.json");
}

int do_oracle_sweep(const Options& o) {
  LoadedNumber loaded;
  std::unique_ptr<RationalReal> owned;
  const RealNumber& z = subject(o, loaded, owned);
  std::vector<SimError> rows = error_sweep(z, o.k, o.zmax, auto_jobs(o.jobs));
  write_sweep_csv(rows, o.out);
  long flagged = 0;
  for (const SimError& r : rows)
    if (!r.decided) ++flagged;
  std::cerr << rows.size() << " rows -> " << o.out;
  if (flagged > 0) std::cerr << " (" << flagged << " undecided)";
  std::cerr << '\n';
  return kExitPass;
}

int do_oracle_dirichlet(const Options& o) {
  LoadedNumber loaded;
  std::unique_ptr<RationalReal> owned;
  const RealNumber& z = subject(o, loaded, owned);
  std::optional<DirichletWitness> w = dirichlet_witness(z, o.k, o.Q);
  if (!w) {
    std::cout << "undecided\n";
    return kExitInconclusive;
  }
  std::cout << "q = " << w->q.get_str() << '\n';
  std::cout << "err in " << w->err.str() << '\n';
  std::cout << "nearest =";
  for (const Int& m : w->nearest) std::cout << ' ' << m.get_str();
  std::cout << '\n';
  if (w->undecided_skipped > 0)
    std::cerr << w->undecided_skipped << " larger candidates stayed undecided\n";
  return kExitPass;
}

int do_oracle_lindep(const Options& o) {
  LoadedNumber loaded;
  std::unique_ptr<RationalReal> owned;
  const RealNumber& z = subject(o, loaded, owned);
  TwoSolutionWitness w = lindep_solutions(z, Rational::parse(o.Qrat));
  for (const HalfWindowSolution& s : w.solutions)
    std::cout << "m = " << s.m.get_str() << ", n = " << s.n.get_str() << '\n';
  std::cout << "solutions: " << w.solutions.size() << '\n';
  std::cout << "pairwise dependent: " << (w.pairwise_dependent ? "yes" : "no")
            << '\n';
  if (w.counterexample) {
    const auto& [a, b] = *w.counterexample;
    std::cout << "independent pair: (" << a.m.get_str() << ", " << a.n.get_str()
              << ") and (" << b.m.get_str() << ", " << b.n.get_str() << ")\n";
  }
  if (w.inconclusive > 0)
    std::cout << "undecided memberships: " << w.inconclusive << '\n';
  if (w.passed()) return kExitPass;
  return w.pairwise_dependent ? kExitInconclusive : kExitFail;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  Options o;
  CLI::App app{"rational approximation workbench for power vectors"};
  app.require_subcommand(1);

  auto add_declares = [&](CLI::App* sub) {
    sub->add_option("--declare", o.declares,
                    "declare a property: A1, A2:d, A3, Aprime:t, B1, B2, A0:k, B0:k");
  };

  CLI::App* construct = app.add_subcommand("construct", "build a number");
  construct->require_subcommand(1);
  CLI::App* c_cf = construct->add_subcommand("cf", "continued fraction growth");
  c_cf->add_option("--psi", o.psi, "target function, e.g. pow:1,2")->required();
  c_cf->add_option("--interval", o.interval, "lo,hi endpoints")->required();
  c_cf->add_option("--terms", o.terms, "quotients after b0")->required();
  c_cf->add_option("--k", o.k, "power count; k >= 2 lifts the function first");
  c_cf->add_option("--bump", o.bump, "comma list of quotient indices to raise by 1");
  c_cf->add_option("--out", o.out, "output json")->required();
  add_declares(c_cf);

  CLI::App* c_dg = construct->add_subcommand("digits", "digit block growth");
  c_dg->add_option("--psi", o.psi, "target function")->required();
  c_dg->add_option("--k", o.k, "power count")->required();
  c_dg->add_option("--base", o.base, "digit base");
  c_dg->add_option("--blocks", o.blocks, "construction steps")->required();
  c_dg->add_option("--delta", o.delta, "damping: zero|harmonic|invn|const:r");
  c_dg->add_option("--out", o.out, "output json")->required();
  auto* e1o = c_dg->add_option("--e1", o.e1, "first block start");
  auto* ampo = c_dg->add_option("--amp", o.amp, "endpoint digit value");
  auto* simpleo = c_dg->add_flag("--simple", o.simple, "one digit per step");
  auto* a1o = c_dg->add_option("--a1", o.a1, "first exponent (with --simple)");
  auto* brancho =
      c_dg->add_option("--branch", o.branch, "overrides index:value,... (with --simple)");
  a1o->needs(simpleo);
  brancho->needs(simpleo);
  e1o->excludes(simpleo);
  ampo->excludes(simpleo);
  add_declares(c_dg);

  CLI::App* transform = app.add_subcommand("transform", "component function of a lift");
  transform->add_option("--psi", o.psi, "lift spec, e.g. pow:1,5")->required();
  transform->add_option("--j", o.k, "component index")->required();
  transform->add_option("--out", o.out, "also write the spec here");
  add_declares(transform);

  CLI::App* expand = app.add_subcommand("expand", "print a stored number");
  expand->add_option("--in", o.in, "number json")->required();
  expand->add_option("--depth", o.depth, "positions or quotients to show");
  expand->add_option("--format", o.format, "base-b-string | quotients")
      ->default_val("auto");
  expand->add_option("--out", o.out, "also write the expansion here");

  CLI::App* verify = app.add_subcommand("verify", "run a certification");
  verify->require_subcommand(1);
  CLI::App* v_sz = verify->add_subcommand("schatz", "per-convergent window");
  v_sz->add_option("--in", o.in, "cf json")->required();
  v_sz->add_option("--psi", o.psi, "window function")->required();
  v_sz->add_option("--c", o.c, "lower factor in (0,1)")->required();
  v_sz->add_option("--nlo", o.nlo, "first index");
  v_sz->add_option("--nhi", o.nhi, "last index (default: all computed)");
  v_sz->add_option("--report", o.report, "write the report here too");
  add_declares(v_sz);

  CLI::App* v_wd = verify->add_subcommand("window", "two-sided window + sweep");
  v_wd->add_option("--in", o.in, "number json")->required();
  v_wd->add_option("--psi", o.psi, "window function")->required();
  v_wd->add_option("--k", o.k, "power count")->required();
  v_wd->add_option("--c", o.c, "lower factor in (0,1)")->required();
  v_wd->add_option("--zmax", o.zmax, "sweep upper end")->required();
  v_wd->add_option("--zfloor", o.zfloor, "sweep lower end")->default_val(1);
  v_wd->add_option("--nlo", o.nlo, "first special index");
  v_wd->add_option("--nhi", o.nhi, "last special index (default: all usable)");
  v_wd->add_option("--style", o.style, "strict | lower-eq | auto")
      ->default_val("auto");
  v_wd->add_option("--jobs", o.jobs, "sweep workers (default: all cores)");
  v_wd->add_option("--report", o.report, "write the report here too");
  add_declares(v_wd);

  CLI::App* v_dp = verify->add_subcommand("dieprop", "good tuples are scale multiples");
  v_dp->add_option("--in", o.in, "digits json")->required();
  v_dp->add_option("--eps", o.eps, "exponent slack > 0")->required();
  v_dp->add_option("--xmax", o.xmax, "scan upper end")->required();
  v_dp->add_option("--report", o.report, "write the report here too");

  CLI::App* v_kl = verify->add_subcommand("klar", "block-end decay exponent");
  v_kl->add_option("--in", o.in, "digits json")->required();
  v_kl->add_option("--eps", o.eps, "exponent slack > 0")->required();
  v_kl->add_option("--nlo", o.nlo, "first index");
  v_kl->add_option("--nhi", o.nhi, "last index (default: all certifiable)");
  v_kl->add_option("--report", o.report, "write the report here too");

  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive ground truth");
  oracle->require_subcommand(1);
  CLI::App* o_sw = oracle->add_subcommand("sweep", "per-z error table");
  o_sw->add_option("--zeta", o.zeta, "rational subject a/b");
  o_sw->add_option("--in", o.in, "number json subject");
  o_sw->add_option("--k", o.k, "power count")->required();
  o_sw->add_option("--zmax", o.zmax, "scan upper end")->required();
  o_sw->add_option("--jobs", o.jobs, "workers (default: all cores)");
  o_sw->add_option("--out", o.out, "output csv")->required();

  CLI::App* o_dw = oracle->add_subcommand("dirichlet", "largest good q up to Q");
  o_dw->add_option("--zeta", o.zeta, "rational subject a/b");
  o_dw->add_option("--in", o.in, "number json subject");
  o_dw->add_option("--k", o.k, "power count")->required();
  o_dw->add_option("--Q", o.Q, "search bound")->required();

  CLI::App* o_ld = oracle->add_subcommand("lindep", "half-window solution structure");
  o_ld->add_option("--zeta", o.zeta, "rational subject a/b");
  o_ld->add_option("--in", o.in, "number json subject");
  o_ld->add_option("--Q", o.Qrat, "height bound, rational")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (c_cf->parsed()) return do_construct_cf(o);
    if (c_dg->parsed()) return do_construct_digits(o);
    if (transform->parsed()) return do_transform(o);
    if (expand->parsed()) return do_expand(o);
    if (v_sz->parsed()) return do_verify_schatz(o);
    if (v_wd->parsed()) return do_verify_window(o);
    if (v_dp->parsed()) return do_verify_dieprop(o);
    if (v_kl->parsed()) return do_verify_klar(o);
    if (o_sw->parsed()) return do_oracle_sweep(o);
    if (o_dw->parsed()) return do_oracle_dirichlet(o);
    if (o_ld->parsed()) return do_oracle_lindep(o);
  } catch (const InconclusiveComparison& e) {
    std::cerr << "inconclusive: " << e.what() << '\n';
    return kExitInconclusive;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  std::cerr << "error: no action\n";
  return kExitUsage;
}

}  // namespace simprox
