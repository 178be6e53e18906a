// dioph: one subcommand per library module.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <new>

#include "commands.hpp"
#include "dioph/error.hpp"

#ifndef DIOPH_VERSION
#define DIOPH_VERSION "unknown"
#endif

namespace {

using namespace dioph;
using namespace dioph::cli;

struct Common {
  std::string format = "csv";
  std::string output;
  std::string table;
  std::string instance;
};

void add_output(CLI::App* sub, Common& c, bool format_flag_is_out = true) {
  if (format_flag_is_out) {
    sub->add_option("--out", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  } else {
    sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"csv", "json"}));
  }
  sub->add_option("-o,--output", c.output, "Write the report here instead of stdout");
}

void add_table(CLI::App* sub, Common& c) {
  sub->add_option("--table", c.table, "Prime table from `dioph sieve` (built on the fly if absent)");
}

int emit(const Report& r, const Common& c) {
  const Format f = parse_format(c.format);
  if (c.output.empty()) {
    write(std::cout, r, f);
    std::cout.flush();
    if (!std::cout) throw ResourceError("failed writing to stdout");
    return 0;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw ResourceError("cannot open " + c.output + " for writing");
  write(out, r, f);
  out.flush();
  if (!out) throw ResourceError("failed writing " + c.output);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prime exponential sums, mean squares and a ternary Diophantine search"};
  app.set_version_flag("--version", DIOPH_VERSION);
  app.require_subcommand(1);

  RunConfig cfg;
  Common common;
  app.add_option("--threads", cfg.threads, "Worker threads")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();

  SieveArgs sieve;
  auto* s_sieve = app.add_subcommand("sieve", "Build and save a prime table");
  s_sieve->add_option("--limit", sieve.limit, "Largest number sieved")->required();
  s_sieve->add_option("--out", sieve.out, "Table file to write")->required();
  add_output(s_sieve, common, false);

  ExpsumArgs expsum;
  auto* s_exp = app.add_subcommand("expsum", "Exponential sums S, U or the integral T on a grid");
  add_table(s_exp, common);
  s_exp->add_option("--X", expsum.X, "Window scale")->required();
  s_exp->add_option("--k", expsum.k, "Exponent")->required();
  s_exp->add_option("--delta", expsum.delta, "Lower edge constant for T")->capture_default_str();
  s_exp->add_option("--alpha-grid", expsum.alpha_grid, "lo:hi:n")->required();
  s_exp->add_option("--which", expsum.which, "S, U or T")
      ->check(CLI::IsMember({"S", "U", "T"}))
      ->capture_default_str();
  s_exp->add_option("--tol", expsum.tol, "Absolute tolerance for T");
  add_output(s_exp, common);

  MeansquareArgs ms;
  auto* s_ms = app.add_subcommand("meansquare", "Selberg-type mean squares and the L2 difference");
  // --h is the increment here, so help is long-form only.
  s_ms->set_help_flag("--help", "Print this help message and exit");
  add_table(s_ms, common);
  s_ms->add_option("--X", ms.X, "Lower end of [X, 2X]")->required();
  s_ms->add_option("--k", ms.k, "Exponent")->required();
  auto* o_h = s_ms->add_option("--h", ms.h, "Additive increment");
  auto* o_d = s_ms->add_option("--delta", ms.delta, "Relative increment");
  auto* o_y = s_ms->add_option("--Y", ms.Y, "Half-width of the L2 window");
  o_h->excludes(o_d)->excludes(o_y);
  o_d->excludes(o_y);
  s_ms->add_flag("--psi", ms.psi, "Use psi instead of theta");
  s_ms->add_flag("--rh", ms.rh, "Comparator under the Riemann hypothesis");
  s_ms->add_flag("--discrepancy", ms.discrepancy, "The psi minus theta integral");
  s_ms->add_option("--method", ms.method, "For --Y: auto, pairwise or grid")
      ->check(CLI::IsMember({"auto", "pairwise", "grid"}))
      ->capture_default_str();
  s_ms->add_option("--C", ms.C, "Density constant of the unconditional comparator")
      ->capture_default_str();
  add_output(s_ms, common);

  ApproxArgs approx;
  auto* s_ap = app.add_subcommand("approx", "Continued-fraction convergents of an exact expression");
  s_ap->add_option("--lambda-ratio", approx.lambda_ratio, "e.g. \"sqrt(2)\" or \"(1+sqrt(5))/2\"")
      ->required();
  s_ap->add_option("--terms", approx.terms, "Number of convergents")->capture_default_str();
  s_ap->add_option("--Q", approx.Q, "Dirichlet bound: report the single best a/q with q <= Q");
  s_ap->add_option("--bits", approx.bits, "Enclosure precision for irrationals")
      ->capture_default_str();
  add_output(s_ap, common);

  ArcsArgs arcs;
  auto* s_arcs = app.add_subcommand("arcs", "Major, minor and trivial arc quantities");
  s_arcs->add_option("--instance", common.instance, "Instance config file")->required();
  add_table(s_arcs, common);
  s_arcs->add_option("--X", arcs.X, "Scale")->required();
  s_arcs->add_option("--piece", arcs.piece, "major, minor, trivial or all")
      ->check(CLI::IsMember({"major", "minor", "trivial", "all"}))
      ->capture_default_str();
  s_arcs->add_option("--eta", arcs.eta, "Kernel width (default from the arc parameters)");
  s_arcs->add_option("--tol", arcs.tol, "Absolute tolerance")->capture_default_str();
  s_arcs->add_option("--points", arcs.points, "Minor-arc sample points")->capture_default_str();
  s_arcs->add_option("--tol-scale", cfg.tol_scale, "Multiplies --tol")->capture_default_str();
  add_output(s_arcs, common);

  SearchArgs search;
  auto* s_search = app.add_subcommand("search", "Prime triples with a small residual");
  s_search->add_option("--instance", common.instance, "Instance config file")->required();
  add_table(s_search, common);
  s_search->add_option("--X", search.X, "Upper end of the windows")->required();
  s_search->add_option("--threshold", search.threshold, "auto or a number")->capture_default_str();
  s_search->add_option("--emit-solutions", search.emit, "Records kept; the count is always full")
      ->capture_default_str();
  s_search->add_flag("--flag-own", search.flag_own, "Check each triple against its own scale");
  add_output(s_search, common);

  ExponentsArgs exps;
  auto* s_exps = app.add_subcommand("exponents", "Exact exponent linear program for one k");
  s_exps->add_option("--k", exps.k, "Exact rational, e.g. 11/10")->required();
  add_output(s_exps, common);

  VerifyArgs verify;
  auto* s_ver = app.add_subcommand("verify-all", "Run the acceptance criteria");
  add_table(s_ver, common);
  s_ver->add_option("--tol-scale", cfg.tol_scale, "Multiplies every tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  s_ver->add_option("--only", verify.only, "Criterion ids to run");
  add_output(s_ver, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::kValidation);
  }

  try {
    if (!common.table.empty()) cfg.table_path = common.table;
    if (!common.instance.empty()) cfg.instance_path = common.instance;
    if (!common.output.empty()) cfg.output_path = common.output;
    cfg.format = parse_format(common.format);

    if (*s_sieve) return emit(run_sieve(sieve, cfg), common);
    if (*s_exp) return emit(run_expsum(expsum, cfg), common);
    if (*s_ms) return emit(run_meansquare(ms, cfg), common);
    if (*s_ap) return emit(run_approx(approx, cfg), common);
    if (*s_arcs) return emit(run_arcs(arcs, cfg), common);
    if (*s_search) return emit(run_search(search, cfg), common);
    if (*s_exps) return emit(run_exponents(exps, cfg), common);
    if (*s_ver) {
      bool passed = false;
      emit(run_verify_all(verify, cfg, passed), common);
      return passed ? 0 : static_cast<int>(ExitCode::kFailure);
    }
  } catch (const TableTooSmall& e) {
    std::cerr << "error: " << e.what() << " (rerun with a table of limit >= "
              << e.required_limit() << ")\n";
    return static_cast<int>(e.code());
  } catch (const ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (best " << e.best_re() << " + " << e.best_im()
              << "i, estimated error " << e.estimated_error() << ")\n";
    return static_cast<int>(e.code());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return static_cast<int>(ExitCode::kResource);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ExitCode::kFailure);
  }
  return static_cast<int>(ExitCode::kFailure);
}
