#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iostream>

#include "acceptance.hpp"
#include "dioph/circle.hpp"
#include "dioph/error.hpp"
#include "dioph/expsums.hpp"
#include "dioph/meansquare.hpp"
#include "dioph/optimizer.hpp"
#include "dioph/rational.hpp"
#include "dioph/search.hpp"
#include "dioph/table_io.hpp"

namespace dioph::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::uint64_t kMinTable = 1000;

std::uint64_t root_limit(double v, double k) {
  return static_cast<std::uint64_t>(std::ceil(std::pow(v, 1.0 / k))) + 2;
}

// Runs fn on the table named in cfg, or on one built here. A built table
// grows once more if fn reports it too small.
template <class Fn>
auto with_table(const RunConfig& cfg, std::uint64_t need, Fn&& fn) {
  if (cfg.table_path) {
    const PrimeTable table = load_table(*cfg.table_path);
    return fn(table);
  }
  std::uint64_t limit = std::max(need, kMinTable);
  for (int attempt = 0;; ++attempt) {
    const PrimeTable table = PrimeTable::build(limit);
    try {
      return fn(table);
    } catch (const TableTooSmall& e) {
      if (attempt >= 2 || e.required_limit() <= limit) throw;
      limit = e.required_limit() + 16;
    }
  }
}

Exec exec_of(const RunConfig& cfg) { return Exec{std::max(1u, cfg.threads)}; }

json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}; }

json result_json(const quad::Result& r) {
  return {{"re", r.value.real()},
          {"im", r.value.imag()},
          {"error", r.error},
          {"evaluations", r.evaluations}};
}

json interval_json(const circle::Interval& i) { return json::array({i.lo, i.hi}); }

// NaN and infinities have no JSON spelling.
void sanitize(json& j) {
  if (j.is_number_float()) {
    if (!std::isfinite(j.get<double>())) j = nullptr;
  } else if (j.is_structured()) {
    for (auto& v : j) sanitize(v);
  }
}

json instance_json(const ProblemInstance& inst) {
  json j{{"lambda1", inst.lambda1}, {"lambda2", inst.lambda2}, {"lambda3", inst.lambda3},
         {"k", inst.k},             {"varpi", inst.varpi},     {"eps", inst.eps},
         {"delta", inst.delta}};
  return j;
}

ProblemInstance load_instance(const RunConfig& cfg) {
  if (!cfg.instance_path) throw DomainError("--instance is required");
  ParsedInstance parsed = parse_config(*cfg.instance_path);
  for (const auto& w : parsed.warnings) std::cerr << "warning: " << w << "\n";
  return parsed.instance;
}

struct Grid {
  double lo, hi;
  std::size_t n;
  double at(std::size_t i) const {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
};

Grid parse_grid(const std::string& s) {
  const auto c1 = s.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : s.find(':', c1 + 1);
  if (c2 == std::string::npos) throw DomainError("--alpha-grid must be lo:hi:n, got '" + s + "'");
  Grid g{};
  try {
    std::size_t used = 0;
    const std::string a = s.substr(0, c1), b = s.substr(c1 + 1, c2 - c1 - 1), c = s.substr(c2 + 1);
    g.lo = std::stod(a, &used);
    if (used != a.size()) throw std::invalid_argument(a);
    g.hi = std::stod(b, &used);
    if (used != b.size()) throw std::invalid_argument(b);
    const long long n = std::stoll(c, &used);
    if (used != c.size() || n < 1) throw std::invalid_argument(c);
    g.n = static_cast<std::size_t>(n);
  } catch (const std::logic_error&) {
    throw DomainError("--alpha-grid must be lo:hi:n with n >= 1, got '" + s + "'");
  }
  if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || g.hi < g.lo) {
    throw DomainError("--alpha-grid needs finite lo <= hi");
  }
  if (g.n > 100'000'000) throw ResourceError("--alpha-grid: too many points");
  return g;
}

BigRational exact_rational(const std::string& s, const char* what) {
  const HiReal v = HiReal::parse(s);
  if (!v.exact()) throw DomainError(std::string(what) + " must be an exact rational, got '" + s + "'");
  return v.lower();
}

json rationals(const optimizer::ClosedForm& f) {
  return {{"inv_a", to_string(f.inv_a)}, {"b", to_string(f.b)}, {"c", to_string(f.c)}};
}

json lp_json(const optimizer::LPSolution& s) {
  json j{{"feasible", s.feasible}};
  if (s.feasible) {
    j["inv_a"] = to_string(s.inv_a);
    j["b"] = to_string(s.b);
    j["c"] = to_string(s.c);
    j["active"] = s.active_constraints;
  } else {
    j["certificate"] = s.certificate;
  }
  return j;
}

}  // namespace

Report run_sieve(const SieveArgs& a, const RunConfig&) {
  if (a.limit < 2) throw DomainError("--limit must be at least 2");
  if (a.out.empty()) throw DomainError("--out PATH is required for sieve");
  const PrimeTable table = PrimeTable::build(a.limit);
  save_table(a.out, table);
  Report r;
  r.command = "sieve";
  r.quantity = "prime_table";
  r.parameters["limit"] = a.limit;
  r.parameters["path"] = a.out;
  r.columns = {"limit", "count", "largest", "theta"};
  const auto p = table.primes();
  r.add_row({table.limit(), static_cast<std::uint64_t>(table.size()),
             p.empty() ? std::uint64_t{0} : p.back(),
             table.size() ? table.theta(static_cast<double>(table.limit())) : 0.0});
  return r;
}

Report run_expsum(const ExpsumArgs& a, const RunConfig& cfg) {
  const WindowSpec w{a.X, a.k, a.delta};
  w.validate();
  const Grid g = parse_grid(a.alpha_grid);
  Report r;
  r.command = "expsum";
  r.parameters["X"] = a.X;
  r.parameters["k"] = a.k;
  r.parameters["delta"] = a.delta;
  r.parameters["alpha_grid"] = a.alpha_grid;
  r.parameters["which"] = a.which;
  r.columns = {"alpha", "re", "im", "abs"};

  std::vector<Complex> values;
  if (a.which == "S" || a.which == "U") {
    auto eval = [&](const PhaseSum& s) {
      return parallel_map(g.n, exec_of(cfg), [&](std::size_t i) { return s(g.at(i)); });
    };
    if (a.which == "S") {
      r.quantity = "prime_power_sum";
      values = with_table(cfg, root_limit(2.0 * a.X, a.k), [&](const PrimeTable& t) {
        return eval(prime_power_sum(t, dyadic_window(w)));
      });
    } else {
      r.quantity = "integer_power_sum";
      values = eval(integer_power_sum(dyadic_window(w)));
    }
  } else if (a.which == "T") {
    r.quantity = "power_phase_integral";
    const double tol = a.tol.value_or(1e-9 * std::pow(a.X, 1.0 / a.k));
    r.parameters["tol"] = tol;
    values = parallel_map(g.n, exec_of(cfg), [&](std::size_t i) { return eval_T(w, g.at(i), tol); });
  } else {
    throw DomainError("--which must be S, U or T");
  }
  for (std::size_t i = 0; i < g.n; ++i) {
    r.add_row({g.at(i), values[i].real(), values[i].imag(), std::abs(values[i])});
  }
  return r;
}

Report run_meansquare(const MeansquareArgs& a, const RunConfig& cfg) {
  const int given = int{a.h.has_value()} + int{a.delta.has_value()} + int{a.Y.has_value()};
  if (given != 1) throw DomainError("give exactly one of --h, --delta, --Y");
  if (a.Y && a.discrepancy) throw DomainError("--discrepancy takes --h or --delta");

  MeanSquareQuery q;
  q.X = a.X;
  q.k = a.k;
  q.h = a.h;
  q.rel_delta = a.delta;
  q.Y = a.Y;
  q.use_psi = a.psi;
  q.rh_mode = a.rh;
  q.C_density = a.C;

  Report r;
  r.command = "meansquare";
  r.parameters["X"] = a.X;
  r.parameters["k"] = a.k;
  r.parameters["psi"] = a.psi;
  r.parameters["rh"] = a.rh;
  r.columns = {"X", "k", "param", "value", "comparator", "ratio", "method", "out_of_range"};

  const Exec ex = exec_of(cfg);
  double param = 0.0;
  std::uint64_t need = 0;
  if (a.h) {
    param = *a.h;
    r.parameters["h"] = param;
    need = root_limit(2.0 * a.X + std::max(param, 0.0), a.k);
  } else if (a.delta) {
    param = *a.delta;
    r.parameters["delta"] = param;
    need = root_limit(2.0 * a.X * (1.0 + std::max(param, 0.0)), a.k);
  } else {
    param = *a.Y;
    r.parameters["Y"] = param;
    need = param > 0.0 ? root_limit(2.0 * a.X + 1.0 / (2.0 * param), a.k) : 0;
  }

  const MeanSquareReport rep = with_table(cfg, need, [&](const PrimeTable& t) {
    if (a.discrepancy) {
      r.quantity = "psi_theta_discrepancy";
      return theta_psi_discrepancy(t, q, ex);
    }
    if (a.h) {
      r.quantity = a.psi ? "selberg_integral_psi" : "selberg_integral_theta";
      return selberg_J(t, q, ex);
    }
    if (a.delta) {
      r.quantity = a.psi ? "relative_selberg_integral_psi" : "relative_selberg_integral_theta";
      return selberg_J_relative(t, q, ex);
    }
    r.quantity = "l2_sum_difference";
    const WindowSpec w{a.X, a.k, 0.1};
    w.validate();
    MeanSquareMethod m;
    if (a.method == "pairwise") {
      m = MeanSquareMethod::pairwise_exact;
    } else if (a.method == "grid") {
      m = MeanSquareMethod::grid;
    } else if (a.method == "auto") {
      const double n = std::pow(2.0 * a.X, 1.0 / a.k) - std::pow(a.X, 1.0 / a.k);
      m = n <= static_cast<double>(kPairwiseCap) ? MeanSquareMethod::pairwise_exact
                                                  : MeanSquareMethod::grid;
    } else {
      throw DomainError("--method must be auto, pairwise or grid");
    }
    return l2_diff(t, w, param, m, ex);
  });
  if (rep.substituted) r.parameters["substituted"] = *rep.substituted;
  r.add_row({a.X, a.k, param, rep.value, rep.comparator, rep.ratio,
             std::string(to_string(rep.method)), rep.out_of_range});
  return r;
}

Report run_approx(const ApproxArgs& a, const RunConfig&) {
  if (a.bits < 64 || a.bits > 1'000'000) throw DomainError("--bits must be in [64, 1000000]");
  const HiReal x = HiReal::parse(a.lambda_ratio, a.bits);
  Report r;
  r.command = "approx";
  r.parameters["lambda_ratio"] = a.lambda_ratio;
  r.parameters["bits"] = a.bits;
  r.parameters["provenance"] = to_string(x.provenance());
  r.columns = {"a", "q", "err"};
  auto row = [&](const Convergent& c) {
    r.add_row({c.a.str(), c.q.str(), format_double(c.err_double())});
  };
  if (a.Q) {
    const BigRational Q = exact_rational(*a.Q, "--Q");
    if (Q < 1) throw DomainError("--Q must be at least 1");
    const BigInt Qi = boost::multiprecision::numerator(Q) / boost::multiprecision::denominator(Q);
    r.quantity = "dirichlet_approximation";
    r.parameters["Q"] = Qi.str();
    row(dirichlet_approx(x, Qi));
  } else {
    if (a.terms == 0) throw DomainError("--terms must be positive");
    r.quantity = "continued_fraction_convergents";
    r.parameters["terms"] = a.terms;
    for (const Convergent& c : continued_fraction(x, a.terms)) row(c);
  }
  return r;
}

Report run_arcs(const ArcsArgs& a, const RunConfig& cfg) {
  const ProblemInstance inst = load_instance(cfg);
  const circle::ArcParams arcs = circle::arc_params(inst, a.X);
  const double eta = a.eta.value_or(arcs.eta);
  if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("--eta must be positive");
  const bool all = a.piece == "all";
  if (!all && a.piece != "major" && a.piece != "minor" && a.piece != "trivial") {
    throw DomainError("--piece must be major, minor, trivial or all");
  }
  if (!(a.tol > 0.0)) throw DomainError("--tol must be positive");

  Report r;
  r.command = "arcs";
  r.quantity = "arc_decomposition";
  r.parameters["instance"] = instance_json(inst);
  r.parameters["X"] = a.X;
  r.parameters["piece"] = a.piece;
  r.parameters["eta"] = eta;
  r.parameters["tol"] = a.tol * cfg.tol_scale;

  json body;
  body["arcs"] = {{"P", arcs.P},
                  {"eta", arcs.eta},
                  {"R", arcs.R},
                  {"major", interval_json(arcs.major)},
                  {"minor", json::array({interval_json(arcs.minor[0]),
                                         interval_json(arcs.minor[1])})},
                  {"trivial_from", arcs.trivial_from}};

  with_table(cfg, static_cast<std::uint64_t>(std::ceil(a.X)) + 2, [&](const PrimeTable& t) {
    if (all || a.piece == "major") {
      circle::Options opt;
      opt.tol = a.tol * cfg.tol_scale;
      opt.exec = exec_of(cfg);
      const circle::MajorSplit s = circle::major_arc_split(inst, t, a.X, eta, opt);
      json m;
      for (std::size_t i = 0; i < s.J.size(); ++i) m["J" + std::to_string(i + 1)] = result_json(s.J[i]);
      m["whole"] = result_json(s.whole);
      m["sum_minus_whole"] = complex_json(s.sum() - s.whole.value);
      m["main_term"] = s.main_term;
      m["j1_ratio"] = s.j1_ratio;
      body["major"] = m;
    }
    if (all || a.piece == "minor") {
      const circle::MinorArcReport mr =
          circle::minor_arc_monitor(inst, t, arcs, a.points, exec_of(cfg));
      body["minor"] = {{"points", mr.points},
                       {"step", mr.step},
                       {"sup_V", mr.sup_V},
                       {"sup_V_at", mr.sup_V_at},
                       {"sup_V_ratio", mr.sup_V_ratio},
                       {"in_X1", mr.in_X1},
                       {"in_X2", mr.in_X2},
                       {"in_both", mr.in_both},
                       {"partition_ok", mr.partition_ok},
                       {"l2_s1", mr.l2_s1},
                       {"l2_s1_ratio", mr.l2_s1_ratio},
                       {"l4_s2", mr.l4_s2},
                       {"l4_s2_ratio", mr.l4_s2_ratio},
                       {"l2_s3", mr.l2_s3},
                       {"l2_s3_ratio", mr.l2_s3_ratio},
                       {"holder_X1", mr.holder_X1},
                       {"holder_X2", mr.holder_X2},
                       {"holder_comparator", mr.holder_comparator},
                       {"holder_ratio", mr.holder_ratio}};
    }
    if (all || a.piece == "trivial") {
      const circle::TrivialTails tt = circle::trivial_tails(inst, t, a.X, arcs.R, a.tol * cfg.tol_scale);
      auto tail = [](const circle::Tail& x) {
        return json{{"value", x.value},
                    {"remaining", x.remaining},
                    {"comparator", x.comparator},
                    {"ratio", x.ratio},
                    {"intervals", x.intervals}};
      };
      body["trivial"] = {{"A", tail(tt.A)}, {"B", tail(tt.B)}, {"C", tail(tt.C)}};
    }
    return 0;
  });
  sanitize(body);
  r.body = std::move(body);
  return r;
}

Report run_search(const SearchArgs& a, const RunConfig& cfg) {
  const ProblemInstance inst = load_instance(cfg);
  double thr = 0.0;
  if (a.threshold == "auto") {
    thr = theorem_threshold(inst, a.X);
  } else {
    const auto* b = a.threshold.data();
    const auto* e = b + a.threshold.size();
    const auto [p, ec] = std::from_chars(b, e, thr);
    if (ec != std::errc() || p != e) throw DomainError("--threshold must be auto or a number");
  }

  Report r;
  r.command = "search";
  r.quantity = "prime_triples";
  r.parameters["instance"] = instance_json(inst);
  r.parameters["X"] = a.X;
  r.parameters["threshold"] = thr;
  r.parameters["threshold_rule"] = a.threshold == "auto" ? "theorem" : "fixed";
  r.columns = {"p1", "p2", "p3", "residual"};
  if (a.flag_own) r.columns.push_back("meets_own_threshold");

  SearchReport rep = with_table(cfg, static_cast<std::uint64_t>(std::ceil(a.X)) + 2,
                                [&](const PrimeTable& t) {
                                  return find_solutions(inst, t, a.X, thr, a.emit, exec_of(cfg));
                                });
  if (a.flag_own) flag_own_thresholds(inst, rep);
  r.parameters["count"] = rep.count;
  r.parameters["truncated"] = rep.truncated;
  if (!rep.diagnostic.empty()) {
    r.parameters["diagnostic"] = rep.diagnostic;
    std::cerr << "note: " << rep.diagnostic << "\n";
  }
  for (const SolutionRecord& s : rep.records) {
    std::vector<Cell> row{s.p1, s.p2, s.p3, s.residual};
    if (a.flag_own) row.emplace_back(s.meets_own_threshold.value_or(false));
    r.add_row(std::move(row));
  }
  return r;
}

Report run_exponents(const ExponentsArgs& a, const RunConfig&) {
  const BigRational k = exact_rational(a.k, "--k");
  if (k <= 0) throw DomainError("--k must be positive");
  if (!(k > 1 && k < BigRational(33, 29))) {
    std::cerr << "warning: k = " << to_string(k)
              << " lies outside (1, 33/29); the exponents are formal\n";
  }
  Report r;
  r.command = "exponents";
  r.quantity = "exponent_linear_program";
  r.parameters["k"] = to_string(k);

  const optimizer::ClosedFormCheck check = optimizer::verify_closed_form(k);
  json slacks = json::object();
  for (const auto& [id, s] : check.slacks) slacks[id] = to_string(s);

  json body;
  body["k"] = to_string(k);
  body["closed_form"] = rationals(check.value);
  body["closed_form_check"] = {{"all_hold", check.all_hold},
                               {"c_negative", check.c_negative},
                               {"tight", check.tight},
                               {"slacks", slacks}};
  body["lp_max_c"] = lp_json(optimizer::solve(k, optimizer::Objective::max_c));
  body["lp_relaxed"] = lp_json(optimizer::solve(k, optimizer::Objective::free_c));
  body["k_max"] = to_string(optimizer::k_max());
  r.body = std::move(body);
  return r;
}

Report run_verify_all(const VerifyArgs& a, const RunConfig& cfg, bool& all_passed) {
  acceptance::Options opt;
  opt.tol_scale = cfg.tol_scale;
  opt.exec = exec_of(cfg);
  opt.only = a.only;
  const PrimeTable table =
      cfg.table_path ? load_table(*cfg.table_path) : PrimeTable::build(acceptance::kTableLimit);
  if (table.limit() < acceptance::kTableLimit) {
    throw TableTooSmall("verify-all needs a table to " + std::to_string(acceptance::kTableLimit),
                        acceptance::kTableLimit);
  }

  Report r;
  r.command = "verify-all";
  r.quantity = "acceptance_criteria";
  r.parameters["tol_scale"] = cfg.tol_scale;
  r.parameters["table_limit"] = table.limit();
  r.columns = {"id", "name", "pass", "measured", "required", "seconds", "budget_seconds"};
  all_passed = true;
  const auto results = acceptance::run(table, opt, [](const acceptance::CriterionResult& c) {
    std::cerr << acceptance::format_line(c) << "\n";
  });
  for (const auto& c : results) {
    all_passed = all_passed && c.pass;
    r.add_row({std::int64_t{c.id}, c.name, c.pass, c.measured, c.required, c.seconds,
               c.budget_seconds});
  }
  return r;
}

}  // namespace dioph::cli
