#include "robinlab/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <ostream>
#include <thread>

#include "robinlab/ca.hpp"
#include "robinlab/factored.hpp"
#include "robinlab/numerics.hpp"
#include "robinlab/primes.hpp"
#include "robinlab/robin.hpp"
#include "robinlab/theorems.hpp"

namespace robinlab {
namespace {

using json = nlohmann::ordered_json;

json factored_json(const FactoredNumber& n) {
  json arr = json::array();
  for (const auto& [p, e] : n.factors()) arr.push_back({p, e});
  return arr;
}

FactoredNumber parse_number_arg(const std::string& s) {
  bool all_digits =
      !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isdigit(c);
      });
  if (all_digits) {
    uint64_t n = 0;
    for (char c : s) {
      if (n > (uint64_t{1} << 63) / 10)
        throw std::invalid_argument("decimal input exceeds 2^63");
      n = n * 10 + static_cast<uint64_t>(c - '0');
    }
    if (n > uint64_t{1} << 63)
      throw std::invalid_argument("decimal input exceeds 2^63");
    return FactoredNumber::from_integer(n);
  }
  return FactoredNumber::parse(s);
}

void emit(std::ostream& out, const RunConfig& cfg, const json& j,
          const std::string& text, const std::string& csv) {
  switch (cfg.format) {
    case RunConfig::Format::Json: out << j.dump(2) << "\n"; break;
    case RunConfig::Format::Csv: out << csv; break;
    case RunConfig::Format::Text: out << text; break;
  }
}

json report_json(const TheoremReport& r) {
  json j;
  j["id"] = r.id;
  j["verdict"] = to_string(r.verdict);
  if (r.margin) j["margin"] = r.margin->to_double();
  if (!r.notes.empty()) j["notes"] = r.notes;
  j["implication"] = r.implication;
  return j;
}

std::string report_csv_row(const TheoremReport& r) {
  std::string m = r.margin ? std::to_string(r.margin->to_double()) : "";
  std::string notes = r.notes;
  std::replace(notes.begin(), notes.end(), ',', ';');
  return r.id + "," + to_string(r.verdict) + "," + m + "," +
         (r.implication ? "1" : "0") + "," + notes + "\n";
}

int cmd_sieve(const RunConfig& cfg, uint64_t lo, uint64_t hi, bool count_only,
              std::ostream& out) {
  if (cfg.format == RunConfig::Format::Json || count_only) {
    uint64_t count = 0, first = 0, last = 0;
    for_primes(lo, hi, [&](uint64_t p) {
      if (count == 0) first = p;
      last = p;
      ++count;
    });
    json j{{"lo", lo}, {"hi", hi}, {"count", count}};
    if (count) {
      j["first"] = first;
      j["last"] = last;
    }
    std::string text = count_only ? std::to_string(count) + "\n"
                                  : "primes in [" + std::to_string(lo) + ", " +
                                        std::to_string(hi) + "]: " +
                                        std::to_string(count) + "\n";
    emit(out, cfg, j, text,
         "lo,hi,count\n" + std::to_string(lo) + "," + std::to_string(hi) +
             "," + std::to_string(count) + "\n");
    return 0;
  }
  for_primes(lo, hi, [&](uint64_t p) { out << p << "\n"; });
  return 0;
}

int cmd_robin_check(const RunConfig& cfg, const std::string& arg,
                    std::ostream& out) {
  Precision prec(cfg.digits, cfg.max_digits);
  FactoredNumber n = parse_number_arg(arg);
  RobinVerdict v = robin_holds(n, prec);
  json j;
  if (auto u = n.value_u64())
    j["n"] = *u;
  else
    j["n"] = n.to_string();
  j["factored"] = factored_json(n);
  j["state"] = to_string(v.state);
  if (v.g_value) j["G"] = v.g_value->to_double();
  if (v.margin) j["margin"] = v.margin->to_double();
  std::string text = std::string(to_string(v.state)) +
                     (v.g_value ? "  G = " + v.g_value->to_string(20) : "") +
                     "\n";
  emit(out, cfg, j, text,
       "n,state,G\n" + n.to_string() + "," + to_string(v.state) + "," +
           (v.g_value ? std::to_string(v.g_value->to_double()) : "") + "\n");
  return 0;
}

int cmd_robin_verify(const RunConfig& cfg, uint64_t limit,
                     uint64_t oracle_limit, std::ostream& out) {
  ScanOptions opts;
  opts.segment_size = cfg.segment_size;
  opts.threads = cfg.threads ? cfg.threads
                             : std::max(1u, std::thread::hardware_concurrency());
  ScanResult res = exhaustive_scan(limit, opts);
  json j;
  j["limit"] = res.limit;
  j["violations"] = res.violations;
  if (!res.violations.empty()) j["max_violation"] = res.violations.back();
  bool oracle_ok = true;
  if (oracle_limit >= 3) {
    std::vector<uint64_t> reference = naive_scan(oracle_limit);
    std::vector<uint64_t> scanned;
    for (uint64_t v : res.violations)
      if (v <= oracle_limit) scanned.push_back(v);
    oracle_ok = scanned == reference;
    j["oracle_limit"] = oracle_limit;
    j["oracle_agrees"] = oracle_ok;
  }
  std::string text = "violations <= " + std::to_string(limit) + ": " +
                     std::to_string(res.violations.size()) +
                     (res.violations.empty()
                          ? ""
                          : ", max " + std::to_string(res.violations.back())) +
                     "\n";
  std::string csv = "n\n";
  for (uint64_t v : res.violations) csv += std::to_string(v) + "\n";
  emit(out, cfg, j, text, csv);
  return oracle_ok ? 0 : 1;
}

int cmd_mertens(const RunConfig& cfg, uint64_t n, std::ostream& out) {
  Precision prec(cfg.digits, cfg.max_digits);
  MertensOptions opts;
  opts.segment_odds = cfg.segment_size;
  opts.threads = cfg.threads ? cfg.threads
                             : std::max(1u, std::thread::hardware_concurrency());
  MertensResult r = mertens_product(n, prec, opts);
  json j;
  j["n"] = r.n;
  j["sum_logs"] = r.sum_logs.to_double();
  j["predicted"] = r.predicted.to_double();
  j["remainder"] = r.remainder.to_double();
  j["remainder_err"] = r.remainder.err_double();
  j["bound"] = r.bound.to_double();
  std::string text = "sum = " + r.sum_logs.to_string(20) +
                     "\npredicted = " + r.predicted.to_string(20) +
                     "\nremainder = " + r.remainder.to_string(6) +
                     " (bound " + r.bound.to_string(6) + ")\n";
  emit(out, cfg, j, text,
       "n,sum_logs,predicted,remainder,bound\n" + std::to_string(r.n) + "," +
           std::to_string(r.sum_logs.to_double()) + "," +
           std::to_string(r.predicted.to_double()) + "," +
           std::to_string(r.remainder.to_double()) + "," +
           std::to_string(r.bound.to_double()) + "\n");
  return 0;
}

int cmd_ca_chain(const RunConfig& cfg, std::size_t steps, std::ostream& out) {
  Precision prec(cfg.digits, cfg.max_digits);
  std::vector<ChainEntry> entries = ca_chain(steps, prec);
  json arr = json::array();
  std::string text, csv = "index,n,added_prime,new_exponent,critical_eps\n";
  for (const ChainEntry& e : entries) {
    Real log_n = log_value(e.n, prec);
    json j;
    j["index"] = e.index;
    j["n"] = e.n.to_string();
    j["added_prime"] = e.added_prime;
    j["new_exponent"] = e.new_exponent;
    j["critical_eps"] = e.critical_eps.to_double();
    j["logN"] = log_n.to_double();
    bool g_defined = !(e.n.factors().size() == 1 &&
                       e.n.factors()[0] == PrimePower{2, 1});
    if (g_defined)
      j["G"] = G(e.n, prec).to_double();
    else
      j["G"] = nullptr;
    if (e.tie) j["tie"] = true;
    arr.push_back(j);
    text += std::to_string(e.index) + ": " + e.n.to_string() + "  (+" +
            std::to_string(e.added_prime) + "^" +
            std::to_string(e.new_exponent) +
            ", eps " + e.critical_eps.to_string(8) + ")\n";
    csv += std::to_string(e.index) + "," + e.n.to_string() + "," +
           std::to_string(e.added_prime) + "," +
           std::to_string(e.new_exponent) + "," +
           e.critical_eps.to_string(12) + "\n";
  }
  emit(out, cfg, arr, text, csv);
  return 0;
}

int cmd_ca_xk(const RunConfig& cfg, const std::string& eps_str, unsigned k,
              std::ostream& out) {
  Precision prec(cfg.digits, cfg.max_digits);
  Real eps = Real::parse(eps_str, prec);
  Real x = breakpoint_x(eps, k, prec);
  json j{{"eps", eps.to_double()},
         {"k", k},
         {"x", x.to_double()},
         {"x_str", x.to_string(cfg.digits)},
         {"err", x.err_double()}};
  emit(out, cfg, j, "x_" + std::to_string(k) + " = " + x.to_string(20) + "\n",
       "k,x\n" + std::to_string(k) + "," + x.to_string(20) + "\n");
  return 0;
}

int cmd_ca_thm4(const RunConfig& cfg, const std::string& eps_str,
                unsigned kmax, bool exploratory, std::ostream& out) {
  Precision prec(cfg.digits, cfg.max_digits);
  Real eps = Real::parse(eps_str, prec);
  Thm4Report rep = thm4_check(eps, kmax, prec, exploratory);
  json rows = json::array();
  std::string csv = "k,xk,bound,cns_bound,margin,vacuous\n";
  for (const Thm4Row& r : rep.rows) {
    rows.push_back({{"k", r.k},
                    {"xk", r.xk.to_double()},
                    {"bound", r.bound.to_double()},
                    {"cns_bound", r.cns_bound.to_double()},
                    {"margin", r.margin.to_double()},
                    {"vacuous", r.vacuous}});
    csv += std::to_string(r.k) + "," + std::to_string(r.xk.to_double()) + "," +
           std::to_string(r.bound.to_double()) + "," +
           std::to_string(r.cns_bound.to_double()) + "," +
           std::to_string(r.margin.to_double()) + "," +
           (r.vacuous ? "1" : "0") + "\n";
  }
  json j{{"eps", rep.eps.to_double()},
         {"x1", rep.x1.to_double()},
         {"p", rep.p},
         {"all_positive", rep.all_positive},
         {"cns_all_positive", rep.cns_all_positive},
         {"rows", rows}};
  std::string text = "p = " + std::to_string(rep.p) +
                     ", margins all positive: " +
                     (rep.all_positive ? "yes" : "NO") + "\n";
  emit(out, cfg, j, text, csv);
  return rep.all_positive ? 0 : 1;
}

int cmd_theorems_audit(const RunConfig& cfg, const std::string& arg,
                       std::ostream& out) {
  Precision prec(cfg.digits, cfg.max_digits);
  FactoredNumber n = parse_number_arg(arg);
  AuditResult res = audit(n, prec);
  json reports = json::array();
  std::string text, csv = "id,verdict,margin,implication,notes\n";
  for (const TheoremReport& r : res.reports) {
    reports.push_back(report_json(r));
    text += r.id + ": " + to_string(r.verdict) +
            (r.margin ? "  margin " + r.margin->to_string(8) : "") +
            (r.notes.empty() ? "" : "  [" + r.notes + "]") + "\n";
    csv += report_csv_row(r);
  }
  json j;
  j["n"] = n.to_string();
  j["factored"] = factored_json(n);
  j["logN"] = res.gap.log_n.to_double();
  j["gap"] = {{"p", res.gap.p},
              {"d_minus", res.gap.d_minus.to_double()},
              {"d_plus", res.gap.d_plus.to_double()}};
  j["reports"] = reports;
  emit(out, cfg, j, text, csv);
  return res.any_implication_failure() ? 1 : 0;
}

int cmd_theorems_sweep(const RunConfig& cfg, std::size_t steps,
                       std::ostream& out) {
  Precision prec(cfg.digits, cfg.max_digits);
  std::vector<ChainEntry> entries = ca_chain(steps, prec);
  json arr = json::array();
  std::string text, csv = "index,n,id,verdict,margin,implication,notes\n";
  bool any_failure = false;
  for (const ChainEntry& e : entries) {
    json j;
    j["index"] = e.index;
    j["n"] = e.n.to_string();
    bool auditable = !(e.n.factors().size() == 1 &&
                       e.n.factors()[0] == PrimePower{2, 1});
    if (!auditable) {
      j["skipped"] = "n < 3";
      arr.push_back(j);
      continue;
    }
    AuditResult res = audit(e.n, prec);
    any_failure = any_failure || res.any_implication_failure();
    json reports = json::array();
    for (const TheoremReport& r : res.reports) {
      reports.push_back(report_json(r));
      csv += std::to_string(e.index) + "," + e.n.to_string() + "," +
             report_csv_row(r);
    }
    j["reports"] = reports;
    arr.push_back(j);
    text += std::to_string(e.index) + ": " + e.n.to_string() +
            (res.any_implication_failure() ? "  IMPLICATION FAILURE" : "  ok") +
            "\n";
  }
  emit(out, cfg, arr, text, csv);
  return any_failure ? 1 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"workbench for Robin's inequality and colossally abundant numbers",
               "robinlab"};
  app.require_subcommand(1);
  bool flag_json = false, flag_csv = false;
  app.add_option("--digits", cfg.digits, "working decimal digits")
      ->envname("ROBINLAB_DIGITS")
      ->check(CLI::Range(30, 100000));
  app.add_option("--max-digits", cfg.max_digits,
                 "escalation ceiling for adaptive comparisons");
  app.add_option("--segment-size", cfg.segment_size,
                 "sieve segment size (power of two)");
  app.add_option("--threads", cfg.threads, "worker threads (0 = auto)");
  app.add_flag("--json", flag_json, "JSON output");
  app.add_flag("--csv", flag_csv, "CSV output");
  app.add_option("--seed", cfg.seed, "seed for randomized sweeps");
  app.add_flag("--slow", cfg.slow, "enable slow checks");

  // sieve
  auto* sieve = app.add_subcommand("sieve", "list or count primes in a range");
  uint64_t lo = 1, hi = 100;
  bool count_only = false;
  sieve->add_option("--lo", lo, "range start")->required();
  sieve->add_option("--hi", hi, "range end (inclusive)")->required();
  sieve->add_flag("--count-only", count_only, "print the count only");

  // robin
  auto* robin = app.add_subcommand("robin", "Robin inequality checks");
  robin->require_subcommand(1);
  auto* verify = robin->add_subcommand("verify", "scan [3, limit] for violations");
  uint64_t limit = 100000;
  uint64_t oracle_limit = 0;
  verify->add_option("--limit", limit, "scan upper bound")->required();
  verify->add_option("--oracle-check", oracle_limit,
                     "cross-check against the naive oracle up to this bound");
  auto* check = robin->add_subcommand("check", "check one integer");
  std::string check_arg;
  check->add_option("n", check_arg, "decimal integer or factored form 2^4*3^2*5*7")
      ->required();

  // mertens
  auto* mertens = app.add_subcommand("mertens", "prime-product remainder");
  uint64_t mertens_n = 0;
  mertens->add_option("--n", mertens_n, "upper bound of the prime product")
      ->required();

  // ca
  auto* ca = app.add_subcommand("ca", "colossally abundant construction");
  ca->require_subcommand(1);
  auto* chain = ca->add_subcommand("chain", "greedy chain of CA numbers");
  std::size_t steps = 8;
  chain->add_option("--steps", steps, "number of chain entries")->required();
  auto* xk = ca->add_subcommand("xk", "breakpoint x_k for a given eps");
  std::string eps_str;
  unsigned k = 1;
  xk->add_option("--eps", eps_str, "eps value")->required();
  xk->add_option("--k", k, "breakpoint index")->required();
  auto* thm4 = ca->add_subcommand("thm4", "x_k < (k p)^(1/k) margins");
  std::string thm4_eps;
  unsigned kmax = 40;
  bool exploratory = false;
  thm4->add_option("--eps", thm4_eps, "eps value")->required();
  thm4->add_option("--kmax", kmax, "largest k to check");
  thm4->add_flag("--exploratory", exploratory, "allow p < 3299");

  // theorems
  auto* theorems = app.add_subcommand("theorems", "numeric audit reports");
  theorems->require_subcommand(1);
  auto* taudit = theorems->add_subcommand("audit", "audit one integer");
  std::string audit_arg;
  taudit->add_option("--n", audit_arg, "decimal integer or factored form")
      ->required();
  auto* tsweep = theorems->add_subcommand("sweep", "audit along the CA chain");
  std::size_t sweep_steps = 12;
  tsweep->add_option("--chain-steps", sweep_steps, "chain length")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (flag_json) cfg.format = RunConfig::Format::Json;
  if (flag_csv) cfg.format = RunConfig::Format::Csv;
  if (flag_json && flag_csv) {
    err << "error: --json and --csv are mutually exclusive\n";
    return 2;
  }
  if (cfg.max_digits < cfg.digits) {
    err << "error: --max-digits must be >= --digits\n";
    return 2;
  }
  if (cfg.segment_size == 0 ||
      (cfg.segment_size & (cfg.segment_size - 1)) != 0) {
    err << "error: --segment-size must be a power of two\n";
    return 2;
  }

  try {
    if (sieve->parsed()) return cmd_sieve(cfg, lo, hi, count_only, out);
    if (verify->parsed()) return cmd_robin_verify(cfg, limit, oracle_limit, out);
    if (check->parsed()) return cmd_robin_check(cfg, check_arg, out);
    if (mertens->parsed()) return cmd_mertens(cfg, mertens_n, out);
    if (chain->parsed()) return cmd_ca_chain(cfg, steps, out);
    if (xk->parsed()) return cmd_ca_xk(cfg, eps_str, k, out);
    if (thm4->parsed()) return cmd_ca_thm4(cfg, thm4_eps, kmax, exploratory, out);
    if (taudit->parsed()) return cmd_theorems_audit(cfg, audit_arg, out);
    if (tsweep->parsed()) return cmd_theorems_sweep(cfg, sweep_steps, out);
    err << "error: missing subcommand\n" << app.help();
    return 2;
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << "\n";
    return 3;
  } catch (const TieError& e) {
    err << "precision error: " << e.what() << "\n";
    return 3;
  } catch (const UndecidedError& e) {
    err << "precision error: " << e.what() << "\n";
    return 3;
  } catch (const NoBracketError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace robinlab
