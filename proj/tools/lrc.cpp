#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lrc/central.hpp"
#include "lrc/checkpoint.hpp"
#include "lrc/errors.hpp"
#include "lrc/matching.hpp"
#include "lrc/runner.hpp"
#include "lrc/sieve.hpp"

using json = nlohmann::json;
using namespace lrc;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitPartial = 3;
constexpr int kExitSearchFailed = 4;

enum class Format { Json, Csv, Human };

struct GlobalOptions {
  Format format = Format::Json;
  std::int64_t seed = 0;
  std::string checkpoint;
  int threads = 1;
  double budget_secs = 0;  // 0 means unlimited
  bool timing = false;
};

json rational_json(const Rational& r) {
  return json{{"num", rational_num(r).str()}, {"den", rational_den(r).str()}};
}

std::string rational_str(const Rational& r) {
  return rational_num(r).str() + "/" + rational_den(r).str();
}

json outcome_json(const MatchingOutcome& out) {
  json j;
  j["perfect"] = out.perfect;
  if (out.perfect) {
    json pairs = json::array();
    for (auto [a, b] : out.mapping) pairs.push_back(json::array({a, b}));
    j["mapping"] = pairs;
  } else {
    j["violator_left"] = out.violator_left;
    j["violator_right"] = out.violator_right;
  }
  return j;
}

json certificate_json(const WitnessCertificate& cert) {
  json j;
  j["t"] = rational_json(cert.t);
  j["kind"] = cert.from_missing ? "inverse_missing" : "coprime_pair";
  if (cert.from_missing) {
    j["x"] = cert.x;
  } else {
    j["s"] = cert.s;
    j["t_num"] = cert.t_num;
    j["modulus"] = cert.modulus;
    j["q"] = cert.q;
  }
  json bounds = json::array();
  for (const auto& b : cert.bounds) {
    bounds.push_back(json{{"v", b.v},
                          {"frac", rational_json(b.frac)},
                          {"dist", rational_json(b.dist)}});
  }
  j["bounds"] = bounds;
  return j;
}

struct Report {
  json body;
  std::vector<std::string> csv_lines;  // header first
  std::vector<std::string> human_lines;
};

void print_report(const Report& report, const GlobalOptions& global,
                  std::chrono::steady_clock::time_point started) {
  switch (global.format) {
    case Format::Json: {
      json out = report.body;
      out["version"] = kVersion;
      if (global.timing) {
        const auto elapsed = std::chrono::steady_clock::now() - started;
        out["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
      }
      std::cout << out.dump(2) << "\n";
      break;
    }
    case Format::Csv:
      for (const auto& line : report.csv_lines) std::cout << line << "\n";
      break;
    case Format::Human:
      for (const auto& line : report.human_lines) std::cout << line << "\n";
      break;
  }
}

std::string join64(const std::vector<std::int64_t>& values, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(values[i]);
  }
  return out;
}

int run_classify(const std::vector<std::int64_t>& speeds, std::int64_t budget_sum,
                 const GlobalOptions& global) {
  const auto started = std::chrono::steady_clock::now();
  auto V = SpeedSet::from(speeds);
  auto cls = classify_instance(V, budget_sum);

  Report report;
  report.body["command"] = "classify";
  report.body["inputs"] = json{{"speeds", speeds}, {"seed", global.seed}};
  json& outcome = report.body["outcome"];
  std::string cls_name;
  switch (cls.tag) {
    case InstanceTag::Loose: cls_name = "loose"; break;
    case InstanceTag::Tight: cls_name = "tight"; break;
    case InstanceTag::Counterexample: cls_name = "counterexample"; break;
  }
  outcome["class"] = cls_name;
  if (cls.witness) outcome["witness"] = rational_json(*cls.witness);
  if (!cls.witness_points.empty()) {
    json points = json::array();
    for (const auto& t : cls.witness_points) points.push_back(rational_json(t));
    outcome["witness_points"] = points;
  }

  report.csv_lines.push_back("class,witness");
  report.csv_lines.push_back(cls_name + "," +
                             (cls.witness ? rational_str(*cls.witness) : ""));
  report.human_lines.push_back("speeds: " + join64(speeds, " "));
  report.human_lines.push_back("class: " + cls_name);
  if (cls.witness)
    report.human_lines.push_back("witness t = " + rational_str(*cls.witness));
  for (const auto& t : cls.witness_points)
    report.human_lines.push_back("tight point t = " + rational_str(t));

  print_report(report, global, started);
  return kExitOk;
}

int run_witness(const std::vector<std::int64_t>& speeds,
                std::optional<std::int64_t> script_m, const GlobalOptions& global) {
  const auto started = std::chrono::steady_clock::now();
  auto V = SpeedSet::from(speeds);
  auto result = construct_loose_witness(V, script_m);

  Report report;
  report.body["command"] = "witness";
  report.body["inputs"] = json{{"speeds", speeds}, {"seed", global.seed}};
  if (script_m) report.body["inputs"]["script_m"] = *script_m;
  json& outcome = report.body["outcome"];
  outcome["k"] = result.k;

  std::string status;
  switch (result.status) {
    case ConstructResult::Status::Witness: status = "witness"; break;
    case ConstructResult::Status::Inapplicable: status = "inapplicable"; break;
    case ConstructResult::Status::SearchFailed: status = "search_failed"; break;
  }
  outcome["status"] = status;
  if (!result.reason.empty()) outcome["reason"] = result.reason;
  if (result.certificate) {
    outcome["script_m_used"] = result.script_m_used;
    outcome["certificate"] = certificate_json(*result.certificate);
  }
  if (!result.diagnostics.empty()) {
    json diags = json::array();
    for (const auto& d : result.diagnostics)
      diags.push_back(json{{"group", d.j},
                           {"s_size", d.s_size},
                           {"t_size", d.t_size},
                           {"two_m", d.two_m}});
    outcome["diagnostics"] = diags;
  }

  report.csv_lines.push_back("status,t,s,t_num,modulus,q,x");
  {
    std::string row = status + ",";
    if (result.certificate) {
      const auto& c = *result.certificate;
      row += rational_str(c.t);
      row += "," + std::to_string(c.s) + "," + std::to_string(c.t_num) + "," +
             std::to_string(c.modulus) + "," + std::to_string(c.q) + "," +
             std::to_string(c.x);
    } else {
      row += ",,,,,";
    }
    report.csv_lines.push_back(row);
  }
  report.human_lines.push_back("status: " + status);
  if (!result.reason.empty()) report.human_lines.push_back("reason: " + result.reason);
  if (result.certificate) {
    const auto& c = *result.certificate;
    report.human_lines.push_back("t = " + rational_str(c.t));
    if (c.from_missing)
      report.human_lines.push_back("from largest missing x = " + std::to_string(c.x));
    else
      report.human_lines.push_back(
          "coprime pair s = " + std::to_string(c.s) + ", t = " + std::to_string(c.t_num) +
          ", modulus = " + std::to_string(c.modulus) + ", q = " + std::to_string(c.q));
  }

  print_report(report, global, started);
  switch (result.status) {
    case ConstructResult::Status::Witness: return kExitOk;
    case ConstructResult::Status::Inapplicable: return kExitInvalid;
    case ConstructResult::Status::SearchFailed: return kExitSearchFailed;
  }
  return kExitOk;
}

int run_f_of_n(std::int64_t n, bool include_overlapping, const GlobalOptions& global) {
  const auto started = std::chrono::steady_clock::now();

  FScanOptions options;
  options.include_overlapping = include_overlapping;
  options.threads = global.threads;
  if (global.budget_secs > 0)
    options.deadline = started + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                                     std::chrono::duration<double>(global.budget_secs));

  std::map<std::string, ScanRecord> resume;
  std::optional<CheckpointFile> checkpoint;
  if (!global.checkpoint.empty()) {
    checkpoint.emplace(global.checkpoint);
    for (const auto& rec : checkpoint->replay())
      if (rec.n == n) resume[rec.key()] = rec;
    if (!resume.empty()) options.resume = &resume;
    options.emit = [&](const ScanRecord& rec) { checkpoint->append(rec); };
  }

  auto result = compute_f(n, options);
  if (checkpoint) checkpoint->flush();

  Report report;
  report.body["command"] = "f-of-n";
  report.body["inputs"] = json{{"n", n},
                               {"include_overlapping", include_overlapping},
                               {"seed", global.seed}};
  json& outcome = report.body["outcome"];
  outcome["f"] = result.f_value;
  outcome["complete"] = result.complete;
  outcome["pairs_scanned"] = result.records.size();
  json failures = json::array();
  for (const auto& f : result.failures) {
    json entry;
    entry["two_m"] = f.level;
    entry["card"] = f.cardinality;
    entry["a_start"] = f.a_start;
    entry["b_start"] = f.b_start;
    entry["violator_left"] = f.outcome.violator_left;
    entry["violator_right"] = f.outcome.violator_right;
    failures.push_back(entry);
  }
  outcome["failures"] = failures;

  report.csv_lines.push_back("two_m,card,a_start,b_start");
  for (const auto& f : result.failures)
    report.csv_lines.push_back(std::to_string(f.level) + "," +
                               std::to_string(f.cardinality) + "," +
                               std::to_string(f.a_start) + "," +
                               std::to_string(f.b_start));
  report.human_lines.push_back("f(" + std::to_string(n) + ") = " +
                               std::to_string(result.f_value) +
                               (result.complete ? "" : " (partial)"));
  report.human_lines.push_back("failing pairs: " + std::to_string(result.failures.size()));

  print_report(report, global, started);
  return result.complete ? kExitOk : kExitPartial;
}

int run_central_check(std::int64_t n, std::int64_t m, const GlobalOptions& global) {
  const auto started = std::chrono::steady_clock::now();
  auto violations = exhaustive_central_scan(n, m);

  Report report;
  report.body["command"] = "central-check";
  report.body["inputs"] = json{{"n", n}, {"m", m}, {"seed", global.seed}};
  json& outcome = report.body["outcome"];
  outcome["violations"] = json::array();
  for (const auto& v : violations)
    outcome["violations"].push_back(json{{"i_start", v.i_start},
                                         {"j_start", v.j_start},
                                         {"S", v.S},
                                         {"T", v.T}});
  outcome["count"] = violations.size();

  report.csv_lines.push_back("i_start,j_start,S,T");
  for (const auto& v : violations)
    report.csv_lines.push_back(std::to_string(v.i_start) + "," +
                               std::to_string(v.j_start) + "," + join64(v.S, ";") + "," +
                               join64(v.T, ";"));
  report.human_lines.push_back("violations: " + std::to_string(violations.size()));
  for (const auto& v : violations)
    report.human_lines.push_back("I@" + std::to_string(v.i_start) + " J@" +
                                 std::to_string(v.j_start) + "  S={" + join64(v.S, ",") +
                                 "} T={" + join64(v.T, ",") + "}");

  print_report(report, global, started);
  return kExitOk;
}

int run_adjacent_check(std::int64_t k_min, std::int64_t k_max, bool allow_small,
                       const GlobalOptions& global) {
  const auto started = std::chrono::steady_clock::now();
  auto result = verify_adjacent_range(k_min, k_max, allow_small, global.threads);

  Report report;
  report.body["command"] = "adjacent-check";
  report.body["inputs"] = json{{"k_min", k_min},
                               {"k_max", k_max},
                               {"allow_small", allow_small},
                               {"seed", global.seed}};
  json& outcome = report.body["outcome"];
  outcome["cases"] = result.cases;
  outcome["failures"] = json::array();
  for (const auto& f : result.failures) {
    json entry;
    entry["k"] = f.k;
    entry["ell"] = f.ell;
    entry["violator_left"] = f.outcome.violator_left;
    entry["violator_right"] = f.outcome.violator_right;
    outcome["failures"].push_back(entry);
  }

  report.csv_lines.push_back("k,ell");
  for (const auto& f : result.failures)
    report.csv_lines.push_back(std::to_string(f.k) + "," + std::to_string(f.ell));
  report.human_lines.push_back("cases: " + std::to_string(result.cases));
  report.human_lines.push_back("failures: " + std::to_string(result.failures.size()));
  for (const auto& f : result.failures)
    report.human_lines.push_back("k=" + std::to_string(f.k) +
                                 " ell=" + std::to_string(f.ell) + "  S={" +
                                 join64(f.outcome.violator_left, ",") + "} T={" +
                                 join64(f.outcome.violator_right, ",") + "}");

  print_report(report, global, started);
  return kExitOk;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const int single = std::stoi(text);
    return {single, single};
  }
  return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
}

int run_tables(const std::string& chi_range, const std::string& kappa_range,
               const GlobalOptions& global) {
  const auto started = std::chrono::steady_clock::now();

  std::vector<std::pair<std::string, TableRow>> rows;
  std::int64_t sieve_limit = 3;
  auto chi = chi_range.empty() ? std::pair<int, int>{0, -1} : parse_range(chi_range);
  auto kappa = kappa_range.empty() ? std::pair<int, int>{0, -1} : parse_range(kappa_range);
  if (chi_range.empty() && kappa_range.empty()) {
    chi = {1, 6};
    kappa = {1, 7};
  }

  // moduli grow as odd primorials; size the sieve to the largest requested
  const std::int64_t odd_primes[] = {3, 5, 7, 11, 13, 17, 19, 23};
  auto primorial = [&](int count, int skip) {
    std::int64_t product = 1;
    for (int i = skip; i < skip + count; ++i) product *= odd_primes[i];
    return product;
  };
  if (chi.second >= chi.first)
    sieve_limit = std::max(sieve_limit, primorial(chi.second, 1));  // w_a skips 3
  if (kappa.second >= kappa.first)
    sieve_limit = std::max(sieve_limit, primorial(kappa.second, 0));
  PrimeSieve sieve = build_sieve(sieve_limit);

  for (int a = chi.first; a <= chi.second; ++a) rows.emplace_back("chi", chi_table(a, sieve));
  for (int a = kappa.first; a <= kappa.second; ++a)
    rows.emplace_back("kappa", kappa_table(a, sieve));

  Report report;
  report.body["command"] = "tables";
  report.body["inputs"] = json{{"chi", chi_range}, {"kappa", kappa_range},
                               {"seed", global.seed}};
  json& outcome = report.body["outcome"];
  outcome["rows"] = json::array();
  report.csv_lines.push_back("kind,a,modulus,gamma,value");
  for (const auto& [kind, row] : rows) {
    outcome["rows"].push_back(json{{"kind", kind},
                                   {"a", row.a},
                                   {"modulus", row.modulus},
                                   {"gamma", rational_json(row.gamma)},
                                   {"gamma_decimal", round_decimal(row.gamma, 4)},
                                   {"value", rational_json(row.value)},
                                   {"value_decimal", round_decimal(row.value, 1)}});
    const std::string line = kind + "," + std::to_string(row.a) + "," +
                             std::to_string(row.modulus) + "," +
                             round_decimal(row.gamma, 4) + "," +
                             round_decimal(row.value, 1);
    report.csv_lines.push_back(line);
    report.human_lines.push_back(line);
  }

  print_report(report, global, started);
  return kExitOk;
}

int run_coprime_gap(std::int64_t x_min, std::int64_t x_max, std::int64_t scan_limit,
                    const GlobalOptions& global) {
  const auto started = std::chrono::steady_clock::now();
  if (x_min < 2 || x_min > x_max)
    throw std::invalid_argument("coprime-gap: need 2 <= x_min <= x_max");

  Report report;
  report.body["command"] = "coprime-gap";
  report.body["inputs"] = json{{"x_min", x_min},
                               {"x_max", x_max},
                               {"scan_limit", scan_limit},
                               {"seed", global.seed}};
  json& outcome = report.body["outcome"];
  outcome["rows"] = json::array();
  report.csv_lines.push_back("x,max_run");
  for (std::int64_t x = x_min; x <= x_max; ++x) {
    const std::int64_t run = max_noncoprime_run(x, scan_limit);
    outcome["rows"].push_back(json{{"x", x}, {"max_run", run}});
    report.csv_lines.push_back(std::to_string(x) + "," + std::to_string(run));
    report.human_lines.push_back("x=" + std::to_string(x) +
                                 " longest non-coprime run=" + std::to_string(run));
  }

  print_report(report, global, started);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lonely runner toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GlobalOptions global;
  std::map<std::string, Format> format_names{
      {"json", Format::Json}, {"csv", Format::Csv}, {"human", Format::Human}};
  app.add_option("--format", global.format, "output format")
      ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
  app.add_option("--seed", global.seed, "seed for sampled modes");
  app.add_option("--checkpoint", global.checkpoint, "JSONL checkpoint path");
  app.add_option("--threads", global.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget-secs", global.budget_secs, "time budget in seconds");
  app.add_flag("--timing", global.timing, "include timing in JSON output");
  bool include_overlapping = false;
  app.add_flag("--include-overlapping", include_overlapping,
               "also scan overlapping interval pairs (f-of-n)");

  std::vector<std::int64_t> speeds;
  std::int64_t budget_sum = 1'000'000;
  auto* classify = app.add_subcommand("classify", "classify a lonely runner instance");
  classify->add_option("speeds", speeds, "strictly increasing speeds")->required();
  classify->add_option("--budget-sum", budget_sum, "max speed sum for the exact sweep");

  std::vector<std::int64_t> witness_speeds;
  std::int64_t script_m_flag = 0;
  auto* witness = app.add_subcommand("witness", "construct a verified loose witness");
  witness->add_option("speeds", witness_speeds, "strictly increasing speeds")->required();
  auto* script_m_opt = witness->add_option("--script-m", script_m_flag,
                                           "group half-size parameter");

  std::int64_t f_n = 0;
  auto* f_of_n = app.add_subcommand("f-of-n", "coprime mapping threshold scan");
  f_of_n->add_option("n", f_n, "interval bound")->required()->check(CLI::Range(2, 1000));

  std::int64_t central_n = 0, central_m = 0;
  auto* central = app.add_subcommand("central-check", "four-outcome violation scan");
  central->add_option("n", central_n, "ambient bound")->required();
  central->add_option("m", central_m, "half interval length")->required();

  std::int64_t k_min = 0, k_max = 0;
  bool allow_small = false;
  auto* adjacent = app.add_subcommand("adjacent-check", "adjacent interval mappings");
  adjacent->add_option("k_min", k_min, "smallest k")->required();
  adjacent->add_option("k_max", k_max, "largest k")->required();
  adjacent->add_flag("--allow-small", allow_small, "permit k < 4");

  std::string chi_range, kappa_range;
  auto* tables = app.add_subcommand("tables", "chi and kappa threshold tables");
  tables->add_option("--chi", chi_range, "chi rows, e.g. 1..6");
  tables->add_option("--kappa", kappa_range, "kappa rows, e.g. 1..7");

  std::int64_t gap_min = 0, gap_max = 0, scan_limit = 100'000;
  auto* gap = app.add_subcommand("coprime-gap", "longest runs of non-coprime integers");
  gap->add_option("x_min", gap_min, "first x")->required();
  gap->add_option("x_max", gap_max, "last x")->required();
  gap->add_option("--scan-limit", scan_limit, "scan ceiling")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (classify->parsed()) return run_classify(speeds, budget_sum, global);
    if (witness->parsed()) {
      std::optional<std::int64_t> script_m;
      if (script_m_opt->count()) script_m = script_m_flag;
      return run_witness(witness_speeds, script_m, global);
    }
    if (f_of_n->parsed()) return run_f_of_n(f_n, include_overlapping, global);
    if (central->parsed()) return run_central_check(central_n, central_m, global);
    if (adjacent->parsed()) return run_adjacent_check(k_min, k_max, allow_small, global);
    if (tables->parsed()) return run_tables(chi_range, kappa_range, global);
    if (gap->parsed()) return run_coprime_gap(gap_min, gap_max, scan_limit, global);
  } catch (const resource_limit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  } catch (const search_failed_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSearchFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
