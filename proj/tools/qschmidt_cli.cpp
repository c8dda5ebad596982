// qschmidt: tables, identity checks and integrality searches for the
// q-analogue of Schmidt's problem.
//
// Exit codes: 0 ok, 1 identity or integrality finding contradicting the
// published results, 2 usage error, 3 I/O error.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qschmidt/bigmath.hpp"
#include "qschmidt/cache.hpp"
#include "qschmidt/parallel.hpp"
#include "qschmidt/qcomb.hpp"
#include "qschmidt/repro.hpp"
#include "qschmidt/schmidt_q.hpp"
#include "qschmidt/schmidt_z.hpp"

namespace {

using namespace qschmidt;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFinding = 1;
constexpr int kUsage = 2;
constexpr int kIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string format = "human";
  unsigned threads = 0;

  int k = 0;
  int r = 1;
  int s = 1;
  int n = 0;
  int N = 10;
  int i_max = 5;
  int r_max = 1000;
  int k_max = 20;
  std::string plan = "zudilin";
  std::string plan_file;

  std::string cache_dir;
  bool no_cache = false;

  std::string suite = "all";
  int v_n_max = 10;
  int v_r_max = 4;
  int v_k_max = 3;
  int v_step_r_max = 3;
  int v_box_max = 6;
  int v_sub_max = 8;

  std::vector<std::string> skip;
  std::string json_out;
};

struct PolyRow {
  std::vector<std::pair<std::string, long long>> keys;
  std::string label;
  LaurentPoly poly;
};

std::string coeff_list(const LaurentPoly& p) {
  std::string out;
  for (const auto& c : p.coeffs()) out += (out.empty() ? "" : " ") + c.str();
  return out;
}

void print_rows(const std::vector<PolyRow>& rows, const std::string& format) {
  if (format == "json") {
    json out = json::array();
    for (const auto& row : rows) {
      json item = json::object();
      for (const auto& [key, value] : row.keys) item[key] = value;
      item["poly"] = row.poly;
      out.push_back(std::move(item));
    }
    std::cout << out.dump(2) << '\n';
  } else if (format == "csv") {
    if (rows.empty()) return;
    for (const auto& [key, value] : rows.front().keys) std::cout << key << ',';
    std::cout << "min_exp,coeffs\n";
    for (const auto& row : rows) {
      for (const auto& [key, value] : row.keys) std::cout << value << ',';
      std::cout << row.poly.min_exp() << ',' << coeff_list(row.poly) << '\n';
    }
  } else {
    for (const auto& row : rows) std::cout << row.label << ": " << row.poly.str() << '\n';
  }
}

ExponentPlan resolve_plan(const Options& opt) {
  if (!opt.plan_file.empty()) {
    std::ifstream in(opt.plan_file);
    if (!in) throw IoError("cannot read plan file " + opt.plan_file);
    try {
      return plan_from_json(json::parse(in));
    } catch (const json::exception& e) {
      throw UsageError(std::string("invalid plan file: ") + e.what());
    }
  }
  if (auto plan = find_plan(opt.plan)) return *plan;
  throw UsageError("unknown plan '" + opt.plan + "' (known: zero, zudilin)");
}

int cmd_ptable(const Options& opt) {
  std::vector<PolyRow> rows;
  const auto& table = p_table(opt.k, opt.r);
  for (int i = table.first(); i <= table.last(); ++i)
    rows.push_back({{{"k", opt.k}, {"i", i}, {"r", opt.r}}, "i=" + std::to_string(i), table[i]});
  print_rows(rows, opt.format);
  return kOk;
}

int cmd_tpoly(const Options& opt) {
  const ExponentPlan plan = resolve_plan(opt);
  std::vector<PolyRow> rows;
  for (int i = opt.k; i <= opt.r * opt.k; ++i)
    rows.push_back({{{"k", opt.k}, {"i", i}, {"r", opt.r}}, "i=" + std::to_string(i), t_poly(opt.k, i, opt.r, plan)});
  print_rows(rows, opt.format);
  return kOk;
}

int cmd_bpoly(const Options& opt) {
  std::vector<PolyRow> rows;
  for (int i = 0; i <= opt.i_max; ++i) rows.push_back({{{"i", i}, {"r", opt.r}}, "i=" + std::to_string(i), b_poly(i, opt.r)});
  print_rows(rows, opt.format);
  return kOk;
}

int cmd_cpoly(const Options& opt) {
  std::vector<PolyRow> rows;
  for (int i = 0; i <= opt.i_max; ++i) {
    try {
      rows.push_back({{{"i", i}, {"r", opt.r}}, "i=" + std::to_string(i), c_poly(i, opt.r)});
    } catch (const std::domain_error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kFinding;
    }
  }
  print_rows(rows, opt.format);
  return kOk;
}

int cmd_schmidt(const Options& opt) {
  const SchmidtTable table = schmidt_numbers(opt.r, opt.s, opt.N);
  if (opt.format == "json") {
    std::cout << json(table).dump(2) << '\n';
  } else if (opt.format == "csv") {
    std::cout << to_csv(table);
  } else {
    std::cout << "c_k^(" << opt.r << "," << opt.s << ")\n";
    std::cout << std::left << std::setw(4) << "k" << "  " << std::setw(8) << "integral" << "  c_k\n";
    for (std::size_t k = 0; k < table.values.size(); ++k)
      std::cout << std::left << std::setw(4) << k << "  " << std::setw(8) << (is_integer(table.values[k]) ? "yes" : "no")
                << "  " << table.values[k].str() << '\n';
  }
  return kOk;
}

int cmd_search_r(const Options& opt) {
  if (opt.r_max <= opt.s) throw UsageError("--r-max must exceed -s");
  const std::string key = "n=" + std::to_string(opt.n) + ",s=" + std::to_string(opt.s) + ",r_max=" + std::to_string(opt.r_max);
  std::optional<ResultCache> cache;
  if (!opt.no_cache) cache.emplace(ResultCache::resolve_dir(opt.cache_dir), "search-r");

  SearchRecord record;
  std::optional<json> hit = cache ? cache->get(key) : std::nullopt;
  if (hit) {
    record = hit->get<SearchRecord>();
  } else {
    record = least_r(opt.n, opt.s, opt.r_max, opt.threads);
    if (cache) {
      cache->put(key, json(record));
      try {
        cache->save();
      } catch (const std::exception& e) {
        throw IoError(e.what());
      }
    }
  }

  if (opt.format == "json") {
    std::cout << json(record).dump(2) << '\n';
  } else if (opt.format == "csv") {
    std::cout << to_csv(record);
  } else {
    const std::string name = "r(" + std::to_string(record.n) + "," + std::to_string(record.s) + ")";
    if (record.r_found)
      std::cout << name << " = " << *record.r_found << '\n';
    else
      std::cout << name << " not found for r <= " << record.r_max_scanned << " (conjecture open up to r_max)\n";
    for (const auto& w : record.witnesses)
      std::cout << "  r=" << w.r << ": c_" << w.k << "^(" << w.r << "," << record.s << ") is not an integer\n";
  }
  return kOk;
}

int cmd_first_nonint(const Options& opt) {
  if (!(opt.r > opt.s && opt.s > 1)) throw UsageError("first-nonint requires r > s > 1");
  const auto hit = first_noninteger(opt.r, opt.s, opt.k_max);
  if (opt.format == "json") {
    json out{{"r", opt.r}, {"s", opt.s}, {"k_max", opt.k_max}, {"k", nullptr}, {"value", nullptr}};
    if (hit) {
      out["k"] = hit->first;
      out["value"] = rat_to_string(hit->second);
    }
    std::cout << out.dump(2) << '\n';
  } else if (opt.format == "csv") {
    std::cout << "r,s,k_max,k,value\n" << opt.r << ',' << opt.s << ',' << opt.k_max << ',';
    if (hit) std::cout << hit->first << ',' << rat_to_string(hit->second);
    else std::cout << ',';
    std::cout << '\n';
  } else if (hit) {
    std::cout << "first non-integral: k = " << hit->first << ", c_" << hit->first << "^(" << opt.r << "," << opt.s
              << ") = " << hit->second.str() << '\n';
  } else {
    std::cout << "c_k^(" << opt.r << "," << opt.s << ") is integral for all k <= " << opt.k_max << '\n';
  }
  return kOk;
}

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::vector<IdentityReport> failures;
  std::string error;
  double seconds = 0.0;
};

template <typename Param, typename Check>
SuiteResult run_grid(std::string name, const std::vector<Param>& grid, unsigned threads, Check check) {
  SuiteResult res{std::move(name), grid.size(), {}, {}, 0.0};
  const auto start = std::chrono::steady_clock::now();
  try {
    auto reports = parallel_map<IdentityReport>(grid.size(), threads, [&](std::size_t t) { return check(grid[t]); });
    for (auto& rep : reports)
      if (!rep.holds) res.failures.push_back(std::move(rep));
  } catch (const std::domain_error& e) {
    res.error = e.what();
  }
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

int cmd_verify(const Options& opt) {
  static const std::set<std::string> kSuites{"thm11", "lemma12", "thm13", "step", "pfaff", "all"};
  if (!kSuites.contains(opt.suite)) throw UsageError("unknown suite '" + opt.suite + "'");
  const auto want = [&](const char* s) { return opt.suite == "all" || opt.suite == s; };

  std::vector<ExponentPlan> plans = builtin_plans();
  if (!opt.plan_file.empty()) plans.push_back(resolve_plan(opt));

  std::vector<SuiteResult> results;
  if (want("thm11") || want("thm13")) {
    std::vector<std::array<int, 2>> grid;
    for (int r = 1; r <= opt.v_r_max; ++r)
      for (int n = 0; n <= opt.v_n_max; ++n) grid.push_back({n, r});
    if (want("thm11"))
      results.push_back(run_grid("thm11", grid, opt.threads, [](auto p) { return verify_theorem11(p[0], p[1]); }));
    if (want("thm13"))
      results.push_back(run_grid("thm13", grid, opt.threads, [](auto p) { return verify_theorem13(p[0], p[1]); }));
  }
  if (want("lemma12")) {
    std::vector<std::array<int, 3>> grid;
    for (int r = 1; r <= opt.v_r_max; ++r)
      for (int n = 0; n <= opt.v_n_max; ++n)
        for (int k = 0; k <= n; ++k) grid.push_back({n, k, r});
    results.push_back(run_grid("lemma12", grid, opt.threads, [](auto p) { return verify_lemma(p[0], p[1], p[2]); }));
  }
  if (want("step")) {
    const int k_max = std::min(opt.v_k_max, opt.v_n_max);
    for (const auto& plan : plans) {
      std::vector<std::array<int, 3>> grid;
      for (int r = 1; r <= opt.v_step_r_max; ++r)
        for (int k = 0; k <= k_max; ++k)
          for (int i = k; i <= (r + 1) * k; ++i) grid.push_back({k, i, r});
      results.push_back(run_grid("step:" + plan.name, grid, opt.threads,
                                 [&plan](auto p) { return verify_step_recursion(p[0], p[1], p[2], plan); }));
    }
  }
  if (want("pfaff")) {
    std::vector<std::array<int, 4>> box;
    for (int m = 0; m <= opt.v_box_max; ++m)
      for (int n = 0; n <= opt.v_box_max; ++n)
        for (int M = 0; M <= opt.v_box_max; ++M)
          for (int N = 0; N <= opt.v_box_max; ++N) box.push_back({m, n, M, N});
    results.push_back(run_grid("pfaff", box, opt.threads, [](auto p) { return verify_pfaff(p[0], p[1], p[2], p[3]); }));
    std::vector<std::array<int, 3>> sub;
    for (int n = 0; n <= opt.v_sub_max; ++n)
      for (int k = 0; k <= n; ++k)
        for (int i = 0; i <= n; ++i) sub.push_back({n, k, i});
    results.push_back(run_grid("pfaff-substituted", sub, opt.threads,
                               [](auto p) { return verify_pfaff_substituted(p[0], p[1], p[2]); }));
  }

  bool all_hold = true;
  for (const auto& res : results) all_hold = all_hold && res.failures.empty() && res.error.empty();

  if (opt.format == "json") {
    json suites = json::array();
    for (const auto& res : results) {
      json item{{"suite", res.name}, {"cases", res.cases}, {"failures", res.failures}};
      if (!res.error.empty()) item["error"] = res.error;
      suites.push_back(std::move(item));
    }
    std::cout << json{{"holds", all_hold}, {"suites", std::move(suites)}}.dump(2) << '\n';
  } else if (opt.format == "csv") {
    std::cout << "suite,cases,failures,error\n";
    for (const auto& res : results)
      std::cout << res.name << ',' << res.cases << ',' << res.failures.size() << ',' << res.error << '\n';
  } else {
    for (const auto& res : results) {
      std::cout << std::left << std::setw(20) << res.name << std::right << std::setw(6) << res.cases << " cases  "
                << (res.failures.empty() && res.error.empty() ? "all hold" : "FAILED") << "  (" << std::fixed
                << std::setprecision(2) << res.seconds << "s)\n";
      if (!res.error.empty()) std::cout << "    error: " << res.error << '\n';
      for (const auto& f : res.failures) std::cout << "    fails at " << f.param_string() << '\n';
    }
  }
  return all_hold ? kOk : kFinding;
}

int cmd_repro(const Options& opt) {
  const std::set<std::string> skip(opt.skip.begin(), opt.skip.end());
  std::set<std::string> known;
  for (const auto& check : repro_checks()) known.insert(check.id);
  for (const auto& id : skip)
    if (!known.contains(id)) throw UsageError("unknown check '" + id + "'");

  const auto results = run_repro(skip, opt.threads);
  bool ok = true;
  for (const auto& res : results) {
    ok = ok && (res.skipped || res.pass);
    const char* status = res.skipped ? "SKIP" : (res.pass ? "PASS" : "FAIL");
    std::cout << status << "  " << std::left << std::setw(18) << res.id << "  " << res.title;
    if (!res.skipped)
      std::cout << "  [" << res.detail << "]  (" << std::fixed << std::setprecision(2) << res.seconds << "s)";
    std::cout << '\n';
  }
  if (!opt.json_out.empty()) {
    std::ofstream out(opt.json_out, std::ios::trunc);
    out << json{{"pass", ok}, {"checks", results}}.dump(2) << '\n';
    if (!out) throw IoError("cannot write " + opt.json_out);
  }
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << '\n';
  return ok ? kOk : kFinding;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qschmidt: exact tables and identity checks for the q-analogue of Schmidt's problem"};
  app.require_subcommand(1);
  Options opt;

  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"human", "json", "csv"}))
      ->capture_default_str();
  app.add_option("--threads", opt.threads, "Worker threads (0 = all cores)")->capture_default_str();

  auto* ptable = app.add_subcommand("ptable", "P_{k,i}^(r)(q) for k <= i <= rk");
  ptable->add_option("-k", opt.k, "k")->required()->check(CLI::NonNegativeNumber);
  ptable->add_option("-r", opt.r, "r")->required()->check(CLI::PositiveNumber);

  auto* tpoly = app.add_subcommand("tpoly", "T_{k,i}^(r)(q) = q^{f(k,r)+g(i,r)} P_{k,i}^(r)(q)");
  tpoly->add_option("-k", opt.k, "k")->required()->check(CLI::NonNegativeNumber);
  tpoly->add_option("-r", opt.r, "r")->required()->check(CLI::PositiveNumber);
  tpoly->add_option("--plan", opt.plan, "Exponent plan: zero or zudilin")->capture_default_str();
  tpoly->add_option("--plan-file", opt.plan_file, "JSON file with a custom exponent plan");

  auto* bpoly = app.add_subcommand("bpoly", "b_i^(r)(q) for i = 0..i-max");
  bpoly->add_option("-r", opt.r, "r")->required()->check(CLI::PositiveNumber);
  bpoly->add_option("--i-max", opt.i_max, "Largest i")->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* cpoly = app.add_subcommand("cpoly", "c_i^(r)(q) for i = 0..i-max");
  cpoly->add_option("-r", opt.r, "r")->required()->check(CLI::PositiveNumber);
  cpoly->add_option("--i-max", opt.i_max, "Largest i")->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* schmidt = app.add_subcommand("schmidt", "Schmidt numbers c_k^(r,s) for k = 0..N");
  schmidt->add_option("-r", opt.r, "r")->required()->check(CLI::PositiveNumber);
  schmidt->add_option("-s", opt.s, "s")->required()->check(CLI::PositiveNumber);
  schmidt->add_option("-N", opt.N, "Largest k")->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* search = app.add_subcommand("search-r", "Least r > s with c_0..c_n^(r,s) integral");
  search->add_option("-n", opt.n, "n")->required()->check(CLI::NonNegativeNumber);
  search->add_option("-s", opt.s, "s")->required()->check(CLI::PositiveNumber);
  search->add_option("--r-max", opt.r_max, "Largest r scanned")->capture_default_str();
  search->add_option("--cache-dir", opt.cache_dir,
                     std::string("Cache directory (default $") + ResultCache::kDirEnv + " or ./.qschmidt-cache)");
  search->add_flag("--no-cache", opt.no_cache, "Neither read nor write the cache");

  auto* nonint = app.add_subcommand("first-nonint", "Smallest k <= k-max with c_k^(r,s) non-integral");
  nonint->add_option("-r", opt.r, "r")->required()->check(CLI::PositiveNumber);
  nonint->add_option("-s", opt.s, "s")->required()->check(CLI::PositiveNumber);
  nonint->add_option("--k-max", opt.k_max, "Largest k")->check(CLI::NonNegativeNumber)->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check identities exactly over parameter grids");
  verify->add_option("--suite", opt.suite, "thm11, lemma12, thm13, step, pfaff or all")->capture_default_str();
  verify->add_option("--n-max", opt.v_n_max, "Largest n (thm11, thm13, lemma12); caps k for step")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--r-max", opt.v_r_max, "Largest r (thm11, thm13, lemma12)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--k-max", opt.v_k_max, "Largest k (step)")->check(CLI::NonNegativeNumber)->capture_default_str();
  verify->add_option("--step-r-max", opt.v_step_r_max, "Largest r (step)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify->add_option("--max", opt.v_box_max, "Box bound for m, n, M, N (pfaff)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--sub-max", opt.v_sub_max, "Largest n for the substituted form (pfaff)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  verify->add_option("--plan-file", opt.plan_file, "Also run the step suite for this custom plan");

  auto* repro = app.add_subcommand("repro", "Run every reproduction check and print a PASS/FAIL table");
  repro->add_option("--skip", opt.skip, "Check ids to skip (e.g. search-r-5)");
  repro->add_option("--json", opt.json_out, "Write a machine-readable report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (*ptable) return cmd_ptable(opt);
    if (*tpoly) return cmd_tpoly(opt);
    if (*bpoly) return cmd_bpoly(opt);
    if (*cpoly) return cmd_cpoly(opt);
    if (*schmidt) return cmd_schmidt(opt);
    if (*search) return cmd_search_r(opt);
    if (*nonint) return cmd_first_nonint(opt);
    if (*verify) return cmd_verify(opt);
    if (*repro) return cmd_repro(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
