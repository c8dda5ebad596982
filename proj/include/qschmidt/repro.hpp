// One-shot reproduction run: every published claim checked at desk scale.
#pragma once

#include <array>
#include <chrono>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qschmidt/bigmath.hpp"
#include "qschmidt/parallel.hpp"
#include "qschmidt/qcomb.hpp"
#include "qschmidt/schmidt_q.hpp"
#include "qschmidt/schmidt_z.hpp"

namespace qschmidt {

struct CheckOutcome {
  bool pass = false;
  std::string detail;
};

struct ReproCheck {
  std::string id;
  std::string title;
  std::function<CheckOutcome(unsigned threads)> run;
};

struct CheckResult {
  std::string id;
  std::string title;
  bool skipped = false;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

template <typename Param, typename Check>
CheckOutcome all_hold(const std::vector<Param>& grid, unsigned threads, Check check) {
  auto reports = parallel_map<IdentityReport>(grid.size(), threads, [&](std::size_t t) { return check(grid[t]); });
  std::size_t failures = 0;
  std::string first;
  for (const auto& rep : reports) {
    if (rep.holds) continue;
    if (failures++ == 0) first = rep.identity + " (" + rep.param_string() + ")";
  }
  if (failures == 0) return {true, std::to_string(grid.size()) + " cases hold"};
  return {false, std::to_string(failures) + "/" + std::to_string(grid.size()) + " fail, first " + first};
}

inline LaurentPoly random_laurent(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> len(0, 6);
  std::uniform_int_distribution<int> offset(-4, 4);
  std::uniform_int_distribution<long long> coeff(-50, 50);
  std::vector<BigInt> c(static_cast<std::size_t>(len(rng)));
  for (auto& x : c) x = coeff(rng);
  return LaurentPoly(offset(rng), std::move(c));
}

inline CheckOutcome search_thresholds(const std::vector<int>& ns, const std::vector<int>& expected, unsigned threads) {
  std::string got;
  bool pass = true;
  for (std::size_t t = 0; t < ns.size(); ++t) {
    const auto rec = least_r(ns[t], 2, 250, threads);
    const int value = rec.r_found.value_or(-1);
    got += (got.empty() ? "" : ", ") + std::string("r(") + std::to_string(ns[t]) + ",2)=" +
           (rec.r_found ? std::to_string(value) : std::string("none"));
    pass = pass && value == expected[t];
  }
  return {pass, got};
}

}  // namespace detail

inline std::vector<ReproCheck> repro_checks() {
  using detail::all_hold;
  std::vector<ReproCheck> checks;

  checks.push_back({"search-r-0-4", "least r(n,2) for n = 0..4 is 3, 3, 3, 7, 32", [](unsigned threads) {
                      return detail::search_thresholds({0, 1, 2, 3, 4}, {3, 3, 3, 7, 32}, threads);
                    }});
  checks.push_back({"search-r-5", "least r(5,2) is 212",
                    [](unsigned threads) { return detail::search_thresholds({5}, {212}, threads); }});

  checks.push_back({"thm11", "q-Schmidt identity with c_i^(r)(q), n <= 10, r <= 4", [](unsigned threads) {
                      std::vector<std::pair<int, int>> grid;
                      for (int r = 1; r <= 4; ++r)
                        for (int n = 0; n <= 10; ++n) grid.emplace_back(n, r);
                      return all_hold(grid, threads, [](auto p) { return verify_theorem11(p.first, p.second); });
                    }});

  checks.push_back({"lemma12", "P expansion identity, 0 <= k <= n <= 10, r <= 4", [](unsigned threads) {
                      std::vector<std::array<int, 3>> grid;
                      for (int r = 1; r <= 4; ++r)
                        for (int n = 0; n <= 10; ++n)
                          for (int k = 0; k <= n; ++k) grid.push_back({n, k, r});
                      return all_hold(grid, threads, [](auto p) { return verify_lemma(p[0], p[1], p[2]); });
                    }});

  checks.push_back({"oracle", "recursive P table equals triangular-solve oracle, k <= 4, r <= 4", [](unsigned) {
                      int compared = 0;
                      for (int k = 0; k <= 4; ++k)
                        for (int r = 1; r <= 4; ++r) {
                          if (!(p_table(k, r) == p_oracle(k, r)))
                            return CheckOutcome{false, "mismatch at k=" + std::to_string(k) + ", r=" + std::to_string(r)};
                          ++compared;
                        }
                      return CheckOutcome{true, std::to_string(compared) + " slices equal"};
                    }});

  checks.push_back({"pfaff", "q-Pfaff-Saalschutz on 0 <= m, n, M, N <= 6", [](unsigned threads) {
                      std::vector<std::array<int, 4>> grid;
                      for (int m = 0; m <= 6; ++m)
                        for (int n = 0; n <= 6; ++n)
                          for (int M = 0; M <= 6; ++M)
                            for (int N = 0; N <= 6; ++N) grid.push_back({m, n, M, N});
                      return all_hold(grid, threads, [](auto p) { return verify_pfaff(p[0], p[1], p[2], p[3]); });
                    }});

  checks.push_back({"pfaff-substituted", "substituted q-Pfaff-Saalschutz, 0 <= k, i <= n <= 8", [](unsigned threads) {
                      std::vector<std::array<int, 3>> grid;
                      for (int n = 0; n <= 8; ++n)
                        for (int k = 0; k <= n; ++k)
                          for (int i = 0; i <= n; ++i) grid.push_back({n, k, i});
                      return all_hold(grid, threads,
                                      [](auto p) { return verify_pfaff_substituted(p[0], p[1], p[2]); });
                    }});

  checks.push_back({"positivity", "P (k<=4), b_i (i<=6), c_i (i<=8) nonnegative; c_i polynomial; r <= 4", [](unsigned) {
                      int count = 0;
                      for (int r = 1; r <= 4; ++r) {
                        for (int k = 0; k <= 4; ++k)
                          for (const auto& p : p_table(k, r).entries()) {
                            if (!p.nonneg()) return CheckOutcome{false, "negative coefficient in P"};
                            ++count;
                          }
                        for (int i = 0; i <= 6; ++i, ++count)
                          if (!b_poly(i, r).nonneg()) return CheckOutcome{false, "negative coefficient in b_" + std::to_string(i)};
                        for (int i = 0; i <= 8; ++i, ++count) {
                          try {
                            const auto c = c_poly(i, r);
                            if (!c.is_polynomial() || !c.nonneg()) return CheckOutcome{false, "c_i fails"};
                          } catch (const std::domain_error& e) {
                            return CheckOutcome{false, e.what()};
                          }
                        }
                      }
                      return CheckOutcome{true, std::to_string(count) + " polynomials checked"};
                    }});

  checks.push_back({"c2-closed-form", "c_i^(2) equals its closed form, i <= 8", [](unsigned) {
                      for (int i = 0; i <= 8; ++i)
                        if (!(c_poly(i, 2) == c2_closed_form(i))) return CheckOutcome{false, "mismatch at i=" + std::to_string(i)};
                      return CheckOutcome{true, "9 cases equal"};
                    }});

  checks.push_back({"bridge", "c_i^(r)(1) equals c_i^(r,1), i <= 6, r <= 4", [](unsigned) {
                      for (int r = 1; r <= 4; ++r) {
                        const auto table = schmidt_numbers(r, 1, 6);
                        for (int i = 0; i <= 6; ++i)
                          if (BigRat(c_poly(i, r).eval_one()) != table.values[static_cast<std::size_t>(i)])
                            return CheckOutcome{false, "mismatch at i=" + std::to_string(i) + ", r=" + std::to_string(r)};
                      }
                      return CheckOutcome{true, "28 values agree"};
                    }});

  checks.push_back({"diagonal", "c_k^(r,r) = 1 for k <= 8, r <= 6", [](unsigned) {
                      for (int r = 1; r <= 6; ++r)
                        for (const auto& v : schmidt_numbers(r, r, 8).values)
                          if (v != 1) return CheckOutcome{false, "r=" + std::to_string(r)};
                      return CheckOutcome{true, "all ones"};
                    }});

  checks.push_back({"noninteger-probe", "c_k^(3,2) first non-integral at k = 3; table satisfies every row", [](unsigned) {
                      const auto hit = first_noninteger(3, 2, 10);
                      if (!hit) return CheckOutcome{false, "no non-integral value through k = 10"};
                      const auto table = schmidt_numbers(3, 2, 10);
                      for (int n = 0; n <= 10; ++n)
                        if (row_residual(table, n) != 0) return CheckOutcome{false, "nonzero residual at n=" + std::to_string(n)};
                      return CheckOutcome{hit->first == 3 && !is_integer(hit->second),
                                          "k=" + std::to_string(hit->first) + ", c=" + rat_to_string(hit->second)};
                    }});

  checks.push_back({"qbinom-properties", "degree, symmetry, palindromicity, product formula, 0 <= k <= n <= 20",
                    [](unsigned) {
                      int count = 0;
                      for (int n = 0; n <= 20; ++n)
                        for (int k = 0; k <= n; ++k, ++count) {
                          const auto& b = qbinom(n, k);
                          const Exponent deg = static_cast<Exponent>(k) * (n - k);
                          const bool ok = b.is_polynomial() && b.nonneg() && b.min_exp() == 0 && b.max_exp() == deg &&
                                          b == qbinom(n, n - k) && b.reverse().shift(deg) == b &&
                                          b * qpoch(k) * qpoch(n - k) == qpoch(n);
                          if (!ok) return CheckOutcome{false, "fails at n=" + std::to_string(n) + ", k=" + std::to_string(k)};
                        }
                      return CheckOutcome{true, std::to_string(count) + " brackets"};
                    }});

  checks.push_back({"ring-axioms", "Laurent ring axioms on 1000 random triples", [](unsigned) {
                      std::mt19937_64 rng(20120401);
                      for (int t = 0; t < 1000; ++t) {
                        const auto a = detail::random_laurent(rng);
                        const auto b = detail::random_laurent(rng);
                        const auto c = detail::random_laurent(rng);
                        const bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a + b == b + a &&
                                        a * b == b * a && a * (b + c) == a * b + a * c &&
                                        (a * b).eval_one() == a.eval_one() * b.eval_one() &&
                                        (a * b).reverse() == a.reverse() * b.reverse();
                        if (!ok) return CheckOutcome{false, "fails on case " + std::to_string(t)};
                      }
                      return CheckOutcome{true, "1000 cases"};
                    }});
  return checks;
}

inline std::vector<CheckResult> run_repro(const std::set<std::string>& skip, unsigned threads) {
  std::vector<CheckResult> results;
  for (const auto& check : repro_checks()) {
    CheckResult res{check.id, check.title};
    if (skip.contains(check.id)) {
      res.skipped = true;
      results.push_back(std::move(res));
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    try {
      auto outcome = check.run(threads);
      res.pass = outcome.pass;
      res.detail = std::move(outcome.detail);
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results.push_back(std::move(res));
  }
  return results;
}

inline void to_json(nlohmann::json& j, const CheckResult& r) {
  j = nlohmann::json{{"id", r.id}, {"title", r.title}, {"status", r.skipped ? "skipped" : (r.pass ? "pass" : "fail")},
                     {"detail", r.detail}};
}

}  // namespace qschmidt
