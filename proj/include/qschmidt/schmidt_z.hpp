// Schmidt numbers c_k^{(r,s)}: the unique rationals with
//
//   sum_{k=0}^{n} C(n,k)^r C(n+k,k)^r = sum_{k=0}^{n} C(n,k)^s C(n+k,k)^s c_k^{(r,s)}
//
// for all n >= 0, and the search for the least r > s making c_0..c_n integral.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qschmidt/bigmath.hpp"
#include "qschmidt/parallel.hpp"
#include "qschmidt/qcomb.hpp"

namespace qschmidt {

struct SchmidtTable {
  int r = 1;
  int s = 1;
  std::vector<BigRat> values;  // c_0 .. c_N
};

namespace detail {

// C(n,k)^e C(n+k,k)^e
inline BigInt apery_term(int n, int k, int e) {
  using boost::multiprecision::pow;
  return pow(BigInt(binom(n, k) * binom(n + k, k)), static_cast<unsigned>(e));
}

}  // namespace detail

// Row n of the lower-triangular system has diagonal C(2n,n)^s, so
//   c_n = (sum_k C(n,k)^r C(n+k,k)^r - sum_{k<n} C(n,k)^s C(n+k,k)^s c_k) / C(2n,n)^s.
inline SchmidtTable schmidt_numbers(int r, int s, int N) {
  if (r < 1 || s < 1 || N < 0) throw std::invalid_argument("schmidt_numbers requires r, s >= 1, N >= 0");
  SchmidtTable table{r, s, {}};
  table.values.reserve(static_cast<std::size_t>(N) + 1);
  for (int n = 0; n <= N; ++n) {
    BigRat rhs = 0;
    for (int k = 0; k <= n; ++k) rhs += detail::apery_term(n, k, r);
    for (int k = 0; k < n; ++k) rhs -= detail::apery_term(n, k, s) * table.values[k];
    table.values.push_back(rhs / detail::apery_term(n, n, s));
  }
  return table;
}

// Difference between the two sides of row n for the stored values; zero for a
// correct solve.
inline BigRat row_residual(const SchmidtTable& table, int n) {
  BigRat diff = 0;
  for (int k = 0; k <= n; ++k) {
    diff += detail::apery_term(n, k, table.r);
    diff -= detail::apery_term(n, k, table.s) * table.values.at(static_cast<std::size_t>(k));
  }
  return diff;
}

// Smallest k <= n with non-integral c_k, or nullopt if c_0..c_n are integers.
inline std::optional<int> is_integral_through(const SchmidtTable& table, int n) {
  if (n < 0 || static_cast<std::size_t>(n) >= table.values.size())
    throw std::out_of_range("is_integral_through: table too short");
  for (int k = 0; k <= n; ++k)
    if (!is_integer(table.values[static_cast<std::size_t>(k)])) return k;
  return std::nullopt;
}

struct Witness {
  int r;
  int k;  // smallest k with non-integral c_k^{(r,s)}
  friend bool operator==(const Witness&, const Witness&) = default;
};

struct SearchRecord {
  int n = 0;
  int s = 0;
  std::optional<int> r_found;
  int r_max_scanned = 0;
  std::vector<Witness> witnesses;
  friend bool operator==(const SearchRecord&, const SearchRecord&) = default;
};

// Scans r = s+1, ..., r_max in increasing order and stops at the first r whose
// c_0..c_n are integral. Candidates are evaluated in batches of `threads`, so
// the result is identical for any thread count.
inline SearchRecord least_r(int n, int s, int r_max, unsigned threads = 1) {
  if (n < 0 || s < 1 || r_max <= s) throw std::invalid_argument("least_r requires n >= 0, s >= 1, r_max > s");
  if (threads == 0) threads = default_threads();
  SearchRecord record{n, s, std::nullopt, s, {}};
  for (int base = s + 1; base <= r_max && !record.r_found; base += static_cast<int>(threads)) {
    const int batch = std::min(static_cast<int>(threads), r_max - base + 1);
    auto offenders = parallel_map<std::optional<int>>(
        static_cast<std::size_t>(batch), threads,
        [&](std::size_t t) { return is_integral_through(schmidt_numbers(base + static_cast<int>(t), s, n), n); });
    for (int t = 0; t < batch; ++t) {
      const int r = base + t;
      record.r_max_scanned = r;
      if (!offenders[t]) {
        record.r_found = r;
        break;
      }
      record.witnesses.push_back({r, *offenders[t]});
    }
  }
  return record;
}

// Smallest k <= k_max with c_k^{(r,s)} non-integral, with its value.
inline std::optional<std::pair<int, BigRat>> first_noninteger(int r, int s, int k_max) {
  if (!(r > s && s > 1)) throw std::invalid_argument("first_noninteger requires r > s > 1");
  const SchmidtTable table = schmidt_numbers(r, s, k_max);
  if (auto k = is_integral_through(table, k_max)) return std::pair{*k, table.values[static_cast<std::size_t>(*k)]};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Serialization. Rationals are "num/den" strings.
// ---------------------------------------------------------------------------

inline void to_json(nlohmann::json& j, const SchmidtTable& t) {
  nlohmann::json values = nlohmann::json::array();
  nlohmann::json integral = nlohmann::json::array();
  for (const auto& v : t.values) {
    values.push_back(rat_to_string(v));
    integral.push_back(is_integer(v));
  }
  j = nlohmann::json{{"r", t.r}, {"s", t.s}, {"values", std::move(values)}, {"integral", std::move(integral)}};
}

inline void from_json(const nlohmann::json& j, SchmidtTable& t) {
  t.r = j.at("r").get<int>();
  t.s = j.at("s").get<int>();
  t.values.clear();
  for (const auto& v : j.at("values")) t.values.push_back(rat_from_string(v.get<std::string>()));
}

inline std::string to_csv(const SchmidtTable& t) {
  std::string out = "k,c_k,integral\n";
  for (std::size_t k = 0; k < t.values.size(); ++k)
    out += std::to_string(k) + "," + rat_to_string(t.values[k]) + "," + (is_integer(t.values[k]) ? "true" : "false") + "\n";
  return out;
}

inline void to_json(nlohmann::json& j, const SearchRecord& rec) {
  nlohmann::json witnesses = nlohmann::json::array();
  for (const auto& w : rec.witnesses) witnesses.push_back({{"r", w.r}, {"k", w.k}});
  j = nlohmann::json{{"n", rec.n},
                     {"s", rec.s},
                     {"r_found", rec.r_found ? nlohmann::json(*rec.r_found) : nlohmann::json(nullptr)},
                     {"r_max_scanned", rec.r_max_scanned},
                     {"witnesses", std::move(witnesses)}};
}

inline void from_json(const nlohmann::json& j, SearchRecord& rec) {
  rec.n = j.at("n").get<int>();
  rec.s = j.at("s").get<int>();
  rec.r_found = j.at("r_found").is_null() ? std::nullopt : std::optional<int>(j.at("r_found").get<int>());
  rec.r_max_scanned = j.at("r_max_scanned").get<int>();
  rec.witnesses.clear();
  for (const auto& w : j.at("witnesses")) rec.witnesses.push_back({w.at("r").get<int>(), w.at("k").get<int>()});
}

inline std::string to_csv(const SearchRecord& rec) {
  std::string out = "r,first_nonintegral_k\n";
  for (const auto& w : rec.witnesses) out += std::to_string(w.r) + "," + std::to_string(w.k) + "\n";
  if (rec.r_found) out += std::to_string(*rec.r_found) + ",\n";
  return out;
}

}  // namespace qschmidt
