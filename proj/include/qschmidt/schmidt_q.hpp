// The q-side of Schmidt's problem.
//
// P_{k,i}^{(r)}(q), k <= i <= rk, are the Laurent polynomials with
//
//   [n,k]^r [n+k,k]^r = sum_{i=k}^{min(n,rk)} q^{(rk-i)n} [n,i][n+i,i] P_{k,i}^{(r)}(q)
//
// for every n >= k. They are built by a one-step recursion in r starting from
// P_{k,k}^{(1)} = 1. An exponent plan (f, g) shifts them into
// T_{k,i}^{(r)} = q^{f(k,r)+g(i,r)} P_{k,i}^{(r)}, from which the coefficient
// polynomials b_i^{(r)} (plan f = g = 0) and c_i^{(r)} (the "zudilin" plan) of
// the two summation identities are assembled.
#pragma once

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qschmidt/bigmath.hpp"
#include "qschmidt/identity_report.hpp"
#include "qschmidt/qcomb.hpp"

namespace qschmidt {

// ---------------------------------------------------------------------------
// Exponent plans
// ---------------------------------------------------------------------------

using PlanFunction = std::function<Exponent(Exponent, Exponent)>;

struct ExponentPlan {
  std::string name;
  PlanFunction f;  // (k, r)
  PlanFunction g;  // (i, r)
};

// sum_{a,b} coeffs[a][b] x^a y^b with integer coefficients.
struct BivariatePoly {
  std::vector<std::vector<Exponent>> coeffs;

  Exponent operator()(Exponent x, Exponent y) const {
    Exponent total = 0;
    Exponent xa = 1;
    for (const auto& row : coeffs) {
      Exponent yb = 1;
      for (Exponent c : row) {
        total += c * xa * yb;
        yb *= y;
      }
      xa *= x;
    }
    return total;
  }
};

inline ExponentPlan zero_plan() {
  return {"zero", [](Exponent, Exponent) { return Exponent{0}; },
          [](Exponent, Exponent) { return Exponent{0}; }};
}

// f(k,r) = r C(k+1,2), g(i,r) = (r-2) C(i,2) - i.
inline ExponentPlan zudilin_plan() {
  return {"zudilin", [](Exponent k, Exponent r) { return r * choose2(k + 1); },
          [](Exponent i, Exponent r) { return (r - 2) * choose2(i) - i; }};
}

inline ExponentPlan custom_plan(std::string name, BivariatePoly f, BivariatePoly g) {
  return {std::move(name), std::move(f), std::move(g)};
}

// {"name": "...", "f": [[c00, c01, ...], ...], "g": [[...], ...]}
inline ExponentPlan plan_from_json(const nlohmann::json& j) {
  auto matrix = [&](const char* key) {
    BivariatePoly p;
    for (const auto& row : j.at(key)) p.coeffs.push_back(row.get<std::vector<Exponent>>());
    return p;
  };
  return custom_plan(j.value("name", std::string("custom")), matrix("f"), matrix("g"));
}

inline std::vector<ExponentPlan> builtin_plans() { return {zero_plan(), zudilin_plan()}; }

inline std::optional<ExponentPlan> find_plan(const std::string& name) {
  for (auto& plan : builtin_plans())
    if (plan.name == name) return plan;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// P tables
// ---------------------------------------------------------------------------

// P_{k,i}^{(r)} for k <= i <= rk at fixed (k, r). Indices outside that range
// read as zero.
class PTableSlice {
 public:
  PTableSlice(int k, int r, std::vector<LaurentPoly> entries)
      : k_(k), r_(r), entries_(std::move(entries)) {
    if (static_cast<int>(entries_.size()) != r * k - k + 1)
      throw std::invalid_argument("PTableSlice: expected rk - k + 1 entries");
  }

  int k() const noexcept { return k_; }
  int r() const noexcept { return r_; }
  int first() const noexcept { return k_; }
  int last() const noexcept { return r_ * k_; }

  const LaurentPoly& operator[](int i) const {
    static const LaurentPoly zero;
    if (i < first() || i > last()) return zero;
    return entries_[static_cast<std::size_t>(i - k_)];
  }

  std::span<const LaurentPoly> entries() const noexcept { return entries_; }

  PTableSlice with_entry(int i, LaurentPoly value) const {
    PTableSlice out = *this;
    out.entries_.at(static_cast<std::size_t>(i - k_)) = std::move(value);
    return out;
  }

  friend bool operator==(const PTableSlice&, const PTableSlice&) = default;

 private:
  int k_;
  int r_;
  std::vector<LaurentPoly> entries_;
};

inline PTableSlice p_table_base(int k) { return PTableSlice(k, 1, {LaurentPoly::one()}); }

// P_{k,k+j}^{(r+1)} = sum_{i=k}^{rk} q^{(j-i)(j+k)} [k+i,i][k,i-j][k+j,j] P_{k,i}^{(r)},
// 0 <= j <= rk. [k,i-j] restricts the sum to j <= i <= j+k.
inline PTableSlice p_table_step(const PTableSlice& prev) {
  const int k = prev.k();
  const int rk = prev.last();
  std::vector<LaurentPoly> next(static_cast<std::size_t>(rk) + 1);
  for (int j = 0; j <= rk; ++j) {
    LaurentPoly sum;
    const LaurentPoly& right = qbinom(k + j, j);
    for (int i = std::max(k, j); i <= std::min(rk, j + k); ++i) {
      const LaurentPoly& p = prev[i];
      if (p.is_zero()) continue;
      const Exponent e = static_cast<Exponent>(j - i) * (j + k);
      sum += (qbinom(k + i, i) * qbinom(k, i - j) * right * p).shift(e);
    }
    next[static_cast<std::size_t>(j)] = std::move(sum);
  }
  return PTableSlice(k, prev.r() + 1, std::move(next));
}

// Memo of slices, built for r = 1, 2, ... per k. Distinct k columns can be
// built concurrently.
class PTableStore {
 public:
  const PTableSlice& get(int k, int r) {
    if (k < 0 || r < 1) throw std::invalid_argument("p_table requires k >= 0 and r >= 1");
    Column* column = nullptr;
    {
      std::lock_guard lock(mutex_);
      auto& slot = columns_[k];
      if (!slot) slot = std::make_unique<Column>();
      column = slot.get();
    }
    std::lock_guard lock(column->mutex);
    if (column->by_r.empty()) column->by_r.push_back(p_table_base(k));
    while (static_cast<int>(column->by_r.size()) < r)
      column->by_r.push_back(p_table_step(column->by_r.back()));
    return column->by_r[static_cast<std::size_t>(r - 1)];
  }

 private:
  struct Column {
    std::mutex mutex;
    std::deque<PTableSlice> by_r;
  };
  std::mutex mutex_;
  std::map<int, std::unique_ptr<Column>> columns_;
};

inline PTableStore& shared_ptable_store() {
  static PTableStore store;
  return store;
}

inline const PTableSlice& p_table(int k, int r) { return shared_ptable_store().get(k, r); }

namespace detail {

// Exact quotient num / den in Z[q, 1/q], found by clearing the lowest term of
// the remainder at each step. Throws if den does not divide num.
inline LaurentPoly divide_exact(const LaurentPoly& num, const LaurentPoly& den) {
  if (den.is_zero()) throw std::domain_error("divide_exact: division by zero");
  if (num.is_zero()) return {};
  const Exponent qmin = num.min_exp() - den.min_exp();
  const Exponent qmax = num.max_exp() - den.max_exp();
  if (qmax < qmin) throw std::domain_error("divide_exact: not divisible");
  const auto d = den.coeffs();
  std::vector<BigInt> rem(num.coeffs().begin(), num.coeffs().end());
  std::vector<BigInt> quot(static_cast<std::size_t>(qmax - qmin + 1));
  for (std::size_t t = 0; t < quot.size(); ++t) {
    if (rem[t] == 0) continue;
    BigInt c, r;
    boost::multiprecision::divide_qr(rem[t], d[0], c, r);
    if (r != 0) throw std::domain_error("divide_exact: non-integral quotient coefficient");
    for (std::size_t s = 0; s < d.size(); ++s) rem[t + s] -= c * d[s];
    quot[t] = std::move(c);
  }
  for (const auto& c : rem)
    if (c != 0) throw std::domain_error("divide_exact: nonzero remainder");
  return LaurentPoly(qmin, std::move(quot));
}

}  // namespace detail

// Independent route to P: solve the defining identity row by row for
// n = k, ..., rk. Row n introduces exactly one unknown, P_{k,n}, with
// multiplier q^{(rk-n)n} [2n,n].
inline PTableSlice p_oracle(int k, int r) {
  if (k < 0 || r < 1) throw std::invalid_argument("p_oracle requires k >= 0 and r >= 1");
  const int rk = r * k;
  std::vector<LaurentPoly> entries;
  entries.reserve(static_cast<std::size_t>(rk - k + 1));
  for (int n = k; n <= rk; ++n) {
    LaurentPoly residual = qbinom(n, k).pow(r) * qbinom(n + k, k).pow(r);
    for (int i = k; i < n; ++i) {
      const Exponent e = static_cast<Exponent>(rk - i) * n;
      residual -= (qbinom(n, i) * qbinom(n + i, i) * entries[static_cast<std::size_t>(i - k)]).shift(e);
    }
    const LaurentPoly multiplier = qbinom(2 * n, n).shift(static_cast<Exponent>(rk - n) * n);
    entries.push_back(detail::divide_exact(residual, multiplier));
  }
  return PTableSlice(k, r, std::move(entries));
}

// ---------------------------------------------------------------------------
// Identities
// ---------------------------------------------------------------------------

inline IdentityReport verify_lemma(int n, int k, int r, const PTableSlice& table) {
  const LaurentPoly lhs = qbinom(n, k).pow(r) * qbinom(n + k, k).pow(r);
  LaurentPoly rhs;
  for (int i = k; i <= std::min(n, r * k); ++i) {
    const Exponent e = static_cast<Exponent>(r * k - i) * n;
    rhs += (qbinom(n, i) * qbinom(n + i, i) * table[i]).shift(e);
  }
  return make_report("lemma12", {{"n", n}, {"k", k}, {"r", r}}, lhs, rhs);
}

inline IdentityReport verify_lemma(int n, int k, int r) {
  if (k < 0 || n < k || r < 1) throw std::invalid_argument("verify_lemma requires n >= k >= 0, r >= 1");
  return verify_lemma(n, k, r, p_table(k, r));
}

inline LaurentPoly t_poly(int k, int i, int r, const ExponentPlan& plan) {
  if (i < k || i > r * k) return {};
  return p_table(k, r)[i].shift(plan.f(k, r) + plan.g(i, r));
}

inline Exponent exponent_A(Exponent k, Exponent i, Exponent j, Exponent r, const ExponentPlan& plan) {
  return plan.f(k, r + 1) + plan.g(i, r + 1) - plan.f(k, r) - plan.g(j, r) + i * (i - k - j);
}

// T_{k,i}^{(r+1)} = sum_{j=k}^{rk} q^A [k+j,j][k,i-j][i,k] T_{k,j}^{(r)}.
inline IdentityReport verify_step_recursion(int k, int i, int r, const ExponentPlan& plan) {
  const LaurentPoly lhs = t_poly(k, i, r + 1, plan);
  LaurentPoly rhs;
  for (int j = k; j <= r * k; ++j) {
    const LaurentPoly& middle = qbinom(k, i - j);
    if (middle.is_zero()) continue;
    rhs += (qbinom(k + j, j) * middle * qbinom(i, k) * t_poly(k, j, r, plan))
               .shift(exponent_A(k, i, j, r, plan));
  }
  return make_report("step:" + plan.name, {{"k", k}, {"i", i}, {"r", r}}, lhs, rhs);
}

// b_i^{(r)} = sum_{k=0}^{i} P_{k,i}^{(r)}.
inline LaurentPoly b_poly(int i, int r) {
  LaurentPoly sum;
  for (int k = 0; k <= i; ++k)
    if (i <= r * k) sum += p_table(k, r)[i];
  return sum;
}

// sum_k q^{-rkn}[n,k]^r[n+k,k]^r = sum_i q^{-ni}[n,i][n+i,i] b_i^{(r)}.
inline IdentityReport verify_theorem13(int n, int r) {
  LaurentPoly lhs;
  LaurentPoly rhs;
  for (int k = 0; k <= n; ++k) {
    lhs += (qbinom(n, k).pow(r) * qbinom(n + k, k).pow(r)).shift(-static_cast<Exponent>(r) * k * n);
    rhs += (qbinom(n, k) * qbinom(n + k, k) * b_poly(k, r)).shift(-static_cast<Exponent>(n) * k);
  }
  return make_report("thm13", {{"n", n}, {"r", r}}, lhs, rhs);
}

// c_i^{(r)} = q^{(r-2)C(i,2) - i} sum_{k=0}^{i} q^{r C(k+1,2)} P_{k,i}^{(r)}.
// Throws std::domain_error if the result is not a polynomial with
// nonnegative coefficients.
inline LaurentPoly c_poly(int i, int r) {
  if (i < 0 || r < 1) throw std::invalid_argument("c_poly requires i >= 0 and r >= 1");
  LaurentPoly sum;
  for (int k = 0; k <= i; ++k)
    if (i <= r * k) sum += p_table(k, r)[i].shift(static_cast<Exponent>(r) * choose2(k + 1));
  LaurentPoly c = std::move(sum).shift((r - 2) * choose2(i) - i);
  if (!c.is_polynomial() || !c.nonneg())
    throw std::domain_error("c_poly(" + std::to_string(i) + ", " + std::to_string(r) +
                            ") is not a polynomial with nonnegative coefficients: " + c.str());
  return c;
}

// sum_{k=0}^{i} q^{2 C(i-k,2)} [2k,i][i,k]^2, the known closed form of c_i^{(2)}.
inline LaurentPoly c2_closed_form(int i) {
  LaurentPoly sum;
  for (int k = 0; k <= i; ++k)
    sum += (qbinom(2 * k, i) * qbinom(i, k).pow(2)).shift(2 * choose2(i - k));
  return sum;
}

// sum_k q^{rC(n-k,2)+(1-r)C(n,2)} [n,k]^r[n+k,k]^r
//   = sum_i q^{C(n-i,2)+(1-r)C(i,2)} [n,i][n+i,i] c_i^{(r)}.
inline IdentityReport verify_theorem11(int n, int r) {
  LaurentPoly lhs;
  LaurentPoly rhs;
  for (int k = 0; k <= n; ++k) {
    const Exponent e = r * choose2(n - k) + (1 - r) * choose2(n);
    lhs += (qbinom(n, k).pow(r) * qbinom(n + k, k).pow(r)).shift(e);
  }
  for (int i = 0; i <= n; ++i) {
    const Exponent e = choose2(n - i) + (1 - r) * choose2(i);
    rhs += (qbinom(n, i) * qbinom(n + i, i) * c_poly(i, r)).shift(e);
  }
  return make_report("thm11", {{"n", n}, {"r", r}}, lhs, rhs);
}

}  // namespace qschmidt
