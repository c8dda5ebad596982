// q-Pochhammer symbols, Gaussian and classical binomial coefficients, and
// exhaustive checks of the q-Pfaff-Saalschutz summation.
#pragma once

#include <algorithm>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include "qschmidt/bigmath.hpp"
#include "qschmidt/identity_report.hpp"

namespace qschmidt {

// (1-q^from)(1-q^(from+1))...(1-q^to); 1 when from > to.
inline LaurentPoly qpoch_range(int from, int to) {
  LaurentPoly out = LaurentPoly::one();
  for (int t = std::max(from, 1); t <= to; ++t)
    out *= LaurentPoly::one() - LaurentPoly::monomial(t);
  return out;
}

// (q)_n = (1-q)(1-q^2)...(1-q^n), (q)_0 = 1.
inline LaurentPoly qpoch(int n) { return qpoch_range(1, n); }

namespace detail {

// Row-by-row memo of a Pascal-style triangle. Rows live in a deque so
// references handed out stay valid while other threads extend the table.
template <typename Value, typename Step>
class PascalTable {
 public:
  explicit PascalTable(Step step) : step_(std::move(step)) {}

  const Value& get(int n, int k) {
    {
      std::shared_lock lock(mutex_);
      if (n < static_cast<int>(rows_.size())) return rows_[n][k];
    }
    std::unique_lock lock(mutex_);
    while (static_cast<int>(rows_.size()) <= n) {
      const int m = static_cast<int>(rows_.size());
      std::vector<Value> row(static_cast<std::size_t>(m) + 1);
      row[0] = Value(1);
      row[m] = Value(1);
      for (int j = 1; j < m; ++j) row[j] = step_(rows_[m - 1][j - 1], rows_[m - 1][j], j);
      rows_.push_back(std::move(row));
    }
    return rows_[n][k];
  }

  std::size_t rows() const {
    std::shared_lock lock(mutex_);
    return rows_.size();
  }

 private:
  Step step_;
  mutable std::shared_mutex mutex_;
  std::deque<std::vector<Value>> rows_;
};

struct QPascalStep {
  // [n,k] = [n-1,k-1] + q^k [n-1,k]
  LaurentPoly operator()(const LaurentPoly& up_left, const LaurentPoly& up, int k) const {
    return up_left + up.shift(k);
  }
};

struct PascalStep {
  BigInt operator()(const BigInt& up_left, const BigInt& up, int) const { return up_left + up; }
};

}  // namespace detail

// Memoized Gaussian binomials [n, k], zero outside 0 <= k <= n. Safe to share
// between threads; lookups of an existing row take a shared lock only.
class QBinomTable {
 public:
  QBinomTable() : table_(detail::QPascalStep{}) {}

  const LaurentPoly& operator()(long n, long k) {
    static const LaurentPoly zero;
    if (k < 0 || n < 0 || k > n) return zero;
    return table_.get(static_cast<int>(n), static_cast<int>(k));
  }

  std::size_t rows() const { return table_.rows(); }

 private:
  detail::PascalTable<LaurentPoly, detail::QPascalStep> table_;
};

inline QBinomTable& shared_qbinom_table() {
  static QBinomTable table;
  return table;
}

inline const LaurentPoly& qbinom(long n, long k) { return shared_qbinom_table()(n, k); }

// Gaussian binomial extended to a negative top argument:
// [-a, j] = (-1)^j q^{-(aj + C(j,2))} [a+j-1, j] for a > 0, j >= 0.
// Agrees with qbinom whenever top >= 0.
inline LaurentPoly qbinom_extended(long top, long j) {
  if (top >= 0 || j < 0) return qbinom(top, j);
  const long a = -top;
  LaurentPoly out = qbinom(a + j - 1, j).shift(-(a * j + choose2(j)));
  return j % 2 == 0 ? out : -out;
}

class BinomTable {
 public:
  BinomTable() : table_(detail::PascalStep{}) {}

  const BigInt& operator()(long n, long k) {
    static const BigInt zero = 0;
    if (k < 0 || n < 0 || k > n) return zero;
    return table_.get(static_cast<int>(n), static_cast<int>(k));
  }

 private:
  detail::PascalTable<BigInt, detail::PascalStep> table_;
};

inline const BigInt& binom(long n, long k) {
  static BinomTable table;
  return table(n, k);
}

// [m+n, M][n, N] = sum_{j>=0} q^{(N-j)(M-m-j)} [M-m, j][N+m, m+j][m+n+j, M+N].
// When m > M the top argument of [M-m, j] is negative; that bracket uses the
// standard extension (qbinom_extended), without which the identity fails.
inline IdentityReport verify_pfaff(long m, long n, long M, long N) {
  const LaurentPoly lhs = qbinom(m + n, M) * qbinom(n, N);
  LaurentPoly rhs;
  // [N+m, m+j] vanishes once j > N.
  for (long j = 0; j <= N; ++j) {
    const LaurentPoly& b2 = qbinom(N + m, m + j);
    if (b2.is_zero()) continue;
    const LaurentPoly& b3 = qbinom(m + n + j, M + N);
    if (b3.is_zero()) continue;
    LaurentPoly b1 = qbinom_extended(M - m, j);
    if (b1.is_zero()) continue;
    rhs += (b1 * b2 * b3).shift((N - j) * (M - m - j));
  }
  return make_report("pfaff", {{"m", m}, {"n", n}, {"M", M}, {"N", N}}, lhs, rhs);
}

// Substituted form:
//   [n,i][n+i,i] = sum_{j=0}^{i} q^{(i-j)(n-k-j)} (q)_{k+i}(q)_j / ((q)_{k+j}(q)_i)
//                  * [k,i-j][n-k,j][n+k+j,j].
// Both sides are multiplied by (q)_i, so term j becomes
//   q^{...} (q)_j (1-q^{k+j+1})...(1-q^{k+i}) [k,i-j][n-k,j][n+k+j,j]
// and no division is needed.
inline IdentityReport verify_pfaff_substituted(long n, long k, long i) {
  if (i < 0 || k < 0 || i > n || k > n)
    throw std::invalid_argument("verify_pfaff_substituted requires 0 <= i, k <= n");
  const LaurentPoly lhs = qbinom(n, i) * qbinom(n + i, i) * qpoch(static_cast<int>(i));
  LaurentPoly rhs;
  for (long j = 0; j <= i; ++j) {
    const LaurentPoly brackets = qbinom(k, i - j) * qbinom(n - k, j) * qbinom(n + k + j, j);
    if (brackets.is_zero()) continue;
    const LaurentPoly factor =
        qpoch(static_cast<int>(j)) * qpoch_range(static_cast<int>(k + j + 1), static_cast<int>(k + i));
    rhs += (factor * brackets).shift((i - j) * (n - k - j));
  }
  return make_report("pfaff-substituted", {{"n", n}, {"k", k}, {"i", i}}, lhs, rhs);
}

}  // namespace qschmidt
