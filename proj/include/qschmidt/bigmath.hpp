// Exact integers, rationals and dense Laurent polynomials in one variable q.
//
// LaurentPoly stores the coefficient of q^(min_exp + t) at coeffs[t]. Values
// are always canonical: either the zero polynomial (no coefficients,
// min_exp = 0) or a coefficient run whose first and last entries are nonzero.
// Canonical form makes structural equality coincide with polynomial equality.
#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <nlohmann/json.hpp>

namespace qschmidt {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;
using Exponent = std::int64_t;

inline bool is_integer(const BigRat& x) { return denominator(x) == 1; }

// "num/den", always with an explicit denominator.
inline std::string rat_to_string(const BigRat& x) {
  return numerator(x).str() + "/" + denominator(x).str();
}

inline BigRat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return BigRat(BigInt(s));
  BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + s);
  // boost rejects a negative denominator in the two-argument constructor
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return BigRat(num, den);
}

// C(m, 2) for m >= 0; zero for m < 2.
constexpr Exponent choose2(Exponent m) { return m < 2 ? 0 : m * (m - 1) / 2; }

class LaurentPoly {
 public:
  LaurentPoly() = default;

  explicit LaurentPoly(BigInt constant) {
    if (constant != 0) coeffs_.push_back(std::move(constant));
  }

  // Accepts any raw (min_exp, coeffs) pair; zero padding on either end is
  // stripped.
  LaurentPoly(Exponent min_exp, std::vector<BigInt> coeffs)
      : min_exp_(min_exp), coeffs_(std::move(coeffs)) {
    canonicalize();
  }

  LaurentPoly(Exponent min_exp, std::initializer_list<long long> coeffs)
      : min_exp_(min_exp) {
    coeffs_.reserve(coeffs.size());
    for (long long c : coeffs) coeffs_.emplace_back(c);
    canonicalize();
  }

  static LaurentPoly one() { return LaurentPoly(BigInt(1)); }

  static LaurentPoly monomial(Exponent e, BigInt c = 1) {
    return LaurentPoly(e, std::vector<BigInt>{std::move(c)});
  }

  bool is_zero() const noexcept { return coeffs_.empty(); }
  Exponent min_exp() const noexcept { return min_exp_; }
  // For the zero polynomial this is min_exp - 1 = -1.
  Exponent max_exp() const noexcept {
    return min_exp_ + static_cast<Exponent>(coeffs_.size()) - 1;
  }
  std::span<const BigInt> coeffs() const noexcept { return coeffs_; }

  BigInt coeff(Exponent e) const {
    if (is_zero() || e < min_exp_ || e > max_exp()) return 0;
    return coeffs_[static_cast<std::size_t>(e - min_exp_)];
  }

  bool is_polynomial() const noexcept { return is_zero() || min_exp_ >= 0; }

  bool nonneg() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(),
                       [](const BigInt& c) { return c >= 0; });
  }

  // Value at q = 1.
  BigInt eval_one() const {
    BigInt sum = 0;
    for (const auto& c : coeffs_) sum += c;
    return sum;
  }

  LaurentPoly shift(Exponent e) const& {
    LaurentPoly out = *this;
    return std::move(out).shift(e);
  }
  LaurentPoly shift(Exponent e) && {
    if (!is_zero()) min_exp_ += e;
    return std::move(*this);
  }

  // Substitutes q -> 1/q.
  LaurentPoly reverse() const {
    if (is_zero()) return {};
    LaurentPoly out;
    out.coeffs_.assign(coeffs_.rbegin(), coeffs_.rend());
    out.min_exp_ = -max_exp();
    return out;
  }

  LaurentPoly pow(unsigned exponent) const {
    LaurentPoly result = one();
    LaurentPoly base = *this;
    while (exponent != 0) {
      if (exponent & 1U) result *= base;
      exponent >>= 1U;
      if (exponent != 0) base *= base;
    }
    return result;
  }

  LaurentPoly& operator+=(const LaurentPoly& rhs) {
    if (rhs.is_zero()) return *this;
    if (is_zero()) return *this = rhs;
    const Exponent lo = std::min(min_exp_, rhs.min_exp_);
    const Exponent hi = std::max(max_exp(), rhs.max_exp());
    if (lo < min_exp_) {
      coeffs_.insert(coeffs_.begin(), static_cast<std::size_t>(min_exp_ - lo),
                     BigInt(0));
      min_exp_ = lo;
    }
    coeffs_.resize(static_cast<std::size_t>(hi - lo + 1));
    const auto offset = static_cast<std::size_t>(rhs.min_exp_ - lo);
    for (std::size_t t = 0; t < rhs.coeffs_.size(); ++t)
      coeffs_[offset + t] += rhs.coeffs_[t];
    canonicalize();
    return *this;
  }

  LaurentPoly& operator-=(const LaurentPoly& rhs) { return *this += -rhs; }

  LaurentPoly& operator*=(const LaurentPoly& rhs) {
    *this = *this * rhs;
    return *this;
  }

  friend LaurentPoly operator-(LaurentPoly a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    return a += b;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    return a -= b;
  }

  // Schoolbook product.
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t s = 0; s < a.coeffs_.size(); ++s) {
      const BigInt& x = a.coeffs_[s];
      if (x == 0) continue;
      for (std::size_t t = 0; t < b.coeffs_.size(); ++t) out[s + t] += x * b.coeffs_[t];
    }
    return LaurentPoly(a.min_exp_ + b.min_exp_, std::move(out));
  }

  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  // Human form, ascending exponents: "q^-1 + 2 + q", "1 - q^2".
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
      const BigInt& c = coeffs_[t];
      if (c == 0) continue;
      const Exponent e = min_exp_ + static_cast<Exponent>(t);
      const bool negative = c < 0;
      if (out.empty()) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      const BigInt mag = negative ? BigInt(-c) : c;
      if (e == 0) {
        out += mag.str();
        continue;
      }
      if (mag != 1) out += mag.str();
      out += "q";
      if (e != 1) out += "^" + std::to_string(e);
    }
    return out;
  }

  friend std::ostream& operator<<(std::ostream& os, const LaurentPoly& p) {
    return os << p.str();
  }

 private:
  void canonicalize() {
    auto first = std::find_if(coeffs_.begin(), coeffs_.end(),
                              [](const BigInt& c) { return c != 0; });
    if (first == coeffs_.end()) {
      coeffs_.clear();
      min_exp_ = 0;
      return;
    }
    auto last = std::find_if(coeffs_.rbegin(), coeffs_.rend(),
                             [](const BigInt& c) { return c != 0; });
    coeffs_.erase(last.base(), coeffs_.end());
    min_exp_ += first - coeffs_.begin();
    coeffs_.erase(coeffs_.begin(), first);
  }

  Exponent min_exp_ = 0;
  std::vector<BigInt> coeffs_;
};

// Machine form: {"min_exp": int, "coeffs": ["decimal", ...]}.
inline void to_json(nlohmann::json& j, const LaurentPoly& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(c.str());
  j = nlohmann::json{{"min_exp", p.min_exp()}, {"coeffs", std::move(coeffs)}};
}

inline void from_json(const nlohmann::json& j, LaurentPoly& p) {
  std::vector<BigInt> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.emplace_back(c.get<std::string>());
  p = LaurentPoly(j.at("min_exp").get<Exponent>(), std::move(coeffs));
}

}  // namespace qschmidt
