#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "periodscape/arith.hpp"

namespace periodscape {

// Dense integer polynomial; coeffs()[i] is the coefficient of x^i.
// Trailing zeros are stripped, so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(std::size_t degree, std::int64_t c = 1) {
    std::vector<std::int64_t> v(degree + 1, 0);
    v[degree] = c;
    return Polynomial(std::move(v));
  }

  // x^n - 1
  static Polynomial power_minus_one(std::size_t n) {
    std::vector<std::int64_t> v(n + 1, 0);
    v[0] = -1;
    v[n] += 1;
    return Polynomial(std::move(v));
  }

  const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  std::size_t degree() const {
    if (is_zero()) throw std::domain_error("degree of the zero polynomial");
    return coeffs_.size() - 1;
  }
  std::int64_t leading() const { return is_zero() ? 0 : coeffs_.back(); }
  bool is_monic() const noexcept { return !is_zero() && coeffs_.back() == 1; }

  std::int64_t operator[](std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : 0;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<std::int64_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
        out[i + j] = checked_add(out[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
    }
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  std::string str() const;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<std::int64_t> coeffs_;
};

// Quotient of num by a monic divisor. Throws std::domain_error if the
// remainder is non-zero.
inline Polynomial exact_divide(const Polynomial& num, const Polynomial& divisor) {
  if (!divisor.is_monic()) throw std::invalid_argument("exact_divide needs a monic divisor");
  if (num.is_zero()) return {};
  const auto dn = num.degree();
  const auto dd = divisor.degree();
  if (dn < dd) throw std::domain_error("polynomial division is not exact");
  std::vector<std::int64_t> rem = num.coeffs();
  std::vector<std::int64_t> quot(dn - dd + 1, 0);
  for (std::size_t shift = dn - dd + 1; shift-- > 0;) {
    const auto c = rem[shift + dd];
    quot[shift] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i)
      rem[shift + i] = checked_sub(rem[shift + i], checked_mul(c, divisor[i]));
  }
  for (auto c : rem)
    if (c != 0) throw std::domain_error("polynomial division is not exact");
  return Polynomial(std::move(quot));
}

namespace detail {

inline const Polynomial& cyclotomic_cached(std::uint64_t n, std::map<std::uint64_t, Polynomial>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  auto quotient = Polynomial::power_minus_one(n);
  for (auto d : divisors(n)) {
    if (d == n) break;
    quotient = exact_divide(quotient, cyclotomic_cached(d, memo));
  }
  return memo.emplace(n, std::move(quotient)).first->second;
}

}  // namespace detail

// n-th cyclotomic polynomial, by dividing x^n - 1 by every Phi_d with d | n, d < n.
inline Polynomial cyclotomic(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("cyclotomic index must be positive");
  std::map<std::uint64_t, Polynomial> memo;
  return detail::cyclotomic_cached(n, memo);
}

// a_n = r_1 a_{n-1} + ... + r_k a_{n-k}; coeffs()[i - 1] holds r_i.
class Recurrence {
 public:
  explicit Recurrence(std::vector<std::int64_t> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("recurrence order must be at least 1");
    if (coeffs_.back() == 0)
      throw std::invalid_argument("trailing recurrence coefficient must be non-zero");
  }

  std::size_t order() const noexcept { return coeffs_.size(); }
  const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
  // r_lag for lag in [1, order]
  std::int64_t at_lag(std::size_t lag) const { return coeffs_.at(lag - 1); }
  std::int64_t trailing() const noexcept { return coeffs_.back(); }

  friend bool operator==(const Recurrence&, const Recurrence&) = default;

  std::string str() const {
    std::string out = "a_n =";
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const auto c = coeffs_[i];
      if (c == 0) continue;
      const auto mag = c < 0 ? -c : c;
      out += first ? (c < 0 ? " -" : " ") : (c < 0 ? " - " : " + ");
      if (mag != 1) out += std::to_string(mag) + "*";
      out += "a_{n-" + std::to_string(i + 1) + "}";
      first = false;
    }
    return out;
  }

 private:
  std::vector<std::int64_t> coeffs_;
};

// r_i = -(coefficient of x^{k-i}).
inline Recurrence recurrence_from(const Polynomial& p) {
  if (!p.is_monic()) throw std::invalid_argument("characteristic polynomial must be monic");
  const auto k = p.degree();
  if (k == 0) throw std::invalid_argument("characteristic polynomial must have degree >= 1");
  std::vector<std::int64_t> r(k);
  for (std::size_t i = 1; i <= k; ++i) r[i - 1] = checked_sub<std::int64_t>(0, p[k - i]);
  return Recurrence(std::move(r));
}

// x^k - r_1 x^{k-1} - ... - r_k
inline Polynomial characteristic_polynomial(const Recurrence& r) {
  const auto k = r.order();
  std::vector<std::int64_t> c(k + 1);
  c[k] = 1;
  for (std::size_t i = 1; i <= k; ++i) c[k - i] = checked_sub<std::int64_t>(0, r.at_lag(i));
  return Polynomial(std::move(c));
}

// Sign flip on odd lags: sum r_i a_{n-i} -> sum (-1)^i r_i a_{n-i}.
inline Recurrence parity_transform(const Recurrence& r) {
  auto c = r.coeffs();
  for (std::size_t lag = 1; lag <= c.size(); lag += 2) c[lag - 1] = checked_sub<std::int64_t>(0, c[lag - 1]);
  return Recurrence(std::move(c));
}

inline Recurrence fibonacci_recurrence() { return Recurrence({1, 1}); }
inline Recurrence parity_recurrence() { return Recurrence({-1, 1}); }

inline std::string Polynomial::str() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const auto c = coeffs_[i];
    if (c == 0) continue;
    const auto mag = c < 0 ? -c : c;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (mag != 1 || i == 0) out += std::to_string(mag);
    if (i >= 1) out += "x";
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace periodscape
