#pragma once

// Checked integer arithmetic and the handful of elementary number theory
// helpers shared by the other headers.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "periodscape/errors.hpp"

namespace periodscape {

template <typename T>
constexpr T checked_add(T a, T b) {
  T out{};
  if (__builtin_add_overflow(a, b, &out)) throw overflow_error("integer overflow in addition");
  return out;
}

template <typename T>
constexpr T checked_sub(T a, T b) {
  T out{};
  if (__builtin_sub_overflow(a, b, &out)) throw overflow_error("integer overflow in subtraction");
  return out;
}

template <typename T>
constexpr T checked_mul(T a, T b) {
  T out{};
  if (__builtin_mul_overflow(a, b, &out)) throw overflow_error("integer overflow in multiplication");
  return out;
}

template <typename T>
constexpr T checked_pow(T base, std::uint64_t exp) {
  T result = 1;
  while (exp > 0) {
    if (exp & 1U) result = checked_mul(result, base);
    exp >>= 1U;
    if (exp > 0) base = checked_mul(base, base);
  }
  return result;
}

// base^exp, or nullopt-like sentinel: returns false when the value exceeds limit.
inline bool pow_within(std::uint64_t base, std::uint64_t exp, std::uint64_t limit,
                       std::uint64_t& out) {
  std::uint64_t acc = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && acc > limit / base) return false;
    acc *= base;
  }
  if (acc > limit) return false;
  out = acc;
  return true;
}

constexpr std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

constexpr std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1U;
  }
  return result;
}

// Least non-negative residue of a signed value.
constexpr std::uint64_t reduce_mod(std::int64_t value, std::uint64_t m) {
  if (value >= 0) return static_cast<std::uint64_t>(value) % m;
  const auto magnitude = static_cast<std::uint64_t>(-(value + 1)) + 1;
  const auto r = magnitude % m;
  return r == 0 ? 0 : m - r;
}

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

// Prime factorisation by trial division, as (prime, exponent) pairs.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  for (std::uint64_t p = 2; p <= n / p; ++p) {
    if (n % p != 0) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1U);
  return out;
}

// Ascending list of positive divisors.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> small;
  std::vector<std::uint64_t> large;
  for (std::uint64_t d = 1; d <= n / d; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

inline std::uint64_t euler_totient(std::uint64_t n) {
  std::uint64_t phi = n;
  for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

// Exact rational with a positive denominator, always in lowest terms.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("zero denominator");
    normalize();
  }

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    const auto g = std::gcd(a.den_, b.den_);
    const auto lhs = checked_mul(a.num_, b.den_ / g);
    const auto rhs = checked_mul(b.num_, a.den_ / g);
    return {checked_add(lhs, rhs), checked_mul(a.den_ / g, b.den_)};
  }
  Rational& operator+=(const Rational& other) { return *this = *this + other; }

  friend bool operator==(const Rational& a, const Rational& b) = default;

  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  void normalize() {
    if (den_ < 0) {
      num_ = checked_sub<std::int64_t>(0, num_);
      den_ = checked_sub<std::int64_t>(0, den_);
    }
    const auto g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace periodscape
