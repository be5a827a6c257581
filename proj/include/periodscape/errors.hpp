#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace periodscape {

// Base for every domain failure raised by the library. Precondition
// violations (bad arguments) use std::invalid_argument instead.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact arithmetic left the range of the coefficient type.
class overflow_error : public error {
 public:
  using error::error;
};

// gcd(r_k, m) > 1: the shift map is not a bijection.
class non_invertible : public error {
 public:
  non_invertible(std::int64_t trailing, std::uint64_t modulus)
      : error("trailing coefficient " + std::to_string(trailing) +
              " is not a unit modulo " + std::to_string(modulus)),
        trailing_(trailing),
        modulus_(modulus) {}

  std::int64_t trailing() const noexcept { return trailing_; }
  std::uint64_t modulus() const noexcept { return modulus_; }

 private:
  std::int64_t trailing_;
  std::uint64_t modulus_;
};

// State space m^k is larger than the configured cap.
class cap_exceeded : public error {
 public:
  cap_exceeded(std::string what, std::uint64_t cap)
      : error(std::move(what)), cap_(cap) {}

  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t cap_;
};

// Companion matrix powering ran past its step cap before reaching identity.
class matrix_order_cap_exceeded : public error {
 public:
  explicit matrix_order_cap_exceeded(std::uint64_t cap)
      : error("companion matrix order exceeds " + std::to_string(cap)),
        cap_(cap) {}

  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t cap_;
};

class not_divisor : public error {
 public:
  not_divisor(std::uint64_t d, std::uint64_t m)
      : error(std::to_string(d) + " does not divide " + std::to_string(m)) {}
};

// A division inside a counting formula was not exact. For a conjectured
// formula this is a counterexample, so the operands are kept.
class integrality_violation : public error {
 public:
  integrality_violation(std::string formula, std::int64_t numerator,
                        std::int64_t denominator)
      : error(formula + ": " + std::to_string(numerator) + " / " +
              std::to_string(denominator) + " is not an exact non-negative integer"),
        formula_(std::move(formula)),
        numerator_(numerator),
        denominator_(denominator) {}

  const std::string& formula() const noexcept { return formula_; }
  std::int64_t numerator() const noexcept { return numerator_; }
  std::int64_t denominator() const noexcept { return denominator_; }

 private:
  std::string formula_;
  std::int64_t numerator_;
  std::int64_t denominator_;
};

// The Phi_2p count formula says nothing about moduli coprime to 2p.
class uncovered_case : public error {
 public:
  using error::error;
};

class classification_violation : public error {
 public:
  using error::error;
};

// A cycle modulo m reduced to something that is not a cycle modulo d.
class lift_mismatch : public error {
 public:
  using error::error;
};

}  // namespace periodscape
