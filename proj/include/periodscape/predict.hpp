#pragma once

// Closed-form period-count predictors for cyclotomic recurrences and x^n - 1,
// the necklace count they are built from, and a comparison harness against
// enumerated landscapes.

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "periodscape/arith.hpp"
#include "periodscape/errors.hpp"
#include "periodscape/landscape.hpp"

namespace periodscape {

struct SpectrumPrediction {
  std::uint64_t total = 0;
  Spectrum by_length;  // zero multiplicities are omitted
  std::string source;
};

inline int mobius(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("mobius is defined for n >= 1");
  int sign = 1;
  for (const auto& [p, e] : factorize(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

// num / den when that is an exact non-negative integer; otherwise the
// formula has produced a counterexample.
inline std::int64_t exact_quotient(std::int64_t num, std::int64_t den, const std::string& formula) {
  if (den <= 0 || num < 0 || num % den != 0) throw integrality_violation(formula, num, den);
  return num / den;
}

// Aperiodic necklaces of length r over an alphabet of size m:
// (1/r) sum_{d | r} mu(d) m^{r/d}.
inline std::uint64_t necklace_count(std::uint64_t m, std::uint64_t r) {
  if (m == 0 || r == 0) throw std::invalid_argument("necklace_count needs m >= 1 and r >= 1");
  std::int64_t sum = 0;
  const auto base = static_cast<std::int64_t>(m);
  for (auto d : divisors(r)) {
    const auto mu = mobius(d);
    if (mu == 0) continue;
    const auto term = checked_pow(base, r / d);
    sum = mu > 0 ? checked_add(sum, term) : checked_sub(sum, term);
  }
  if (sum < 0 || sum % static_cast<std::int64_t>(r) != 0)
    throw std::logic_error("necklace sum not divisible by its length");
  return static_cast<std::uint64_t>(sum / static_cast<std::int64_t>(r));
}

namespace detail {

class PredictionBuilder {
 public:
  explicit PredictionBuilder(std::string source) { out_.source = std::move(source); }

  void add(std::uint64_t length, std::int64_t count) {
    if (count < 0)
      throw integrality_violation(out_.source + ", length " + std::to_string(length), count, 1);
    if (count == 0) return;
    out_.by_length[length] += static_cast<std::uint64_t>(count);
    out_.total += static_cast<std::uint64_t>(count);
  }

  SpectrumPrediction finish() { return std::move(out_); }

 private:
  SpectrumPrediction out_;
};

inline std::int64_t as_signed(std::uint64_t v) {
  if (v > static_cast<std::uint64_t>(INT64_MAX)) throw overflow_error("value exceeds int64 range");
  return static_cast<std::int64_t>(v);
}

inline void require_prime(std::uint64_t p, bool odd) {
  if (!is_prime(p) || (odd && p == 2))
    throw std::invalid_argument(std::to_string(p) + " is not an " + (odd ? "odd " : "") + "prime");
}

}  // namespace detail

// Phi_p recurrence (order p - 1).
inline SpectrumPrediction predict_phi_p(std::uint64_t p, std::uint64_t m) {
  detail::require_prime(p, false);
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  const auto P = detail::as_signed(p);
  const auto power = checked_pow(detail::as_signed(m), p - 1);
  if (m % p == 0) {
    detail::PredictionBuilder b("Phi_p, case p | m");
    b.add(1, P);
    b.add(p, exact_quotient(power - P, P, "(m^(p-1) - p) / p"));
    return b.finish();
  }
  detail::PredictionBuilder b("Phi_p, case p does not divide m");
  b.add(1, 1);
  b.add(p, exact_quotient(power - 1, P, "(m^(p-1) - 1) / p"));
  return b.finish();
}

// Phi_2p recurrence for odd p. Moduli coprime to 2p are not covered.
inline SpectrumPrediction predict_phi_2p(std::uint64_t p, std::uint64_t m) {
  detail::require_prime(p, true);
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  const auto P = detail::as_signed(p);
  const auto power = checked_pow(detail::as_signed(m), p - 1);
  const auto two_pow = checked_pow<std::int64_t>(2, p - 1);
  const bool p_divides = m % p == 0;
  const bool two_divides = m % 2 == 0;
  if (p_divides && two_divides) {
    detail::PredictionBuilder b("Phi_2p, case 2 | m and p | m");
    b.add(1, 1);
    b.add(2, (P - 1) / 2);
    b.add(p, exact_quotient(two_pow - 1, P, "(2^(p-1) - 1) / p"));
    b.add(2 * p, exact_quotient(power - two_pow - P + 1, 2 * P, "(m^(p-1) - 2^(p-1) - p + 1) / 2p"));
    return b.finish();
  }
  if (p_divides) {
    detail::PredictionBuilder b("Phi_2p, case p | m");
    b.add(1, 1);
    b.add(2, (P - 1) / 2);
    b.add(2 * p, exact_quotient(power - P, 2 * P, "(m^(p-1) - p) / 2p"));
    return b.finish();
  }
  if (two_divides) {
    detail::PredictionBuilder b("Phi_2p, case 2 | m");
    b.add(1, 1);
    b.add(p, exact_quotient(two_pow - 1, P, "(2^(p-1) - 1) / p"));
    b.add(2 * p, exact_quotient(power - two_pow, 2 * P, "(m^(p-1) - 2^(p-1)) / 2p"));
    return b.finish();
  }
  throw uncovered_case("no Phi_2p count formula for m = " + std::to_string(m) +
                       " coprime to 2p = " + std::to_string(2 * p));
}

// Phi_{p^j} recurrence (order p^j - p^(j-1)).
inline SpectrumPrediction predict_phi_pj(std::uint64_t p, unsigned j, std::uint64_t m) {
  detail::require_prime(p, false);
  if (j == 0) throw std::invalid_argument("exponent j must be at least 1");
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  const auto top = checked_pow(detail::as_signed(p), j);
  const auto order = top - top / detail::as_signed(p);
  const auto power = checked_pow(detail::as_signed(m), static_cast<std::uint64_t>(order));
  if (m % p == 0) {
    detail::PredictionBuilder b("Phi_{p^j}, case p | m");
    std::int64_t covered = 0;
    std::int64_t length = 1;
    for (unsigned i = 0; i < j; ++i) {
      const auto count = detail::as_signed(necklace_count(p, static_cast<std::uint64_t>(length)));
      b.add(static_cast<std::uint64_t>(length), count);
      covered = checked_add(covered, checked_mul(length, count));
      length = checked_mul(length, detail::as_signed(p));
    }
    b.add(static_cast<std::uint64_t>(top),
          exact_quotient(power - covered, top, "(m^phi(p^j) - sum p^i M(p, p^i)) / p^j"));
    return b.finish();
  }
  detail::PredictionBuilder b("Phi_{p^j}, case p does not divide m");
  b.add(1, 1);
  b.add(static_cast<std::uint64_t>(top), exact_quotient(power - 1, top, "(m^phi(p^j) - 1) / p^j"));
  return b.finish();
}

// x^n - 1 recurrence a_k = a_{k-n}.
inline SpectrumPrediction predict_power_cycle(std::uint64_t n, std::uint64_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("predict_power_cycle needs n >= 1 and m >= 1");
  detail::PredictionBuilder b("x^n - 1");
  std::int64_t covered = 0;
  for (auto r : divisors(n)) {
    if (r == n) break;
    const auto count = detail::as_signed(necklace_count(m, r));
    b.add(r, count);
    covered = checked_add(covered, checked_mul(detail::as_signed(r), count));
  }
  const auto power = checked_pow(detail::as_signed(m), n);
  b.add(n, exact_quotient(power - covered, detail::as_signed(n), "(m^n - sum r M(m, r)) / n"));
  return b.finish();
}

struct SpectrumDiff {
  std::uint64_t length = 0;
  std::uint64_t predicted = 0;
  std::uint64_t observed = 0;
};

struct VerificationReport {
  std::string instance;
  std::string source;
  bool match = false;
  std::uint64_t predicted_total = 0;
  std::uint64_t observed_total = 0;
  Spectrum predicted;
  Spectrum observed;
  std::vector<SpectrumDiff> diffs;  // one entry per disagreeing length
};

inline VerificationReport verify_prediction(const SpectrumPrediction& pred, const Landscape& obs,
                                            std::string instance = {}) {
  VerificationReport rep;
  rep.instance = std::move(instance);
  rep.source = pred.source;
  rep.predicted = pred.by_length;
  rep.observed = obs.spectrum;
  rep.predicted_total = pred.total;
  rep.observed_total = obs.cycle_count();

  std::set<std::uint64_t> lengths;
  for (const auto& [len, n] : pred.by_length) lengths.insert(len);
  for (const auto& [len, n] : obs.spectrum) lengths.insert(len);
  for (auto len : lengths) {
    const auto p = pred.by_length.contains(len) ? pred.by_length.at(len) : 0;
    const auto o = obs.spectrum.contains(len) ? obs.spectrum.at(len) : 0;
    if (p != o) rep.diffs.push_back({len, p, o});
  }
  rep.match = rep.diffs.empty() && rep.predicted_total == rep.observed_total;
  return rep;
}

}  // namespace periodscape
