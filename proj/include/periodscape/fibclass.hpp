#pragma once

// Fibonacci-specific analysis modulo primes and prime powers: Pisano periods,
// the A / B1 / B2 prime classes, self-similarity across p^k, weight
// conservation under reduction, and the reversal symmetry between a
// recurrence and its parity transform.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "periodscape/arith.hpp"
#include "periodscape/errors.hpp"
#include "periodscape/landscape.hpp"
#include "periodscape/polynomials.hpp"

namespace periodscape {

// Euler's criterion, mapped to {-1, 0, 1}.
inline int legendre_symbol(std::int64_t a, std::uint64_t p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("legendre_symbol needs an odd prime");
  const auto r = pow_mod(reduce_mod(a, p), (p - 1) / 2, p);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

// Number of zero terms in one period of the Fibonacci sequence 0, 1, 1, 2, ... mod m.
inline std::uint64_t zeros_in_pisano(std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("modulus must be positive");
  std::uint64_t a = 0;
  std::uint64_t b = 1 % m;
  std::uint64_t zeros = 0;
  do {
    if (a == 0) ++zeros;
    const auto next = (a + b) % m;
    a = b;
    b = next;
  } while (!(a == 0 && b == 1 % m));
  return zeros;
}

enum class PrimeClass { A, B1, B2, special };

inline const char* to_string(PrimeClass c) {
  switch (c) {
    case PrimeClass::A: return "A";
    case PrimeClass::B1: return "B1";
    case PrimeClass::B2: return "B2";
    case PrimeClass::special: return "special";
  }
  return "?";
}

struct PrimeClassification {
  std::uint64_t p = 0;
  int legendre5 = 0;
  PrimeClass class_label = PrimeClass::special;
  std::optional<std::uint64_t> alpha;  // empty for the special primes 2 and 5
  std::uint64_t pisano = 0;
  std::uint64_t zero_count = 0;
  std::uint64_t predicted_total = 0;
  Spectrum predicted_spectrum;  // empty for special primes
  Spectrum observed_spectrum;

  bool has_prediction() const noexcept { return class_label != PrimeClass::special; }
  bool matches() const { return !has_prediction() || predicted_spectrum == observed_spectrum; }
};

inline PrimeClassification classify_prime(std::uint64_t p, const EnumerationLimits& limits = {}) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");

  PrimeClassification out;
  out.p = p;
  out.pisano = pisano_period(p, limits);
  out.zero_count = zeros_in_pisano(p);
  out.observed_spectrum = enumerate_landscape(fibonacci_recurrence(), p, false, limits).spectrum;
  if (p == 2 || p == 5) {
    out.legendre5 = p == 5 ? 0 : -1;  // Kronecker symbol (5/2), since 5 = -3 mod 8
    return out;
  }
  out.legendre5 = legendre_symbol(5, p);
  const auto pi = out.pisano;
  const auto fail = [&](const std::string& why) {
    throw classification_violation("p = " + std::to_string(p) + ": " + why);
  };

  const auto r5 = p % 5;
  if (r5 == 2 || r5 == 3) {
    if (out.legendre5 != -1) fail("p = 2, 3 mod 5 but (5/p) != -1");
    if ((2 * (p + 1)) % pi != 0) fail("pisano period does not divide 2(p+1)");
    const auto alpha = 2 * (p + 1) / pi;
    if (alpha % 2 == 0) fail("class A alpha is even");
    out.class_label = PrimeClass::A;
    out.alpha = alpha;
    out.predicted_spectrum = {{1, 1}, {pi, alpha * (p - 1) / 2}};
  } else {
    if (out.legendre5 != 1) fail("p = 1, 4 mod 5 but (5/p) != 1");
    if ((p - 1) % pi != 0) fail("pisano period does not divide p-1");
    const auto alpha = (p - 1) / pi;
    out.alpha = alpha;
    if (out.zero_count == 1) {
      if (pi % 2 != 0) fail("B2 prime with odd pisano period");
      out.class_label = PrimeClass::B2;
      out.predicted_spectrum = {{1, 1}, {pi / 2, 2 * alpha}, {pi, p * alpha}};
    } else {
      out.class_label = PrimeClass::B1;
      out.predicted_spectrum = {{1, 1}, {pi, alpha * (p + 1)}};
    }
  }

  // Zero count decides the subclass; the spectrum shape must agree with it.
  const auto shape = out.observed_spectrum.size();
  if (out.class_label == PrimeClass::B2 && shape != 3) fail("B2 by zero count but spectrum has " + std::to_string(shape) + " lengths");
  if (out.class_label != PrimeClass::B2 && shape != 2) fail(std::string(to_string(out.class_label)) + " prime but spectrum has " + std::to_string(shape) + " lengths");

  for (const auto& [len, n] : out.predicted_spectrum) out.predicted_total += n;
  return out;
}

struct CongruenceReport {
  std::uint64_t p = 0;
  std::uint64_t residue20 = 0;
  bool constrained = false;  // p = 11, 19 mod 20 must be B2
  PrimeClass observed = PrimeClass::special;
  bool holds = true;
};

inline CongruenceReport congruence_class_check(std::uint64_t p, const EnumerationLimits& limits = {}) {
  if (!is_prime(p) || (p % 5 != 1 && p % 5 != 4))
    throw std::invalid_argument("congruence check needs a prime p = 1, 4 mod 5");
  CongruenceReport rep;
  rep.p = p;
  rep.residue20 = p % 20;
  rep.constrained = rep.residue20 == 11 || rep.residue20 == 19;
  rep.observed = classify_prime(p, limits).class_label;
  rep.holds = !rep.constrained || rep.observed == PrimeClass::B2;
  return rep;
}

struct SpectrumLevel {
  std::uint64_t modulus = 0;
  Spectrum spectrum;
};

struct TransitionCheck {
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  bool persists = true;       // every (length, count) at p^k is still there at p^(k+1)
  bool new_lengths = true;    // lengths(p^(k+1)) = lengths(p^k) + p * {l > 1}
  std::optional<bool> scaling;          // not evaluated for special primes
  std::optional<bool> middle_constant;  // B2 only
  std::vector<std::string> violations;

  bool holds() const {
    return persists && new_lengths && scaling.value_or(true) && middle_constant.value_or(true);
  }
};

struct SelfSimilarityReport {
  std::uint64_t p = 0;
  PrimeClass class_label = PrimeClass::special;
  std::optional<std::uint64_t> alpha;
  std::vector<SpectrumLevel> levels;
  std::vector<TransitionCheck> transitions;

  // Special primes get raw transitions only; their checks are informational.
  bool exempt() const noexcept { return class_label == PrimeClass::special; }

  bool holds() const {
    return std::all_of(transitions.begin(), transitions.end(), [](const auto& t) { return t.holds(); });
  }
};

namespace detail {

inline std::uint64_t count_at(const Spectrum& s, std::uint64_t len) {
  const auto it = s.find(len);
  return it == s.end() ? 0 : it->second;
}

}  // namespace detail

// Levels p, p^2, ..., p^k_max of the Fibonacci landscape and the checks
// between consecutive levels. For B2 primes the middle chain (pi/2) p^i keeps
// 2 alpha cycles, and the main chain absorbs the rest: its new count is
// p * count(main) + (p - 1) * count(middle) / 2.
inline SelfSimilarityReport check_self_similarity(std::uint64_t p, unsigned k_max,
                                                  const EnumerationLimits& limits = {}) {
  if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
  if (k_max == 0) throw std::invalid_argument("k_max must be at least 1");

  SelfSimilarityReport rep;
  rep.p = p;
  const auto cls = classify_prime(p, limits);
  rep.class_label = cls.class_label;
  rep.alpha = cls.alpha;

  std::uint64_t modulus = 1;
  for (unsigned k = 1; k <= k_max; ++k) {
    modulus = checked_mul(modulus, p);
    rep.levels.push_back({modulus, enumerate_landscape(fibonacci_recurrence(), modulus, false, limits).spectrum});
  }

  const bool special = cls.class_label == PrimeClass::special;
  std::uint64_t main_top = cls.pisano;
  std::uint64_t middle_top = cls.pisano / 2;
  for (std::size_t k = 0; k + 1 < rep.levels.size(); ++k) {
    const auto& lo = rep.levels[k];
    const auto& hi = rep.levels[k + 1];
    TransitionCheck t;
    t.from = lo.modulus;
    t.to = hi.modulus;

    for (const auto& [len, n] : lo.spectrum) {
      if (detail::count_at(hi.spectrum, len) != n) {
        t.persists = false;
        t.violations.push_back("length " + std::to_string(len) + " count changed from " + std::to_string(n) +
                               " to " + std::to_string(detail::count_at(hi.spectrum, len)));
      }
    }

    std::set<std::uint64_t> expected;
    for (const auto& [len, n] : lo.spectrum) {
      expected.insert(len);
      if (len > 1) expected.insert(len * p);
    }
    std::set<std::uint64_t> actual;
    for (const auto& [len, n] : hi.spectrum) actual.insert(len);
    if (expected != actual) {
      t.new_lengths = false;
      t.violations.push_back("length set at " + std::to_string(hi.modulus) + " is not lengths(" +
                             std::to_string(lo.modulus) + ") extended by p * l");
    }

    if (!special) {
      const bool b2 = cls.class_label == PrimeClass::B2;
      const auto middle_lo = b2 ? detail::count_at(lo.spectrum, middle_top) : 0;
      const auto expected_main = p * detail::count_at(lo.spectrum, main_top) + (p - 1) * middle_lo / 2;
      const auto actual_main = detail::count_at(hi.spectrum, main_top * p);
      t.scaling = actual_main == expected_main;
      if (!*t.scaling)
        t.violations.push_back("length " + std::to_string(main_top * p) + " has " + std::to_string(actual_main) +
                               " cycles, expected " + std::to_string(expected_main));
      if (b2) {
        const auto two_alpha = 2 * *cls.alpha;
        const auto mid_hi = detail::count_at(hi.spectrum, middle_top * p);
        t.middle_constant = middle_lo == two_alpha && mid_hi == two_alpha;
        if (!*t.middle_constant)
          t.violations.push_back("middle length " + std::to_string(middle_top * p) + " has " +
                                 std::to_string(mid_hi) + " cycles, expected " + std::to_string(two_alpha));
      }
    }
    rep.transitions.push_back(std::move(t));
    main_top *= p;
    middle_top *= p;
  }
  return rep;
}

struct WeightGroup {
  Cycle base;
  std::vector<Cycle> lifted;
  Rational base_weight;
  Rational lifted_weight;
  bool conserved() const { return base_weight == lifted_weight; }
};

struct WeightReport {
  std::uint64_t m = 0;
  std::uint64_t d = 0;
  std::vector<WeightGroup> groups;  // ordered by base cycle

  bool conserved() const {
    return std::all_of(groups.begin(), groups.end(), [](const auto& g) { return g.conserved(); });
  }
};

namespace detail {

inline const std::vector<Cycle>& require_cycles(const Landscape& l) {
  if (!l.cycles)
    throw cap_exceeded("modulus " + std::to_string(l.modulus) + " is above the keep-cycles cap", 0);
  return *l.cycles;
}

}  // namespace detail

// Groups the cycles mod m by their reduction mod d and compares the weights
// length / modulus^2 on both sides.
inline WeightReport check_weight_preservation(std::uint64_t m, std::uint64_t d,
                                              const Recurrence& r = fibonacci_recurrence(),
                                              const EnumerationLimits& limits = {}) {
  if (r.order() != 2) throw std::invalid_argument("weight preservation is defined for order-2 recurrences");
  if (d == 0 || m == 0 || m % d != 0) throw not_divisor(d, m);
  const auto upper = enumerate_landscape(r, m, true, limits);
  const auto lower = enumerate_landscape(r, d, true, limits);
  const auto& upper_cycles = detail::require_cycles(upper);
  const auto& lower_cycles = detail::require_cycles(lower);

  const auto m2 = checked_mul(static_cast<std::int64_t>(m), static_cast<std::int64_t>(m));
  const auto d2 = checked_mul(static_cast<std::int64_t>(d), static_cast<std::int64_t>(d));
  std::map<Cycle, WeightGroup> groups;
  for (const auto& c : lower_cycles)
    groups.emplace(c, WeightGroup{c, {}, Rational(static_cast<std::int64_t>(c.length()), d2), Rational(0)});
  for (const auto& c : upper_cycles) {
    const auto base = reduce_cycle(c, d);
    const auto it = groups.find(base);
    if (it == groups.end())
      throw lift_mismatch("a cycle modulo " + std::to_string(m) + " reduces to a sequence that is not a cycle modulo " +
                          std::to_string(d));
    it->second.lifted.push_back(c);
    it->second.lifted_weight += Rational(static_cast<std::int64_t>(c.length()), m2);
  }

  WeightReport rep{m, d, {}};
  for (auto& [key, g] : groups) rep.groups.push_back(std::move(g));
  return rep;
}

struct ChiralReport {
  Recurrence recurrence{std::vector<std::int64_t>{1}};
  Recurrence transform{std::vector<std::int64_t>{1}};
  std::uint64_t m = 0;
  Spectrum spectrum;
  Spectrum transform_spectrum;
  bool spectra_equal = false;
  bool reversal_checked = false;  // false when cycles were above the keep cap
  bool reversal_bijective = false;
  std::optional<Cycle> first_unpaired;

  bool holds() const { return spectra_equal && (!reversal_checked || reversal_bijective); }
};

inline Cycle reversed(const Cycle& c) {
  std::vector<Residue> rev(c.residues().rbegin(), c.residues().rend());
  return canonicalize(rev, c.modulus());
}

// Compares the landscape of r with that of its parity transform, and checks
// that sequence reversal maps the cycles of one bijectively onto the other.
inline ChiralReport check_chiral(const Recurrence& r, std::uint64_t m, const EnumerationLimits& limits = {}) {
  ChiralReport rep;
  rep.recurrence = r;
  rep.transform = parity_transform(r);
  rep.m = m;
  const auto a = enumerate_landscape(rep.recurrence, m, true, limits);
  const auto b = enumerate_landscape(rep.transform, m, true, limits);
  rep.spectrum = a.spectrum;
  rep.transform_spectrum = b.spectrum;
  rep.spectra_equal = a.spectrum == b.spectrum;
  if (!a.cycles || !b.cycles) return rep;

  rep.reversal_checked = true;
  const std::set<Cycle> partners(b.cycles->begin(), b.cycles->end());
  std::set<Cycle> images;
  for (const auto& c : *a.cycles) {
    auto image = reversed(c);
    if (!partners.contains(image)) {
      if (!rep.first_unpaired) rep.first_unpaired = c;
      continue;
    }
    images.insert(std::move(image));
  }
  rep.reversal_bijective = !rep.first_unpaired && images.size() == a.cycles->size() &&
                           images.size() == partners.size();
  return rep;
}

}  // namespace periodscape
