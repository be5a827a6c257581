#pragma once

// Absolute minima of integer Fibonacci-type sequences extended in both
// directions: Lucas/Fibonacci numbers at signed indices, the closed-form
// position distribution built from arctangents of Lucas ratios, and a
// Monte Carlo sampler to compare it with.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "periodscape/arith.hpp"
#include "periodscape/errors.hpp"
#include "periodscape/polynomials.hpp"

namespace periodscape {

namespace detail {

// Index-n term of the Fibonacci recurrence with the given seeds (x_0, x_1),
// for n >= 0.
inline std::int64_t forward_term(std::int64_t x0, std::int64_t x1, std::int64_t n) {
  if (n == 0) return x0;
  for (std::int64_t i = 1; i < n; ++i) {
    const auto next = checked_add(x0, x1);
    x0 = x1;
    x1 = next;
  }
  return x1;
}

}  // namespace detail

// F_{-n} = (-1)^(n+1) F_n
inline std::int64_t fibonacci(std::int64_t n) {
  if (n >= 0) return detail::forward_term(0, 1, n);
  const auto v = detail::forward_term(0, 1, -n);
  return (-n) % 2 == 0 ? -v : v;
}

// L_{-n} = (-1)^n L_n
inline std::int64_t lucas(std::int64_t n) {
  if (n >= 0) return detail::forward_term(2, 1, n);
  const auto v = detail::forward_term(2, 1, -n);
  return (-n) % 2 == 0 ? v : -v;
}

// Probability that the absolute minimum of a randomly directed initial pair
// sits at index n. P(0) = 1/4, P(n) = P(1 - n), and for n > 1 the arctangent
// difference between consecutive Lucas ratios.
inline double minima_probability(std::int64_t n) {
  if (n == 0 || n == 1) return 0.25;
  if (n < 0) return minima_probability(1 - n);
  // The even/odd arctangent differences collapse to a single arctangent:
  // atan(L_{n-2}/L_{n-1}) - atan(L_n/L_{n+1}) = (-1)^n atan(5 / D) with
  // D = L_{n-1} L_{n+1} + L_{n-2} L_n. This avoids cancellation in the tail.
  long double prev = 2.0L;  // L_0
  long double cur = 1.0L;   // L_1
  for (std::int64_t i = 1; i < n - 2 && std::isfinite(cur); ++i) {
    const auto next = prev + cur;
    prev = cur;
    cur = next;
  }
  const long double l_nm2 = n == 2 ? 2.0L : cur;
  const long double l_nm1 = n == 2 ? 1.0L : prev + cur;
  const long double l_n = l_nm2 + l_nm1;
  const long double l_np1 = l_nm1 + l_n;
  const long double d = l_nm1 * l_np1 + l_nm2 * l_n;
  if (!std::isfinite(d)) return 0.0;
  return static_cast<double>(std::atan(5.0L / d) / std::numbers::pi_v<long double>);
}

struct MinimumPosition {
  std::int64_t position = 0;
  std::optional<std::int64_t> tie;  // second index with the same |a_n|
  std::uint64_t magnitude = 0;
};

namespace detail {

// c = +1 for a_n = a_{n-1} + a_{n-2}, -1 for a_n = -a_{n-1} + a_{n-2}.
inline std::int64_t quadratic_sign(const Recurrence& r) {
  const auto& c = r.coeffs();
  if (c.size() != 2 || c[1] != 1 || (c[0] != 1 && c[0] != -1))
    throw std::invalid_argument("minimum search needs a_n = a_{n-1} + a_{n-2} or a_n = -a_{n-1} + a_{n-2}");
  return c[0];
}

inline int sign(std::int64_t v) { return (v > 0) - (v < 0); }

inline std::uint64_t magnitude(std::int64_t v) {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

}  // namespace detail

// Index of the smallest |a_n| over all integers n, with a_0 and a_1 given.
// Each direction stops once the next term is a sum of two same-signed
// non-zero contributions: from there on |a_n| grows strictly.
inline MinimumPosition find_minimum_position(std::int64_t a0, std::int64_t a1, const Recurrence& r,
                                             std::uint64_t step_cap = 10'000) {
  if (a0 == 0 && a1 == 0) throw std::invalid_argument("initial pair must not be (0, 0)");
  const auto c = detail::quadratic_sign(r);

  std::uint64_t best = std::min(detail::magnitude(a0), detail::magnitude(a1));
  std::vector<std::int64_t> at;
  const auto consider = [&](std::int64_t idx, std::int64_t v) {
    const auto mag = detail::magnitude(v);
    if (mag < best) {
      best = mag;
      at.assign(1, idx);
    } else if (mag == best) {
      at.push_back(idx);
    }
  };
  consider(0, a0);
  consider(1, a1);

  // forward: a_{n} = c a_{n-1} + a_{n-2}
  {
    std::int64_t prev = a0;
    std::int64_t cur = a1;
    for (std::int64_t n = 2;; ++n) {
      const auto lead = c * cur;
      if (detail::sign(lead) != 0 && detail::sign(lead) == detail::sign(prev)) break;
      if (static_cast<std::uint64_t>(n) > step_cap) throw std::runtime_error("minimum search exceeded step cap");
      const auto next = checked_add(lead, prev);
      consider(n, next);
      prev = cur;
      cur = next;
    }
  }
  // backward: a_{n-2} = a_n - c a_{n-1}
  {
    std::int64_t later = a1;
    std::int64_t cur = a0;
    for (std::int64_t n = -1;; --n) {
      const auto tail = -c * cur;
      if (detail::sign(tail) != 0 && detail::sign(tail) == detail::sign(later)) break;
      if (static_cast<std::uint64_t>(-n) > step_cap) throw std::runtime_error("minimum search exceeded step cap");
      const auto next = checked_add(later, tail);
      consider(n, next);
      later = cur;
      cur = next;
    }
  }

  std::sort(at.begin(), at.end());
  if (at.size() > 2) throw std::logic_error("more than two positions share the minimum");
  MinimumPosition out;
  out.position = at.front();
  if (at.size() == 2) out.tie = at.back();
  out.magnitude = best;
  return out;
}

struct MinimaDistribution {
  std::map<std::int64_t, double> probabilities;
  std::uint64_t samples = 0;  // 0 for the analytic distribution

  double at(std::int64_t n) const {
    const auto it = probabilities.find(n);
    return it == probabilities.end() ? 0.0 : it->second;
  }
};

// Analytic P(n) on [-N, N + 1].
inline MinimaDistribution analytic_distribution(std::int64_t N) {
  if (N < 0) throw std::invalid_argument("truncation bound must be non-negative");
  MinimaDistribution d;
  for (std::int64_t n = -N; n <= N + 1; ++n) d.probabilities[n] = minima_probability(n);
  return d;
}

inline double standard_error(double p, std::uint64_t samples) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
}

enum class SamplingKind { angle, integer_box };

struct SamplingMode {
  SamplingKind kind = SamplingKind::angle;
  std::int64_t box_half_width = 1000;  // integer_box draws from [-N, N]^2 minus the origin
};

struct SimulationOptions {
  std::size_t shards = 8;
  std::size_t threads = 0;  // 0: one per shard, capped by hardware concurrency
  // Angle samples are scaled by 2^angle_bits and rounded to integers.
  int angle_bits = 40;
};

namespace detail {

inline double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::int64_t uniform_in(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto range = static_cast<std::uint64_t>(hi - lo) + 1;
  const auto limit = UINT64_MAX - UINT64_MAX % range;
  std::uint64_t x = 0;
  do x = rng();
  while (x >= limit);
  return lo + static_cast<std::int64_t>(x % range);
}

// Counts in half-sample units so ties add exactly and merge order is irrelevant.
using HalfCounts = std::map<std::int64_t, std::uint64_t>;

inline HalfCounts run_shard(std::uint64_t count, const SamplingMode& mode, std::uint64_t seed, std::size_t shard,
                            const Recurrence& r, int angle_bits) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(shard)};
  std::mt19937_64 rng(seq);
  const double scale = std::ldexp(1.0, angle_bits);
  HalfCounts counts;
  for (std::uint64_t i = 0; i < count; ++i) {
    std::int64_t a0 = 0;
    std::int64_t a1 = 0;
    if (mode.kind == SamplingKind::angle) {
      const double theta = 2.0 * std::numbers::pi * unit_double(rng);
      a0 = std::llround(scale * std::cos(theta));
      a1 = std::llround(scale * std::sin(theta));
    } else {
      do {
        a0 = uniform_in(rng, -mode.box_half_width, mode.box_half_width);
        a1 = uniform_in(rng, -mode.box_half_width, mode.box_half_width);
      } while (a0 == 0 && a1 == 0);
    }
    const auto m = find_minimum_position(a0, a1, r);
    if (m.tie) {
      counts[m.position] += 1;
      counts[*m.tie] += 1;
    } else {
      counts[m.position] += 2;
    }
  }
  return counts;
}

}  // namespace detail

// Empirical distribution of minimum positions. Shard i draws from its own
// mt19937_64 stream seeded with (seed, i), so results depend only on
// (samples, mode, seed, shards), never on the thread count.
inline MinimaDistribution simulate_minima(std::uint64_t samples, const SamplingMode& mode, std::uint64_t seed,
                                          const Recurrence& r = fibonacci_recurrence(),
                                          const SimulationOptions& opts = {}) {
  if (samples == 0) throw std::invalid_argument("samples must be at least 1");
  if (opts.shards == 0) throw std::invalid_argument("shards must be at least 1");
  if (mode.kind == SamplingKind::integer_box && mode.box_half_width < 1)
    throw std::invalid_argument("box half-width must be at least 1");
  detail::quadratic_sign(r);

  const auto shards = opts.shards;
  std::vector<detail::HalfCounts> partial(shards);
  const auto per_shard = [&](std::size_t i) { return samples / shards + (i < samples % shards ? 1 : 0); };

  auto threads = opts.threads != 0 ? opts.threads : std::max<std::size_t>(1, std::thread::hardware_concurrency());
  threads = std::min(threads, shards);
  if (threads <= 1) {
    for (std::size_t i = 0; i < shards; ++i)
      partial[i] = detail::run_shard(per_shard(i), mode, seed, i, r, opts.angle_bits);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < shards; i += threads)
            partial[i] = detail::run_shard(per_shard(i), mode, seed, i, r, opts.angle_bits);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  detail::HalfCounts total;
  for (const auto& part : partial)
    for (const auto& [n, c] : part) total[n] += c;
  MinimaDistribution out;
  out.samples = samples;
  const double denom = 2.0 * static_cast<double>(samples);
  for (const auto& [n, c] : total) out.probabilities[n] = static_cast<double>(c) / denom;
  return out;
}

struct MediantRow {
  std::int64_t index = 0;
  Rational fibonacci_ratio;  // F_{i-1} / F_i
  Rational lower;            // L_{i-2} / L_{i-1}
  Rational upper;            // L_i / L_{i+1}
  Rational mediant;          // (L_{i-2} + L_i) / (L_{i-1} + L_{i+1})
  bool strictly_between = false;
  bool equals_mediant = false;
};

struct MediantReport {
  std::vector<MediantRow> rows;
  bool holds() const {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.strictly_between && r.equals_mediant; });
  }
};

inline MediantReport mediant_check(std::int64_t n) {
  if (n < 3) throw std::invalid_argument("mediant check needs n >= 3");
  MediantReport rep;
  for (std::int64_t i = 3; i <= n; ++i) {
    MediantRow row;
    row.index = i;
    row.fibonacci_ratio = Rational(fibonacci(i - 1), fibonacci(i));
    row.lower = Rational(lucas(i - 2), lucas(i - 1));
    row.upper = Rational(lucas(i), lucas(i + 1));
    row.mediant = Rational(checked_add(lucas(i - 2), lucas(i)), checked_add(lucas(i - 1), lucas(i + 1)));
    const auto& lo = row.lower < row.upper ? row.lower : row.upper;
    const auto& hi = row.lower < row.upper ? row.upper : row.lower;
    row.strictly_between = lo < row.fibonacci_ratio && row.fibonacci_ratio < hi;
    row.equals_mediant = row.fibonacci_ratio == row.mediant;
    rep.rows.push_back(row);
  }
  return rep;
}

struct LucasTieRow {
  std::int64_t index = 0;
  std::int64_t a0 = 0;
  std::int64_t a1 = 0;
  bool tie = false;
};

// Initial pairs on the Lucas-ratio boundaries must give two equal minima:
// a0/a1 = L_i/L_{i+1} or -L_i/L_{i-1} for the Fibonacci recurrence, and
// L_i/L_{i-1} or -L_i/L_{i+1} for its parity transform.
inline std::vector<LucasTieRow> lucas_tie_check(std::int64_t i_max, const Recurrence& r) {
  const auto c = detail::quadratic_sign(r);
  std::vector<LucasTieRow> rows;
  for (std::int64_t i = 0; i <= i_max; ++i) {
    const std::int64_t pairs[2][2] = {
        {lucas(i), c > 0 ? lucas(i + 1) : lucas(i - 1)},
        {-lucas(i), c > 0 ? lucas(i - 1) : lucas(i + 1)},
    };
    for (const auto& pr : pairs)
      rows.push_back({i, pr[0], pr[1], find_minimum_position(pr[0], pr[1], r).tie.has_value()});
  }
  return rows;
}

}  // namespace periodscape
