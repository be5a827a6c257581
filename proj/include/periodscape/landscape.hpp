#pragma once

// Period landscape of a recurrence modulo m: the cycle decomposition of the
// shift map on (Z/mZ)^k, found by walking every state once.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "periodscape/arith.hpp"
#include "periodscape/errors.hpp"
#include "periodscape/polynomials.hpp"

namespace periodscape {

using Residue = std::uint64_t;

// length -> number of cycles with that length
using Spectrum = std::map<std::uint64_t, std::uint64_t>;

struct EnumerationLimits {
  std::uint64_t state_cap = std::uint64_t{1} << 27;
  // Explicit cycles are only retained when m^k is at most this.
  std::uint64_t keep_cycles_cap = std::uint64_t{1} << 20;
};

// A periodic residue sequence in canonical form: its minimal period,
// rotated to the lexicographically least representative.
class Cycle {
 public:
  const std::vector<Residue>& residues() const noexcept { return residues_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::size_t length() const noexcept { return residues_.size(); }

  friend bool operator==(const Cycle&, const Cycle&) = default;
  friend auto operator<=>(const Cycle& a, const Cycle& b) {
    if (auto c = a.modulus_ <=> b.modulus_; c != 0) return c;
    if (auto c = a.residues_.size() <=> b.residues_.size(); c != 0) return c;
    return a.residues_ <=> b.residues_;
  }

 private:
  Cycle(std::vector<Residue> residues, std::uint64_t modulus)
      : residues_(std::move(residues)), modulus_(modulus) {}

  friend Cycle canonicalize(std::span<const Residue>, std::uint64_t);

  std::vector<Residue> residues_;
  std::uint64_t modulus_ = 1;
};

namespace detail {

// Smallest p dividing n such that seq is p-periodic.
inline std::size_t minimal_period(std::span<const Residue> seq) {
  const auto n = seq.size();
  std::vector<std::size_t> border(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    auto k = border[i - 1];
    while (k > 0 && seq[i] != seq[k]) k = border[k - 1];
    if (seq[i] == seq[k]) ++k;
    border[i] = k;
  }
  const auto p = n - border[n - 1];
  return n % p == 0 ? p : n;
}

// Start offset of the lexicographically least rotation.
inline std::size_t least_rotation(std::span<const Residue> s) {
  const auto n = s.size();
  std::size_t i = 0;
  std::size_t j = 1;
  std::size_t k = 0;
  while (i < n && j < n && k < n) {
    const auto a = s[(i + k) % n];
    const auto b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b)
      i += k + 1;
    else
      j += k + 1;
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

}  // namespace detail

inline Cycle canonicalize(std::span<const Residue> seq, std::uint64_t modulus) {
  if (seq.empty()) throw std::invalid_argument("cannot canonicalize an empty sequence");
  if (modulus == 0) throw std::invalid_argument("modulus must be positive");
  for (auto v : seq)
    if (v >= modulus) throw std::invalid_argument("residue out of range for modulus");
  const auto period = detail::minimal_period(seq);
  const auto head = seq.first(period);
  const auto start = detail::least_rotation(head);
  std::vector<Residue> out;
  out.reserve(period);
  for (std::size_t i = 0; i < period; ++i) out.push_back(head[(start + i) % period]);
  return Cycle(std::move(out), modulus);
}

inline Cycle canonicalize(std::initializer_list<Residue> seq, std::uint64_t modulus) {
  return canonicalize(std::span<const Residue>(seq.begin(), seq.size()), modulus);
}

// Entrywise reduction modulo a divisor of the cycle's modulus.
inline Cycle reduce_cycle(const Cycle& c, std::uint64_t d) {
  if (d == 0 || c.modulus() % d != 0) throw not_divisor(d, c.modulus());
  std::vector<Residue> reduced(c.residues());
  for (auto& v : reduced) v %= d;
  return canonicalize(reduced, d);
}

// Concatenated digits, the notation used for small moduli in period tables.
inline std::string to_digit_string(const Cycle& c) {
  if (c.modulus() > 10) throw std::invalid_argument("digit strings need modulus <= 10");
  std::string out;
  out.reserve(c.length());
  for (auto v : c.residues()) out.push_back(static_cast<char>('0' + v));
  return out;
}

// One step of the recurrence modulo m on a sliding window of k residues.
// Construction validates the enumeration preconditions.
class ShiftMap {
 public:
  ShiftMap(const Recurrence& r, std::uint64_t modulus, const EnumerationLimits& limits = {})
      : modulus_(modulus), order_(r.order()) {
    if (modulus == 0) throw std::invalid_argument("modulus must be positive");
    const auto trailing = reduce_mod(r.trailing(), modulus);
    if (std::gcd(trailing, modulus) != 1) throw non_invertible(r.trailing(), modulus);
    if (!pow_within(modulus, order_, limits.state_cap, state_count_))
      throw cap_exceeded(std::to_string(modulus) + "^" + std::to_string(order_) +
                             " states exceed the cap of " + std::to_string(limits.state_cap),
                         limits.state_cap);
    top_weight_ = state_count_ / modulus;
    for (std::size_t lag = 1; lag <= order_; ++lag) {
      const auto c = reduce_mod(r.at_lag(lag), modulus);
      if (c != 0) terms_.emplace_back(lag, c);
    }
  }

  std::uint64_t modulus() const noexcept { return modulus_; }
  std::size_t order() const noexcept { return order_; }
  std::uint64_t state_count() const noexcept { return state_count_; }

  // Mixed-radix index of a state (a_0 + a_1 m + ... + a_{k-1} m^{k-1}).
  std::uint64_t encode(std::span<const Residue> state) const {
    std::uint64_t idx = 0;
    for (std::size_t i = order_; i-- > 0;) idx = idx * modulus_ + state[i];
    return idx;
  }

  void decode(std::uint64_t idx, std::span<Residue> state) const {
    for (std::size_t i = 0; i < order_; ++i) {
      state[i] = idx % modulus_;
      idx /= modulus_;
    }
  }

  // Walker over a ring buffer holding the current window.
  class Walker {
   public:
    Walker(const ShiftMap& map, std::uint64_t idx) : map_(&map), ring_(map.order_), idx_(idx) {
      map.decode(idx, ring_);
    }

    std::uint64_t index() const noexcept { return idx_; }
    Residue front() const noexcept { return ring_[head_]; }

    void step() {
      const auto k = map_->order_;
      const auto m = map_->modulus_;
      std::uint64_t next = 0;
      for (const auto& [lag, coef] : map_->terms_) {
        auto pos = head_ + k - lag;
        if (pos >= k) pos -= k;
        next += mul_mod(coef, ring_[pos], m);
        if (next >= m) next -= m;
      }
      idx_ = idx_ / m + next * map_->top_weight_;
      ring_[head_] = next;
      if (++head_ == k) head_ = 0;
    }

   private:
    const ShiftMap* map_;
    std::vector<Residue> ring_;
    std::size_t head_ = 0;
    std::uint64_t idx_;
  };

 private:
  std::uint64_t modulus_;
  std::size_t order_;
  std::uint64_t state_count_ = 0;
  std::uint64_t top_weight_ = 0;
  std::vector<std::pair<std::size_t, std::uint64_t>> terms_;
};

struct Landscape {
  std::uint64_t modulus = 1;
  Recurrence recurrence{std::vector<std::int64_t>{1}};
  Spectrum spectrum;
  // Present only when cycles were requested and m^k <= keep_cycles_cap.
  std::optional<std::vector<Cycle>> cycles;

  std::uint64_t cycle_count() const {
    std::uint64_t n = 0;
    for (const auto& [len, mult] : spectrum) n += mult;
    return n;
  }
  std::uint64_t state_count() const {
    std::uint64_t n = 0;
    for (const auto& [len, mult] : spectrum) n += len * mult;
    return n;
  }
};

namespace detail {

class Bitmap {
 public:
  explicit Bitmap(std::uint64_t bits) : words_((bits + 63) / 64, 0) {}
  bool test(std::uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::uint64_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }

  // First clear bit at or after i, or limit.
  std::uint64_t next_clear(std::uint64_t i, std::uint64_t limit) const noexcept {
    while (i < limit) {
      const auto w = ~words_[i >> 6] >> (i & 63);
      if (w != 0) return std::min(limit, i + static_cast<std::uint64_t>(__builtin_ctzll(w)));
      i = (i | 63) + 1;
    }
    return limit;
  }

 private:
  std::vector<std::uint64_t> words_;
};

}  // namespace detail

inline Landscape enumerate_landscape(const Recurrence& r, std::uint64_t modulus, bool keep_cycles,
                                     const EnumerationLimits& limits = {}) {
  const ShiftMap map(r, modulus, limits);
  const auto states = map.state_count();
  const bool keep = keep_cycles && states <= limits.keep_cycles_cap;

  Landscape out{modulus, r, {}, std::nullopt};
  std::vector<Cycle> cycles;
  std::vector<Residue> seq;
  detail::Bitmap visited(states);

  for (auto start = visited.next_clear(0, states); start < states;
       start = visited.next_clear(start + 1, states)) {
    ShiftMap::Walker walker(map, start);
    std::uint64_t length = 0;
    seq.clear();
    do {
      visited.set(walker.index());
      if (keep) seq.push_back(walker.front());
      walker.step();
      ++length;
    } while (walker.index() != start);
    ++out.spectrum[length];
    if (keep) cycles.push_back(canonicalize(seq, modulus));
  }
  if (keep) {
    std::sort(cycles.begin(), cycles.end());
    out.cycles = std::move(cycles);
  }
  return out;
}

// Canonical cycle through one initial state (a_0, ..., a_{k-1}).
inline Cycle cycle_of_state(const Recurrence& r, std::uint64_t modulus,
                            std::span<const Residue> state, const EnumerationLimits& limits = {}) {
  const ShiftMap map(r, modulus, limits);
  if (state.size() != map.order())
    throw std::invalid_argument("initial state must have one entry per recurrence lag");
  for (auto v : state)
    if (v >= modulus) throw std::invalid_argument("initial state entry out of range");
  const auto start = map.encode(state);
  ShiftMap::Walker walker(map, start);
  std::vector<Residue> seq;
  do {
    seq.push_back(walker.front());
    walker.step();
  } while (walker.index() != start);
  return canonicalize(seq, modulus);
}

// Pisano period pi(m): length of the Fibonacci cycle through (0, 1).
inline std::uint64_t pisano_period(std::uint64_t modulus, const EnumerationLimits& limits = {}) {
  const std::vector<Residue> start{0, modulus > 1 ? Residue{1} : Residue{0}};
  return cycle_of_state(fibonacci_recurrence(), modulus, start, limits).length();
}

namespace detail {

using Matrix = std::vector<std::vector<std::uint64_t>>;

inline Matrix identity_matrix(std::size_t k, std::uint64_t m) {
  Matrix id(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) id[i][i] = 1 % m;
  return id;
}

inline Matrix multiply(const Matrix& a, const Matrix& b, std::uint64_t m) {
  const auto k = a.size();
  Matrix out(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < k; ++j) out[i][j] = (out[i][j] + mul_mod(a[i][l], b[l][j], m)) % m;
    }
  return out;
}

inline Matrix power(Matrix base, std::uint64_t e, std::uint64_t m) {
  auto result = identity_matrix(base.size(), m);
  while (e > 0) {
    if (e & 1U) result = multiply(result, base, m);
    base = multiply(base, base, m);
    e >>= 1U;
  }
  return result;
}

}  // namespace detail

// Companion matrix acting on column states (a_0, ..., a_{k-1})^T.
inline detail::Matrix companion_matrix(const Recurrence& r, std::uint64_t modulus) {
  const auto k = r.order();
  detail::Matrix c(k, std::vector<std::uint64_t>(k, 0));
  for (std::size_t i = 0; i + 1 < k; ++i) c[i][i + 1] = 1 % modulus;
  for (std::size_t j = 0; j < k; ++j) c[k - 1][j] = reduce_mod(r.at_lag(k - j), modulus);
  return c;
}

// Multiplicative order of the companion matrix modulo m, found by successive
// multiplication and confirmed by square-and-multiply.
inline std::uint64_t companion_order(const Recurrence& r, std::uint64_t modulus,
                                     std::uint64_t step_cap = 1'000'000) {
  const auto c = companion_matrix(r, modulus);
  const auto id = detail::identity_matrix(r.order(), modulus);
  auto acc = c;
  std::uint64_t order = 1;
  while (acc != id) {
    if (++order > step_cap) throw matrix_order_cap_exceeded(step_cap);
    acc = detail::multiply(acc, c, modulus);
  }
  if (detail::power(c, order, modulus) != id)
    throw std::logic_error("companion order not confirmed by fast powering");
  return order;
}

// True iff the orbit length of state under the companion matrix divides the
// matrix order. The orbit is traced with matrix-vector products, independent
// of ShiftMap.
inline bool matrix_order_check(const Recurrence& r, std::uint64_t modulus,
                               std::span<const Residue> state, const EnumerationLimits& limits = {},
                               std::uint64_t step_cap = 1'000'000) {
  const ShiftMap validate(r, modulus, limits);
  if (state.size() != r.order()) throw std::invalid_argument("state size must equal the order");
  const auto c = companion_matrix(r, modulus);
  const std::vector<std::uint64_t> start(state.begin(), state.end());
  auto v = start;
  std::uint64_t length = 0;
  do {
    std::vector<std::uint64_t> next(v.size(), 0);
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j) next[i] = (next[i] + mul_mod(c[i][j], v[j], modulus)) % modulus;
    v = std::move(next);
    if (++length > step_cap) throw matrix_order_cap_exceeded(step_cap);
  } while (v != start);
  return companion_order(r, modulus, step_cap) % length == 0;
}

}  // namespace periodscape
