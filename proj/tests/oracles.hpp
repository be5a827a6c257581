#pragma once

// Slow, obviously-correct reference implementations used to cross-check the
// library. Nothing here shares code with include/periodscape.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Seq = std::vector<std::int64_t>;

inline std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Least rotation by trying every rotation of the shortest repeating block.
inline Seq canonical(const Seq& s) {
  std::size_t period = s.size();
  for (std::size_t p = 1; p <= s.size(); ++p) {
    if (s.size() % p) continue;
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) ok = s[i] == s[i % p];
    if (ok) {
      period = p;
      break;
    }
  }
  Seq block(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(period));
  Seq best = block;
  for (std::size_t r = 1; r < period; ++r) {
    Seq rot;
    for (std::size_t i = 0; i < period; ++i) rot.push_back(block[(r + i) % period]);
    best = std::min(best, rot);
  }
  return best;
}

inline std::string digits(const Seq& s) {
  std::string out;
  for (auto v : s) out += static_cast<char>('0' + v);
  return out;
}

struct Enumeration {
  std::map<std::uint64_t, std::uint64_t> spectrum;
  std::set<Seq> cycles;
};

// a_n = sum_i coeffs[i] a_{n-1-i} (mod m), every state walked until it returns.
inline Enumeration enumerate(const Seq& coeffs, std::int64_t m) {
  const auto k = coeffs.size();
  Enumeration out;
  std::set<Seq> seen;
  Seq state(k, 0);
  while (true) {
    if (!seen.count(state)) {
      Seq cur = state;
      Seq firsts;
      do {
        seen.insert(cur);
        firsts.push_back(cur[0]);
        std::int64_t next = 0;
        for (std::size_t i = 0; i < k; ++i) next += coeffs[i] * cur[k - 1 - i];
        cur.erase(cur.begin());
        cur.push_back(mod(next, m));
      } while (cur != state);
      const auto c = canonical(firsts);
      if (out.cycles.insert(c).second) ++out.spectrum[c.size()];
    }
    std::size_t i = 0;
    while (i < k && ++state[i] == m) state[i++] = 0;
    if (i == k) break;
  }
  return out;
}

// Aperiodic strings of length r over m letters, counted up to rotation.
inline std::uint64_t necklaces(std::int64_t m, std::size_t r) {
  std::set<Seq> classes;
  Seq s(r, 0);
  while (true) {
    const auto c = canonical(s);
    if (c.size() == r) classes.insert(c);
    std::size_t i = 0;
    while (i < r && ++s[i] == m) s[i++] = 0;
    if (i == r) break;
  }
  return classes.size();
}

inline Seq poly_mul(const Seq& a, const Seq& b) {
  Seq out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

inline std::uint64_t pisano(std::int64_t m) {
  if (m == 1) return 1;
  std::int64_t a = 0, b = 1;
  std::uint64_t n = 0;
  do {
    const auto c = (a + b) % m;
    a = b;
    b = c;
    ++n;
  } while (a != 0 || b != 1);
  return n;
}

inline int legendre(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  for (std::int64_t x = 1; x < p; ++x)
    if (x * x % p == a) return 1;
  return -1;
}

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

// Fraction of directions theta whose real-valued sequence
// a_0 = cos, a_1 = sin has its smallest |a_n| at each index, swept over a
// uniform grid of angles.
inline std::map<std::int64_t, double> minima_sweep(int c, std::size_t steps) {
  std::map<std::int64_t, double> hist;
  for (std::size_t s = 0; s < steps; ++s) {
    const double th = 2.0 * std::numbers::pi * (static_cast<double>(s) + 0.5) / static_cast<double>(steps);
    std::map<std::int64_t, double> terms;
    double p = std::cos(th), q = std::sin(th);
    terms[0] = p;
    terms[1] = q;
    for (int n = 2; n < 60; ++n) {
      const double r = c * q + p;
      terms[n] = r;
      p = q;
      q = r;
    }
    p = std::sin(th);
    q = std::cos(th);
    for (int n = -1; n > -60; --n) {
      const double r = p - c * q;  // a_{n} = a_{n+2} - c a_{n+1}
      terms[n] = r;
      p = q;
      q = r;
    }
    std::int64_t arg = 0;
    double best = 1e300;
    for (const auto& [n, v] : terms)
      if (std::abs(v) < best) {
        best = std::abs(v);
        arg = n;
      }
    hist[arg] += 1.0 / static_cast<double>(steps);
  }
  return hist;
}

}  // namespace oracle
