#pragma once

#include <doctest.h>

#include <random>

#include "k3/verify.hpp"

namespace k3test {

// one context per test binary; expensive objects are built on first use
inline k3::Context& ctx() {
  static k3::Context c(k3::VerifyOptions{});
  return c;
}

inline k3::IntMatrix imat(const std::vector<std::vector<long>>& rows) {
  k3::IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline k3::IntVec ivec(const std::vector<long>& v) { return k3::IntVec(v.begin(), v.end()); }
inline k3::RatVec rvec(const std::vector<long>& v) { return k3::RatVec(v.begin(), v.end()); }

inline k3::IntMatrix a2() { return imat({{-2, 1}, {1, -2}}); }

inline k3::IntMatrix e8_negative() {
  // Dynkin diagram E8, negative definite
  k3::IntMatrix g = k3::IntMatrix(8, 8);
  for (int i = 0; i < 8; ++i) g(i, i) = -2;
  auto join = [&](int a, int b) { g(a, b) = g(b, a) = 1; };
  for (int i = 0; i < 6; ++i) join(i, i + 1);
  join(4, 7);
  return g;
}

// random positive definite Gram B·Bᵗ with small entries
inline k3::IntMatrix random_definite(std::mt19937_64& rng, std::size_t n, int spread = 2) {
  for (;;) {
    k3::IntMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) b(i, j) = static_cast<long>(rng() % (2 * spread + 1)) - spread;
    if (k3::determinant(b) != 0) return b * k3::transpose(b);
  }
}

inline k3::IntMatrix negated(k3::IntMatrix m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
  return m;
}

}  // namespace k3test
