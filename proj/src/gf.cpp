#include "k3/gf.hpp"

#include <stdexcept>

#include "k3/exact.hpp"

namespace k3 {

namespace {

struct Tables81 {
  std::array<std::array<std::uint8_t, 81>, 81> mul{};
  std::array<std::uint8_t, 81> inv{};
  Tables81() {
    const GF9 q = GF9::make(1, 1);  // j² = 1 + i
    for (int a = 0; a < 81; ++a)
      for (int b = 0; b < 81; ++b) {
        GF9 a0 = GF9::from_index(a % 9), a1 = GF9::from_index(a / 9);
        GF9 b0 = GF9::from_index(b % 9), b1 = GF9::from_index(b / 9);
        GF9 c0 = a0 * b0 + q * a1 * b1;
        GF9 c1 = a0 * b1 + a1 * b0;
        mul[a][b] = static_cast<std::uint8_t>(c0.index() + 9 * c1.index());
      }
    for (int a = 1; a < 81; ++a)
      for (int b = 1; b < 81; ++b)
        if (mul[a][b] == 1) inv[a] = static_cast<std::uint8_t>(b);
  }
};

const Tables81& tables81() {
  static const Tables81 t;
  return t;
}

}  // namespace

GF9 GF9::inverse() const {
  if (is_zero()) throw Error(ErrorCode::Singular, "inverse of zero in F9");
  return pow(7);
}

std::string GF9::str() const {
  int a = re(), b = im();
  auto sgn = [](int x) { return x == 2 ? -1 : x; };
  int sa = sgn(a), sb = sgn(b);
  if (sb == 0) return std::to_string(sa);
  std::string ip = sb == 1 ? "i" : "-i";
  if (sa == 0) return ip;
  return std::to_string(sa) + (sb == 1 ? "+i" : "-i");
}

GF81 operator*(GF81 x, GF81 y) { return GF81::from_index(tables81().mul[x.v_][y.v_]); }

GF81 GF81::inverse() const {
  if (is_zero()) throw Error(ErrorCode::Singular, "inverse of zero in F81");
  return from_index(tables81().inv[v_]);
}

GF81 GF81::pow(unsigned n) const {
  GF81 r(kOne9), b = *this;
  while (n) {
    if (n & 1) r = r * b;
    b = b * b;
    n >>= 1;
  }
  return r;
}

std::string GF81::str() const {
  if (c1().is_zero()) return c0().str();
  return "(" + c0().str() + ")+(" + c1().str() + ")j";
}

}  // namespace k3
