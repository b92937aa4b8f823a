#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace k3 {

// F9 = F3[i]/(i²+1); element a + b·i stored as a + 3b
class GF9 {
 public:
  constexpr GF9() = default;
  static constexpr GF9 from_index(int e) { return GF9(static_cast<std::uint8_t>(e)); }
  static constexpr GF9 make(int a, int b) { return GF9(static_cast<std::uint8_t>(((a % 3 + 3) % 3) + 3 * ((b % 3 + 3) % 3))); }
  static constexpr GF9 i() { return make(0, 1); }

  constexpr int index() const { return v_; }
  constexpr int re() const { return v_ % 3; }
  constexpr int im() const { return v_ / 3; }
  constexpr bool is_zero() const { return v_ == 0; }

  friend constexpr GF9 operator+(GF9 x, GF9 y) { return make(x.re() + y.re(), x.im() + y.im()); }
  friend constexpr GF9 operator-(GF9 x, GF9 y) { return make(x.re() - y.re(), x.im() - y.im()); }
  constexpr GF9 operator-() const { return make(-re(), -im()); }
  friend constexpr GF9 operator*(GF9 x, GF9 y) {
    return make(x.re() * y.re() - x.im() * y.im(), x.re() * y.im() + x.im() * y.re());
  }
  GF9 inverse() const;
  friend GF9 operator/(GF9 x, GF9 y) { return x * y.inverse(); }
  GF9& operator+=(GF9 o) { return *this = *this + o; }
  GF9& operator-=(GF9 o) { return *this = *this - o; }
  GF9& operator*=(GF9 o) { return *this = *this * o; }
  constexpr GF9 pow(unsigned n) const {
    GF9 r = make(1, 0), b = *this;
    while (n) {
      if (n & 1) r = r * b;
      b = b * b;
      n >>= 1;
    }
    return r;
  }
  constexpr GF9 frob() const { return make(re(), -im()); }  // x³
  friend constexpr bool operator==(GF9 x, GF9 y) { return x.v_ == y.v_; }
  friend constexpr bool operator!=(GF9 x, GF9 y) { return x.v_ != y.v_; }
  friend constexpr bool operator<(GF9 x, GF9 y) { return x.v_ < y.v_; }

  std::string str() const;

 private:
  constexpr explicit GF9(std::uint8_t v) : v_(v) {}
  std::uint8_t v_ = 0;
};

inline constexpr GF9 kZero9 = GF9::make(0, 0);
inline constexpr GF9 kOne9 = GF9::make(1, 0);

// F81 = F9[j]/(j² - (1+i)); element c0 + c1·j stored as c0 + 9·c1
class GF81 {
 public:
  GF81() = default;
  GF81(GF9 c0, GF9 c1 = kZero9) : v_(static_cast<std::uint8_t>(c0.index() + 9 * c1.index())) {}
  static GF81 from_index(int e) {
    GF81 r;
    r.v_ = static_cast<std::uint8_t>(e);
    return r;
  }
  int index() const { return v_; }
  GF9 c0() const { return GF9::from_index(v_ % 9); }
  GF9 c1() const { return GF9::from_index(v_ / 9); }
  bool is_zero() const { return v_ == 0; }
  bool in_gf9() const { return v_ < 9; }

  friend GF81 operator+(GF81 x, GF81 y) { return GF81(x.c0() + y.c0(), x.c1() + y.c1()); }
  friend GF81 operator-(GF81 x, GF81 y) { return GF81(x.c0() - y.c0(), x.c1() - y.c1()); }
  GF81 operator-() const { return GF81(-c0(), -c1()); }
  friend GF81 operator*(GF81 x, GF81 y);
  GF81 inverse() const;
  friend GF81 operator/(GF81 x, GF81 y) { return x * y.inverse(); }
  GF81& operator+=(GF81 o) { return *this = *this + o; }
  GF81& operator-=(GF81 o) { return *this = *this - o; }
  GF81& operator*=(GF81 o) { return *this = *this * o; }
  GF81 pow(unsigned n) const;
  friend bool operator==(GF81 x, GF81 y) { return x.v_ == y.v_; }
  friend bool operator!=(GF81 x, GF81 y) { return x.v_ != y.v_; }
  friend bool operator<(GF81 x, GF81 y) { return x.v_ < y.v_; }

  std::string str() const;

 private:
  std::uint8_t v_ = 0;
};

}  // namespace k3
