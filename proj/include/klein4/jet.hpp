#pragma once

// Forward-mode second-order jets.
//
// Taylor2 carries (f, f', f'') of a holomorphic function of one complex
// variable; Jet2 carries the real 2-jet (f, f_x, f_y, f_xx, f_xy, f_yy) of a
// function of z = x + iy. Holomorphic pieces are evaluated in Taylor2 and
// lifted to Jet2, where complex conjugation acts componentwise.

#include <cmath>
#include <complex>
#include <type_traits>

namespace klein4 {

using cplx = std::complex<double>;

template <class T>
struct Taylor2 {
  T v{}, d1{}, d2{};

  Taylor2() = default;
  constexpr Taylor2(T value, T first = T{}, T second = T{}) : v(value), d1(first), d2(second) {}

  /// The identity function z evaluated at z0.
  static constexpr Taylor2 variable(T z0) { return {z0, T(1), T(0)}; }

  Taylor2 operator-() const { return {-v, -d1, -d2}; }

  Taylor2& operator+=(const Taylor2& o) { v += o.v; d1 += o.d1; d2 += o.d2; return *this; }
  Taylor2& operator-=(const Taylor2& o) { v -= o.v; d1 -= o.d1; d2 -= o.d2; return *this; }
  Taylor2& operator*=(const Taylor2& o) {
    d2 = d2 * o.v + T(2) * d1 * o.d1 + v * o.d2;
    d1 = d1 * o.v + v * o.d1;
    v *= o.v;
    return *this;
  }
  Taylor2& operator/=(const Taylor2& o) {
    const T h = v / o.v;
    const T h1 = (d1 - h * o.d1) / o.v;
    const T h2 = (d2 - T(2) * h1 * o.d1 - h * o.d2) / o.v;
    v = h; d1 = h1; d2 = h2;
    return *this;
  }
  Taylor2& operator+=(const T& s) { v += s; return *this; }
  Taylor2& operator-=(const T& s) { v -= s; return *this; }
  Taylor2& operator*=(const T& s) { v *= s; d1 *= s; d2 *= s; return *this; }
  Taylor2& operator/=(const T& s) { v /= s; d1 /= s; d2 /= s; return *this; }

  friend Taylor2 operator+(Taylor2 a, const Taylor2& b) { return a += b; }
  friend Taylor2 operator-(Taylor2 a, const Taylor2& b) { return a -= b; }
  friend Taylor2 operator*(Taylor2 a, const Taylor2& b) { return a *= b; }
  friend Taylor2 operator/(Taylor2 a, const Taylor2& b) { return a /= b; }
  friend Taylor2 operator+(Taylor2 a, const T& s) { return a += s; }
  friend Taylor2 operator+(const T& s, Taylor2 a) { return a += s; }
  friend Taylor2 operator-(Taylor2 a, const T& s) { return a -= s; }
  friend Taylor2 operator-(const T& s, const Taylor2& a) { return Taylor2(s) - a; }
  friend Taylor2 operator*(Taylor2 a, const T& s) { return a *= s; }
  friend Taylor2 operator*(const T& s, Taylor2 a) { return a *= s; }
  friend Taylor2 operator/(Taylor2 a, const T& s) { return a /= s; }
  friend Taylor2 operator/(const T& s, const Taylor2& a) { return Taylor2(s) / a; }
};

template <class T>
Taylor2<T> exp(const Taylor2<T>& a) {
  using std::exp;
  const T e = exp(a.v);
  return {e, e * a.d1, e * (a.d2 + a.d1 * a.d1)};
}

template <class T>
struct Jet2 {
  T v{}, x{}, y{}, xx{}, xy{}, yy{};

  Jet2() = default;
  constexpr Jet2(T value) : v(value) {}
  constexpr Jet2(T value, T dx, T dy, T dxx, T dxy, T dyy)
      : v(value), x(dx), y(dy), xx(dxx), xy(dxy), yy(dyy) {}

  Jet2 operator-() const { return {-v, -x, -y, -xx, -xy, -yy}; }

  Jet2& operator+=(const Jet2& o) {
    v += o.v; x += o.x; y += o.y; xx += o.xx; xy += o.xy; yy += o.yy;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    v -= o.v; x -= o.x; y -= o.y; xx -= o.xx; xy -= o.xy; yy -= o.yy;
    return *this;
  }
  Jet2& operator*=(const Jet2& o) {
    const Jet2 a = *this;
    v = a.v * o.v;
    x = a.x * o.v + a.v * o.x;
    y = a.y * o.v + a.v * o.y;
    xx = a.xx * o.v + T(2) * a.x * o.x + a.v * o.xx;
    xy = a.xy * o.v + a.x * o.y + a.y * o.x + a.v * o.xy;
    yy = a.yy * o.v + T(2) * a.y * o.y + a.v * o.yy;
    return *this;
  }
  Jet2& operator/=(const Jet2& o) {
    const Jet2 a = *this;
    const T inv = T(1) / o.v;
    v = a.v * inv;
    x = (a.x - v * o.x) * inv;
    y = (a.y - v * o.y) * inv;
    xx = (a.xx - T(2) * x * o.x - v * o.xx) * inv;
    xy = (a.xy - x * o.y - y * o.x - v * o.xy) * inv;
    yy = (a.yy - T(2) * y * o.y - v * o.yy) * inv;
    return *this;
  }
  Jet2& operator+=(const T& s) { v += s; return *this; }
  Jet2& operator-=(const T& s) { v -= s; return *this; }
  Jet2& operator*=(const T& s) {
    v *= s; x *= s; y *= s; xx *= s; xy *= s; yy *= s;
    return *this;
  }
  Jet2& operator/=(const T& s) { return *this *= (T(1) / s); }

  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
  friend Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
  friend Jet2 operator+(Jet2 a, const T& s) { return a += s; }
  friend Jet2 operator+(const T& s, Jet2 a) { return a += s; }
  friend Jet2 operator-(Jet2 a, const T& s) { return a -= s; }
  friend Jet2 operator-(const T& s, const Jet2& a) { return Jet2(s) - a; }
  friend Jet2 operator*(Jet2 a, const T& s) { return a *= s; }
  friend Jet2 operator*(const T& s, Jet2 a) { return a *= s; }
  friend Jet2 operator/(Jet2 a, const T& s) { return a /= s; }
  friend Jet2 operator/(const T& s, const Jet2& a) { return Jet2(s) / a; }
};

using CJet = Jet2<cplx>;
using RJet = Jet2<double>;

/// z = x + iy seeded at z0.
inline CJet complex_variable(cplx z0) { return {z0, cplx(1, 0), cplx(0, 1), 0.0, 0.0, 0.0}; }

inline RJet real_part(const CJet& a) {
  return {a.v.real(), a.x.real(), a.y.real(), a.xx.real(), a.xy.real(), a.yy.real()};
}
inline RJet imag_part(const CJet& a) {
  return {a.v.imag(), a.x.imag(), a.y.imag(), a.xx.imag(), a.xy.imag(), a.yy.imag()};
}
inline CJet conj(const CJet& a) {
  return {std::conj(a.v), std::conj(a.x), std::conj(a.y),
          std::conj(a.xx), std::conj(a.xy), std::conj(a.yy)};
}
inline CJet to_complex(const RJet& a) { return {a.v, a.x, a.y, a.xx, a.xy, a.yy}; }

/// Lift a holomorphic 2-jet to real partials: d/dx = d/dz, d/dy = i d/dz.
inline CJet lift(const Taylor2<cplx>& t) {
  const cplx i(0, 1);
  return {t.v, t.d1, i * t.d1, t.d2, i * t.d2, -t.d2};
}

/// Composition h(u) for a scalar function given its value and two derivatives at u.v.
template <class T>
Jet2<T> compose(const Jet2<T>& u, T h, T h1, T h2) {
  return {h,
          h1 * u.x,
          h1 * u.y,
          h2 * u.x * u.x + h1 * u.xx,
          h2 * u.x * u.y + h1 * u.xy,
          h2 * u.y * u.y + h1 * u.yy};
}

inline RJet sqrt(const RJet& u) {
  const double s = std::sqrt(u.v);
  return compose(u, s, 0.5 / s, -0.25 / (s * u.v));
}

}  // namespace klein4
