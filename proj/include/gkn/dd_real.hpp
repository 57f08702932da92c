#pragma once

// Double-double arithmetic over a base float type.  dd<long double> gives
// ~38 significant digits on x87 hardware and covers the deepest-cancelling
// table cells (f = -1, 5 at N = 245 lose ~25 digits); dd<__float128> is the
// slow bulletproof fallback.

#include "gkn/volume_kernel.hpp"

namespace gkn {

namespace detail_dd {

template <class B>
struct BaseOps;

template <>
struct BaseOps<long double> {
  static long double fma_err(long double a, long double b, long double p) {
    // Dekker split: 64-bit mantissa
    constexpr long double split = 4294967297.0L;  // 2^32 + 1
    long double ca = split * a;
    long double ahi = ca - (ca - a);
    long double alo = a - ahi;
    long double cb = split * b;
    long double bhi = cb - (cb - b);
    long double blo = b - bhi;
    return ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
  }
  static long double sqrt(long double x) { return ::sqrtl(x); }
  static long double ldexp(long double x, int e) { return ::ldexpl(x, e); }
  static int exponent(long double x) {
    int e = 0;
    ::frexpl(x, &e);
    return e;
  }
  static long double abs(long double x) { return ::fabsl(x); }
  static long double pi_hi() { return 3.14159265358979323846264338327950288L; }
  static long double pi_lo() { return ::sinl(pi_hi()); }
  static double to_double(long double x) { return static_cast<double>(x); }
};

#ifdef GKN_HAVE_FLOAT128
template <>
struct BaseOps<__float128> {
  static __float128 fma_err(__float128 a, __float128 b, __float128 p) {
    // Dekker split (113-bit mantissa); fmaq in libquadmath is far slower
    const __float128 S = __float128(144115188075855872.0) + __float128(1);  // 2^57 + 1
    __float128 ca = S * a;
    __float128 ahi = ca - (ca - a);
    __float128 alo = a - ahi;
    __float128 cb = S * b;
    __float128 bhi = cb - (cb - b);
    __float128 blo = b - bhi;
    return ((ahi * bhi - p) + ahi * blo + alo * bhi) + alo * blo;
  }
  static __float128 sqrt(__float128 x) { return ::sqrtq(x); }
  static __float128 ldexp(__float128 x, int e) { return ::ldexpq(x, e); }
  static int exponent(__float128 x) {
    int e = 0;
    ::frexpq(x, &e);
    return e;
  }
  static __float128 abs(__float128 x) { return ::fabsq(x); }
  static __float128 pi_hi() { return __float128(2) * ::acosq(__float128(0)); }
  static __float128 pi_lo() { return ::sinq(pi_hi()); }
  static double to_double(__float128 x) { return static_cast<double>(x); }
};
#endif

}  // namespace detail_dd

template <class B>
struct dd {
  using Ops = detail_dd::BaseOps<B>;
  B hi = 0, lo = 0;

  dd() = default;
  dd(int x) : hi(x) {}
  dd(double x) : hi(x) {}
  dd(B h, B l) : hi(h), lo(l) {}

  static dd two_sum(B a, B b) {
    B s = a + b;
    B bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
  }
  static dd quick_two_sum(B a, B b) {
    B s = a + b;
    return {s, b - (s - a)};
  }
  static dd two_prod(B a, B b) {
    B p = a * b;
    return {p, Ops::fma_err(a, b, p)};
  }

  dd operator+(const dd& o) const {
    dd s = two_sum(hi, o.hi);
    s.lo += lo + o.lo;
    return quick_two_sum(s.hi, s.lo);
  }
  dd operator-() const { return {-hi, -lo}; }
  dd operator-(const dd& o) const { return *this + (-o); }
  dd operator*(const dd& o) const {
    dd p = two_prod(hi, o.hi);
    p.lo += hi * o.lo + lo * o.hi;
    return quick_two_sum(p.hi, p.lo);
  }
  dd operator/(const dd& o) const {
    B q1 = hi / o.hi;
    dd r = *this - o * dd(q1, B(0));
    B q2 = r.hi / o.hi;
    r = r - o * dd(q2, B(0));
    B q3 = r.hi / o.hi;
    dd q = quick_two_sum(q1, q2);
    return q + dd(q3, B(0));
  }
  dd& operator+=(const dd& o) { return *this = *this + o; }
  dd& operator*=(const dd& o) { return *this = *this * o; }
  bool operator>(const dd& o) const { return hi > o.hi || (hi == o.hi && lo > o.lo); }
  bool operator<(const dd& o) const { return o > *this; }
  bool operator==(const dd& o) const { return hi == o.hi && lo == o.lo; }
  explicit operator double() const { return Ops::to_double(hi); }
};

template <class B>
struct RealOps<dd<B>> {
  using D = dd<B>;
  using Ops = detail_dd::BaseOps<B>;

  static D pi() { return {Ops::pi_hi(), Ops::pi_lo()}; }
  static D abs(const D& x) { return x.hi < 0 ? -x : x; }
  static D ldexp(const D& x, int e) { return {Ops::ldexp(x.hi, e), Ops::ldexp(x.lo, e)}; }
  static int exponent(const D& x) { return Ops::exponent(x.hi); }
  static D sqrt(const D& a) {
    B y = Ops::sqrt(a.hi);
    D yy(y, B(0));
    D r = (a - yy * yy) / (D(2) * yy);
    return yy + r;
  }
  static void sincos(const D& x, D& s, D& c) {
    D half_pi = pi() * D(0.5);
    long k = std::lround(static_cast<double>(x.hi / half_pi.hi));
    D r = x - half_pi * D(static_cast<double>(k));
    D sr, cr;
    taylor(r, sr, cr);
    switch (((k % 4) + 4) % 4) {
      case 0:
        s = sr;
        c = cr;
        break;
      case 1:
        s = cr;
        c = -sr;
        break;
      case 2:
        s = -sr;
        c = -cr;
        break;
      default:
        s = -cr;
        c = sr;
        break;
    }
  }
  static D cos(const D& x) {
    D s, c;
    sincos(x, s, c);
    return c;
  }
  static D sin(const D& x) {
    D s, c;
    sincos(x, s, c);
    return s;
  }

 private:
  static void taylor(const D& r, D& s, D& c) {
    D r2 = r * r;
    s = D(0);
    c = D(0);
    D term(1);
    for (int k = 0; k < 48; ++k) {
      c += term;
      term = -(term * r2) / D(static_cast<double>((2 * k + 1) * (2 * k + 2)));
      if (Ops::abs(term.hi) < B(1e-75)) break;
    }
    term = r;
    for (int k = 0; k < 48; ++k) {
      s += term;
      term = -(term * r2) / D(static_cast<double>((2 * k + 2) * (2 * k + 3)));
      if (Ops::abs(term.hi) < B(1e-75)) break;
    }
  }
};

using ddl = dd<long double>;
#ifdef GKN_HAVE_FLOAT128
using ddq = dd<__float128>;
#endif

}  // namespace gkn
