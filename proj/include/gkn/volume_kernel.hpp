#pragma once

// Extended-precision kernel for the Whitehead closed forms.  Intermediate
// terms of the color sums tower as far as e^{0.2 N} above the final value,
// so the N = 183 and N = 245 table columns need more than double (and more
// than long double) arithmetic.  The kernel is templated on the real type;
// long double covers N <= 150 and __float128 the rest.

#include <climits>
#include <cmath>
#include <vector>

#include "gkn/scalars.hpp"

#if defined(__GNUC__) && defined(__x86_64__)
#define GKN_HAVE_FLOAT128 1
#include <quadmath.h>
#endif

namespace gkn {

template <class R>
struct RealOps;

template <>
struct RealOps<long double> {
  static long double cos(long double x) { return ::cosl(x); }
  static long double sin(long double x) { return ::sinl(x); }
  static long double sqrt(long double x) { return ::sqrtl(x); }
  static long double ldexp(long double x, int e) { return ::ldexpl(x, e); }
  static int exponent(long double x) {
    int e = 0;
    ::frexpl(x, &e);
    return e;
  }
  static long double abs(long double x) { return ::fabsl(x); }
  static long double pi() { return 3.14159265358979323846264338327950288L; }
};

#ifdef GKN_HAVE_FLOAT128
template <>
struct RealOps<__float128> {
  static __float128 cos(__float128 x) { return ::cosq(x); }
  static __float128 sin(__float128 x) { return ::sinq(x); }
  static __float128 sqrt(__float128 x) { return ::sqrtq(x); }
  static __float128 ldexp(__float128 x, int e) { return ::ldexpq(x, e); }
  static int exponent(__float128 x) {
    int e = 0;
    ::frexpq(x, &e);
    return e;
  }
  static __float128 abs(__float128 x) { return ::fabsq(x); }
  static __float128 pi() { return __float128(2) * ::acosq(__float128(0)); }
};
#endif

// minimal complex type over R (std::complex is not reliable for __float128)
template <class R>
struct Cx {
  R re{}, im{};
  Cx() = default;
  Cx(R r) : re(r) {}
  Cx(R r, R i) : re(r), im(i) {}
  Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
  Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
  Cx operator-() const { return {-re, -im}; }
  Cx operator*(const Cx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cx operator*(R s) const { return {re * s, im * s}; }
  Cx operator/(const Cx& o) const {
    R d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Cx& operator+=(const Cx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cx& operator*=(const Cx& o) { return *this = *this * o; }
  Cx& operator*=(R s) {
    re *= s;
    im *= s;
    return *this;
  }
  R mag() const {
    R a = RealOps<R>::abs(re), b = RealOps<R>::abs(im);
    return a > b ? a : b;
  }
};

template <class R>
struct VolKernel {
  using C = Cx<R>;

  struct J2 {  // value, d/dmu, and half the second derivative
    C v{}, d1{}, d2{};
    J2() = default;
    J2(C x) : v(x) {}
    J2(C x, C a, C b) : v(x), d1(a), d2(b) {}
    J2 operator*(const J2& o) const {
      return {v * o.v, v * o.d1 + d1 * o.v, v * o.d2 + d1 * o.d1 + d2 * o.v};
    }
    J2& operator*=(const J2& o) { return *this = *this * o; }
    J2& operator+=(const J2& o) {
      v += o.v;
      d1 += o.d1;
      d2 += o.d2;
      return *this;
    }
  };

  int N;
  std::vector<C> ttab;
  mutable std::vector<J2> jtab;  // {mu + c} jets at integer mu, indexed by c mod 2N

  explicit VolKernel(int n) : N(n), ttab(4 * n) {
    const R PI = RealOps<R>::pi();
    // one accurate primitive root, then multiplicative fill with periodic
    // re-anchoring to keep the drift below the type's epsilon
    R a1 = PI / R(static_cast<double>(2 * N));
    C t1{RealOps<R>::cos(a1), RealOps<R>::sin(a1)};
    ttab[0] = {R(1), R(0)};
    for (int j = 1; j < 4 * N; ++j) {
      if (j % 64 == 0) {
        R a = PI * R(static_cast<double>(j)) / R(static_cast<double>(2 * N));
        ttab[j] = {RealOps<R>::cos(a), RealOps<R>::sin(a)};
      } else {
        ttab[j] = ttab[j - 1] * t1;
      }
    }
    ttab[2 * N] = {R(-1), R(0)};
    if (N % 2 == 0) ttab[N] = {R(0), R(1)};
  }

  C t_pow(long long e) const {
    long long m = e % (4LL * N);
    if (m < 0) m += 4LL * N;
    return ttab[static_cast<size_t>(m)];
  }
  C brace(long long k) const { return t_pow(2 * k) - t_pow(-2 * k); }
  C brace_plus(long long k) const { return t_pow(2 * k) + t_pow(-2 * k); }

  // {mu + a} as a jet in mu at the integer mu0; cached by (mu0 + a) mod 2N
  const J2& brace_jet(long long mu0, long long a) const {
    if (jtab.empty()) {
      jtab.resize(2 * N);
      C ip{R(0), RealOps<R>::pi() / R(N)};
      for (int c = 0; c < 2 * N; ++c) {
        C up = t_pow(2 * c), dn = t_pow(-2 * c);
        jtab[c] = {up - dn, ip * (up + dn), ip * ip * (up - dn) * R(0.5)};
      }
    }
    long long c = (mu0 + a) % (2 * N);
    if (c < 0) c += 2 * N;
    return jtab[static_cast<size_t>(c)];
  }

  struct Scaled {
    J2 v;
    long e = 0;
    void renorm() {
      R m = jmag(v);
      if (m == R(0)) return;
      int k = RealOps<R>::exponent(m);
      if (k > 256 || k < -256) {
        R sc = RealOps<R>::ldexp(R(1), -k);
        v.v *= sc;
        v.d1 *= sc;
        v.d2 *= sc;
        e += k;
      }
    }
  };

  static R jmag(const J2& j) {
    R m = j.v.mag();
    R a = j.d1.mag();
    if (a > m) m = a;
    a = j.d2.mag();
    return a > m ? a : m;
  }

  static J2 sum_scaled(const std::vector<Scaled>& terms) {
    long emax = LONG_MIN;
    for (const auto& t : terms) {
      R m = jmag(t.v);
      if (m == R(0)) continue;
      emax = std::max(emax, t.e + RealOps<R>::exponent(m));
    }
    if (emax == LONG_MIN) return J2(C(R(0)));
    // compensated accumulation; the color sums cancel deeply
    J2 acc, comp;
    for (const auto& t : terms) {
      long sh = t.e - emax;
      if (sh < -20000) continue;
      R sc = RealOps<R>::ldexp(R(1), static_cast<int>(sh));
      J2 x{t.v.v * sc - comp.v, t.v.d1 * sc - comp.d1, t.v.d2 * sc - comp.d2};
      J2 nv{acc.v + x.v, acc.d1 + x.d1, acc.d2 + x.d2};
      comp = J2{(nv.v - acc.v) - x.v, (nv.d1 - acc.d1) - x.d1, (nv.d2 - acc.d2) - x.d2};
      acc = nv;
    }
    int fin = static_cast<int>(std::max(std::min(emax, 15000L), -15000L));
    R sc = RealOps<R>::ldexp(R(1), fin);
    return J2{acc.v * sc, acc.d1 * sc, acc.d2 * sc};
  }

  struct Ado {
    C value, dmu;
    long mag_exp = 0;  // log2 of the largest term in the color sum
  };

  Ado whitehead_ado_at_integer(long long f, long long m) const {
    const int j0 = N / 2;
    Scaled term;
    term.v = J2(C(R(1)));
    for (int l = 0; l < 2 * j0 + 1; ++l) {
      term.v *= brace_jet(m, j0 - l);
      term.renorm();
    }
    {
      C c0 = (j0 % 2 == 1) ? C(R(-1)) : C(R(1));
      c0 *= t_pow(static_cast<long long>(-j0) * j0 - 3LL * j0);
      term.v *= J2(c0);
      for (int l = 1; l <= j0; ++l) {
        C b = brace(l);
        term.v *= J2(b * b * b);
        term.renorm();
      }
      for (int mm = N + 1; mm <= 2 * j0 + 1; ++mm) term.v *= J2(C(R(1)) / brace(mm));
    }
    std::vector<Scaled> terms{term};
    for (int j = j0 + 1; j <= N - 1; ++j) {
      C b = brace(j);
      C r = -t_pow(-2LL * j - 2) * b * b * b / (brace(2 * j) * brace(2 * j + 1));
      term.v *= J2(r);
      term.v *= brace_jet(m, j);
      term.v *= brace_jet(m, -j);
      term.renorm();
      terms.push_back(term);
    }
    long mag_exp = LONG_MIN;
    for (const auto& t : terms) {
      R mm = jmag(t.v);
      if (!(mm == R(0))) mag_exp = std::max(mag_exp, t.e + RealOps<R>::exponent(mm));
    }
    J2 num = sum_scaled(terms);
    {
      long long twog = m * m - 2LL * N * m - 1 + 2LL * N;  // ribbon framing exponent
      C base = t_pow(f * twog);
      C ip{R(0), RealOps<R>::pi() / R(N)};
      C gp = ip * R(static_cast<double>(f)) * R(static_cast<double>(m - N));
      J2 qfg{base, base * gp, base * (gp * gp + ip * R(static_cast<double>(f))) * R(0.5)};
      num = J2(C(R(0), R(-1))) * qfg * num;
    }
    C dprime{R(0)};
    dprime.re = R(2 * N) * RealOps<R>::pi() * ((m % 2 == 0) ? R(1) : R(-1));
    Ado out;
    out.value = num.d1 / dprime;
    out.dmu = num.d2 / dprime;
    out.mag_exp = mag_exp == LONG_MIN ? 0 : mag_exp;
    return out;
  }

  // first-order dual scaled accumulation for the Jones derivative branch
  struct D1 {
    C v{}, d{};
    D1() = default;
    D1(C x) : v(x) {}
    D1(C x, C dd) : v(x), d(dd) {}
    D1 operator*(const D1& o) const { return D1(v * o.v, v * o.d + d * o.v); }
    D1& operator*=(const D1& o) { return *this = *this * o; }
  };

  C whitehead_jones(long long f, int t) const {
    const int half = N / 2;
    long long twog = static_cast<long long>(t) * t - 2LL * N * t - 1 + 2LL * N;
    C qfg = t_pow(f * twog);
    C sgn_t = (t % 2 == 0) ? C(R(-1)) : C(R(1));
    C total{R(0)};
    {
      int j_hi = (t > half ? half : t) - 1;
      C term{R(0)};
      long e = 0;
      std::vector<std::pair<C, long>> ts;
      for (int j = 0; j <= j_hi; ++j) {
        if (j == 0) {
          term = brace(t) / brace(1);
        } else {
          C b = brace(j);
          term *= -t_pow(-2LL * j - 2) * b * b * brace(t + j) * brace(t - j) * b /
                  (brace(2 * j) * brace(2 * j + 1));
          R m = term.mag();
          if (m > R(0)) {
            int k = RealOps<R>::exponent(m);
            if (k > 256 || k < -256) {
              term *= RealOps<R>::ldexp(R(1), -k);
              e += k;
            }
          }
        }
        ts.push_back({term, e});
      }
      total = scaled_csum(ts);
    }
    total *= sgn_t * qfg;
    if (t > half) {
      C ip{R(0), RealOps<R>::pi() / R(N)};
      auto brace_d = [&](long long a) -> D1 {
        C up = t_pow(2 * (t + a)), dn = t_pow(-2 * (t + a));
        D1 r;
        r.v = up - dn;
        r.d = ip * (up + dn);
        return r;
      };
      D1 term(C(R(1)));
      long e = 0;
      auto renorm = [&]() {
        R m = term.v.mag();
        R b = term.d.mag();
        if (b > m) m = b;
        if (m == R(0)) return;
        int k = RealOps<R>::exponent(m);
        if (k > 256 || k < -256) {
          R sc = RealOps<R>::ldexp(R(1), -k);
          term.v *= sc;
          term.d *= sc;
          e += k;
        }
      };
      std::vector<std::pair<D1, long>> ts;
      for (int l = 0; l < 2 * half + 1; ++l) {
        term *= brace_d(half - l);
        renorm();
      }
      {
        C c0 = (half % 2 == 1) ? C(R(-1)) : C(R(1));
        c0 *= t_pow(static_cast<long long>(-half) * half - 3LL * half);
        term *= D1(c0);
        for (int l = 1; l <= half; ++l) {
          C b = brace(l);
          term *= D1(b * b * b);
          renorm();
        }
        for (int mm = 1; mm <= 2 * half + 1 - N; ++mm) term *= D1(C(R(1)) / brace(mm));
      }
      ts.push_back({term, e});
      for (int j = half + 1; j <= t - 1; ++j) {
        C b = brace(j);
        C r = -t_pow(-2LL * j - 2) * b * b * b /
              (brace(2 * j + 1 - N) * brace(2 * j - N));
        term *= D1(r);
        term *= brace_d(j);
        term *= brace_d(-j);
        renorm();
        ts.push_back({term, e});
      }
      long emax = LONG_MIN;
      for (auto& [v, ee] : ts) {
        R m = v.v.mag();
        R bb = v.d.mag();
        if (bb > m) m = bb;
        if (m > R(0)) emax = std::max(emax, ee + RealOps<R>::exponent(m));
      }
      C dacc{R(0)};
      for (auto& [v, ee] : ts) {
        long sh = ee - emax;
        if (sh < -20000) continue;
        dacc += v.d * RealOps<R>::ldexp(R(1), static_cast<int>(sh));
      }
      C deriv = dacc * RealOps<R>::ldexp(R(1), static_cast<int>(std::max(
                                                    std::min(emax, 15000L), -15000L)));
      int nm = ((N % 4) + 4) % 4;
      C iN = nm == 0   ? C(R(1))
             : nm == 1 ? C(R(0), R(1))
             : nm == 2 ? C(R(-1))
                       : C(R(0), R(-1));
      C two_pi{R(2) * RealOps<R>::pi()};
      total += iN * sgn_t * qfg * deriv / two_pi;
    }
    return total;
  }

  static C scaled_csum(const std::vector<std::pair<C, long>>& ts) {
    long emax = LONG_MIN;
    for (auto& [v, e] : ts) {
      R m = v.mag();
      if (m > R(0)) emax = std::max(emax, e + RealOps<R>::exponent(m));
    }
    if (emax == LONG_MIN) return C(R(0));
    C acc{R(0)};
    for (auto& [v, e] : ts) {
      long sh = e - emax;
      if (sh < -20000) continue;
      acc += v * RealOps<R>::ldexp(R(1), static_cast<int>(sh));
    }
    return acc * RealOps<R>::ldexp(R(1), static_cast<int>(std::max(std::min(emax, 15000L),
                                                                   -15000L)));
  }

  // the p = 1 assembly over odd colors; also reports the cancellation scale
  C gk_so3_unnormalized(long long f, double* scale_rel = nullptr) const {
    std::vector<Ado> ado(2 * N);
    for (long long m = 1; m < 2 * N; m += 2) ado[m] = whitehead_ado_at_integer(f, m);
    C acc{R(0)};
    R scale{R(0)};
    C term = -ado[N].value;
    acc += term;
    scale = std::max<R>(scale, term.mag());
    C sgn = (N % 4 == 1) ? C(R(1)) : C(R(-1));
    C i2pi{R(0), R(2) * RealOps<R>::pi()};
    for (long long t = 0; t <= (N - 3) / 2; ++t) {
      long long u = 2 * t + 1;
      C trm = brace_plus(u) * ado[u].value;
      C dterm = (ado[u].dmu - ado[2 * N - u].dmu) * C(R(N)) / i2pi;
      trm += brace(u) * (dterm + ado[u].value * R(static_cast<double>(f)) * R(N) -
                         sgn * whitehead_jones(f, static_cast<int>(u)) * R(static_cast<double>(f)));
      acc += trm;
      scale = std::max<R>(scale, trm.mag());
    }
    if (scale_rel)
      *scale_rel = scale == R(0) ? 0.0 : static_cast<double>(acc.mag() / scale);
    C pref = sgn;
    pref = pref / C(RealOps<R>::sqrt(R(N)));
    return pref * acc;
  }
};

}  // namespace gkn
