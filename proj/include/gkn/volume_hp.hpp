#pragma once

// High-precision Whitehead GK~^{SO(3)} for the table sweep.  The assembly
// runs over dd<long double> inputs; colors whose internal terms tower close
// to the top of the whole sum are recomputed in dd<__float128> and spliced
// in.  ADO(2N - mu) = ADO(mu) (the bracket window is odd under the flip and
// so is the sine), so only colors up to N are ever computed and the
// derivative difference is 2 d/dmu ADO(u).

#include "gkn/dd_real.hpp"

namespace gkn {

namespace detail_hp {

template <class R>
struct GkParts {
  using K = VolKernel<R>;
  std::vector<typename K::Ado> ado;  // indexed by odd u = 1..N
  std::vector<Cx<R>> jones;          // indexed by odd u
};

template <class R>
GkParts<R> compute_parts(const VolKernel<R>& k, long long f, const std::vector<char>* mask) {
  GkParts<R> p;
  const int N = k.N;
  p.ado.resize(N + 1);
  p.jones.resize(N + 1);
  for (long long u = 1; u <= N; u += 2) {
    if (mask && !(*mask)[u]) continue;
    p.ado[u] = k.whitehead_ado_at_integer(f, u);
    if (u < N) p.jones[u] = k.whitehead_jones(f, static_cast<int>(u));
  }
  return p;
}

inline ddl to_ddl(double x) { return ddl(x); }
#ifdef GKN_HAVE_FLOAT128
inline ddl to_ddl(const ddq& x) {
  long double h = static_cast<long double>(x.hi);
  long double l = static_cast<long double>(x.hi - __float128(h)) +
                  static_cast<long double>(x.lo);
  return ddl(h, l);
}
inline Cx<ddl> to_ddl(const Cx<ddq>& x) { return {to_ddl(x.re), to_ddl(x.im)}; }
#endif

}  // namespace detail_hp

// Unnormalized GK~^{SO(3)}(f) of the Whitehead pair at odd N, adaptive
// precision; the result is well within double range.
inline cplx whitehead_gk_so3_hp(int N, long long f, double* cancel_out = nullptr) {
  using namespace detail_hp;
  VolKernel<ddl> k(N);
  GkParts<ddl> parts = compute_parts<ddl>(k, f, nullptr);

#ifdef GKN_HAVE_FLOAT128
  // magnitude profile: recompute the band near the top with ddq
  long top = LONG_MIN;
  for (long long u = 1; u <= N; u += 2) top = std::max(top, parts.ado[u].mag_exp);
  std::vector<char> mask(N + 1, 0);
  bool any = false;
  for (long long u = 1; u <= N; u += 2)
    if (parts.ado[u].mag_exp >= top - 72) {
      mask[u] = 1;
      any = true;
    }
  // the band refinement only pays off when the sum cancels deeply; probe
  // with a cheap ddl assembly first
  {
    Cx<ddl> acc{ddl(0)};
    ddl scale(0);
    Cx<ddl> sgn = (N % 4 == 1) ? Cx<ddl>(ddl(1)) : Cx<ddl>(ddl(-1));
    Cx<ddl> i2pi{ddl(0), RealOps<ddl>::pi() * ddl(2)};
    Cx<ddl> t0 = -parts.ado[N].value;
    acc += t0;
    scale = std::max<ddl>(scale, t0.mag());
    for (long long t = 0; t <= (N - 3) / 2; ++t) {
      long long u = 2 * t + 1;
      Cx<ddl> trm = k.brace_plus(u) * parts.ado[u].value;
      Cx<ddl> dterm = (parts.ado[u].dmu + parts.ado[u].dmu) * Cx<ddl>(ddl(N)) / i2pi;
      trm += k.brace(u) * (dterm + parts.ado[u].value * ddl(static_cast<double>(f)) * ddl(N) -
                           sgn * parts.jones[u] * ddl(static_cast<double>(f)));
      acc += trm;
      scale = std::max<ddl>(scale, trm.mag());
    }
    double cancel = scale == ddl(0) ? 0.0 : (double)(acc.mag() / scale);
    if (cancel_out) *cancel_out = cancel;
    if (cancel > 1e-13 || N <= 200 || !any) {
      Cx<ddl> pref = sgn / Cx<ddl>(RealOps<ddl>::sqrt(ddl(N)));
      Cx<ddl> g = pref * acc;
      return cplx((double)g.re, (double)g.im);
    }
  }
  // deep cancellation: recompute the dominant band at dd<__float128>
  {
    VolKernel<ddq> kq(N);
    for (long long u = 1; u <= N; u += 2) {
      if (!mask[u]) continue;
      auto a = kq.whitehead_ado_at_integer(f, u);
      parts.ado[u].value = to_ddl(a.value);
      parts.ado[u].dmu = to_ddl(a.dmu);
      if (u < N && f != 0) parts.jones[u] = to_ddl(kq.whitehead_jones(f, static_cast<int>(u)));
    }
  }
#endif
  Cx<ddl> acc{ddl(0)};
  Cx<ddl> sgn = (N % 4 == 1) ? Cx<ddl>(ddl(1)) : Cx<ddl>(ddl(-1));
  Cx<ddl> i2pi{ddl(0), RealOps<ddl>::pi() * ddl(2)};
  acc += -parts.ado[N].value;
  for (long long t = 0; t <= (N - 3) / 2; ++t) {
    long long u = 2 * t + 1;
    Cx<ddl> trm = k.brace_plus(u) * parts.ado[u].value;
    Cx<ddl> dterm = (parts.ado[u].dmu + parts.ado[u].dmu) * Cx<ddl>(ddl(N)) / i2pi;
    trm += k.brace(u) * (dterm + parts.ado[u].value * ddl(static_cast<double>(f)) * ddl(N) -
                         sgn * parts.jones[u] * ddl(static_cast<double>(f)));
    acc += trm;
  }
  Cx<ddl> pref = sgn / Cx<ddl>(RealOps<ddl>::sqrt(ddl(N)));
  Cx<ddl> g = pref * acc;
  return cplx((double)g.re, (double)g.im);
}

}  // namespace gkn
