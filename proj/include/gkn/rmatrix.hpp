#pragma once

// Braiding operators.  The Cartan part acts on a pair of weight vectors with
// k-exponents w, w' by t^{w w'}; the nilpotent part is the truncated sum
// sum_m ({1}^m/[m]!) q^{m(m-1)/2} E^m (x) F^m.  The 16N^3-term group-algebra
// form of the R-matrix is also built densely for the equality test against
// the weight form.

#include "gkn/representations.hpp"

namespace gkn {

// Coefficient {1}^m/[m]! q^{+/- m(m-1)/2}, with (-1)^m for the inverse.
template <class S>
std::vector<cplx> theta_coefficients(const RootContext& ctx, int sign) {
  const int N = ctx.N();
  std::vector<cplx> c(N);
  for (int m = 0; m < N; ++m) {
    cplx num = 1.0;
    for (int i = 1; i <= m; ++i) num *= ctx.brace_one() / ctx.bracket(i);
    // q^{+/- m(m-1)/2} = t^{+/- m(m-1)}
    cplx ph = ctx.t_pow(static_cast<long long>(sign) * m * (m - 1));
    c[m] = num * ph * (sign < 0 && (m % 2 == 1) ? -1.0 : 1.0);
  }
  return c;
}

// Braiding c = flip o R for sign = +1, and its exact inverse for sign = -1.
// Maps A (x) B -> B (x) A; row index (j', i'), column index (i, j).
template <class S>
Mat<S> braiding(const Representation<S>& A, const Representation<S>& B, int sign) {
  const RootContext& ctx = *A.ctx;
  const int dA = A.d, dB = B.d;
  Mat<S> M(dA * dB, dA * dB);
  auto coef = theta_coefficients<S>(ctx, sign);
  const int N = ctx.N();
  if (sign > 0) {
    for (int m = 0; m < N; ++m) {
      for (int i = 0; i < dA; ++i)
        for (int ip = 0; ip < dA; ++ip) {
          S e = A.Epow[m](ip, i);
          if (abs1(e) == 0.0) continue;
          for (int j = 0; j < dB; ++j)
            for (int jp = 0; jp < dB; ++jp) {
              S f = B.Fpow[m](jp, j);
              if (abs1(f) == 0.0) continue;
              S cart = ctx.t_pow(A.wt[ip] * B.wt[jp]);
              M(jp * dA + ip, i * dB + j) += S(coef[m]) * cart * e * f;
            }
        }
    }
  } else {
    // inverse braiding: theta-bar then inverse Cartan, pre-composed with flip
    for (int m = 0; m < N; ++m) {
      for (int i = 0; i < dA; ++i)
        for (int ip = 0; ip < dA; ++ip) {
          S f = A.Fpow[m](ip, i);
          if (abs1(f) == 0.0) continue;
          for (int j = 0; j < dB; ++j)
            for (int jp = 0; jp < dB; ++jp) {
              S e = B.Epow[m](jp, j);
              if (abs1(e) == 0.0) continue;
              S cart = ctx.t_pow(S(-1.0) * B.wt[j] * A.wt[i]);
              M(jp * dA + ip, i * dB + j) += S(coef[m]) * cart * e * f;
            }
        }
    }
  }
  return M;
}

// R-tilde as an operator on A (x) B without the flip (for the equality test).
template <class S>
Mat<S> r_tilde_matrix(const Representation<S>& A, const Representation<S>& B) {
  const RootContext& ctx = *A.ctx;
  const int dA = A.d, dB = B.d;
  Mat<S> M(dA * dB, dA * dB);
  auto coef = theta_coefficients<S>(ctx, +1);
  for (int m = 0; m < ctx.N(); ++m)
    for (int i = 0; i < dA; ++i)
      for (int ip = 0; ip < dA; ++ip) {
        S e = A.Epow[m](ip, i);
        if (abs1(e) == 0.0) continue;
        for (int j = 0; j < dB; ++j)
          for (int jp = 0; jp < dB; ++jp) {
            S f = B.Fpow[m](jp, j);
            if (abs1(f) == 0.0) continue;
            M(ip * dB + jp, i * dB + j) += S(coef[m]) * ctx.t_pow(A.wt[ip] * B.wt[jp]) * e * f;
          }
      }
  return M;
}

// The 1/4N sum over e^m k^n (x) f^m k^j, as an operator on A (x) B.  Valid
// for integral-weight representations, where the k-exponents are integers.
inline Mat<cplx> r_small_matrix(const Representation<cplx>& A, const Representation<cplx>& B) {
  const RootContext& ctx = *A.ctx;
  const int N = ctx.N(), dA = A.d, dB = B.d;
  Mat<cplx> M(dA * dB, dA * dB);
  for (int m = 0; m < N; ++m) {
    cplx cm = 1.0;
    for (int i = 1; i <= m; ++i) cm *= ctx.brace_one() / ctx.bracket(i);
    cm *= ctx.t_pow(static_cast<long long>(m) * (m - 1));
    for (int i = 0; i < dA; ++i)
      for (int ip = 0; ip < dA; ++ip) {
        cplx e = A.Epow[m](ip, i);
        if (std::abs(e) == 0.0) continue;
        long long wa = std::llround(A.wt[i].real());
        for (int j = 0; j < dB; ++j)
          for (int jp = 0; jp < dB; ++jp) {
            cplx f = B.Fpow[m](jp, j);
            if (std::abs(f) == 0.0) continue;
            long long wb = std::llround(B.wt[j].real());
            KahanSum acc;
            for (long long n = 0; n < 4 * N; ++n)
              for (long long jj = 0; jj < 4 * N; ++jj) {
                // q^{m(n-jj)} t^{-n jj} k^n -> t^{n wa}, k^jj -> t^{jj wb}
                acc.add(ctx.t_pow(2 * m * (n - jj) - n * jj + n * wa + jj * wb));
              }
            M(ip * dB + jp, i * dB + j) += cm * e * f * acc.value() / (4.0 * N);
          }
      }
  }
  return M;
}

}  // namespace gkn
