#pragma once

// Matrix models for the module families: irreducibles U_s^{+/-}, highest
// weight V_s^{+/-}, projectives P_s^+ and P_sigma^-, generic-weight X(lambda)
// and the glued modules Y(lambda, s).  Matrices are transcribed from the
// standard action tables; the defining-relation residual is the arbiter for
// the transcription.

#include <optional>
#include <string>
#include <vector>

#include "gkn/algebra.hpp"
#include "gkn/scalars.hpp"

namespace gkn {

template <class S>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<S> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1.0);
    return m;
  }
  S& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const S& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  Mat operator*(const Mat& o) const {
    Mat r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        S v = (*this)(i, k);
        if (abs1(v) == 0.0) continue;
        for (int j = 0; j < o.cols; ++j) r(i, j) += v * o(k, j);
      }
    return r;
  }
  Mat& operator+=(const Mat& o) {
    for (size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
    return *this;
  }
  friend Mat operator+(Mat x, const Mat& y) { return x += y; }
  friend Mat operator-(Mat x, const Mat& y) { return x -= y; }
  Mat& operator*=(const S& s) {
    for (auto& v : a) v *= s;
    return *this;
  }
  friend Mat operator*(const S& s, Mat m) { return m *= s; }

  double norm_max() const {
    double n = 0.0;
    for (const auto& v : a) n = std::max(n, abs1(v));
    return n;
  }
  S trace() const {
    S t{};
    for (int i = 0; i < rows; ++i) t += (*this)(i, i);
    return t;
  }
};

enum class Family { U, V, Pplus, Pminus, X, Y };

// Block layout of a projective module in the fixed basis order
// x_0..x_{nx-1}, y_0.., a_0.., b_0...
struct PBlocks {
  int nx = 0, ny = 0, na = 0, nb = 0;
  int x0 = 0, y0 = 0, a0 = 0, b0 = 0;
};

template <class S>
class Representation {
 public:
  const RootContext* ctx = nullptr;
  Family family{};
  int s = 0;          // family parameter (U/V/P); shift parameter for Y
  int alpha = +1;     // +1 or -1 for U/V
  S lambda{};         // weight parameter for X/Y
  int d = 0;
  Mat<S> E, F, K;
  std::vector<S> wt;  // k-exponents: k acts by t^{wt[i]}, K by q^{wt[i]}
  PBlocks blocks;     // valid for P families
  std::string label;

  Mat<S> k_matrix() const {
    Mat<S> m(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = tpow(wt[i]);
    return m;
  }

  // K^{c} as a diagonal matrix, c any integer.
  Mat<S> K_power(int c) const {
    Mat<S> m(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = qpow(S(static_cast<double>(c)) * wt[i]);
    return m;
  }

  // rho(x) for a PBW element; powers of E and F are cached at build time.
  Mat<S> apply(const AlgebraElement& x) const {
    Mat<S> out(d, d);
    for (const auto& [k, v] : x.coeffs()) {
      Mono m = x.mono(k);
      Mat<S> term = Epow[m.a] * Fpow[m.b];
      // right-multiply by diagonal K^c
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          term(i, j) *= qpow(S(static_cast<double>(m.c)) * wt[j]);
      term *= S(v);
      out += term;
    }
    return out;
  }

  void finalize() {
    Epow.assign(1, Mat<S>::identity(d));
    Fpow.assign(1, Mat<S>::identity(d));
    for (int i = 1; i < ctx->N(); ++i) {
      Epow.push_back(E * Epow.back());
      Fpow.push_back(F * Fpow.back());
    }
    K = Mat<S>(d, d);
    for (int i = 0; i < d; ++i) K(i, i) = qpow(wt[i]);
  }

  S qpow(const S& e) const { return ctx->q_pow(e); }
  S tpow(const S& e) const { return ctx->t_pow(e); }

  std::vector<Mat<S>> Epow, Fpow;
};

namespace detail {
template <class S>
S bracket_of(const RootContext& ctx, const S& x) {
  return ctx.bracket_at(x);
}
inline cplx bracket_of(const RootContext& ctx, long long k) { return ctx.bracket(k); }
}  // namespace detail

// U_s^{alpha}: s-dimensional irreducible, 1 <= s <= N, alpha = +/-1.
inline Representation<cplx> build_U(const RootContext& ctx, int s, int alpha) {
  const int N = ctx.N();
  if (s < 1 || s > N) throw std::domain_error("build_U: s out of range");
  Representation<cplx> r;
  r.ctx = &ctx;
  r.family = Family::U;
  r.s = s;
  r.alpha = alpha;
  r.d = s;
  r.E = Mat<cplx>(s, s);
  r.F = Mat<cplx>(s, s);
  r.wt.resize(s);
  double sgn = alpha;
  for (int n = 0; n < s; ++n) r.wt[n] = cplx(s - 1 - 2 * n + (alpha < 0 ? N : 0));
  for (int n = 1; n < s; ++n) r.E(n - 1, n) = sgn * ctx.bracket(n) * ctx.bracket(s - n);
  for (int n = 0; n + 1 < s; ++n) r.F(n + 1, n) = 1.0;
  r.label = std::string("U_") + std::to_string(s) + (alpha > 0 ? "^+" : "^-");
  r.finalize();
  return r;
}

// V_s^{alpha}: N-dimensional highest-weight module.
inline Representation<cplx> build_V(const RootContext& ctx, int s, int alpha) {
  const int N = ctx.N();
  if (s < 1 || s > N) throw std::domain_error("build_V: s out of range");
  Representation<cplx> r;
  r.ctx = &ctx;
  r.family = Family::V;
  r.s = s;
  r.alpha = alpha;
  r.d = N;
  r.E = Mat<cplx>(N, N);
  r.F = Mat<cplx>(N, N);
  r.wt.resize(N);
  double sgn = alpha;
  for (int n = 0; n < N; ++n) r.wt[n] = cplx(s - 1 - 2 * n + (alpha < 0 ? N : 0));
  for (int n = 1; n < N; ++n) r.E(n - 1, n) = sgn * ctx.bracket(n) * ctx.bracket(s - n);
  for (int n = 0; n + 1 < N; ++n) r.F(n + 1, n) = 1.0;
  r.label = std::string("V_") + std::to_string(s) + (alpha > 0 ? "^+" : "^-");
  r.finalize();
  return r;
}

// P_s^+: 2N-dimensional projective cover of U_s^+, 1 <= s <= N-1.
inline Representation<cplx> build_P_plus(const RootContext& ctx, int s) {
  const int N = ctx.N();
  if (s < 1 || s > N - 1) throw std::domain_error("build_P_plus: s out of range");
  Representation<cplx> r;
  r.ctx = &ctx;
  r.family = Family::Pplus;
  r.s = s;
  r.d = 2 * N;
  const int m = N - s;  // size of the x and y blocks
  r.blocks = {m, m, s, s, 0, m, 2 * m, 2 * m + s};
  auto X = [&](int j) { return r.blocks.x0 + j; };
  auto Yb = [&](int j) { return r.blocks.y0 + j; };
  auto A = [&](int n) { return r.blocks.a0 + n; };
  auto B = [&](int n) { return r.blocks.b0 + n; };
  r.E = Mat<cplx>(r.d, r.d);
  r.F = Mat<cplx>(r.d, r.d);
  r.wt.resize(r.d);
  for (int j = 0; j < m; ++j) {
    r.wt[X(j)] = cplx(2 * N - s - 1 - 2 * j);
    r.wt[Yb(j)] = cplx(-s - 1 - 2 * j);
  }
  for (int n = 0; n < s; ++n) r.wt[A(n)] = r.wt[B(n)] = cplx(s - 1 - 2 * n);
  for (int j = 1; j < m; ++j) {
    cplx c = -ctx.bracket(j) * ctx.bracket(m - j);
    r.E(X(j - 1), X(j)) = c;
    r.E(Yb(j - 1), Yb(j)) = c;
  }
  r.E(A(s - 1), Yb(0)) = 1.0;
  for (int n = 1; n < s; ++n) {
    cplx c = ctx.bracket(n) * ctx.bracket(s - n);
    r.E(A(n - 1), A(n)) = c;
    r.E(B(n - 1), B(n)) = c;
    r.E(A(n - 1), B(n)) = 1.0;
  }
  r.E(X(m - 1), B(0)) = 1.0;
  for (int j = 0; j + 1 < m; ++j) {
    r.F(X(j + 1), X(j)) = 1.0;
    r.F(Yb(j + 1), Yb(j)) = 1.0;
  }
  r.F(A(0), X(m - 1)) = 1.0;
  for (int n = 0; n + 1 < s; ++n) {
    r.F(A(n + 1), A(n)) = 1.0;
    r.F(B(n + 1), B(n)) = 1.0;
  }
  r.F(Yb(0), B(s - 1)) = 1.0;
  r.label = std::string("P_") + std::to_string(s) + "^+";
  r.finalize();
  return r;
}

// P_sigma^-: 2N-dimensional projective, 1 <= sigma <= N-1.  The action table
// for P_{N-s}^- is applied with s = N - sigma; x/y blocks have size sigma.
inline Representation<cplx> build_P_minus(const RootContext& ctx, int sigma) {
  const int N = ctx.N();
  if (sigma < 1 || sigma > N - 1) throw std::domain_error("build_P_minus: sigma out of range");
  const int s = N - sigma;
  Representation<cplx> r;
  r.ctx = &ctx;
  r.family = Family::Pminus;
  r.s = sigma;
  r.d = 2 * N;
  const int m = sigma;  // x/y block size (= N - s)
  r.blocks = {m, m, s, s, 0, m, 2 * m, 2 * m + s};
  auto X = [&](int j) { return r.blocks.x0 + j; };
  auto Yb = [&](int j) { return r.blocks.y0 + j; };
  auto A = [&](int n) { return r.blocks.a0 + n; };
  auto B = [&](int n) { return r.blocks.b0 + n; };
  r.E = Mat<cplx>(r.d, r.d);
  r.F = Mat<cplx>(r.d, r.d);
  r.wt.resize(r.d);
  for (int j = 0; j < m; ++j) r.wt[X(j)] = r.wt[Yb(j)] = cplx(-s - 1 - 2 * j);
  for (int n = 0; n < s; ++n) {
    r.wt[A(n)] = cplx(s - 1 - 2 * n);
    r.wt[B(n)] = cplx(-2 * N + s - 1 - 2 * n);
  }
  for (int j = 1; j < m; ++j) {
    cplx c = -ctx.bracket(j) * ctx.bracket(m - j);
    r.E(X(j - 1), X(j)) = c;
    r.E(Yb(j - 1), Yb(j)) = c;
    r.E(X(j - 1), Yb(j)) = 1.0;
  }
  r.E(A(s - 1), Yb(0)) = 1.0;
  for (int n = 1; n < s; ++n) {
    cplx c = ctx.bracket(n) * ctx.bracket(s - n);
    r.E(A(n - 1), A(n)) = c;
    r.E(B(n - 1), B(n)) = c;
  }
  r.E(X(m - 1), B(0)) = 1.0;
  for (int j = 0; j + 1 < m; ++j) {
    r.F(X(j + 1), X(j)) = 1.0;
    r.F(Yb(j + 1), Yb(j)) = 1.0;
  }
  r.F(B(0), Yb(m - 1)) = 1.0;
  for (int n = 0; n + 1 < s; ++n) {
    r.F(A(n + 1), A(n)) = 1.0;
    r.F(B(n + 1), B(n)) = 1.0;
  }
  r.F(X(0), A(s - 1)) = 1.0;
  r.label = std::string("P_") + std::to_string(sigma) + "^-";
  r.finalize();
  return r;
}

// X(lambda): N-dimensional weight module of the medium quantum group.
template <class S>
Representation<S> build_X(const RootContext& ctx, const S& lambda) {
  const int N = ctx.N();
  Representation<S> r;
  r.ctx = &ctx;
  r.family = Family::X;
  r.lambda = lambda;
  r.d = N;
  r.E = Mat<S>(N, N);
  r.F = Mat<S>(N, N);
  r.wt.resize(N);
  for (int n = 0; n < N; ++n) r.wt[n] = lambda - S(1.0 + 2.0 * n);
  for (int n = 1; n < N; ++n)
    r.E(n - 1, n) = S(ctx.bracket(n)) * ctx.bracket_at(lambda - S(static_cast<double>(n)));
  for (int n = 0; n + 1 < N; ++n) r.F(n + 1, n) = S(1.0);
  r.label = "X(lambda)";
  r.finalize();
  return r;
}

// Y(lambda, s): 2N-dimensional module glued from X(lambda) and X(lambda-2s);
// basis c_0..c_{N-1}, d_0..d_{N-1}.
template <class S>
Representation<S> build_Y(const RootContext& ctx, const S& lambda, int s) {
  const int N = ctx.N();
  if (s < 1 || s > N - 1) throw std::domain_error("build_Y: s out of range");
  Representation<S> r;
  r.ctx = &ctx;
  r.family = Family::Y;
  r.lambda = lambda;
  r.s = s;
  r.d = 2 * N;
  auto C = [&](int n) { return n; };
  auto D = [&](int n) { return N + n; };
  r.E = Mat<S>(r.d, r.d);
  r.F = Mat<S>(r.d, r.d);
  r.wt.resize(r.d);
  for (int n = 0; n < N; ++n) {
    r.wt[C(n)] = lambda - S(1.0 + 2.0 * n);
    r.wt[D(n)] = lambda - S(1.0 + 2.0 * s + 2.0 * n);
  }
  for (int n = 1; n < N; ++n)
    r.E(C(n - 1), C(n)) = S(ctx.bracket(n)) * ctx.bracket_at(lambda - S(static_cast<double>(n)));
  r.E(C(s - 1), D(0)) = S(1.0);
  for (int n = 1; n < N; ++n) {
    r.E(D(n - 1), D(n)) =
        S(ctx.bracket(n)) * ctx.bracket_at(lambda - S(static_cast<double>(2 * s + n)));
    if (n <= N - s) r.E(C(n + s - 1), D(n)) = S(1.0);
  }
  for (int n = 0; n + 1 < N; ++n) {
    r.F(C(n + 1), C(n)) = S(1.0);
    r.F(D(n + 1), D(n)) = S(1.0);
  }
  r.label = "Y(lambda," + std::to_string(s) + ")";
  r.finalize();
  return r;
}

// Basis change conjugating rho^{(lambda,s)} on Y to rho^lambda (+) rho^{lambda-2s}.
// Columns: c_0..c_{N-1}, then d_n - c_{n+s}/([s][lambda-s]) for n < N-s, then d_n.
template <class S>
Mat<S> decompose_Y(const RootContext& ctx, const S& lambda, int s) {
  const int N = ctx.N();
  S den = S(ctx.bracket(s)) * ctx.bracket_at(lambda - S(static_cast<double>(s)));
  if (abs1(den) <= 1e-6) throw std::domain_error("decompose_Y: degenerate lambda");
  Mat<S> P(2 * N, 2 * N);
  for (int n = 0; n < N; ++n) P(n, n) = S(1.0);
  for (int n = 0; n < N; ++n) {
    P(N + n, N + n) = S(1.0);
    if (n < N - s) P(n + s, N + n) = S(-1.0) / den;
  }
  return P;
}

// Residual of the defining relations; the transcription certifier.
template <class S>
double defining_relation_residual(const Representation<S>& r) {
  const RootContext& ctx = *r.ctx;
  const int N = ctx.N();
  double res = 0.0;
  Mat<S> KE = r.K * r.E, EK = r.E * r.K, KF = r.K * r.F, FK = r.F * r.K;
  Mat<S> lhs = KE - S(ctx.q_pow(2LL)) * EK;
  res = std::max(res, lhs.norm_max());
  lhs = KF - S(ctx.q_pow(-2LL)) * FK;
  res = std::max(res, lhs.norm_max());
  Mat<S> comm = r.E * r.F - r.F * r.E;
  Mat<S> rhs(r.d, r.d);
  for (int i = 0; i < r.d; ++i)
    rhs(i, i) = (r.qpow(r.wt[i]) - r.qpow(-r.wt[i])) / S(ctx.brace_one());
  res = std::max(res, (comm - rhs).norm_max());
  res = std::max(res, (r.Epow[N - 1] * r.E).norm_max());
  res = std::max(res, (r.Fpow[N - 1] * r.F).norm_max());
  return res;
}

}  // namespace gkn
