#pragma once

// Symmetric linear functions on the small quantum group: the irreducible
// traces T_0, T_N, T_s^{+/-}, the pseudo-traces G_s read off designated
// blocks of the projectives, the decomposition of phi over them, and the
// coefficient extraction for central elements.
//
// Index conventions used throughout (fixed here once):
//   T_s^+ = trace on U_s^+,       T_s^- = trace on U_{N-s}^-,
//   T_0   = trace on U_N^-,       T_N   = trace on U_N^+,
//   G_s   = a-row/b-column block trace on P_s^+
//         + x-row/y-column block trace on P_{N-s}^-.
// With these, T_t^+ + T_t^- is the character of the integer-weight module
// X(t), and the central basis satisfies e_s w_s^{+/-} = w_s^{+/-} with w_s^+
// supported on P_s^+ and w_s^- on P_{N-s}^-.

#include <array>
#include <memory>
#include <vector>

#include "gkn/algebra.hpp"
#include "gkn/representations.hpp"

namespace gkn {

struct SymmetricFunctionTag {
  enum class Kind { T0, TN, Ts, Gs, Phi, PhiSO3 };
  Kind kind{};
  int s = 0;     // for Ts/Gs
  int sign = 1;  // for Ts

  static SymmetricFunctionTag T0() { return {Kind::T0}; }
  static SymmetricFunctionTag TN() { return {Kind::TN}; }
  static SymmetricFunctionTag Ts(int s, int sign) { return {Kind::Ts, s, sign}; }
  static SymmetricFunctionTag Gs(int s) { return {Kind::Gs, s}; }
  static SymmetricFunctionTag Phi() { return {Kind::Phi}; }
  static SymmetricFunctionTag PhiSO3() { return {Kind::PhiSO3}; }
};

struct CenterCoefficients {
  std::vector<cplx> a;        // a_s, s = 0..N
  std::vector<cplx> b_plus;   // b_s^+, s = 1..N-1 (index s-1)
  std::vector<cplx> b_minus;  // b_s^-, s = 1..N-1 (index s-1)
};

struct PhiCoefficients {
  cplx alpha0, alphaN;
  std::vector<cplx> alpha;  // alpha_s, s = 1..N-1 (index s-1)
  std::vector<cplx> beta;   // beta_s
};

inline PhiCoefficients phi_coefficients(const RootContext& ctx) {
  const int N = ctx.N();
  double norm = 1.0 / (N * std::sqrt(2.0 * N));
  PhiCoefficients pc;
  pc.alpha0 = -norm;
  pc.alphaN = (N % 2 == 0 ? norm : -norm);
  pc.alpha.resize(N - 1);
  pc.beta.resize(N - 1);
  for (int s = 1; s <= N - 1; ++s) {
    double sgn = (s % 2 == 1) ? 1.0 : -1.0;  // (-1)^{s-1}
    pc.alpha[s - 1] = sgn * ctx.brace_plus(s) * norm;
    cplx br = ctx.bracket(s);
    pc.beta[s - 1] = sgn * br * br * norm;
  }
  return pc;
}

// Caches the standard complex modules and evaluates symmetric functions.
class SymmetricFunctions {
 public:
  explicit SymmetricFunctions(const RootContext& ctx) : ctx_(&ctx) {
    const int N = ctx.N();
    for (int s = 1; s <= N; ++s) {
      Uplus_.push_back(build_U(ctx, s, +1));
      Uminus_.push_back(build_U(ctx, s, -1));
    }
    for (int s = 1; s <= N - 1; ++s) {
      Pplus_.push_back(build_P_plus(ctx, s));
      Pminus_.push_back(build_P_minus(ctx, s));
    }
    pc_ = phi_coefficients(ctx);
  }

  const RootContext& ctx() const { return *ctx_; }
  const Representation<cplx>& U_plus(int s) const { return Uplus_.at(s - 1); }
  const Representation<cplx>& U_minus(int s) const { return Uminus_.at(s - 1); }
  const Representation<cplx>& P_plus(int s) const { return Pplus_.at(s - 1); }
  const Representation<cplx>& P_minus(int sigma) const { return Pminus_.at(sigma - 1); }
  const PhiCoefficients& phi_coeffs() const { return pc_; }

  cplx value(const SymmetricFunctionTag& tag, const AlgebraElement& x) const {
    const int N = ctx_->N();
    using K = SymmetricFunctionTag::Kind;
    switch (tag.kind) {
      case K::T0:
        return U_minus(N).apply(x).trace();
      case K::TN:
        return U_plus(N).apply(x).trace();
      case K::Ts: {
        if (tag.s < 1 || tag.s > N - 1) throw std::domain_error("T_s: s out of range");
        if (tag.sign > 0) return U_plus(tag.s).apply(x).trace();
        return U_minus(N - tag.s).apply(x).trace();
      }
      case K::Gs:
        return g_s(tag.s, x);
      case K::Phi: {
        cplx r = pc_.alpha0 * value(SymmetricFunctionTag::T0(), x) +
                 pc_.alphaN * value(SymmetricFunctionTag::TN(), x);
        for (int s = 1; s <= N - 1; ++s) {
          r += pc_.alpha[s - 1] * (value(SymmetricFunctionTag::Ts(s, +1), x) +
                                   value(SymmetricFunctionTag::Ts(s, -1), x));
          r += pc_.beta[s - 1] * g_s(s, x);
        }
        return r;
      }
      case K::PhiSO3: {
        if (N % 2 == 0) throw std::domain_error("phi^{SO(3)} requires odd N");
        cplx r = pc_.alphaN * value(SymmetricFunctionTag::TN(), x);
        for (int s = 1; s <= N - 2; s += 2) {
          r += pc_.alpha[s - 1] * (value(SymmetricFunctionTag::Ts(s, +1), x) +
                                   value(SymmetricFunctionTag::Ts(s, -1), x));
          r += pc_.beta[s - 1] * g_s(s, x);
        }
        return std::sqrt(2.0) * r;
      }
    }
    throw std::logic_error("unreachable");
  }

  // G_s(x): sum of the two designated block traces.
  cplx g_s(int s, const AlgebraElement& x) const {
    const int N = ctx_->N();
    if (s < 1 || s > N - 1) throw std::domain_error("G_s: s out of range");
    const auto& p = P_plus(s);
    Mat<cplx> mp = p.apply(x);
    cplx r = 0.0;
    for (int n = 0; n < p.blocks.na; ++n) r += mp(p.blocks.a0 + n, p.blocks.b0 + n);
    const auto& q = P_minus(N - s);
    Mat<cplx> mq = q.apply(x);
    for (int j = 0; j < q.blocks.nx; ++j) r += mq(q.blocks.x0 + j, q.blocks.y0 + j);
    return r;
  }

  // Nilpotent closure operators: tr(rho(x) J) equals the block trace.
  Mat<cplx> block_bead_P_plus(int s) const {
    const auto& p = P_plus(s);
    Mat<cplx> J(p.d, p.d);
    for (int n = 0; n < p.blocks.na; ++n) J(p.blocks.b0 + n, p.blocks.a0 + n) = 1.0;
    return J;
  }
  Mat<cplx> block_bead_P_minus(int sigma) const {
    const auto& q = P_minus(sigma);
    Mat<cplx> J(q.d, q.d);
    for (int j = 0; j < q.blocks.nx; ++j) J(q.blocks.y0 + j, q.blocks.x0 + j) = 1.0;
    return J;
  }

  // Action matrices of the radical basis w_s^{+/-} on their supports.
  Mat<cplx> w_plus_action(int s) const {
    const auto& p = P_plus(s);
    Mat<cplx> W(p.d, p.d);
    for (int n = 0; n < p.blocks.nb; ++n) W(p.blocks.a0 + n, p.blocks.b0 + n) = 1.0;
    return W;
  }
  Mat<cplx> w_minus_action(int s) const {
    const auto& q = P_minus(ctx_->N() - s);
    Mat<cplx> W(q.d, q.d);
    for (int j = 0; j < q.blocks.ny; ++j) W(q.blocks.x0 + j, q.blocks.y0 + j) = 1.0;
    return W;
  }

  // Expansion of a central element over e_s, w_s^{+/-}.
  CenterCoefficients center_coefficients(const Algebra& alg, const AlgebraElement& z,
                                         double central_tol = 1e-9) const {
    const int N = ctx_->N();
    AlgebraElement E = AlgebraElement::E(*ctx_);
    AlgebraElement F = AlgebraElement::F(*ctx_);
    AlgebraElement K = AlgebraElement::K(*ctx_);
    double dev = (alg.multiply(z, E) - alg.multiply(E, z)).norm1() +
                 (alg.multiply(z, F) - alg.multiply(F, z)).norm1() +
                 (alg.multiply(z, K) - alg.multiply(K, z)).norm1();
    if (dev > central_tol * std::max(1.0, z.norm1()))
      throw std::domain_error("center_coefficients: input is not central");
    CenterCoefficients cc;
    cc.a.resize(N + 1);
    cc.a[0] = U_minus(N).apply(z)(0, 0);
    cc.a[N] = U_plus(N).apply(z)(0, 0);
    for (int s = 1; s <= N - 1; ++s) cc.a[s] = U_plus(s).apply(z)(0, 0);
    cc.b_plus.resize(N - 1);
    cc.b_minus.resize(N - 1);
    for (int s = 1; s <= N - 1; ++s) {
      const auto& p = P_plus(s);
      cc.b_plus[s - 1] = p.apply(z)(p.blocks.a0, p.blocks.b0);
      const auto& q = P_minus(N - s);
      cc.b_minus[s - 1] = q.apply(z)(q.blocks.x0, q.blocks.y0);
    }
    return cc;
  }

 private:
  const RootContext* ctx_;
  std::vector<Representation<cplx>> Uplus_, Uminus_, Pplus_, Pminus_;
  PhiCoefficients pc_;
};

}  // namespace gkn
