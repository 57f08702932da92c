#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gkn/invariants.hpp"

using namespace gkn;

TEST_CASE("ado basics") {
  RootContext ctx(5);
  Invariants inv(ctx);
  SUBCASE("unknot carries only the prefactor") {
    SurgeryPresentation p(Tangle::parse(unknot_tangle_text(0)), {});
    cplx lam(0.63, 0.12);
    cplx v = inv.ado(p, {lam});
    cplx expect = std::sin(lam * pi / 5.0) / (std::pow(cplx(0, 1), 4) * std::sin(lam * pi));
    CHECK(std::abs(v - expect) < 1e-12);
  }
  SUBCASE("integer first color needs the derivative ratio") {
    SurgeryPresentation p(Tangle::parse(unknot_tangle_text(0)), {});
    cplx v = inv.ado(p, {cplx(5.0)});
    CHECK(std::abs(v - cplx(1.0) / (5.0 * std::pow(cplx(0, 1), 4))) < 1e-10);
    CHECK_THROWS_AS(inv.ado(p, {cplx(2.0)}), std::domain_error);
  }
  SUBCASE("Hopf pair at integer weights") {
    // ADO_{N,mu} = i^{N-1} q^{f ((mu-1)(mu+1-2N)/2)} with the ribbon framing
    for (long long f : {0LL, 2LL, -1LL}) {
      SurgeryPresentation p(Tangle::parse(hopf_text(f, 1)), {});
      for (int mu : {1, 3}) {
        cplx v = inv.ado(p, {cplx(5.0), cplx(double(mu))});
        cplx expect = std::pow(cplx(0, 1), 4) *
                      ctx.q_pow(cplx(double(f)) * (mu - 1.0) * (mu + 1.0 - 10.0) * 0.5);
        CHECK(std::abs(v - expect) < 1e-10);
      }
    }
  }
}

TEST_CASE("ado cut independence at generic weights") {
  RootContext ctx(5);
  Invariants inv(ctx);
  cplx l1(0.7, 0.1), l2(1.9, -0.2);
  SurgeryPresentation p1(Tangle::parse(hopf_text(0, 1)), {});
  SurgeryPresentation p2(Tangle::parse(hopf_text(0, 2)), {});
  // cutting the other component swaps the roles of the colors
  cplx a = inv.ado(p1, {l1, l2});
  cplx b = inv.ado(p2, {l2, l1});
  CHECK(std::abs(a - b) < 1e-10);
}

TEST_CASE("figure-eight ado against a direct state-sum") {
  // independent contraction of the specific sliced figure-eight diagram,
  // transcribed by hand: cups at 2 and 3, crossings s1 s2^-1 s1 s2^-1 with
  // the flip of the truncated weight R-matrix, caps at 3 and 2 with the
  // K^{1-N} pivot on the upward leg
  const int N = 3;
  RootContext ctx(N);
  cplx lam(1.37, 0.22);
  auto X = build_X<cplx>(ctx, lam);
  auto Rpos = [&](bool inverse) {
    // c[(out1 out2),(in1 in2)]
    std::vector<cplx> c(N * N * N * N, 0.0);
    for (int m = 0; m < N; ++m) {
      cplx cm = 1.0;
      for (int i = 1; i <= m; ++i) cm *= ctx.brace_one() / ctx.bracket(i);
      cm *= ctx.t_pow((inverse ? -1LL : 1LL) * m * (m - 1));
      if (inverse && m % 2 == 1) cm = -cm;
      for (int i = 0; i < N; ++i)
        for (int ip = 0; ip < N; ++ip)
          for (int j = 0; j < N; ++j)
            for (int jp = 0; jp < N; ++jp) {
              if (!inverse) {
                cplx e = X.Epow[m](ip, i), f = X.Fpow[m](jp, j);
                if (std::abs(e) == 0.0 || std::abs(f) == 0.0) continue;
                cplx cart = ctx.t_pow(X.wt[ip] * X.wt[jp]);
                c[((jp * N + ip) * N + i) * N + j] += cm * cart * e * f;
              } else {
                cplx e = X.Epow[m](jp, j), f = X.Fpow[m](ip, i);
                if (std::abs(e) == 0.0 || std::abs(f) == 0.0) continue;
                cplx cart = ctx.t_pow(-X.wt[j] * X.wt[i]);
                c[((jp * N + ip) * N + i) * N + j] += cm * cart * e * f;
              }
            }
    }
    return c;
  };
  auto cpos = Rpos(false), cneg = Rpos(true);
  // state over 5 strands after both cups, indexed (a,b,c,d,e)
  std::vector<cplx> state;
  {
    // start: strand 1 free (identity index pair), cups at (2,3) and (3,4):
    // boundary [b1 b2 b3 r3 r2]; state[(row), b1 b2 b3 r3 r2]
    state.assign(N * N * N * N * N * N, 0.0);
    for (int r = 0; r < N; ++r)
      for (int b2 = 0; b2 < N; ++b2)
        for (int b3 = 0; b3 < N; ++b3) {
          size_t idx = ((((size_t(r) * N + r) * N + b2) * N + b3) * N + b3) * N + b2;
          state[idx] = 1.0;
        }
  }
  auto cross = [&](int pos, const std::vector<cplx>& cm) {
    // apply to boundary positions (pos, pos+1) of 5, with the leading free row
    std::vector<cplx> ns(state.size(), 0.0);
    size_t stride[6];
    stride[5] = 1;
    for (int i = 4; i >= 0; --i) stride[i] = stride[i + 1] * N;
    for (size_t idx = 0; idx < state.size(); ++idx) {
      if (std::abs(state[idx]) == 0.0) continue;
      int digits[6];
      size_t rest = idx;
      for (int i = 0; i < 6; ++i) {
        digits[i] = static_cast<int>(rest / stride[i]);
        rest %= stride[i];
      }
      int i1 = digits[pos], i2 = digits[pos + 1];
      for (int o1 = 0; o1 < N; ++o1)
        for (int o2 = 0; o2 < N; ++o2) {
          cplx w = cm[((o1 * N + o2) * N + i1) * N + i2];
          if (std::abs(w) == 0.0) continue;
          size_t nidx = idx + (o1 - digits[pos]) * stride[pos] +
                        (o2 - digits[pos + 1]) * stride[pos + 1];
          ns[nidx] += w * state[idx];
        }
    }
    state = std::move(ns);
  };
  cross(1, cpos);
  cross(2, cneg);
  cross(1, cpos);
  cross(2, cneg);
  // caps at (3,4) then (2,3): up leg first, pivot K^{1-N}
  Mat<cplx> result(N, N);
  for (int r = 0; r < N; ++r)
    for (int t = 0; t < N; ++t) {
      cplx acc = 0.0;
      for (int b3 = 0; b3 < N; ++b3)
        for (int b2 = 0; b2 < N; ++b2) {
          size_t idx = ((((size_t(r) * N + t) * N + b2) * N + b3) * N + b3) * N + b2;
          cplx piv = ctx.q_pow(cplx(1.0 - N) * X.wt[b3]) * ctx.q_pow(cplx(1.0 - N) * X.wt[b2]);
          acc += piv * state[idx];
        }
      result(t, r) = acc;
    }
  CHECK((result - result(0, 0) * Mat<cplx>::identity(N)).norm_max() < 1e-8);
  Invariants inv(ctx);
  SurgeryPresentation p(Tangle::parse(figure_eight_text()), {});
  cplx engine = inv.ado(p, {lam});
  cplx statesum = inv.ado_prefactor(lam) * result(0, 0);
  CHECK(std::abs(engine - statesum) < 1e-8);
}

TEST_CASE("colored Jones") {
  RootContext ctx(5);
  Invariants inv(ctx);
  SUBCASE("unknot normalization") {
    SurgeryPresentation p(Tangle::parse(unknot_tangle_text(0)), {});
    for (int t : {1, 2, 5}) CHECK(std::abs(inv.colored_jones(p, {t}) - cplx(1.0)) < 1e-12);
  }
  SUBCASE("zero-framed Hopf gives the color dimension times a sign pattern") {
    // a_{N,T_t^+}(Hopf, f=0) = t for odd t
    SurgeryPresentation p(Tangle::parse(hopf_text(0, 1)), {});
    for (int t : {1, 3, 5}) {
      cplx v = inv.colored_jones(p, {5, t});
      CHECK(std::abs(v - cplx(double(t))) < 1e-10);
    }
  }
}

TEST_CASE("hennings invariant") {
  RootContext ctx(3);
  Invariants inv(ctx);
  SUBCASE("empty surgery link gives the three-sphere") {
    TangleDiagram d;
    d.resolve();
    SurgeryPresentation p(d, {});
    CHECK(std::abs(inv.hennings(p).value - cplx(1.0)) < 1e-14);
  }
  SUBCASE("stabilization is normalized away") {
    SurgeryPresentation up(Tangle::parse("braid 1; word ; close all; frame 1 1"), {1});
    CHECK(std::abs(inv.hennings(up).value - cplx(1.0)) < 1e-10);
    SurgeryPresentation dn(Tangle::parse("braid 1; word ; close all; frame 1 -1"), {1});
    CHECK(std::abs(inv.hennings(dn).value - cplx(1.0)) < 1e-10);
    SurgeryPresentation both(
        Tangle::parse("braid 2; word ; close all; frame 1 1; frame 2 -1"), {1, 2});
    CHECK(std::abs(inv.hennings(both).value - cplx(1.0)) < 1e-10);
  }
  SUBCASE("the zero-framed unknot against the symbolic path") {
    SurgeryPresentation p(Tangle::parse(unknot_closed_text(0)), {1});
    auto h = inv.hennings(p);
    CHECK(h.s_plus == 0);
    CHECK(h.s_minus == 0);
    Algebra alg(ctx);
    UniversalOracle uo(alg);
    TensorElement t = uo.universal_tensor(Tangle::parse(unknot_closed_text(0)));
    AlgebraElement u(&ctx);
    for (auto& [k, v] : t.coeffs()) u.add(u.mono(k[0]), v);
    CHECK(std::abs(h.value - alg.phi(u)) < 1e-12);
  }
}

TEST_CASE("colored hennings") {
  RootContext ctx(3);
  Invariants inv(ctx);
  Evaluator<cplx> ev(ctx);
  SUBCASE("unknot loop traces") {
    for (int s : {1, 2}) {
      SurgeryPresentation p(Tangle::parse(unknot_closed_text(0)), {});
      auto v = inv.colored_hennings(p, {SymmetricFunctionTag::Ts(s, +1)});
      cplx direct = ev.evaluate(Tangle::parse(unknot_closed_text(0)), {Color::Ts(s, +1)});
      CHECK(std::abs(v.value - direct) < 1e-12);
    }
  }
  SUBCASE("the trace pairs to zero against the radical") {
    // closing with T_s after a w_s-action bead kills every value
    Mat<cplx> rho_w(1, 1);  // the radical acts as zero on the irreducible U_1^+
    cplx v = ev.evaluate_with_bead(Tangle::parse(hopf_text(0, 0)),
                                   {Color::Ts(1, +1), Color::phi()}, 1, rho_w);
    CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("log coefficients") {
  RootContext ctx(3);
  Invariants inv(ctx);
  SUBCASE("unknot tangle is the unit of the center") {
    SurgeryPresentation p(Tangle::parse(unknot_tangle_text(0)), {});
    auto lc = inv.log_coefficients(p, {Color::weight(cplx(1.0))});
    for (int s = 0; s <= 3; ++s) CHECK(std::abs(lc.a[s] - cplx(1.0)) < 1e-10);
    for (auto& b : lc.b_plus) CHECK(std::abs(b) < 1e-10);
    for (auto& b : lc.b_minus) CHECK(std::abs(b) < 1e-10);
  }
  SUBCASE("positive kink gives the ribbon scalars") {
    SurgeryPresentation p(Tangle::parse(unknot_tangle_text(1)), {});
    auto lc = inv.log_coefficients(p, {Color::weight(cplx(1.0))});
    for (int s = 1; s <= 3; ++s) {
      cplx rib = ctx.q_pow((s - 1.0) * (s + 1.0 - 6.0) * 0.5);
      CHECK(std::abs(lc.a[s] - rib) < 1e-10);
    }
  }
}

TEST_CASE("Remark-style consistency of integer-weight evaluations") {
  RootContext ctx(5);
  Invariants inv(ctx);
  Evaluator<Dual> evd(ctx);
  TangleDiagram d = Tangle::parse(figure_eight_text());
  for (int s : {1, 2, 4, 5}) {
    cplx at_int =
        inv.evaluator().evaluate(d, {Color::weight(cplx(double(s)))});
    Dual lim = evd.evaluate(d, {Color::weight(Dual(cplx(double(s)), 1.0))});
    CHECK(std::abs(at_int - lim.value) < 1e-8);
  }
}

TEST_CASE("pseudo-trace derivative path equals the block path") {
  for (int N : {3, 5}) {
    RootContext ctx(N);
    Invariants inv(ctx);
    SymmetricFunctions sf(ctx);
    Algebra alg(ctx);
    SUBCASE("trivial elements") {
      CHECK(std::abs(inv.g_s_derivative(AlgebraElement::unit(ctx), 1)) < 1e-10);
      for (int s = 1; s <= N - 1; ++s) {
        cplx lhs = inv.g_s_derivative(AlgebraElement::K(ctx), s);
        cplx rhs = sf.g_s(s, AlgebraElement::K(ctx));
        CHECK(std::abs(lhs - rhs) < 1e-10);
      }
    }
    SUBCASE("random elements") {
      std::mt19937 rng(2024);
      double worst = 0.0;
      for (int it = 0; it < 50; ++it) {
        AlgebraElement u = alg.random_element(rng);
        for (int s = 1; s <= N - 1; ++s)
          worst = std::max(worst, std::abs(inv.g_s_derivative(u, s) - sf.g_s(s, u)));
      }
      CHECK(worst < 1e-9);
    }
  }
}

TEST_CASE("unknot normalization scalars") {
  for (int N = 3; N <= 101; N += 2) {
    RootContext ctx(N);
    CHECK(std::abs(std::abs(psi_phi_unknot_value(ctx, +1)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(psi_phi_unknot_value(ctx, -1)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(psi_phi_so3_unknot_value(ctx, +1)) - 1.0) < 1e-12);
    CHECK(std::abs(std::abs(psi_phi_so3_unknot_value(ctx, -1)) - 1.0) < 1e-12);
  }
  for (int N : {3, 5}) {
    RootContext ctx(N);
    Invariants inv(ctx);
    for (int sign : {+1, -1}) {
      CHECK(std::abs(inv.psi_phi_unknot(sign) - inv.psi_phi_unknot_engine(sign)) < 1e-9);
      CHECK(std::abs(inv.psi_phi_so3_unknot(sign) - inv.psi_phi_unknot_engine(sign, true)) <
            1e-9);
    }
  }
  RootContext even(4);
  CHECK_THROWS_AS(psi_phi_so3_unknot_value(even, +1), std::domain_error);
}

TEST_CASE("generalized Kashaev invariants in the three-sphere") {
  for (int N : {5, 7}) {
    RootContext ctx(N);
    Invariants inv(ctx);
    SurgeryPresentation p(Tangle::parse(figure_eight_text()), {});
    InvariantValue g = inv.gk(p);
    CHECK(g.s_plus == 0);
    CHECK(g.s_minus == 0);
    // the classical value: sum_k prod_j (2 sin(pi j/N))^2
    double kashaev = 0.0, prod = 1.0;
    for (int k = 0; k <= N - 1; ++k) {
      if (k > 0) {
        double s = 2.0 * std::sin(pi * k / N);
        prod *= s * s;
      }
      kashaev += prod;
    }
    CHECK(std::abs(g.value - kashaev) < 1e-8);
    // the same value through the N-colored Jones path
    CHECK(std::abs(inv.colored_jones(p, {N}) - g.value) < 1e-8);
  }
}

TEST_CASE("Hopf surgery presentations") {
  for (int N : {3, 5}) {
    RootContext ctx(N);
    Invariants inv(ctx);
    SUBCASE("zero framing annihilates the SO(3) invariant") {
      if (N % 2 == 1) {
        SurgeryPresentation p(Tangle::parse(hopf_text(0, 1)), {2});
        auto v = inv.gk_so3(p);
        CHECK(v.exact_zero());
      }
    }
    SUBCASE("the closed assembly matches the direct functional path") {
      for (long long f : {0LL, 1LL, -2LL, 3LL}) {
        SurgeryPresentation p(Tangle::parse(hopf_text(f, 1)), {2});
        cplx direct = inv.gk_unnormalized_engine(p);
        cplx assembled = inv.gk_unnormalized_assembled(p);
        CHECK(std::abs(direct - assembled) < 1e-8);
        if (N % 2 == 1) {
          cplx d3 = inv.gk_so3_unnormalized_engine(p);
          cplx a3 = inv.gk_so3_unnormalized_assembled(p);
          CHECK(std::abs(d3 - a3) < 1e-8);
        }
      }
    }
  }
}

TEST_CASE("the SO(3) Hopf invariant is bounded by sqrt(N)") {
  for (int N = 5; N <= 51; N += 2) {
    RootContext ctx(N);
    for (long long f = -5; f <= 10; ++f) {
      GKValue v = hopf_gk_so3(ctx, f);
      CHECK(std::abs(v.value) <= std::sqrt(double(N)) + 1e-9);
    }
  }
}

TEST_CASE("normalization bookkeeping follows the linking signature") {
  RootContext ctx(5);
  Invariants inv(ctx);
  for (long long f : {-2LL, 0LL, 3LL}) {
    SurgeryPresentation p(Tangle::parse(hopf_text(f, 1)), {2});
    auto v = inv.gk(p);
    CHECK(v.s_plus == p.linking.s_plus);
    CHECK(v.s_minus == p.linking.s_minus);
    CHECK(v.s_plus == (f > 0 ? 1 : 0));
    CHECK(v.s_minus == (f < 0 ? 1 : 0));
  }
}
