#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gkn/invariants.hpp"

using namespace gkn;

namespace {

AlgebraElement slot(const RootContext& ctx, const TensorElement& t, int slot_index) {
  AlgebraElement z(&ctx);
  for (auto& [k, v] : t.coeffs()) z.add(z.mono(k[slot_index]), v);
  return z;
}

cplx apply_tags(const SymmetricFunctions& sf, const TensorElement& t,
                const std::vector<SymmetricFunctionTag>& tags) {
  cplx total = 0.0;
  for (auto& [k, v] : t.coeffs()) {
    cplx w = v;
    for (size_t i = 0; i < tags.size(); ++i) {
      AlgebraElement x(&sf.ctx());
      x.set(x.mono(k[i]), 1.0);
      w *= sf.value(tags[i], x);
    }
    total += w;
  }
  return total;
}

}  // namespace

TEST_CASE("closed unknot walks to a single pivot bead") {
  RootContext ctx(3);
  Algebra alg(ctx);
  UniversalOracle uo(alg);
  TensorElement t = uo.universal_tensor(Tangle::parse(unknot_closed_text(0)));
  REQUIRE(t.coeffs().size() == 1);
  AlgebraElement z = slot(ctx, t, 0);
  // K^{1-N} = K^{N+1} in the small quantum group
  CHECK(std::abs(z.coeff({0, 0, 4}) - cplx(1.0)) < 1e-13);
}

TEST_CASE("kink elements act by the ribbon scalars") {
  RootContext ctx(3);
  Algebra alg(ctx);
  UniversalOracle uo(alg);
  for (int sign : {+1, -1}) {
    TensorElement t = uo.universal_tensor(Tangle::parse(unknot_tangle_text(sign)));
    AlgebraElement u = slot(ctx, t, 0);
    // central up to the engine tolerance
    auto E = AlgebraElement::E(ctx);
    CHECK((alg.multiply(u, E) - alg.multiply(E, u)).norm1() < 1e-12);
    SymmetricFunctions sf(ctx);
    for (int s = 1; s <= 3; ++s) {
      cplx a = sf.U_plus(s).apply(u)(0, 0);
      cplx rib = ctx.q_pow(cplx(double(sign)) * (s - 1.0) * (s + 1.0 - 6.0) * 0.5);
      CHECK(std::abs(a - rib) < 1e-12);
    }
  }
}

TEST_CASE("the normalization scalars match their closed forms") {
  for (int N : {3, 5}) {
    RootContext ctx(N);
    Algebra alg(ctx);
    Invariants inv(ctx);
    UniversalOracle uo(alg);
    for (int sign : {+1, -1}) {
      TensorElement t = uo.universal_tensor(Tangle::parse(unknot_closed_text(sign)));
      AlgebraElement u = slot(ctx, t, 0);
      cplx oracle_phi = alg.phi(u);
      CHECK(std::abs(oracle_phi - inv.psi_phi_unknot(sign)) < 1e-12);
      CHECK(std::abs(std::abs(oracle_phi) - 1.0) < 1e-12);
      if (N % 2 == 1) {
        SymmetricFunctions sf(ctx);
        cplx oracle_so3 = apply_tags(sf, t, {SymmetricFunctionTag::PhiSO3()});
        CHECK(std::abs(oracle_so3 - inv.psi_phi_so3_unknot(sign)) < 1e-12);
      }
    }
  }
}

TEST_CASE("functional application reproduces the engine on a diagram corpus") {
  RootContext ctx(3);
  Algebra alg(ctx);
  SymmetricFunctions sf(ctx);
  Evaluator<cplx> ev(ctx);
  UniversalOracle uo(alg);
  struct Probe {
    std::string text;
    std::vector<SymmetricFunctionTag> tags;
    std::vector<Color> colors;
  };
  std::vector<Probe> probes = {
      {hopf_text(0, 0),
       {SymmetricFunctionTag::Ts(1, +1), SymmetricFunctionTag::Ts(2, +1)},
       {Color::Ts(1, +1), Color::Ts(2, +1)}},
      {hopf_text(0, 0),
       {SymmetricFunctionTag::Gs(1), SymmetricFunctionTag::Ts(2, -1)},
       {Color::Gs(1), Color::Ts(2, -1)}},
      {hopf_text(1, 0),
       {SymmetricFunctionTag::Phi(), SymmetricFunctionTag::TN()},
       {Color::phi(), Color::TN()}},
      {"braid 2; word s1^-1 s1^-1; close all",
       {SymmetricFunctionTag::Ts(2, +1), SymmetricFunctionTag::Gs(2)},
       {Color::Ts(2, +1), Color::Gs(2)}},
      {unknot_closed_text(-1), {SymmetricFunctionTag::PhiSO3()}, {Color::phi_so3()}},
  };
  for (auto& p : probes) {
    CAPTURE(p.text);
    TensorElement t = uo.universal_tensor(Tangle::parse(p.text));
    cplx o = apply_tags(sf, t, p.tags);
    cplx e = ev.evaluate(Tangle::parse(p.text), p.colors);
    CHECK(std::abs(o - e) < 1e-8);
  }
}

TEST_CASE("figure-eight cross-path checks") {
  RootContext ctx(3);
  Algebra alg(ctx);
  SymmetricFunctions sf(ctx);
  Invariants inv(ctx);
  UniversalOracle uo(alg);
  TangleDiagram d = Tangle::parse(figure_eight_text());
  TensorElement t = uo.universal_tensor(d);
  AlgebraElement z = slot(ctx, t, 0);

  SUBCASE("the tangle element is central") {
    auto E = AlgebraElement::E(ctx), F = AlgebraElement::F(ctx), K = AlgebraElement::K(ctx);
    CHECK((alg.multiply(z, E) - alg.multiply(E, z)).norm1() < 1e-10);
    CHECK((alg.multiply(z, F) - alg.multiply(F, z)).norm1() < 1e-10);
    CHECK((alg.multiply(z, K) - alg.multiply(K, z)).norm1() < 1e-10);
  }
  SUBCASE("T_N applied to the tensor equals the weight-N evaluation") {
    // the central element acts on U_N^+ by the engine's cut-strand scalar,
    // so its T_N trace is N times that scalar
    cplx tn = apply_tags(sf, t, {SymmetricFunctionTag::TN()});
    cplx scalar = sf.U_plus(3).apply(z)(0, 0);
    cplx eng = inv.evaluator().evaluate(d, {Color::weight(cplx(3.0))});
    CHECK(std::abs(scalar - eng) < 1e-8);
    CHECK(std::abs(tn - 3.0 * eng) < 1e-8);
    CHECK(std::abs(eng - cplx(13.0)) < 1e-8);  // the N = 3 Kashaev value of 4_1
  }
  SUBCASE("center coefficients match the engine paths") {
    auto cc = sf.center_coefficients(alg, z);
    SurgeryPresentation p(d, {});
    auto lc = inv.log_coefficients(p, {Color::weight(cplx(1.0))});
    for (int s = 0; s <= 3; ++s) CHECK(std::abs(cc.a[s] - lc.a[s]) < 1e-8);
    for (int s = 1; s <= 2; ++s) {
      CHECK(std::abs(cc.b_plus[s - 1] - lc.b_plus[s - 1]) < 1e-8);
      CHECK(std::abs(cc.b_minus[s - 1] - lc.b_minus[s - 1]) < 1e-8);
    }
  }
}

TEST_CASE("trefoil with its blackboard framing against the engine") {
  RootContext ctx(3);
  Algebra alg(ctx);
  SymmetricFunctions sf(ctx);
  Evaluator<cplx> ev(ctx);
  UniversalOracle uo(alg);
  // keep the writhe-3 framing so the oracle sees only the three braid crossings
  TangleDiagram d = Tangle::parse("braid 2; word s1 s1 s1; close except 1; frame 1 3");
  TensorElement t = uo.universal_tensor(d);
  AlgebraElement z = slot(ctx, t, 0);
  for (int s = 1; s <= 3; ++s) {
    cplx a = sf.U_plus(s).apply(z)(0, 0);
    cplx e = ev.evaluate(d, {Color::Ts(s, +1)});
    CHECK(std::abs(a - e) < 1e-9);
  }
}

TEST_CASE("handle slides over a surgery component") {
  RootContext ctx(3);
  Evaluator<cplx> ev(ctx);
  // slide an unlinked T_s-colored component over a +1-framed surgery unknot:
  // before = split union, after = a Hopf pair with the slid framing
  for (int s : {1, 2}) {
    cplx before = ev.evaluate(Tangle::parse("braid 2; word ; close all; frame 2 1"),
                              {Color::Ts(s, +1), Color::phi()});
    cplx after =
        ev.evaluate(Tangle::parse("braid 2; word s1 s1; close all; frame 1 1; frame 2 1"),
                    {Color::Ts(s, +1), Color::phi()});
    CAPTURE(s);
    CHECK(std::abs(before - after) < 1e-8);
    if (s == 1) CHECK(std::abs(before) > 1e-3);
  }
}

TEST_CASE("cost guard") {
  RootContext ctx(3);
  Algebra alg(ctx);
  UniversalOracle uo(alg);
  CHECK_THROWS_AS(uo.universal_tensor(Tangle::parse(trefoil_text())), OracleError);
  RootContext big(7);
  Algebra balg(big);
  UniversalOracle buo(balg);
  CHECK_THROWS_AS(buo.universal_tensor(Tangle::parse(unknot_closed_text(0))), OracleError);
}
