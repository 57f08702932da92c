#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gkn/rmatrix.hpp"

using namespace gkn;

namespace {

Mat<cplx> kron_mid(const Mat<cplx>& M, int left, int right) {
  int n = M.rows * left * right;
  Mat<cplx> R(n, n);
  for (int l = 0; l < left; ++l)
    for (int i = 0; i < M.rows; ++i)
      for (int j = 0; j < M.cols; ++j)
        for (int r = 0; r < right; ++r)
          R((l * M.rows + i) * right + r, (l * M.cols + j) * right + r) = M(i, j);
  return R;
}

}  // namespace

TEST_CASE("the braiding inverts exactly") {
  for (int N : {3, 5}) {
    RootContext ctx(N);
    auto A = build_X<cplx>(ctx, cplx(0.37, 0.11));
    auto B = build_X<cplx>(ctx, cplx(1.21, -0.4));
    Mat<cplx> c = braiding(A, B, +1);
    Mat<cplx> cinv = braiding(B, A, -1);
    Mat<cplx> p = cinv * c;
    CHECK((p - Mat<cplx>::identity(p.rows)).norm_max() < 1e-11);
  }
}

TEST_CASE("Yang-Baxter on generic weight triples") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> d(-2.0, 2.0);
  std::uniform_real_distribution<double> di(-0.3, 0.3);
  for (int N : {3, 5}) {
    RootContext ctx(N);
    double worst = 0.0;
    for (int it = 0; it < 5; ++it) {
      auto A = build_X<cplx>(ctx, cplx(d(rng), di(rng)));
      auto B = build_X<cplx>(ctx, cplx(d(rng), di(rng)));
      auto C = build_X<cplx>(ctx, cplx(d(rng), di(rng)));
      int n = N;
      Mat<cplx> cAB = braiding(A, B, +1), cAC = braiding(A, C, +1), cBC = braiding(B, C, +1);
      Mat<cplx> lhs = kron_mid(cBC, 1, n) * kron_mid(cAC, n, 1) * kron_mid(cAB, 1, n);
      Mat<cplx> rhs = kron_mid(cAB, n, 1) * kron_mid(cAC, 1, n) * kron_mid(cBC, n, 1);
      worst = std::max(worst, (lhs - rhs).norm_max());
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("the weight form matches the group-algebra form on integral modules") {
  RootContext ctx(3);
  double worst = 0.0;
  for (int s1 : {1, 2, 3})
    for (int a1 : {+1, -1})
      for (int s2 : {1, 2})
        for (int a2 : {+1, -1}) {
          auto A = build_U(ctx, s1, a1);
          auto B = build_U(ctx, s2, a2);
          worst = std::max(worst, (r_tilde_matrix(A, B) - r_small_matrix(A, B)).norm_max());
        }
  // also on a highest-weight module pair
  auto V = build_V(ctx, 2, +1);
  auto U = build_U(ctx, 2, -1);
  worst = std::max(worst, (r_tilde_matrix(V, U) - r_small_matrix(V, U)).norm_max());
  CHECK(worst < 1e-10);
}
