#pragma once

// The small quantum group at q = exp(i*pi/N) as a structure-constant algebra
// on the PBW basis E^a F^b K^c (0 <= a,b <= N-1, 0 <= c <= 2N-1), with its
// Hopf maps, the right integral mu and the symmetric function phi.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "gkn/scalars.hpp"

namespace gkn {

struct Mono {
  int a = 0, b = 0, c = 0;
};

// One normal-ordered summand of F^b E^a: coef * E^da F^db K^dc with dc signed.
struct ReorderTerm {
  int a, b, c;
  cplx coef;
};

// Tables of the q-commutation expansion F^b E^a = sum E^a' F^b' K^dc,
// derived once per context from the bracket relation [E,F] = (K-K^-1)/{1}.
class ReorderTable {
 public:
  explicit ReorderTable(const RootContext& ctx) : N_(ctx.N()) {
    table_.resize(static_cast<size_t>(N_) * N_);
    for (int b = 0; b < N_; ++b)
      for (int a = 0; a < N_; ++a) build(ctx, b, a);
  }

  // F^b E^a, 0 <= a,b <= N-1.
  const std::vector<ReorderTerm>& fe(int b, int a) const {
    return table_[static_cast<size_t>(b) * N_ + a];
  }

 private:
  void build(const RootContext& ctx, int b, int a) {
    auto& out = table_[static_cast<size_t>(b) * N_ + a];
    if (a == 0) {
      out.push_back({0, b, 0, cplx(1.0, 0.0)});
      return;
    }
    if (b == 0) {
      out.push_back({a, 0, 0, cplx(1.0, 0.0)});
      return;
    }
    // F^b E^a = E (F^b E^{a-1})
    //   - [b]/{1} ( q^{-(b-1)+2(a-1)} (F^{b-1}E^{a-1}) K
    //             - q^{ (b-1)-2(a-1)} (F^{b-1}E^{a-1}) K^{-1} )
    std::map<std::tuple<int, int, int>, cplx> acc;
    for (const auto& t : fe(b, a - 1)) acc[{t.a + 1, t.b, t.c}] += t.coef;
    cplx fac = ctx.bracket(b) / ctx.brace_one();
    cplx pp = ctx.q_pow(static_cast<long long>(-(b - 1) + 2 * (a - 1)));
    cplx pm = ctx.q_pow(static_cast<long long>((b - 1) - 2 * (a - 1)));
    for (const auto& t : fe(b - 1, a - 1)) {
      acc[{t.a, t.b, t.c + 1}] -= fac * pp * t.coef;
      acc[{t.a, t.b, t.c - 1}] += fac * pm * t.coef;
    }
    for (const auto& [k, v] : acc)
      if (std::abs(v) != 0.0) out.push_back({std::get<0>(k), std::get<1>(k), std::get<2>(k), v});
  }

  int N_;
  std::vector<std::vector<ReorderTerm>> table_;
};

class AlgebraElement {
 public:
  AlgebraElement() = default;
  explicit AlgebraElement(const RootContext* ctx) : ctx_(ctx) {}

  static AlgebraElement zero(const RootContext& ctx) { return AlgebraElement(&ctx); }
  static AlgebraElement unit(const RootContext& ctx) {
    AlgebraElement x(&ctx);
    x.set({0, 0, 0}, 1.0);
    return x;
  }
  static AlgebraElement monomial(const RootContext& ctx, int a, int b, int c, cplx coef = 1.0) {
    AlgebraElement x(&ctx);
    int m = 2 * ctx.N();
    c %= m;
    if (c < 0) c += m;
    if (a < 0 || b < 0 || a >= ctx.N() || b >= ctx.N())
      throw std::domain_error("PBW index out of range");
    x.set({a, b, c}, coef);
    return x;
  }
  static AlgebraElement E(const RootContext& ctx) { return monomial(ctx, 1, 0, 0); }
  static AlgebraElement F(const RootContext& ctx) { return monomial(ctx, 0, 1, 0); }
  static AlgebraElement K(const RootContext& ctx, int pow = 1) {
    return monomial(ctx, 0, 0, pow);
  }

  const RootContext& ctx() const { return *ctx_; }
  const std::map<uint32_t, cplx>& coeffs() const { return c_; }
  bool empty() const { return c_.empty(); }

  uint32_t key(const Mono& m) const {
    return (static_cast<uint32_t>(m.a) * ctx_->N() + m.b) * (2 * ctx_->N()) + m.c;
  }
  Mono mono(uint32_t k) const {
    int m2 = 2 * ctx_->N();
    Mono m;
    m.c = static_cast<int>(k % m2);
    k /= m2;
    m.b = static_cast<int>(k % ctx_->N());
    m.a = static_cast<int>(k / ctx_->N());
    return m;
  }

  void set(const Mono& m, cplx v) { c_[key(m)] = v; }
  void add(const Mono& m, cplx v) {
    auto k = key(m);
    auto it = c_.find(k);
    if (it == c_.end())
      c_.emplace(k, v);
    else {
      it->second += v;
      if (std::abs(it->second) < 1e-300) c_.erase(it);
    }
  }
  cplx coeff(const Mono& m) const {
    auto it = c_.find(key(m));
    return it == c_.end() ? cplx(0.0) : it->second;
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    check(o);
    for (const auto& [k, v] : o.c_) add(mono(k), v);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    check(o);
    for (const auto& [k, v] : o.c_) add(mono(k), -v);
    return *this;
  }
  AlgebraElement& operator*=(cplx s) {
    for (auto& [k, v] : c_) v *= s;
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, cplx s) { return a *= s; }
  friend AlgebraElement operator*(cplx s, AlgebraElement a) { return a *= s; }

  double norm1() const {
    double n = 0.0;
    for (const auto& [k, v] : c_) n += std::abs(v);
    return n;
  }

  void prune(double tol = 1e-14) {
    for (auto it = c_.begin(); it != c_.end();)
      it = (std::abs(it->second) < tol) ? c_.erase(it) : std::next(it);
  }

 private:
  void check(const AlgebraElement& o) const {
    if (ctx_ != o.ctx_) throw std::invalid_argument("algebra context mismatch");
  }

  const RootContext* ctx_ = nullptr;
  std::map<uint32_t, cplx> c_;

  friend class Algebra;
};

// Sparse element of the r-fold tensor power, keyed by tuples of PBW indices.
class TensorElement {
 public:
  TensorElement() = default;
  TensorElement(const RootContext* ctx, int arity) : ctx_(ctx), arity_(arity) {}

  static TensorElement unit(const RootContext& ctx, int arity) {
    TensorElement t(&ctx, arity);
    t.c_[std::vector<uint32_t>(arity, 0u)] = 1.0;
    return t;
  }

  int arity() const { return arity_; }
  const RootContext& ctx() const { return *ctx_; }
  const std::map<std::vector<uint32_t>, cplx>& coeffs() const { return c_; }

  void add(const std::vector<uint32_t>& k, cplx v) {
    auto it = c_.find(k);
    if (it == c_.end())
      c_.emplace(k, v);
    else
      it->second += v;
  }
  TensorElement& operator+=(const TensorElement& o) {
    for (const auto& [k, v] : o.c_) add(k, v);
    return *this;
  }
  TensorElement& operator-=(const TensorElement& o) {
    for (const auto& [k, v] : o.c_) add(k, -v);
    return *this;
  }
  TensorElement& operator*=(cplx s) {
    for (auto& [k, v] : c_) v *= s;
    return *this;
  }
  void prune(double tol = 1e-13) {
    for (auto it = c_.begin(); it != c_.end();)
      it = (std::abs(it->second) < tol) ? c_.erase(it) : std::next(it);
  }
  double norm1() const {
    double n = 0.0;
    for (const auto& [k, v] : c_) n += std::abs(v);
    return n;
  }

 private:
  const RootContext* ctx_ = nullptr;
  int arity_ = 0;
  std::map<std::vector<uint32_t>, cplx> c_;
};

// Stateless operations bundle; holds the context and the reorder tables.
class Algebra {
 public:
  explicit Algebra(const RootContext& ctx) : ctx_(&ctx), fe_(ctx) {}

  const RootContext& ctx() const { return *ctx_; }

  // Normal-ordered product in the PBW basis.
  AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const {
    if (&x.ctx() != ctx_ || &y.ctx() != ctx_)
      throw std::invalid_argument("algebra context mismatch");
    AlgebraElement out(ctx_);
    const int N = ctx_->N();
    for (const auto& [kx, vx] : x.coeffs()) {
      Mono mx = x.mono(kx);
      for (const auto& [ky, vy] : y.coeffs()) {
        Mono my = y.mono(ky);
        // K^{c1} E^{a2} F^{b2} = q^{2 c1 (a2 - b2)} E^{a2} F^{b2} K^{c1}
        cplx base = vx * vy * ctx_->q_pow(2LL * mx.c * (my.a - my.b));
        for (const auto& t : fe_.fe(mx.b, my.a)) {
          int A = mx.a + t.a;
          int B = t.b + my.b;
          if (A >= N || B >= N) continue;
          // K^{dc} F^{b2} = q^{-2 dc b2} F^{b2} K^{dc}
          cplx co = base * t.coef * ctx_->q_pow(-2LL * t.c * my.b);
          int C = t.c + mx.c + my.c;
          C %= 2 * N;
          if (C < 0) C += 2 * N;
          out.add({A, B, C}, co);
        }
      }
    }
    out.prune();
    return out;
  }

  AlgebraElement power(const AlgebraElement& x, int n) const {
    AlgebraElement r = AlgebraElement::unit(*ctx_);
    for (int i = 0; i < n; ++i) r = multiply(r, x);
    return r;
  }

  // Componentwise product on tensor elements (ordinary tensor-square algebra).
  TensorElement multiply(const TensorElement& x, const TensorElement& y) const {
    TensorElement out(ctx_, x.arity());
    if (x.arity() != y.arity()) throw std::invalid_argument("tensor arity mismatch");
    AlgebraElement tmpx(ctx_), tmpy(ctx_);
    for (const auto& [kx, vx] : x.coeffs()) {
      for (const auto& [ky, vy] : y.coeffs()) {
        // slotwise monomial products, expanded to normal order
        std::vector<std::pair<std::vector<uint32_t>, cplx>> partial{{{}, vx * vy}};
        for (int s = 0; s < x.arity(); ++s) {
          AlgebraElement xa(ctx_), ya(ctx_);
          xa.set(xa.mono(kx[s]), 1.0);
          ya.set(ya.mono(ky[s]), 1.0);
          AlgebraElement prod = multiply(xa, ya);
          std::vector<std::pair<std::vector<uint32_t>, cplx>> next;
          for (auto& [keys, coef] : partial)
            for (const auto& [kp, vp] : prod.coeffs()) {
              auto ks = keys;
              ks.push_back(kp);
              next.emplace_back(std::move(ks), coef * vp);
            }
          partial = std::move(next);
        }
        for (auto& [keys, coef] : partial) out.add(keys, coef);
      }
    }
    out.prune();
    return out;
  }

  // Coproduct: algebra-map extension of Delta(E) = 1 (x) E + E (x) K,
  // Delta(F) = K^-1 (x) F + F (x) 1, Delta(K) = K (x) K.
  TensorElement coproduct(const AlgebraElement& x) const {
    TensorElement out(ctx_, 2);
    for (const auto& [k, v] : x.coeffs()) {
      Mono m = x.mono(k);
      TensorElement term = TensorElement::unit(*ctx_, 2);
      for (int i = 0; i < m.a; ++i) term = multiply(term, coprod_E());
      for (int i = 0; i < m.b; ++i) term = multiply(term, coprod_F());
      if (m.c != 0) term = multiply(term, coprod_K(m.c));
      term *= v;
      out += term;
    }
    out.prune();
    return out;
  }

  cplx counit(const AlgebraElement& x) const {
    cplx r = 0.0;
    for (const auto& [k, v] : x.coeffs()) {
      Mono m = x.mono(k);
      if (m.a == 0 && m.b == 0) r += v;
    }
    return r;
  }

  // Antipode: anti-homomorphism with S(E) = -E K^-1, S(F) = -K F, S(K) = K^-1.
  AlgebraElement antipode(const AlgebraElement& x) const {
    AlgebraElement out(ctx_);
    AlgebraElement sE = AlgebraElement::monomial(*ctx_, 1, 0, 2 * ctx_->N() - 1, -1.0);
    AlgebraElement sF = multiply(AlgebraElement::K(*ctx_), AlgebraElement::F(*ctx_)) * cplx(-1.0);
    for (const auto& [k, v] : x.coeffs()) {
      Mono m = x.mono(k);
      AlgebraElement term = AlgebraElement::K(*ctx_, -m.c);
      for (int i = 0; i < m.b; ++i) term = multiply(term, sF);
      for (int i = 0; i < m.a; ++i) term = multiply(term, sE);
      out += term * v;
    }
    out.prune();
    return out;
  }

  // mu(E^i F^m K^n) = zeta delta_{i,N-1} delta_{m,N-1} delta_{n,N+1}.
  cplx right_integral(const AlgebraElement& x) const {
    const int N = ctx_->N();
    Mono m{N - 1, N - 1, N + 1};
    return zeta() * x.coeff(m);
  }

  cplx zeta() const {
    const int N = ctx_->N();
    cplx f = ctx_->bracket_fact(N - 1);
    return -std::sqrt(2.0 / N) * f * f;
  }

  // phi(x) = mu(K^{N+1} x); symmetric by the cyclic shift property of mu.
  cplx phi(const AlgebraElement& x) const {
    return right_integral(multiply(AlgebraElement::K(*ctx_, ctx_->N() + 1), x));
  }

  // m(S (x) id) Delta(x) -- used by the Hopf-axiom tests.
  AlgebraElement contract_antipode(const TensorElement& t) const {
    AlgebraElement out(ctx_);
    AlgebraElement xa(ctx_), ya(ctx_);
    for (const auto& [keys, v] : t.coeffs()) {
      AlgebraElement left(ctx_);
      left.set(left.mono(keys[0]), 1.0);
      AlgebraElement right(ctx_);
      right.set(right.mono(keys[1]), 1.0);
      out += multiply(antipode(left), right) * v;
    }
    out.prune();
    return out;
  }

  // (mu (x) id) Delta(x).
  AlgebraElement mu_convolve(const AlgebraElement& x) const {
    TensorElement d = coproduct(x);
    AlgebraElement out(ctx_);
    for (const auto& [keys, v] : d.coeffs()) {
      AlgebraElement left(ctx_);
      Mono ml = left.mono(keys[0]);
      left.set(ml, 1.0);
      cplx mval = right_integral(left);
      if (mval != cplx(0.0)) {
        AlgebraElement right(ctx_);
        right.set(right.mono(keys[1]), v * mval);
        out += right;
      }
    }
    out.prune();
    return out;
  }

  AlgebraElement random_element(std::mt19937& rng, int terms = 6) const {
    std::uniform_int_distribution<int> da(0, ctx_->N() - 1), dc(0, 2 * ctx_->N() - 1);
    std::uniform_real_distribution<double> dv(-1.0, 1.0);
    AlgebraElement x(ctx_);
    for (int i = 0; i < terms; ++i)
      x.add({da(rng), da(rng), dc(rng)}, cplx(dv(rng), dv(rng)));
    return x;
  }

 private:
  const TensorElement& coprod_E() const {
    if (cE_.arity() == 0) {
      TensorElement t(ctx_, 2);
      AlgebraElement one = AlgebraElement::unit(*ctx_);
      AlgebraElement E = AlgebraElement::E(*ctx_);
      AlgebraElement K = AlgebraElement::K(*ctx_);
      t.add({one.key({0, 0, 0}), E.key({1, 0, 0})}, 1.0);
      t.add({E.key({1, 0, 0}), K.key({0, 0, 1})}, 1.0);
      cE_ = t;
    }
    return cE_;
  }
  const TensorElement& coprod_F() const {
    if (cF_.arity() == 0) {
      TensorElement t(ctx_, 2);
      AlgebraElement e(ctx_);
      t.add({e.key({0, 0, 2 * ctx_->N() - 1}), e.key({0, 1, 0})}, 1.0);
      t.add({e.key({0, 1, 0}), e.key({0, 0, 0})}, 1.0);
      cF_ = t;
    }
    return cF_;
  }
  TensorElement coprod_K(int c) const {
    TensorElement t(ctx_, 2);
    AlgebraElement e(ctx_);
    t.add({e.key({0, 0, c}), e.key({0, 0, c})}, 1.0);
    return t;
  }

  const RootContext* ctx_;
  ReorderTable fe_;
  mutable TensorElement cE_, cF_;
};

}  // namespace gkn
