#pragma once

// Root-of-unity scalar layer: the context q = exp(i*pi/N), t = exp(i*pi/2N),
// quantum integers and their factorials, Gauss sums, and truncated-Taylor
// (dual) arithmetic used for weight derivatives.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace gkn {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi_v<double>;

// Kahan-compensated accumulator for sums with heavy cancellation.
class KahanSum {
 public:
  void add(cplx x) {
    cplx y = x - comp_;
    cplx t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  cplx value() const { return sum_; }

 private:
  cplx sum_{0.0, 0.0};
  cplx comp_{0.0, 0.0};
};

// First-order dual complex number a + b*eps with eps^2 = 0.  The eps part
// carries an exact first derivative through all arithmetic.
struct Dual {
  cplx value{0.0, 0.0};
  cplx deriv{0.0, 0.0};

  Dual() = default;
  Dual(double v) : value(v) {}
  Dual(cplx v) : value(v) {}
  Dual(cplx v, cplx d) : value(v), deriv(d) {}

  Dual operator-() const { return {-value, -deriv}; }
  Dual& operator+=(const Dual& o) {
    value += o.value;
    deriv += o.deriv;
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    value -= o.value;
    deriv -= o.deriv;
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    deriv = value * o.deriv + deriv * o.value;
    value *= o.value;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    if (o.value == cplx(0.0, 0.0))
      throw std::domain_error("Dual division by zero value part");
    cplx v = value / o.value;
    deriv = (deriv - v * o.deriv) / o.value;
    value = v;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend bool operator==(const Dual& a, const Dual& b) {
    return a.value == b.value && a.deriv == b.deriv;
  }
};

// Second-order jet a + b*eps + c*eps^2 with eps^3 = 0; used where a second
// weight derivative is required (l'Hopital at a double zero).
struct Jet2 {
  cplx v{0.0, 0.0};   // f
  cplx d1{0.0, 0.0};  // f'
  cplx d2{0.0, 0.0};  // f''/2

  Jet2() = default;
  Jet2(double x) : v(x) {}
  Jet2(cplx x) : v(x) {}
  Jet2(cplx x, cplx a, cplx b) : v(x), d1(a), d2(b) {}

  Jet2 operator-() const { return {-v, -d1, -d2}; }
  Jet2& operator+=(const Jet2& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  Jet2& operator-=(const Jet2& o) {
    v -= o.v;
    d1 -= o.d1;
    d2 -= o.d2;
    return *this;
  }
  Jet2& operator*=(const Jet2& o) {
    cplx nv = v * o.v;
    cplx nd1 = v * o.d1 + d1 * o.v;
    cplx nd2 = v * o.d2 + d1 * o.d1 + d2 * o.v;
    v = nv;
    d1 = nd1;
    d2 = nd2;
    return *this;
  }
  Jet2& operator/=(const Jet2& o) {
    if (o.v == cplx(0.0, 0.0))
      throw std::domain_error("Jet2 division by zero value part");
    cplx nv = v / o.v;
    cplx nd1 = (d1 - nv * o.d1) / o.v;
    cplx nd2 = (d2 - nv * o.d2 - nd1 * o.d1) / o.v;
    v = nv;
    d1 = nd1;
    d2 = nd2;
    return *this;
  }
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator*(Jet2 a, const Jet2& b) { return a *= b; }
  friend Jet2 operator/(Jet2 a, const Jet2& b) { return a /= b; }
};

struct QuantumScalars {
  cplx brace;         // {k} = q^k - q^-k
  cplx bracket;       // [k] = {k}/{1}
  cplx brace_plus;    // {k}+ = q^k + q^-k
  cplx brace_fact;    // {k}!
  cplx bracket_fact;  // [k]!
};

struct GaussSums {
  cplx g4N;               // sum_{j=0}^{4N-1} q^{j^2/2}
  cplx g4N_tilde;         // sum_{s=0}^{2N-1} q^{(2s+1)^2/2}
  cplx g4N_closed;        // 2(1+i)sqrt(N)
  cplx g4N_tilde_closed;  // g4N - 2 g_N
};

// Fixes N, the primitive roots q = e^{i pi/N} and t = e^{i pi/2N} (t^2 = q),
// and exact power tables of t indexed mod 4N.  Immutable after construction.
class RootContext {
 public:
  explicit RootContext(int N) : N_(N) {
    if (N < 2) throw std::domain_error("RootContext requires N >= 2");
    t_table_.resize(4 * N);
    for (int j = 0; j < 4 * N; ++j)
      t_table_[j] = std::polar(1.0, pi * j / (2.0 * N));
    // snap the exact lattice points
    t_table_[0] = {1.0, 0.0};
    if (N % 2 == 0) t_table_[N] = {0.0, 1.0};
    t_table_[2 * N] = {-1.0, 0.0};
    brace_one_ = t_pow(2) - t_pow(-2);
  }

  int N() const { return N_; }
  cplx q() const { return t_table_[2]; }
  cplx t() const { return t_table_[1]; }
  cplx brace_one() const { return brace_one_; }

  // t^e for integer e, exact table lookup mod 4N.
  cplx t_pow(long long e) const {
    long long m = e % (4LL * N_);
    if (m < 0) m += 4LL * N_;
    return t_table_[static_cast<size_t>(m)];
  }
  // q^e = t^{2e} for integer e.
  cplx q_pow(long long e) const { return t_pow(2 * e); }

  // q^x for arbitrary real/complex exponent (principal branch of e^{i pi x/N}).
  cplx q_pow(double x) const {
    double r = std::fmod(x, 2.0 * N_);
    return std::exp(cplx(0.0, pi / N_) * r);
  }
  cplx q_pow(cplx x) const {
    cplx r = cplx(std::fmod(x.real(), 2.0 * N_), x.imag());
    return std::exp(cplx(0.0, pi / N_) * r);
  }
  // t^x = q^{x/2} for complex exponent.
  cplx t_pow(cplx x) const { return q_pow(x * 0.5); }

  // q^{x} for a dual exponent: q^{v+d eps} = q^v (1 + d (i pi/N) eps).
  Dual q_pow(const Dual& x) const {
    cplx base = q_pow(x.value);
    return {base, base * x.deriv * cplx(0.0, pi / N_)};
  }
  Dual t_pow(const Dual& x) const { return q_pow(Dual{x.value * 0.5, x.deriv * 0.5}); }

  // q^{x} for a second-order jet exponent.
  Jet2 q_pow(const Jet2& x) const {
    cplx base = q_pow(x.v);
    cplx c = cplx(0.0, pi / N_);
    return {base, base * c * x.d1, base * (c * x.d2 + 0.5 * c * c * x.d1 * x.d1)};
  }
  Jet2 t_pow(const Jet2& x) const { return q_pow(Jet2{x.v * 0.5, x.d1 * 0.5, x.d2 * 0.5}); }

  // {k}, [k], {k}+, {k}!, [k]! for integer k; factorials need k >= 0.
  QuantumScalars quantum_scalars(int k) const {
    QuantumScalars r;
    r.brace = brace(k);
    r.brace_plus = t_pow(2 * k) + t_pow(-2 * k);
    r.bracket = bracket(k);
    if (k < 0) throw std::domain_error("factorial of negative quantum integer");
    r.brace_fact = {1.0, 0.0};
    r.bracket_fact = {1.0, 0.0};
    for (int j = 1; j <= k; ++j) {
      r.brace_fact *= brace(j);
      r.bracket_fact *= bracket(j);
    }
    return r;
  }

  cplx brace(long long k) const { return t_pow(2 * k) - t_pow(-2 * k); }
  cplx brace_plus(long long k) const { return t_pow(2 * k) + t_pow(-2 * k); }
  cplx bracket(long long k) const { return brace(k) / brace_one_; }
  cplx bracket_fact(int k) const { return quantum_scalars(k).bracket_fact; }
  cplx brace_fact(int k) const { return quantum_scalars(k).brace_fact; }

  // {x} for non-integer (or dual/jet) arguments.
  template <class S>
  S brace_at(const S& x) const {
    return q_pow(x) - q_pow(-x);
  }
  template <class S>
  S bracket_at(const S& x) const {
    return brace_at(x) / S(brace_one_);
  }

  // Direct-summation Gauss sums plus their closed forms.
  GaussSums gauss_sums() const {
    GaussSums g;
    KahanSum s1, s2;
    for (long long j = 0; j < 4LL * N_; ++j) s1.add(t_pow(j * j));
    for (long long s = 0; s < 2LL * N_; ++s) s2.add(t_pow((2 * s + 1) * (2 * s + 1)));
    g.g4N = s1.value();
    g.g4N_tilde = s2.value();
    double rN = std::sqrt(static_cast<double>(N_));
    g.g4N_closed = cplx(2.0, 2.0) * rN;
    cplx gN = (N_ % 4 == 1)   ? cplx(rN, 0.0)
              : (N_ % 4 == 3) ? cplx(0.0, rN)
                              : cplx();  // closed form only stated for odd N
    if (N_ % 2 == 1)
      g.g4N_tilde_closed = g.g4N_closed - 2.0 * gN;
    else
      g.g4N_tilde_closed = g.g4N_tilde;
    return g;
  }

 private:
  int N_;
  cplx brace_one_;
  std::vector<cplx> t_table_;
};

inline double abs1(const cplx& z) { return std::abs(z); }
inline double abs1(const Dual& z) { return std::abs(z.value) + std::abs(z.deriv); }

}  // namespace gkn
