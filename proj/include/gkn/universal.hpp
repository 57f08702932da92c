#pragma once

// Small-N symbolic oracle: the universal invariant computed bead by bead from
// the 16N^3-term group-algebra R-matrix.  Beads live on arcs of the sliced
// diagram; each arc word is kept normal-ordered as E^a F^b k^c or
// E^a F^b P_alpha, where P_alpha is the weight projector of the order-4N
// Cartan generator.  The projector basis keeps the per-crossing sum over the
// two Cartan indices from inflating the state: a projector meeting a
// projector collapses by orthogonality, and powers of k against a projector
// are scalar phases.
//
// The result is the invariant tensor with one slot per component, converted
// back to the PBW basis (even k-exponents; the odd part must cancel and is
// checked).

#include <unordered_map>

#include "gkn/algebra.hpp"
#include "gkn/tangle.hpp"

namespace gkn {

struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class UniversalOracle {
 public:
  explicit UniversalOracle(const Algebra& alg, size_t max_terms = size_t(8) << 20)
      : alg_(&alg), ctx_(&alg.ctx()), fe_(alg.ctx()), max_terms_(max_terms) {}

  // Cost guard per the engine envelope: the oracle is a certification path.
  TensorElement universal_tensor(const TangleDiagram& d0, int max_crossings = 4) const {
    const int N = ctx_->N();
    if (N > 5) throw OracleError("symbolic oracle: N exceeds the cost guard");
    TangleDiagram d = d0.with_framing_curls();
    int ncross = 0;
    for (const auto& ev : d.events) ncross += ev.kind == EvKind::Cross;
    if (ncross > max_crossings) throw OracleError("symbolic oracle: too many crossings");
    return walk(d);
  }

 private:
  // word packing: ((a*N + b)*2 + mode)*(4N) + k; a full bead state packs its
  // per-arc words into one 64-bit key (the cost guard keeps N <= 5 and the
  // arc count small, so 12 bits per slot always suffice)
  using Key = uint64_t;
  static constexpr int slot_bits = 12;
  using State = std::unordered_map<Key, cplx>;

  static uint32_t key_get(Key k, int slot) {
    return static_cast<uint32_t>((k >> (slot_bits * slot)) & ((1u << slot_bits) - 1));
  }
  static Key key_set(Key k, int slot, uint32_t w) {
    Key mask = Key((1u << slot_bits) - 1) << (slot_bits * slot);
    return (k & ~mask) | (Key(w) << (slot_bits * slot));
  }

  enum Mode : uint32_t { Power = 0, Proj = 1 };

  uint32_t pack(int a, int b, Mode m, int k) const {
    const int N = ctx_->N(), M = 4 * N;
    k %= M;
    if (k < 0) k += M;
    return ((static_cast<uint32_t>(a) * N + b) * 2 + m) * M + k;
  }
  void unpack(uint32_t w, int& a, int& b, Mode& m, int& k) const {
    const int N = ctx_->N(), M = 4 * N;
    k = static_cast<int>(w % M);
    w /= M;
    m = static_cast<Mode>(w % 2);
    w /= 2;
    b = static_cast<int>(w % N);
    a = static_cast<int>(w / N);
  }

  struct Expansion {
    // holds (packed word, coefficient)
    std::vector<std::pair<uint32_t, cplx>> terms;
    void add(uint32_t w, cplx c) { terms.push_back({w, c}); }
  };

  // elementary right multiplications ------------------------------------
  Expansion append_kpow(uint32_t w, int j) const {
    int a, b, k;
    Mode m;
    unpack(w, a, b, m, k);
    Expansion e;
    if (m == Power)
      e.add(pack(a, b, Power, k + j), 1.0);
    else
      e.add(w, ctx_->t_pow(static_cast<long long>(j) * k));
    return e;
  }
  // append P_j; for Power words this is the basis conversion
  Expansion append_proj(uint32_t w, int j) const {
    int a, b, k;
    Mode m;
    unpack(w, a, b, m, k);
    Expansion e;
    if (m == Power)
      e.add(pack(a, b, Proj, j), ctx_->t_pow(static_cast<long long>(j) * k));
    else if (((k - j) % (4 * ctx_->N())) == 0)
      e.add(w, 1.0);
    return e;
  }
  Expansion append_e(uint32_t w, int mdeg) const {
    const int N = ctx_->N();
    int a, b, k;
    Mode m;
    unpack(w, a, b, m, k);
    Expansion e;
    if (mdeg == 0) {
      e.add(w, 1.0);
      return e;
    }
    for (const auto& t : fe_.fe(b, mdeg)) {
      int A = a + t.a;
      if (A >= N) continue;
      if (m == Power) {
        // E^a F^b k^k e^m = t^{2 k m} E^a (F^b E^m) k^k
        e.add(pack(A, t.b, Power, k + 2 * t.c),
              t.coef * ctx_->t_pow(2LL * k * mdeg));
      } else {
        // E^a F^b P_k e^m = E^a (F^b E^m) P_{k-2m}; k^{2 dc} P = t^{2 dc (k-2m)} P
        e.add(pack(A, t.b, Proj, k - 2 * mdeg),
              t.coef * ctx_->t_pow(2LL * t.c * (k - 2 * mdeg)));
      }
    }
    return e;
  }
  Expansion append_f(uint32_t w, int mdeg) const {
    const int N = ctx_->N();
    int a, b, k;
    Mode m;
    unpack(w, a, b, m, k);
    Expansion e;
    int B = b + mdeg;
    if (B >= N) return e;
    if (m == Power)
      e.add(pack(a, B, Power, k), ctx_->t_pow(-2LL * k * mdeg));
    else
      e.add(pack(a, B, Proj, k + 2 * mdeg), 1.0);
    return e;
  }

  // elementary left multiplications --------------------------------------
  Expansion prepend_kpow(uint32_t w, int j) const {
    int a, b, k;
    Mode m;
    unpack(w, a, b, m, k);
    Expansion e;
    cplx ph = ctx_->t_pow(2LL * j * (a - b));
    if (m == Power)
      e.add(pack(a, b, Power, k + j), ph);
    else
      e.add(w, ph * ctx_->t_pow(static_cast<long long>(j) * k));
    return e;
  }
  Expansion prepend_proj(uint32_t w, int j) const {
    int a, b, k;
    Mode m;
    unpack(w, a, b, m, k);
    Expansion e;
    int jj = j - 2 * a + 2 * b;
    if (m == Power)
      e.add(pack(a, b, Proj, jj), ctx_->t_pow(static_cast<long long>(jj) * k));
    else if (((jj - k) % (4 * ctx_->N())) == 0)
      e.add(w, 1.0);
    return e;
  }
  Expansion prepend_e(uint32_t w, int mdeg) const {
    const int N = ctx_->N();
    int a, b, k;
    Mode m;
    unpack(w, a, b, m, k);
    Expansion e;
    if (a + mdeg < N) e.add(pack(a + mdeg, b, m, k), 1.0);
    return e;
  }
  Expansion prepend_f(uint32_t w, int mdeg) const {
    const int N = ctx_->N();
    int a, b, k;
    Mode m;
    unpack(w, a, b, m, k);
    Expansion e;
    if (mdeg == 0) {
      e.add(w, 1.0);
      return e;
    }
    for (const auto& t : fe_.fe(mdeg, a)) {
      int B = t.b + b;
      if (B >= N) continue;
      if (m == Power)
        e.add(pack(t.a, B, Power, k + 2 * t.c), t.coef * ctx_->t_pow(-4LL * t.c * b));
      else
        e.add(pack(t.a, B, Proj, k),
              t.coef * ctx_->t_pow(-4LL * t.c * b + 2LL * t.c * k));
    }
    return e;
  }

  // word concatenation u * v (cap merges)
  Expansion concat(uint32_t u, uint32_t v) const {
    int a, b, k;
    Mode m;
    unpack(v, a, b, m, k);
    Expansion cur;
    cur.add(u, 1.0);
    auto step = [&](auto&& f) {
      Expansion nxt;
      for (auto& [w, c] : cur.terms)
        for (auto& [w2, c2] : f(w).terms) nxt.add(w2, c * c2);
      cur = std::move(nxt);
    };
    step([&](uint32_t w) { return append_e(w, a); });
    step([&](uint32_t w) { return append_f(w, b); });
    if (m == Power)
      step([&](uint32_t w) { return append_kpow(w, k); });
    else
      step([&](uint32_t w) { return append_proj(w, k); });
    return cur;
  }

  struct ArcEnd {
    int arc;
    bool exit;  // true: beads append; false: beads prepend
  };

  TensorElement walk(const TangleDiagram& d) const {
    const int N = ctx_->N();
    // arc bookkeeping (deterministic, shared across all terms)
    std::vector<ArcEnd> bd;
    int narcs = 0;
    std::vector<int> closed_slot(d.n_components + 1, -1);
    std::vector<int> arc_comp;

    if (2 * N * N * 2 * 4 * N > (1 << slot_bits))
      throw OracleError("symbolic oracle: N exceeds the key packing");
    State state;
    state[Key{0}] = 1.0;
    for (auto& [comp, up] : d.bottom) {
      if (!up) throw OracleError("downward bottom strands unsupported");
      (void)comp;
    }
    int nslots = 0;
    auto grow_key = [&](State&) {
      if (++nslots > 5) throw OracleError("symbolic oracle: too many open arcs");
      // new slots are zero-initialized inside the packed keys already
    };

    for (auto& [comp, up] : d.bottom) {
      int id = narcs++;
      arc_comp.push_back(comp);
      grow_key(state);
      bd.push_back({id, true});  // exit end: the walk leaves upward
    }

    // generic per-slot transformer
    auto transform = [&](State& st, int slot, auto&& fn) {
      State ns;
      ns.reserve(st.size());
      for (auto& [k, v] : st) {
        Expansion e = fn(key_get(k, slot));
        for (auto& [w2, c2] : e.terms) {
          if (std::abs(c2) == 0.0) continue;
          auto [it, fresh] = ns.try_emplace(key_set(k, slot, w2), v * c2);
          if (!fresh) it->second += v * c2;
        }
      }
      for (auto it = ns.begin(); it != ns.end();)
        it = (std::abs(it->second) < 1e-14) ? ns.erase(it) : std::next(it);
      if (ns.size() > max_terms_) throw OracleError("symbolic oracle: term budget exceeded");
      st = std::move(ns);
    };

    // bead application honoring the walk direction at an arc end
    auto apply_elem = [&](State& st, const ArcEnd& end, char which, int arg) {
      transform(st, end.arc, [&](uint32_t w) {
        switch (which) {
          case 'k':
            return end.exit ? append_kpow(w, arg) : prepend_kpow(w, arg);
          case 'P':
            return end.exit ? append_proj(w, arg) : prepend_proj(w, arg);
          case 'e':
            return end.exit ? append_e(w, arg) : prepend_e(w, arg);
          case 'f':
            return end.exit ? append_f(w, arg) : prepend_f(w, arg);
        }
        return Expansion{};
      });
    };
    for (size_t ei = 0; ei < d.events.size(); ++ei) {
      const auto& ev = d.events[ei];
      const int p = ev.pos - 1;
      switch (ev.kind) {
        case EvKind::Cup: {
          int id = narcs++;
          arc_comp.push_back(ev.comp);
          grow_key(state);
          // extremum bead: the (down,up) cup carries K^{N-1} = k^{2N-2}
          if (ev.down_up)
            transform(state, id, [&](uint32_t w) { return append_kpow(w, 2 * N - 2); });
          // exit end = the upward leg
          ArcEnd l{id, !ev.down_up}, r{id, ev.down_up};
          bd.insert(bd.begin() + p, r);
          bd.insert(bd.begin() + p, l);
          break;
        }
        case EvKind::Cap: {
          ArcEnd ea = bd[p], eb = bd[p + 1];
          // cap bead: (up,down) carries the pivot K^{N+1} = k^{2N+2}
          int pivot = ev.up_a ? 2 * N + 2 : 0;
          const ArcEnd& exit_end = ev.up_a ? ea : eb;
          const ArcEnd& entry_end = ev.up_a ? eb : ea;
          if (!exit_end.exit || entry_end.exit)
            throw OracleError("internal: cap meets arc ends of wrong polarity");
          if (pivot) apply_elem(state, exit_end, 'k', pivot);
          if (ea.arc == eb.arc) {
            closed_slot.at(ev.comp) = ea.arc;
          } else {
            // merged word: exit-arc content, then entry-arc content
            int keep = exit_end.arc, drop = entry_end.arc;
            State ns;
            ns.reserve(state.size());
            for (auto& [k, v] : state) {
              Expansion e = concat(key_get(k, keep), key_get(k, drop));
              for (auto& [w2, c2] : e.terms) {
                Key nk = key_set(key_set(k, keep, w2), drop, pack(0, 0, Power, 0));
                auto [it, fresh] = ns.try_emplace(nk, v * c2);
                if (!fresh) it->second += v * c2;
              }
            }
            state = std::move(ns);
            // surviving endpoints of `drop` now belong to `keep`
            for (auto& e : bd)
              if (e.arc == drop) e.arc = keep;
          }
          bd.erase(bd.begin() + p, bd.begin() + p + 2);
          break;
        }
        case EvKind::Cross: {
          if (!ev.up_a || !ev.up_b)
            throw OracleError("symbolic oracle: crossings on downward strands unsupported");
          ArcEnd left = bd[p], right = bd[p + 1];
          // one streaming pass over the input terms; the (m, j) bead sum
          // expands each term directly into the accumulator
          auto bead_expand = [&](uint32_t w, const ArcEnd& end, char w1, int a1, char w2,
                                 int a2) {
            auto one = [&](uint32_t ww, char which, int arg) {
              switch (which) {
                case 'k':
                  return end.exit ? append_kpow(ww, arg) : prepend_kpow(ww, arg);
                case 'P':
                  return end.exit ? append_proj(ww, arg) : prepend_proj(ww, arg);
                case 'e':
                  return end.exit ? append_e(ww, arg) : prepend_e(ww, arg);
                default:
                  return end.exit ? append_f(ww, arg) : prepend_f(ww, arg);
              }
            };
            Expansion cur;
            if (end.exit) {
              cur = one(w, w1, a1);
              Expansion nxt;
              for (auto& [wa, ca] : cur.terms)
                for (auto& [wb, cb] : one(wa, w2, a2).terms) nxt.add(wb, ca * cb);
              return nxt;
            }
            cur = one(w, w2, a2);
            Expansion nxt;
            for (auto& [wa, ca] : cur.terms)
              for (auto& [wb, cb] : one(wa, w1, a1).terms) nxt.add(wb, ca * cb);
            return nxt;
          };
          State total;
          total.reserve(state.size() * 2);
          double max_abs = 0.0;
          for (auto& [key, coef] : state) {
            for (int m = 0; m < N; ++m) {
              cplx km = coef;
              for (int i = 1; i <= m; ++i) km *= ctx_->brace_one() / ctx_->bracket(i);
              km *= ctx_->t_pow(static_cast<long long>(ev.sign) * m * (m - 1));
              if (ev.sign < 0 && (m % 2 == 1)) km = -km;
              for (int j = 0; j < 4 * N; ++j) {
                Expansion eL, eR;
                if (ev.sign > 0) {
                  eL = bead_expand(key_get(key, left.arc), left, 'k', j, 'f', m);
                  eR = bead_expand(key_get(key, right.arc), right, 'P', j, 'e', m);
                } else {
                  eL = bead_expand(key_get(key, left.arc), left, 'e', m, 'P', j);
                  eR = bead_expand(key_get(key, right.arc), right, 'f', m, 'k', -j);
                }
                if (left.arc == right.arc) {
                  // a self-crossing arc takes both beads at its two ends;
                  // expand sequentially on the single slot
                  for (auto& [wl, cl] : eL.terms) {
                    Expansion eR2;
                    if (ev.sign > 0)
                      eR2 = bead_expand(wl, right, 'P', j, 'e', m);
                    else
                      eR2 = bead_expand(wl, right, 'f', m, 'k', -j);
                    for (auto& [wr, cr] : eR2.terms) {
                      cplx c = km * cl * cr;
                      if (std::abs(c) == 0.0) continue;
                      auto [it, fresh] =
                          total.try_emplace(key_set(key, left.arc, wr), c);
                      if (!fresh) it->second += c;
                    }
                  }
                } else {
                  for (auto& [wl, cl] : eL.terms)
                    for (auto& [wr, cr] : eR.terms) {
                      cplx c = km * cl * cr;
                      if (std::abs(c) == 0.0) continue;
                      Key nk = key_set(key_set(key, left.arc, wl), right.arc, wr);
                      auto [it, fresh] = total.try_emplace(nk, c);
                      if (!fresh) it->second += c;
                    }
                }
              }
            }
            if (total.size() > max_terms_)
              throw OracleError("symbolic oracle: term budget exceeded");
          }
          for (auto& [k, v] : total) max_abs = std::max(max_abs, std::abs(v));
          for (auto it = total.begin(); it != total.end();)
            it = (std::abs(it->second) < 1e-14 * std::max(1.0, max_abs)) ? total.erase(it)
                                                                         : std::next(it);
          state = std::move(total);
          std::swap(bd[p], bd[p + 1]);
          break;
        }
      }
    }

    // cut component: remaining arc
    std::vector<int> slot_of_comp(d.n_components + 1, -1);
    for (int c = 1; c <= d.n_components; ++c) slot_of_comp[c] = closed_slot[c];
    if (!bd.empty()) {
      if (!d.cut_component) throw OracleError("internal: open strand without cut component");
      slot_of_comp[*d.cut_component] = bd[0].arc;
    }

    // convert to the PBW tensor: expand projectors, check odd k-parity cancels
    TensorElement out(ctx_, d.n_components);
    AlgebraElement probe(ctx_);
    std::unordered_map<Key, cplx> expanded;
    for (auto& [k, v] : state) {
      // expand each component slot into k-power words, re-packed by component
      std::vector<std::pair<Key, cplx>> parts{{Key(0), v}};
      for (int c = 1; c <= d.n_components; ++c) {
        int slot = slot_of_comp[c];
        uint32_t w = (slot >= 0 && slot < nslots) ? key_get(k, slot) : pack(0, 0, Power, 0);
        int a, b, kk;
        Mode m;
        unpack(w, a, b, m, kk);
        std::vector<std::pair<uint32_t, cplx>> slot_terms;
        if (m == Power) {
          slot_terms.push_back({w, 1.0});
        } else {
          for (int n = 0; n < 4 * N; ++n)
            slot_terms.push_back({pack(a, b, Power, n),
                                  ctx_->t_pow(-static_cast<long long>(n) * kk) /
                                      (4.0 * N)});
        }
        std::vector<std::pair<Key, cplx>> nxt;
        for (auto& [key0, c0] : parts)
          for (auto& [wp, cp] : slot_terms)
            nxt.push_back({key_set(key0, c - 1, wp), c0 * cp});
        parts = std::move(nxt);
      }
      for (auto& [key0, c0] : parts) expanded[key0] += c0;
    }
    double odd_mass = 0.0, total_mass = 0.0;
    for (auto& [k, v] : expanded) {
      bool odd = false;
      std::vector<uint32_t> pbw(d.n_components);
      for (int c = 0; c < d.n_components; ++c) {
        int a, b, kk;
        Mode m;
        unpack(key_get(k, c), a, b, m, kk);
        if (kk % 2 == 1) odd = true;
        pbw[c] = probe.key({a, b, (kk / 2) % (2 * N)});
      }
      if (odd)
        odd_mass += std::abs(v);
      else {
        total_mass += std::abs(v);
        out.add(pbw, v);
      }
    }
    if (odd_mass > 1e-8 * std::max(1.0, total_mass))
      throw OracleError("universal tensor has uncancelled odd k-parity");
    out.prune(1e-12);
    return out;
  }

  const Algebra* alg_;
  const RootContext* ctx_;
  ReorderTable fe_;
  size_t max_terms_;
};

}  // namespace gkn
