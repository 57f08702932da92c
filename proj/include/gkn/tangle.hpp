#pragma once

// Sliced tangle diagrams, the text DSL with positioned errors, component
// resolution, framing normalization by explicit curls, and exact linking
// data.
//
// Grammar (statements separated by ';' or newlines, '#' comments):
//   braid <n>
//   word s<k> s<k>^-1 ...
//   close all | close except <c>
//   frame <c> <f>
//   component <strand>=<c>
//   open <n>
//   slice <ev>@<pos> | <ev>@<pos> | ...     ev in {cup, cup', cap, x+, x-}
//
// Braid form: strands run upward, strand i closes to itself around the right
// (`close all` therefore requires the braid permutation to preserve every
// strand; merged strands need `close except`).  cup creates an (up, down)
// pair, cup' a (down, up) pair; cap infers its shape.  Events inside one
// slice statement apply left to right.

#include <array>
#include <cctype>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gkn/scalars.hpp"

namespace gkn {

struct ParseError : std::runtime_error {
  int line, col;
  ParseError(int l, int c, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(l) + ":" + std::to_string(c) +
                           ": " + msg),
        line(l),
        col(c) {}
};

enum class EvKind { Cup, Cap, Cross };

struct SliceEvent {
  EvKind kind{};
  int pos = 0;           // 1-based boundary position
  int sign = 0;          // crossing sign
  bool down_up = false;  // cup orientation: false = (up,down), true = (down,up)
  bool synthetic = false;  // inserted framing curl; skipped in label discovery

  // annotations filled by resolve()
  int comp = 0;      // component at pos (Cup/Cap: the strand; Cross: left strand)
  int comp_b = 0;    // right strand component for Cross
  bool up_a = true;  // orientation at pos before the event
  bool up_b = true;  // orientation at pos+1 before the event
};

struct LinkingData {
  std::vector<std::vector<long long>> matrix;  // framings on the diagonal
  int s_plus = 0, s_minus = 0;
};

struct BraidSource {
  int n = 0;
  std::vector<int> word;  // +k for s_k, -k for s_k^-1
  bool close_all = true;
  int except_comp = 0;
  std::vector<std::pair<int, int>> comp_labels;  // (strand, label)
};

class TangleDiagram {
 public:
  std::vector<SliceEvent> events;
  std::vector<std::pair<int, bool>> bottom;  // (component, up) open bottom points
  int n_components = 0;
  std::optional<int> cut_component;
  std::vector<long long> framings;                  // declared, per component
  std::vector<long long> writhe;                    // blackboard, per component
  std::vector<std::vector<long long>> cross_count;  // signed inter-component crossings
  std::optional<BraidSource> braid_src;
  int open_count = 0;

  // label assignments by sweep-class discovery index (bottom first, then cups)
  std::vector<std::pair<int, int>> class_labels;

  void resolve();

  LinkingData linking_data() const {
    std::vector<int> all(n_components);
    std::iota(all.begin(), all.end(), 1);
    return linking_data(all);
  }

  LinkingData linking_data(const std::vector<int>& comps) const {
    LinkingData ld;
    const int r = static_cast<int>(comps.size());
    ld.matrix.assign(r, std::vector<long long>(r, 0));
    for (int i = 0; i < r; ++i) {
      ld.matrix[i][i] = framings[comps[i] - 1];
      for (int j = 0; j < r; ++j)
        if (i != j) ld.matrix[i][j] = cross_count[comps[i] - 1][comps[j] - 1] / 2;
    }
    auto [sp, sm] = exact_signature(ld.matrix);
    ld.s_plus = sp;
    ld.s_minus = sm;
    return ld;
  }

  // Inserts curls so each component's blackboard writhe matches its declared
  // framing.  Uniform over colorings, including functional ones.
  TangleDiagram with_framing_curls() const;

  static std::pair<int, int> exact_signature(const std::vector<std::vector<long long>>& m);
};

namespace detail {

struct Frac {
  long long n = 0, d = 1;
  Frac() = default;
  Frac(long long a) : n(a) {}
  Frac(long long a, long long b) : n(a), d(b) { norm(); }
  void norm() {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
  }
  Frac operator*(const Frac& o) const { return Frac(n * o.n, d * o.d); }
  Frac operator/(const Frac& o) const { return Frac(n * o.d, d * o.n); }
  Frac operator+(const Frac& o) const { return Frac(n * o.d + o.n * d, d * o.d); }
  Frac operator-(const Frac& o) const { return Frac(n * o.d - o.n * d, d * o.d); }
  bool zero() const { return n == 0; }
  bool pos() const { return n > 0; }
};

}  // namespace detail

inline std::pair<int, int> TangleDiagram::exact_signature(
    const std::vector<std::vector<long long>>& m0) {
  using detail::Frac;
  int r = static_cast<int>(m0.size());
  std::vector<std::vector<Frac>> m(r, std::vector<Frac>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m[i][j] = Frac(m0[i][j]);
  std::vector<int> live(r);
  std::iota(live.begin(), live.end(), 0);
  int sp = 0, sm = 0;
  while (!live.empty()) {
    int pivot = -1;
    for (int idx : live)
      if (!m[idx][idx].zero()) {
        pivot = idx;
        break;
      }
    if (pivot >= 0) {
      Frac p = m[pivot][pivot];
      (p.pos() ? sp : sm)++;
      std::vector<int> rest;
      for (int idx : live)
        if (idx != pivot) rest.push_back(idx);
      for (int a : rest)
        for (int b : rest) m[a][b] = m[a][b] - m[a][pivot] * m[pivot][b] / p;
      live = rest;
      continue;
    }
    int i = -1, j = -1;
    for (size_t ai = 0; ai < live.size() && i < 0; ++ai)
      for (size_t bj = ai + 1; bj < live.size(); ++bj)
        if (!m[live[ai]][live[bj]].zero()) {
          i = live[ai];
          j = live[bj];
          break;
        }
    if (i < 0) break;  // remaining block is zero
    sp++;
    sm++;
    Frac a = m[i][j];
    std::vector<int> rest;
    for (int idx : live)
      if (idx != i && idx != j) rest.push_back(idx);
    for (int k : rest)
      for (int l : rest) m[k][l] = m[k][l] - (m[k][i] * m[j][l] + m[k][j] * m[i][l]) / a;
    live = rest;
  }
  return {sp, sm};
}

inline void TangleDiagram::resolve() {
  std::vector<int> parent;
  auto fresh = [&]() {
    parent.push_back(static_cast<int>(parent.size()));
    return static_cast<int>(parent.size()) - 1;
  };
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

  struct Pt {
    int seg;
    bool up;
  };
  std::vector<Pt> bd;
  std::vector<int> bottom_segs;
  for (auto& [comp, up] : bottom) {
    int s = fresh();
    bd.push_back({s, up});
    bottom_segs.push_back(s);
  }
  struct CrossRec {
    int seg_a, seg_b, sign;
  };
  std::vector<CrossRec> crossings;
  std::vector<std::pair<SliceEvent*, std::array<int, 2>>> annotate;
  std::vector<int> cup_segs;
  std::vector<int> disc_segs = bottom_segs;

  for (auto& ev : events) {
    int p = ev.pos - 1;
    switch (ev.kind) {
      case EvKind::Cup: {
        if (p < 0 || p > static_cast<int>(bd.size()))
          throw std::runtime_error("cup position " + std::to_string(ev.pos) + " out of range");
        int s = fresh();
        cup_segs.push_back(s);
        if (!ev.synthetic) disc_segs.push_back(s);
        bd.insert(bd.begin() + p, 2, {s, true});
        bd[p].up = !ev.down_up;
        bd[p + 1].up = ev.down_up;
        annotate.push_back({&ev, {s, s}});
        break;
      }
      case EvKind::Cap: {
        if (p < 0 || p + 1 >= static_cast<int>(bd.size()))
          throw std::runtime_error("cap position " + std::to_string(ev.pos) + " out of range");
        if (bd[p].up == bd[p + 1].up)
          throw std::runtime_error("cap joins strands of equal orientation");
        ev.up_a = bd[p].up;
        ev.up_b = bd[p + 1].up;
        unite(bd[p].seg, bd[p + 1].seg);
        annotate.push_back({&ev, {bd[p].seg, bd[p].seg}});
        bd.erase(bd.begin() + p, bd.begin() + p + 2);
        break;
      }
      case EvKind::Cross: {
        if (p < 0 || p + 1 >= static_cast<int>(bd.size()))
          throw std::runtime_error("crossing position " + std::to_string(ev.pos) +
                                   " out of range");
        ev.up_a = bd[p].up;
        ev.up_b = bd[p + 1].up;
        crossings.push_back({bd[p].seg, bd[p + 1].seg, ev.sign});
        annotate.push_back({&ev, {bd[p].seg, bd[p + 1].seg}});
        std::swap(bd[p], bd[p + 1]);
        break;
      }
    }
  }

  if (bd.size() != bottom.size())
    throw std::runtime_error("diagram leaves " + std::to_string(bd.size()) +
                             " strands open at the top with " +
                             std::to_string(bottom.size()) + " declared at the bottom");
  for (size_t i = 0; i < bd.size(); ++i) unite(bd[i].seg, bottom_segs[i]);

  std::vector<int> classes;
  auto class_id = [&](int seg) {
    int c = find(seg);
    for (size_t i = 0; i < classes.size(); ++i)
      if (classes[i] == c) return static_cast<int>(i);
    classes.push_back(c);
    return static_cast<int>(classes.size()) - 1;
  };
  for (int s : disc_segs) class_id(s);
  for (int s : cup_segs) class_id(s);
  int ncls = static_cast<int>(classes.size());

  std::vector<int> comp_of(ncls, 0);
  std::vector<bool> used(ncls + 2, false);
  for (auto& [disc, lab] : class_labels) {
    // `disc` indexes the discovery sequence (bottom points, then cups)
    if (disc < 0 || disc >= static_cast<int>(disc_segs.size()))
      throw std::runtime_error("component label index out of range");
    int cls = class_id(disc_segs[disc]);
    if (lab < 1 || lab > ncls)
      throw std::runtime_error("component id " + std::to_string(lab) + " out of range");
    if (comp_of[cls] != 0 && comp_of[cls] != lab)
      throw std::runtime_error("conflicting component labels");
    comp_of[cls] = lab;
    used[lab] = true;
  }
  int next = 1;
  for (int c = 0; c < ncls; ++c) {
    if (comp_of[c] != 0) continue;
    while (next <= ncls && used[next]) ++next;
    comp_of[c] = next;
    used[next] = true;
  }

  n_components = ncls;
  for (auto& [ev, segs] : annotate) {
    ev->comp = comp_of[class_id(segs[0])];
    ev->comp_b = comp_of[class_id(segs[1])];
  }
  for (size_t i = 0; i < bottom.size(); ++i) bottom[i].first = comp_of[class_id(bottom_segs[i])];
  cut_component = bottom.empty() ? std::nullopt : std::optional<int>(bottom[0].first);

  writhe.assign(ncls, 0);
  cross_count.assign(ncls, std::vector<long long>(ncls, 0));
  for (auto& cr : crossings) {
    int a = comp_of[class_id(cr.seg_a)], b = comp_of[class_id(cr.seg_b)];
    if (a == b)
      writhe[a - 1] += cr.sign;
    else {
      cross_count[a - 1][b - 1] += cr.sign;
      cross_count[b - 1][a - 1] += cr.sign;
    }
  }
  if (framings.size() < static_cast<size_t>(ncls)) framings.resize(ncls, 0);
}

inline TangleDiagram TangleDiagram::with_framing_curls() const {
  TangleDiagram d = *this;
  struct Pt {
    int comp;
    bool up;
  };
  std::vector<Pt> bd;
  for (auto& [comp, up] : d.bottom) bd.push_back({comp, up});
  std::vector<long long> delta(d.n_components);
  for (int c = 1; c <= d.n_components; ++c) delta[c - 1] = d.framings[c - 1] - d.writhe[c - 1];

  size_t i = 0;
  auto try_insert = [&]() {
    for (int c = 1; c <= d.n_components; ++c) {
      if (delta[c - 1] == 0) continue;
      for (size_t p = 0; p < bd.size(); ++p) {
        if (bd[p].comp != c || !bd[p].up) continue;
        std::vector<SliceEvent> curls;
        int sgn = delta[c - 1] > 0 ? +1 : -1;
        int P = static_cast<int>(p) + 1;
        for (long long k = 0; k < std::llabs(delta[c - 1]); ++k) {
          curls.push_back({EvKind::Cup, P + 1, 0, false, true});
          curls.push_back({EvKind::Cross, P, sgn, false, true});
          curls.push_back({EvKind::Cap, P + 1, 0, false, true});
        }
        d.events.insert(d.events.begin() + i, curls.begin(), curls.end());
        i += curls.size();
        delta[c - 1] = 0;
        return true;
      }
    }
    return false;
  };

  while (try_insert()) {
  }
  while (i < d.events.size()) {
    const auto& ev = d.events[i];
    int p = ev.pos - 1;
    switch (ev.kind) {
      case EvKind::Cup:
        bd.insert(bd.begin() + p, 2, {ev.comp, true});
        bd[p].up = !ev.down_up;
        bd[p + 1].up = ev.down_up;
        break;
      case EvKind::Cap:
        bd.erase(bd.begin() + p, bd.begin() + p + 2);
        break;
      case EvKind::Cross:
        std::swap(bd[p], bd[p + 1]);
        break;
    }
    ++i;
    while (try_insert()) {
    }
  }
  for (int c = 0; c < d.n_components; ++c)
    if (delta[c] != 0)
      throw std::runtime_error("cannot place a framing curl on component " +
                               std::to_string(c + 1));
  d.resolve();
  return d;
}

// ---------------------------------------------------------------------------
// parsing

namespace detail {

struct Token {
  std::string text;
  int line, col;
};

inline std::vector<std::vector<Token>> tokenize(const std::string& src) {
  std::vector<std::vector<Token>> stmts(1);
  int line = 1, col = 0;
  std::string cur;
  int tl = 1, tc = 1;
  bool comment = false;
  auto flush = [&]() {
    if (!cur.empty()) {
      stmts.back().push_back({cur, tl, tc});
      cur.clear();
    }
  };
  auto end_stmt = [&]() {
    flush();
    if (!stmts.back().empty()) stmts.emplace_back();
  };
  for (char ch : src) {
    ++col;
    if (ch == '\n') {
      end_stmt();
      ++line;
      col = 0;
      comment = false;
      continue;
    }
    if (comment) continue;
    if (ch == '#') {
      flush();
      comment = true;
      continue;
    }
    if (ch == ';') {
      end_stmt();
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(ch))) {
      flush();
      continue;
    }
    if (ch == '|' || ch == '=') {
      flush();
      stmts.back().push_back({std::string(1, ch), line, col});
      continue;
    }
    if (cur.empty()) {
      tl = line;
      tc = col;
    }
    cur.push_back(ch);
  }
  end_stmt();
  std::vector<std::vector<Token>> out;
  for (auto& s : stmts)
    if (!s.empty()) out.push_back(s);
  return out;
}

inline long long parse_int(const Token& t) {
  try {
    size_t pos = 0;
    long long v = std::stoll(t.text, &pos);
    if (pos != t.text.size()) throw std::invalid_argument("");
    return v;
  } catch (...) {
    throw ParseError(t.line, t.col, "expected an integer, got '" + t.text + "'");
  }
}

}  // namespace detail

class Tangle {
 public:
  static TangleDiagram from_braid(const BraidSource& bs);
  static TangleDiagram parse(const std::string& text);
  static std::string print(const TangleDiagram& d);
};

inline TangleDiagram Tangle::from_braid(const BraidSource& bs) {
  const int n = bs.n;
  if (n < 1) throw std::runtime_error("braid width must be positive");
  for (int w : bs.word)
    if (w == 0 || std::abs(w) >= n)
      throw std::runtime_error("braid generator s" + std::to_string(std::abs(w)) +
                               " needs width > " + std::to_string(std::abs(w)));

  // closure permutation: bottom strand i continues to bottom strand perm[i]
  std::vector<int> perm(n + 1);
  {
    std::vector<int> at(n + 1);
    for (int i = 1; i <= n; ++i) at[i] = i;
    for (int w : bs.word) {
      int p = std::abs(w);
      std::swap(at[p], at[p + 1]);
    }
    for (int p = 1; p <= n; ++p) perm[at[p]] = p;
  }
  std::vector<int> cyc(n + 1, 0);
  int ncomp = 0;
  for (int i = 1; i <= n; ++i) {
    if (cyc[i]) continue;
    ++ncomp;
    for (int j = i; !cyc[j]; j = perm[j]) cyc[j] = ncomp;
  }

  // final component labels per cycle (explicit labels, then least-strand order)
  std::vector<int> label_of_cycle(ncomp + 1, 0);
  std::vector<bool> used(n + 2, false);
  for (auto& [strand, lab] : bs.comp_labels) {
    if (strand < 1 || strand > n)
      throw std::runtime_error("component: strand " + std::to_string(strand) + " out of range");
    if (lab < 1 || lab > ncomp)
      throw std::runtime_error("component id " + std::to_string(lab) + " out of range (" +
                               std::to_string(ncomp) + " components)");
    int cy = cyc[strand];
    if (label_of_cycle[cy] != 0 && label_of_cycle[cy] != lab)
      throw std::runtime_error("conflicting component labels");
    label_of_cycle[cy] = lab;
    used[lab] = true;
  }
  {
    int nxt = 1;
    for (int i = 1; i <= n; ++i) {
      int cy = cyc[i];
      if (label_of_cycle[cy]) continue;
      while (nxt <= ncomp && used[nxt]) ++nxt;
      label_of_cycle[cy] = nxt;
      used[nxt] = true;
    }
  }

  int cut_strand = 0;
  if (!bs.close_all) {
    for (int i = 1; i <= n && !cut_strand; ++i)
      if (label_of_cycle[cyc[i]] == bs.except_comp) cut_strand = i;
    if (!cut_strand)
      throw std::runtime_error("close except: unknown component " +
                               std::to_string(bs.except_comp));
  } else if (ncomp != n) {
    throw std::runtime_error("closure yields " + std::to_string(ncomp) +
                             " components where " + std::to_string(n) +
                             " labels declared; use 'close except'");
  }

  TangleDiagram d;
  d.braid_src = bs;
  if (cut_strand) d.bottom.push_back({0, true});

  // Closure geometry: strands left of the cut close around the left side
  // with (down,up) cups, the others around the right with (up,down) cups.
  // The braid box occupies positions off+1 .. off+n with off = cut_strand-1
  // left-return points (off = 0 when the diagram is fully closed).
  const int c = cut_strand ? cut_strand : 1;
  const int off = cut_strand ? cut_strand - 1 : 0;
  std::vector<int> cup_strand;
  for (int k = c - 1; k >= 1; --k) {
    d.events.push_back({EvKind::Cup, c - k, 0, true});
    cup_strand.push_back(k);
  }
  for (int k = (cut_strand ? c + 1 : 1); k <= n; ++k) {
    if (k == cut_strand) continue;
    d.events.push_back({EvKind::Cup, off + k, 0, false});
    cup_strand.push_back(k);
  }
  for (int w : bs.word)
    d.events.push_back({EvKind::Cross, off + std::abs(w), w > 0 ? +1 : -1, false});
  for (int k = n; k > (cut_strand ? c : 0); --k) {
    if (k == cut_strand) continue;
    d.events.push_back({EvKind::Cap, off + k, 0, false});
  }
  for (int k = 1; k <= c - 1; ++k) d.events.push_back({EvKind::Cap, c - k, 0, false});

  // discovery order: the cut strand's bottom point (if any), then cups
  int disc = 0;
  if (cut_strand) d.class_labels.push_back({disc++, label_of_cycle[cyc[cut_strand]]});
  for (int s : cup_strand) d.class_labels.push_back({disc++, label_of_cycle[cyc[s]]});

  d.framings.assign(ncomp, 0);
  d.resolve();
  return d;
}

inline TangleDiagram Tangle::parse(const std::string& text) {
  auto stmts = detail::tokenize(text);
  std::optional<BraidSource> braid;
  std::vector<int> word;
  bool have_close = false, close_all = true;
  int except_comp = 0;
  std::vector<std::pair<int, long long>> frames;
  std::vector<std::pair<int, detail::Token>> frame_toks;
  std::vector<std::pair<int, int>> comp_labels;
  int open_n = -1;
  std::vector<SliceEvent> slices;
  detail::Token anchor{"", 1, 1};

  for (auto& st : stmts) {
    const auto& head = st[0];
    auto need = [&](size_t k) {
      if (st.size() < k + 1)
        throw ParseError(head.line, head.col, "statement '" + head.text + "' is incomplete");
    };
    if (head.text == "braid") {
      need(1);
      anchor = head;
      braid = BraidSource{};
      braid->n = static_cast<int>(detail::parse_int(st[1]));
      if (braid->n < 1) throw ParseError(st[1].line, st[1].col, "braid width must be >= 1");
    } else if (head.text == "word") {
      for (size_t i = 1; i < st.size(); ++i) {
        const auto& t = st[i];
        std::string s = t.text;
        int sign = +1;
        auto caret = s.find("^-1");
        if (caret != std::string::npos) {
          if (caret + 3 != s.size())
            throw ParseError(t.line, t.col, "unknown braid token '" + s + "'");
          sign = -1;
          s = s.substr(0, caret);
        }
        int k = 0;
        bool ok = s.size() >= 2 && s[0] == 's';
        if (ok)
          try {
            size_t pos = 0;
            k = std::stoi(s.substr(1), &pos);
            ok = (pos + 1 == s.size()) && k >= 1;
          } catch (...) {
            ok = false;
          }
        if (!ok) throw ParseError(t.line, t.col, "unknown braid token '" + t.text + "'");
        if (braid && k >= braid->n)
          throw ParseError(t.line, t.col,
                           "generator s" + std::to_string(k) + " needs braid width > " +
                               std::to_string(k));
        word.push_back(sign * k);
      }
    } else if (head.text == "close") {
      need(1);
      have_close = true;
      anchor = head;
      if (st[1].text == "all") {
        close_all = true;
      } else if (st[1].text == "except") {
        need(2);
        close_all = false;
        except_comp = static_cast<int>(detail::parse_int(st[2]));
      } else {
        throw ParseError(st[1].line, st[1].col, "expected 'all' or 'except'");
      }
    } else if (head.text == "frame") {
      need(2);
      frames.push_back({static_cast<int>(detail::parse_int(st[1])), detail::parse_int(st[2])});
      frame_toks.push_back({static_cast<int>(frames.size()) - 1, st[1]});
    } else if (head.text == "component") {
      need(3);
      if (st[2].text != "=") throw ParseError(st[2].line, st[2].col, "expected '='");
      comp_labels.push_back({static_cast<int>(detail::parse_int(st[1])),
                             static_cast<int>(detail::parse_int(st[3]))});
    } else if (head.text == "open") {
      need(1);
      anchor = head;
      open_n = static_cast<int>(detail::parse_int(st[1]));
      if (open_n < 0) throw ParseError(st[1].line, st[1].col, "open count must be >= 0");
    } else if (head.text == "slice") {
      for (size_t i = 1; i < st.size(); ++i) {
        const auto& t = st[i];
        if (t.text == "|") continue;
        auto at = t.text.find('@');
        if (at == std::string::npos)
          throw ParseError(t.line, t.col, "expected <event>@<pos>, got '" + t.text + "'");
        std::string ev = t.text.substr(0, at);
        int pos = 0;
        try {
          size_t p = 0;
          pos = std::stoi(t.text.substr(at + 1), &p);
          if (p != t.text.size() - at - 1) throw std::invalid_argument("");
        } catch (...) {
          throw ParseError(t.line, t.col, "bad slice position in '" + t.text + "'");
        }
        SliceEvent e;
        e.pos = pos;
        if (ev == "cup")
          e.kind = EvKind::Cup;
        else if (ev == "cup'") {
          e.kind = EvKind::Cup;
          e.down_up = true;
        } else if (ev == "cap")
          e.kind = EvKind::Cap;
        else if (ev == "x+") {
          e.kind = EvKind::Cross;
          e.sign = +1;
        } else if (ev == "x-") {
          e.kind = EvKind::Cross;
          e.sign = -1;
        } else
          throw ParseError(t.line, t.col, "unknown slice event '" + ev + "'");
        slices.push_back(e);
        anchor = t;
      }
    } else {
      throw ParseError(head.line, head.col, "unknown statement '" + head.text + "'");
    }
  }

  TangleDiagram d;
  try {
    if (braid) {
      if (!have_close) throw std::runtime_error("braid form needs a 'close' statement");
      if (open_n >= 0 || !slices.empty())
        throw std::runtime_error("cannot mix braid and slice forms");
      braid->word = word;
      braid->close_all = close_all;
      braid->except_comp = except_comp;
      braid->comp_labels = comp_labels;
      d = from_braid(*braid);
    } else {
      d.open_count = std::max(open_n, 0);
      for (int i = 0; i < d.open_count; ++i) d.bottom.push_back({0, true});
      d.events = slices;
      d.class_labels = comp_labels;
      d.resolve();
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(anchor.line, anchor.col, e.what());
  }
  for (size_t fi = 0; fi < frames.size(); ++fi) {
    auto [c, f] = frames[fi];
    if (c < 1 || c > d.n_components)
      throw ParseError(frame_toks[fi].second.line, frame_toks[fi].second.col,
                       "frame: unknown component " + std::to_string(c));
    d.framings[c - 1] = f;
  }
  return d;
}

inline std::string Tangle::print(const TangleDiagram& d) {
  std::ostringstream os;
  if (d.braid_src) {
    const auto& b = *d.braid_src;
    os << "braid " << b.n << "; word";
    for (int w : b.word) os << " s" << std::abs(w) << (w < 0 ? "^-1" : "");
    os << "; close ";
    if (b.close_all)
      os << "all";
    else
      os << "except " << b.except_comp;
    for (auto& [s, l] : b.comp_labels) os << "; component " << s << "=" << l;
  } else {
    os << "open " << d.open_count;
    if (!d.events.empty()) {
      os << "; slice";
      bool first = true;
      for (const auto& e : d.events) {
        os << (first ? " " : " | ");
        first = false;
        switch (e.kind) {
          case EvKind::Cup:
            os << (e.down_up ? "cup'" : "cup") << "@" << e.pos;
            break;
          case EvKind::Cap:
            os << "cap@" << e.pos;
            break;
          case EvKind::Cross:
            os << (e.sign > 0 ? "x+" : "x-") << "@" << e.pos;
            break;
        }
      }
    }
    for (auto& [disc, lab] : d.class_labels) os << "; component " << disc << "=" << lab;
  }
  for (int c = 1; c <= d.n_components; ++c)
    if (d.framings[c - 1] != 0) os << "; frame " << c << " " << d.framings[c - 1];
  return os.str();
}

// standard diagrams used across the test and tool corpus
inline std::string hopf_text(long long f = 0, int cut = 1) {
  std::ostringstream os;
  os << "braid 2; word s1 s1; close " << (cut ? "except " + std::to_string(cut) : "all");
  if (f) os << "; frame 2 " << f;
  return os.str();
}
inline std::string trefoil_text() { return "braid 2; word s1 s1 s1; close except 1"; }
inline std::string figure_eight_text() {
  return "braid 3; word s1 s2^-1 s1 s2^-1; close except 1";
}
// Whitehead pair: component 1 the 0-framed knot, component 2 the surgery
// component with framing f (clasp plus one self-crossing, linking number 0).
inline std::string whitehead_text(long long f) {
  std::ostringstream os;
  os << "braid 3; word s1 s2^-1 s1 s2^-1 s1; close except 1";
  if (f) os << "; frame 2 " << f;
  return os.str();
}
inline std::string unknot_tangle_text(long long frame = 0) {
  std::ostringstream os;
  os << "braid 1; word ; close except 1";
  if (frame) os << "; frame 1 " << frame;
  return os.str();
}
inline std::string unknot_closed_text(long long frame = 0) {
  std::ostringstream os;
  os << "braid 1; word ; close all";
  if (frame) os << "; frame 1 " << frame;
  return os.str();
}

}  // namespace gkn
