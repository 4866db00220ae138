#include "gentle/hom_basis.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace gentle {

namespace {

// ---------------------------------------------------------------------------
// Unfolded diagrams with slot bookkeeping
// ---------------------------------------------------------------------------

struct Diag {
  const GentleAlgebra* A = nullptr;
  bool cyclic = false;
  bool left_inf = false, right_inf = false;
  int guard_lo = 0, guard_hi = 0;  // node range scanned for map positions

  struct Node {
    int vertex = -1;
    int degree = 0;
    int slot_idx = -1;     // -1 when the complex is never materialised
    int stored_node = -1;  // presentation-independent node id
  };
  struct Edge {
    Path path;
    bool rightward = false;
    Rat scalar = 1;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;

  int n_nodes() const { return static_cast<int>(nodes.size()); }
  int n_edges() const { return static_cast<int>(edges.size()); }

  int left_node(int e) const { return e; }
  int right_node(int e) const { return cyclic ? (e + 1) % n_nodes() : e + 1; }
  int low_node(int e) const { return edges[e].rightward ? left_node(e) : right_node(e); }
  int high_node(int e) const { return edges[e].rightward ? right_node(e) : left_node(e); }

  int left_edge(int node) const {
    if (cyclic) return (node - 1 + n_edges()) % n_edges();
    return node > 0 ? node - 1 : -1;
  }
  int right_edge(int node) const {
    if (cyclic) return node;
    return node < n_edges() ? node : -1;
  }

  void edges_into(int node, std::vector<int>& out) const {
    out.clear();
    for (int e : {left_edge(node), right_edge(node)})
      if (e >= 0 && high_node(e) == node) out.push_back(e);
  }
  void edges_out_of(int node, std::vector<int>& out) const {
    out.clear();
    for (int e : {left_edge(node), right_edge(node)})
      if (e >= 0 && low_node(e) == node) out.push_back(e);
  }

  bool at_probe_boundary(int node) const {
    if (cyclic) return false;
    return (left_inf && node == 0) || (right_inf && node == n_nodes() - 1);
  }
  bool in_guard(int node) const { return node >= guard_lo && node <= guard_hi; }
};

// Unrolls `tail` letters of every infinite side of `w`.
HomotopyWord probe_word(const GentleAlgebra& A, const HomotopyWord& w, int tail) {
  HomotopyWord out = w;
  out.kind = WordKind::String;
  out.left_period.clear();
  out.right_period.clear();
  if (w.kind == WordKind::LeftInfinite || w.kind == WordKind::TwoSidedInfinite) {
    int deg = w.letters.front().deg_l;
    for (int k = 0; k < tail; ++k) {
      int a = w.left_period[k % w.left_period.size()];
      out.letters.insert(out.letters.begin(), {A.arrow_path(a), deg - 1, deg});
      --deg;
    }
  }
  if (w.kind == WordKind::RightInfinite || w.kind == WordKind::TwoSidedInfinite) {
    int deg = w.letters.back().deg_r;
    for (int k = 0; k < tail; ++k) {
      int a = w.right_period[k % w.right_period.size()];
      out.letters.push_back({A.arrow_path(a), deg, deg - 1});
      --deg;
    }
  }
  return out;
}

// `w` must already be band-rotation-normalised.
Diag make_diag(const GentleAlgebra& A, const HomotopyWord& w, bool invert, int tail,
               int guard) {
  Diag d;
  d.A = &A;
  HomotopyWord base = w.finite() ? w : probe_word(A, w, tail);
  d.cyclic = base.kind == WordKind::Band;
  bool left_inf = w.kind == WordKind::LeftInfinite || w.kind == WordKind::TwoSidedInfinite;
  bool right_inf = w.kind == WordKind::RightInfinite || w.kind == WordKind::TwoSidedInfinite;
  HomotopyWord pres = invert ? inverse(A, base) : base;
  d.left_inf = invert ? right_inf : left_inf;
  d.right_inf = invert ? left_inf : right_inf;

  const int nn = d.cyclic ? pres.size() : (pres.is_trivial_string() ? 1 : pres.size() + 1);
  d.nodes.resize(nn);
  SlotMap sm;
  bool have_slots = w.finite();
  if (have_slots) sm = slot_map(base);
  for (int p = 0; p < nn; ++p) {
    Diag::Node& nd = d.nodes[p];
    nd.vertex = node_vertex(pres, p);
    nd.degree = node_degree(pres, p);
    nd.stored_node = invert ? (d.cyclic ? (nn - p) % nn : nn - 1 - p) : p;
    if (have_slots) nd.slot_idx = sm.node_slot[nd.stored_node].second;
  }
  if (!pres.is_trivial_string()) {
    d.edges.resize(pres.size());
    for (int e = 0; e < pres.size(); ++e) {
      d.edges[e].path = pres.letters[e].path;
      d.edges[e].rightward = pres.letters[e].direct();
      if (pres.kind == WordKind::Band && e == pres.lambda_pos)
        d.edges[e].scalar = pres.lambda;
    }
  }
  d.guard_lo = d.left_inf ? guard : 0;
  d.guard_hi = d.right_inf ? nn - 1 - guard : nn - 1;
  return d;
}

// ---------------------------------------------------------------------------
// Arrow-list helpers (application order)
// ---------------------------------------------------------------------------

bool ends_with(const std::vector<int>& v, const std::vector<int>& suffix) {
  if (suffix.size() > v.size()) return false;
  return std::equal(suffix.rbegin(), suffix.rend(), v.rbegin());
}
bool starts_with(const std::vector<int>& v, const std::vector<int>& prefix) {
  if (prefix.size() > v.size()) return false;
  return std::equal(prefix.begin(), prefix.end(), v.begin());
}

Path subpath(const GentleAlgebra& A, const Path& p, size_t from, size_t to) {
  Path out;
  out.arrows.assign(p.arrows.begin() + from, p.arrows.begin() + to);
  out.source = from == 0 ? p.source : A.arrow(p.arrows[from - 1]).target;
  out.target = to == 0 ? out.source : A.arrow(p.arrows[to - 1]).target;
  return out;
}

// ---------------------------------------------------------------------------
// Node-level components
// ---------------------------------------------------------------------------

struct NodeComp {
  int vnode = -1;
  int wnode = -1;
  Rat coeff = 1;
  Path path;  // stationary = isomorphism

  bool operator==(const NodeComp&) const = default;
};

MorphComponent to_component(const Diag& dv, const Diag& dw, const NodeComp& c) {
  MorphComponent mc;
  mc.degree = dv.nodes[c.vnode].degree;
  mc.src_slot = dv.nodes[c.vnode].slot_idx;
  mc.tgt_slot = dw.nodes[c.wnode].slot_idx;
  mc.scalar = c.coeff;
  mc.path = c.path;
  return mc;
}

bool single_valid(const Diag& dv, const Diag& dw, int X, int Y, const Path& p) {
  const GentleAlgebra& A = *dv.A;
  std::vector<int> es;
  dv.edges_into(X, es);
  for (int e : es)
    if (A.compose(dv.edges[e].path, p)) return false;
  dw.edges_out_of(Y, es);
  for (int e : es)
    if (A.compose(p, dw.edges[e].path)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Pair context
// ---------------------------------------------------------------------------

struct PairCtx {
  const GentleAlgebra& A;
  HomotopyWord v, w;
  Diag dv, dw, dw_inv;
  bool counting_only = false;
};

PairCtx make_ctx(const GentleAlgebra& A, const HomotopyWord& v, const HomotopyWord& w) {
  auto period = [](const HomotopyWord& x) {
    size_t p = 1;
    p = std::max(p, x.left_period.size());
    p = std::max(p, x.right_period.size());
    return static_cast<int>(p);
  };
  int pv = period(v), pw = period(w);
  int L = pv;
  while (L % pw != 0) L += pv;  // small common multiple
  int vtail = 2 * L + w.size() + 2 * pw + 4;
  int wtail = 2 * L + v.size() + 2 * pv + 4;
  int vguard = L + 2, wguard = L + 2;
  PairCtx ctx{A,
              v,
              w,
              make_diag(A, v, false, vtail, vguard),
              make_diag(A, w, false, wtail, wguard),
              make_diag(A, w, true, wtail, wguard),
              !v.finite() || !w.finite()};
  return ctx;
}

// ---------------------------------------------------------------------------
// Single and double candidates
// ---------------------------------------------------------------------------

std::vector<NodeComp> all_single_comps(const PairCtx& ctx) {
  std::vector<NodeComp> out;
  for (int X = ctx.dv.guard_lo; X <= ctx.dv.guard_hi; ++X)
    for (int Y = ctx.dw.guard_lo; Y <= ctx.dw.guard_hi; ++Y) {
      if (ctx.dv.nodes[X].degree != ctx.dw.nodes[Y].degree) continue;
      for (const auto& p :
           ctx.A.paths_between(ctx.dw.nodes[Y].vertex, ctx.dv.nodes[X].vertex)) {
        if (p.stationary()) continue;
        if (!single_valid(ctx.dv, ctx.dw, X, Y, p)) continue;
        out.push_back({X, Y, 1, p});
      }
    }
  return out;
}

struct DoubleMap {
  NodeComp lo, hi;
  int ev = -1, ew = -1;
  bool singleton = false;
  bool null_substring = false;
};

std::optional<DoubleMap> try_double(const PairCtx& ctx, int ev, int ew, const Path& qL) {
  const GentleAlgebra& A = ctx.A;
  const Diag& dv = ctx.dv;
  const Diag& dw = ctx.dw;
  int lv = dv.low_node(ev), hv = dv.high_node(ev);
  int lw = dw.low_node(ew), hw = dw.high_node(ew);
  const Path& pv = dv.edges[ev].path;
  auto C = A.compose(qL, dw.edges[ew].path);
  if (!C) return std::nullopt;
  if (!ends_with(C->arrows, pv.arrows)) return std::nullopt;
  size_t cut = C->arrows.size() - pv.arrows.size();
  if (cut == 0) return std::nullopt;  // the high component would be stationary
  Path qR = subpath(A, *C, 0, cut);
  Rat cR = dw.edges[ew].scalar / dv.edges[ev].scalar;
  DoubleMap dm;
  dm.lo = {lv, lw, 1, qL};
  dm.hi = {hv, hw, cR, qR};
  dm.ev = ev;
  dm.ew = ew;
  // endpoint conditions beyond the commuting square
  std::vector<int> es;
  dv.edges_into(lv, es);
  for (int e : es)
    if (A.compose(dv.edges[e].path, qL)) return std::nullopt;
  dw.edges_out_of(lw, es);
  for (int e : es)
    if (e != ew && A.compose(qL, dw.edges[e].path)) return std::nullopt;
  dv.edges_into(hv, es);
  for (int e : es)
    if (e != ev && A.compose(dv.edges[e].path, qR)) return std::nullopt;
  dw.edges_out_of(hw, es);
  for (int e : es)
    if (A.compose(qR, dw.edges[e].path)) return std::nullopt;
  if (qL.length() < pv.length())
    dm.singleton = true;
  else if (qL.length() > pv.length())
    dm.null_substring = true;
  return dm;
}

std::vector<DoubleMap> all_doubles(const PairCtx& ctx) {
  std::vector<DoubleMap> out;
  for (int ev = 0; ev < ctx.dv.n_edges(); ++ev) {
    int lv = ctx.dv.low_node(ev);
    if (!ctx.dv.in_guard(lv) || !ctx.dv.in_guard(ctx.dv.high_node(ev))) continue;
    for (int ew = 0; ew < ctx.dw.n_edges(); ++ew) {
      int lw = ctx.dw.low_node(ew);
      if (!ctx.dw.in_guard(lw) || !ctx.dw.in_guard(ctx.dw.high_node(ew))) continue;
      if (ctx.dv.nodes[lv].degree != ctx.dw.nodes[lw].degree) continue;
      for (const auto& qL :
           ctx.A.paths_between(ctx.dw.nodes[lw].vertex, ctx.dv.nodes[lv].vertex)) {
        if (qL.stationary()) continue;
        if (auto dm = try_double(ctx, ev, ew, qL)) out.push_back(std::move(*dm));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// The homotopy walk
// ---------------------------------------------------------------------------

struct WalkRep {
  std::vector<NodeComp> comps;  // one (single) or two (double; low degree first)
  bool dbl() const { return comps.size() == 2; }
};

std::string rep_position_key(const WalkRep& r) {
  std::string s;
  for (const auto& c : r.comps) {
    s += std::to_string(c.vnode) + "/" + std::to_string(c.wnode) + ":";
    for (int a : c.path.arrows) s += std::to_string(a) + ",";
    s += ";";
  }
  return s;
}

class Walker {
 public:
  Walker(const PairCtx& c, const Diag& v, const Diag& w) : ctx_(c), dv_(v), dw_(w) {}

  HomotopySet take_result() { return std::move(result_); }
  const std::vector<std::string>& rep_keys() const { return rep_keys_; }

  void run_from_single(const NodeComp& seed) {
    push_rep(WalkRep{{seed}});
    loop();
    finish();
  }

  void run_from_double(const DoubleMap& dm) {
    if (dm.null_substring) {
      null_out("the low component factors through the source middle differential");
      push_rep(WalkRep{{dm.lo, dm.hi}});
      finish();
      return;
    }
    push_rep(WalkRep{{dm.lo, dm.hi}});
    if (dm.singleton) {
      finish();
      return;
    }
    // trivial common substring: both middle differentials are spent at once
    used_.insert({0, dm.ev});
    used_.insert({1, dm.ew});
    int Xr = dm.hi.vnode, Yl = dm.lo.wnode;
    if (dv_.at_probe_boundary(Xr) || dw_.at_probe_boundary(Yl)) {
      boundary_ = true;
      finish();
      return;
    }
    Rat h = dm.lo.coeff / dv_.edges[dm.ev].scalar;
    record_homotopy(Xr, Yl, h);
    std::vector<NodeComp> terms;
    std::vector<int> es;
    dv_.edges_into(Xr, es);
    for (int e2 : es)
      if (e2 != dm.ev) {
        terms.push_back({dv_.low_node(e2), Yl, -h * dv_.edges[e2].scalar, dv_.edges[e2].path});
        used_.insert({0, e2});
      }
    dw_.edges_out_of(Yl, es);
    for (int e3 : es)
      if (e3 != dm.ew) {
        terms.push_back({Xr, dw_.high_node(e3), -h * dw_.edges[e3].scalar, dw_.edges[e3].path});
        used_.insert({1, e3});
      }
    accept_terms(terms);
    loop();
    finish();
  }

 private:
  const PairCtx& ctx_;
  const Diag& dv_;
  const Diag& dw_;
  std::set<std::pair<int, int>> used_;
  std::map<std::string, Rat> visited_;
  std::vector<WalkRep> active_;
  std::vector<std::string> rep_keys_;
  HomotopySet result_;
  bool nulled_ = false;
  bool boundary_ = false;

  void null_out(const std::string& why) {
    if (!nulled_) {
      nulled_ = true;
      result_.null_reason = why;
    }
  }

  void push_rep(const WalkRep& r) {
    std::string key = rep_position_key(r);
    visited_.emplace(key, r.comps[0].coeff);
    rep_keys_.push_back(key);
    result_.reps.push_back({});
    for (const auto& c : r.comps) result_.reps.back().push_back(to_component(dv_, dw_, c));
    active_.push_back(r);
  }

  void record_homotopy(int vnode, int wnode, const Rat& scalar) {
    MorphComponent h;
    h.degree = dv_.nodes[vnode].degree;
    h.src_slot = dv_.nodes[vnode].slot_idx;
    h.tgt_slot = dw_.nodes[wnode].slot_idx;
    h.scalar = scalar;
    h.path = ctx_.A.stationary_path(dv_.nodes[vnode].vertex);
    result_.homotopies.push_back(h);
  }

  bool proper_factor_null(const NodeComp& g) {
    std::vector<int> es;
    dv_.edges_out_of(g.vnode, es);
    for (int e : es)
      if (g.path.length() > dv_.edges[e].path.length() &&
          ends_with(g.path.arrows, dv_.edges[e].path.arrows))
        return true;
    dw_.edges_into(g.wnode, es);
    for (int e : es)
      if (g.path.length() > dw_.edges[e].path.length() &&
          starts_with(g.path.arrows, dw_.edges[e].path.arrows))
        return true;
    return false;
  }

  void accept_terms(const std::vector<NodeComp>& terms) {
    if (terms.empty()) {
      null_out("the homotopy bounds the representative exactly");
      return;
    }
    WalkRep next;
    if (terms.size() == 1) {
      next.comps = {terms[0]};
    } else if (terms.size() == 2) {
      next.comps = terms;
      if (dv_.nodes[next.comps[0].vnode].degree > dv_.nodes[next.comps[1].vnode].degree)
        std::swap(next.comps[0], next.comps[1]);
      if (dv_.nodes[next.comps[0].vnode].degree + 1 !=
          dv_.nodes[next.comps[1].vnode].degree)
        throw std::logic_error("homotopy walk produced a non-adjacent pair");
    } else {
      throw std::logic_error("homotopy walk produced more than two components");
    }
    std::string key = rep_position_key(next);
    auto it = visited_.find(key);
    if (it != visited_.end()) {
      if (it->second != next.comps[0].coeff)
        null_out("wrap-around scalars disagree");
      else
        result_.cyclic = true;
      return;
    }
    push_rep(next);
  }

  void move_single(const NodeComp& g, int side, int edge) {
    used_.insert({side, edge});
    std::vector<NodeComp> terms;
    std::vector<int> es;
    if (side == 0) {
      int Xp = dv_.high_node(edge);
      if (dv_.at_probe_boundary(Xp) || dw_.at_probe_boundary(g.wnode)) {
        boundary_ = true;
        return;
      }
      Rat h = g.coeff / dv_.edges[edge].scalar;
      record_homotopy(Xp, g.wnode, h);
      dv_.edges_into(Xp, es);
      for (int e2 : es)
        if (e2 != edge) {
          terms.push_back(
              {dv_.low_node(e2), g.wnode, -h * dv_.edges[e2].scalar, dv_.edges[e2].path});
          used_.insert({0, e2});
        }
      dw_.edges_out_of(g.wnode, es);
      for (int e3 : es) {
        terms.push_back(
            {Xp, dw_.high_node(e3), -h * dw_.edges[e3].scalar, dw_.edges[e3].path});
        used_.insert({1, e3});
      }
    } else {
      int Yp = dw_.low_node(edge);
      if (dw_.at_probe_boundary(Yp) || dv_.at_probe_boundary(g.vnode)) {
        boundary_ = true;
        return;
      }
      Rat h = g.coeff / dw_.edges[edge].scalar;
      record_homotopy(g.vnode, Yp, h);
      dw_.edges_out_of(Yp, es);
      for (int e2 : es)
        if (e2 != edge) {
          terms.push_back(
              {g.vnode, dw_.high_node(e2), -h * dw_.edges[e2].scalar, dw_.edges[e2].path});
          used_.insert({1, e2});
        }
      dv_.edges_into(g.vnode, es);
      for (int e3 : es) {
        terms.push_back(
            {dv_.low_node(e3), Yp, -h * dv_.edges[e3].scalar, dv_.edges[e3].path});
        used_.insert({0, e3});
      }
    }
    accept_terms(terms);
  }

  void loop() {
    size_t guard = 0;
    const size_t max_steps =
        16u * (dv_.n_nodes() + dw_.n_nodes() + 4u) * (dv_.n_nodes() + dw_.n_nodes() + 4u);
    while (!active_.empty() && !nulled_) {
      if (++guard > max_steps) throw std::logic_error("homotopy walk did not terminate");
      WalkRep cur = active_.back();
      active_.pop_back();
      if (cur.dbl()) continue;  // chains stop at double maps
      const NodeComp& g = cur.comps[0];
      if (proper_factor_null(g)) {
        null_out("a component factors properly through a differential");
        break;
      }
      std::vector<int> es;
      dv_.edges_out_of(g.vnode, es);
      for (int e : es)
        if (g.path.arrows == dv_.edges[e].path.arrows && !used_.count({0, e}) && !nulled_)
          move_single(g, 0, e);
      if (nulled_) break;
      dw_.edges_into(g.wnode, es);
      for (int e : es)
        if (g.path.arrows == dw_.edges[e].path.arrows && !used_.count({1, e}) && !nulled_)
          move_single(g, 1, e);
    }
  }

  void finish() {
    if (nulled_)
      result_.status = HomotopySet::Status::NullHomotopic;
    else if (result_.reps.size() == 1 && !result_.cyclic && !boundary_)
      result_.status = HomotopySet::Status::Singleton;
    else
      result_.status = HomotopySet::Status::Quasi;
  }
};

// ---------------------------------------------------------------------------
// Classification of all single/double maps into homotopy families
// ---------------------------------------------------------------------------

struct Classified {
  std::vector<BasisMorphism> s_singles;
  std::vector<BasisMorphism> s_doubles;
  std::vector<BasisMorphism> quasi;
};

std::string chain_signature(const std::vector<std::string>& keys) {
  std::vector<std::string> sorted = keys;
  std::sort(sorted.begin(), sorted.end());
  std::string out = "Q|";
  for (auto& k : sorted) out += k + "#";
  return out;
}

Classified classify_pair(const PairCtx& ctx) {
  Classified out;
  std::set<std::string> walked;
  std::set<std::string> class_sigs;

  auto handle = [&](HomotopySet hs, const std::vector<std::string>& keys,
                    const WalkRep& seed) {
    for (const auto& k : keys) walked.insert(k);
    if (hs.status == HomotopySet::Status::NullHomotopic) return;
    if (hs.status == HomotopySet::Status::Singleton) {
      BasisMorphism m;
      m.variant = seed.dbl() ? MorphVariant::SingletonDouble : MorphVariant::SingletonSingle;
      m.components = hs.reps.front();
      (seed.dbl() ? out.s_doubles : out.s_singles).push_back(std::move(m));
      return;
    }
    std::string sig = chain_signature(keys);
    if (!class_sigs.insert(sig).second) return;
    // canonical representative: the smallest position key, rescaled to +1
    size_t best = 0;
    for (size_t i = 1; i < keys.size(); ++i)
      if (keys[i] < keys[best]) best = i;
    BasisMorphism m;
    m.variant = MorphVariant::QuasiRep;
    Rat norm = hs.reps[best].front().scalar;
    m.components = hs.reps[best];
    for (auto& c : m.components) c.scalar /= norm;
    m.rep_chain = hs.reps;
    for (auto& rep : m.rep_chain)
      for (auto& c : rep) c.scalar /= norm;
    m.rep_cyclic = hs.cyclic;
    out.quasi.push_back(std::move(m));
  };

  for (const auto& c : all_single_comps(ctx)) {
    WalkRep seed{{c}};
    if (walked.count(rep_position_key(seed))) continue;
    Walker wk(ctx, ctx.dv, ctx.dw);
    wk.run_from_single(c);
    handle(wk.take_result(), wk.rep_keys(), seed);
  }
  for (const auto& dm : all_doubles(ctx)) {
    WalkRep seed{{dm.lo, dm.hi}};
    if (walked.count(rep_position_key(seed))) continue;
    Walker wk(ctx, ctx.dv, ctx.dw);
    wk.run_from_double(dm);
    handle(wk.take_result(), wk.rep_keys(), seed);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Overlap runs for graph maps
// ---------------------------------------------------------------------------

struct Run {
  int v0 = 0, w0 = 0;  // leftmost matched nodes
  int len = 0;         // matched edges
  bool full_wrap = false;
  bool left_infinite = false, right_infinite = false;
};

bool edges_match(const Diag& dv, const Diag& dw, int ev, int ew) {
  return dv.edges[ev].rightward == dw.edges[ew].rightward &&
         dv.edges[ev].path.arrows == dw.edges[ew].path.arrows;
}

std::vector<Run> scan_runs(const Diag& dv, const Diag& dw, int offset) {
  std::vector<Run> runs;
  std::set<std::tuple<int, int, int>> seen;
  const bool both_cyclic = dv.cyclic && dw.cyclic;
  for (int i = 0; i < dv.n_nodes(); ++i)
    for (int j = 0; j < dw.n_nodes(); ++j) {
      if (dv.nodes[i].vertex != dw.nodes[j].vertex) continue;
      if (dv.nodes[i].degree != dw.nodes[j].degree + offset) continue;
      Run r;
      r.v0 = i;
      r.w0 = j;
      int vi = i, wj = j;
      while (true) {
        if (both_cyclic && dv.n_edges() == dw.n_edges() && r.len == dv.n_edges()) {
          r.full_wrap = true;
          break;
        }
        if (both_cyclic && r.len > dv.n_edges() + dw.n_edges())
          throw std::logic_error("band overlap exceeds both periods");
        int ev = dv.right_edge(vi), ew = dw.right_edge(wj);
        if (ev < 0 || ew < 0) {
          r.right_infinite = (ev < 0 && dv.right_inf && vi == dv.n_nodes() - 1) ||
                             (ew < 0 && dw.right_inf && wj == dw.n_nodes() - 1);
          break;
        }
        if (!edges_match(dv, dw, ev, ew)) break;
        vi = dv.right_node(ev);
        wj = dw.right_node(ew);
        ++r.len;
      }
      if (r.full_wrap) {
        int shift = ((i - j) % dv.n_edges() + dv.n_edges()) % dv.n_edges();
        if (!seen.insert({-1, shift, -1}).second) continue;
        r.v0 = 0;
        r.w0 = ((0 - shift) % dv.n_edges() + dv.n_edges()) % dv.n_edges();
        r.len = dv.n_edges();
        runs.push_back(r);
        continue;
      }
      while (true) {
        int ev = dv.left_edge(r.v0), ew = dw.left_edge(r.w0);
        if (ev < 0 || ew < 0) {
          r.left_infinite = (ev < 0 && dv.left_inf && r.v0 == 0) ||
                            (ew < 0 && dw.left_inf && r.w0 == 0);
          break;
        }
        if (!edges_match(dv, dw, ev, ew)) break;
        r.v0 = dv.left_node(ev);
        r.w0 = dw.left_node(ew);
        ++r.len;
      }
      if (!seen.insert({r.v0, r.w0, r.len}).second) continue;
      runs.push_back(r);
    }
  return runs;
}

enum class EndStatus { G1, G2, Fails, Infinite };

struct EndEval {
  EndStatus status = EndStatus::Fails;
  bool has_factor = false;
  NodeComp factor;
};

EndEval eval_left_end(const Diag& dv, const Diag& dw, const Run& r, const Rat& c0) {
  EndEval out;
  if (r.left_infinite) {
    out.status = EndStatus::Infinite;
    return out;
  }
  int ev = dv.left_edge(r.v0), ew = dw.left_edge(r.w0);
  bool v_right = ev >= 0 && dv.edges[ev].rightward;
  bool w_right = ew >= 0 && dw.edges[ew].rightward;
  if (ev >= 0 && ew >= 0 && v_right == w_right) {
    const Path& pv = dv.edges[ev].path;
    const Path& pw = dw.edges[ew].path;
    if (v_right) {
      if (pv.length() > pw.length() && starts_with(pv.arrows, pw.arrows)) {
        out.status = EndStatus::G1;
        out.has_factor = true;
        Path f = subpath(*dv.A, pv, pw.arrows.size(), pv.arrows.size());
        out.factor = {dv.left_node(ev), dw.left_node(ew),
                      c0 * dv.edges[ev].scalar / dw.edges[ew].scalar, f};
      }
      return out;
    }
    if (pw.length() > pv.length() && ends_with(pw.arrows, pv.arrows)) {
      out.status = EndStatus::G1;
      out.has_factor = true;
      Path f = subpath(*dw.A, pw, 0, pw.arrows.size() - pv.arrows.size());
      out.factor = {dv.left_node(ev), dw.left_node(ew),
                    c0 * dw.edges[ew].scalar / dv.edges[ev].scalar, f};
    }
    return out;
  }
  bool v_ok = ev < 0 || !v_right;
  bool w_ok = ew < 0 || w_right;
  out.status = (v_ok && w_ok) ? EndStatus::G2 : EndStatus::Fails;
  return out;
}

EndEval eval_right_end(const Diag& dv, const Diag& dw, const Run& r, const Rat& cp) {
  EndEval out;
  if (r.right_infinite) {
    out.status = EndStatus::Infinite;
    return out;
  }
  int vEnd = dv.cyclic ? (r.v0 + r.len) % dv.n_nodes() : r.v0 + r.len;
  int wEnd = dw.cyclic ? (r.w0 + r.len) % dw.n_nodes() : r.w0 + r.len;
  int ev = dv.right_edge(vEnd), ew = dw.right_edge(wEnd);
  bool v_right = ev >= 0 && dv.edges[ev].rightward;
  bool w_right = ew >= 0 && dw.edges[ew].rightward;
  if (ev >= 0 && ew >= 0 && v_right == w_right) {
    const Path& pv = dv.edges[ev].path;
    const Path& pw = dw.edges[ew].path;
    if (v_right) {
      if (pw.length() > pv.length() && ends_with(pw.arrows, pv.arrows)) {
        out.status = EndStatus::G1;
        out.has_factor = true;
        Path f = subpath(*dw.A, pw, 0, pw.arrows.size() - pv.arrows.size());
        out.factor = {dv.right_node(ev), dw.right_node(ew),
                      cp * dw.edges[ew].scalar / dv.edges[ev].scalar, f};
      }
      return out;
    }
    if (pv.length() > pw.length() && starts_with(pv.arrows, pw.arrows)) {
      out.status = EndStatus::G1;
      out.has_factor = true;
      Path f = subpath(*dv.A, pv, pw.arrows.size(), pv.arrows.size());
      out.factor = {dv.right_node(ev), dw.right_node(ew),
                    cp * dv.edges[ev].scalar / dw.edges[ew].scalar, f};
    }
    return out;
  }
  bool v_ok = ev < 0 || v_right;
  bool w_ok = ew < 0 || !w_right;
  out.status = (v_ok && w_ok) ? EndStatus::G2 : EndStatus::Fails;
  return out;
}

// Isomorphism components along a run with propagated scalars; false when a
// full wrap fails the closure condition (mismatched band scalars).
bool run_iso_components(const Diag& dv, const Diag& dw, const Run& r,
                        std::vector<NodeComp>& comps, Rat& last_scalar) {
  Rat c = 1;
  int vi = r.v0, wj = r.w0;
  const int steps = r.len;
  for (int k = 0;; ++k) {
    if (!(r.full_wrap && k == steps))
      comps.push_back({vi, wj, c, dv.A->stationary_path(dv.nodes[vi].vertex)});
    if (k == steps) break;
    int ev = dv.right_edge(vi), ew = dw.right_edge(wj);
    if (dv.edges[ev].rightward)
      c = c * dw.edges[ew].scalar / dv.edges[ev].scalar;
    else
      c = c * dv.edges[ev].scalar / dw.edges[ew].scalar;
    vi = dv.right_node(ev);
    wj = dw.right_node(ew);
  }
  last_scalar = c;
  if (r.full_wrap) return c == 1;
  return true;
}

std::string comp_signature(const Diag& dv, const Diag& dw,
                           const std::vector<NodeComp>& comps, bool inf_l, bool inf_r) {
  std::vector<std::pair<std::string, Rat>> parts;
  for (const auto& c : comps) {
    std::ostringstream os;
    os << dv.nodes[c.vnode].stored_node << "|" << dw.nodes[c.wnode].stored_node << "|";
    for (int a : c.path.arrows) os << a << ",";
    parts.push_back({os.str(), c.coeff});
  }
  std::sort(parts.begin(), parts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Rat norm = parts.empty() ? Rat(1) : parts.front().second;
  std::string out = inf_l ? "L" : "";
  out += inf_r ? "R" : "";
  for (auto& [prefix, scalar] : parts)
    out += prefix + "|" + rat_to_string(scalar / norm) + ";";
  return out;
}

struct BuiltGraph {
  BasisMorphism m;
  std::string signature;
};

std::optional<BuiltGraph> build_graph_map(const PairCtx& ctx, const Diag& dw, const Run& r) {
  std::vector<NodeComp> isos;
  Rat cp = 1;
  if (!run_iso_components(ctx.dv, dw, r, isos, cp)) return std::nullopt;
  EndEval left = r.full_wrap ? EndEval{EndStatus::Infinite, false, {}}
                             : eval_left_end(ctx.dv, dw, r, 1);
  EndEval right = r.full_wrap ? EndEval{EndStatus::Infinite, false, {}}
                              : eval_right_end(ctx.dv, dw, r, cp);
  auto ok = [](const EndEval& e) { return e.status != EndStatus::Fails; };
  if (!ok(left) || !ok(right)) return std::nullopt;
  BuiltGraph bg;
  bg.m.variant = MorphVariant::Graph;
  bg.m.infinite_left = left.status == EndStatus::Infinite && !r.full_wrap;
  bg.m.infinite_right = right.status == EndStatus::Infinite && !r.full_wrap;
  std::vector<NodeComp> comps = isos;
  if (left.has_factor) comps.push_back(left.factor);
  if (right.has_factor) comps.push_back(right.factor);
  for (const auto& c : comps) bg.m.components.push_back(to_component(ctx.dv, dw, c));
  bg.signature = comp_signature(ctx.dv, dw, comps, bg.m.infinite_left, bg.m.infinite_right);
  return bg;
}

std::vector<BasisMorphism> graph_maps_ctx(const PairCtx& ctx) {
  std::map<std::string, BasisMorphism> dedup;
  for (const Diag* dw : {&ctx.dw, &ctx.dw_inv})
    for (const Run& r : scan_runs(ctx.dv, *dw, 0))
      if (auto bg = build_graph_map(ctx, *dw, r)) dedup.emplace(bg->signature, bg->m);
  std::vector<BasisMorphism> out;
  for (auto& [sig, m] : dedup) out.push_back(std::move(m));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// public API
// ---------------------------------------------------------------------------

HomPair::HomPair(const GentleAlgebra& A_, const HomotopyWord& v_, const HomotopyWord& w_)
    : A(A_), v(v_), w(w_) {
  if (v.kind == WordKind::Band) {
    if (v.band_dim != 1) throw ValidationError("hom computations take one-dimensional bands");
    v = canonical_band_rotation(A, v);
  }
  if (w.kind == WordKind::Band) {
    if (w.band_dim != 1) throw ValidationError("hom computations take one-dimensional bands");
    w = canonical_band_rotation(A, w);
  }
}

std::vector<BasisMorphism> graph_maps(const GentleAlgebra& A, const HomotopyWord& v,
                                      const HomotopyWord& w) {
  HomPair hp(A, v, w);
  PairCtx ctx = make_ctx(A, hp.v, hp.w);
  return graph_maps_ctx(ctx);
}

std::vector<BasisMorphism> quasi_graph_maps(const GentleAlgebra& A, const HomotopyWord& v,
                                            const HomotopyWord& w) {
  HomPair hp(A, v, w);
  PairCtx ctx = make_ctx(A, hp.v, hp.w);
  return classify_pair(ctx).quasi;
}

std::vector<BasisMorphism> singleton_singles(const GentleAlgebra& A, const HomotopyWord& v,
                                             const HomotopyWord& w) {
  HomPair hp(A, v, w);
  PairCtx ctx = make_ctx(A, hp.v, hp.w);
  return classify_pair(ctx).s_singles;
}

std::vector<BasisMorphism> singleton_doubles(const GentleAlgebra& A, const HomotopyWord& v,
                                             const HomotopyWord& w) {
  HomPair hp(A, v, w);
  PairCtx ctx = make_ctx(A, hp.v, hp.w);
  return classify_pair(ctx).s_doubles;
}

std::vector<BasisMorphism> hom_basis(const GentleAlgebra& A, const HomotopyWord& v,
                                     const HomotopyWord& w) {
  HomPair hp(A, v, w);
  PairCtx ctx = make_ctx(A, hp.v, hp.w);
  std::vector<BasisMorphism> out = graph_maps_ctx(ctx);
  Classified cl = classify_pair(ctx);
  out.insert(out.end(), cl.quasi.begin(), cl.quasi.end());
  out.insert(out.end(), cl.s_singles.begin(), cl.s_singles.end());
  out.insert(out.end(), cl.s_doubles.begin(), cl.s_doubles.end());
  return out;
}

int hom_dim(const GentleAlgebra& A, const HomotopyWord& v, const HomotopyWord& w) {
  return static_cast<int>(hom_basis(A, v, w).size());
}

std::vector<BasisMorphism> complex_level_basis(const GentleAlgebra& A, const HomotopyWord& v,
                                               const HomotopyWord& w) {
  if (!v.finite() || !w.finite())
    throw ValidationError("the chain-level basis is only defined for finite words");
  HomPair hp(A, v, w);
  PairCtx ctx = make_ctx(A, hp.v, hp.w);
  std::vector<BasisMorphism> out = graph_maps_ctx(ctx);
  for (const auto& c : all_single_comps(ctx)) {
    BasisMorphism m;
    m.variant = MorphVariant::Single;
    m.components = {to_component(ctx.dv, ctx.dw, c)};
    out.push_back(std::move(m));
  }
  for (const auto& dm : all_doubles(ctx)) {
    BasisMorphism m;
    m.variant = MorphVariant::Double;
    m.components = {to_component(ctx.dv, ctx.dw, dm.lo), to_component(ctx.dv, ctx.dw, dm.hi)};
    out.push_back(std::move(m));
  }
  return out;
}

HomotopySet homotopy_set(const GentleAlgebra& A, const HomotopyWord& v, const HomotopyWord& w,
                         const BasisMorphism& f) {
  HomPair hp(A, v, w);
  PairCtx ctx = make_ctx(A, hp.v, hp.w);
  auto find_node = [](const Diag& d, int deg, int slot) {
    for (int n = 0; n < d.n_nodes(); ++n)
      if (d.nodes[n].degree == deg && d.nodes[n].slot_idx == slot) return n;
    throw std::logic_error("component does not match a diagram node");
  };
  if (f.components.size() == 1) {
    const auto& mc = f.components[0];
    NodeComp c{find_node(ctx.dv, mc.degree, mc.src_slot),
               find_node(ctx.dw, mc.degree, mc.tgt_slot), mc.scalar, mc.path};
    Walker wk(ctx, ctx.dv, ctx.dw);
    wk.run_from_single(c);
    return wk.take_result();
  }
  if (f.components.size() == 2) {
    const auto& lo = f.components[0];
    const auto& hi = f.components[1];
    DoubleMap dm;
    dm.lo = {find_node(ctx.dv, lo.degree, lo.src_slot),
             find_node(ctx.dw, lo.degree, lo.tgt_slot), lo.scalar, lo.path};
    dm.hi = {find_node(ctx.dv, hi.degree, hi.src_slot),
             find_node(ctx.dw, hi.degree, hi.tgt_slot), hi.scalar, hi.path};
    // identify the middle differentials; with two-letter bands the node pair
    // does not pin them down, so check the square factorisation
    bool found = false;
    for (int ev = 0; ev < ctx.dv.n_edges() && !found; ++ev) {
      if (ctx.dv.low_node(ev) != dm.lo.vnode || ctx.dv.high_node(ev) != dm.hi.vnode)
        continue;
      for (int ew = 0; ew < ctx.dw.n_edges() && !found; ++ew) {
        if (ctx.dw.low_node(ew) != dm.lo.wnode || ctx.dw.high_node(ew) != dm.hi.wnode)
          continue;
        auto C = A.compose(dm.lo.path, ctx.dw.edges[ew].path);
        if (!C || !ends_with(C->arrows, ctx.dv.edges[ev].path.arrows)) continue;
        if (C->arrows.size() == ctx.dv.edges[ev].path.arrows.size()) continue;
        dm.ev = ev;
        dm.ew = ew;
        found = true;
      }
    }
    if (!found) throw ValidationError("not a double map between these words");
    const Path& pv = ctx.dv.edges[dm.ev].path;
    if (dm.lo.path.length() < pv.length())
      dm.singleton = true;
    else if (dm.lo.path.length() > pv.length())
      dm.null_substring = true;
    Walker wk(ctx, ctx.dv, ctx.dw);
    wk.run_from_double(dm);
    return wk.take_result();
  }
  throw ValidationError("homotopy families are defined for single and double maps");
}

}  // namespace gentle
