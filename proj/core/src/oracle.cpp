#include "gentle/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace gentle {

namespace {

struct GFp {
  std::uint64_t p;
  using E = std::uint64_t;
  E zero() const { return 0; }
  bool is_zero(E a) const { return a == 0; }
  E add(E a, E b) const { return (a + b) % p; }
  E sub(E a, E b) const { return (a + p - b) % p; }
  E mul(E a, E b) const { return (a * b) % p; }
  E inv(E a) const {
    long long t = 0, nt = 1, r = static_cast<long long>(p), nr = static_cast<long long>(a);
    while (nr != 0) {
      long long q = r / nr;
      long long tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    return static_cast<E>((t % static_cast<long long>(p) + static_cast<long long>(p)) %
                          static_cast<long long>(p));
  }
  E from_rat(const Rat& r) const {
    using boost::multiprecision::cpp_int;
    cpp_int num = numerator(r) % cpp_int(p);
    cpp_int den = denominator(r) % cpp_int(p);
    std::uint64_t n = static_cast<std::uint64_t>((num + cpp_int(p)) % cpp_int(p));
    std::uint64_t d = static_cast<std::uint64_t>((den + cpp_int(p)) % cpp_int(p));
    if (d == 0) throw std::runtime_error("denominator divisible by the field prime");
    return mul(n, inv(d));
  }
};

struct RatF {
  using E = Rat;
  E zero() const { return 0; }
  bool is_zero(const E& a) const { return a == 0; }
  E add(const E& a, const E& b) const { return a + b; }
  E sub(const E& a, const E& b) const { return a - b; }
  E mul(const E& a, const E& b) const { return a * b; }
  E inv(const E& a) const { return Rat(denominator(a), numerator(a)); }
  E from_rat(const Rat& r) const { return r; }
};

// Incremental row-echelon basis with leftmost-pivot elimination; insertion
// order is fixed by the caller, so ranks are deterministic.
template <class F>
struct Echelon {
  const F& f;
  int cols;
  std::vector<std::vector<typename F::E>> rows;
  std::vector<int> pivots;

  Echelon(const F& field, int c) : f(field), cols(c) {}

  void reduce(std::vector<typename F::E>& v) const {
    for (size_t i = 0; i < rows.size(); ++i) {
      int pc = pivots[i];
      if (f.is_zero(v[pc])) continue;
      auto factor = v[pc];
      for (int c = pc; c < cols; ++c) v[c] = f.sub(v[c], f.mul(factor, rows[i][c]));
    }
  }

  bool add(std::vector<typename F::E> v) {
    reduce(v);
    int pc = -1;
    for (int c = 0; c < cols; ++c)
      if (!f.is_zero(v[c])) {
        pc = c;
        break;
      }
    if (pc < 0) return false;
    auto inv = f.inv(v[pc]);
    for (int c = pc; c < cols; ++c) v[c] = f.mul(v[c], inv);
    size_t pos = 0;
    while (pos < rows.size() && pivots[pos] < pc) ++pos;
    rows.insert(rows.begin() + pos, std::move(v));
    pivots.insert(pivots.begin() + pos, pc);
    return true;
  }

  int rank() const { return static_cast<int>(rows.size()); }
};

// Coordinates of graded maps C^t -> D^{t+off}: (degree, source slot, target
// slot, connecting path).
struct Coords {
  struct Key {
    int deg;
    int row;
    int col;
    Path path;
    bool operator<(const Key& o) const {
      return std::tie(deg, row, col, path) < std::tie(o.deg, o.row, o.col, o.path);
    }
  };
  std::vector<Key> keys;
  std::map<Key, int> index;

  static Coords build(const GentleAlgebra& A, const ProjComplex& C, const ProjComplex& D,
                      int off) {
    Coords co;
    for (const auto& [t, cmods] : C.modules) {
      auto it = D.modules.find(t + off);
      if (it == D.modules.end()) continue;
      for (int a = 0; a < static_cast<int>(cmods.size()); ++a)
        for (int b = 0; b < static_cast<int>(it->second.size()); ++b)
          for (const auto& p : A.paths_between(it->second[b], cmods[a]))
            co.keys.push_back({t, a, b, p});
    }
    std::sort(co.keys.begin(), co.keys.end());
    for (size_t i = 0; i < co.keys.size(); ++i)
      co.index.emplace(co.keys[i], static_cast<int>(i));
    return co;
  }

  int find(int deg, int row, int col, const Path& p) const {
    auto it = index.find(Key{deg, row, col, p});
    return it == index.end() ? -1 : it->second;
  }
  int size() const { return static_cast<int>(keys.size()); }
};

void require_finite(const ProjComplex& C) {
  if (C.truncated)
    throw std::invalid_argument("the oracle refuses truncated complexes; truncation changes Hom");
}

using RatVec = std::map<int, Rat>;

// Image of one chain-map coordinate under f |-> f.d_D - d_C.f, expressed on
// the off=+1 coordinates.
void chain_condition_column(const GentleAlgebra& A, const ProjComplex& C,
                            const ProjComplex& D, const Coords& cond, const Coords::Key& k,
                            RatVec& out) {
  auto dd = D.diffs.find(k.deg);
  if (dd != D.diffs.end())
    for (const auto& e : dd->second) {
      if (e.row != k.col) continue;
      auto comp = A.compose(k.path, e.path);
      if (!comp) continue;
      int idx = cond.find(k.deg, k.row, e.col, *comp);
      assert(idx >= 0);
      out[idx] += e.scalar;
    }
  auto dc = C.diffs.find(k.deg - 1);
  if (dc != C.diffs.end())
    for (const auto& e : dc->second) {
      if (e.col != k.row) continue;
      auto comp = A.compose(e.path, k.path);
      if (!comp) continue;
      int idx = cond.find(k.deg - 1, e.row, k.col, *comp);
      assert(idx >= 0);
      out[idx] -= e.scalar;
    }
}

// Image of one homotopy coordinate under h |-> d_C.h + h.d_D, expressed on
// the chain-map coordinates.
void boundary_column(const GentleAlgebra& A, const ProjComplex& C, const ProjComplex& D,
                     const Coords& fmap, const Coords::Key& h, RatVec& out) {
  auto dc = C.diffs.find(h.deg - 1);
  if (dc != C.diffs.end())
    for (const auto& e : dc->second) {
      if (e.col != h.row) continue;
      auto comp = A.compose(e.path, h.path);
      if (!comp) continue;
      int idx = fmap.find(h.deg - 1, e.row, h.col, *comp);
      assert(idx >= 0);
      out[idx] += e.scalar;
    }
  auto dd = D.diffs.find(h.deg - 1);
  if (dd != D.diffs.end())
    for (const auto& e : dd->second) {
      if (e.row != h.col) continue;
      auto comp = A.compose(h.path, e.path);
      if (!comp) continue;
      int idx = fmap.find(h.deg, h.row, e.col, *comp);
      assert(idx >= 0);
      out[idx] += e.scalar;
    }
}

RatVec map_to_vec(const Coords& co, const MapMatrices& f) {
  RatVec v;
  for (const auto& [deg, entries] : f)
    for (const auto& e : entries) {
      if (e.scalar == 0) continue;
      int idx = co.find(deg, e.row, e.col, e.path);
      if (idx < 0) throw std::invalid_argument("map entry outside the coordinate space");
      v[idx] += e.scalar;
    }
  for (auto it = v.begin(); it != v.end();)
    it = (it->second == 0) ? v.erase(it) : std::next(it);
  return v;
}

template <class F>
std::vector<typename F::E> densify(const F& f, const RatVec& v, int n) {
  std::vector<typename F::E> out(n, f.zero());
  for (const auto& [i, c] : v) out[i] = f.from_rat(c);
  return out;
}

template <class F>
HomDims dims_impl(const F& f, const GentleAlgebra& A, const ProjComplex& C,
                  const ProjComplex& D) {
  Coords fmap = Coords::build(A, C, D, 0);
  Coords hmap = Coords::build(A, C, D, -1);
  Coords cond = Coords::build(A, C, D, 1);

  Echelon<F> chain_ech(f, cond.size());
  for (const auto& k : fmap.keys) {
    RatVec col;
    chain_condition_column(A, C, D, cond, k, col);
    chain_ech.add(densify(f, col, cond.size()));
  }
  HomDims out;
  out.chain_maps = fmap.size() - chain_ech.rank();

  Echelon<F> bd_ech(f, fmap.size());
  for (const auto& k : hmap.keys) {
    RatVec col;
    boundary_column(A, C, D, fmap, k, col);
    bd_ech.add(densify(f, col, fmap.size()));
  }
  out.null_homotopic = bd_ech.rank();
  out.hom = out.chain_maps - out.null_homotopic;
  return out;
}

template <class F>
int span_impl(const F& f, const GentleAlgebra& A, const ProjComplex& C, const ProjComplex& D,
              const std::vector<MapMatrices>& maps, const MapMatrices* extra,
              bool* extra_in_span) {
  Coords fmap = Coords::build(A, C, D, 0);
  Coords hmap = Coords::build(A, C, D, -1);
  Echelon<F> ech(f, fmap.size());
  for (const auto& k : hmap.keys) {
    RatVec col;
    boundary_column(A, C, D, fmap, k, col);
    ech.add(densify(f, col, fmap.size()));
  }
  int base = ech.rank();
  for (const auto& m : maps) ech.add(densify(f, map_to_vec(fmap, m), fmap.size()));
  int span = ech.rank() - base;
  if (extra) {
    bool grew = ech.add(densify(f, map_to_vec(fmap, *extra), fmap.size()));
    if (extra_in_span) *extra_in_span = !grew;
  }
  return span;
}

}  // namespace

Oracle::Oracle(const GentleAlgebra& A, FieldKind kind, std::uint32_t p)
    : A_(A), kind_(kind), p_(p) {}

HomDims Oracle::dims(const ProjComplex& C, const ProjComplex& D) const {
  require_finite(C);
  require_finite(D);
  if (kind_ == FieldKind::PrimeField) {
    GFp f{p_};
    return dims_impl(f, A_, C, D);
  }
  RatF f;
  return dims_impl(f, A_, C, D);
}

int Oracle::chain_map_dim(const ProjComplex& C, const ProjComplex& D) const {
  return dims(C, D).chain_maps;
}
int Oracle::null_homotopic_dim(const ProjComplex& C, const ProjComplex& D) const {
  return dims(C, D).null_homotopic;
}
int Oracle::hom_dim(const ProjComplex& C, const ProjComplex& D) const {
  return dims(C, D).hom;
}

bool Oracle::verify_chain_map(const ProjComplex& C, const ProjComplex& D,
                              const MapMatrices& f) const {
  require_finite(C);
  require_finite(D);
  // Exact rational check, independent of the configured field.
  Coords fmap = Coords::build(A_, C, D, 0);
  Coords cond = Coords::build(A_, C, D, 1);
  RatVec image;
  for (const auto& [i, coeff] : map_to_vec(fmap, f)) {
    RatVec col;
    chain_condition_column(A_, C, D, cond, fmap.keys[i], col);
    for (const auto& [j, c] : col) image[j] += coeff * c;
  }
  return std::all_of(image.begin(), image.end(),
                     [](const auto& kv) { return kv.second == 0; });
}

bool Oracle::verify_homotopic(const ProjComplex& C, const ProjComplex& D,
                              const MapMatrices& f, const MapMatrices& g) const {
  require_finite(C);
  require_finite(D);
  Coords fmap = Coords::build(A_, C, D, 0);
  Coords hmap = Coords::build(A_, C, D, -1);
  RatVec diff = map_to_vec(fmap, f);
  for (const auto& [i, c] : map_to_vec(fmap, g)) {
    diff[i] -= c;
    if (diff[i] == 0) diff.erase(i);
  }
  auto solve = [&](auto field) {
    Echelon<decltype(field)> ech(field, fmap.size());
    for (const auto& k : hmap.keys) {
      RatVec col;
      boundary_column(A_, C, D, fmap, k, col);
      ech.add(densify(field, col, fmap.size()));
    }
    return !ech.add(densify(field, diff, fmap.size()));
  };
  if (kind_ == FieldKind::PrimeField) return solve(GFp{p_});
  return solve(RatF{});
}

bool Oracle::verify_null_homotopic(const ProjComplex& C, const ProjComplex& D,
                                   const MapMatrices& f) const {
  return verify_homotopic(C, D, f, MapMatrices{});
}

bool Oracle::verify_homotopy_witness(const ProjComplex& C, const ProjComplex& D,
                                     const MapMatrices& f, const MapMatrices& g,
                                     const MapMatrices& h) const {
  require_finite(C);
  require_finite(D);
  Coords fmap = Coords::build(A_, C, D, 0);
  Coords hmap = Coords::build(A_, C, D, -1);
  RatVec want = map_to_vec(fmap, f);
  for (const auto& [i, c] : map_to_vec(fmap, g)) want[i] -= c;
  for (const auto& [i, coeff] : map_to_vec(hmap, h)) {
    RatVec col;
    boundary_column(A_, C, D, fmap, hmap.keys[i], col);
    for (const auto& [j, c] : col) want[j] -= coeff * c;
  }
  return std::all_of(want.begin(), want.end(),
                     [](const auto& kv) { return kv.second == 0; });
}

int Oracle::span_dim_mod_null(const ProjComplex& C, const ProjComplex& D,
                              const std::vector<MapMatrices>& maps) const {
  require_finite(C);
  require_finite(D);
  if (kind_ == FieldKind::PrimeField) {
    GFp f{p_};
    return span_impl(f, A_, C, D, maps, nullptr, nullptr);
  }
  RatF f;
  return span_impl(f, A_, C, D, maps, nullptr, nullptr);
}

bool Oracle::in_span_mod_null(const ProjComplex& C, const ProjComplex& D,
                              const MapMatrices& f, const std::vector<MapMatrices>& maps) const {
  require_finite(C);
  require_finite(D);
  bool in = false;
  if (kind_ == FieldKind::PrimeField) {
    GFp fl{p_};
    span_impl(fl, A_, C, D, maps, &f, &in);
  } else {
    RatF fl;
    span_impl(fl, A_, C, D, maps, &f, &in);
  }
  return in;
}

MapMatrices compose_maps(const GentleAlgebra& A, const ProjComplex& C, const MapMatrices& f,
                         const MapMatrices& g) {
  (void)C;
  MapMatrices out;
  for (const auto& [deg, fe] : f) {
    auto it = g.find(deg);
    if (it == g.end()) continue;
    std::map<std::tuple<int, int, Path>, Rat> acc;
    for (const auto& a : fe)
      for (const auto& b : it->second) {
        if (a.col != b.row) continue;
        auto comp = A.compose(a.path, b.path);
        if (!comp) continue;
        acc[{a.row, b.col, *comp}] += a.scalar * b.scalar;
      }
    for (const auto& [key, scalar] : acc)
      if (scalar != 0)
        out[deg].push_back(
            {std::get<0>(key), std::get<1>(key), scalar, std::get<2>(key)});
  }
  return out;
}

}  // namespace gentle
