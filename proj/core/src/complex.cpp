#include "gentle/complex.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>

namespace gentle {

int ProjComplex::slot_count() const {
  int n = 0;
  for (const auto& [d, mods] : modules) n += static_cast<int>(mods.size());
  return n;
}

int node_degree(const HomotopyWord& w, int pos) {
  if (w.kind == WordKind::Band) return w.letters[pos].deg_l;
  return pos == 0 ? w.letters[0].deg_l : w.letters[pos - 1].deg_r;
}

int node_vertex(const HomotopyWord& w, int pos) {
  if (w.kind == WordKind::Band) return w.letters[pos].left_vertex();
  return pos == 0 ? w.letters[0].left_vertex() : w.letters[pos - 1].right_vertex();
}

SlotMap slot_map(const HomotopyWord& w) {
  SlotMap sm;
  const bool band = w.kind == WordKind::Band;
  const int nodes = band ? w.size() : (w.is_trivial_string() ? 1 : w.size() + 1);
  sm.node_slot.assign(nodes, {0, 0});
  std::map<int, std::vector<int>> at_degree;  // degree -> node positions
  for (int p = 0; p < nodes; ++p) at_degree[node_degree(w, p)].push_back(p);
  for (auto& [d, ps] : at_degree) {
    std::sort(ps.begin(), ps.end(), std::greater<int>());  // rightmost summand first
    for (size_t i = 0; i < ps.size(); ++i) {
      sm.node_slot[ps[i]] = {d, static_cast<int>(i)};
      sm.modules[d].push_back(node_vertex(w, ps[i]));
    }
  }
  return sm;
}

namespace {

// One-dimensional differential entries, expressed on diagram nodes.
struct NodeEntry {
  int src_node;
  int tgt_node;
  Rat scalar;
  Path path;
  bool carrier;
};

std::vector<NodeEntry> node_entries(const HomotopyWord& w) {
  std::vector<NodeEntry> out;
  const bool band = w.kind == WordKind::Band;
  if (w.is_trivial_string()) return out;
  const int n = w.size();
  for (int e = 0; e < n; ++e) {
    const auto& l = w.letters[e];
    int left = e, right = band ? (e + 1) % n : e + 1;
    bool carrier = band && e == w.lambda_pos;
    Rat s = carrier ? w.lambda : Rat(1);
    if (l.direct())
      out.push_back({left, right, s, l.path, carrier});
    else
      out.push_back({right, left, s, l.path, carrier});
  }
  return out;
}

void check_d2(const GentleAlgebra& A, const ProjComplex& C) {
  for (const auto& [d, entries] : C.diffs) {
    auto next = C.diffs.find(d + 1);
    if (next == C.diffs.end()) continue;
    // collect composite (row, col, path) -> coefficient
    std::map<std::tuple<int, int, std::vector<int>>, Rat> acc;
    for (const auto& e1 : entries)
      for (const auto& e2 : next->second) {
        if (e1.col != e2.row) continue;
        auto comp = A.compose(e1.path, e2.path);
        if (!comp) continue;
        acc[{e1.row, e2.col, comp->arrows}] += e1.scalar * e2.scalar;
      }
    for (const auto& [key, coeff] : acc)
      if (coeff != 0)
        throw D2NotZero("d^2 != 0 between degrees " + std::to_string(d) + " and " +
                        std::to_string(d + 2));
  }
}

// Unrolls the periodic tails of an infinite word far enough that every node
// of degree >= cutoff is present, and one letter beyond on each infinite side.
HomotopyWord materialize(const GentleAlgebra& A, const HomotopyWord& w, int cutoff) {
  HomotopyWord out = w;
  out.kind = WordKind::String;
  out.left_period.clear();
  out.right_period.clear();
  if (w.kind == WordKind::LeftInfinite || w.kind == WordKind::TwoSidedInfinite) {
    int deg = w.letters.front().deg_l;
    int k = 0;
    while (deg >= cutoff) {
      int arrow = w.left_period[k % w.left_period.size()];
      out.letters.insert(out.letters.begin(),
                         HomotopyLetter{A.arrow_path(arrow), deg - 1, deg});
      --deg;
      ++k;
    }
  }
  if (w.kind == WordKind::RightInfinite || w.kind == WordKind::TwoSidedInfinite) {
    int deg = w.letters.back().deg_r;
    int k = 0;
    while (deg >= cutoff) {
      int arrow = w.right_period[k % w.right_period.size()];
      out.letters.push_back(HomotopyLetter{A.arrow_path(arrow), deg, deg - 1});
      --deg;
      ++k;
    }
  }
  return out;
}

}  // namespace

ProjComplex build_complex(const GentleAlgebra& A, const HomotopyWord& word,
                          std::optional<int> cutoff) {
  HomotopyWord w = word;
  if (!w.finite()) {
    if (!cutoff) throw ValidationError("infinite words need a degree cutoff");
    w = materialize(A, w, *cutoff);
  } else if (w.kind == WordKind::Band) {
    w = canonical_band_rotation(A, w);
  }

  ProjComplex C;
  C.provenance = w;
  C.truncated = !word.finite();
  const int r = (w.kind == WordKind::Band) ? w.band_dim : 1;
  SlotMap sm = slot_map(w);

  for (const auto& [d, mods] : sm.modules) {
    auto& out = C.modules[d];
    for (int copy = 0; copy < r; ++copy)
      out.insert(out.end(), mods.begin(), mods.end());
  }

  for (const auto& ne : node_entries(w)) {
    auto [sd, si] = sm.node_slot[ne.src_node];
    auto [td, ti] = sm.node_slot[ne.tgt_node];
    assert(td == sd + 1);
    const int ss = static_cast<int>(sm.modules.at(sd).size());
    const int ts = static_cast<int>(sm.modules.at(td).size());
    for (int copy = 0; copy < r; ++copy)
      C.diffs[sd].push_back({copy * ss + si, copy * ts + ti, ne.scalar, ne.path});
    // The link blocks repeat the carrier entry one layer over, without the scalar.
    if (r > 1 && ne.carrier) {
      for (int copy = 0; copy + 1 < r; ++copy)
        C.diffs[sd].push_back({copy * ss + si, (copy + 1) * ts + ti, 1, ne.path});
    }
  }
  for (auto& [d, entries] : C.diffs)
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });

  check_d2(A, C);
  return C;
}

UnfoldedDiagram unfold(const GentleAlgebra& A, const HomotopyWord& word) {
  int lo = 0;
  for (const auto& l : word.letters) lo = std::min({lo, l.deg_l, l.deg_r});
  HomotopyWord w = word.finite() ? word : materialize(A, word, lo - 6);
  if (w.kind == WordKind::Band) w = canonical_band_rotation(A, w);
  UnfoldedDiagram d;
  d.cyclic = w.kind == WordKind::Band;
  const int r = d.cyclic ? w.band_dim : 1;
  const int nodes = d.cyclic ? w.size() : (w.is_trivial_string() ? 1 : w.size() + 1);
  for (int layer = 0; layer < r; ++layer)
    for (int p = 0; p < nodes; ++p)
      d.nodes.push_back({node_vertex(w, p), node_degree(w, p), layer});
  if (w.is_trivial_string()) return d;
  for (int layer = 0; layer < r; ++layer)
    for (int e = 0; e < w.size(); ++e) {
      const auto& l = w.letters[e];
      int left = layer * nodes + e;
      int right = layer * nodes + (d.cyclic ? (e + 1) % nodes : e + 1);
      std::string label = A.path_label(l.path);
      if (d.cyclic && e == w.lambda_pos && w.lambda != 1)
        label = rat_to_string(w.lambda) + "·" + label;
      if (l.direct())
        d.edges.push_back({left, right, label, true, false});
      else
        d.edges.push_back({right, left, label, false, false});
      // links: one layer down in the unfolded picture
      if (d.cyclic && e == w.lambda_pos && layer + 1 < r) {
        int lright = (layer + 1) * nodes + (e + 1) % nodes;
        int lleft = (layer + 1) * nodes + e;
        if (l.direct())
          d.edges.push_back({left, lright, A.path_label(l.path), true, true});
        else
          d.edges.push_back({right, lleft, A.path_label(l.path), false, true});
      }
    }
  return d;
}

std::string diagram_to_dot(const GentleAlgebra& A, const UnfoldedDiagram& d) {
  std::string out = "digraph unfolded {\n  rankdir=LR;\n  node [shape=plaintext];\n";
  for (size_t i = 0; i < d.nodes.size(); ++i) {
    const auto& n = d.nodes[i];
    out += "  n" + std::to_string(i) + " [label=\"P(" + A.vertex_name(n.vertex) + ")@" +
           std::to_string(n.degree) + "\"];\n";
  }
  for (const auto& e : d.edges) {
    out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) +
           " [label=\"" + e.label + "\"" + (e.link ? ", style=dashed" : "") + "];\n";
  }
  out += "}\n";
  return out;
}

std::string complex_to_json(const GentleAlgebra& A, const ProjComplex& C) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["truncated"] = C.truncated;
  auto degrees = nlohmann::json::array();
  for (const auto& [d, mods] : C.modules) {
    nlohmann::json jd;
    jd["degree"] = d;
    auto mm = nlohmann::json::array();
    for (int v : mods) mm.push_back(A.vertex_name(v));
    jd["modules"] = mm;
    degrees.push_back(jd);
  }
  j["degrees"] = degrees;
  auto diffs = nlohmann::json::array();
  for (const auto& [d, entries] : C.diffs) {
    nlohmann::json jd;
    jd["degree"] = d;
    auto es = nlohmann::json::array();
    for (const auto& e : entries) {
      es.push_back({{"row", e.row},
                    {"col", e.col},
                    {"scalar", rat_to_string(e.scalar)},
                    {"path", A.path_label(e.path)}});
    }
    jd["entries"] = es;
    diffs.push_back(jd);
  }
  j["differentials"] = diffs;
  return j.dump(2);
}

}  // namespace gentle
