#include "gentle/quiver.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace gentle {

int BoundQuiver::vertex_index(const std::string& name) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return static_cast<int>(i);
  return -1;
}

int BoundQuiver::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return static_cast<int>(i);
  return -1;
}

namespace {
std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}
}  // namespace

NotGentle::NotGentle(std::vector<std::string> v)
    : std::runtime_error("presentation is not gentle:\n  " + join(v, "\n  ")),
      violations(std::move(v)) {}

bool Path::operator<(const Path& o) const {
  if (arrows.size() != o.arrows.size()) return arrows.size() < o.arrows.size();
  if (arrows != o.arrows) return arrows < o.arrows;
  if (source != o.source) return source < o.source;
  return target < o.target;
}

GentleAlgebra GentleAlgebra::validate(BoundQuiver q) {
  std::vector<std::string> bad;
  const int nv = static_cast<int>(q.vertices.size());
  const int na = static_cast<int>(q.arrows.size());

  {
    std::set<std::string> seen;
    for (const auto& v : q.vertices)
      if (!seen.insert(v).second) bad.push_back("duplicate vertex name '" + v + "'");
    seen.clear();
    for (const auto& a : q.arrows)
      if (!seen.insert(a.name).second) bad.push_back("duplicate arrow name '" + a.name + "'");
  }

  std::set<std::pair<int, int>> rels(q.relations.begin(), q.relations.end());
  for (auto [b, a] : rels) {
    if (b < 0 || b >= na || a < 0 || a >= na) {
      bad.push_back("relation refers to an unknown arrow");
      continue;
    }
    if (q.arrows[a].target != q.arrows[b].source)
      bad.push_back("relation " + q.arrows[b].name + " " + q.arrows[a].name +
                    " is not a composable length-2 path");
  }

  std::vector<int> outdeg(nv, 0), indeg(nv, 0);
  for (const auto& a : q.arrows) {
    ++outdeg[a.source];
    ++indeg[a.target];
  }
  for (int v = 0; v < nv; ++v) {
    if (outdeg[v] > 2)
      bad.push_back("vertex " + q.vertices[v] + " has " + std::to_string(outdeg[v]) +
                    " outgoing arrows (at most 2 allowed)");
    if (indeg[v] > 2)
      bad.push_back("vertex " + q.vertices[v] + " has " + std::to_string(indeg[v]) +
                    " incoming arrows (at most 2 allowed)");
  }

  // Per arrow, the zero and nonzero continuations must each be unique.
  for (int a = 0; a < na; ++a) {
    int nz = 0, z = 0, pnz = 0, pz = 0;
    for (int b = 0; b < na; ++b) {
      if (q.arrows[b].source == q.arrows[a].target)
        (rels.count({b, a}) ? z : nz) += 1;
      if (q.arrows[b].target == q.arrows[a].source)
        (rels.count({a, b}) ? pz : pnz) += 1;
    }
    const std::string& n = q.arrows[a].name;
    if (nz > 1) bad.push_back("arrow " + n + " has " + std::to_string(nz) + " nonzero continuations");
    if (z > 1) bad.push_back("arrow " + n + " lies in " + std::to_string(z) + " relations on the right");
    if (pnz > 1) bad.push_back("arrow " + n + " has " + std::to_string(pnz) + " nonzero predecessors");
    if (pz > 1) bad.push_back("arrow " + n + " lies in " + std::to_string(pz) + " relations on the left");
  }

  // Finite dimensionality: no relation-free oriented cycle. DFS over the
  // "nonzero continuation" graph on arrows.
  {
    std::vector<int> state(na, 0);  // 0 unseen, 1 on stack, 2 done
    bool cyclic = false;
    auto dfs = [&](auto&& self, int a) -> void {
      state[a] = 1;
      for (int b = 0; b < na && !cyclic; ++b) {
        if (q.arrows[b].source != q.arrows[a].target || rels.count({b, a})) continue;
        if (state[b] == 1) cyclic = true;
        else if (state[b] == 0) self(self, b);
      }
      state[a] = 2;
    };
    for (int a = 0; a < na && !cyclic; ++a)
      if (state[a] == 0) dfs(dfs, a);
    if (cyclic)
      bad.push_back("a relation-free oriented cycle exists; the algebra is infinite-dimensional");
  }

  if (!bad.empty()) throw NotGentle(std::move(bad));

  GentleAlgebra A;
  A.quiver_ = std::move(q);
  A.quiver_.relations.assign(rels.begin(), rels.end());
  A.build_tables();
  return A;
}

bool GentleAlgebra::in_ideal(int later, int earlier) const {
  return std::binary_search(quiver_.relations.begin(), quiver_.relations.end(),
                            std::make_pair(later, earlier));
}

void GentleAlgebra::build_tables() {
  const int na = num_arrows();
  next_nonzero_.assign(na, -1);
  next_zero_.assign(na, -1);
  prev_nonzero_.assign(na, -1);
  prev_zero_.assign(na, -1);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      if (quiver_.arrows[b].source == quiver_.arrows[a].target)
        (in_ideal(b, a) ? next_zero_[a] : next_nonzero_[a]) = b;
      if (quiver_.arrows[b].target == quiver_.arrows[a].source)
        (in_ideal(a, b) ? prev_zero_[a] : prev_nonzero_[a]) = b;
    }

  // Cycle arrows: follow the zero-continuation walk; it is deterministic, so
  // an arrow is a cycle arrow iff the walk returns to it.
  cycle_arrows_.clear();
  for (int a = 0; a < na; ++a) {
    int cur = next_zero_[a];
    int steps = 0;
    while (cur != -1 && cur != a && steps <= na) {
      cur = next_zero_[cur];
      ++steps;
    }
    if (cur == a) cycle_arrows_.push_back(a);
  }

  // Connectivity of the underlying graph.
  const int nv = num_vertices();
  connected_ = true;
  if (nv > 1) {
    std::vector<char> seen(nv, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& ar : quiver_.arrows) {
        for (int w : {ar.source, ar.target}) {
          if ((ar.source == v || ar.target == v) && !seen[w]) {
            seen[w] = 1;
            stack.push_back(w);
          }
        }
      }
    }
    connected_ = std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
  }

  // All nonzero paths, grouped by endpoints.
  paths_.assign(nv, std::vector<std::vector<Path>>(nv));
  longest_path_ = 0;
  for (int v = 0; v < nv; ++v) paths_[v][v].push_back(Path{v, v, {}});
  std::vector<Path> frontier;
  for (int a = 0; a < na; ++a)
    frontier.push_back(Path{quiver_.arrows[a].source, quiver_.arrows[a].target, {a}});
  while (!frontier.empty()) {
    std::vector<Path> next;
    for (const auto& p : frontier) {
      paths_[p.source][p.target].push_back(p);
      longest_path_ = std::max(longest_path_, p.length());
      int cont = next_nonzero_[p.arrows.back()];
      if (cont != -1) {
        Path q = p;
        q.arrows.push_back(cont);
        q.target = quiver_.arrows[cont].target;
        next.push_back(std::move(q));
      }
    }
    frontier = std::move(next);
  }
  auto name_key = [&](const Path& p) {
    std::vector<std::string> names;
    for (int a : p.arrows) names.push_back(quiver_.arrows[a].name);
    return names;
  };
  for (auto& row : paths_)
    for (auto& cell : row)
      std::sort(cell.begin(), cell.end(), [&](const Path& x, const Path& y) {
        if (x.length() != y.length()) return x.length() < y.length();
        return name_key(x) < name_key(y);
      });
}

std::optional<std::vector<int>> GentleAlgebra::relation_cycle(int a) const {
  if (!std::binary_search(cycle_arrows_.begin(), cycle_arrows_.end(), a)) return std::nullopt;
  std::vector<int> cyc{a};
  int cur = next_zero_[a];
  while (cur != a) {
    cyc.push_back(cur);
    cur = next_zero_[cur];
  }
  return cyc;
}

Path GentleAlgebra::stationary_path(int vertex) const { return Path{vertex, vertex, {}}; }

Path GentleAlgebra::arrow_path(int a) const {
  return Path{quiver_.arrows[a].source, quiver_.arrows[a].target, {a}};
}

std::optional<Path> GentleAlgebra::compose(const Path& p, const Path& q) const {
  if (q.target != p.source)
    throw NonComposable("compose: target of the first factor applied (" +
                        quiver_.vertices[q.target] + ") does not meet " +
                        quiver_.vertices[p.source]);
  if (q.stationary()) return p;
  if (p.stationary()) return q;
  if (in_ideal(p.arrows.front(), q.arrows.back())) return std::nullopt;
  Path out;
  out.source = q.source;
  out.target = p.target;
  out.arrows = q.arrows;
  out.arrows.insert(out.arrows.end(), p.arrows.begin(), p.arrows.end());
  return out;
}

const std::vector<Path>& GentleAlgebra::paths_between(int src, int tgt) const {
  return paths_[src][tgt];
}

std::vector<Path> GentleAlgebra::hom_path_basis(int x, int y, int max_len) const {
  std::vector<Path> out;
  for (const auto& p : paths_[x][y])
    if (p.length() <= max_len) out.push_back(p);
  return out;
}

std::string GentleAlgebra::path_label(const Path& p) const {
  if (p.stationary()) return "1_" + quiver_.vertices[p.source];
  std::string out;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it)
    out += quiver_.arrows[*it].name;
  return out;
}

std::string GentleAlgebra::path_literal(const Path& p) const {
  if (p.stationary()) return "1_" + quiver_.vertices[p.source];
  std::vector<std::string> names;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it)
    names.push_back(quiver_.arrows[*it].name);
  return join(names, "*");
}

std::optional<Path> GentleAlgebra::parse_path_literal(const std::string& text) const {
  if (text.rfind("1_", 0) == 0) {
    int v = quiver_.vertex_index(text.substr(2));
    if (v < 0) return std::nullopt;
    return stationary_path(v);
  }
  std::vector<int> arrows;
  std::string cur;
  auto flush = [&]() -> bool {
    if (cur.empty()) return false;
    int a = quiver_.arrow_index(cur);
    if (a < 0) return false;
    arrows.push_back(a);
    cur.clear();
    return true;
  };
  for (char c : text) {
    if (c == '*') {
      if (!flush()) return std::nullopt;
    } else {
      cur += c;
    }
  }
  if (!flush() || arrows.empty()) return std::nullopt;
  std::reverse(arrows.begin(), arrows.end());  // literal lists last-applied first
  Path p;
  p.source = quiver_.arrows[arrows.front()].source;
  p.target = quiver_.arrows[arrows.back()].target;
  p.arrows = arrows;
  return path_valid(p) ? std::optional<Path>(p) : std::nullopt;
}

bool GentleAlgebra::path_valid(const Path& p) const {
  if (p.stationary())
    return p.source == p.target && p.source >= 0 && p.source < num_vertices();
  if (quiver_.arrows[p.arrows.front()].source != p.source) return false;
  if (quiver_.arrows[p.arrows.back()].target != p.target) return false;
  for (size_t i = 0; i + 1 < p.arrows.size(); ++i) {
    if (quiver_.arrows[p.arrows[i]].target != quiver_.arrows[p.arrows[i + 1]].source)
      return false;
    if (in_ideal(p.arrows[i + 1], p.arrows[i])) return false;
  }
  return true;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> toks;
  std::string cur;
  for (char c : line) {
    if (isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) toks.push_back(cur), cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) toks.push_back(cur);
  return toks;
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!(isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

bool valid_vertex_name(const std::string& s) {
  if (valid_identifier(s)) return true;
  // integer vertex names, possibly negative
  size_t i = (s[0] == '-') ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

GentleAlgebra parse_algebra(const std::string& text, std::vector<std::string>* warnings) {
  BoundQuiver q;
  std::vector<std::pair<std::string, std::string>> pending_relations;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto toks = tokenize(line);
    if (toks.empty()) continue;
    auto fail = [&](const std::string& msg) -> void {
      throw SyntaxError("line " + std::to_string(lineno) + ": " + msg);
    };
    if (toks[0] == "vertices:") {
      for (size_t i = 1; i < toks.size(); ++i) {
        if (!valid_vertex_name(toks[i])) fail("bad vertex name '" + toks[i] + "'");
        q.vertices.push_back(toks[i]);
      }
    } else if (toks[0] == "arrow") {
      // arrow name: src -> tgt
      if (toks.size() != 5 || toks[3] != "->") fail("expected 'arrow name: src -> tgt'");
      std::string name = toks[1];
      if (name.empty() || name.back() != ':') fail("arrow name must be followed by ':'");
      name.pop_back();
      if (!valid_identifier(name)) fail("bad arrow name '" + name + "'");
      int s = q.vertex_index(toks[2]), t = q.vertex_index(toks[4]);
      if (s < 0) fail("unknown vertex '" + toks[2] + "'");
      if (t < 0) fail("unknown vertex '" + toks[4] + "'");
      q.arrows.push_back({name, s, t});
    } else if (toks[0] == "relation") {
      if (toks.size() != 3) fail("relations must be length-2 monomials: 'relation b a'");
      pending_relations.emplace_back(toks[1], toks[2]);
    } else {
      fail("unknown statement '" + toks[0] + "'");
    }
  }
  for (auto& [b, a] : pending_relations) {
    int bi = q.arrow_index(b), ai = q.arrow_index(a);
    if (bi < 0) throw SyntaxError("relation uses unknown arrow '" + b + "'");
    if (ai < 0) throw SyntaxError("relation uses unknown arrow '" + a + "'");
    q.relations.emplace_back(bi, ai);
  }
  GentleAlgebra A = GentleAlgebra::validate(std::move(q));
  if (warnings && !A.connected())
    warnings->push_back("the quiver is not connected");
  return A;
}

GentleAlgebra discrete_algebra(int r, int n, int m) {
  if (!(n >= r && r >= 1 && m >= 0))
    throw InvalidParams("discrete_algebra requires n >= r >= 1 and m >= 0");
  BoundQuiver q;
  for (int v = -m; v < n; ++v) q.vertices.push_back(std::to_string(v));
  auto vx = [&](int v) { return q.vertex_index(std::to_string(v)); };
  // tail: a_m<i> : -i -> -i+1
  for (int i = m; i >= 1; --i)
    q.arrows.push_back({"a_m" + std::to_string(i), vx(-i), vx(-i + 1)});
  // cycle: j -> j+1 (mod n); 'b' names up to n-r, 'c' names after (all 'c'
  // when r == n)
  std::vector<int> cyc(n);
  for (int j = 0; j < n; ++j) {
    std::string name = (r == n)                ? "c_" + std::to_string(j)
                       : (j <= n - r)          ? "b_" + std::to_string(j)
                                               : "c_" + std::to_string(j);
    cyc[j] = static_cast<int>(q.arrows.size());
    q.arrows.push_back({name, vx(j), vx((j + 1) % n)});
  }
  // r consecutive zero relations around vertex 0: at vertices 0 and
  // n-r+1..n-1 the outgoing cycle arrow kills the incoming one.
  std::vector<int> relation_vertices{0};
  for (int v = n - r + 1; v <= n - 1; ++v) relation_vertices.push_back(v);
  for (int v : relation_vertices) {
    int earlier = cyc[(v - 1 + n) % n];
    int later = cyc[v % n];
    q.relations.emplace_back(later, earlier);
  }
  return GentleAlgebra::validate(std::move(q));
}

}  // namespace gentle
