#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gentle {

// Bound quiver presentation. A relation pair (later, earlier) declares the
// length-2 composite "later∘earlier" (apply `earlier` first) to be zero.
struct BoundQuiver {
  struct Arrow {
    std::string name;
    int source = -1;
    int target = -1;
  };

  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<std::pair<int, int>> relations;

  int vertex_index(const std::string& name) const;
  int arrow_index(const std::string& name) const;
};

struct SyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotGentle : std::runtime_error {
  explicit NotGentle(std::vector<std::string> violations);
  std::vector<std::string> violations;
};

struct InvalidParams : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonComposable : std::logic_error {
  using std::logic_error::logic_error;
};

// A nonzero path of the bound path algebra. Arrows are stored in application
// order: arrows[0] is traversed first. The stationary path has no arrows.
// Printing follows "leftmost factor applied last", so {f, a} prints as "af".
struct Path {
  int source = -1;
  int target = -1;
  std::vector<int> arrows;

  bool stationary() const { return arrows.empty(); }
  int length() const { return static_cast<int>(arrows.size()); }

  bool operator==(const Path&) const = default;
  bool operator<(const Path& o) const;
};

// Validated gentle presentation with the derived composition tables.
class GentleAlgebra {
 public:
  // Throws NotGentle with one message per violated requirement.
  static GentleAlgebra validate(BoundQuiver q);

  const BoundQuiver& quiver() const { return quiver_; }
  int num_vertices() const { return static_cast<int>(quiver_.vertices.size()); }
  int num_arrows() const { return static_cast<int>(quiver_.arrows.size()); }
  const std::string& vertex_name(int v) const { return quiver_.vertices[v]; }
  const BoundQuiver::Arrow& arrow(int a) const { return quiver_.arrows[a]; }

  bool in_ideal(int later, int earlier) const;

  // Unique continuations guaranteed by gentleness; -1 when absent.
  int next_nonzero(int a) const { return next_nonzero_[a]; }
  int next_zero(int a) const { return next_zero_[a]; }
  int prev_nonzero(int a) const { return prev_nonzero_[a]; }
  int prev_zero(int a) const { return prev_zero_[a]; }

  bool connected() const { return connected_; }

  // Arrows lying on a repetition-free cycle all of whose junctions are
  // relations. Sorted by arrow index.
  const std::vector<int>& cycle_arrows() const { return cycle_arrows_; }

  // The full-relation cycle through `a`, starting at `a`; nullopt when `a`
  // is not a cycle arrow.
  std::optional<std::vector<int>> relation_cycle(int a) const;

  Path stationary_path(int vertex) const;
  Path arrow_path(int a) const;

  // "pq": apply q first, then p. nullopt when the junction hits a relation.
  // Throws NonComposable when target(q) != source(p).
  std::optional<Path> compose(const Path& p, const Path& q) const;

  // All nonzero paths src ⇝ tgt ordered by (length, arrow names).
  const std::vector<Path>& paths_between(int src, int tgt) const;

  // Basis of Hom(P(y), P(x)) restricted to paths of length <= max_len.
  std::vector<Path> hom_path_basis(int x, int y, int max_len) const;

  // Length of the longest nonzero path (finite: presentations with a
  // relation-free cycle are rejected by validate()).
  int longest_path() const { return longest_path_; }

  std::string path_label(const Path& p) const;   // "af", "1_0", ...
  std::string path_literal(const Path& p) const; // "a*f", "1_0", ...
  std::optional<Path> parse_path_literal(const std::string& text) const;

  bool path_valid(const Path& p) const;

 private:
  GentleAlgebra() = default;
  void build_tables();

  BoundQuiver quiver_;
  std::vector<int> next_nonzero_, next_zero_, prev_nonzero_, prev_zero_;
  std::vector<int> cycle_arrows_;
  std::vector<std::vector<std::vector<Path>>> paths_;  // [src][tgt]
  int longest_path_ = 0;
  bool connected_ = true;
};

// Parses the bound-quiver text format (see README). Connectivity problems are
// reported through `warnings`, not as errors.
GentleAlgebra parse_algebra(const std::string& text,
                            std::vector<std::string>* warnings = nullptr);

// The derived-discrete family: a cycle of n arrows with r consecutive zero
// relations and a tail of m arrows feeding the cycle at vertex 0.
// Vertices are -m..n-1; requires n >= r >= 1, m >= 0.
GentleAlgebra discrete_algebra(int r, int n, int m);

}  // namespace gentle
