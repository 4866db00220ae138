#pragma once

#include "gentle/quiver.hpp"
#include "gentle/word.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gentle {

struct D2NotZero : std::logic_error {
  using std::logic_error::logic_error;
};

// A complex of projectives with a chosen ordering of the summands in each
// degree. Differential entries are scalar multiples of paths; entry (row, col)
// is the component P(modules[d][row]) -> P(modules[d+1][col]).
struct ProjComplex {
  struct Entry {
    int row = 0;
    int col = 0;
    Rat scalar = 1;
    Path path;
  };

  std::map<int, std::vector<int>> modules;   // degree -> slot vertices
  std::map<int, std::vector<Entry>> diffs;   // source degree -> entries
  HomotopyWord provenance;
  bool truncated = false;

  int slot_count() const;
  bool has_degree(int d) const { return modules.count(d) != 0; }
  int slots_in(int d) const {
    auto it = modules.find(d);
    return it == modules.end() ? 0 : static_cast<int>(it->second.size());
  }
};

// Node positions of the unfolded diagram mapped to (degree, slot) pairs of the
// one-dimensional complex. Strings have size()+1 nodes (leftmost first);
// bands have size() nodes, node p being the left node of letter p.
struct SlotMap {
  std::vector<std::pair<int, int>> node_slot;
  std::map<int, std::vector<int>> modules;
};
SlotMap slot_map(const HomotopyWord& w);

int node_degree(const HomotopyWord& w, int pos);
int node_vertex(const HomotopyWord& w, int pos);

// Materializes the complex of a word; d^2 = 0 is always checked. Infinite
// kinds require a degree cutoff (lowest degree kept) and mark the result
// truncated.
ProjComplex build_complex(const GentleAlgebra& A, const HomotopyWord& w,
                          std::optional<int> cutoff = std::nullopt);

struct UnfoldedDiagram {
  struct Node {
    int vertex;
    int degree;
    int layer;
  };
  struct Edge {
    int from;
    int to;
    std::string label;
    bool rightward;
    bool link;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  bool cyclic = false;
};

UnfoldedDiagram unfold(const GentleAlgebra& A, const HomotopyWord& w);
std::string diagram_to_dot(const GentleAlgebra& A, const UnfoldedDiagram& d);

std::string complex_to_json(const GentleAlgebra& A, const ProjComplex& C);

}  // namespace gentle
