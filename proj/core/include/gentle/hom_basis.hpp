#pragma once

#include "gentle/complex.hpp"
#include "gentle/morphism.hpp"
#include "gentle/word.hpp"

#include <optional>
#include <vector>

namespace gentle {

// All Hom computations fix one presentation per word: bands are rotated to
// their canonical presentation (matching build_complex), other kinds are kept
// as given. Only strings, one-dimensional bands and infinite strings are
// accepted here; higher band dimensions are handled by closed formulas.
struct HomPair {
  HomPair(const GentleAlgebra& A, const HomotopyWord& v, const HomotopyWord& w);
  const GentleAlgebra& A;
  HomotopyWord v, w;
};

std::vector<BasisMorphism> graph_maps(const GentleAlgebra& A, const HomotopyWord& v,
                                      const HomotopyWord& w);
std::vector<BasisMorphism> quasi_graph_maps(const GentleAlgebra& A, const HomotopyWord& v,
                                            const HomotopyWord& w);
std::vector<BasisMorphism> singleton_singles(const GentleAlgebra& A, const HomotopyWord& v,
                                             const HomotopyWord& w);
std::vector<BasisMorphism> singleton_doubles(const GentleAlgebra& A, const HomotopyWord& v,
                                             const HomotopyWord& w);

// The canonical basis of Hom in the homotopy category and its dimension.
std::vector<BasisMorphism> hom_basis(const GentleAlgebra& A, const HomotopyWord& v,
                                     const HomotopyWord& w);
int hom_dim(const GentleAlgebra& A, const HomotopyWord& v, const HomotopyWord& w);

// The basis of chain maps before passing to homotopy classes: all single and
// double maps together with the graph maps. Finite words only.
std::vector<BasisMorphism> complex_level_basis(const GentleAlgebra& A, const HomotopyWord& v,
                                               const HomotopyWord& w);

// The homotopy family of a single or double map: the ordered walk through
// homotopic basis maps, the homotopies chaining them, and the verdict.
struct HomotopySet {
  enum class Status { Singleton, Quasi, NullHomotopic } status;
  std::string null_reason;  // set when null-homotopic
  // reps[i] is homotopic to reps[i+1] via homotopies[i] (one component each).
  std::vector<std::vector<MorphComponent>> reps;
  std::vector<MorphComponent> homotopies;
  bool cyclic = false;  // the walk closed up around a band
};

HomotopySet homotopy_set(const GentleAlgebra& A, const HomotopyWord& v, const HomotopyWord& w,
                         const BasisMorphism& f);

}  // namespace gentle
