#pragma once

#include "gentle/oracle.hpp"
#include "gentle/word.hpp"

#include <string>
#include <vector>

namespace gentle {

enum class MorphVariant { Graph, QuasiRep, SingletonSingle, SingletonDouble, Single, Double };

std::string variant_name(MorphVariant v);

// One matrix component of a morphism between the complexes of two words.
// A stationary path is an isomorphism component. Slots refer to the complexes
// produced by build_complex on the same (band-rotation-normalised) words;
// they are -1 when a word is infinite and the complex is never materialised.
struct MorphComponent {
  int degree = 0;
  int src_slot = -1;
  int tgt_slot = -1;
  Rat scalar = 1;
  Path path;

  bool iso() const { return path.stationary(); }
  bool operator==(const MorphComponent&) const = default;
  bool operator<(const MorphComponent& o) const {
    return std::tie(degree, src_slot, tgt_slot, path, scalar) <
           std::tie(o.degree, o.src_slot, o.tgt_slot, o.path, o.scalar);
  }
};

// An element of the canonical basis of Hom between two word complexes.
// For QuasiRep the components are the chosen representative (a genuine chain
// map); rep_chain lists the whole homotopy family it stands for.
struct BasisMorphism {
  MorphVariant variant = MorphVariant::Single;
  std::vector<MorphComponent> components;
  bool infinite_left = false;   // isomorphism components continue forever
  bool infinite_right = false;
  std::vector<std::vector<MorphComponent>> rep_chain;
  bool rep_cyclic = false;

  bool realizable() const;
  MapMatrices realize() const;  // throws on infinite components
};

// True for the graph map that covers both complexes entirely by isomorphism
// components (the identity up to rescaling).
bool is_isomorphism_map(const BasisMorphism& f, const ProjComplex& C, const ProjComplex& D);

std::string morphism_to_json(const GentleAlgebra& A, const BasisMorphism& f);

}  // namespace gentle
