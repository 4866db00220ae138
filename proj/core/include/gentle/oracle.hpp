#pragma once

#include "gentle/complex.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace gentle {

enum class FieldKind { PrimeField, Rational };

// A chain map or graded map presented degreewise; entry (row, col) is the
// component from slot `row` of the source in degree d to slot `col` of the
// target in degree d (+ offset, for homotopies).
using MapMatrices = std::map<int, std::vector<ProjComplex::Entry>>;

struct HomDims {
  int chain_maps = 0;
  int null_homotopic = 0;
  int hom = 0;
};

// Ground truth by exact linear algebra on explicit complexes. All answers are
// computed from scratch: graded maps are coordinatised by (slot, slot, path)
// triples and the chain-map / boundary conditions become linear systems over
// GF(p) or the rationals.
class Oracle {
 public:
  explicit Oracle(const GentleAlgebra& A, FieldKind kind = FieldKind::PrimeField,
                  std::uint32_t p = 32003);

  int chain_map_dim(const ProjComplex& C, const ProjComplex& D) const;
  int null_homotopic_dim(const ProjComplex& C, const ProjComplex& D) const;
  int hom_dim(const ProjComplex& C, const ProjComplex& D) const;
  HomDims dims(const ProjComplex& C, const ProjComplex& D) const;

  bool verify_chain_map(const ProjComplex& C, const ProjComplex& D,
                        const MapMatrices& f) const;
  bool verify_homotopic(const ProjComplex& C, const ProjComplex& D, const MapMatrices& f,
                        const MapMatrices& g) const;
  bool verify_null_homotopic(const ProjComplex& C, const ProjComplex& D,
                             const MapMatrices& f) const;
  // Checks that h realises a homotopy from f to g: f - g = d_C h + h d_D.
  bool verify_homotopy_witness(const ProjComplex& C, const ProjComplex& D,
                               const MapMatrices& f, const MapMatrices& g,
                               const MapMatrices& h) const;

  // Dimension of the span of the given chain maps inside Hom, i.e. modulo
  // null-homotopic maps.
  int span_dim_mod_null(const ProjComplex& C, const ProjComplex& D,
                        const std::vector<MapMatrices>& maps) const;
  bool in_span_mod_null(const ProjComplex& C, const ProjComplex& D, const MapMatrices& f,
                        const std::vector<MapMatrices>& maps) const;

  FieldKind field() const { return kind_; }
  std::uint32_t prime() const { return p_; }

 private:
  const GentleAlgebra& A_;
  FieldKind kind_;
  std::uint32_t p_;
};

// Composes two realised maps (f first, then g) over the path algebra.
MapMatrices compose_maps(const GentleAlgebra& A, const ProjComplex& C, const MapMatrices& f,
                         const MapMatrices& g);

}  // namespace gentle
