#pragma once

#include "gentle/hom_basis.hpp"
#include "gentle/word.hpp"

namespace gentle {

// A band complex specification: the word carries the scalar and the dimension.
struct BandSpec {
  HomotopyWord word;

  const Rat& lambda() const { return word.lambda; }
  int dim() const { return word.band_dim; }
  HomotopyWord one_dimensional() const {
    HomotopyWord w = word;
    w.band_dim = 1;
    return w;
  }
};

BandSpec make_band_spec(const GentleAlgebra& A, const HomotopyWord& band, const Rat& lambda,
                        int r);

// dim Hom between band complexes of any dimensions, from the one-dimensional
// Hom computed combinatorially. Three regimes: isomorphic mouths, a mouth
// isomorphic to the shift of the other, and the generic case.
int band_band_dim(const GentleAlgebra& A, const BandSpec& x, const BandSpec& y);

enum class HomDirection { BandToString, StringToBand };

// dim Hom(B_r, P_u) = r·dim Hom(B_1, P_u), and dually.
int band_string_dim(const GentleAlgebra& A, const BandSpec& x, const HomotopyWord& u,
                    HomDirection dir);

// True iff Hom(B_1, Σ^k B_1) is nonzero.
bool self_ext_positive(const GentleAlgebra& A, const BandSpec& x, int k);

}  // namespace gentle
