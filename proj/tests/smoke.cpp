#include "gentle/quiver.hpp"
#include "gentle/word.hpp"
#include "gentle/complex.hpp"
#include "gentle/oracle.hpp"
#include "gentle/hom_basis.hpp"
#include <iostream>
using namespace gentle;
static const char* kRunning = R"(
vertices: 0 1 2 3 4
arrow a: 0 -> 1
arrow b: 1 -> 2
arrow c: 2 -> 0
arrow d: 0 -> 4
arrow e: 4 -> 3
arrow f: 3 -> 0
relation b a
relation c b
relation a c
relation e d
relation f e
relation d f
)";
int main() {
  auto A = parse_algebra(kRunning);
  Oracle orc(A);
  auto z1 = parse_word_literal(A, "(d,3,2)(e,2,1)(f,1,0)(c,0,1)(b,1,2)(a,2,3)@λ=1,r=1");
  auto z2 = parse_word_literal(A, "(d,3,2)(e,2,1)(f,1,0)(c,0,1)(b,1,2)(a,2,3)@λ=2,r=1");
  auto B1 = build_complex(A, z1), B2 = build_complex(A, z2);
  std::cout << "hom(z1,z1): comb=" << hom_dim(A, z1, z1) << " oracle=" << orc.hom_dim(B1, B1) << "\n";
  std::cout << "hom(z1,z2): comb=" << hom_dim(A, z1, z2) << " oracle=" << orc.hom_dim(B1, B2) << "\n";
  std::cout << "hom(z2,z2): comb=" << hom_dim(A, z2, z2) << " oracle=" << orc.hom_dim(B2, B2) << "\n";
  for (int k = -3; k <= 3; ++k) {
    auto zs = shift_word(z1, k);
    auto Bs = build_complex(A, zs);
    int comb = hom_dim(A, z1, zs);
    int orc_d = orc.hom_dim(B1, Bs);
    std::cout << "hom(z1, S^" << k << " z1): comb=" << comb << " oracle=" << orc_d
              << (comb == orc_d ? "" : "  <<< MISMATCH") << "\n";
  }
  // vs strings
  auto w23 = parse_word_literal(A, "(e,2,1)(f,1,0)(c,0,1)(b,1,2)(a*f,2,3)");
  auto W = build_complex(A, w23);
  std::cout << "hom(z1,w23): comb=" << hom_dim(A, z1, w23) << " oracle=" << orc.hom_dim(B1, W) << "\n";
  std::cout << "hom(w23,z1): comb=" << hom_dim(A, w23, z1) << " oracle=" << orc.hom_dim(W, B1) << "\n";
  // canonical keys: z vs rotations and inverse
  auto zr = rotate(A, z1, 3);
  std::cout << "key(z1)==key(rot3 z1): " << (canonical_key(A, z1) == canonical_key(A, zr)) << "\n";
  auto z2inv = inverse(A, z2);
  std::cout << "key(z2)==key(z2^-1 as 1/2): "
            << (canonical_key(A, z2).form == canonical_key(A, z2inv).form) << "\n";
  std::cout << "key(z2): " << canonical_key(A, z2).form << "\n";
  std::cout << "key(z2inv): " << canonical_key(A, z2inv).form << "\n";
  return 0;
}
