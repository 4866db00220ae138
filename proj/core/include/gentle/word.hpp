#pragma once

#include "gentle/quiver.hpp"
#include "gentle/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gentle {

enum class WordKind { String, Band, LeftInfinite, RightInfinite, TwoSidedInfinite };

// One letter of a homotopy word: a nonzero path together with the
// cohomological degrees of its two endpoints in the unfolded diagram
// (deg_l on the left node, deg_r on the right node, |deg_l - deg_r| <= 1).
struct HomotopyLetter {
  Path path;
  int deg_l = 0;
  int deg_r = 0;

  bool direct() const { return deg_l < deg_r; }
  bool inverse() const { return deg_l > deg_r; }
  bool trivial() const { return deg_l == deg_r; }

  // Vertex seen at the left / right node of the unfolded diagram.
  int left_vertex() const { return inverse() ? path.source : path.target; }
  int right_vertex() const { return inverse() ? path.target : path.source; }

  bool operator==(const HomotopyLetter&) const = default;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A homotopy word. Letters are stored in diagram order, leftmost first.
// Bands carry a nonzero scalar attached to `lambda_pos` (the link letter)
// and a dimension `band_dim`. Infinite kinds store the finite core plus one
// repetition-free relation cycle per infinite side; `left_period[0]` is the
// arrow adjacent to the core (likewise for the right side).
struct HomotopyWord {
  WordKind kind = WordKind::String;
  std::vector<HomotopyLetter> letters;
  bool formal_inverse = false;  // trivial strings only
  Rat lambda = 1;
  int lambda_pos = -1;
  int band_dim = 1;
  std::vector<int> left_period, right_period;

  int size() const { return static_cast<int>(letters.size()); }
  bool is_trivial_string() const {
    return kind == WordKind::String && size() == 1 && letters[0].trivial();
  }
  bool finite() const { return kind == WordKind::String || kind == WordKind::Band; }

  bool operator==(const HomotopyWord&) const = default;
};

struct CanonicalKey {
  std::string form;
  bool operator==(const CanonicalKey&) const = default;
  bool operator<(const CanonicalKey& o) const { return form < o.form; }
};

// Checks the junction conditions pairwise and, for bands, the closing
// conditions (endpoints meet, degrees close up, one extreme letter direct and
// the other inverse, no proper power). Throws ValidationError otherwise.
HomotopyWord validate_word(const GentleAlgebra& A, std::vector<HomotopyLetter> letters,
                           WordKind kind, const Rat& lambda = 1, int band_dim = 1,
                           bool formal_inverse = false);

// Junction test used by validate_word and by the step algorithms: can
// `right` sit immediately to the right of `left`?
bool letters_composable(const GentleAlgebra& A, const HomotopyLetter& left,
                        const HomotopyLetter& right, std::string* why = nullptr);

HomotopyWord inverse(const GentleAlgebra& A, const HomotopyWord& w);
HomotopyWord rotate(const GentleAlgebra& A, const HomotopyWord& w, int k);  // bands only
HomotopyWord shift_word(const HomotopyWord& w, int k);  // degrees -= k

// Canonical forms. Strings minimise over inversion; bands minimise over all
// valid rotations of the word and its inverse, with the scalar normalised by
// the carrier orientation (inversion maps the scalar to its reciprocal).
CanonicalKey canonical_key(const GentleAlgebra& A, const HomotopyWord& w);

// The rotation of a band that build_complex and the hom machinery use, so
// that equal cyclic words always produce byte-identical complexes.
HomotopyWord canonical_band_rotation(const GentleAlgebra& A, const HomotopyWord& w);

struct WordEnumeration {
  std::vector<HomotopyWord> strings;  // one per inversion class, sorted by key
  std::vector<HomotopyWord> bands;    // one per rotation/inversion class, lambda=1
};

// All homotopy strings and bands with at most `max_letters` letters and all
// degrees inside [deg_lo, deg_hi]; trivial strings included at every degree.
WordEnumeration enumerate_words(const GentleAlgebra& A, int max_letters, int deg_lo,
                                int deg_hi);

struct ResolveResult {
  enum class Status { Resolved, NotResolvable, NotPrimitive } status;
  std::string reason;
  HomotopyWord word;  // valid when status == Resolved
};

// Tests one-/two-sided resolvability of a finite string and, when primitive,
// attaches the unique relation-cycle period(s).
ResolveResult resolve_infinite(const GentleAlgebra& A, const HomotopyWord& w);

bool left_resolvable(const GentleAlgebra& A, const HomotopyWord& w, int* arrow = nullptr);
bool right_resolvable(const GentleAlgebra& A, const HomotopyWord& w, int* arrow = nullptr);

std::string word_to_literal(const GentleAlgebra& A, const HomotopyWord& w);
HomotopyWord parse_word_literal(const GentleAlgebra& A, const std::string& text);

}  // namespace gentle
