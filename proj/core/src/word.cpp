#include "gentle/word.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

namespace gentle {

namespace {

std::string ser_letters(const GentleAlgebra& A, const std::vector<HomotopyLetter>& ls) {
  std::string out;
  for (const auto& l : ls) {
    out += "(" + A.path_literal(l.path) + "," + std::to_string(l.deg_l) + "," +
           std::to_string(l.deg_r) + ")";
  }
  return out;
}

std::vector<HomotopyLetter> invert_letters(const std::vector<HomotopyLetter>& ls) {
  std::vector<HomotopyLetter> out(ls.rbegin(), ls.rend());
  for (auto& l : out) std::swap(l.deg_l, l.deg_r);
  return out;
}

std::vector<HomotopyLetter> rotate_letters(const std::vector<HomotopyLetter>& ls, int k) {
  const int n = static_cast<int>(ls.size());
  std::vector<HomotopyLetter> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(ls[(k + i) % n]);
  return out;
}

bool mixed_extremes(const std::vector<HomotopyLetter>& ls) {
  return (ls.front().direct() && ls.back().inverse()) ||
         (ls.front().inverse() && ls.back().direct());
}

bool is_proper_power(const std::vector<HomotopyLetter>& ls) {
  const int n = static_cast<int>(ls.size());
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool period = true;
    for (int k = 0; k + d < n && period; ++k) period = (ls[k] == ls[k + d]);
    if (period) return true;
  }
  return false;
}

}  // namespace

bool letters_composable(const GentleAlgebra& A, const HomotopyLetter& L,
                        const HomotopyLetter& R, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (L.deg_r != R.deg_l) return fail("degrees do not meet at the junction");
  if (L.right_vertex() != R.left_vertex()) return fail("endpoints do not meet");
  if (L.trivial() || R.trivial()) return fail("trivial letters compose only formally");
  if (L.direct() && R.direct()) {
    if (A.compose(L.path, R.path).has_value())
      return fail("consecutive direct letters compose to a nonzero path");
  } else if (L.inverse() && R.inverse()) {
    if (A.compose(R.path, L.path).has_value())
      return fail("consecutive inverse letters compose to a nonzero path");
  } else if (L.direct() && R.inverse()) {
    if (L.path.arrows.front() == R.path.arrows.front())
      return fail("peak letters start with the same arrow");
  } else {  // L inverse, R direct
    if (L.path.arrows.back() == R.path.arrows.back())
      return fail("valley letters end with the same arrow");
  }
  return true;
}

HomotopyWord validate_word(const GentleAlgebra& A, std::vector<HomotopyLetter> letters,
                           WordKind kind, const Rat& lambda, int band_dim,
                           bool formal_inverse) {
  if (letters.empty()) throw ValidationError("a word needs at least one letter");
  for (size_t i = 0; i < letters.size(); ++i) {
    const auto& l = letters[i];
    if (!A.path_valid(l.path)) throw ValidationError("letter " + std::to_string(i) + ": invalid path");
    if (std::abs(l.deg_l - l.deg_r) > 1)
      throw ValidationError("letter " + std::to_string(i) + ": degrees differ by more than 1");
    if (l.trivial() != l.path.stationary())
      throw ValidationError("letter " + std::to_string(i) +
                            ": equal degrees iff the path is stationary");
  }
  if (kind == WordKind::String) {
    if (letters.size() == 1 && letters[0].trivial()) {
      HomotopyWord w;
      w.kind = kind;
      w.letters = std::move(letters);
      w.formal_inverse = formal_inverse;
      return w;
    }
    for (const auto& l : letters)
      if (l.trivial()) throw ValidationError("trivial letters only form one-letter words");
    for (size_t i = 0; i + 1 < letters.size(); ++i) {
      std::string why;
      if (!letters_composable(A, letters[i], letters[i + 1], &why))
        throw ValidationError("junction " + std::to_string(i) + ": " + why);
    }
    HomotopyWord w;
    w.kind = kind;
    w.letters = std::move(letters);
    return w;
  }
  if (kind == WordKind::Band) {
    if (letters.size() < 2) throw ValidationError("a band needs at least two letters");
    for (const auto& l : letters)
      if (l.trivial()) throw ValidationError("bands have no trivial letters");
    for (size_t i = 0; i + 1 < letters.size(); ++i) {
      std::string why;
      if (!letters_composable(A, letters[i], letters[i + 1], &why))
        throw ValidationError("junction " + std::to_string(i) + ": " + why);
    }
    std::string why;
    if (!letters_composable(A, letters.back(), letters.front(), &why))
      throw ValidationError("closing junction: " + why);
    if (letters.back().deg_r != letters.front().deg_l)
      throw ValidationError("band degrees do not close up");
    if (letters.back().right_vertex() != letters.front().left_vertex())
      throw ValidationError("band endpoints do not close up");
    if (!mixed_extremes(letters))
      throw ValidationError("one extreme letter must be direct and the other inverse");
    if (is_proper_power(letters)) throw ValidationError("band is a proper power");
    if (lambda == 0) throw ValidationError("band scalar must be nonzero");
    if (band_dim < 1) throw ValidationError("band dimension must be positive");
    HomotopyWord w;
    w.kind = kind;
    w.letters = std::move(letters);
    w.lambda = lambda;
    w.lambda_pos = w.size() - 1;
    w.band_dim = band_dim;
    return w;
  }
  throw ValidationError("infinite words are built via resolve_infinite");
}

HomotopyWord inverse(const GentleAlgebra& A, const HomotopyWord& w) {
  (void)A;
  HomotopyWord out = w;
  out.letters = invert_letters(w.letters);
  if (w.is_trivial_string()) out.formal_inverse = !w.formal_inverse;
  if (w.kind == WordKind::Band && w.lambda_pos >= 0)
    out.lambda_pos = w.size() - 1 - w.lambda_pos;
  if (w.kind == WordKind::LeftInfinite) {
    out.kind = WordKind::RightInfinite;
    out.right_period = w.left_period;
    out.left_period.clear();
  } else if (w.kind == WordKind::RightInfinite) {
    out.kind = WordKind::LeftInfinite;
    out.left_period = w.right_period;
    out.right_period.clear();
  } else if (w.kind == WordKind::TwoSidedInfinite) {
    out.left_period = w.right_period;
    out.right_period = w.left_period;
  }
  return out;
}

HomotopyWord rotate(const GentleAlgebra& A, const HomotopyWord& w, int k) {
  (void)A;
  if (w.kind != WordKind::Band) throw ValidationError("rotate applies to bands only");
  const int n = w.size();
  k = ((k % n) + n) % n;
  HomotopyWord out = w;
  out.letters = rotate_letters(w.letters, k);
  out.lambda_pos = ((w.lambda_pos - k) % n + n) % n;
  return out;
}

HomotopyWord shift_word(const HomotopyWord& w, int k) {
  HomotopyWord out = w;
  for (auto& l : out.letters) {
    l.deg_l -= k;
    l.deg_r -= k;
  }
  return out;
}

namespace {

// Scalar seen on the link letter once the presentation is rebased so that the
// link sits at the last position: moving the carrier across an orientation
// change replaces the scalar by its reciprocal.
Rat carried_scalar(const HomotopyWord& w, bool carrier_direct_now) {
  bool carrier_direct = w.letters[w.lambda_pos].direct();
  if (carrier_direct == carrier_direct_now) return w.lambda;
  return Rat(denominator(w.lambda), numerator(w.lambda));
}

}  // namespace

HomotopyWord canonical_band_rotation(const GentleAlgebra& A, const HomotopyWord& w) {
  if (w.kind != WordKind::Band) return w;
  const int n = w.size();
  int best_k = -1;
  std::string best;
  for (int k = 0; k < n; ++k) {
    auto rot = rotate_letters(w.letters, k);
    if (!mixed_extremes(rot)) continue;
    std::string s = ser_letters(A, rot);
    if (best_k < 0 || s < best) {
      best = std::move(s);
      best_k = k;
    }
  }
  assert(best_k >= 0);
  return rotate(A, w, best_k);
}

CanonicalKey canonical_key(const GentleAlgebra& A, const HomotopyWord& w) {
  switch (w.kind) {
    case WordKind::String: {
      std::string a = ser_letters(A, w.letters);
      std::string b = ser_letters(A, invert_letters(w.letters));
      return CanonicalKey{"S|" + std::min(a, b)};
    }
    case WordKind::Band: {
      const int n = w.size();
      std::string best;
      std::vector<Rat> scalars;
      for (int side = 0; side < 2; ++side) {
        HomotopyWord base = side ? inverse(A, w) : w;
        for (int k = 0; k < n; ++k) {
          auto rot = rotate_letters(base.letters, k);
          if (!mixed_extremes(rot)) continue;
          std::string s = ser_letters(A, rot);
          if (best.empty() || s < best) {
            best = s;
            scalars.clear();
          }
          if (s == best) scalars.push_back(carried_scalar(base, rot.back().direct()));
        }
      }
      Rat lam = *std::min_element(scalars.begin(), scalars.end());
      return CanonicalKey{"B|r=" + std::to_string(w.band_dim) + "|" + best +
                          "|l=" + rat_to_string(lam)};
    }
    default: {
      auto ser_inf = [&](const HomotopyWord& x) {
        std::string s;
        s += "L[";
        for (int a : x.left_period) s += A.quiver().arrows[a].name + ",";
        s += "]C" + ser_letters(A, x.letters) + "R[";
        for (int a : x.right_period) s += A.quiver().arrows[a].name + ",";
        s += "]";
        return s;
      };
      std::string tag = w.kind == WordKind::LeftInfinite    ? "LI|"
                        : w.kind == WordKind::RightInfinite ? "RI|"
                                                            : "TI|";
      std::string a = ser_inf(w);
      HomotopyWord iw = inverse(A, w);
      std::string b = (iw.kind == w.kind ? "" : (iw.kind == WordKind::LeftInfinite ? "LI|" : iw.kind == WordKind::RightInfinite ? "RI|" : "TI|"));
      std::string bs = ser_inf(iw);
      // Compare across the inverted kind as well so that a word and its
      // inverse always share a key.
      std::string mine = tag + a;
      std::string other = (b.empty() ? tag : b) + bs;
      return CanonicalKey{std::min(mine, other)};
    }
  }
}

WordEnumeration enumerate_words(const GentleAlgebra& A, int max_letters, int deg_lo,
                                int deg_hi) {
  WordEnumeration out;
  std::map<CanonicalKey, HomotopyWord> strings, bands;

  auto canonical_string_form = [&](const HomotopyWord& w) {
    std::string a = ser_letters(A, w.letters);
    HomotopyWord iw = inverse(A, w);
    std::string b = ser_letters(A, iw.letters);
    return b < a ? iw : w;
  };

  // Trivial strings at every vertex and degree.
  for (int v = 0; v < A.num_vertices(); ++v)
    for (int d = deg_lo; d <= deg_hi; ++d) {
      HomotopyWord w = validate_word(A, {{A.stationary_path(v), d, d}}, WordKind::String);
      strings.emplace(canonical_key(A, w), w);
    }

  // All nonstationary paths once.
  std::vector<Path> paths;
  for (int s = 0; s < A.num_vertices(); ++s)
    for (int t = 0; t < A.num_vertices(); ++t)
      for (const auto& p : A.paths_between(s, t))
        if (!p.stationary()) paths.push_back(p);

  auto try_band_close = [&](const std::vector<HomotopyLetter>& ls) {
    if (ls.size() < 2) return;
    if (ls.back().deg_r != ls.front().deg_l) return;
    if (ls.back().right_vertex() != ls.front().left_vertex()) return;
    if (!mixed_extremes(ls)) return;
    if (!letters_composable(A, ls.back(), ls.front())) return;
    if (is_proper_power(ls)) return;
    HomotopyWord w = validate_word(A, ls, WordKind::Band, 1, 1);
    w = canonical_band_rotation(A, w);
    bands.emplace(canonical_key(A, w), w);
  };

  std::vector<HomotopyLetter> stack;
  auto extend = [&](auto&& self) -> void {
    if (!stack.empty()) {
      HomotopyWord w = validate_word(A, stack, WordKind::String);
      strings.emplace(canonical_key(A, w), canonical_string_form(w));
      try_band_close(stack);
      if (static_cast<int>(stack.size()) == max_letters) return;
    }
    for (const auto& p : paths) {
      for (int dir = 0; dir < 2; ++dir) {
        HomotopyLetter next;
        next.path = p;
        if (stack.empty()) {
          for (int d = deg_lo; d <= deg_hi; ++d) {
            next.deg_l = d;
            next.deg_r = dir ? d + 1 : d - 1;
            if (next.deg_r < deg_lo || next.deg_r > deg_hi) continue;
            stack.push_back(next);
            self(self);
            stack.pop_back();
          }
        } else {
          const auto& prev = stack.back();
          next.deg_l = prev.deg_r;
          next.deg_r = dir ? next.deg_l + 1 : next.deg_l - 1;
          if (next.deg_r < deg_lo || next.deg_r > deg_hi) continue;
          if (!letters_composable(A, prev, next)) continue;
          stack.push_back(next);
          self(self);
          stack.pop_back();
        }
      }
    }
  };
  if (max_letters >= 1) extend(extend);

  for (auto& [k, w] : strings) out.strings.push_back(std::move(w));
  for (auto& [k, w] : bands) out.bands.push_back(std::move(w));
  return out;
}

bool left_resolvable(const GentleAlgebra& A, const HomotopyWord& w, int* arrow) {
  if (w.kind != WordKind::String || w.is_trivial_string()) return false;
  const auto& first = w.letters.front();
  if (!first.direct()) return false;
  int lo = first.deg_l;
  for (const auto& l : w.letters)
    if (l.deg_l < lo || l.deg_r < lo) return false;
  int found = -1;
  for (int a : A.cycle_arrows()) {
    HomotopyLetter cand{A.arrow_path(a), lo - 1, lo};
    if (letters_composable(A, cand, first)) {
      assert(found == -1 && "gentleness forces a unique resolving arrow");
      found = a;
    }
  }
  if (found >= 0 && arrow) *arrow = found;
  return found >= 0;
}

bool right_resolvable(const GentleAlgebra& A, const HomotopyWord& w, int* arrow) {
  return left_resolvable(A, inverse(A, w), arrow);
}

namespace {

bool primitive_left(const GentleAlgebra& A, const HomotopyWord& w) {
  const int n = w.size();
  for (int t = 1; t <= n; ++t) {
    const auto& l = w.letters[t - 1];
    if (!(l.direct() && l.path.length() == 1)) break;  // prefix must stay an antipath
    if (t == n) return false;  // the whole word strips away
    HomotopyWord rest = w;
    rest.letters.erase(rest.letters.begin(), rest.letters.begin() + t);
    if (rest.size() == 1 && rest.letters[0].trivial()) continue;
    if (left_resolvable(A, rest, nullptr)) return false;
  }
  return true;
}

}  // namespace

ResolveResult resolve_infinite(const GentleAlgebra& A, const HomotopyWord& w) {
  if (w.kind != WordKind::String)
    return {ResolveResult::Status::NotResolvable, "only finite strings resolve", {}};
  int la = -1, ra = -1;
  bool l = left_resolvable(A, w, &la);
  bool r = right_resolvable(A, w, &ra);
  if (!l && !r)
    return {ResolveResult::Status::NotResolvable, "neither side is resolvable", {}};
  if (l && !primitive_left(A, w))
    return {ResolveResult::Status::NotPrimitive, "a direct antipath prefix strips off", {}};
  if (r && !primitive_left(A, inverse(A, w)))
    return {ResolveResult::Status::NotPrimitive, "an inverse antipath suffix strips off", {}};
  HomotopyWord out = w;
  if (l && r)
    out.kind = WordKind::TwoSidedInfinite;
  else
    out.kind = l ? WordKind::LeftInfinite : WordKind::RightInfinite;
  if (l) out.left_period = *A.relation_cycle(la);
  if (r) out.right_period = *A.relation_cycle(ra);
  return {ResolveResult::Status::Resolved, "", out};
}

}  // namespace gentle
