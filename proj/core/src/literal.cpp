#include "gentle/quiver.hpp"
#include "gentle/rational.hpp"
#include "gentle/word.hpp"

#include <cctype>
#include <sstream>

namespace gentle {

std::optional<Rat> parse_rat(const std::string& text) {
  if (text.empty()) return std::nullopt;
  auto slash = text.find('/');
  try {
    using Int = boost::multiprecision::cpp_int;
    if (slash == std::string::npos) return Rat(Int(text));
    Int num(text.substr(0, slash)), den(text.substr(slash + 1));
    if (den == 0) return std::nullopt;
    return Rat(num, den);
  } catch (...) {
    return std::nullopt;
  }
}

std::string word_to_literal(const GentleAlgebra& A, const HomotopyWord& w) {
  std::string out;
  auto period_str = [&](const std::vector<int>& per) {
    std::string s = "[";
    for (size_t i = 0; i < per.size(); ++i) {
      if (i) s += "*";
      s += A.quiver().arrows[per[i]].name;
    }
    return s + "]^inf";
  };
  if (w.kind == WordKind::LeftInfinite || w.kind == WordKind::TwoSidedInfinite)
    out += period_str(w.left_period) + " ";
  if (w.formal_inverse) out += "~";
  for (const auto& l : w.letters)
    out += "(" + A.path_literal(l.path) + "," + std::to_string(l.deg_l) + "," +
           std::to_string(l.deg_r) + ")";
  if (w.kind == WordKind::RightInfinite || w.kind == WordKind::TwoSidedInfinite)
    out += " " + period_str(w.right_period);
  if (w.kind == WordKind::Band)
    out += "@λ=" + rat_to_string(w.lambda) + ",r=" + std::to_string(w.band_dim);
  return out;
}

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  std::string until(const std::string& stops) {
    skip_ws();
    std::string out;
    while (i < s.size() && stops.find(s[i]) == std::string::npos) out += s[i++];
    while (!out.empty() && isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    return out;
  }
};

int parse_int(const std::string& t) {
  size_t pos = 0;
  int v = std::stoi(t, &pos);
  if (pos != t.size()) throw ValidationError("bad integer '" + t + "' in word literal");
  return v;
}

std::vector<int> parse_period(const GentleAlgebra& A, Cursor& c) {
  std::vector<int> arrows;
  std::string body = c.until("]");
  if (!c.eat(']')) throw ValidationError("unterminated period in word literal");
  if (!c.eat('^')) throw ValidationError("expected ^inf after period");
  std::string inf = c.until(" ([~");
  if (inf != "inf") throw ValidationError("expected ^inf after period");
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) throw ValidationError("empty arrow name in period");
    int a = A.quiver().arrow_index(cur);
    if (a < 0) throw ValidationError("unknown arrow '" + cur + "' in period");
    arrows.push_back(a);
    cur.clear();
  };
  for (char ch : body) {
    if (ch == '*')
      flush();
    else if (!isspace(static_cast<unsigned char>(ch)))
      cur += ch;
  }
  flush();
  return arrows;
}

}  // namespace

HomotopyWord parse_word_literal(const GentleAlgebra& A, const std::string& text) {
  Cursor c{text};
  std::vector<int> left_period, right_period;
  bool has_left = false, has_right = false;
  if (c.eat('[')) {
    left_period = parse_period(A, c);
    has_left = true;
  }
  bool formal_inverse = c.eat('~');
  std::vector<HomotopyLetter> letters;
  while (c.eat('(')) {
    std::string path_text = c.until(",");
    if (!c.eat(',')) throw ValidationError("letter: expected (path,i,j)");
    std::string it = c.until(",");
    if (!c.eat(',')) throw ValidationError("letter: expected (path,i,j)");
    std::string jt = c.until(")");
    if (!c.eat(')')) throw ValidationError("letter: expected (path,i,j)");
    auto p = A.parse_path_literal(path_text);
    if (!p) throw ValidationError("bad path '" + path_text + "' in word literal");
    letters.push_back({*p, parse_int(it), parse_int(jt)});
  }
  if (letters.empty()) throw ValidationError("word literal has no letters");
  if (c.eat('[')) {
    right_period = parse_period(A, c);
    has_right = true;
  }
  Rat lambda = 1;
  int band_dim = 1;
  bool is_band = false;
  if (c.eat('@')) {
    is_band = true;
    std::string lam_key = c.until("=");
    if (!(lam_key == "λ" || lam_key == "l" || lam_key == "lambda"))
      throw ValidationError("band suffix: expected λ=...");
    if (!c.eat('=')) throw ValidationError("band suffix: expected λ=...");
    auto lam = parse_rat(c.until(","));
    if (!lam || *lam == 0) throw ValidationError("band suffix: bad scalar");
    lambda = *lam;
    if (!c.eat(',')) throw ValidationError("band suffix: expected ,r=...");
    std::string r_key = c.until("=");
    if (r_key != "r") throw ValidationError("band suffix: expected r=...");
    if (!c.eat('=')) throw ValidationError("band suffix: expected r=...");
    band_dim = parse_int(c.until(" "));
  }
  if (!c.done()) throw ValidationError("trailing characters in word literal");

  if (has_left || has_right) {
    // Validate the core as a plain string, then re-run the resolution to
    // check that the declared periods are the forced ones.
    HomotopyWord core = validate_word(A, letters, WordKind::String);
    ResolveResult rr = resolve_infinite(A, core);
    if (rr.status != ResolveResult::Status::Resolved)
      throw ValidationError("declared infinite word does not resolve: " + rr.reason);
    HomotopyWord w = rr.word;
    bool want_left = has_left, want_right = has_right;
    bool got_left = w.kind != WordKind::RightInfinite;
    bool got_right = w.kind != WordKind::LeftInfinite;
    if (want_left != got_left || want_right != got_right)
      throw ValidationError("declared infinite sides do not match the resolution");
    if (has_left && left_period != w.left_period)
      throw ValidationError("declared left period differs from the forced one");
    if (has_right && right_period != w.right_period)
      throw ValidationError("declared right period differs from the forced one");
    if (want_left && !want_right) w.kind = WordKind::LeftInfinite;
    if (want_right && !want_left) w.kind = WordKind::RightInfinite;
    if (want_left && want_right) w.kind = WordKind::TwoSidedInfinite;
    if (!want_right) w.right_period.clear();
    if (!want_left) w.left_period.clear();
    return w;
  }
  return validate_word(A, std::move(letters), is_band ? WordKind::Band : WordKind::String,
                       lambda, band_dim, formal_inverse);
}

}  // namespace gentle
