#include "staudtlab/expr.hpp"

#include <cctype>

#include "staudtlab/errors.hpp"

namespace staudt {

namespace {

using A = Arith<Rational>;
using Payload = std::vector<Rational>;

std::string rational_text(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

// True when the rendering has no top-level '+' or '-' other than a leading
// sign, so it can be used as a factor without parentheses.
bool is_factor(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth == 0 && i > 0 && (c == '+' || c == '-') && s[i - 1] != '^') return false;
  }
  return true;
}

// Joins coefficient/unit terms as "a+b*u-c*v".
std::string join_terms(const std::vector<std::pair<std::string, std::string>>& terms) {
  std::string out;
  for (const auto& [coef, unit] : terms) {
    std::string term;
    if (unit.empty()) {
      term = (terms.size() == 1 || is_factor(coef)) ? coef : "(" + coef + ")";
    } else if (coef == "1") {
      term = unit;
    } else if (coef == "-1") {
      term = "-" + unit;
    } else {
      term = (is_factor(coef) ? coef : "(" + coef + ")") + "*" + unit;
    }
    if (!out.empty() && term.front() != '-') out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace

std::string render_payload(const RingLayout& L, const Rational* a) {
  switch (L.kind()) {
    case RingKind::Zmod:
    case RingKind::Rational:
      return rational_text(a[0]);
    case RingKind::GF: {
      if (L.size == 1) return rational_text(a[0]);
      std::vector<std::pair<std::string, std::string>> terms;
      for (int e = L.size - 1; e >= 0; --e) {
        if (a[e] == 0) continue;
        std::string unit = e == 0 ? "" : (e == 1 ? "g" : "g^" + std::to_string(e));
        terms.emplace_back(rational_text(a[e]), unit);
      }
      return join_terms(terms);
    }
    case RingKind::Sum: {
      std::string out = "(";
      for (std::size_t p = 0; p < L.parts.size(); ++p) {
        if (p) out += ",";
        out += render_payload(L.parts[p], a + L.offsets[p]);
      }
      return out + ")";
    }
    default: break;
  }
  const RingLayout& B = L.base();
  const std::size_t w = B.width;
  switch (L.kind()) {
    case RingKind::Quat:
    case RingKind::Dual: {
      static const char* kQuatUnits[4] = {"", "i", "j", "k"};
      static const char* kDualUnits[2] = {"", "eps"};
      const int slots = L.kind() == RingKind::Quat ? 4 : 2;
      std::vector<std::pair<std::string, std::string>> terms;
      for (int s = 0; s < slots; ++s) {
        if (A::is_zero(B, a + s * w)) continue;
        terms.emplace_back(render_payload(B, a + s * w),
                           L.kind() == RingKind::Quat ? kQuatUnits[s] : kDualUnits[s]);
      }
      return join_terms(terms);
    }
    case RingKind::Mat:
    case RingKind::Tri: {
      const int n = L.size;
      const std::string zero_text = [&] {
        Payload z(w);
        A::zero(B, z.data());
        return render_payload(B, z.data());
      }();
      std::string out = "[";
      for (int i = 0; i < n; ++i) {
        out += i ? ",[" : "[";
        for (int j = 0; j < n; ++j) {
          if (j) out += ",";
          if (L.kind() == RingKind::Mat) {
            out += render_payload(B, a + (i * n + j) * w);
          } else {
            out += j < i ? zero_text : render_payload(B, a + tri_offset(i, j, n) * w);
          }
        }
        out += "]";
      }
      return out + "]";
    }
    default: return {};
  }
}

namespace {

class ExprParser {
 public:
  ExprParser(const Ring& ring, std::string_view text) : ring_(ring), text_(text) {}

  Payload parse() {
    Payload v = expr(ring_.layout());
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Syntax, what + " at position " + std::to_string(pos_), std::string(text_), pos_);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  static Payload make(const RingLayout& L) { return Payload(L.width, Rational(0)); }

  static bool has_base(const RingLayout& L) {
    return L.kind() == RingKind::Quat || L.kind() == RingKind::Mat || L.kind() == RingKind::Tri ||
           L.kind() == RingKind::Dual;
  }

  Payload embed(const RingLayout& L, const Payload& base) {
    Payload out = make(L);
    A::embed(L, base.data(), out.data());
    return out;
  }

  Payload inverse(const RingLayout& L, const Payload& v) {
    Payload out = make(L);
    if (!A::try_inverse(L, v.data(), out.data())) {
      const std::string shown = render_payload(L, v.data());
      throw Error(ErrorKind::NonUnit, shown + " is not a unit in " + render(L.spec), shown);
    }
    return out;
  }

  Payload expr(const RingLayout& L) {
    Payload acc = term(L);
    for (;;) {
      if (accept('+')) {
        Payload rhs = term(L), out = make(L);
        A::add(L, acc.data(), rhs.data(), out.data());
        acc.swap(out);
      } else if (accept('-')) {
        Payload rhs = term(L), out = make(L);
        A::sub(L, acc.data(), rhs.data(), out.data());
        acc.swap(out);
      } else {
        return acc;
      }
    }
  }

  Payload term(const RingLayout& L) {
    Payload acc = unary(L);
    for (;;) {
      if (accept('*')) {
        Payload rhs = unary(L), out = make(L);
        A::mul(L, acc.data(), rhs.data(), out.data());
        acc.swap(out);
      } else if (peek('/')) {
        ++pos_;
        Payload rhs = inverse(L, unary(L)), out = make(L);
        A::mul(L, acc.data(), rhs.data(), out.data());
        acc.swap(out);
      } else {
        return acc;
      }
    }
  }

  Payload unary(const RingLayout& L) {
    if (accept('-')) {
      Payload v = unary(L), out = make(L);
      A::neg(L, v.data(), out.data());
      return out;
    }
    return power(L);
  }

  Payload power(const RingLayout& L) {
    Payload base = primary(L);
    if (!accept('^')) return base;
    const bool negative = accept('-');
    skip_space();
    long e = 0;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      e = e * 10 + (text_[pos_++] - '0');
      if (e > 1000000) fail("exponent too large");
    }
    if (start == pos_) fail("expected exponent");
    if (negative) base = inverse(L, base);
    Payload result = make(L), tmp = make(L);
    A::one(L, result.data());
    for (long i = 0; i < e; ++i) {
      A::mul(L, result.data(), base.data(), tmp.data());
      result.swap(tmp);
    }
    return result;
  }

  Payload primary(const RingLayout& L) {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      BigInt value = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + (text_[pos_++] - '0');
      }
      Payload out = make(L);
      A::from_int(L, value, out.data());
      return out;
    }
    if (c == '(') return parenthesised(L);
    if (c == '[') {
      if (L.kind() == RingKind::Mat || L.kind() == RingKind::Tri) return matrix(L);
      if (has_base(L)) return embed(L, primary(L.base()));
      fail("matrix literal in " + render(L.spec));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (name == "inv") {
        expect('(');
        Payload v = expr(L);
        expect(')');
        return inverse(L, v);
      }
      return symbol(L, name, start);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  Payload parenthesised(const RingLayout& L) {
    const std::size_t start = pos_;
    expect('(');
    if (L.kind() == RingKind::Sum) {
      Payload out = make(L);
      for (std::size_t p = 0; p < L.parts.size(); ++p) {
        if (p) expect(',');
        Payload part = expr(L.parts[p]);
        std::copy(part.begin(), part.end(), out.begin() + static_cast<std::ptrdiff_t>(L.offsets[p]));
      }
      if (peek(',')) fail("too many tuple components for " + render(L.spec));
      expect(')');
      return out;
    }
    Payload v = expr(L);
    if (accept(')')) return v;
    if (peek(',') && has_base(L)) {
      // A tuple belongs to some Sum further down the tower.
      pos_ = start;
      return embed(L, primary(L.base()));
    }
    fail("expected ')'");
  }

  Payload matrix(const RingLayout& L) {
    const RingLayout& B = L.base();
    const int n = L.size;
    const std::size_t w = B.width;
    std::vector<Payload> entries;
    expect('[');
    int rows = 0;
    do {
      expect('[');
      int cols = 0;
      do {
        entries.push_back(expr(B));
        ++cols;
      } while (accept(','));
      expect(']');
      if (cols != n) fail("matrix row must have " + std::to_string(n) + " entries");
      ++rows;
    } while (accept(','));
    expect(']');
    if (rows != n) fail("matrix must have " + std::to_string(n) + " rows");
    Payload out = make(L);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Payload& e = entries[static_cast<std::size_t>(i * n + j)];
        if (L.kind() == RingKind::Mat) {
          std::copy(e.begin(), e.end(), out.begin() + static_cast<std::ptrdiff_t>((i * n + j) * w));
        } else if (j >= i) {
          std::copy(e.begin(), e.end(), out.begin() + static_cast<std::ptrdiff_t>(tri_offset(i, j, n) * w));
        } else if (!A::is_zero(B, e.data())) {
          throw Error(ErrorKind::Semantic, "entry below the diagonal of a triangular matrix", std::string(text_), pos_);
        }
      }
    }
    return out;
  }

  Payload unit_slot(const RingLayout& L, std::size_t slot) {
    const RingLayout& B = L.base();
    Payload out = make(L);
    A::one(B, out.data() + slot * B.width);
    return out;
  }

  Payload symbol(const RingLayout& L, const std::string& name, std::size_t start) {
    switch (L.kind()) {
      case RingKind::GF:
        if (name == "g" && L.size > 1) {
          Payload out = make(L);
          out[1] = 1;
          return out;
        }
        break;
      case RingKind::Quat:
        if (name == "i") return unit_slot(L, 1);
        if (name == "j") return unit_slot(L, 2);
        if (name == "k") return unit_slot(L, 3);
        break;
      case RingKind::Dual:
        if (name == "eps") return unit_slot(L, 1);
        break;
      case RingKind::Mat:
      case RingKind::Tri:
        if (name.size() == 3 && name[0] == 'e' && std::isdigit(static_cast<unsigned char>(name[1])) &&
            std::isdigit(static_cast<unsigned char>(name[2]))) {
          const int i = name[1] - '1', j = name[2] - '1';
          if (i < 0 || j < 0 || i >= L.size || j >= L.size || (L.kind() == RingKind::Tri && j < i)) {
            pos_ = start;
            fail("matrix unit " + name + " out of range");
          }
          return unit_slot(L, L.kind() == RingKind::Mat ? static_cast<std::size_t>(i * L.size + j) : tri_offset(i, j, L.size));
        }
        break;
      default: break;
    }
    if (has_base(L)) return embed(L, symbol(L.base(), name, start));
    pos_ = start;
    fail("unknown symbol '" + name + "' in " + render(L.spec));
  }

  const Ring& ring_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Element parse_element(const Ring& ring, std::string_view text) { return Element{ExprParser(ring, text).parse()}; }

Element eval_expr(const Ring& ring, std::string_view text) { return parse_element(ring, text); }

std::string Ring::render(const Element& a) const { return render_payload(layout_, a.atoms.data()); }

Element Ring::parse(std::string_view text) const { return parse_element(*this, text); }

std::vector<std::string> split_top_level(std::string_view text, char separator) {
  std::vector<std::string> out;
  int depth = 0;
  std::string current;
  for (char c : text) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == separator && depth == 0) {
      out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  out.push_back(current);
  return out;
}

}  // namespace staudt
