#include "staudtlab/jordan.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <functional>

#include <nlohmann/json.hpp>

#include "staudtlab/errors.hpp"
#include "staudtlab/expr.hpp"

namespace staudt {

namespace {

using Index = std::uint32_t;

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorKind::InvalidParameter, what); }

std::string render_map_impl(const AdditiveMap& f) {
  switch (f.form) {
    case MapForm::Identity: return "identity";
    case MapForm::Inner: return "inner(a=" + f.parameter + ")";
    case MapForm::Scale: return "scale(a=" + f.parameter + ")";
    case MapForm::Transpose: return "transpose";
    case MapForm::Flip: return "flip";
    case MapForm::Frobenius: return "frobenius(" + std::to_string(f.power) + ")";
    case MapForm::Conj: return "conj";
    case MapForm::Sum: {
      std::string s = "sum(";
      for (std::size_t i = 0; i < f.children.size(); ++i) {
        if (i) s += ",";
        s += render_map_impl(f.children[i]);
      }
      return s + ")";
    }
    case MapForm::Compose:
      return "compose(" + render_map_impl(f.children[0]) + "," + render_map_impl(f.children[1]) + ")";
    case MapForm::Table: {
      const auto dom = FiniteRing::make(f.domain);
      const auto cod = FiniteRing::make(f.codomain);
      nlohmann::json pairs = nlohmann::json::array();
      for (Index x = 0; x < f.table.size(); ++x) pairs.push_back({dom->render(x), cod->render(f.table[x])});
      return pairs.dump();
    }
  }
  return {};
}

}  // namespace

MapEvaluator::MapEvaluator(const AdditiveMap& f)
    : f_(f), domain_(Ring::make(f.domain)), codomain_(Ring::make(f.codomain)) {
  switch (f.form) {
    case MapForm::Inner:
      a_ = domain_->parse(f.parameter);
      a_inv_ = domain_->inverse(*a_);
      break;
    case MapForm::Scale:
      a_ = domain_->parse(f.parameter);
      break;
    case MapForm::Table:
      finite_domain_ = FiniteRing::make(f.domain);
      finite_codomain_ = FiniteRing::make(f.codomain);
      break;
    case MapForm::Conj:
      base_ = Ring::make(f.domain.base());
      break;
    default: break;
  }
  for (const AdditiveMap& c : f.children) children_.emplace_back(c);
}

Element MapEvaluator::operator()(const Element& x) const {
  const RingLayout& L = domain_->layout();
  switch (f_.form) {
    case MapForm::Identity: return x;
    case MapForm::Inner: return domain_->mul(domain_->mul(*a_inv_, x), *a_);
    case MapForm::Scale: return domain_->mul(*a_, x);
    case MapForm::Table:
      return finite_codomain_->element(f_.table[finite_domain_->index(x)]);
    case MapForm::Frobenius: {
      Element y = x;
      for (int e = 0; e < f_.power; ++e) y = domain_->pow(y, static_cast<long>(L.modulus));
      return y;
    }
    case MapForm::Conj: {
      Element y = x;
      const std::size_t w = L.base().width;
      for (std::size_t slot = 1; slot < 4; ++slot) {
        const auto begin = x.atoms.begin() + static_cast<std::ptrdiff_t>(slot * w);
        const Element n = base_->neg(Element{std::vector<Rational>(begin, begin + static_cast<std::ptrdiff_t>(w))});
        std::copy(n.atoms.begin(), n.atoms.end(), y.atoms.begin() + static_cast<std::ptrdiff_t>(slot * w));
      }
      return y;
    }
    case MapForm::Transpose:
    case MapForm::Flip: {
      const int n = L.size;
      const std::size_t w = L.base().width;
      Element y{std::vector<Rational>(x.atoms.size())};
      const bool tri = L.kind() == RingKind::Tri;
      for (int i = 0; i < n; ++i) {
        for (int j = tri ? i : 0; j < n; ++j) {
          int ti = j, tj = i;
          if (f_.form == MapForm::Flip) {
            ti = n - 1 - j;
            tj = n - 1 - i;
          }
          const std::size_t from = tri ? tri_offset(i, j, n) : static_cast<std::size_t>(i * n + j);
          const std::size_t to = tri ? tri_offset(ti, tj, n) : static_cast<std::size_t>(ti * n + tj);
          std::copy_n(x.atoms.begin() + static_cast<std::ptrdiff_t>(from * w), w,
                      y.atoms.begin() + static_cast<std::ptrdiff_t>(to * w));
        }
      }
      return y;
    }
    case MapForm::Sum: {
      Element y{std::vector<Rational>(codomain_->width())};
      const RingLayout& C = codomain_->layout();
      for (std::size_t p = 0; p < children_.size(); ++p) {
        const auto begin = x.atoms.begin() + static_cast<std::ptrdiff_t>(L.offsets[p]);
        Element part{std::vector<Rational>(begin, begin + static_cast<std::ptrdiff_t>(L.parts[p].width))};
        const Element image = children_[p](part);
        std::copy(image.atoms.begin(), image.atoms.end(),
                  y.atoms.begin() + static_cast<std::ptrdiff_t>(C.offsets[p]));
      }
      return y;
    }
    case MapForm::Compose: return children_[0](children_[1](x));
  }
  return x;
}

AdditiveMap build_named_map(MapForm form, const RingSpec& domain, std::string parameter, int power,
                            std::vector<AdditiveMap> children) {
  AdditiveMap f;
  f.domain = domain;
  f.codomain = domain;
  f.form = form;
  f.power = power;
  switch (form) {
    case MapForm::Identity: break;
    case MapForm::Inner:
    case MapForm::Scale: {
      const Ring ring(domain);
      Element a;
      try {
        a = ring.parse(parameter);
      } catch (const Error& e) {
        invalid("bad map parameter '" + parameter + "': " + e.what());
      }
      if (form == MapForm::Inner && !ring.is_unit(a)) {
        invalid("inner requires a unit, got " + ring.render(a));
      }
      f.parameter = ring.render(a);
      break;
    }
    case MapForm::Transpose:
      if (domain.kind != RingKind::Mat) invalid("transpose needs a matrix ring");
      break;
    case MapForm::Flip:
      if (domain.kind != RingKind::Mat && domain.kind != RingKind::Tri) invalid("flip needs a matrix ring");
      break;
    case MapForm::Frobenius:
      if (domain.kind != RingKind::GF) invalid("frobenius needs a finite field GF(p^k)");
      if (power < 1 || domain.k % power != 0) {
        invalid("frobenius power must be positive and divide " + std::to_string(domain.k));
      }
      break;
    case MapForm::Conj:
      if (domain.kind != RingKind::Quat) invalid("conj needs a quaternion ring");
      break;
    case MapForm::Sum:
      if (domain.kind != RingKind::Sum || children.size() != domain.parts.size()) {
        invalid("sum needs one map per component of a Sum ring");
      }
      f.codomain = RingSpec::sum([&] {
        std::vector<RingSpec> parts;
        for (std::size_t i = 0; i < children.size(); ++i) {
          if (!(children[i].domain == domain.parts[i])) invalid("sum component map has the wrong domain");
          parts.push_back(children[i].codomain);
        }
        return parts;
      }());
      break;
    case MapForm::Compose:
      if (children.size() != 2 || !(children[0].domain == children[1].codomain) ||
          !(children[1].domain == domain)) {
        invalid("compose(f,g) needs g: R -> S and f: S -> T");
      }
      f.codomain = children[0].codomain;
      break;
    case MapForm::Table: invalid("tables are built with table_map");
  }
  f.children = std::move(children);
  return f;
}

AdditiveMap parse_map(std::string_view text, const RingSpec& domain) {
  const std::string s = trim(text);
  std::size_t open = s.find('(');
  const std::string name = trim(s.substr(0, open));
  std::string args;
  if (open != std::string::npos) {
    if (s.back() != ')') throw Error(ErrorKind::Syntax, "expected ')' in map '" + s + "'", s, s.size());
    args = s.substr(open + 1, s.size() - open - 2);
  }
  const auto literal_arg = [&]() {
    std::string a = trim(args);
    if (a.rfind("a=", 0) == 0) a = trim(a.substr(2));
    if (a.empty()) invalid(name + " needs a parameter a=...");
    return a;
  };
  if (name == "identity" || name == "id") return build_named_map(MapForm::Identity, domain);
  if (name == "inner") return build_named_map(MapForm::Inner, domain, literal_arg());
  if (name == "scale") return build_named_map(MapForm::Scale, domain, literal_arg());
  if (name == "transpose") return build_named_map(MapForm::Transpose, domain);
  if (name == "flip") return build_named_map(MapForm::Flip, domain);
  if (name == "conj") return build_named_map(MapForm::Conj, domain);
  if (name == "frobenius") {
    int power = 1;
    if (!trim(args).empty()) {
      try {
        power = std::stoi(trim(args));
      } catch (const std::exception&) {
        invalid("frobenius power must be an integer");
      }
    }
    return build_named_map(MapForm::Frobenius, domain, {}, power);
  }
  if (name == "sum") {
    if (domain.kind != RingKind::Sum) invalid("sum needs a Sum ring");
    const auto parts = split_top_level(args);
    if (parts.size() != domain.parts.size()) invalid("sum needs one map per component");
    std::vector<AdditiveMap> children;
    for (std::size_t i = 0; i < parts.size(); ++i) children.push_back(parse_map(parts[i], domain.parts[i]));
    return build_named_map(MapForm::Sum, domain, {}, 0, std::move(children));
  }
  if (name == "compose") {
    const auto parts = split_top_level(args);
    if (parts.size() != 2) invalid("compose takes two maps");
    AdditiveMap g = parse_map(parts[1], domain);
    AdditiveMap f = parse_map(parts[0], g.codomain);
    return build_named_map(MapForm::Compose, domain, {}, 0, {std::move(f), std::move(g)});
  }
  throw Error(ErrorKind::Syntax, "unknown map '" + name + "'", s, 0);
}

AdditiveMap table_map(const FiniteRing& domain, const FiniteRing& codomain, std::vector<std::uint32_t> images) {
  if (images.size() != domain.size()) invalid("a table needs one image per domain element");
  for (Index y : images) {
    if (y >= codomain.size()) invalid("table image out of range");
  }
  AdditiveMap f;
  f.domain = domain.spec();
  f.codomain = codomain.spec();
  f.form = MapForm::Table;
  f.table = std::move(images);
  return f;
}

std::string render_map(const AdditiveMap& f) { return render_map_impl(f); }

AdditiveMap parse_table_map(std::string_view json_text, const FiniteRing& domain, const FiniteRing& codomain) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Syntax, std::string("bad map table: ") + e.what());
  }
  if (!j.is_array()) throw Error(ErrorKind::Syntax, "a map table is a JSON array of pairs");
  std::vector<Index> images(domain.size(), 0);
  std::vector<bool> seen(domain.size(), false);
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string() || !pair[1].is_string()) {
      throw Error(ErrorKind::Syntax, "each table entry is a pair of element literals");
    }
    const Index x = domain.parse(pair[0].get<std::string>());
    if (seen[x]) invalid("element " + domain.render(x) + " appears twice in the table");
    seen[x] = true;
    images[x] = codomain.parse(pair[1].get<std::string>());
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) invalid("the table does not cover the domain");
  return table_map(domain, codomain, std::move(images));
}

Element apply(const AdditiveMap& f, const Ring& domain, const Ring& codomain, const Element& x) {
  (void)domain;
  (void)codomain;
  return MapEvaluator(f)(x);
}

std::vector<std::uint32_t> tabulate(const AdditiveMap& f, const FiniteRing& domain, const FiniteRing& codomain) {
  if (f.form == MapForm::Table) return f.table;
  const MapEvaluator eval(f);
  std::vector<Index> out(domain.size());
  for (Index x = 0; x < domain.size(); ++x) out[x] = codomain.index(eval(domain.element(x)));
  return out;
}

std::string_view to_string(VerdictMode mode) { return mode == VerdictMode::Exhaustive ? "exhaustive" : "sampled"; }

std::string_view to_string(AxiomSet axioms) {
  switch (axioms) {
    case AxiomSet::Ancochea: return "ancochea";
    case AxiomSet::Jordan: return "jordan";
    case AxiomSet::JordanUnital: return "jordan-unital";
  }
  return "?";
}

AxiomSet parse_axiom_set(std::string_view text) {
  if (text == "ancochea") return AxiomSet::Ancochea;
  if (text == "jordan") return AxiomSet::Jordan;
  if (text == "jordan-unital") return AxiomSet::JordanUnital;
  throw Error(ErrorKind::InvalidParameter, "unknown axiom set '" + std::string(text) + "'");
}

std::string_view to_string(MapClass c) {
  switch (c) {
    case MapClass::Homomorphism: return "hom";
    case MapClass::AntiHomomorphism: return "anti";
    case MapClass::Both: return "both";
    case MapClass::Neither: return "neither";
  }
  return "?";
}

FiniteMap FiniteMap::from(const AdditiveMap& f) {
  FiniteMap m;
  m.domain = FiniteRing::make(f.domain);
  m.codomain = f.codomain == f.domain ? m.domain : FiniteRing::make(f.codomain);
  m.images = tabulate(f, *m.domain, *m.codomain);
  return m;
}

namespace {

// Additive generators of a finite ring: index g_i has atom i equal to 1.
struct Generators {
  std::vector<Index> index;
  std::vector<std::int64_t> order;
};

Generators generators(const FiniteRing& r) {
  Generators g;
  std::uint64_t stride = 1;
  for (std::int64_t m : r.ring().layout().radices) {
    g.index.push_back(static_cast<Index>(stride));
    g.order.push_back(m);
    stride *= static_cast<std::uint64_t>(m);
  }
  return g;
}

std::string pair_witness(const FiniteRing& r, const char* what, Index x, Index y) {
  return std::string(what) + ": x=" + r.render(x) + ", y=" + r.render(y);
}

std::string single_witness(const FiniteRing& r, const char* what, Index x) {
  return std::string(what) + ": x=" + r.render(x);
}

// Runs body over all pairs (small domains) or over xs x generators.
template <class Body>
bool for_pairs(const FiniteRing& r, bool full, const std::vector<Index>& ys, std::uint64_t& trials, Body body) {
  if (full) {
    for (Index x = 0; x < r.size(); ++x) {
      for (Index y = 0; y < r.size(); ++y) {
        ++trials;
        if (!body(x, y)) return false;
      }
    }
    return true;
  }
  for (Index x = 0; x < r.size(); ++x) {
    for (Index y : ys) {
      ++trials;
      if (!body(x, y)) return false;
    }
  }
  return true;
}

}  // namespace

Verdict check_additive(const FiniteMap& f) {
  const FiniteRing& D = *f.domain;
  const FiniteRing& C = *f.codomain;
  Verdict v;
  if (f.images[D.zero()] != C.zero()) {
    v.ok = false;
    v.witness = single_witness(D, "f(0) != 0", D.zero());
    return v;
  }
  if (D.size() <= kPairScanLimit) {
    for_pairs(D, true, {}, v.trials, [&](Index x, Index y) {
      if (f(D.add(x, y)) == C.add(f(x), f(y))) return true;
      v.ok = false;
      v.witness = pair_witness(D, "additivity", x, y);
      return false;
    });
    return v;
  }
  // f is additive iff it agrees with the extension of its values on the
  // generators and each generator image has compatible order.
  const Generators g = generators(D);
  std::vector<Index> expected(D.size());
  expected[0] = C.zero();
  for (Index x = 1; x < D.size(); ++x) {
    std::size_t i = 0;
    while ((x / g.index[i]) % static_cast<Index>(g.order[i]) == 0) ++i;
    expected[x] = C.add(expected[x - g.index[i]], f(g.index[i]));
    ++v.trials;
    if (expected[x] != f(x)) {
      v.ok = false;
      v.witness = pair_witness(D, "additivity", x - g.index[i], g.index[i]);
      return v;
    }
  }
  for (std::size_t i = 0; i < g.index.size(); ++i) {
    Index acc = C.zero();
    for (std::int64_t k = 0; k < g.order[i]; ++k) acc = C.add(acc, f(g.index[i]));
    if (acc != C.zero()) {
      v.ok = false;
      v.witness = single_witness(D, "additive order", g.index[i]);
      return v;
    }
  }
  return v;
}

Verdict check_axioms(const FiniteMap& f, AxiomSet axioms) {
  Verdict v = check_additive(f);
  if (!v.ok) return v;
  const FiniteRing& D = *f.domain;
  const FiniteRing& C = *f.codomain;
  const bool full = D.size() <= kPairScanLimit;
  const std::vector<Index> gens = generators(D).index;
  const auto fail = [&](std::string w) {
    v.ok = false;
    v.witness = std::move(w);
    return false;
  };
  if (axioms == AxiomSet::Ancochea) {
    // Biadditive, so generator pairs decide it for large domains.
    if (full) {
      for_pairs(D, true, {}, v.trials, [&](Index x, Index y) {
        const Index lhs = f(D.add(D.mul(x, y), D.mul(y, x)));
        const Index rhs = C.add(C.mul(f(x), f(y)), C.mul(f(y), f(x)));
        return lhs == rhs || fail(pair_witness(D, "(xy)f+(yx)f != xf yf + yf xf", x, y));
      });
    } else {
      for (Index x : gens) {
        for (Index y : gens) {
          ++v.trials;
          const Index lhs = f(D.add(D.mul(x, y), D.mul(y, x)));
          const Index rhs = C.add(C.mul(f(x), f(y)), C.mul(f(y), f(x)));
          if (lhs != rhs) {
            fail(pair_witness(D, "(xy)f+(yx)f != xf yf + yf xf", x, y));
            return v;
          }
        }
      }
    }
    return v;
  }
  if (axioms == AxiomSet::Jordan) {
    for (Index x = 0; x < D.size(); ++x) {
      ++v.trials;
      if (f(D.mul(x, x)) != C.mul(f(x), f(x))) {
        fail(single_witness(D, "(x^2)f != (xf)^2", x));
        return v;
      }
    }
  } else if (f(D.one()) != C.one()) {
    fail(single_witness(D, "1f != 1", D.one()));
    return v;
  }
  for_pairs(D, full, gens, v.trials, [&](Index x, Index y) {
    const Index lhs = f(D.mul(D.mul(x, y), x));
    const Index rhs = C.mul(C.mul(f(x), f(y)), f(x));
    return lhs == rhs || fail(pair_witness(D, "(xyx)f != xf yf xf", x, y));
  });
  return v;
}

MapClass classify(const FiniteMap& f) {
  const FiniteRing& D = *f.domain;
  const FiniteRing& C = *f.codomain;
  const bool full = D.size() <= kPairScanLimit || !check_additive(f).ok;
  const std::vector<Index> gens = generators(D).index;
  bool hom = true, anti = true;
  const auto test = [&](Index x, Index y) {
    const Index fxy = f(D.mul(x, y));
    if (hom && fxy != C.mul(f(x), f(y))) hom = false;
    if (anti && fxy != C.mul(f(y), f(x))) anti = false;
    return hom || anti;
  };
  if (full) {
    std::uint64_t trials = 0;
    for_pairs(D, true, {}, trials, test);
  } else {
    for (Index x : gens) {
      for (Index y : gens) {
        if (!test(x, y)) break;
      }
    }
  }
  if (hom && anti) return MapClass::Both;
  if (hom) return MapClass::Homomorphism;
  if (anti) return MapClass::AntiHomomorphism;
  return MapClass::Neither;
}

namespace {

// Sampled checks over an infinite domain: all pairs of payload basis
// vectors, then random pairs.
struct Sampler {
  RingPtr domain;
  RingPtr codomain;
  MapEvaluator eval;
  std::vector<Element> basis;
  std::mt19937_64 rng;
  std::uint64_t trials;

  Sampler(const AdditiveMap& f, const SampleOptions& opts)
      : domain(Ring::make(f.domain)), codomain(Ring::make(f.codomain)), eval(f), rng(opts.seed), trials(opts.trials) {
    for (std::size_t i = 0; i < domain->width(); ++i) {
      Element e{std::vector<Rational>(domain->width())};
      e.atoms[i] = 1;
      basis.push_back(e);
    }
  }

  template <class Body>
  Verdict run(Body body) {
    Verdict v;
    v.mode = VerdictMode::Sampled;
    const auto attempt = [&](const Element& x, const Element& y) {
      ++v.trials;
      if (auto w = body(x, y)) {
        v.ok = false;
        v.witness = *w + ": x=" + domain->render(x) + ", y=" + domain->render(y);
        return false;
      }
      return true;
    };
    for (const Element& x : basis) {
      for (const Element& y : basis) {
        if (!attempt(x, y)) return v;
      }
    }
    for (std::uint64_t t = 0; t < trials; ++t) {
      const Element x = domain->random(rng);
      const Element y = domain->random(rng);
      if (!attempt(x, y)) return v;
    }
    return v;
  }
};

}  // namespace

Verdict check_axioms(const AdditiveMap& f, AxiomSet axioms, const SampleOptions& opts) {
  if (is_finite(f.domain) && is_finite(f.codomain)) return check_axioms(FiniteMap::from(f), axioms);
  Sampler s(f, opts);
  const Ring& D = *s.domain;
  const Ring& C = *s.codomain;
  const Element one_image = s.eval(D.one());
  return s.run([&](const Element& x, const Element& y) -> std::optional<std::string> {
    const Element fx = s.eval(x), fy = s.eval(y);
    if (s.eval(D.add(x, y)) != C.add(fx, fy)) return "additivity";
    switch (axioms) {
      case AxiomSet::Ancochea:
        if (s.eval(D.add(D.mul(x, y), D.mul(y, x))) != C.add(C.mul(fx, fy), C.mul(fy, fx))) {
          return "(xy)f+(yx)f != xf yf + yf xf";
        }
        return std::nullopt;
      case AxiomSet::Jordan:
        if (s.eval(D.mul(x, x)) != C.mul(fx, fx)) return "(x^2)f != (xf)^2";
        break;
      case AxiomSet::JordanUnital:
        if (one_image != C.one()) return "1f != 1";
        break;
    }
    if (s.eval(D.mul(D.mul(x, y), x)) != C.mul(C.mul(fx, fy), fx)) return "(xyx)f != xf yf xf";
    return std::nullopt;
  });
}

Verdict is_semi_homomorphism(const AdditiveMap& f, const SampleOptions& opts) {
  return check_axioms(f, AxiomSet::Ancochea, opts);
}

Verdict is_jordan_homomorphism(const AdditiveMap& f, bool unital, const SampleOptions& opts) {
  return check_axioms(f, unital ? AxiomSet::JordanUnital : AxiomSet::Jordan, opts);
}

MapClass classify_map(const AdditiveMap& f, const SampleOptions& opts, bool* sampled) {
  if (is_finite(f.domain) && is_finite(f.codomain)) {
    if (sampled) *sampled = false;
    return classify(FiniteMap::from(f));
  }
  if (sampled) *sampled = true;
  Sampler s(f, opts);
  const Ring& D = *s.domain;
  const Ring& C = *s.codomain;
  bool hom = true, anti = true;
  s.run([&](const Element& x, const Element& y) -> std::optional<std::string> {
    const Element fxy = s.eval(D.mul(x, y));
    const Element fx = s.eval(x), fy = s.eval(y);
    if (hom && fxy != C.mul(fx, fy)) hom = false;
    if (anti && fxy != C.mul(fy, fx)) anti = false;
    if (!hom && !anti) return std::string("neither");
    return std::nullopt;
  });
  if (hom && anti) return MapClass::Both;
  if (hom) return MapClass::Homomorphism;
  if (anti) return MapClass::AntiHomomorphism;
  return MapClass::Neither;
}

Verdict kaplansky_identity_check(const FiniteRing& r) {
  Verdict v;
  const Index two = r.from_int(2), three = r.from_int(3), four = r.from_int(4);
  const auto cube = [&](Index a) { return r.mul(r.mul(a, a), a); };
  for (Index x = 0; x < r.size(); ++x) {
    const Index x2 = r.mul(x, x), x3 = r.mul(x2, x);
    for (Index y = 0; y < r.size(); ++y) {
      ++v.trials;
      const Index lhs = r.mul(two, r.mul(r.mul(x, y), x));
      Index rhs = r.mul(four, cube(r.add(x, y)));
      rhs = r.sub(rhs, cube(r.add(x, r.mul(two, y))));
      rhs = r.sub(rhs, r.mul(three, x3));
      rhs = r.add(rhs, r.mul(four, cube(y)));
      rhs = r.sub(rhs, r.mul(two, r.add(r.mul(x2, y), r.mul(y, x2))));
      if (lhs != rhs) {
        v.ok = false;
        v.witness = pair_witness(r, "identity fails", x, y);
        return v;
      }
    }
  }
  return v;
}

KaplanskyReport kaplansky_equivalence_report(const std::vector<AdditiveMap>& family) {
  KaplanskyReport report;
  if (family.empty()) invalid("the map family is empty");
  report.domain = family.front().domain;
  report.codomain = family.front().codomain;
  const auto codomain = FiniteRing::make(report.codomain);
  report.codomain_two_torsion_free = true;
  for (Index x = 1; x < codomain->size(); ++x) {
    if (codomain->add(x, x) == codomain->zero()) {
      report.codomain_two_torsion_free = false;
      break;
    }
  }
  report.identity = kaplansky_identity_check(*codomain);
  for (const AdditiveMap& f : family) {
    if (!(f.domain == report.domain) || !(f.codomain == report.codomain)) {
      invalid("all maps in the family must share domain and codomain");
    }
    const FiniteMap m = FiniteMap::from(f);
    ++report.family_size;
    if (!check_axioms(m, AxiomSet::Ancochea).ok) continue;
    ++report.semi_count;
    if (check_axioms(m, AxiomSet::Jordan).ok) {
      ++report.semi_and_jordan;
    } else if (!report.counterexample) {
      report.counterexample = render_map(f);
    }
  }
  report.consistent = !report.codomain_two_torsion_free || report.semi_and_jordan == report.semi_count;
  return report;
}

double default_budget() {
  if (const char* env = std::getenv("STAUDTLAB_BUDGET")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidParameter, "STAUDTLAB_BUDGET is not a number");
    }
  }
  return 1e8;
}

double general_linear_order(int d, std::int64_t p) {
  const double q = std::pow(static_cast<double>(p), d);
  double order = 1;
  for (int i = 0; i < d; ++i) order *= q - std::pow(static_cast<double>(p), i);
  return order;
}

EnumerationResult enumerate_jordan_automorphisms(const FiniteRing& ring, const EnumerationOptions& opts) {
  const auto& radices = ring.ring().layout().radices;
  const std::int64_t p = radices.empty() ? 0 : radices.front();
  if (p == 0 || !is_prime(p) ||
      std::any_of(radices.begin(), radices.end(), [&](std::int64_t m) { return m != p; })) {
    throw Error(ErrorKind::InvalidParameter,
                "enumeration needs a ring of prime characteristic; " + render(ring.spec()) + " is not");
  }
  const int d = static_cast<int>(radices.size());
  EnumerationResult result;
  result.spec = ring.spec();
  result.axioms = opts.axioms;
  result.candidates = general_linear_order(d, p);
  if (result.candidates > opts.budget) {
    throw Error(ErrorKind::BudgetExceeded,
                "|GL(" + std::to_string(d) + "," + std::to_string(p) + ")| = " +
                    std::to_string(static_cast<long double>(result.candidates)) + " exceeds the budget",
                std::to_string(static_cast<long double>(result.candidates)));
  }
  const auto shared = std::make_shared<const FiniteRing>(ring.spec());
  const Index n = ring.size();
  std::vector<Index> stride(static_cast<std::size_t>(d) + 1, 1);
  for (int i = 0; i < d; ++i) stride[i + 1] = stride[i] * static_cast<Index>(p);
  const bool jordan_like = opts.axioms != AxiomSet::Ancochea;

  std::vector<Index> table(n, 0);      // f on [0, stride[level])
  std::vector<int> in_span(n, -1);     // level at which y entered the image span
  in_span[ring.zero()] = 0;
  const Index one = ring.one();

  // Checks the constraints that became decidable once f is known on
  // [0, stride[level + 1]): every identity all of whose arguments lie there.
  const auto consistent = [&](int level) {
    const Index limit = stride[level + 1];
    for (Index x = stride[level]; x < limit; ++x) {
      if (jordan_like) {
        const Index sq = ring.mul(x, x);
        if (sq < limit && table[sq] != ring.mul(table[x], table[x])) return false;
      }
      if (opts.axioms == AxiomSet::JordanUnital && x == one && table[x] != one) return false;
      for (int b = 0; b <= level; ++b) {
        const Index y = stride[b];
        const Index s = ring.add(ring.mul(x, y), ring.mul(y, x));
        if (s < limit && table[s] != ring.add(ring.mul(table[x], table[y]), ring.mul(table[y], table[x]))) {
          return false;
        }
      }
    }
    return true;
  };

  std::function<void(int)> search = [&](int level) {
    if (level == d) {
      FiniteMap m{shared, shared, table};
      if (check_axioms(m, opts.axioms).ok) {
        result.classes.push_back(classify(m));
        result.found.push_back(std::move(m));
      }
      return;
    }
    for (Index v = 1; v < n; ++v) {
      if (in_span[v] >= 0) continue;
      ++result.nodes;
      // Extend f linearly: f(x + c*e_level) = f(x) + c*v.
      Index multiple = ring.zero();
      std::vector<Index> added;
      for (std::int64_t c = 1; c < p; ++c) {
        multiple = ring.add(multiple, v);
        for (Index x = 0; x < stride[level]; ++x) {
          const Index y = ring.add(table[x], multiple);
          table[x + static_cast<Index>(c) * stride[level]] = y;
          in_span[y] = level + 1;
          added.push_back(y);
        }
      }
      if (consistent(level)) search(level + 1);
      for (Index y : added) in_span[y] = -1;
    }
  };
  search(0);
  return result;
}

Pairing kaplansky_pairing(const FiniteMap& f) {
  const FiniteRing& R = *f.domain;
  const RingSpec& spec = R.spec();
  if (spec.kind != RingKind::Sum) invalid("the pairing needs a Sum ring");
  const RingLayout& L = R.ring().layout();
  const std::size_t m = L.parts.size();
  Pairing out;
  out.ok = true;
  out.image_parts.resize(m);
  out.restrictions.assign(m, MapClass::Neither);

  // Elements of part j embedded in the sum.
  const auto part_element = [&](std::size_t j, const Element& e) {
    Element full{std::vector<Rational>(L.width, Rational(0))};
    std::copy(e.atoms.begin(), e.atoms.end(), full.atoms.begin() + static_cast<std::ptrdiff_t>(L.offsets[j]));
    return R.index(full);
  };
  std::vector<FiniteRingPtr> parts;
  std::vector<Index> idempotent(m);
  for (std::size_t j = 0; j < m; ++j) {
    parts.push_back(FiniteRing::make(L.parts[j].spec));
    idempotent[j] = part_element(j, parts[j]->element(parts[j]->one()));
  }
  std::vector<int> hits(m, 0);
  for (std::size_t j = 0; j < m; ++j) {
    const Element image = R.element(f(idempotent[j]));
    for (std::size_t k = 0; k < m; ++k) {
      Element part{std::vector<Rational>(image.atoms.begin() + static_cast<std::ptrdiff_t>(L.offsets[k]),
                                         image.atoms.begin() + static_cast<std::ptrdiff_t>(L.offsets[k] + L.parts[k].width))};
      const Index pi = parts[k]->index(part);
      if (pi == parts[k]->one()) {
        out.image_parts[j].push_back(static_cast<int>(k));
        ++hits[k];
      } else if (pi != parts[k]->zero()) {
        out.ok = false;
      }
    }
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (out.image_parts[j].size() != 1 || hits[j] != 1) out.ok = false;
  }
  if (!out.ok) return out;
  for (std::size_t j = 0; j < m; ++j) {
    const FiniteRing& P = *parts[j];
    std::vector<Index> embedded(P.size());
    for (Index x = 0; x < P.size(); ++x) embedded[x] = part_element(j, P.element(x));
    bool hom = true, anti = true;
    for (Index x = 0; x < P.size() && (hom || anti); ++x) {
      for (Index y = 0; y < P.size() && (hom || anti); ++y) {
        const Index ex = embedded[x], ey = embedded[y];
        const Index fxy = f(R.mul(ex, ey));
        if (fxy != R.mul(f(ex), f(ey))) hom = false;
        if (fxy != R.mul(f(ey), f(ex))) anti = false;
      }
    }
    out.restrictions[j] = hom && anti ? MapClass::Both
                          : hom       ? MapClass::Homomorphism
                          : anti      ? MapClass::AntiHomomorphism
                                      : MapClass::Neither;
    if (out.restrictions[j] == MapClass::Neither) out.ok = false;
  }
  return out;
}

LemmaResult ancochea_lemma_check(const FiniteRing& r) {
  LemmaResult out;
  std::vector<bool> is_commutator(r.size(), false);
  for (Index a = 0; a < r.size(); ++a) {
    for (Index b = a + 1; b < r.size(); ++b) is_commutator[r.sub(r.mul(a, b), r.mul(b, a))] = true;
  }
  std::vector<Index> commutators;
  for (Index c = 0; c < r.size(); ++c) {
    if (is_commutator[c]) commutators.push_back(c);
  }
  for (Index c = 0; c < r.size(); ++c) {
    const bool commutes = std::all_of(commutators.begin(), commutators.end(),
                                      [&](Index k) { return r.mul(c, k) == r.mul(k, c); });
    if (commutes) out.centralizer.push_back(c);
  }
  const std::vector<Index> centre = r.centre();
  out.ok = out.centralizer == centre;
  if (!out.ok) {
    for (Index c : out.centralizer) {
      if (!std::binary_search(centre.begin(), centre.end(), c)) {
        out.witness = c;
        break;
      }
    }
  }
  return out;
}

bool centre_invariance_check(const FiniteMap& f) {
  const Verdict semi = check_axioms(f, AxiomSet::Ancochea);
  if (!semi.ok) {
    throw Error(ErrorKind::PreconditionFailed, "the map is not a semi-homomorphism", semi.witness);
  }
  std::vector<Index> image;
  for (Index c : f.domain->centre()) image.push_back(f(c));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return image == f.codomain->centre();
}

Element special_jordan_product(const Ring& ring, const Element& a, const Element& b) {
  if (!ring.two_is_unit()) throw Error(ErrorKind::TwoNotUnit, "2 is not a unit in " + render(ring.spec()));
  return ring.mul(ring.inverse(ring.from_int(2)), ring.add(ring.mul(a, b), ring.mul(b, a)));
}

std::uint32_t special_jordan_product(const FiniteRing& ring, std::uint32_t a, std::uint32_t b) {
  if (!ring.two_is_unit()) throw Error(ErrorKind::TwoNotUnit, "2 is not a unit in " + render(ring.spec()));
  return ring.mul(ring.inverse(ring.from_int(2)), ring.add(ring.mul(a, b), ring.mul(b, a)));
}

}  // namespace staudt
