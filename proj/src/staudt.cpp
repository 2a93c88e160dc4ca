#include "staudtlab/staudt.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_set>

#include "staudtlab/errors.hpp"

namespace staudt {

namespace {

using Index = std::uint32_t;
constexpr Index kUndef = FiniteLineMap::kUndefined;

std::string quadruple(const FiniteLine& line, std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  const auto& pts = line.points();
  return "(" + line.render(pts[a]) + ", " + line.render(pts[b]) + ", " + line.render(pts[c]) + ", " +
         line.render(pts[d]) + ")";
}

FiniteLinePtr make_line(const RingSpec& spec) {
  return std::make_shared<const FiniteLine>(FiniteRing::make(spec));
}

}  // namespace

HarmonicTable::HarmonicTable(FiniteLinePtr line) : line_(std::move(line)) {
  const auto& pts = line_->points();
  n_ = pts.size();
  distant_.assign(n_ * n_, false);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      const bool d = line_->distant(pts[i], pts[j]);
      distant_[i * n_ + j] = d;
      distant_[j * n_ + i] = d;
    }
  }
  fourth_.assign(n_ * n_ * n_, kNone);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (!distant(i, j)) continue;
      for (std::size_t k = 0; k < n_; ++k) {
        if (!distant(i, k) || !distant(j, k)) continue;
        fourth_[(i * n_ + j) * n_ + k] =
            static_cast<std::uint32_t>(line_->id(line_->fourth_harmonic_point(pts[i], pts[j], pts[k])));
      }
    }
  }
}

std::size_t FiniteLineMap::defined_count() const {
  return static_cast<std::size_t>(std::count_if(image.begin(), image.end(), [](Index x) { return x != kUndefined; }));
}

FiniteLineMap identity_line_map(const FiniteLinePtr& line) {
  FiniteLineMap m{line, line, {}};
  m.image.resize(line->points().size());
  for (std::size_t i = 0; i < m.image.size(); ++i) m.image[i] = static_cast<Index>(i);
  return m;
}

FiniteLineMap scalar_line_map(const FiniteLinePtr& line, const AdditiveMap& f) {
  const FiniteRing& r = line->ring();
  if (!r.is_division_ring()) {
    throw Error(ErrorKind::PreconditionFailed, "scalar line maps need a division ring");
  }
  const std::vector<Index> table = tabulate(f, r, r);
  FiniteLineMap m{line, line, std::vector<Index>(line->points().size(), kUndef)};
  const auto& pts = line->points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto x = line->try_affine(pts[i]);
    m.image[i] = static_cast<Index>(x ? line->id(line->embed(table[*x])) : line->id(line->infinity()));
  }
  return m;
}

ProjPoint<Element> InducedLineMap::operator()(const ProjPoint<Element>& p) const {
  const auto x = line->try_affine(p);
  if (!x) return line->infinity();
  return line->embed(MapEvaluator(f)(*x));
}

InducedLineMap induced_line_map(const RationalLinePtr& line, const AdditiveMap& f) {
  if (!line->ring().is_division_ring()) {
    throw Error(ErrorKind::PreconditionFailed, "induced line maps need a division ring");
  }
  return InducedLineMap{line, f};
}

namespace {

Verdict preserver_check(const FiniteLineMap& m, const HarmonicTable& dom, const HarmonicTable& cod) {
  Verdict v;
  const std::size_t n = dom.points();
  for (std::size_t i = 0; i < n; ++i) {
    if (!m.defined(i)) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (!m.defined(j)) continue;
      for (std::size_t k = 0; k < n; ++k) {
        const Index h = dom.fourth(i, j, k);
        if (h == HarmonicTable::kNone || !m.defined(k) || !m.defined(h)) continue;
        ++v.trials;
        const Index target = cod.fourth(m.image[i], m.image[j], m.image[k]);
        if (target != m.image[h]) {
          v.ok = false;
          v.witness = quadruple(dom.line(), i, j, k, h);
          return v;
        }
      }
    }
  }
  return v;
}

}  // namespace

Verdict is_harmonicity_preserver(const FiniteLineMap& m, const HarmonicTable& table) {
  return preserver_check(m, table, table);
}

Verdict is_harmonicity_preserver(const FiniteLineMap& m) {
  const HarmonicTable dom(m.domain);
  if (m.codomain == m.domain || m.codomain->ring().spec() == m.domain->ring().spec()) {
    return preserver_check(m, dom, dom);
  }
  return preserver_check(m, dom, HarmonicTable(m.codomain));
}

Verdict is_harmonicity_preserver(const InducedLineMap& m, const SampleOptions& opts) {
  const RationalLine& line = *m.line;
  const Ring& r = line.ring();
  const MapEvaluator eval(m.f);
  const auto image = [&](const ProjPoint<Element>& p) {
    const auto x = line.try_affine(p);
    return x ? line.embed(eval(*x)) : line.infinity();
  };
  const bool unique_fourth = r.is_division_ring() && r.two_is_unit();
  std::mt19937_64 rng(opts.seed);
  Verdict v;
  v.mode = VerdictMode::Sampled;
  while (v.trials < opts.trials) {
    std::vector<ProjPoint<Element>> frame;
    for (int i = 0; i < 3; ++i) frame.push_back(line.embed(r.random(rng)));
    if (rng() % 8 == 0) frame[rng() % 3] = line.infinity();
    if (frame[0] == frame[1] || frame[0] == frame[2] || frame[1] == frame[2]) continue;
    const ProjPoint<Element> p4 = line.fourth_harmonic_point(frame[0], frame[1], frame[2]);
    ++v.trials;
    const ProjPoint<Element> q1 = image(frame[0]), q2 = image(frame[1]), q3 = image(frame[2]);
    // Over a division ring with 2 a unit the harmonic fourth point is unique.
    const bool ok = unique_fourth ? !(q1 == q2 || q1 == q3 || q2 == q3) && line.fourth_harmonic_point(q1, q2, q3) == image(p4)
                                  : line.harmonic_relation(q1, q2, q3, image(p4));
    if (!ok) {
      v.ok = false;
      v.witness = "(" + line.render(frame[0]) + ", " + line.render(frame[1]) + ", " + line.render(frame[2]) + ", " +
                  line.render(p4) + ")";
      return v;
    }
  }
  return v;
}

AdditiveMap induced_scalar_map(const FiniteLineMap& m) {
  const FiniteLine& line = *m.domain;
  const FiniteRing& r = line.ring();
  if (!(m.codomain->ring().spec() == r.spec()) || !r.is_division_ring()) {
    throw Error(ErrorKind::PreconditionFailed, "the induced scalar map needs a self-map of a division-ring line");
  }
  if (r.characteristic() == 2) {
    throw Error(ErrorKind::CharacteristicTwo, "harmonicity carries no scalar information in characteristic 2");
  }
  for (const auto& p : {line.infinity(), line.zero_point(), line.one_point()}) {
    const std::size_t i = line.id(p);
    if (m.image[i] != i) throw Error(ErrorKind::FrameNotFixed, line.render(p) + " is not fixed", line.render(p));
  }
  const Verdict pres = is_harmonicity_preserver(m);
  if (!pres.ok) throw Error(ErrorKind::PreconditionFailed, "the map does not preserve harmonicity", pres.witness);
  std::vector<Index> table(r.size());
  const auto& pts = line.points();
  for (Index x = 0; x < r.size(); ++x) {
    table[x] = line.affine_coordinate(pts[m.image[line.id(line.embed(x))]]);
  }
  const auto shared = FiniteRing::make(r.spec());
  FiniteMap fm{shared, shared, table};
  const Verdict semi = check_axioms(fm, AxiomSet::Ancochea);
  if (!semi.ok) {
    throw Error(ErrorKind::PreconditionFailed, "the induced scalar map is not a semi-automorphism", semi.witness);
  }
  // Report a closed form when one matches.
  std::vector<AdditiveMap> named{build_named_map(MapForm::Identity, r.spec())};
  if (r.spec().kind == RingKind::GF) {
    for (int e = 1; e < r.spec().k; ++e) {
      if (r.spec().k % e == 0) named.push_back(build_named_map(MapForm::Frobenius, r.spec(), {}, e));
    }
  }
  for (const AdditiveMap& f : named) {
    if (tabulate(f, r, r) == table) return f;
  }
  return table_map(r, r, std::move(table));
}

AdditiveMap induced_scalar_map(const InducedLineMap& m) {
  const RationalLine& line = *m.line;
  const Ring& r = line.ring();
  if (r.characteristic() == 2) {
    throw Error(ErrorKind::CharacteristicTwo, "harmonicity carries no scalar information in characteristic 2");
  }
  for (const auto& p : {line.infinity(), line.zero_point(), line.one_point()}) {
    if (!(m(p) == p)) throw Error(ErrorKind::FrameNotFixed, line.render(p) + " is not fixed", line.render(p));
  }
  return m.f;
}

PreserverEnumeration enumerate_preservers_fixing_frame(const FiniteLinePtr& line, double budget) {
  const RingSpec& spec = line->ring().spec();
  if (spec.kind != RingKind::GF) throw Error(ErrorKind::InvalidParameter, "preserver enumeration needs GF(q)");
  const std::int64_t q = line->ring().size();
  if (q % 2 == 0 || q > 13) throw Error(ErrorKind::InvalidParameter, "preserver enumeration needs q odd and q <= 13");
  const HarmonicTable table(line);
  const std::size_t n = table.points();
  PreserverEnumeration out;

  struct State {
    std::vector<Index> image;
    std::vector<bool> used;
  };

  // Assigns p -> target and propagates forced fourth-harmonic images.
  const auto assign = [&](State& s, Index p, Index target) {
    std::deque<std::pair<Index, Index>> queue{{p, target}};
    while (!queue.empty()) {
      const auto [x, y] = queue.front();
      queue.pop_front();
      if (y == HarmonicTable::kNone) return false;
      if (s.image[x] != kUndef) {
        if (s.image[x] != y) return false;
        continue;
      }
      if (s.used[y]) return false;
      s.image[x] = y;
      s.used[y] = true;
      std::vector<Index> assigned;
      for (Index i = 0; i < n; ++i) {
        if (s.image[i] != kUndef) assigned.push_back(i);
      }
      for (Index a : assigned) {
        for (Index b : assigned) {
          if (a == b || (a != x && b != x)) continue;
          for (Index c : assigned) {
            if (c == a || c == b) continue;
            const Index h = table.fourth(a, b, c);
            if (h == HarmonicTable::kNone) continue;
            queue.emplace_back(h, table.fourth(s.image[a], s.image[b], s.image[c]));
          }
        }
        for (Index c : assigned) {
          if (c == x || c == a) continue;
          const Index h = table.fourth(a, c, x);
          if (h != HarmonicTable::kNone) queue.emplace_back(h, table.fourth(s.image[a], s.image[c], s.image[x]));
        }
      }
    }
    return true;
  };

  State start{std::vector<Index>(n, kUndef), std::vector<bool>(n, false)};
  for (const auto& p : {line->infinity(), line->zero_point(), line->one_point()}) {
    const Index i = static_cast<Index>(line->id(p));
    if (!assign(start, i, i)) return out;
  }
  std::function<void(const State&)> search = [&](const State& s) {
    if (static_cast<double>(++out.nodes) > budget) {
      throw Error(ErrorKind::BudgetExceeded, "preserver search exceeded the budget", std::to_string(out.nodes));
    }
    const auto free = std::find(s.image.begin(), s.image.end(), kUndef);
    if (free == s.image.end()) {
      out.maps.push_back(FiniteLineMap{line, line, s.image});
      return;
    }
    const Index p = static_cast<Index>(free - s.image.begin());
    for (Index y = 0; y < n; ++y) {
      if (s.used[y]) continue;
      State next = s;
      if (assign(next, p, y)) search(next);
    }
  };
  search(start);
  std::sort(out.maps.begin(), out.maps.end(),
            [](const FiniteLineMap& a, const FiniteLineMap& b) { return a.image < b.image; });
  return out;
}

NaiveExtension naive_extension(const AdditiveMap& f) {
  const FiniteLinePtr dom = make_line(f.domain);
  const FiniteLinePtr cod = f.codomain == f.domain ? dom : make_line(f.codomain);
  const FiniteRing& R = dom->ring();
  const FiniteRing& S = cod->ring();
  const std::vector<Index> t = tabulate(f, R, S);
  const auto& pts = dom->points();
  NaiveExtension out;
  FiniteLineMap m{dom, cod, std::vector<Index>(pts.size(), kUndef)};
  const auto image_text = [&](Index a, Index b) {
    return S.is_unit(a) || S.is_unit(b) || cod->is_admissible(a, b) ? cod->render(cod->point(a, b))
                                                                      : "(" + S.render(a) + ", " + S.render(b) + ") not admissible";
  };
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Index a = pts[i].a, b = pts[i].b;
    const bool base_ok = cod->is_admissible(t[a], t[b]);
    const auto base = base_ok ? std::optional(cod->point(t[a], t[b])) : std::nullopt;
    for (Index u : R.units()) {
      const Index ua = R.mul(u, a), ub = R.mul(u, b);
      const bool ok = base_ok && cod->is_admissible(t[ua], t[ub]) && cod->point(t[ua], t[ub]) == *base;
      if (!ok) {
        out.witness = NaiveWitness{"(" + R.render(a) + ", " + R.render(b) + ")", R.render(u), image_text(t[a], t[b]),
                                   image_text(t[ua], t[ub])};
        return out;
      }
    }
    m.image[i] = static_cast<Index>(cod->id(*base));
  }
  out.map = std::move(m);
  return out;
}

BartoloneExtension bartolone_extension(const AdditiveMap& f, std::size_t component) {
  const FiniteMap fm = FiniteMap::from(f);
  const Verdict jordan = check_axioms(fm, AxiomSet::Jordan);
  if (!jordan.ok) throw Error(ErrorKind::NotJordan, "the map is not a Jordan homomorphism", jordan.witness);
  const FiniteLinePtr dom = make_line(f.domain);
  const FiniteLinePtr cod = f.codomain == f.domain ? dom : make_line(f.codomain);
  const FiniteRing& R = dom->ring();
  const FiniteRing& S = cod->ring();
  const auto comps = dom->components();
  if (component >= comps.size()) throw Error(ErrorKind::InvalidParameter, "no such component");
  const std::size_t zero_id = dom->id(dom->zero_point());
  if (!std::binary_search(comps[component].begin(), comps[component].end(), zero_id)) {
    throw Error(ErrorKind::PreconditionFailed, "the selected component does not contain the frame");
  }

  BartoloneExtension out;
  out.component = component;
  out.map = FiniteLineMap{dom, cod, std::vector<Index>(dom->points().size(), kUndef)};
  const std::uint64_t rn = R.size(), sn = S.size();
  const auto key = [&](Index a, Index b, Index c, Index d) {
    return ((static_cast<std::uint64_t>(a) * rn + b) * sn + c) * sn + d;
  };
  struct Item {
    Index a, b, c, d;
  };
  std::unordered_set<std::uint64_t> seen;
  std::deque<Item> queue;
  const auto visit = [&](const Item& it) {
    if (!seen.insert(key(it.a, it.b, it.c, it.d)).second) return;
    ++out.states;
    const std::size_t p = dom->id(dom->point(it.a, it.b));
    if (!cod->is_admissible(it.c, it.d)) {
      throw Error(ErrorKind::InconsistentParameterization, "image vector is not admissible",
                  dom->render(dom->points()[p]));
    }
    const Index q = static_cast<Index>(cod->id(cod->point(it.c, it.d)));
    Index& slot = out.map.image[p];
    if (slot == kUndef) {
      slot = q;
    } else if (slot != q) {
      throw Error(ErrorKind::InconsistentParameterization,
                  dom->render(dom->points()[p]) + " receives two images",
                  cod->render(cod->points()[slot]) + " vs " + cod->render(cod->points()[q]));
    }
    queue.push_back(it);
  };
  visit(Item{R.zero(), R.one(), S.zero(), S.one()});
  while (!queue.empty()) {
    const Item it = queue.front();
    queue.pop_front();
    for (Index t = 0; t < R.size(); ++t) {
      visit(Item{it.b, R.add(it.a, R.mul(it.b, t)), it.d, S.add(it.c, S.mul(it.d, fm(t)))});
    }
  }

  // Bijective onto the component of the image frame.
  std::vector<Index> images;
  for (Index q : out.map.image) {
    if (q != kUndef) images.push_back(q);
  }
  std::sort(images.begin(), images.end());
  const bool injective = std::adjacent_find(images.begin(), images.end()) == images.end();
  const std::size_t image_zero = out.map.image[zero_id];
  bool onto = false;
  for (const auto& c : cod->components()) {
    if (std::binary_search(c.begin(), c.end(), image_zero)) {
      onto = std::vector<Index>(c.begin(), c.end()) == images;
    }
  }
  out.bijective = injective && onto;
  out.harmonic = is_harmonicity_preserver(out.map);
  return out;
}

HuaReport hua_roundtrip_check(const RingSpec& spec, const std::vector<AdditiveMap>& named, const SampleOptions& opts) {
  HuaReport report;
  report.spec = spec;
  if (!is_division_ring(spec)) {
    throw Error(ErrorKind::PreconditionFailed, "the round trip needs a division ring");
  }
  if (characteristic(spec) == 2) {
    report.applicable = false;
    report.notice = "characteristic 2: harmonic quadruples degenerate, so preservers are exactly the injective maps";
    report.ok = true;
    return report;
  }
  const auto is_hom_or_anti = [](MapClass c) { return c != MapClass::Neither; };
  if (is_finite(spec)) {
    const FiniteLinePtr line = make_line(spec);
    const HarmonicTable table(line);
    for (const FiniteLineMap& m : enumerate_preservers_fixing_frame(line).maps) {
      ++report.preservers;
      if (is_hom_or_anti(classify_map(induced_scalar_map(m)))) ++report.preservers_ok;
    }
    std::vector<AdditiveMap> maps = named;
    const FiniteRing& r = line->ring();
    for (const FiniteMap& m : enumerate_jordan_automorphisms(r).found) maps.push_back(table_map(r, r, m.images));
    for (const AdditiveMap& f : maps) {
      ++report.maps;
      if (is_harmonicity_preserver(scalar_line_map(line, f), table).ok) ++report.maps_ok;
    }
  } else {
    report.mode = VerdictMode::Sampled;
    std::vector<AdditiveMap> maps = named;
    if (maps.empty()) {
      for (const char* text : {"identity", "conj", "inner(a=i)", "inner(a=1+j)"}) maps.push_back(parse_map(text, spec));
    }
    const auto line = std::make_shared<const RationalLine>(Ring::make(spec));
    for (const AdditiveMap& f : maps) {
      const InducedLineMap m = induced_line_map(line, f);
      ++report.maps;
      if (is_harmonicity_preserver(m, opts).ok) ++report.maps_ok;
      ++report.preservers;
      if (is_hom_or_anti(classify_map(induced_scalar_map(m), opts))) ++report.preservers_ok;
    }
  }
  report.ok = report.preservers == report.preservers_ok && report.maps == report.maps_ok;
  return report;
}

}  // namespace staudt
