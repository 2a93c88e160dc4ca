#include "staudtlab/synth.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "staudtlab/errors.hpp"
#include "staudtlab/expr.hpp"

namespace staudt {

namespace {

using Vec = std::vector<std::uint32_t>;

Error degenerate(const std::string& what) { return Error(ErrorKind::DegenerateArguments, what); }
Error degenerate_aux(const std::string& what) { return Error(ErrorKind::DegenerateAux, what); }

std::size_t position_on(const SynthLine& l, PointId p) {
  const auto it = std::lower_bound(l.points.begin(), l.points.end(), p);
  if (it == l.points.end() || *it != p) throw degenerate("point is not on the line");
  return static_cast<std::size_t>(it - l.points.begin());
}

PointId other_point(const ProjectiveSpace& s, LineId l, PointId avoid) {
  const auto& pts = s.line(l).points;
  return pts.front() == avoid ? pts.back() : pts.front();
}

// p lies in the plane of the meeting lines l and m, off both.
bool in_plane_off(const ProjectiveSpace& s, LineId l, LineId m, PointId p) {
  if (!s.coplanar(l, m) || s.incident(p, l) || s.incident(p, m)) return false;
  const auto& plane = s.plane(s.plane_of(l, other_point(s, m, s.meet(l, m))));
  return std::binary_search(plane.begin(), plane.end(), p);
}

}  // namespace

ProjectiveSpace::ProjectiveSpace(int n, std::int64_t q) : n_(n), q_(q) {
  if (n != 2 && n != 3) throw Error(ErrorKind::InvalidParameter, "only PG(2,q) and PG(3,q) are supported");
  if (q < 2 || q > 64) throw Error(ErrorKind::InvalidParameter, "q must lie in [2, 64]");
  std::int64_t p = 2;
  while (q % p != 0) ++p;
  std::int64_t rest = q;
  while (rest % p == 0) rest /= p;
  if (rest != 1) throw Error(ErrorKind::InvalidParameter, "q must be a prime power");
  field_ = FiniteRing::make("GF(" + std::to_string(q) + ")");
  const std::size_t width = static_cast<std::size_t>(n) + 1;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < width; ++i) total *= static_cast<std::uint64_t>(q);
  if (total > (std::uint64_t{1} << 22)) throw Error(ErrorKind::InvalidParameter, "the space is too large");

  // Points in lexicographic order of their normalized coordinates.
  point_by_key_.assign(total, kNone);
  for (std::uint64_t v = 0; v < total; ++v) {
    Vec c(width);
    std::uint64_t rest = v;
    for (std::size_t i = width; i-- > 0;) {
      c[i] = static_cast<std::uint32_t>(rest % q);
      rest /= q;
    }
    const auto lead = std::find_if(c.begin(), c.end(), [](std::uint32_t x) { return x != 0; });
    if (lead == c.end() || *lead != field_->one()) continue;
    point_by_key_[v] = static_cast<PointId>(points_.size());
    points_.push_back(SynthPoint{std::move(c)});
  }
  const std::size_t np = points_.size();

  // Lines as sorted point sets, ordered lexicographically.
  std::map<std::vector<PointId>, int> seen;
  for (PointId a = 0; a < np; ++a) {
    for (PointId b = a + 1; b < np; ++b) {
      std::vector<PointId> pts{a};
      for (std::uint32_t s = 0; s < q; ++s) {
        Vec v(width);
        for (std::size_t i = 0; i < width; ++i) {
          v[i] = field_->add(field_->mul(s, points_[a].coords[i]), points_[b].coords[i]);
        }
        pts.push_back(id(v));
      }
      std::sort(pts.begin(), pts.end());
      seen.emplace(std::move(pts), 0);
    }
  }
  for (auto& [pts, idx] : seen) {
    idx = static_cast<int>(lines_.size());
    SynthLine l;
    l.points = pts;
    l.basis = rref({points_[pts[0]].coords, points_[pts[1]].coords});
    lines_.push_back(std::move(l));
  }
  const std::size_t nl = lines_.size();
  incidence_.assign(nl * np, false);
  join_.assign(np * np, kNone);
  for (LineId l = 0; l < nl; ++l) {
    const auto& pts = lines_[l].points;
    for (PointId p : pts) incidence_[l * np + p] = true;
    for (PointId p : pts) {
      for (PointId r : pts) {
        if (p != r) join_[p * np + r] = l;
      }
    }
  }
  meet_.assign(nl * nl, kNone);
  for (LineId l = 0; l < nl; ++l) {
    for (LineId m = l + 1; m < nl; ++m) {
      std::vector<PointId> common;
      std::set_intersection(lines_[l].points.begin(), lines_[l].points.end(), lines_[m].points.begin(),
                            lines_[m].points.end(), std::back_inserter(common));
      if (!common.empty()) meet_[l * nl + m] = meet_[m * nl + l] = common.front();
    }
  }

  // Planes: the union of the joins of a point with the points of a line.
  std::map<std::vector<PointId>, std::size_t> plane_index;
  plane_of_.assign(nl * np, kNone);
  for (LineId l = 0; l < nl; ++l) {
    for (PointId p = 0; p < np; ++p) {
      if (incident(p, l) || plane_of_[l * np + p] != kNone) continue;
      std::vector<PointId> pts = lines_[l].points;
      for (PointId x : lines_[l].points) {
        for (PointId y : lines_[join(p, x)].points) pts.push_back(y);
      }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      auto [it, inserted] = plane_index.emplace(pts, planes_.size());
      if (inserted) planes_.push_back(pts);
      for (PointId y : pts) {
        if (!incident(y, l)) plane_of_[l * np + y] = static_cast<std::uint32_t>(it->second);
      }
    }
  }

  Vec inf(width, 0), zero(width, 0);
  inf[0] = field_->one();
  zero[1] = field_->one();
  chart_infinity_ = id(inf);
  chart_line_ = join(chart_infinity_, id(zero));
}

std::uint32_t ProjectiveSpace::key(const Vec& v) const {
  std::uint64_t k = 0;
  for (std::uint32_t c : v) k = k * static_cast<std::uint64_t>(q_) + c;
  return static_cast<std::uint32_t>(k);
}

Vec ProjectiveSpace::normalize(Vec v) const {
  const auto lead = std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x != 0; });
  if (lead == v.end()) throw degenerate("the zero vector is not a point");
  const std::uint32_t inv = field_->inverse(*lead);
  for (auto& c : v) c = field_->mul(inv, c);
  return v;
}

std::vector<Vec> ProjectiveSpace::rref(std::vector<Vec> rows) const {
  const FiniteRing& f = *field_;
  const std::size_t width = static_cast<std::size_t>(n_) + 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < width && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const std::uint32_t inv = f.inverse(rows[rank][col]);
    for (auto& c : rows[rank]) c = f.mul(inv, c);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const std::uint32_t factor = rows[r][col];
      for (std::size_t i = 0; i < width; ++i) rows[r][i] = f.sub(rows[r][i], f.mul(factor, rows[rank][i]));
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

PointId ProjectiveSpace::id(const std::vector<std::uint32_t>& coords) const {
  if (coords.size() != static_cast<std::size_t>(n_) + 1) throw degenerate("wrong number of coordinates");
  for (std::uint32_t c : coords) {
    if (c >= field_->size()) throw degenerate("coordinate outside the field");
  }
  return point_by_key_[key(normalize(coords))];
}

std::string ProjectiveSpace::render(PointId p) const {
  std::string out = "[";
  const auto& c = points_[p].coords;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += ':';
    out += field_->render(c[i]);
  }
  return out + "]";
}

PointId ProjectiveSpace::parse_point(std::string_view text) const {
  const auto first = text.find_first_not_of(' ');
  const auto last = text.find_last_not_of(' ');
  if (first == std::string_view::npos || text[first] != '[' || text[last] != ']') {
    throw Error(ErrorKind::Syntax, "expected a point literal [c0:c1:...]", std::string(text));
  }
  const auto parts = split_top_level(text.substr(first + 1, last - first - 1), ':');
  Vec v;
  for (const auto& part : parts) v.push_back(field_->parse(part));
  return id(v);
}

std::string ProjectiveSpace::render_line(LineId l) const {
  std::string out = "{";
  for (std::size_t i = 0; i < lines_[l].points.size(); ++i) {
    if (i) out += ", ";
    out += render(lines_[l].points[i]);
  }
  return out + "}";
}

LineId ProjectiveSpace::join(PointId p, PointId q) const {
  if (p == q) throw degenerate("join of a point with itself");
  return join_[static_cast<std::size_t>(p) * points_.size() + q];
}

PointId ProjectiveSpace::try_meet(LineId l, LineId m) const {
  if (l == m) throw degenerate("meet of a line with itself");
  return meet_[static_cast<std::size_t>(l) * lines_.size() + m];
}

PointId ProjectiveSpace::meet(LineId l, LineId m) const {
  const PointId p = try_meet(l, m);
  if (p == kNone) throw Error(ErrorKind::NoIntersection, "the lines are skew", render_line(l) + " " + render_line(m));
  return p;
}

PointId ProjectiveSpace::meet_in_plane(LineId l, LineId m) const { return meet(l, m); }

bool ProjectiveSpace::collinear(PointId a, PointId b, PointId c) const {
  if (a == b || a == c) return true;
  return incident(c, join(a, b));
}

std::size_t ProjectiveSpace::plane_of(LineId l, PointId p) const {
  const std::uint32_t i = plane_of_[static_cast<std::size_t>(l) * points_.size() + p];
  if (i == kNone) throw degenerate("the point lies on the line");
  return i;
}

Subspace ProjectiveSpace::span(const std::vector<PointId>& pts) const {
  std::vector<Vec> rows;
  for (PointId p : pts) rows.push_back(points_[p].coords);
  return Subspace{rref(std::move(rows))};
}

Subspace ProjectiveSpace::span(const Subspace& a, const Subspace& b) const {
  std::vector<Vec> rows = a.basis;
  rows.insert(rows.end(), b.basis.begin(), b.basis.end());
  return Subspace{rref(std::move(rows))};
}

std::vector<PointId> ProjectiveSpace::points_of(const Subspace& s) const {
  std::vector<PointId> out;
  for (PointId p = 0; p < points_.size(); ++p) {
    std::vector<Vec> rows = s.basis;
    rows.push_back(points_[p].coords);
    if (static_cast<int>(rref(std::move(rows)).size()) == s.rank()) out.push_back(p);
  }
  return out;
}

Subspace ProjectiveSpace::meet(const Subspace& a, const Subspace& b) const {
  const auto pa = points_of(a);
  const auto pb = points_of(b);
  std::vector<PointId> common;
  std::set_intersection(pa.begin(), pa.end(), pb.begin(), pb.end(), std::back_inserter(common));
  return span(common);
}

Subspace ProjectiveSpace::subspace(LineId l) const { return Subspace{lines_[l].basis}; }

PointId ProjectiveSpace::chart_point(std::uint32_t x) const {
  Vec v(static_cast<std::size_t>(n_) + 1, 0);
  v[0] = x;
  v[1] = field_->one();
  return id(v);
}

std::optional<std::uint32_t> ProjectiveSpace::chart_coordinate(PointId p) const {
  if (!incident(p, chart_line_)) throw degenerate(render(p) + " is off the chart line");
  const auto& c = points_[p].coords;
  if (c[1] == 0) return std::nullopt;
  return field_->mul(c[0], field_->inverse(c[1]));
}

PointId quadrangle_fourth_harmonic(const ProjectiveSpace& s, PointId p1, PointId p2, PointId p3,
                                   const QuadrangleAux& aux) {
  if (p1 == p2 || p1 == p3 || p2 == p3 || !s.collinear(p1, p2, p3)) {
    throw degenerate("p1, p2, p3 must be distinct collinear points");
  }
  const LineId l = s.join(p1, p2);
  const auto [q1, q2] = aux;
  if (s.incident(q1, l)) throw degenerate_aux("q1 lies on the line");
  if (q2 == q1 || q2 == p1 || !s.incident(q2, s.join(p1, q1))) {
    throw degenerate_aux("q2 must lie on q1 p1, distinct from both");
  }
  const PointId q3 = s.meet(s.join(q2, p2), s.join(q1, p3));
  const PointId q4 = s.meet(s.join(q1, p2), s.join(q3, p1));
  const std::vector<PointId> quad{q1, q2, q3, q4};
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (quad[i] == quad[j]) throw degenerate_aux("the quadrangle collapses");
      for (std::size_t k = j + 1; k < 4; ++k) {
        if (s.collinear(quad[i], quad[j], quad[k])) throw degenerate_aux("three quadrangle points are collinear");
      }
    }
  }
  return s.meet(l, s.join(q2, q4));
}

std::vector<QuadrangleAux> quadrangle_aux_choices(const ProjectiveSpace& s, PointId p1, PointId p2, PointId p3) {
  if (p1 == p2 || p1 == p3 || p2 == p3 || !s.collinear(p1, p2, p3)) {
    throw degenerate("p1, p2, p3 must be distinct collinear points");
  }
  const LineId l = s.join(p1, p2);
  std::vector<QuadrangleAux> out;
  for (PointId q1 = 0; q1 < s.point_count(); ++q1) {
    if (s.incident(q1, l)) continue;
    for (PointId q2 : s.line(s.join(p1, q1)).points) {
      if (q2 != q1 && q2 != p1) out.push_back({q1, q2});
    }
  }
  return out;
}

bool is_quadrangle_harmonic(const ProjectiveSpace& s, PointId p1, PointId p2, PointId p3, PointId p4) {
  if (p1 == p2 || p1 == p3 || p2 == p3 || !s.collinear(p1, p2, p3) || !s.collinear(p1, p2, p4)) return false;
  for (const QuadrangleAux& aux : quadrangle_aux_choices(s, p1, p2, p3)) {
    if (quadrangle_fourth_harmonic(s, p1, p2, p3, aux) == p4) return true;
  }
  return false;
}

PointId geometric_add(const ProjectiveSpace& s, PointId zero, PointId inf, PointId x, PointId y, const AddAux& aux) {
  if (zero == inf) throw degenerate("0 and infinity must differ");
  const LineId l = s.join(zero, inf);
  if (!s.incident(x, l) || !s.incident(y, l) || x == inf || y == inf) {
    throw degenerate("x and y must be affine points of the line");
  }
  const auto [axis, p] = aux;
  if (axis == l || !s.incident(inf, axis)) throw degenerate_aux("the axis must pass through infinity");
  if (!in_plane_off(s, l, axis, p)) throw degenerate_aux("the point must lie in the plane of line and axis, off both");
  // The elation with centre infinity and this axis taking 0 to y.
  const PointId a0 = s.meet(axis, s.join(zero, p));
  const PointId p_image = y == zero ? p : s.meet(s.join(inf, p), s.join(y, a0));
  if (x == zero) return y;
  const PointId b = s.meet(axis, s.join(x, p));
  return s.meet(l, s.join(b, p_image));
}

PointId geometric_mul(const ProjectiveSpace& s, PointId zero, PointId one, PointId inf, PointId x, PointId y,
                      const MulAux& aux) {
  if (zero == inf || one == zero || one == inf || !s.collinear(zero, one, inf)) {
    throw degenerate("0, 1, infinity must be distinct collinear points");
  }
  const LineId l = s.join(zero, inf);
  if (!s.incident(x, l) || !s.incident(y, l) || x == inf || y == inf) {
    throw degenerate("x and y must be affine points of the line");
  }
  const auto [m, c1] = aux;
  if (m == l || !s.incident(inf, m)) throw degenerate_aux("the auxiliary line must pass through infinity");
  if (!in_plane_off(s, l, m, c1)) throw degenerate_aux("the centre must lie in the plane of both lines, off both");
  if (y == zero) return zero;
  const PointId m0 = s.meet(m, s.join(c1, zero));
  const PointId m1 = s.meet(m, s.join(c1, one));
  const PointId c2 = s.meet(s.join(m0, zero), s.join(m1, y));
  const PointId mx = s.meet(m, s.join(c1, x));
  return s.meet(l, s.join(c2, mx));
}

std::vector<AddAux> add_aux_choices(const ProjectiveSpace& s, PointId zero, PointId inf) {
  const LineId l = s.join(zero, inf);
  std::vector<AddAux> out;
  for (LineId a = 0; a < s.line_count(); ++a) {
    if (a == l || !s.incident(inf, a)) continue;
    for (PointId p : s.plane(s.plane_of(l, other_point(s, a, inf)))) {
      if (!s.incident(p, l) && !s.incident(p, a)) out.push_back({a, p});
    }
  }
  return out;
}

std::vector<MulAux> mul_aux_choices(const ProjectiveSpace& s, PointId zero, PointId inf) {
  std::vector<MulAux> out;
  for (const AddAux& a : add_aux_choices(s, zero, inf)) out.push_back({a.axis, a.point});
  return out;
}

Perspectivity make_perspectivity(const ProjectiveSpace& s, LineId source, LineId target, PointId centre) {
  if (source == target) throw degenerate("a perspectivity joins two distinct lines");
  if (!s.coplanar(source, target)) throw degenerate("the lines are skew");
  if (!in_plane_off(s, source, target, centre)) throw degenerate("the centre must lie in the plane of the lines, off both");
  return Perspectivity{source, target, centre};
}

PointId perspectivity_map(const ProjectiveSpace& s, const Perspectivity& p, PointId x) {
  if (!s.incident(x, p.source)) throw degenerate(s.render(x) + " is not on the source line");
  return s.meet(s.join(p.centre, x), p.target);
}

std::vector<Perspectivity> perspectivities_from(const ProjectiveSpace& s, LineId source) {
  std::vector<Perspectivity> out;
  for (LineId t = 0; t < s.line_count(); ++t) {
    if (t == source || !s.coplanar(source, t)) continue;
    const std::size_t plane = s.plane_of(source, other_point(s, t, s.meet(source, t)));
    for (PointId c : s.plane(plane)) {
      if (!s.incident(c, source) && !s.incident(c, t)) out.push_back({source, t, c});
    }
  }
  return out;
}

LineMap identity_map(const ProjectiveSpace& s, LineId line) {
  return LineMap{line, line, s.line(line).points};
}

PointId apply(const ProjectiveSpace& s, const LineMap& m, PointId x) {
  return m.image[position_on(s.line(m.source), x)];
}

LineMap compose(const ProjectiveSpace& s, const LineMap& a, const LineMap& b) {
  if (a.target != b.source) throw Error(ErrorKind::ChainMismatch, "the maps do not compose");
  LineMap out{a.source, b.target, {}};
  for (PointId x : a.image) out.image.push_back(apply(s, b, x));
  return out;
}

LineMap inverse(const ProjectiveSpace& s, const LineMap& m) {
  LineMap out{m.target, m.source, std::vector<PointId>(m.image.size())};
  const auto& src = s.line(m.source).points;
  for (std::size_t i = 0; i < src.size(); ++i) out.image[position_on(s.line(m.target), m.image[i])] = src[i];
  return out;
}

LineMap compose_chain(const ProjectiveSpace& s, const std::vector<Perspectivity>& chain, std::optional<LineId> line) {
  if (chain.empty()) {
    if (!line) throw degenerate("an empty chain needs its line");
    return identity_map(s, *line);
  }
  if (line && *line != chain.front().source) throw Error(ErrorKind::ChainMismatch, "the chain starts elsewhere");
  LineMap out = identity_map(s, chain.front().source);
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const Perspectivity& p = chain[k];
    if (p.source != out.target) {
      throw Error(ErrorKind::ChainMismatch, "link " + std::to_string(k) + " does not start where the last ended");
    }
    for (PointId& x : out.image) x = perspectivity_map(s, p, x);
    out.target = p.target;
  }
  return out;
}

std::vector<ProjectivityState> projectivity_closure(const ProjectiveSpace& s, LineId line, double budget) {
  std::vector<std::vector<Perspectivity>> moves(s.line_count());
  std::vector<bool> have_moves(s.line_count(), false);
  std::vector<ProjectivityState> states{{identity_map(s, line), {}}};
  std::map<LineMap, std::size_t> index{{states.front().map, 0}};
  for (std::size_t head = 0; head < states.size(); ++head) {
    const LineId at = states[head].map.target;
    if (!have_moves[at]) {
      moves[at] = perspectivities_from(s, at);
      have_moves[at] = true;
    }
    for (const Perspectivity& p : moves[at]) {
      LineMap next{line, p.target, states[head].map.image};
      for (PointId& x : next.image) x = perspectivity_map(s, p, x);
      if (index.count(next)) continue;
      if (static_cast<double>(states.size()) >= budget) {
        throw Error(ErrorKind::BudgetExceeded, "projectivity closure exceeded the budget",
                    std::to_string(states.size()));
      }
      std::vector<Perspectivity> word = states[head].word;
      word.push_back(p);
      index.emplace(next, states.size());
      states.push_back({std::move(next), std::move(word)});
    }
  }
  return states;
}

ProjectivityGroup projectivity_group(const ProjectiveSpace& s, LineId line, double budget) {
  if ((s.dimension() == 2 && s.order() > 5) || (s.dimension() == 3 && s.order() > 4)) {
    throw Error(ErrorKind::InvalidParameter, "projectivity closure needs q <= 5 (plane) or q <= 4 (space)");
  }
  ProjectivityGroup g;
  g.line = line;
  auto states = projectivity_closure(s, line, budget);
  g.states = states.size();
  std::vector<std::pair<LineMap, std::vector<Perspectivity>>> members;
  for (auto& st : states) {
    if (st.map.target == line) members.emplace_back(std::move(st.map), std::move(st.word));
  }
  std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [m, w] : members) {
    g.elements.push_back(std::move(m));
    g.words.push_back(std::move(w));
  }
  return g;
}

std::vector<std::size_t> stabilizer(const ProjectiveSpace& s, const ProjectivityGroup& g,
                                    const std::vector<PointId>& fixed) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    if (std::all_of(fixed.begin(), fixed.end(), [&](PointId p) { return apply(s, g.elements[i], p) == p; })) {
      out.push_back(i);
    }
  }
  return out;
}

bool is_triply_transitive(const ProjectiveSpace& s, const ProjectivityGroup& g) {
  const auto& pts = s.line(g.line).points;
  std::vector<std::vector<PointId>> reached;
  for (const LineMap& m : g.elements) reached.push_back({m.image[0], m.image[1], m.image[2]});
  std::sort(reached.begin(), reached.end());
  for (PointId a : pts) {
    for (PointId b : pts) {
      for (PointId c : pts) {
        if (a == b || a == c || b == c) continue;
        if (!std::binary_search(reached.begin(), reached.end(), std::vector<PointId>{a, b, c})) return false;
      }
    }
  }
  return true;
}

AxiomReport axiom_battery(const ProjectiveSpace& s) {
  AxiomReport r;
  const std::size_t np = s.point_count();
  const auto fail = [&](bool& flag, const std::string& w) {
    if (flag) r.witness = w;
    flag = false;
  };
  for (PointId a = 0; a < np; ++a) {
    for (PointId b = a + 1; b < np; ++b) {
      std::size_t through = 0;
      for (LineId l = 0; l < s.line_count(); ++l) through += s.incident(a, l) && s.incident(b, l);
      ++r.checks;
      if (through != 1) fail(r.unique_join, s.render(a) + " " + s.render(b));
    }
  }
  for (LineId l = 0; l < s.line_count(); ++l) {
    ++r.checks;
    if (s.line(l).points.size() < 3) fail(r.three_points, s.render_line(l));
  }
  for (PointId a = 0; a < np; ++a) {
    for (PointId b = a + 1; b < np; ++b) {
      for (PointId c = b + 1; c < np; ++c) {
        if (s.collinear(a, b, c)) continue;
        const LineId ab = s.join(a, b), bc = s.join(b, c), ac = s.join(a, c);
        for (LineId m = 0; m < s.line_count(); ++m) {
          if (s.incident(a, m) || s.incident(b, m) || s.incident(c, m)) continue;
          if (s.try_meet(m, ab) == ProjectiveSpace::kNone || s.try_meet(m, bc) == ProjectiveSpace::kNone) continue;
          ++r.checks;
          if (s.try_meet(m, ac) == ProjectiveSpace::kNone) {
            fail(r.triangle, s.render(a) + " " + s.render(b) + " " + s.render(c) + " " + s.render_line(m));
          }
        }
      }
    }
  }
  return r;
}

namespace {

// Checks one configuration; nullopt when it is degenerate.
std::optional<bool> desargues_instance(const ProjectiveSpace& s, PointId p, const PointId (&a)[3],
                                       const PointId (&b)[3]) {
  for (int i = 0; i < 3; ++i) {
    if (a[i] == p || b[i] == p || a[i] == b[i] || !s.collinear(p, a[i], b[i])) return std::nullopt;
  }
  if (s.collinear(a[0], a[1], a[2]) || s.collinear(b[0], b[1], b[2])) return std::nullopt;
  PointId side[3];
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    const LineId la = s.join(a[i], a[j]), lb = s.join(b[i], b[j]);
    if (la == lb) return std::nullopt;
    side[k] = s.try_meet(la, lb);
    if (side[k] == ProjectiveSpace::kNone) return std::nullopt;
  }
  return s.collinear(side[0], side[1], side[2]);
}

std::string describe(const ProjectiveSpace& s, PointId p, const PointId (&a)[3], const PointId (&b)[3]) {
  std::string out = "p=" + s.render(p);
  for (int i = 0; i < 3; ++i) out += " a" + std::to_string(i + 1) + "=" + s.render(a[i]);
  for (int i = 0; i < 3; ++i) out += " b" + std::to_string(i + 1) + "=" + s.render(b[i]);
  return out;
}

}  // namespace

DesarguesReport desargues_check(const ProjectiveSpace& s, std::uint64_t samples, std::uint64_t seed) {
  DesarguesReport r;
  const std::size_t np = s.point_count();
  const auto record = [&](PointId p, const PointId (&a)[3], const PointId (&b)[3]) {
    const auto v = desargues_instance(s, p, a, b);
    if (!v) {
      ++r.rejected;
      return;
    }
    ++r.configurations;
    if (!*v && r.ok) {
      r.ok = false;
      r.witness = describe(s, p, a, b);
    }
  };
  if (s.dimension() == 2 && s.order() <= 3) {
    r.exhaustive = true;
    for (PointId p = 0; p < np; ++p) {
      PointId a[3];
      for (a[0] = 0; a[0] < np; ++a[0]) {
        for (a[1] = a[0] + 1; a[1] < np; ++a[1]) {
          for (a[2] = a[1] + 1; a[2] < np; ++a[2]) {
            if (p == a[0] || p == a[1] || p == a[2] || s.collinear(a[0], a[1], a[2])) continue;
            const auto& l0 = s.line(s.join(p, a[0])).points;
            const auto& l1 = s.line(s.join(p, a[1])).points;
            const auto& l2 = s.line(s.join(p, a[2])).points;
            for (PointId b0 : l0) {
              for (PointId b1 : l1) {
                for (PointId b2 : l2) {
                  if (b0 == p || b1 == p || b2 == p || b0 == a[0] || b1 == a[1] || b2 == a[2]) continue;
                  const PointId b[3] = {b0, b1, b2};
                  record(p, a, b);
                }
              }
            }
          }
        }
      }
    }
    return r;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<PointId> pick(0, static_cast<PointId>(np - 1));
  while (r.configurations < samples) {
    const PointId p = pick(rng);
    PointId a[3] = {pick(rng), pick(rng), pick(rng)};
    PointId b[3];
    bool bad = false;
    for (int i = 0; i < 3 && !bad; ++i) {
      if (a[i] == p) {
        bad = true;
        break;
      }
      const auto& pts = s.line(s.join(p, a[i])).points;
      b[i] = pts[rng() % pts.size()];
    }
    if (bad) {
      ++r.rejected;
      continue;
    }
    record(p, a, b);
  }
  return r;
}

SchurResult schur_decomposition(const ProjectiveSpace& s, const std::vector<Perspectivity>& chain) {
  if (chain.empty()) throw degenerate("an empty chain has no decomposition");
  const LineMap target_map = compose_chain(s, chain);
  const LineId from = target_map.source, to = target_map.target;
  if (from == to) throw degenerate("the chain must end on a different line");
  SchurResult r;
  r.skew = s.try_meet(from, to) == ProjectiveSpace::kNone;
  const auto& src = s.line(from).points;
  const auto reproduces = [&](const std::vector<Perspectivity>& f) {
    ++r.candidates;
    for (std::size_t i = 0; i < src.size(); ++i) {
      PointId x = src[i];
      for (const Perspectivity& p : f) x = perspectivity_map(s, p, x);
      if (x != target_map.image[i]) return false;
    }
    return true;
  };
  for (const Perspectivity& p : perspectivities_from(s, from)) {
    if (p.target == to && reproduces({p})) {
      r.found = true;
      r.factors = {p};
      return r;
    }
  }
  for (const Perspectivity& p1 : perspectivities_from(s, from)) {
    if (p1.target == to || !s.coplanar(p1.target, to)) continue;
    for (const Perspectivity& p2 : perspectivities_from(s, p1.target)) {
      if (p2.target != to) continue;
      if (reproduces({p1, p2})) {
        r.found = true;
        r.factors = {p1, p2};
        return r;
      }
    }
  }
  return r;
}

std::vector<Perspectivity> random_chain(const ProjectiveSpace& s, std::size_t steps, std::mt19937_64& rng,
                                        std::optional<LineId> start) {
  LineId at = start ? *start : static_cast<LineId>(rng() % s.line_count());
  std::vector<Perspectivity> chain;
  for (std::size_t k = 0; k < steps; ++k) {
    const auto moves = perspectivities_from(s, at);
    chain.push_back(moves[rng() % moves.size()]);
    at = chain.back().target;
  }
  return chain;
}

}  // namespace staudt
