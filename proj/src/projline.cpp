#include "staudtlab/projline.hpp"

#include <algorithm>
#include <deque>
#include <type_traits>

#include "staudtlab/errors.hpp"
#include "staudtlab/expr.hpp"

namespace staudt {

std::string_view to_string(CrossRatioMode mode) {
  switch (mode) {
    case CrossRatioMode::Plain: return "plain";
    case CrossRatioMode::Orbit: return "orbit";
    case CrossRatioMode::TraceNorm: return "trace-norm";
  }
  return "?";
}

namespace {

template <class R>
constexpr bool kFinite = std::is_same_v<R, FiniteRing>;

// One inversion attempt instead of is_unit followed by inverse.
template <class R>
std::optional<typename R::value_type> inverse_if_unit(const R& r, const typename R::value_type& x) {
  if constexpr (kFinite<R>) {
    if (!r.is_unit(x)) return std::nullopt;
    return r.inverse(x);
  } else {
    return r.try_inverse(x);
  }
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

template <RingOps R>
ProjectiveLine<R>::ProjectiveLine(std::shared_ptr<const R> ring) : ring_(std::move(ring)) {
  if (ring_->is_commutative()) {
    mode_ = CrossRatioMode::Plain;
  } else if constexpr (kFinite<R>) {
    mode_ = CrossRatioMode::Orbit;
  } else {
    const RingSpec& s = ring_->spec();
    mode_ = s.kind == RingKind::Quat && s.base().kind == RingKind::Rational ? CrossRatioMode::TraceNorm
                                                                           : CrossRatioMode::Orbit;
  }
}

template <RingOps R>
typename ProjectiveLine<R>::T ProjectiveLine<R>::search_unit_shift(const T& a, const T& b, bool& found) const {
  const R& r = *ring_;
  found = true;
  if (r.is_unit(a)) return r.zero();
  if (r.is_unit(b)) return r.mul(r.inverse(b), r.sub(r.one(), a));
  if constexpr (kFinite<R>) {
    // Finite rings have stable rank 1, so a unimodular row (a,b) always
    // admits t with a + bt a unit; scanning t decides unimodularity.
    for (T t = 0; t < r.size(); ++t) {
      if (r.is_unit(r.add(a, r.mul(b, t)))) return t;
    }
    found = false;
    return r.zero();
  } else {
    if (r.is_division_ring()) {
      found = false;
      return r.zero();
    }
    throw Error(ErrorKind::InfiniteRing,
                "admissibility over " + staudt::render(r.spec()) + " is only decided when a coordinate is a unit");
  }
}

template <RingOps R>
bool ProjectiveLine<R>::is_admissible(const T& a, const T& b) const {
  bool found = false;
  search_unit_shift(a, b, found);
  return found;
}

template <RingOps R>
bool ProjectiveLine<R>::is_invertible(const Mat2<T>& m) const {
  return inverse(m).has_value();
}

template <RingOps R>
std::optional<Mat2<typename ProjectiveLine<R>::T>> ProjectiveLine<R>::inverse(const Mat2<T>& m) const {
  const R& r = *ring_;
  T t = r.zero();
  auto u_inv = inverse_if_unit(r, m.a);
  if (!u_inv) {
    bool found = false;
    t = search_unit_shift(m.a, m.b, found);
    if (!found) return std::nullopt;
    u_inv = inverse_if_unit(r, r.add(m.a, r.mul(m.b, t)));
  }
  // m * [[1,0],[t,1]] = [[u, b], [c', d]] = [[1,0],[c'u^-1,1]] * [[u,b],[0,s]]
  const T c1 = r.add(m.c, r.mul(m.d, t));
  const T cu = r.mul(c1, *u_inv);  // c' u^-1
  const auto s_inv = inverse_if_unit(r, r.sub(m.d, r.mul(cu, m.b)));
  if (!s_inv) return std::nullopt;
  const T ub_s = r.mul(r.mul(*u_inv, m.b), *s_inv);  // u^-1 b s^-1
  const T x11 = r.add(*u_inv, r.mul(ub_s, cu));
  const T x12 = r.neg(ub_s);
  const T x21 = r.neg(r.mul(*s_inv, cu));
  const T x22 = *s_inv;
  return Mat2<T>{x11, x12, r.add(r.mul(t, x11), x21), r.add(r.mul(t, x12), x22)};
}

template <RingOps R>
typename ProjectiveLine<R>::Point ProjectiveLine<R>::point(const T& a, const T& b) const {
  const R& r = *ring_;
  if constexpr (kFinite<R>) {
    const std::size_t n = r.size();
    if (!pair_to_point_.empty() || n * n <= (std::size_t{1} << 22)) {
      build_points();
      const std::uint32_t id = pair_to_point_[static_cast<std::size_t>(a) * n + b];
      if (id == 0xFFFFFFFFu) {
        throw Error(ErrorKind::NotAdmissible, "(" + r.render(a) + ", " + r.render(b) + ") is not admissible");
      }
      return points_[id];
    }
    if (!is_admissible(a, b)) {
      throw Error(ErrorKind::NotAdmissible, "(" + r.render(a) + ", " + r.render(b) + ") is not admissible");
    }
    Point best{a, b};
    for (T u : r.units()) {
      const Point cand{r.mul(u, a), r.mul(u, b)};
      if (cand < best) best = cand;
    }
    return best;
  } else {
    // Affine points keep the form (x, 1); the rest normalize a.
    if (b == r.one()) return Point{a, b};
    if (const auto b_inv = inverse_if_unit(r, b)) return Point{r.mul(*b_inv, a), r.one()};
    if (const auto a_inv = inverse_if_unit(r, a)) return Point{r.one(), r.mul(*a_inv, b)};
    if (!is_admissible(a, b)) {
      throw Error(ErrorKind::NotAdmissible, "(" + r.render(a) + ", " + r.render(b) + ") is not admissible");
    }
    throw Error(ErrorKind::Unsupported, "no canonical form for this point over " + staudt::render(r.spec()));
  }
}

template <RingOps R>
typename ProjectiveLine<R>::Point ProjectiveLine<R>::embed(const T& x) const {
  return point(x, ring_->one());
}

template <RingOps R>
typename ProjectiveLine<R>::Point ProjectiveLine<R>::infinity() const {
  return point(ring_->one(), ring_->zero());
}

template <RingOps R>
std::optional<typename ProjectiveLine<R>::T> ProjectiveLine<R>::try_affine(const Point& p) const {
  const R& r = *ring_;
  if (p.b == r.one()) return p.a;
  const auto b_inv = inverse_if_unit(r, p.b);
  if (!b_inv) return std::nullopt;
  return r.mul(*b_inv, p.a);
}

template <RingOps R>
typename ProjectiveLine<R>::T ProjectiveLine<R>::affine_coordinate(const Point& p) const {
  auto x = try_affine(p);
  if (!x) throw Error(ErrorKind::NotAffine, render(p) + " has no affine coordinate", render(p));
  return *x;
}

template <RingOps R>
bool ProjectiveLine<R>::distant(const Point& p, const Point& q) const {
  // Over a division ring canonical points are distant iff distinct.
  if (ring_->is_division_ring()) return !(p == q);
  return is_invertible(Mat2<T>{p.a, p.b, q.a, q.b});
}

template <RingOps R>
CrossRatio<typename ProjectiveLine<R>::T> ProjectiveLine<R>::class_of(const T& x) const {
  CrossRatio<T> out;
  out.mode = mode_;
  out.representative = x;
  switch (mode_) {
    case CrossRatioMode::Plain:
      out.key = {x};
      break;
    case CrossRatioMode::Orbit:
      if constexpr (kFinite<R>) {
        out.key = ring_->conjugacy_orbit(x);
        out.representative = out.key.front();
      } else {
        throw Error(ErrorKind::Unsupported, "conjugacy classes are not decidable in " + staudt::render(ring_->spec()));
      }
      break;
    case CrossRatioMode::TraceNorm:
      if constexpr (!kFinite<R>) {
        auto tn = ring_->reduced_trace_norm(x);
        out.key = {tn->first, tn->second};
      }
      break;
  }
  return out;
}

template <RingOps R>
CrossRatio<typename ProjectiveLine<R>::T> ProjectiveLine<R>::cross_ratio(const Point& p1, const Point& p2,
                                                                          const Point& p3, const Point& p4) const {
  const R& r = *ring_;
  const auto m_inv = inverse(Mat2<T>{p1.a, p1.b, p2.a, p2.b});
  if (!m_inv || !distant(p1, p3) || !distant(p2, p3)) {
    throw Error(ErrorKind::FrameDegenerate, "the first three points are not pairwise distant",
                render(p1) + " " + render(p2) + " " + render(p3));
  }
  // r3 = u1 r1 + u2 r2 and r4 = v1 r1 + v2 r2, so with w_i = u_i r_i the
  // coordinates of r4 are x_i = v_i u_i^-1.
  const T u1 = r.add(r.mul(p3.a, m_inv->a), r.mul(p3.b, m_inv->c));
  const T u2 = r.add(r.mul(p3.a, m_inv->b), r.mul(p3.b, m_inv->d));
  const auto u1_inv = inverse_if_unit(r, u1), u2_inv = inverse_if_unit(r, u2);
  if (!u1_inv || !u2_inv) {
    throw Error(ErrorKind::FrameDegenerate, "the first three points are not pairwise distant",
                render(p1) + " " + render(p2) + " " + render(p3));
  }
  const T v1 = r.add(r.mul(p4.a, m_inv->a), r.mul(p4.b, m_inv->c));
  const T v2 = r.add(r.mul(p4.a, m_inv->b), r.mul(p4.b, m_inv->d));
  const auto x2_inv = inverse_if_unit(r, r.mul(v2, *u2_inv));
  if (!x2_inv) {
    throw Error(ErrorKind::NotResolvable, "the fourth point is not distant from the first", render(p4));
  }
  return class_of(r.mul(*x2_inv, r.mul(v1, *u1_inv)));
}

template <RingOps R>
bool ProjectiveLine<R>::is_harmonic(const Point& p1, const Point& p2, const Point& p3, const Point& p4) const {
  return cross_ratio(p1, p2, p3, p4) == class_of(ring_->neg(ring_->one()));
}

template <RingOps R>
bool ProjectiveLine<R>::harmonic_relation(const Point& p1, const Point& p2, const Point& p3,
                                          const Point& p4) const {
  if (!distant(p1, p2) || !distant(p1, p3) || !distant(p2, p3)) return false;
  if (!distant(p4, p1) || !distant(p4, p2)) return false;
  return is_harmonic(p1, p2, p3, p4);
}

template <RingOps R>
typename ProjectiveLine<R>::Point ProjectiveLine<R>::fourth_harmonic_point(const Point& p1, const Point& p2,
                                                                           const Point& p3) const {
  const R& r = *ring_;
  const auto m_inv = inverse(Mat2<T>{p1.a, p1.b, p2.a, p2.b});
  if (!m_inv || !distant(p1, p3) || !distant(p2, p3)) {
    throw Error(ErrorKind::FrameDegenerate, "the three points are not pairwise distant",
                render(p1) + " " + render(p2) + " " + render(p3));
  }
  const T u1 = r.add(r.mul(p3.a, m_inv->a), r.mul(p3.b, m_inv->c));
  const T u2 = r.add(r.mul(p3.a, m_inv->b), r.mul(p3.b, m_inv->d));
  return point(r.sub(r.mul(u2, p2.a), r.mul(u1, p1.a)), r.sub(r.mul(u2, p2.b), r.mul(u1, p1.b)));
}

template <RingOps R>
typename ProjectiveLine<R>::Point ProjectiveLine<R>::fourth_harmonic(const Arg& a1, const Arg& a2,
                                                                     const Arg& a3) const {
  const R& r = *ring_;
  if (!r.two_is_unit()) {
    throw Error(ErrorKind::TwoNotUnit, "2 is not a unit in " + staudt::render(r.spec()));
  }
  const auto unit_or_throw = [&](const T& d) {
    auto inv = inverse_if_unit(r, d);
    if (!inv) throw Error(ErrorKind::NonUnitDifference, r.render(d) + " is not a unit", r.render(d));
    return *inv;
  };
  const auto formula = [&](const T& x1, const T& x2, const T& x3) -> Point {
    unit_or_throw(r.sub(x1, x2));
    const T d1 = unit_or_throw(r.sub(x1, x3));
    const T d2 = unit_or_throw(r.sub(x2, x3));
    // R(d1 x1 + d2 x2, d1 + d2); off the chart when d1 + d2 is not a unit.
    return point(r.add(r.mul(d1, x1), r.mul(d2, x2)), r.add(d1, d2));
  };
  if (a1 && a2 && a3) return formula(*a1, *a2, *a3);

  // Change chart by (a,b) -> (b, a - bc), which sends infinity to 0 and x to
  // (x - c)^-1; c must make every finite argument minus c a unit.
  const std::vector<const Arg*> args{&a1, &a2, &a3};
  const auto chart_ok = [&](const T& c) {
    return std::all_of(args.begin(), args.end(), [&](const Arg* x) { return !*x || r.is_unit(r.sub(**x, c)); });
  };
  std::optional<T> chart;
  if constexpr (kFinite<R>) {
    for (T c = 0; c < r.size() && !chart; ++c) {
      if (chart_ok(c)) chart = c;
    }
  } else {
    for (std::int64_t n = 0; n <= 16 && !chart; ++n) {
      if (chart_ok(r.from_int(n))) chart = r.from_int(n);
    }
  }
  if (!chart) {
    throw Error(ErrorKind::NonUnitDifference, "no chart makes all arguments finite");
  }
  const T c = *chart;
  const auto to_chart = [&](const Arg& x) { return x ? r.inverse(r.sub(*x, c)) : r.zero(); };
  const Point q = formula(to_chart(a1), to_chart(a2), to_chart(a3));
  return point(r.add(r.mul(q.a, c), q.b), q.a);
}

template <RingOps R>
bool ProjectiveLine<R>::wachs_harmonic(const T& a1, const T& a2, const T& a3, const T& a4) const {
  const R& r = *ring_;
  const auto unit_or_throw = [&](const T& d) {
    auto inv = inverse_if_unit(r, d);
    if (!inv) throw Error(ErrorKind::NonUnitDifference, r.render(d) + " is not a unit", r.render(d));
    return *inv;
  };
  const T left = unit_or_throw(r.sub(a2, a4));
  const T middle = unit_or_throw(r.sub(a1, a3));
  const T product = r.mul(r.mul(r.mul(left, r.sub(a2, a3)), middle), r.sub(a1, a4));
  return product == r.neg(r.one());
}

template <RingOps R>
std::string ProjectiveLine<R>::render(const Point& p) const {
  return "[" + ring_->render(p.a) + " : " + ring_->render(p.b) + "]";
}

template <RingOps R>
typename ProjectiveLine<R>::Point ProjectiveLine<R>::parse_point(std::string_view text) const {
  const std::string s = trim(text);
  if (s == "inf") return infinity();
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') {
    const auto parts = split_top_level(std::string_view(s).substr(1, s.size() - 2), ':');
    if (parts.size() == 2) return point(ring_->parse(parts[0]), ring_->parse(parts[1]));
  }
  return embed(ring_->parse(s));
}

template <RingOps R>
void ProjectiveLine<R>::build_points() const {
  if constexpr (!kFinite<R>) {
    throw Error(ErrorKind::InfiniteRing, staudt::render(ring_->spec()) + " is infinite");
  } else {
    std::call_once(points_once_, [this] {
      const R& r = *ring_;
      const std::size_t n = r.size();
      if (n * n > (std::size_t{1} << 22)) {
        throw Error(ErrorKind::Unsupported, staudt::render(r.spec()) + " has too many pairs to enumerate points");
      }
      std::vector<std::uint32_t> table(n * n, 0xFFFFFFFEu);
      std::vector<Point> pts;
      // Scanning pairs in increasing order meets every orbit first at its
      // least member, so points come out sorted.
      for (T a = 0; a < n; ++a) {
        for (T b = 0; b < n; ++b) {
          if (table[a * n + b] != 0xFFFFFFFEu) continue;
          const bool ok = is_admissible(a, b);
          const std::uint32_t id = ok ? static_cast<std::uint32_t>(pts.size()) : 0xFFFFFFFFu;
          if (ok) pts.push_back(Point{a, b});
          for (T u : r.units()) table[static_cast<std::size_t>(r.mul(u, a)) * n + r.mul(u, b)] = id;
        }
      }
      points_ = std::move(pts);
      pair_to_point_ = std::move(table);
    });
  }
}

template <RingOps R>
const std::vector<typename ProjectiveLine<R>::Point>& ProjectiveLine<R>::points() const {
  build_points();
  return points_;
}

template <RingOps R>
std::size_t ProjectiveLine<R>::id(const Point& p) const {
  if constexpr (!kFinite<R>) {
    (void)p;
    throw Error(ErrorKind::InfiniteRing, staudt::render(ring_->spec()) + " is infinite");
  } else {
    build_points();
    const std::uint32_t i = pair_to_point_[static_cast<std::size_t>(p.a) * ring_->size() + p.b];
    if (i == 0xFFFFFFFFu || !(points_[i] == p)) {
      throw Error(ErrorKind::NotAdmissible, render(p) + " is not a canonical point");
    }
    return i;
  }
}

template <RingOps R>
std::vector<std::vector<std::size_t>> ProjectiveLine<R>::components() const {
  const auto& pts = points();
  const std::size_t n = pts.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t start = 0; start < n; ++start) {
    if (comp[start] >= 0) continue;
    const int c = static_cast<int>(out.size());
    out.emplace_back();
    std::deque<std::size_t> queue{start};
    comp[start] = c;
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      out.back().push_back(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (comp[j] < 0 && distant(pts[i], pts[j])) {
          comp[j] = c;
          queue.push_back(j);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

template class ProjectiveLine<Ring>;
template class ProjectiveLine<FiniteRing>;

}  // namespace staudt
