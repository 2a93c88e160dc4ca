#pragma once

// The projective line over a ring: points are left unit orbits R(a,b) of
// admissible pairs, i.e. rows that extend to an invertible 2x2 matrix.
//
//   infinity = R(1,0)   0 = R(0,1)   1 = R(1,1)   embed(x) = R(x,1)
//
// A point R(a,b) with b a unit has affine coordinate b^-1 a.

#include <compare>
#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "staudtlab/finite_ring.hpp"
#include "staudtlab/ring.hpp"

namespace staudt {

template <class T>
struct ProjPoint {
  T a;
  T b;

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend bool operator<(const ProjPoint& p, const ProjPoint& q) {
    if (p.a < q.a) return true;
    if (q.a < p.a) return false;
    return p.b < q.b;
  }
};

enum class CrossRatioMode { Plain, Orbit, TraceNorm };

std::string_view to_string(CrossRatioMode mode);

/// A unit-conjugacy class. `key` identifies the class: the element itself
/// (Plain), its sorted conjugacy orbit (Orbit), or reduced trace and norm
/// (TraceNorm).
template <class T>
struct CrossRatio {
  CrossRatioMode mode = CrossRatioMode::Plain;
  T representative{};
  std::vector<T> key;

  friend bool operator==(const CrossRatio& x, const CrossRatio& y) {
    return x.mode == y.mode && x.key == y.key;
  }
};

/// Row-major 2x2 matrix over a ring.
template <class T>
struct Mat2 {
  T a, b, c, d;
};

template <RingOps R>
class ProjectiveLine {
 public:
  using T = typename R::value_type;
  using Point = ProjPoint<T>;
  /// A scalar or infinity (nullopt), as accepted by fourth_harmonic.
  using Arg = std::optional<T>;

  explicit ProjectiveLine(std::shared_ptr<const R> ring);

  const R& ring() const { return *ring_; }
  std::shared_ptr<const R> ring_ptr() const { return ring_; }

  /// Throws Error(InfiniteRing) when neither coordinate is a unit over an
  /// infinite ring that is not a division ring.
  bool is_admissible(const T& a, const T& b) const;
  /// Canonical representative of R(a,b); throws Error(NotAdmissible).
  Point point(const T& a, const T& b) const;

  Point embed(const T& x) const;
  Point infinity() const;
  Point zero_point() const { return embed(ring_->zero()); }
  Point one_point() const { return embed(ring_->one()); }

  std::optional<T> try_affine(const Point& p) const;
  /// Throws Error(NotAffine).
  T affine_coordinate(const Point& p) const;

  bool is_invertible(const Mat2<T>& m) const;
  std::optional<Mat2<T>> inverse(const Mat2<T>& m) const;
  bool distant(const Point& p, const Point& q) const;

  /// Class of x2^-1 x1 where p1 = Rw1, p2 = Rw2, p3 = R(w1+w2) and
  /// p4 = R(x1 w1 + x2 w2). Throws FrameDegenerate or NotResolvable.
  CrossRatio<T> cross_ratio(const Point& p1, const Point& p2, const Point& p3, const Point& p4) const;
  /// The conjugacy class of x in the mode this ring uses.
  CrossRatio<T> class_of(const T& x) const;
  CrossRatioMode mode() const { return mode_; }

  /// Cross ratio equal to -1. Throws as cross_ratio.
  bool is_harmonic(const Point& p1, const Point& p2, const Point& p3, const Point& p4) const;
  /// Total version: false whenever p1, p2, p3 are not pairwise distant or
  /// p4 is not distant from p1 and p2.
  bool harmonic_relation(const Point& p1, const Point& p2, const Point& p3, const Point& p4) const;
  /// R(w2 - w1) for the frame vectors of (p1, p2, p3).
  Point fourth_harmonic_point(const Point& p1, const Point& p2, const Point& p3) const;

  /// Fourth harmonic point by the inverse-sum formula, with a change of chart
  /// when an argument is infinity. Throws TwoNotUnit or NonUnitDifference.
  Point fourth_harmonic(const Arg& a1, const Arg& a2, const Arg& a3) const;

  /// (a2-a4)^-1 (a2-a3) (a1-a3)^-1 (a1-a4) == -1, evaluated in that order.
  bool wachs_harmonic(const T& a1, const T& a2, const T& a3, const T& a4) const;

  std::string render(const Point& p) const;
  /// "[a : b]", "inf", or a bare element literal x meaning embed(x).
  Point parse_point(std::string_view text) const;

  // Finite rings only; these throw Error(InfiniteRing) otherwise.

  /// All points in increasing order of their representatives.
  const std::vector<Point>& points() const;
  std::size_t id(const Point& p) const;
  /// Connected components of the distant graph as sorted point-id lists,
  /// ordered by least member.
  std::vector<std::vector<std::size_t>> components() const;

 private:
  T search_unit_shift(const T& a, const T& b, bool& found) const;
  void build_points() const;

  std::shared_ptr<const R> ring_;
  CrossRatioMode mode_;

  mutable std::once_flag points_once_;
  mutable std::vector<Point> points_;
  mutable std::vector<std::uint32_t> pair_to_point_;  // finite, small rings
  mutable std::unordered_map<std::uint64_t, std::size_t> point_ids_;
};

extern template class ProjectiveLine<Ring>;
extern template class ProjectiveLine<FiniteRing>;

using RationalLine = ProjectiveLine<Ring>;
using FiniteLine = ProjectiveLine<FiniteRing>;

}  // namespace staudt
