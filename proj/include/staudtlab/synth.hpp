#pragma once

// Synthetic projective geometry over GF(q): the incidence structure of
// PG(2,q) and PG(3,q), harmonic quadruples from quadrangles, the geometric
// field operations on a line, perspectivities and their products.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "staudtlab/finite_ring.hpp"

namespace staudt {

using PointId = std::uint32_t;
using LineId = std::uint32_t;

/// Homogeneous coordinates (field element indices), first nonzero entry 1.
struct SynthPoint {
  std::vector<std::uint32_t> coords;

  bool operator==(const SynthPoint&) const = default;
  auto operator<=>(const SynthPoint&) const = default;
};

struct SynthLine {
  std::vector<PointId> points;                      // sorted, q+1 of them
  std::vector<std::vector<std::uint32_t>> basis;    // reduced row echelon, 2 rows
};

/// A projective subspace as a reduced row echelon basis; rank 0 is empty.
struct Subspace {
  std::vector<std::vector<std::uint32_t>> basis;

  int rank() const { return static_cast<int>(basis.size()); }
  bool operator==(const Subspace&) const = default;
};

class ProjectiveSpace {
 public:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  /// n is 2 or 3; q a prime power.
  ProjectiveSpace(int n, std::int64_t q);

  int dimension() const { return n_; }
  std::int64_t order() const { return q_; }
  const FiniteRing& field() const { return *field_; }

  std::size_t point_count() const { return points_.size(); }
  std::size_t line_count() const { return lines_.size(); }
  std::size_t plane_count() const { return planes_.size(); }
  const SynthPoint& point(PointId p) const { return points_[p]; }
  const SynthLine& line(LineId l) const { return lines_[l]; }
  const std::vector<PointId>& plane(std::size_t i) const { return planes_[i]; }

  /// Normalizes a nonzero vector; throws DegenerateArguments on zero.
  PointId id(const std::vector<std::uint32_t>& coords) const;
  std::string render(PointId p) const;
  /// "[c0:c1:c2]" or "[c0:c1:c2:c3]" with field literals.
  PointId parse_point(std::string_view text) const;
  std::string render_line(LineId l) const;

  bool incident(PointId p, LineId l) const { return incidence_[static_cast<std::size_t>(l) * points_.size() + p]; }
  /// Throws DegenerateArguments when p == q.
  LineId join(PointId p, PointId q) const;
  /// kNone for skew lines; throws DegenerateArguments when l == m.
  PointId try_meet(LineId l, LineId m) const;
  /// Throws DegenerateArguments (l == m) or NoIntersection (skew).
  PointId meet(LineId l, LineId m) const;
  /// In a plane the meet of distinct lines.
  PointId meet_in_plane(LineId l, LineId m) const;
  bool collinear(PointId a, PointId b, PointId c) const;
  /// Index of the plane through l and p (p off l).
  std::size_t plane_of(LineId l, PointId p) const;
  bool coplanar(LineId l, LineId m) const { return l != m && try_meet(l, m) != kNone; }

  Subspace span(const std::vector<PointId>& pts) const;
  Subspace span(const Subspace& a, const Subspace& b) const;
  Subspace meet(const Subspace& a, const Subspace& b) const;
  std::vector<PointId> points_of(const Subspace& s) const;
  Subspace subspace(LineId l) const;

  /// The standard line through [1:0:..] (infinity) and [0:1:0..] (zero);
  /// x sits at [x:1:0..].
  LineId chart_line() const { return chart_line_; }
  PointId chart_infinity() const { return chart_infinity_; }
  PointId chart_point(std::uint32_t x) const;
  /// nullopt for infinity; throws DegenerateArguments off the chart line.
  std::optional<std::uint32_t> chart_coordinate(PointId p) const;

 private:
  std::uint32_t key(const std::vector<std::uint32_t>& normalized) const;
  std::vector<std::uint32_t> normalize(std::vector<std::uint32_t> v) const;
  std::vector<std::vector<std::uint32_t>> rref(std::vector<std::vector<std::uint32_t>> rows) const;

  int n_;
  std::int64_t q_;
  std::shared_ptr<const FiniteRing> field_;
  std::vector<SynthPoint> points_;
  std::vector<std::uint32_t> point_by_key_;
  std::vector<SynthLine> lines_;
  std::vector<bool> incidence_;
  std::vector<LineId> join_;
  std::vector<PointId> meet_;
  std::vector<std::vector<PointId>> planes_;
  std::vector<std::uint32_t> plane_of_;  // line * points + point
  LineId chart_line_ = 0;
  PointId chart_infinity_ = 0;
};

/// Auxiliary data: q1 off the line, q2 on q1 p1 other than q1 and p1.
struct QuadrangleAux {
  PointId q1;
  PointId q2;
};

/// The quadrangle q1..q4 with p1 = q1q2 ^ q3q4, p2 = q2q3 ^ q4q1, p3 on
/// q1q3; returns the meet of q2q4 with the line. Throws
/// DegenerateArguments or DegenerateAux.
PointId quadrangle_fourth_harmonic(const ProjectiveSpace& s, PointId p1, PointId p2, PointId p3,
                                   const QuadrangleAux& aux);
std::vector<QuadrangleAux> quadrangle_aux_choices(const ProjectiveSpace& s, PointId p1, PointId p2, PointId p3);
/// Existence of a quadrangle realizing (p1,p2,p3,p4), over every aux choice.
bool is_quadrangle_harmonic(const ProjectiveSpace& s, PointId p1, PointId p2, PointId p3, PointId p4);

/// Elation data: an axis through infinity and a point off the line and axis,
/// in their plane.
struct AddAux {
  LineId axis;
  PointId point;
};

/// Perspectivity data: a line through infinity and the first centre.
struct MulAux {
  LineId line;
  PointId centre;
};

PointId geometric_add(const ProjectiveSpace& s, PointId zero, PointId inf, PointId x, PointId y, const AddAux& aux);
/// y = zero returns zero, the limit of the construction.
PointId geometric_mul(const ProjectiveSpace& s, PointId zero, PointId one, PointId inf, PointId x, PointId y,
                      const MulAux& aux);
std::vector<AddAux> add_aux_choices(const ProjectiveSpace& s, PointId zero, PointId inf);
std::vector<MulAux> mul_aux_choices(const ProjectiveSpace& s, PointId zero, PointId inf);

struct Perspectivity {
  LineId source;
  LineId target;
  PointId centre;

  bool operator==(const Perspectivity&) const = default;
};

/// Validates the centre (off both lines, in their plane); throws
/// DegenerateArguments.
Perspectivity make_perspectivity(const ProjectiveSpace& s, LineId source, LineId target, PointId centre);
PointId perspectivity_map(const ProjectiveSpace& s, const Perspectivity& p, PointId x);
/// Every perspectivity leaving a line.
std::vector<Perspectivity> perspectivities_from(const ProjectiveSpace& s, LineId source);

/// A bijection between lines; image[i] is the image of the i-th point of
/// the source line.
struct LineMap {
  LineId source;
  LineId target;
  std::vector<PointId> image;

  bool operator==(const LineMap&) const = default;
  auto operator<=>(const LineMap&) const = default;
};

LineMap identity_map(const ProjectiveSpace& s, LineId line);
PointId apply(const ProjectiveSpace& s, const LineMap& m, PointId x);
/// a then b.
LineMap compose(const ProjectiveSpace& s, const LineMap& a, const LineMap& b);
LineMap inverse(const ProjectiveSpace& s, const LineMap& m);
/// Composes left to right; an empty chain needs `line`. Throws
/// ChainMismatch.
LineMap compose_chain(const ProjectiveSpace& s, const std::vector<Perspectivity>& chain,
                      std::optional<LineId> line = std::nullopt);

struct ProjectivityState {
  LineMap map;
  std::vector<Perspectivity> word;
};

/// Every (line, map) reachable from `line` by chains of perspectivities,
/// with a shortest witness chain each. Throws BudgetExceeded.
std::vector<ProjectivityState> projectivity_closure(const ProjectiveSpace& s, LineId line, double budget = 1e7);

struct ProjectivityGroup {
  LineId line;
  std::vector<LineMap> elements;                  // sorted
  std::vector<std::vector<Perspectivity>> words;  // witness chain per element
  std::uint64_t states = 0;

  std::size_t order() const { return elements.size(); }
};

/// q <= 5 in the plane, q <= 4 in space.
ProjectivityGroup projectivity_group(const ProjectiveSpace& s, LineId line, double budget = 1e7);
/// Elements fixing every listed point.
std::vector<std::size_t> stabilizer(const ProjectiveSpace& s, const ProjectivityGroup& g,
                                    const std::vector<PointId>& fixed);
/// Every ordered triple of distinct points is the image of the first three.
bool is_triply_transitive(const ProjectiveSpace& s, const ProjectivityGroup& g);

struct AxiomReport {
  bool unique_join = true;
  bool triangle = true;
  bool three_points = true;
  std::uint64_t checks = 0;
  std::string witness;

  bool ok() const { return unique_join && triangle && three_points; }
};

/// Any two points on a unique line; a line meeting two sides of a triangle
/// off its vertices meets the third; every line has three points.
AxiomReport axiom_battery(const ProjectiveSpace& s);

struct DesarguesReport {
  bool exhaustive = false;
  bool ok = true;
  std::uint64_t configurations = 0;
  std::uint64_t rejected = 0;  // degenerate samples, resampled
  std::string witness;
};

/// Exhaustive in the plane for q <= 3, otherwise `samples` seeded draws.
DesarguesReport desargues_check(const ProjectiveSpace& s, std::uint64_t samples = 10000, std::uint64_t seed = 0);

struct SchurResult {
  bool found = false;
  std::vector<Perspectivity> factors;  // one or two
  bool skew = false;                   // source and target disjoint
  std::uint64_t candidates = 0;
};

/// A product of at most two perspectivities with the same point map as the
/// chain (source != target). Single perspectivities are tried first.
SchurResult schur_decomposition(const ProjectiveSpace& s, const std::vector<Perspectivity>& chain);

/// `steps` random perspectivities starting at `start` (random if absent).
std::vector<Perspectivity> random_chain(const ProjectiveSpace& s, std::size_t steps, std::mt19937_64& rng,
                                        std::optional<LineId> start = std::nullopt);

}  // namespace staudt
