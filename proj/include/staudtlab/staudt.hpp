#pragma once

// Maps between projective lines that preserve harmonic quadruples, and the
// passage between such maps and Jordan homomorphisms.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "staudtlab/jordan.hpp"
#include "staudtlab/projline.hpp"

namespace staudt {

using FiniteLinePtr = std::shared_ptr<const FiniteLine>;
using RationalLinePtr = std::shared_ptr<const RationalLine>;

/// For every ordered frame (p1,p2,p3) of pairwise distant points, the unique
/// p4 with (p1,p2,p3,p4) harmonic; kNone for other triples.
class HarmonicTable {
 public:
  static constexpr std::uint32_t kNone = 0xFFFFFFFFu;

  explicit HarmonicTable(FiniteLinePtr line);

  const FiniteLine& line() const { return *line_; }
  std::size_t points() const { return n_; }
  bool distant(std::size_t i, std::size_t j) const { return distant_[i * n_ + j]; }
  std::uint32_t fourth(std::size_t i, std::size_t j, std::size_t k) const { return fourth_[(i * n_ + j) * n_ + k]; }

 private:
  FiniteLinePtr line_;
  std::size_t n_;
  std::vector<bool> distant_;
  std::vector<std::uint32_t> fourth_;
};

/// A map between finite lines given by point ids; points outside its domain
/// (e.g. other distant-graph components) map to kUndefined.
struct FiniteLineMap {
  static constexpr std::uint32_t kUndefined = 0xFFFFFFFFu;

  FiniteLinePtr domain;
  FiniteLinePtr codomain;
  std::vector<std::uint32_t> image;

  bool defined(std::size_t p) const { return image[p] != kUndefined; }
  std::size_t defined_count() const;
};

FiniteLineMap identity_line_map(const FiniteLinePtr& line);

/// x -> f(x), infinity -> infinity, for an additive self-map of a finite
/// division ring.
FiniteLineMap scalar_line_map(const FiniteLinePtr& line, const AdditiveMap& f);

/// The frame-fixing scalar form over an infinite division ring.
struct InducedLineMap {
  RationalLinePtr line;
  AdditiveMap f;

  ProjPoint<Element> operator()(const ProjPoint<Element>& p) const;
};

InducedLineMap induced_line_map(const RationalLinePtr& line, const AdditiveMap& f);

/// Checks every harmonic quadruple inside the map's domain.
Verdict is_harmonicity_preserver(const FiniteLineMap& m, const HarmonicTable& table);
Verdict is_harmonicity_preserver(const FiniteLineMap& m);
/// Random frames with sampled elements (numerators and denominators bounded
/// by 10), an occasional infinity, and the fourth harmonic point.
Verdict is_harmonicity_preserver(const InducedLineMap& m, const SampleOptions& opts = {});

/// Restriction to the affine chart of a frame-fixing preserver. Throws
/// FrameNotFixed, CharacteristicTwo, or PreconditionFailed.
AdditiveMap induced_scalar_map(const FiniteLineMap& m);
AdditiveMap induced_scalar_map(const InducedLineMap& m);

struct PreserverEnumeration {
  std::vector<FiniteLineMap> maps;  // ordered by image table
  std::uint64_t nodes = 0;
};

/// All harmonicity-preserving bijections of the line over GF(q) fixing
/// 0, 1 and infinity; q odd and at most 13.
PreserverEnumeration enumerate_preservers_fixing_frame(const FiniteLinePtr& line, double budget = 1e8);

struct NaiveWitness {
  std::string pair;         // (a, b)
  std::string unit;         // u
  std::string image;        // point of (f(a), f(b))
  std::string scaled_image; // point of (f(ua), f(ub))
};

struct NaiveExtension {
  std::optional<FiniteLineMap> map;
  std::optional<NaiveWitness> witness;
};

/// The coordinatewise rule R(a,b) -> R(f(a), f(b)) if it is constant on
/// unit orbits, else the first orbit pair that breaks it.
NaiveExtension naive_extension(const AdditiveMap& f);

struct BartoloneExtension {
  FiniteLineMap map;
  std::size_t component = 0;     // index into components()
  std::uint64_t states = 0;      // (vector, image vector) pairs visited
  bool bijective = false;        // onto its image component
  Verdict harmonic;
};

/// Extends a Jordan automorphism to the distant-graph component of the
/// frame by closing R(0,1) under v -> (b, a + b t), paired with
/// v' -> (b', a' + b' f(t)); two steps give R(x, 1+xy) -> R'(xf, 1'+xf yf).
/// Throws NotJordan, PreconditionFailed (component without the frame), or
/// InconsistentParameterization.
BartoloneExtension bartolone_extension(const AdditiveMap& f, std::size_t component = 0);

struct HuaReport {
  RingSpec spec;
  bool applicable = true;
  std::string notice;
  VerdictMode mode = VerdictMode::Exhaustive;
  std::uint64_t preservers = 0;        // frame-fixing preservers examined
  std::uint64_t preservers_ok = 0;     // whose scalar map is hom or anti
  std::uint64_t maps = 0;              // (anti-)automorphisms examined
  std::uint64_t maps_ok = 0;           // whose line map preserves harmonicity
  bool ok = false;
};

/// Finite GF(q), q odd: every enumerated preserver restricts to an
/// (anti-)automorphism and every Jordan automorphism extends to a
/// preserver. Quat(Q): the named maps are checked by sampling; each sampled
/// frame costs milliseconds, hence the smaller default.
HuaReport hua_roundtrip_check(const RingSpec& spec, const std::vector<AdditiveMap>& named = {},
                              const SampleOptions& opts = {500, 0});

}  // namespace staudt
