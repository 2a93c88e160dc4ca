#pragma once

// Additive maps between rings and the (semi-/Jordan-) homomorphism
// predicates on them.
//
//   Ancochea:      (x+y)f = xf + yf,  (xy)f + (yx)f = xf yf + yf xf
//   Jordan:        (x+y)f = xf + yf,  (x^2)f = (xf)^2,  (xyx)f = xf yf xf
//   Jordan-unital: (x+y)f = xf + yf,  1f = 1,           (xyx)f = xf yf xf

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "staudtlab/finite_ring.hpp"
#include "staudtlab/ring.hpp"

namespace staudt {

enum class MapForm { Table, Identity, Inner, Scale, Transpose, Flip, Frobenius, Conj, Sum, Compose };

/// An additive map domain -> codomain, either an explicit table over a
/// finite domain or a named closed form.
///
///   identity        x
///   inner(a=A)      A^-1 x A
///   scale(a=A)      A x
///   transpose       X^T on M(n,B)
///   flip            entry (i,j) -> (n+1-j, n+1-i) on M(n,B) and T(n,B)
///   frobenius(e)    x^(p^e) on GF(p^k), 1 <= e and e | k
///   conj            w-xi-yj-zk on Quat(B)
///   sum(f1,..,fm)   componentwise on Sum(B1,..,Bm)
///   compose(f,g)    x -> f(g(x))
struct AdditiveMap {
  RingSpec domain;
  RingSpec codomain;
  MapForm form = MapForm::Identity;
  std::string parameter;  // element literal for inner/scale
  int power = 0;          // frobenius
  std::vector<AdditiveMap> children;
  std::vector<std::uint32_t> table;  // images by domain index (Table form)

  friend bool operator==(const AdditiveMap&, const AdditiveMap&) = default;
};

/// Parses the named-map syntax above against a domain spec. Throws
/// Error(InvalidParameter) for bad parameters and Error(Syntax) otherwise.
AdditiveMap parse_map(std::string_view text, const RingSpec& domain);

/// Builds a named map; same validation as parse_map.
AdditiveMap build_named_map(MapForm form, const RingSpec& domain, std::string parameter = {}, int power = 0,
                            std::vector<AdditiveMap> children = {});

AdditiveMap table_map(const FiniteRing& domain, const FiniteRing& codomain, std::vector<std::uint32_t> images);

/// Named maps render in the parse_map syntax; tables as a JSON array of
/// [x, f(x)] literal pairs.
std::string render_map(const AdditiveMap& f);

/// Table maps from JSON text of literal pairs.
AdditiveMap parse_table_map(std::string_view json_text, const FiniteRing& domain, const FiniteRing& codomain);

/// A named or table map compiled for repeated evaluation.
class MapEvaluator {
 public:
  explicit MapEvaluator(const AdditiveMap& f);
  Element operator()(const Element& x) const;

 private:
  AdditiveMap f_;
  RingPtr domain_;
  RingPtr codomain_;
  RingPtr base_;
  std::optional<Element> a_;
  std::optional<Element> a_inv_;
  FiniteRingPtr finite_domain_;
  FiniteRingPtr finite_codomain_;
  std::vector<MapEvaluator> children_;
};

Element apply(const AdditiveMap& f, const Ring& domain, const Ring& codomain, const Element& x);
/// f as a table of codomain indices, one per domain index.
std::vector<std::uint32_t> tabulate(const AdditiveMap& f, const FiniteRing& domain, const FiniteRing& codomain);

enum class VerdictMode { Exhaustive, Sampled };

struct Verdict {
  VerdictMode mode = VerdictMode::Exhaustive;
  bool ok = true;
  std::uint64_t trials = 0;
  std::string witness;  // first failing input, rendered
};

std::string_view to_string(VerdictMode mode);

enum class AxiomSet { Ancochea, Jordan, JordanUnital };

std::string_view to_string(AxiomSet axioms);
AxiomSet parse_axiom_set(std::string_view text);

enum class MapClass { Homomorphism, AntiHomomorphism, Both, Neither };

std::string_view to_string(MapClass c);

/// A tabulated map between finite rings, the working form of every finite
/// predicate.
struct FiniteMap {
  std::shared_ptr<const FiniteRing> domain;
  std::shared_ptr<const FiniteRing> codomain;
  std::vector<std::uint32_t> images;

  static FiniteMap from(const AdditiveMap& f);
  std::uint32_t operator()(std::uint32_t x) const { return images[x]; }
};

/// Finite checks scan every pair when the domain has at most
/// kPairScanLimit elements. Larger domains are decided on additive
/// generators, which is equivalent because every identity involved is
/// additive in each argument once additivity holds.
inline constexpr std::uint32_t kPairScanLimit = 1024;

Verdict check_additive(const FiniteMap& f);
Verdict check_axioms(const FiniteMap& f, AxiomSet axioms);
MapClass classify(const FiniteMap& f);

struct SampleOptions {
  std::uint64_t trials = 10000;
  std::uint64_t seed = 0;
};

/// Dispatches to the exhaustive check for finite domains and to a sampled
/// check (generator pairs plus random pairs) otherwise.
Verdict is_semi_homomorphism(const AdditiveMap& f, const SampleOptions& opts = {});
Verdict is_jordan_homomorphism(const AdditiveMap& f, bool unital, const SampleOptions& opts = {});
Verdict check_axioms(const AdditiveMap& f, AxiomSet axioms, const SampleOptions& opts = {});

/// Exhaustive for finite domains. Over infinite domains the sampled
/// classification is returned with `sampled` set.
MapClass classify_map(const AdditiveMap& f, const SampleOptions& opts = {}, bool* sampled = nullptr);

/// 2xyx = 4(x+y)^3 - (x+2y)^3 - 3x^3 + 4y^3 - 2(x^2y + yx^2) on all pairs.
Verdict kaplansky_identity_check(const FiniteRing& ring);

struct KaplanskyReport {
  RingSpec domain;
  RingSpec codomain;
  bool codomain_two_torsion_free = false;
  Verdict identity;                  // on the codomain
  std::uint64_t family_size = 0;
  std::uint64_t semi_count = 0;
  std::uint64_t semi_and_jordan = 0;
  std::optional<std::string> counterexample;  // semi but not Jordan
  bool consistent = false;  // torsion-free => all semi are Jordan
};

KaplanskyReport kaplansky_equivalence_report(const std::vector<AdditiveMap>& family);

struct EnumerationOptions {
  AxiomSet axioms = AxiomSet::Jordan;
  double budget = 1e8;
};

struct EnumerationResult {
  RingSpec spec;
  AxiomSet axioms = AxiomSet::Jordan;
  double candidates = 0;            // |GL(d,p)|, the size of the search space
  std::uint64_t nodes = 0;          // partial assignments visited
  std::vector<FiniteMap> found;     // ordered by image table
  std::vector<MapClass> classes;
};

/// Budget from STAUDTLAB_BUDGET when set, else 1e8.
double default_budget();

/// All additive bijections of a ring of prime characteristic p satisfying
/// the axiom set, found by backtracking over images of the prime-field basis
/// (atoms). Throws Error(BudgetExceeded) when |GL(d,p)| exceeds the budget.
EnumerationResult enumerate_jordan_automorphisms(const FiniteRing& ring, const EnumerationOptions& opts = {});

/// |GL(d,p)|.
double general_linear_order(int d, std::int64_t p);

struct Pairing {
  bool ok = false;
  /// image_parts[j]: indices of the components whose central idempotents
  /// sum to the image of the j-th idempotent.
  std::vector<std::vector<int>> image_parts;
  /// Classification of f restricted to component j (when image_parts[j]
  /// is a single component).
  std::vector<MapClass> restrictions;
};

/// Kaplansky pairing of a Jordan automorphism of a Sum ring, from the images
/// of the central idempotents.
Pairing kaplansky_pairing(const FiniteMap& f);

struct LemmaResult {
  bool ok = false;
  std::optional<std::uint32_t> witness;  // commutes with commutators, not central
  std::vector<std::uint32_t> centralizer;
};

/// The centralizer of {ab - ba} equals the centre.
LemmaResult ancochea_lemma_check(const FiniteRing& ring);

/// f maps the centre of the domain onto the centre of the codomain. Throws
/// Error(PreconditionFailed) when f is not a semi-homomorphism.
bool centre_invariance_check(const FiniteMap& f);

/// (ab + ba)/2; throws Error(TwoNotUnit).
Element special_jordan_product(const Ring& ring, const Element& a, const Element& b);
std::uint32_t special_jordan_product(const FiniteRing& ring, std::uint32_t a, std::uint32_t b);

}  // namespace staudt
