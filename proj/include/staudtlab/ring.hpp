#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "staudtlab/arith.hpp"
#include "staudtlab/ring_spec.hpp"

namespace staudt {

/// An exact ring element in canonical form: residues reduced into [0, m),
/// rationals in lowest terms. The owning ring is passed alongside.
struct Element {
  std::vector<Rational> atoms;

  friend bool operator==(const Element&, const Element&) = default;
  friend bool operator<(const Element& a, const Element& b) { return a.atoms < b.atoms; }
};

/// Common surface of Ring (Element values) and FiniteRing (index values),
/// so the geometry can run over either.
template <class R>
concept RingOps = requires(const R& r, const typename R::value_type& a) {
  { r.zero() } -> std::same_as<typename R::value_type>;
  { r.one() } -> std::same_as<typename R::value_type>;
  { r.add(a, a) } -> std::same_as<typename R::value_type>;
  { r.sub(a, a) } -> std::same_as<typename R::value_type>;
  { r.neg(a) } -> std::same_as<typename R::value_type>;
  { r.mul(a, a) } -> std::same_as<typename R::value_type>;
  { r.is_unit(a) } -> std::same_as<bool>;
  { r.inverse(a) } -> std::same_as<typename R::value_type>;
  { r.render(a) } -> std::same_as<std::string>;
  { r.is_finite() } -> std::same_as<bool>;
  { r.is_commutative() } -> std::same_as<bool>;
  { r.is_division_ring() } -> std::same_as<bool>;
  { r.two_is_unit() } -> std::same_as<bool>;
};

/// A concrete unital ring built from a RingSpec. Immutable and safe to
/// share between threads.
class Ring {
 public:
  using value_type = Element;

  explicit Ring(RingSpec spec);
  static std::shared_ptr<const Ring> make(const RingSpec& spec);
  static std::shared_ptr<const Ring> make(std::string_view spec_text);

  const RingSpec& spec() const { return layout_.spec; }
  const RingLayout& layout() const { return layout_; }
  std::size_t width() const { return layout_.width; }

  Element zero() const;
  Element one() const;
  Element from_int(const BigInt& n) const;
  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  Element mul(const Element& a, const Element& b) const;
  /// a^e; negative exponents invert first.
  Element pow(const Element& a, long e) const;
  bool is_zero(const Element& a) const;

  std::optional<Element> try_inverse(const Element& a) const;
  bool is_unit(const Element& a) const { return try_inverse(a).has_value(); }
  /// Throws Error(NonUnit) with the rendered element as witness.
  Element inverse(const Element& a) const;

  bool is_finite() const { return layout_.finite; }
  bool is_commutative() const { return layout_.commutative; }
  bool is_division_ring() const { return division_; }
  bool two_is_unit() const { return two_unit_; }
  BigInt characteristic() const { return staudt::characteristic(spec()); }
  Cardinality cardinality() const { return staudt::cardinality(spec()); }

  /// Reduces an arbitrary payload to canonical form.
  Element canonical(Element a) const;

  std::string render(const Element& a) const;
  /// Parses an element literal or arithmetic expression (see expr.hpp).
  Element parse(std::string_view text) const;

  /// Elements such that commuting with all of them is equivalent to being
  /// central (e.g. {i, j} for quaternions, the matrix units for M(n,.)).
  std::vector<Element> centre_test_set() const;
  bool is_central(const Element& a) const;

  /// Reduced trace and norm of a quaternion over a commutative base,
  /// returned as scalar quaternions. Empty for other kinds.
  std::optional<std::pair<Element, Element>> reduced_trace_norm(const Element& a) const;

  /// Embeds an element of the base ring as a scalar (Quat, Mat, Tri, Dual).
  Element embed_scalar(const Element& base_element) const;

  /// Uniform residues for modular atoms; rationals n/d with |n| <= bound,
  /// 1 <= d <= bound.
  Element random(std::mt19937_64& rng, int bound = 10) const;

 private:
  RingLayout layout_;
  bool division_;
  bool two_unit_;
};

using RingPtr = std::shared_ptr<const Ring>;

/// Arithmetic expression evaluation in a ring; same as ring.parse(text).
Element eval_expr(const Ring& ring, std::string_view text);

}  // namespace staudt
