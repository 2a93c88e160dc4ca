#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "staudtlab/ring.hpp"

namespace staudt {

/// A finite ring with elements identified by their index in the frozen
/// enumeration order (little-endian mixed radix over the payload atoms, so
/// index order is the element order used for canonical representatives).
///
/// Small rings (at most kTableLimit elements) keep full Cayley tables; larger
/// ones compute on demand. Throws Error(InfiniteRing) for infinite specs.
class FiniteRing {
 public:
  using value_type = std::uint32_t;
  using Index = std::uint32_t;

  static constexpr std::uint64_t kTableLimit = 1024;
  static constexpr std::uint64_t kSizeLimit = std::uint64_t{1} << 22;

  explicit FiniteRing(RingSpec spec);
  static std::shared_ptr<const FiniteRing> make(const RingSpec& spec);
  static std::shared_ptr<const FiniteRing> make(std::string_view spec_text);

  const RingSpec& spec() const { return ring_.spec(); }
  const Ring& ring() const { return ring_; }
  Index size() const { return size_; }

  Index zero() const { return 0; }
  Index one() const { return one_; }
  Index from_int(std::int64_t n) const;
  Index add(Index a, Index b) const;
  Index sub(Index a, Index b) const { return add(a, neg(b)); }
  Index neg(Index a) const;
  Index mul(Index a, Index b) const;
  Index pow(Index a, std::uint64_t e) const;

  bool is_unit(Index a) const { return inverse_of(a) != kNoInverse; }
  /// Throws Error(NonUnit).
  Index inverse(Index a) const;

  bool is_finite() const { return true; }
  bool is_commutative() const { return ring_.is_commutative(); }
  bool is_division_ring() const { return ring_.is_division_ring(); }
  bool two_is_unit() const { return ring_.two_is_unit(); }
  std::int64_t characteristic() const;

  Element element(Index a) const;
  Index index(const Element& e) const;
  std::string render(Index a) const { return ring_.render(element(a)); }
  Index parse(std::string_view text) const { return index(ring_.parse(text)); }

  /// Units in increasing index order.
  const std::vector<Index>& units() const { return units_; }
  /// Exhaustive centre, increasing.
  std::vector<Index> centre() const;
  bool is_central(Index a) const;
  /// {u a u^-1 : u a unit}, sorted.
  std::vector<Index> conjugacy_orbit(Index a) const;

 private:
  static constexpr Index kNoInverse = 0xFFFFFFFFu;
  Index inverse_of(Index a) const;
  Index encode(const std::int64_t* atoms) const;

  Ring ring_;
  RingLayout layout_;  // int64 view of the same layout
  Index size_ = 0;
  Index one_ = 0;
  std::vector<Index> add_table_;
  std::vector<Index> mul_table_;
  std::vector<Index> neg_table_;
  std::vector<Index> inverse_table_;
  std::vector<Index> units_;
  std::vector<Index> centre_tests_;
};

using FiniteRingPtr = std::shared_ptr<const FiniteRing>;

}  // namespace staudt
