#pragma once

// Exact arithmetic kernel shared by Ring (rational payloads) and FiniteRing
// (machine-integer payloads). An element is a flat array of atoms laid out
// by the RingLayout tree; every composite kind stores its base elements
// contiguously.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "staudtlab/ring_spec.hpp"

namespace staudt {

using Rational = boost::multiprecision::mpq_rational;

struct RingLayout {
  RingSpec spec;
  std::int64_t modulus = 0;  // Zmod n or GF p; 0 for Rational
  int size = 1;              // GF degree, Mat n, Tri r
  std::vector<std::int64_t> poly;  // GF modulus, see gf_modulus()
  std::vector<RingLayout> parts;
  std::vector<std::size_t> offsets;  // atom offset of each Sum part
  std::size_t width = 1;
  bool finite = true;
  bool commutative = true;
  /// Radix of every atom, in payload order (finite layouts only).
  std::vector<std::int64_t> radices;
  std::uint64_t count = 0;  // cardinality when it fits in 63 bits

  static RingLayout compile(const RingSpec& spec);

  RingKind kind() const { return spec.kind; }
  const RingLayout& base() const { return parts.front(); }

  /// Little-endian mixed-radix index of a finite payload (atom 0 least
  /// significant).
  std::uint64_t encode(const std::int64_t* atoms) const;
  void decode(std::uint64_t index, std::int64_t* atoms) const;
};

inline std::size_t tri_offset(int i, int j, int r) {
  return static_cast<std::size_t>(i * r - i * (i - 1) / 2 + (j - i));
}

/// Arithmetic on payloads of scalar type S (std::int64_t or Rational).
/// Output buffers must not alias inputs for mul/try_inverse.
template <class S>
struct Arith {
  static void zero(const RingLayout& L, S* out);
  static void one(const RingLayout& L, S* out);
  static void from_int(const RingLayout& L, const BigInt& value, S* out);
  static void add(const RingLayout& L, const S* a, const S* b, S* out);
  static void sub(const RingLayout& L, const S* a, const S* b, S* out);
  static void neg(const RingLayout& L, const S* a, S* out);
  static void mul(const RingLayout& L, const S* a, const S* b, S* out);
  static bool is_zero(const RingLayout& L, const S* a);
  static bool equal(const RingLayout& L, const S* a, const S* b);
  /// Writes the two-sided inverse and returns true, or returns false for a
  /// non-unit. Throws Error(Unsupported) where no decision procedure exists.
  static bool try_inverse(const RingLayout& L, const S* a, S* out);
  /// Reduces residues into [0, m) and rationals into lowest terms.
  static void canonicalize(const RingLayout& L, S* a);
  /// Scalar embedding of a base element (Quat, Mat, Tri, Dual layouts).
  static void embed(const RingLayout& L, const S* base, S* out);
};

extern template struct Arith<std::int64_t>;
extern template struct Arith<Rational>;

}  // namespace staudt
