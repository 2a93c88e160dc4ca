#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace staudt {

using BigInt = boost::multiprecision::mpz_int;

enum class RingKind { Zmod, GF, Rational, Quat, Mat, Tri, Dual, Sum };

/// Constructor tree describing a concrete unital ring.
///
///   Zmod(n)      integers mod n, n >= 2          "Z(n)"
///   GF(p, k)     field with p^k elements          "GF(p)", "GF(p^k)", "GF(q)"
///   Rational     the rationals                    "Q"
///   Quat(B)      B + Bi + Bj + Bk, i^2 = j^2 = -1 "Quat(B)"
///   Mat(n, B)    n x n matrices, 1 <= n <= 3      "M(n,B)"
///   Tri(r, B)    upper triangular, 2 <= r <= 3    "T(r,B)"
///   Dual(B)      B[eps]/(eps^2)                   "Dual(B)"
///   Sum(B1..Bm)  direct sum, m >= 2               "Sum(B1,...,Bm)"
struct RingSpec {
  RingKind kind = RingKind::Rational;
  std::int64_t n = 0;  // modulus for Zmod, prime for GF, size for Mat/Tri
  int k = 1;           // degree for GF
  std::vector<RingSpec> parts;

  static RingSpec zmod(std::int64_t n);
  static RingSpec gf(std::int64_t p, int k = 1);
  static RingSpec rational();
  static RingSpec quat(RingSpec base);
  static RingSpec mat(int n, RingSpec base);
  static RingSpec tri(int r, RingSpec base);
  static RingSpec dual(RingSpec base);
  static RingSpec sum(std::vector<RingSpec> parts);

  const RingSpec& base() const { return parts.front(); }

  friend bool operator==(const RingSpec&, const RingSpec&) = default;
};

/// Parses the ring-spec grammar. Throws Error(Syntax) with the offending
/// position, or Error(Semantic) for out-of-range parameters.
RingSpec parse_ring_spec(std::string_view text);

/// Canonical rendering; parse_ring_spec(render(s)) == s.
std::string render(const RingSpec& spec);

struct Cardinality {
  bool infinite = false;
  BigInt value = 0;  // meaningful only when finite
};

Cardinality cardinality(const RingSpec& spec);

/// Additive order of 1, or 0 when it is infinite.
BigInt characteristic(const RingSpec& spec);

bool is_finite(const RingSpec& spec);
bool is_commutative(const RingSpec& spec);
/// True for the kinds where every nonzero element is a unit.
bool is_division_ring(const RingSpec& spec);
bool two_is_unit(const RingSpec& spec);

bool is_prime(std::int64_t n);

/// Coefficients c_0..c_{k-1} of the monic irreducible x^k + c_{k-1}x^{k-1} +
/// ... + c_0 over GF(p) used to build GF(p^k). It is the least such
/// polynomial when read as the integer sum c_i p^i.
std::vector<std::int64_t> gf_modulus(std::int64_t p, int k);

}  // namespace staudt
