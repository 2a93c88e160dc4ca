#include "staudtlab/arith.hpp"

#include <type_traits>

#include "staudtlab/errors.hpp"

namespace staudt {

namespace {

using i64 = std::int64_t;
using i128 = __int128;

i64 mod_norm(i128 v, i64 m) {
  i128 r = v % m;
  return static_cast<i64>(r < 0 ? r + m : r);
}

bool mod_inverse(i64 a, i64 m, i64& out) {
  i64 old_r = a, r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) return false;
  out = mod_norm(old_s, m);
  return true;
}

// Atom-level operations. A modulus of 0 marks a rational atom.
i64 atom_add(i64 a, i64 b, i64 m) { return mod_norm(static_cast<i128>(a) + b, m); }
i64 atom_sub(i64 a, i64 b, i64 m) { return mod_norm(static_cast<i128>(a) - b, m); }
i64 atom_mul(i64 a, i64 b, i64 m) { return mod_norm(static_cast<i128>(a) * b, m); }
bool atom_inverse(i64 a, i64 m, i64& out) { return mod_inverse(a, m, out); }
i64 atom_from(const BigInt& v, i64 m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return static_cast<i64>(r);
}

i64 residue(const Rational& r) { return static_cast<i64>(boost::multiprecision::numerator(r)); }

Rational atom_add(const Rational& a, const Rational& b, i64 m) {
  return m == 0 ? Rational(a + b) : Rational(atom_add(residue(a), residue(b), m));
}
Rational atom_sub(const Rational& a, const Rational& b, i64 m) {
  return m == 0 ? Rational(a - b) : Rational(atom_sub(residue(a), residue(b), m));
}
Rational atom_mul(const Rational& a, const Rational& b, i64 m) {
  return m == 0 ? Rational(a * b) : Rational(atom_mul(residue(a), residue(b), m));
}
bool atom_inverse(const Rational& a, i64 m, Rational& out) {
  if (m == 0) {
    if (a == 0) return false;
    out = 1 / a;
    return true;
  }
  i64 inv = 0;
  if (!mod_inverse(residue(a), m, inv)) return false;
  out = inv;
  return true;
}

template <class S>
S atom_from_big(const BigInt& v, i64 m);
template <>
i64 atom_from_big<i64>(const BigInt& v, i64 m) {
  return atom_from(v, m);
}
template <>
Rational atom_from_big<Rational>(const BigInt& v, i64 m) {
  return m == 0 ? Rational(v) : Rational(atom_from(v, m));
}

template <class S>
void atom_canonical(S& v, i64 m);
template <>
void atom_canonical<i64>(i64& v, i64 m) {
  v = mod_norm(v, m);
}
template <>
void atom_canonical<Rational>(Rational& v, i64 m) {
  if (m == 0) return;  // cpp_rational is kept in lowest terms
  BigInt num = boost::multiprecision::numerator(v);
  BigInt den = boost::multiprecision::denominator(v);
  if (den != 1) {
    i64 inv = 0;
    if (!mod_inverse(atom_from(den, m), m, inv)) {
      throw Error(ErrorKind::NonUnit, "denominator is not invertible modulo " + std::to_string(m));
    }
    v = atom_mul(atom_from(num, m), inv, m);
  } else {
    v = atom_from(num, m);
  }
}

bool is_atom_kind(RingKind k) { return k == RingKind::Zmod || k == RingKind::Rational; }

}  // namespace

RingLayout RingLayout::compile(const RingSpec& spec) {
  RingLayout L;
  L.spec = spec;
  switch (spec.kind) {
    case RingKind::Zmod:
      L.modulus = spec.n;
      L.width = 1;
      L.radices = {spec.n};
      break;
    case RingKind::GF:
      L.modulus = spec.n;
      L.size = spec.k;
      L.poly = gf_modulus(spec.n, spec.k);
      L.width = static_cast<std::size_t>(spec.k);
      L.radices.assign(L.width, spec.n);
      break;
    case RingKind::Rational:
      L.modulus = 0;
      L.width = 1;
      L.finite = false;
      break;
    case RingKind::Sum: {
      std::size_t offset = 0;
      for (const RingSpec& part : spec.parts) {
        L.parts.push_back(compile(part));
        L.offsets.push_back(offset);
        offset += L.parts.back().width;
      }
      L.width = offset;
      break;
    }
    default: {
      L.parts.push_back(compile(spec.base()));
      L.size = static_cast<int>(spec.n);
      std::size_t copies = 0;
      switch (spec.kind) {
        case RingKind::Quat: copies = 4; break;
        case RingKind::Mat: copies = static_cast<std::size_t>(spec.n * spec.n); break;
        case RingKind::Tri: copies = static_cast<std::size_t>(spec.n * (spec.n + 1) / 2); break;
        case RingKind::Dual: copies = 2; break;
        default: break;
      }
      L.width = copies * L.base().width;
      break;
    }
  }
  if (!L.parts.empty()) {
    L.finite = true;
    for (const RingLayout& p : L.parts) L.finite = L.finite && p.finite;
    if (L.finite) {
      if (spec.kind == RingKind::Sum) {
        for (const RingLayout& p : L.parts) L.radices.insert(L.radices.end(), p.radices.begin(), p.radices.end());
      } else {
        const std::size_t copies = L.width / L.base().width;
        for (std::size_t c = 0; c < copies; ++c) {
          L.radices.insert(L.radices.end(), L.base().radices.begin(), L.base().radices.end());
        }
      }
    }
  }
  L.commutative = is_commutative(spec);
  if (L.finite) {
    Cardinality c = cardinality(spec);
    L.count = c.value < (BigInt(1) << 62) ? static_cast<std::uint64_t>(c.value) : 0;
  }
  return L;
}

std::uint64_t RingLayout::encode(const std::int64_t* atoms) const {
  std::uint64_t index = 0;
  for (std::size_t i = radices.size(); i-- > 0;) {
    index = index * static_cast<std::uint64_t>(radices[i]) + static_cast<std::uint64_t>(atoms[i]);
  }
  return index;
}

void RingLayout::decode(std::uint64_t index, std::int64_t* atoms) const {
  for (std::size_t i = 0; i < radices.size(); ++i) {
    const auto r = static_cast<std::uint64_t>(radices[i]);
    atoms[i] = static_cast<std::int64_t>(index % r);
    index /= r;
  }
}

namespace {

template <class S>
using Buf = std::vector<S>;

template <class S>
struct Impl {
  using A = Arith<S>;

  // GF(p^k) block product: schoolbook multiply, then reduce with
  // x^k = -(c_0 + c_1 x + ... + c_{k-1} x^{k-1}).
  static void gf_mul(const RingLayout& L, const S* a, const S* b, S* out) {
    const int k = L.size;
    const i64 p = L.modulus;
    Buf<S> prod(static_cast<std::size_t>(2 * k - 1), S(0));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        prod[i + j] = atom_add(prod[i + j], atom_mul(a[i], b[j], p), p);
      }
    }
    for (int top = 2 * k - 2; top >= k; --top) {
      S f = prod[top];
      if (f == 0) continue;
      for (int i = 0; i < k; ++i) {
        prod[top - k + i] = atom_sub(prod[top - k + i], atom_mul(f, S(L.poly[i]), p), p);
      }
      prod[top] = 0;
    }
    for (int i = 0; i < k; ++i) out[i] = prod[i];
  }

  static bool gf_inverse(const RingLayout& L, const S* a, S* out) {
    if (A::is_zero(L, a)) return false;
    if (L.size == 1) return atom_inverse(a[0], L.modulus, out[0]);
    // a^(q-2) by square-and-multiply.
    std::uint64_t e = L.count - 2;
    Buf<S> result(L.width), base(a, a + L.width), tmp(L.width);
    A::one(L, result.data());
    while (e > 0) {
      if (e & 1U) {
        gf_mul(L, result.data(), base.data(), tmp.data());
        result.swap(tmp);
      }
      gf_mul(L, base.data(), base.data(), tmp.data());
      base.swap(tmp);
      e >>= 1U;
    }
    std::copy(result.begin(), result.end(), out);
    return true;
  }

  // Generic finite fallback: a is a unit iff x -> a x is a bijection of the
  // carrier; the inverse is the preimage of 1.
  static bool search_inverse(const RingLayout& L, const S* a, S* out);

  static bool quat_inverse(const RingLayout& L, const S* a, S* out) {
    const RingLayout& B = L.base();
    const std::size_t w = B.width;
    if (!B.commutative) {
      if (L.finite) return search_inverse(L, a, out);
      throw Error(ErrorKind::Unsupported, "quaternion inverse over a noncommutative infinite base");
    }
    Buf<S> norm(w), sq(w), tmp(w), ninv(w);
    A::zero(B, norm.data());
    for (int c = 0; c < 4; ++c) {
      A::mul(B, a + c * w, a + c * w, sq.data());
      A::add(B, norm.data(), sq.data(), tmp.data());
      norm.swap(tmp);
    }
    if (!A::try_inverse(B, norm.data(), ninv.data())) return false;
    for (int c = 0; c < 4; ++c) {
      if (c == 0) {
        A::mul(B, a, ninv.data(), out);
      } else {
        A::neg(B, a + c * w, tmp.data());
        A::mul(B, tmp.data(), ninv.data(), out + c * w);
      }
    }
    return true;
  }

  static void det2(const RingLayout& B, const S* a, const S* b, const S* c, const S* d, S* out) {
    Buf<S> ad(B.width), bc(B.width);
    A::mul(B, a, d, ad.data());
    A::mul(B, b, c, bc.data());
    A::sub(B, ad.data(), bc.data(), out);
  }

  static bool mat_inverse(const RingLayout& L, const S* a, S* out) {
    const RingLayout& B = L.base();
    const std::size_t w = B.width;
    const int n = L.size;
    if (n == 1) return A::try_inverse(B, a, out);
    if (!B.commutative) {
      if (L.finite) return search_inverse(L, a, out);
      throw Error(ErrorKind::Unsupported, "matrix inverse over a noncommutative infinite base");
    }
    auto at = [&](int i, int j) { return a + (i * n + j) * w; };
    // Adjugate formula: inverse = det^{-1} adj(a).
    Buf<S> cof(static_cast<std::size_t>(n * n) * w);
    auto cf = [&](int i, int j) { return cof.data() + (i * n + j) * w; };
    if (n == 2) {
      std::copy(at(1, 1), at(1, 1) + w, cf(0, 0));
      A::neg(B, at(1, 0), cf(0, 1));
      A::neg(B, at(0, 1), cf(1, 0));
      std::copy(at(0, 0), at(0, 0) + w, cf(1, 1));
    } else {
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
          // Cyclic minors already carry the cofactor sign.
          det2(B, at(r0, c0), at(r0, c1), at(r1, c0), at(r1, c1), cf(i, j));
        }
      }
    }
    Buf<S> det(w), tmp(w), dinv(w);
    A::zero(B, det.data());
    for (int j = 0; j < n; ++j) {
      A::mul(B, at(0, j), cf(0, j), tmp.data());
      Buf<S> acc(w);
      A::add(B, det.data(), tmp.data(), acc.data());
      det.swap(acc);
    }
    if (!A::try_inverse(B, det.data(), dinv.data())) return false;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        A::mul(B, cf(j, i), dinv.data(), out + (i * n + j) * w);
      }
    }
    return true;
  }

  static bool tri_inverse(const RingLayout& L, const S* a, S* out) {
    const RingLayout& B = L.base();
    const std::size_t w = B.width;
    const int r = L.size;
    if (!B.commutative && L.finite) return search_inverse(L, a, out);
    auto at = [&](const S* m, int i, int j) { return m + tri_offset(i, j, r) * w; };
    auto mut = [&](S* m, int i, int j) { return m + tri_offset(i, j, r) * w; };
    Buf<S> diag_inv(static_cast<std::size_t>(r) * w);
    for (int i = 0; i < r; ++i) {
      if (!A::try_inverse(B, at(a, i, i), diag_inv.data() + i * w)) return false;
    }
    // Right inverse by back substitution: X_ij = -a_ii^{-1} sum_{i<k<=j} a_ik X_kj.
    Buf<S> tmp(w), acc(w), sum(w);
    for (int j = 0; j < r; ++j) {
      std::copy(diag_inv.data() + j * w, diag_inv.data() + (j + 1) * w, mut(out, j, j));
      for (int i = j - 1; i >= 0; --i) {
        A::zero(B, sum.data());
        for (int k = i + 1; k <= j; ++k) {
          A::mul(B, at(a, i, k), at(out, k, j), tmp.data());
          A::add(B, sum.data(), tmp.data(), acc.data());
          sum.swap(acc);
        }
        A::mul(B, diag_inv.data() + i * w, sum.data(), tmp.data());
        A::neg(B, tmp.data(), mut(out, i, j));
      }
    }
    return true;
  }
};

// In a finite ring the powers 1, a, a^2, ... are eventually periodic, and a
// is a unit exactly when the sequence is purely periodic; then a^-1 is
// a^(period-1). Brent's cycle detection keeps this at O(period + tail)
// multiplications, far below a scan of the carrier.
template <>
bool Impl<i64>::search_inverse(const RingLayout& L, const i64* a, i64* out) {
  if (!L.finite) throw Error(ErrorKind::Unsupported, "no inverse procedure for this ring");
  const std::uint64_t limit = L.count == 0 ? (std::uint64_t{1} << 32) : L.count + 1;
  Buf<i64> tortoise(L.width), hare(L.width), tmp(L.width);
  Arith<i64>::one(L, tortoise.data());
  Arith<i64>::mul(L, tortoise.data(), a, hare.data());
  std::uint64_t power = 1, period = 1;
  while (tortoise != hare) {
    if (power == period) {
      tortoise = hare;
      power *= 2;
      period = 0;
    }
    Arith<i64>::mul(L, hare.data(), a, tmp.data());
    hare.swap(tmp);
    if (++period > limit) throw Error(ErrorKind::Unsupported, "power sequence did not cycle");
  }
  // 1 is the first term, so it lies on the cycle iff a^period == 1.
  Buf<i64> x(L.width);
  Arith<i64>::one(L, x.data());
  for (std::uint64_t i = 0; i < period; ++i) {
    Arith<i64>::mul(L, x.data(), a, tmp.data());
    x.swap(tmp);
  }
  Buf<i64> one(L.width);
  Arith<i64>::one(L, one.data());
  if (x != one) return false;
  Arith<i64>::one(L, x.data());
  for (std::uint64_t i = 0; i + 1 < period; ++i) {
    Arith<i64>::mul(L, x.data(), a, tmp.data());
    x.swap(tmp);
  }
  std::copy(x.begin(), x.end(), out);
  return true;
}

template <>
bool Impl<Rational>::search_inverse(const RingLayout& L, const Rational* a, Rational* out) {
  Buf<i64> small(L.width), inv(L.width);
  for (std::size_t i = 0; i < L.width; ++i) small[i] = residue(a[i]);
  if (!Impl<i64>::search_inverse(L, small.data(), inv.data())) return false;
  for (std::size_t i = 0; i < L.width; ++i) out[i] = inv[i];
  return true;
}

}  // namespace

template <class S>
void Arith<S>::zero(const RingLayout& L, S* out) {
  for (std::size_t i = 0; i < L.width; ++i) out[i] = S(0);
}

template <class S>
void Arith<S>::one(const RingLayout& L, S* out) {
  from_int(L, 1, out);
}

template <class S>
void Arith<S>::from_int(const RingLayout& L, const BigInt& value, S* out) {
  zero(L, out);
  switch (L.kind()) {
    case RingKind::Zmod:
    case RingKind::GF:
    case RingKind::Rational:
      out[0] = atom_from_big<S>(value, L.modulus);
      return;
    case RingKind::Quat:
    case RingKind::Dual:
      from_int(L.base(), value, out);
      return;
    case RingKind::Mat:
      for (int i = 0; i < L.size; ++i) from_int(L.base(), value, out + (i * L.size + i) * L.base().width);
      return;
    case RingKind::Tri:
      for (int i = 0; i < L.size; ++i) from_int(L.base(), value, out + tri_offset(i, i, L.size) * L.base().width);
      return;
    case RingKind::Sum:
      for (std::size_t p = 0; p < L.parts.size(); ++p) from_int(L.parts[p], value, out + L.offsets[p]);
      return;
  }
}

template <class S>
void Arith<S>::add(const RingLayout& L, const S* a, const S* b, S* out) {
  if (is_atom_kind(L.kind()) || L.kind() == RingKind::GF) {
    for (std::size_t i = 0; i < L.width; ++i) out[i] = atom_add(a[i], b[i], L.modulus);
    return;
  }
  if (L.kind() == RingKind::Sum) {
    for (std::size_t p = 0; p < L.parts.size(); ++p) {
      add(L.parts[p], a + L.offsets[p], b + L.offsets[p], out + L.offsets[p]);
    }
    return;
  }
  const std::size_t w = L.base().width;
  for (std::size_t off = 0; off < L.width; off += w) add(L.base(), a + off, b + off, out + off);
}

template <class S>
void Arith<S>::neg(const RingLayout& L, const S* a, S* out) {
  Buf<S> z(L.width);
  zero(L, z.data());
  sub(L, z.data(), a, out);
}

template <class S>
void Arith<S>::sub(const RingLayout& L, const S* a, const S* b, S* out) {
  if (is_atom_kind(L.kind()) || L.kind() == RingKind::GF) {
    for (std::size_t i = 0; i < L.width; ++i) out[i] = atom_sub(a[i], b[i], L.modulus);
    return;
  }
  if (L.kind() == RingKind::Sum) {
    for (std::size_t p = 0; p < L.parts.size(); ++p) {
      sub(L.parts[p], a + L.offsets[p], b + L.offsets[p], out + L.offsets[p]);
    }
    return;
  }
  const std::size_t w = L.base().width;
  for (std::size_t off = 0; off < L.width; off += w) sub(L.base(), a + off, b + off, out + off);
}

template <class S>
void Arith<S>::mul(const RingLayout& L, const S* a, const S* b, S* out) {
  switch (L.kind()) {
    case RingKind::Zmod:
    case RingKind::Rational:
      out[0] = atom_mul(a[0], b[0], L.modulus);
      return;
    case RingKind::GF:
      Impl<S>::gf_mul(L, a, b, out);
      return;
    case RingKind::Sum:
      for (std::size_t p = 0; p < L.parts.size(); ++p) {
        mul(L.parts[p], a + L.offsets[p], b + L.offsets[p], out + L.offsets[p]);
      }
      return;
    default: break;
  }
  const RingLayout& B = L.base();
  if constexpr (std::is_same_v<S, Rational>) {
    if (L.kind() == RingKind::Quat && B.kind() == RingKind::Rational) {
      // The hot path of the sampled quaternion checks.
      Rational w0 = a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
      Rational w1 = a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2];
      Rational w2 = a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1];
      Rational w3 = a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0];
      out[0] = std::move(w0);
      out[1] = std::move(w1);
      out[2] = std::move(w2);
      out[3] = std::move(w3);
      return;
    }
  }
  const std::size_t w = B.width;
  Buf<S> t(w), acc(w);
  auto accumulate = [&](S* dst, const S* x, const S* y, bool negate) {
    mul(B, x, y, t.data());
    if (negate) {
      sub(B, dst, t.data(), acc.data());
    } else {
      add(B, dst, t.data(), acc.data());
    }
    std::copy(acc.begin(), acc.end(), dst);
  };
  switch (L.kind()) {
    case RingKind::Quat: {
      // ij = k, jk = i, ki = j; coefficients keep their left/right order.
      static constexpr int kIndex[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
      static constexpr bool kNeg[4][4] = {{false, false, false, false},
                                          {false, true, false, true},
                                          {false, true, true, false},
                                          {false, false, true, true}};
      zero(L, out);
      for (int s = 0; s < 4; ++s) {
        for (int u = 0; u < 4; ++u) {
          accumulate(out + kIndex[s][u] * w, a + s * w, b + u * w, kNeg[s][u]);
        }
      }
      return;
    }
    case RingKind::Mat: {
      const int n = L.size;
      zero(L, out);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          for (int k = 0; k < n; ++k) accumulate(out + (i * n + j) * w, a + (i * n + k) * w, b + (k * n + j) * w, false);
      return;
    }
    case RingKind::Tri: {
      const int r = L.size;
      zero(L, out);
      for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j)
          for (int k = i; k <= j; ++k)
            accumulate(out + tri_offset(i, j, r) * w, a + tri_offset(i, k, r) * w, b + tri_offset(k, j, r) * w, false);
      return;
    }
    case RingKind::Dual: {
      zero(L, out);
      mul(B, a, b, out);
      accumulate(out + w, a, b + w, false);
      accumulate(out + w, a + w, b, false);
      return;
    }
    default: return;
  }
}

template <class S>
bool Arith<S>::is_zero(const RingLayout& L, const S* a) {
  for (std::size_t i = 0; i < L.width; ++i) {
    if (a[i] != 0) return false;
  }
  return true;
}

template <class S>
bool Arith<S>::equal(const RingLayout& L, const S* a, const S* b) {
  for (std::size_t i = 0; i < L.width; ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

template <class S>
bool Arith<S>::try_inverse(const RingLayout& L, const S* a, S* out) {
  switch (L.kind()) {
    case RingKind::Zmod:
    case RingKind::Rational:
      return atom_inverse(a[0], L.modulus, out[0]);
    case RingKind::GF:
      return Impl<S>::gf_inverse(L, a, out);
    case RingKind::Quat:
      return Impl<S>::quat_inverse(L, a, out);
    case RingKind::Mat:
      return Impl<S>::mat_inverse(L, a, out);
    case RingKind::Tri:
      return Impl<S>::tri_inverse(L, a, out);
    case RingKind::Dual: {
      // (a + b eps)^{-1} = a^{-1} - a^{-1} b a^{-1} eps
      const RingLayout& B = L.base();
      const std::size_t w = B.width;
      if (!try_inverse(B, a, out)) return false;
      Buf<S> t(w), u(w);
      mul(B, out, a + w, t.data());
      mul(B, t.data(), out, u.data());
      neg(B, u.data(), out + w);
      return true;
    }
    case RingKind::Sum:
      for (std::size_t p = 0; p < L.parts.size(); ++p) {
        if (!try_inverse(L.parts[p], a + L.offsets[p], out + L.offsets[p])) return false;
      }
      return true;
  }
  return false;
}

template <class S>
void Arith<S>::canonicalize(const RingLayout& L, S* a) {
  if (is_atom_kind(L.kind()) || L.kind() == RingKind::GF) {
    for (std::size_t i = 0; i < L.width; ++i) atom_canonical<S>(a[i], L.modulus);
    return;
  }
  if (L.kind() == RingKind::Sum) {
    for (std::size_t p = 0; p < L.parts.size(); ++p) canonicalize(L.parts[p], a + L.offsets[p]);
    return;
  }
  const std::size_t w = L.base().width;
  for (std::size_t off = 0; off < L.width; off += w) canonicalize(L.base(), a + off);
}

template <class S>
void Arith<S>::embed(const RingLayout& L, const S* base, S* out) {
  zero(L, out);
  const std::size_t w = L.base().width;
  switch (L.kind()) {
    case RingKind::Quat:
    case RingKind::Dual:
      std::copy(base, base + w, out);
      return;
    case RingKind::Mat:
      for (int i = 0; i < L.size; ++i) std::copy(base, base + w, out + (i * L.size + i) * w);
      return;
    case RingKind::Tri:
      for (int i = 0; i < L.size; ++i) std::copy(base, base + w, out + tri_offset(i, i, L.size) * w);
      return;
    default:
      throw Error(ErrorKind::Unsupported, "no scalar embedding for " + render(L.spec));
  }
}

template struct Arith<std::int64_t>;
template struct Arith<Rational>;

}  // namespace staudt
