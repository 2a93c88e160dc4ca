#include "staudtlab/ring.hpp"

#include "staudtlab/errors.hpp"

namespace staudt {

namespace {

using A = Arith<Rational>;

void centre_tests(const RingLayout& L, std::vector<std::vector<Rational>>& out) {
  const auto base_tests = [&](const RingLayout& B) {
    std::vector<std::vector<Rational>> inner;
    centre_tests(B, inner);
    return inner;
  };
  switch (L.kind()) {
    case RingKind::Zmod:
    case RingKind::GF:
    case RingKind::Rational:
      return;
    case RingKind::Sum:
      for (std::size_t p = 0; p < L.parts.size(); ++p) {
        for (const auto& t : base_tests(L.parts[p])) {
          std::vector<Rational> e(L.width, Rational(0));
          std::copy(t.begin(), t.end(), e.begin() + static_cast<std::ptrdiff_t>(L.offsets[p]));
          out.push_back(std::move(e));
        }
      }
      return;
    default: break;
  }
  const RingLayout& B = L.base();
  const std::size_t w = B.width;
  std::vector<Rational> base_one(w);
  A::one(B, base_one.data());
  auto unit_at = [&](std::size_t slot) {
    std::vector<Rational> e(L.width, Rational(0));
    std::copy(base_one.begin(), base_one.end(), e.begin() + static_cast<std::ptrdiff_t>(slot * w));
    out.push_back(std::move(e));
  };
  switch (L.kind()) {
    case RingKind::Quat:
      unit_at(1);
      unit_at(2);
      break;
    case RingKind::Mat:
      for (int s = 0; s < L.size * L.size; ++s) unit_at(static_cast<std::size_t>(s));
      break;
    case RingKind::Tri:
      for (int s = 0; s < L.size * (L.size + 1) / 2; ++s) unit_at(static_cast<std::size_t>(s));
      break;
    case RingKind::Dual:
      break;
    default: break;
  }
  for (const auto& t : base_tests(B)) {
    std::vector<Rational> e(L.width);
    A::embed(L, t.data(), e.data());
    out.push_back(std::move(e));
  }
}

}  // namespace

Ring::Ring(RingSpec spec)
    : layout_(RingLayout::compile(spec)),
      division_(staudt::is_division_ring(spec)),
      two_unit_(staudt::two_is_unit(spec)) {}

std::shared_ptr<const Ring> Ring::make(const RingSpec& spec) { return std::make_shared<const Ring>(spec); }

std::shared_ptr<const Ring> Ring::make(std::string_view spec_text) { return make(parse_ring_spec(spec_text)); }

Element Ring::zero() const {
  Element e{std::vector<Rational>(width())};
  A::zero(layout_, e.atoms.data());
  return e;
}

Element Ring::one() const { return from_int(1); }

Element Ring::from_int(const BigInt& n) const {
  Element e{std::vector<Rational>(width())};
  A::from_int(layout_, n, e.atoms.data());
  return e;
}

Element Ring::add(const Element& a, const Element& b) const {
  Element e{std::vector<Rational>(width())};
  A::add(layout_, a.atoms.data(), b.atoms.data(), e.atoms.data());
  return e;
}

Element Ring::sub(const Element& a, const Element& b) const {
  Element e{std::vector<Rational>(width())};
  A::sub(layout_, a.atoms.data(), b.atoms.data(), e.atoms.data());
  return e;
}

Element Ring::neg(const Element& a) const {
  Element e{std::vector<Rational>(width())};
  A::neg(layout_, a.atoms.data(), e.atoms.data());
  return e;
}

Element Ring::mul(const Element& a, const Element& b) const {
  Element e{std::vector<Rational>(width())};
  A::mul(layout_, a.atoms.data(), b.atoms.data(), e.atoms.data());
  return e;
}

Element Ring::pow(const Element& a, long e) const {
  Element base = e < 0 ? inverse(a) : a;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Element result = one();
  while (n > 0) {
    if (n & 1UL) result = mul(result, base);
    n >>= 1UL;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

bool Ring::is_zero(const Element& a) const { return A::is_zero(layout_, a.atoms.data()); }

std::optional<Element> Ring::try_inverse(const Element& a) const {
  Element e{std::vector<Rational>(width())};
  if (!A::try_inverse(layout_, a.atoms.data(), e.atoms.data())) return std::nullopt;
  return e;
}

Element Ring::inverse(const Element& a) const {
  auto inv = try_inverse(a);
  if (!inv) throw Error(ErrorKind::NonUnit, render(a) + " is not a unit in " + staudt::render(spec()), render(a));
  return *inv;
}

Element Ring::canonical(Element a) const {
  A::canonicalize(layout_, a.atoms.data());
  return a;
}

std::vector<Element> Ring::centre_test_set() const {
  std::vector<std::vector<Rational>> raw;
  centre_tests(layout_, raw);
  std::vector<Element> out;
  out.reserve(raw.size());
  for (auto& r : raw) out.push_back(Element{std::move(r)});
  return out;
}

bool Ring::is_central(const Element& a) const {
  for (const Element& t : centre_test_set()) {
    if (mul(a, t) != mul(t, a)) return false;
  }
  return true;
}

std::optional<std::pair<Element, Element>> Ring::reduced_trace_norm(const Element& a) const {
  if (spec().kind != RingKind::Quat || !layout_.base().commutative) return std::nullopt;
  const RingLayout& B = layout_.base();
  const std::size_t w = B.width;
  std::vector<Rational> trace(w), norm(w), sq(w), tmp(w);
  A::add(B, a.atoms.data(), a.atoms.data(), trace.data());
  A::zero(B, norm.data());
  for (int c = 0; c < 4; ++c) {
    A::mul(B, a.atoms.data() + c * w, a.atoms.data() + c * w, sq.data());
    A::add(B, norm.data(), sq.data(), tmp.data());
    norm.swap(tmp);
  }
  return std::make_pair(embed_scalar(Element{trace}), embed_scalar(Element{norm}));
}

Element Ring::embed_scalar(const Element& base_element) const {
  Element e{std::vector<Rational>(width())};
  A::embed(layout_, base_element.atoms.data(), e.atoms.data());
  return e;
}

Element Ring::random(std::mt19937_64& rng, int bound) const {
  Element e{std::vector<Rational>(width())};
  std::vector<std::int64_t> moduli;
  // Walk the layout to recover each atom's modulus.
  auto collect = [&](auto&& self, const RingLayout& L) -> void {
    switch (L.kind()) {
      case RingKind::Zmod:
      case RingKind::GF:
      case RingKind::Rational:
        for (std::size_t i = 0; i < L.width; ++i) moduli.push_back(L.modulus);
        return;
      case RingKind::Sum:
        for (const RingLayout& p : L.parts) self(self, p);
        return;
      default:
        for (std::size_t off = 0; off < L.width; off += L.base().width) self(self, L.base());
        return;
    }
  };
  collect(collect, layout_);
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] > 0) {
      e.atoms[i] = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(moduli[i]));
    } else {
      const auto span = static_cast<std::uint64_t>(2 * bound + 1);
      const std::int64_t num = static_cast<std::int64_t>(rng() % span) - bound;
      const std::int64_t den = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(bound)) + 1;
      e.atoms[i] = Rational(num, den);
    }
  }
  return e;
}

}  // namespace staudt
