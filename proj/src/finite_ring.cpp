#include "staudtlab/finite_ring.hpp"

#include <algorithm>

#include "staudtlab/errors.hpp"

namespace staudt {

namespace {

using A64 = Arith<std::int64_t>;

// Scratch buffers for the on-demand path; one set per thread.
struct Scratch {
  std::vector<std::int64_t> a, b, out;
  void fit(std::size_t w) {
    if (a.size() != w) {
      a.assign(w, 0);
      b.assign(w, 0);
      out.assign(w, 0);
    }
  }
};

Scratch& scratch(std::size_t width) {
  thread_local Scratch s;
  s.fit(width);
  return s;
}

}  // namespace

FiniteRing::FiniteRing(RingSpec spec) : ring_(std::move(spec)), layout_(ring_.layout()) {
  if (!layout_.finite) {
    throw Error(ErrorKind::InfiniteRing, staudt::render(ring_.spec()) + " is infinite");
  }
  if (layout_.count == 0 || layout_.count > kSizeLimit) {
    throw Error(ErrorKind::Unsupported, staudt::render(ring_.spec()) + " is too large to enumerate");
  }
  size_ = static_cast<Index>(layout_.count);
  {
    std::vector<std::int64_t> buf(layout_.width);
    A64::one(layout_, buf.data());
    one_ = encode(buf.data());
  }
  neg_table_.resize(size_);
  {
    auto& s = scratch(layout_.width);
    for (Index i = 0; i < size_; ++i) {
      layout_.decode(i, s.a.data());
      A64::neg(layout_, s.a.data(), s.out.data());
      neg_table_[i] = encode(s.out.data());
    }
  }
  if (size_ <= kTableLimit) {
    const std::size_t n = size_;
    add_table_.resize(n * n);
    mul_table_.resize(n * n);
    auto& s = scratch(layout_.width);
    for (Index i = 0; i < size_; ++i) {
      layout_.decode(i, s.a.data());
      for (Index j = 0; j < size_; ++j) {
        layout_.decode(j, s.b.data());
        A64::add(layout_, s.a.data(), s.b.data(), s.out.data());
        add_table_[i * n + j] = encode(s.out.data());
        A64::mul(layout_, s.a.data(), s.b.data(), s.out.data());
        mul_table_[i * n + j] = encode(s.out.data());
      }
    }
  }
  inverse_table_.assign(size_, kNoInverse);
  if (size_ <= kTableLimit) {
    const std::size_t n = size_;
    for (Index i = 0; i < size_; ++i) {
      for (Index j = 0; j < size_; ++j) {
        if (mul_table_[i * n + j] == one_ && mul_table_[j * n + i] == one_) {
          inverse_table_[i] = j;
          break;
        }
      }
    }
  } else {
    auto& s = scratch(layout_.width);
    for (Index i = 0; i < size_; ++i) {
      if (inverse_table_[i] != kNoInverse) continue;
      layout_.decode(i, s.a.data());
      if (A64::try_inverse(layout_, s.a.data(), s.out.data())) {
        const Index j = encode(s.out.data());
        inverse_table_[i] = j;
        inverse_table_[j] = i;
      }
    }
  }
  for (Index i = 0; i < size_; ++i) {
    if (inverse_table_[i] != kNoInverse) units_.push_back(i);
  }
  for (const Element& t : ring_.centre_test_set()) centre_tests_.push_back(index(t));
}

std::shared_ptr<const FiniteRing> FiniteRing::make(const RingSpec& spec) {
  return std::make_shared<const FiniteRing>(spec);
}

std::shared_ptr<const FiniteRing> FiniteRing::make(std::string_view spec_text) {
  return make(parse_ring_spec(spec_text));
}

FiniteRing::Index FiniteRing::encode(const std::int64_t* atoms) const {
  return static_cast<Index>(layout_.encode(atoms));
}

FiniteRing::Index FiniteRing::from_int(std::int64_t n) const {
  std::vector<std::int64_t> buf(layout_.width);
  A64::from_int(layout_, n, buf.data());
  return encode(buf.data());
}

FiniteRing::Index FiniteRing::add(Index a, Index b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * size_ + b];
  auto& s = scratch(layout_.width);
  layout_.decode(a, s.a.data());
  layout_.decode(b, s.b.data());
  A64::add(layout_, s.a.data(), s.b.data(), s.out.data());
  return encode(s.out.data());
}

FiniteRing::Index FiniteRing::neg(Index a) const { return neg_table_[a]; }

FiniteRing::Index FiniteRing::mul(Index a, Index b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * size_ + b];
  auto& s = scratch(layout_.width);
  layout_.decode(a, s.a.data());
  layout_.decode(b, s.b.data());
  A64::mul(layout_, s.a.data(), s.b.data(), s.out.data());
  return encode(s.out.data());
}

FiniteRing::Index FiniteRing::pow(Index a, std::uint64_t e) const {
  Index result = one_;
  while (e > 0) {
    if (e & 1U) result = mul(result, a);
    e >>= 1U;
    if (e > 0) a = mul(a, a);
  }
  return result;
}

FiniteRing::Index FiniteRing::inverse_of(Index a) const { return inverse_table_[a]; }

FiniteRing::Index FiniteRing::inverse(Index a) const {
  const Index inv = inverse_of(a);
  if (inv == kNoInverse) {
    throw Error(ErrorKind::NonUnit, render(a) + " is not a unit in " + staudt::render(spec()), render(a));
  }
  return inv;
}

std::int64_t FiniteRing::characteristic() const {
  return static_cast<std::int64_t>(ring_.characteristic());
}

Element FiniteRing::element(Index a) const {
  std::vector<std::int64_t> buf(layout_.width);
  layout_.decode(a, buf.data());
  Element e{std::vector<Rational>(layout_.width)};
  for (std::size_t i = 0; i < buf.size(); ++i) e.atoms[i] = buf[i];
  return e;
}

FiniteRing::Index FiniteRing::index(const Element& e) const {
  const Element c = ring_.canonical(e);
  std::vector<std::int64_t> buf(layout_.width);
  for (std::size_t i = 0; i < buf.size(); ++i) {
    buf[i] = static_cast<std::int64_t>(boost::multiprecision::numerator(c.atoms[i]));
  }
  return encode(buf.data());
}

bool FiniteRing::is_central(Index a) const {
  for (Index t : centre_tests_) {
    if (mul(a, t) != mul(t, a)) return false;
  }
  return true;
}

std::vector<FiniteRing::Index> FiniteRing::centre() const {
  std::vector<Index> out;
  // The generating-set test prunes; the full commutation scan decides.
  for (Index c = 0; c < size_; ++c) {
    if (!is_central(c)) continue;
    bool central = true;
    for (Index x = 0; x < size_ && central; ++x) central = mul(c, x) == mul(x, c);
    if (central) out.push_back(c);
  }
  return out;
}

std::vector<FiniteRing::Index> FiniteRing::conjugacy_orbit(Index a) const {
  std::vector<Index> out;
  out.reserve(units_.size());
  for (Index u : units_) out.push_back(mul(mul(u, a), inverse_table_[u]));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace staudt
