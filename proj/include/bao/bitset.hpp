#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace bao {

// Dense bit vector over atom indices.  All binary operations require equal
// lengths.
class DynBitset {
 public:
  DynBitset() = default;
  explicit DynBitset(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

  static DynBitset ones(std::size_t nbits) {
    DynBitset b(nbits);
    for (auto& w : b.words_) w = ~0ull;
    b.trim();
    return b;
  }

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i) { words_[i >> 6] |= (1ull << (i & 63)); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(1ull << (i & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  bool none() const { return !any(); }

  DynBitset operator&(const DynBitset& o) const { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a & b; }); }
  DynBitset operator|(const DynBitset& o) const { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a | b; }); }
  DynBitset operator^(const DynBitset& o) const { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a ^ b; }); }
  // set difference
  DynBitset operator-(const DynBitset& o) const { return zip(o, [](std::uint64_t a, std::uint64_t b) { return a & ~b; }); }
  DynBitset operator~() const {
    DynBitset r = *this;
    for (auto& w : r.words_) w = ~w;
    r.trim();
    return r;
  }
  DynBitset& operator|=(const DynBitset& o) {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  DynBitset& operator&=(const DynBitset& o) {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }

  bool operator==(const DynBitset& o) const = default;

  bool subset_of(const DynBitset& o) const {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const DynBitset& o) const {
    check(o);
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  template <typename F>
  void for_each_set(F&& f) const {
    for (std::size_t wi = 0; wi < words_.size(); ++wi) {
      std::uint64_t w = words_[wi];
      while (w) {
        unsigned b = static_cast<unsigned>(__builtin_ctzll(w));
        f(wi * 64 + b);
        w &= w - 1;
      }
    }
  }

  std::vector<std::uint32_t> to_indices() const {
    std::vector<std::uint32_t> out;
    out.reserve(count());
    for_each_set([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
    return out;
  }

  static DynBitset from_indices(std::size_t nbits, const std::vector<std::uint32_t>& idx) {
    DynBitset b(nbits);
    for (auto i : idx) {
      if (i >= nbits) throw std::invalid_argument("bitset index out of range");
      b.set(i);
    }
    return b;
  }

 private:
  template <typename Op>
  DynBitset zip(const DynBitset& o, Op op) const {
    check(o);
    DynBitset r(nbits_);
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] = op(words_[i], o.words_[i]);
    r.trim();
    return r;
  }
  void check(const DynBitset& o) const {
    if (nbits_ != o.nbits_) throw std::invalid_argument("bitset size mismatch");
  }
  void trim() {
    if (nbits_ & 63) words_.back() &= (1ull << (nbits_ & 63)) - 1;
  }

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

}  // namespace bao
