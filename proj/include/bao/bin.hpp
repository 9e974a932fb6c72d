#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include "bao/arith.hpp"

namespace bao {

// An edge colour: either the identity Id or a labelled element a^k(i, j).
// Ordered with Id first, then lexicographically by (i, j, k); this order
// fixes canonical enumeration and serialization everywhere.
struct BinElem {
  std::uint32_t i = 0, j = 0, k = 0;
  bool colored = false;

  static BinElem id() { return BinElem{}; }
  static BinElem a(std::uint32_t i, std::uint32_t j, std::uint32_t k) {
    BinElem e;
    e.i = i;
    e.j = j;
    e.k = k;
    e.colored = true;
    return e;
  }

  bool is_id() const { return !colored; }

  friend bool operator==(const BinElem& a, const BinElem& b) {
    if (a.colored != b.colored) return false;
    if (!a.colored) return true;
    return a.i == b.i && a.j == b.j && a.k == b.k;
  }
  friend std::strong_ordering operator<=>(const BinElem& a, const BinElem& b) {
    if (a.colored != b.colored) return a.colored <=> b.colored;
    if (!a.colored) return std::strong_ordering::equal;
    if (auto c = a.i <=> b.i; c != 0) return c;
    if (auto c = a.j <=> b.j; c != 0) return c;
    return a.k <=> b.k;
  }

  std::uint64_t key() const {
    // packed comparison/hash key, consistent with operator<=>
    return (colored ? (1ull << 63) : 0) | (static_cast<std::uint64_t>(i) << 42) |
           (static_cast<std::uint64_t>(j) << 21) | k;
  }
};

// The alphabet Bin(n, J): {Id} u {a^k(i,j) : i < n-1, j in J, k < psi bound}.
// J is either a finite ordinal r or omega; omega means j and k unbounded
// (elements are constructed on demand, never enumerated).
struct BinFamily {
  std::uint32_t n = 2;
  std::optional<std::uint64_t> r;  // nullopt = omega
  std::uint64_t psi_bound = 0;     // ignored for omega

  static BinFamily finite(std::uint32_t n, std::uint64_t r,
                          std::optional<std::uint64_t> psi_cap = std::nullopt);
  static BinFamily omega(std::uint32_t n);

  bool is_omega() const { return !r.has_value(); }
  bool contains(const BinElem& e) const;
  void require(const BinElem& e) const;  // throws std::invalid_argument

  // 1 + (n-1) * r * psi_bound for finite J (throws for omega).
  u128 color_count() const;
  // All colours in canonical order (finite J only).
  std::vector<BinElem> colors() const;

  bool operator==(const BinFamily&) const = default;
};

// Membership in Forb: (Id, b, c) with b != c, or all three colored with a
// common i, u.j == v.j and w.j <= u.j.  The family argument is used only to
// reject elements from a different alphabet.
bool forbidden(const BinFamily& fam, const BinElem& u, const BinElem& v, const BinElem& w);

// Forb membership on raw values (no family validation).
bool forbidden(const BinElem& u, const BinElem& v, const BinElem& w);

// Whether a triangle with edge colours (a, b, c) is excluded from every
// atom: some ordering of the three edges lies in Forb.  The membership
// condition of F quantifies over all ordered triples, so this symmetric
// closure is the predicate that governs which triangles can occur.
bool triangle_forbidden(const BinElem& a, const BinElem& b, const BinElem& c);

// The derived colour selectors, as predicates.
inline bool in_a(const BinElem& e) { return e.colored; }                        // a
inline bool in_a_row(const BinElem& e, std::uint32_t i) { return e.colored && e.i == i; }   // a(i,_)
inline bool in_a_col(const BinElem& e, std::uint32_t j) { return e.colored && e.j == j; }   // a(_,j)
inline bool in_a_sup(const BinElem& e, std::uint32_t k) { return e.colored && e.k == k; }   // a^k
inline bool in_a_cell(const BinElem& e, std::uint32_t i, std::uint32_t j) {
  return e.colored && e.i == i && e.j == j;                                     // a(i,j)
}
inline bool in_a_col_gt(const BinElem& e, std::uint32_t j) { return e.colored && e.j > j; }  // a(_,>j)
inline bool in_a_col_le(const BinElem& e, std::uint32_t j) { return e.colored && e.j <= j; } // a(_,<=j)

}  // namespace bao
