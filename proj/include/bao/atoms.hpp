#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "bao/bin.hpp"
#include "bao/transform.hpp"

namespace bao {

// Canonical unordered-pair order: (0,1),(0,2),(1,2),(0,3),... by max then min.
inline std::uint32_t pair_count(std::uint32_t m) { return m * (m - 1) / 2; }
inline std::uint32_t pair_index(std::uint32_t x, std::uint32_t y) {
  std::uint32_t lo = x < y ? x : y, hi = x < y ? y : x;
  return hi * (hi - 1) / 2 + lo;
}
std::pair<std::uint32_t, std::uint32_t> pair_of_index(std::uint32_t p);

// A symmetric function m x m -> Bin with Id diagonal, stored on unordered
// pairs in canonical order.  Symmetry and the Id diagonal hold by
// representation; Forb-freeness is a checked invariant.
struct Atom {
  std::uint32_t m = 0;
  std::vector<BinElem> entries;  // pair_count(m) entries, canonical pair order

  Atom() = default;
  Atom(std::uint32_t m_, std::vector<BinElem> entries_);
  static Atom all_id(std::uint32_t m);

  BinElem get(std::uint32_t x, std::uint32_t y) const {
    return x == y ? BinElem::id() : entries[pair_index(x, y)];
  }
  void set(std::uint32_t x, std::uint32_t y, const BinElem& v);

  bool operator==(const Atom&) const = default;
  auto operator<=>(const Atom&) const = default;
};

// All ordered triples (x,y,z) of f avoid Forb (and entries lie in fam).
bool valid_atom(const BinFamily& fam, const Atom& f);

// (f tau)(x, y) = f(tau(x), tau(y)).  The result has dimension t.dim; every
// image value must be below f.m.
Atom atom_apply(const Atom& f, const Transform& t);

// f and g agree on every pair drawn from m \ X.
bool equiv_except(const Atom& f, const Atom& g, const std::vector<std::uint32_t>& X);

// The atom structure F(m, n, r): an exhaustive, canonically ordered
// enumeration plus an index for constant-time lookup.
struct AtomStructure {
  std::uint32_t m = 0;
  BinFamily family;                 // finite J only
  std::vector<BinElem> colors_;     // canonical colour order
  std::vector<Atom> atoms;          // canonical (lexicographic) order
  std::unordered_map<std::uint64_t, std::uint32_t> index;  // entry hash -> id

  std::size_t size() const { return atoms.size(); }
  std::uint32_t n() const { return family.n; }
  std::uint64_t r() const { return *family.r; }
  std::uint64_t psi_bound() const { return family.psi_bound; }
  const std::vector<BinElem>& colors() const { return colors_; }

  // id of an atom given by its entry vector; nullopt when absent.
  std::optional<std::uint32_t> find(const Atom& f) const;
  std::uint32_t find_or_throw(const Atom& f) const;

  // content hash tying serialized elements to this exact enumeration
  std::uint64_t hash() const;

  static std::uint64_t entries_key(const std::vector<BinElem>& entries);
};

// Backtracking enumeration of F(m, n, r) over pairs in canonical order with
// triangle pruning.  psi_cap shrinks the k-range (1 <= cap <= psi(n, r)).
// Aborts with EnumerationLimitError past `ceiling` atoms.
AtomStructure enumerate_atoms(std::uint32_t m, std::uint32_t n, std::uint64_t r,
                              std::optional<std::uint64_t> psi_cap = std::nullopt,
                              std::size_t ceiling = 4'000'000);

// Rebuilds the index/validates a structure assembled from parts (loader path).
// Checks per-atom validity, pairwise distinctness and canonical order; it does
// not re-enumerate, so truncated structures load (and then fail algebra-level
// checks, which is the point of fault-injection files).
void validate_structure(const AtomStructure& s);

}  // namespace bao
