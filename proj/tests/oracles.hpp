#pragma once

// Test-only oracles, independent of the library's enumeration and operation
// paths.

#include <cstdint>
#include <optional>
#include <vector>

#include "bao/algebra.hpp"
#include "bao/atoms.hpp"
#include "bao/bin.hpp"

namespace bao::oracle {

// Generate-and-filter enumeration of F(m, n, r): all |Bin|^(m(m-1)/2)
// symmetric Id-diagonal assignments, filtered by checking every ordered
// triple directly against the Forb definition.
inline std::vector<Atom> naive_atoms(std::uint32_t m, std::uint32_t n, std::uint64_t r,
                                     std::optional<std::uint64_t> psi_cap = std::nullopt) {
  BinFamily fam = BinFamily::finite(n, r, psi_cap);
  std::vector<BinElem> colors = fam.colors();
  const std::uint32_t P = pair_count(m);
  std::vector<std::size_t> odo(P, 0);
  std::vector<Atom> out;
  while (true) {
    std::vector<BinElem> entries(P);
    for (std::uint32_t p = 0; p < P; ++p) entries[p] = colors[odo[p]];
    Atom a(m, std::move(entries));
    bool ok = true;
    for (std::uint32_t x = 0; x < m && ok; ++x)
      for (std::uint32_t y = 0; y < m && ok; ++y)
        for (std::uint32_t z = 0; z < m && ok; ++z)
          if (forbidden(a.get(x, y), a.get(y, z), a.get(x, z))) ok = false;
    if (ok) out.push_back(std::move(a));
    std::size_t p = 0;
    while (p < P) {
      if (++odo[p] < colors.size()) break;
      odo[p] = 0;
      ++p;
    }
    if (p == P) break;
  }
  return out;
}

// Direct-scan cylindrification: union of the =_x classes met by X.
inline Element scan_cylindrify(const AtomStructure& s, std::uint32_t x, const Element& X) {
  Element out(s.size());
  for (std::size_t f = 0; f < s.size(); ++f) {
    bool member = false;
    X.for_each_set([&](std::size_t g) {
      if (!member && equiv_except(s.atoms[f], s.atoms[g], {x})) member = true;
    });
    if (member) out.set(f);
  }
  return out;
}

// Direct-scan substitution: {f : f tau in X}.
inline Element scan_substitute(const AtomStructure& s, const Transform& tau, const Element& X) {
  Element out(s.size());
  for (std::size_t f = 0; f < s.size(); ++f) {
    auto id = s.find(atom_apply(s.atoms[f], tau));
    if (id && X.test(*id)) out.set(f);
  }
  return out;
}

}  // namespace bao::oracle
