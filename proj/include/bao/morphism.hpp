#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bao/algebra.hpp"

namespace bao {

// Constructive witness for commutativity of cylindrifiers: given g =_{xy} f,
// returns h with f =_x h =_y g, following the three cases of the proof
// (replacement through an Id edge on either side, else a fresh a^0(i, 0)
// edge with the least unblocked colour index i).  Requires x != y and
// m <= n; the returned atom is validated before being handed back.
Atom commutativity_witness(const AtomStructure& s, const Atom& f, const Atom& g, std::uint32_t x,
                           std::uint32_t y);

struct MorphismCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct MorphismOptions {
  bool check_injective = true;
  // sum of atom images must equal the target's unit (isomorphisms onto views)
  bool check_surjective = true;
  // range must lie in Nr_Gamma of the target (indices of the target view)
  std::optional<std::vector<std::uint32_t>> neat_into;
};

struct MorphismReport {
  std::vector<MorphismCheck> checks;
  Element unit_image;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
  const MorphismCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

// Verifies that the additive extension of atom_images is a K-homomorphism
// from A into B.  atom_images[a] is the image of A's atom a as an element of
// B; all failures land in the report instead of throwing.
MorphismReport verify_morphism(const std::vector<Element>& atom_images, const Algebra& A,
                               const Algebra& B, Signature K, const MorphismOptions& opts = {});

// Additive extension of an atom-image map.
Element extend_additively(const std::vector<Element>& atom_images, const Element& x,
                          std::size_t target_bits);

}  // namespace bao
