#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bao/atoms.hpp"
#include "bao/bitset.hpp"
#include "bao/transform.hpp"

namespace bao {

enum class Signature { Df, Sc, CA, QPA, QPEA, PA, PEA };

std::string to_string(Signature k);
std::optional<Signature> signature_from_string(const std::string& s);

bool sig_has_diagonals(Signature k);
bool sig_has_replacements(Signature k);
bool sig_has_transpositions(Signature k);
bool sig_has_full_substitutions(Signature k);
// Whether every operator of `target` is definable from `source` (finite
// dimension, so PA/QPA and PEA/QPEA are interdefinable).
bool sig_definable_from(Signature target, Signature source);

using Element = DynBitset;

// A view of the complex algebra C(m, n, r) over an AtomStructure, or of one
// of its reducts/relativizations.  Elements are bit vectors over the base
// atom set in every view; views only change the unit, the exposed operators
// and the carrier's join-irreducibles.
class Algebra {
 public:
  Algebra() = default;

  static Algebra complex(std::shared_ptr<const AtomStructure> s,
                         Signature sig = Signature::PEA);
  // Nonstandard cylindrifier class tables (fault injection / corrupted
  // algebras): class_of[x][atom] gives the =_x class id of the atom.
  static Algebra complex_with_cylindrifier_classes(
      std::shared_ptr<const AtomStructure> s,
      std::vector<std::vector<std::uint32_t>> class_of, Signature sig = Signature::PEA);

  Algebra signature_reduct(Signature k) const;
  Algebra rename_reduct(const Transform& rho) const;   // injective rho, alpha -> dim()
  Algebra dimension_reduct(std::uint32_t m_prime) const;
  Algebra relativize(const Element& x) const;          // x != 0, x <= unit
  Algebra neat_reduct(const std::vector<std::uint32_t>& gamma) const;

  std::uint32_t dim() const { return dim_; }
  Signature sig() const { return sig_; }
  const AtomStructure& structure() const;
  std::shared_ptr<const AtomStructure> structure_ptr() const;
  bool is_relativized() const { return relativized_; }
  const std::optional<std::vector<std::uint32_t>>& allowed_indices() const { return allowed_; }

  std::size_t atom_count() const;

  Element zero() const;
  Element unit() const { return unit_; }
  Element complement(const Element& e) const;

  Element diagonal(std::uint32_t x, std::uint32_t y) const;
  Element cylindrify(std::uint32_t x, const Element& e) const;
  Element substitute(const Transform& t, const Element& e) const;
  Element subst_replacement(std::uint32_t i, std::uint32_t j, const Element& e) const;
  Element subst_transposition(std::uint32_t i, std::uint32_t j, const Element& e) const;
  Element pair_witness(const BinElem& b, std::uint32_t x, std::uint32_t y) const;

  // Join-irreducible generators of the carrier: atom singletons for the full
  // algebra, atoms below x for Rl_x, =_Gamma-join classes for Nr_Gamma.
  // Singleton carriers are materialized on first use.
  const std::vector<Element>& carrier_atoms() const;
  bool in_carrier(const Element& e) const;

  // Checked, not assumed: relativization can lose commutativity.
  bool commutativity_holds() const;
  // First commutativity counterexample (i, j, carrier atom index), if any.
  std::optional<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>
  commutativity_counterexample() const;

 private:
  struct Base;
  std::shared_ptr<const Base> base_;
  Signature sig_ = Signature::PEA;
  std::uint32_t dim_ = 0;
  std::vector<std::uint32_t> rho_;  // view index -> base index
  Element unit_;
  bool relativized_ = false;
  std::optional<std::vector<std::uint32_t>> allowed_;  // neat reduct gate
  // carrier: singletons of unit_ unless a neat reduct installed classes
  mutable std::vector<Element> carrier_;
  mutable bool carrier_built_ = false;

  void check_index(std::uint32_t i, const char* who) const;
  void check_allowed(std::initializer_list<std::uint32_t> idx, const char* who) const;
  Element clip(Element e) const;  // intersect with unit when relativized
  Transform to_base(const Transform& t) const;
};

// x_n = {f in F(n, n+k, r) : m <= j < n -> exists i < m, f(i, j) = Id},
// where n is the structure's dimension.  Requires 3 <= m < n.
Element x_n_element(const AtomStructure& big, std::uint32_t m);

// Per-small-atom masks of big atoms whose restriction to m x m is that atom.
// Requires identical alphabets and small.m <= big.m; every big atom must
// restrict into the small structure.
std::vector<Element> restriction_fibers(const AtomStructure& small, const AtomStructure& big);

// Restriction-fiber lift: X |-> {f in F(m', n, r) : f restricted to m x m in X}.
Element nr_lift(const AtomStructure& small, const AtomStructure& big, const Element& X);

// I_n(S) = {f in F(n, n+k, r) : f|m in S and every j in [m, n) has an Id
// edge into [0, m)}.  Alphabets may differ (m+k vs n+k); colours outside the
// small alphabet simply never match.
Element i_n_map(const AtomStructure& small, const AtomStructure& big, std::uint32_t m,
                const Element& S);
std::vector<Element> i_n_fibers(const AtomStructure& small, const AtomStructure& big,
                                std::uint32_t m);

}  // namespace bao
