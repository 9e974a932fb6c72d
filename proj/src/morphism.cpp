#include "bao/morphism.hpp"

#include <stdexcept>

#include "bao/errors.hpp"

namespace bao {

Atom commutativity_witness(const AtomStructure& s, const Atom& f, const Atom& g, std::uint32_t x,
                           std::uint32_t y) {
  const std::uint32_t m = s.m;
  if (x == y || x >= m || y >= m)
    throw std::invalid_argument("commutativity_witness: need distinct x, y < m");
  if (m > s.n()) throw std::invalid_argument("commutativity_witness: requires m <= n");
  if (f.m != m || g.m != m) throw std::invalid_argument("commutativity_witness: dimension mismatch");
  if (!equiv_except(f, g, {x, y}))
    throw std::invalid_argument("commutativity_witness: g is not =_{xy}-equivalent to f");

  auto finish = [&](Atom h, const char* why) -> Atom {
    if (!valid_atom(s.family, h))
      throw std::logic_error(std::string("commutativity_witness: ") + why +
                             " produced a forbidden triangle");
    if (!equiv_except(f, h, {x}) || !equiv_except(h, g, {y}))
      throw std::logic_error(std::string("commutativity_witness: ") + why +
                             " violates the required equivalences");
    return h;
  };

  if (f == g) return f;

  for (std::uint32_t z = 0; z < m; ++z) {
    if (z == x || z == y) continue;
    if (f.get(y, z).is_id()) return finish(atom_apply(g, make_replacement(m, y, z)), "case (a)");
  }
  for (std::uint32_t z = 0; z < m; ++z) {
    if (z == x || z == y) continue;
    if (g.get(z, x).is_id()) return finish(atom_apply(f, make_replacement(m, x, z)), "case (b)");
  }

  // case (c): copy f off x and g off y, join x-y with a fresh a^0(i, 0)
  Atom h = Atom::all_id(m);
  for (std::uint32_t q = 1; q < m; ++q)
    for (std::uint32_t p = 0; p < q; ++p) {
      if (p == x || q == x) {
        if (p != y && q != y) h.set(p, q, g.get(p, q));
      } else {
        h.set(p, q, f.get(p, q));
      }
    }
  std::uint32_t chosen = s.n() - 1;
  for (std::uint32_t i = 0; i + 1 < s.n(); ++i) {
    bool blocked = false;
    for (std::uint32_t z = 0; z < m && !blocked; ++z) {
      if (z == x || z == y) continue;
      const BinElem fe = f.get(y, z), ge = g.get(x, z);
      blocked = fe.colored && ge.colored && fe.i == i && ge.i == i;
    }
    if (!blocked) {
      chosen = i;
      break;
    }
  }
  if (chosen == s.n() - 1)
    throw std::logic_error("commutativity_witness: no admissible colour index (m <= n violated?)");
  h.set(x, y, BinElem::a(chosen, 0, 0));
  return finish(std::move(h), "case (c)");
}

Element extend_additively(const std::vector<Element>& atom_images, const Element& x,
                          std::size_t target_bits) {
  Element out(static_cast<std::size_t>(target_bits));
  x.for_each_set([&](std::size_t a) { out |= atom_images[a]; });
  return out;
}

namespace {

std::string idx_pair(std::uint32_t i, std::uint32_t j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

MorphismReport verify_morphism(const std::vector<Element>& atom_images, const Algebra& A,
                               const Algebra& B, Signature K, const MorphismOptions& opts) {
  const std::size_t NA = A.atom_count();
  if (atom_images.size() != NA)
    throw std::invalid_argument("verify_morphism: map is not total on the atoms of A");
  const std::size_t NB = B.atom_count();
  for (const Element& e : atom_images)
    if (e.size() != NB) throw std::invalid_argument("verify_morphism: image element size mismatch");
  if (!sig_definable_from(K, A.sig()) || !sig_definable_from(K, B.sig()))
    throw SignatureError("verify_morphism: " + to_string(K) + " is not a common signature");

  MorphismReport rep;
  auto add = [&](std::string name, bool ok, std::string detail = "") {
    rep.checks.push_back(MorphismCheck{std::move(name), ok, std::move(detail)});
  };

  // disjointness: sum of counts equals count of union
  Element total(NB);
  std::size_t counted = 0;
  for (const Element& e : atom_images) {
    counted += e.count();
    total |= e;
  }
  add("atoms-disjoint", counted == total.count(),
      counted == total.count() ? "" : "images of distinct atoms overlap");
  rep.unit_image = total;

  if (opts.check_surjective) {
    add("unit-image", total == B.unit(),
        total == B.unit() ? "" : "sum of atom images differs from the target unit");
  }

  if (opts.check_injective) {
    bool inj = counted == total.count();
    std::string why;
    for (std::size_t a = 0; a < NA && inj; ++a)
      if (atom_images[a].none()) {
        inj = false;
        why = "atom " + std::to_string(a) + " has empty image";
      }
    add("injective", inj, why);
  }

  const auto& smallAtoms = A.carrier_atoms();
  auto phi = [&](const Element& x) { return extend_additively(atom_images, x, NB); };

  // diagonals
  if (sig_has_diagonals(K)) {
    bool ok = true;
    std::string detail;
    for (std::uint32_t i = 0; i < A.dim() && ok; ++i)
      for (std::uint32_t j = 0; j < A.dim() && ok; ++j)
        if (!(phi(A.diagonal(i, j)) == (B.diagonal(i, j) & total))) {
          ok = false;
          detail = "d" + idx_pair(i, j);
        }
    add("preserves-diagonals", ok, detail);
  }

  // cylindrifiers on atoms
  {
    bool ok = true;
    std::string detail;
    for (std::uint32_t i = 0; i < A.dim() && ok; ++i)
      for (std::size_t a = 0; a < NA && ok; ++a)
        if (!(phi(A.cylindrify(i, smallAtoms[a])) == (B.cylindrify(i, atom_images[a]) & total))) {
          ok = false;
          detail = "c_" + std::to_string(i) + " at atom " + std::to_string(a);
        }
    add("preserves-cylindrifiers", ok, detail);
  }

  auto check_subst = [&](const char* name, auto&& make) {
    bool ok = true;
    std::string detail;
    for (std::uint32_t i = 0; i < A.dim() && ok; ++i)
      for (std::uint32_t j = 0; j < A.dim() && ok; ++j) {
        Transform tA = make(A.dim(), i, j);
        Transform tB = make(B.dim(), i, j);
        for (std::size_t a = 0; a < NA && ok; ++a)
          if (!(phi(A.substitute(tA, smallAtoms[a])) ==
                (B.substitute(tB, atom_images[a]) & total))) {
            ok = false;
            detail = std::string(name) + idx_pair(i, j) + " at atom " + std::to_string(a);
          }
      }
    add(std::string("preserves-") + name, ok, detail);
  };

  if (sig_has_replacements(K))
    check_subst("replacements",
                [](std::uint32_t d, std::uint32_t i, std::uint32_t j) { return make_replacement(d, i, j); });
  if (sig_has_transpositions(K))
    check_subst("transpositions", [](std::uint32_t d, std::uint32_t i, std::uint32_t j) {
      return make_transposition(d, i, j);
    });

  if (sig_has_full_substitutions(K)) {
    // every tau: dim(A) -> dim(A), extended by the identity on the target
    bool ok = true;
    std::string detail;
    const std::uint32_t d = A.dim();
    std::vector<std::uint32_t> img(d, 0);
    while (ok) {
      Transform tA(d, d, img);
      Transform tB = identity_transform(B.dim());
      for (std::uint32_t p = 0; p < d; ++p) tB.image[p] = img[p];
      for (std::size_t a = 0; a < NA && ok; ++a)
        if (!(phi(A.substitute(tA, smallAtoms[a])) == (B.substitute(tB, atom_images[a]) & total))) {
          ok = false;
          detail = "s_tau at atom " + std::to_string(a);
        }
      std::size_t p = 0;
      while (p < d) {
        if (++img[p] < d) break;
        img[p] = 0;
        ++p;
      }
      if (p == d) break;
    }
    add("preserves-substitutions", ok, detail);
  }

  if (opts.neat_into) {
    bool ok = true;
    std::string detail;
    std::vector<bool> in_gamma(B.dim(), false);
    for (std::uint32_t g : *opts.neat_into) in_gamma[g] = true;
    for (std::uint32_t i = 0; i < B.dim() && ok; ++i) {
      if (in_gamma[i]) continue;
      for (std::size_t a = 0; a < NA && ok; ++a)
        if (!(B.cylindrify(i, atom_images[a]) == atom_images[a])) {
          ok = false;
          detail = "c_" + std::to_string(i) + " moves the image of atom " + std::to_string(a);
        }
    }
    add("range-in-neat-reduct", ok, detail);
  }

  return rep;
}

}  // namespace bao
