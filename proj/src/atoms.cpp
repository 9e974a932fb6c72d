#include "bao/atoms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bao/errors.hpp"

namespace bao {

std::pair<std::uint32_t, std::uint32_t> pair_of_index(std::uint32_t p) {
  std::uint32_t hi = 1;
  while ((hi + 1) * hi / 2 <= p) ++hi;
  std::uint32_t lo = p - hi * (hi - 1) / 2;
  return {lo, hi};
}

Atom::Atom(std::uint32_t m_, std::vector<BinElem> entries_) : m(m_), entries(std::move(entries_)) {
  if (m < 1) throw std::invalid_argument("Atom: m must be >= 1");
  if (entries.size() != pair_count(m)) throw std::invalid_argument("Atom: wrong entry count");
}

Atom Atom::all_id(std::uint32_t m) { return Atom(m, std::vector<BinElem>(pair_count(m))); }

void Atom::set(std::uint32_t x, std::uint32_t y, const BinElem& v) {
  if (x == y) throw std::invalid_argument("Atom::set: diagonal is fixed to Id");
  entries[pair_index(x, y)] = v;
}

namespace {

inline bool triangle_ok(const BinElem& a, const BinElem& b, const BinElem& c) {
  return !triangle_forbidden(a, b, c);
}

}  // namespace

bool valid_atom(const BinFamily& fam, const Atom& f) {
  for (const BinElem& e : f.entries)
    if (!fam.contains(e)) return false;
  for (std::uint32_t z = 0; z < f.m; ++z)
    for (std::uint32_t x = 0; x < z; ++x)
      for (std::uint32_t y = x + 1; y < z; ++y)
        if (!triangle_ok(f.get(x, y), f.get(y, z), f.get(x, z))) return false;
  return true;
}

Atom atom_apply(const Atom& f, const Transform& t) {
  for (std::uint32_t v : t.image)
    if (v >= f.m) throw std::invalid_argument("atom_apply: transform image exceeds atom dimension");
  Atom g = Atom::all_id(t.dim);
  for (std::uint32_t y = 1; y < t.dim; ++y)
    for (std::uint32_t x = 0; x < y; ++x) g.entries[pair_index(x, y)] = f.get(t(x), t(y));
  return g;
}

bool equiv_except(const Atom& f, const Atom& g, const std::vector<std::uint32_t>& X) {
  if (f.m != g.m) throw std::invalid_argument("equiv_except: dimension mismatch");
  auto excluded = [&](std::uint32_t v) {
    for (std::uint32_t x : X)
      if (x == v) return true;
    return false;
  };
  for (std::uint32_t y = 1; y < f.m; ++y) {
    if (excluded(y)) continue;
    for (std::uint32_t x = 0; x < y; ++x) {
      if (excluded(x)) continue;
      if (!(f.entries[pair_index(x, y)] == g.entries[pair_index(x, y)])) return false;
    }
  }
  return true;
}

std::uint64_t AtomStructure::entries_key(const std::vector<BinElem>& entries) {
  std::uint64_t h = 1469598103934665603ull;
  for (const BinElem& e : entries) {
    h ^= e.key();
    h *= 1099511628211ull;
  }
  return h;
}

std::optional<std::uint32_t> AtomStructure::find(const Atom& f) const {
  if (f.m != m) return std::nullopt;
  auto it = index.find(entries_key(f.entries));
  if (it == index.end()) return std::nullopt;
  // guard against hash collisions
  if (!(atoms[it->second] == f)) {
    for (std::uint32_t i = 0; i < atoms.size(); ++i)
      if (atoms[i] == f) return i;
    return std::nullopt;
  }
  return it->second;
}

std::uint32_t AtomStructure::find_or_throw(const Atom& f) const {
  auto id = find(f);
  if (!id) throw std::invalid_argument("atom not present in structure");
  return *id;
}

std::uint64_t AtomStructure::hash() const {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(m);
  mix(family.n);
  mix(family.is_omega() ? ~0ull : *family.r);
  mix(family.psi_bound);
  for (const Atom& a : atoms) mix(entries_key(a.entries));
  return h;
}

AtomStructure enumerate_atoms(std::uint32_t m, std::uint32_t n, std::uint64_t r,
                              std::optional<std::uint64_t> psi_cap, std::size_t ceiling) {
  if (m < 3) throw std::invalid_argument("enumerate_atoms: m must be >= 3");
  AtomStructure s;
  s.m = m;
  s.family = BinFamily::finite(n, r, psi_cap);
  s.colors_ = s.family.colors();

  const std::uint32_t P = pair_count(m);
  const std::size_t C = s.colors_.size();

  // estimate |Bin|^P for the abort message
  auto estimate = [&]() {
    u128 est = 1;
    bool sat = false;
    for (std::uint32_t p = 0; p < P; ++p) {
      if (__builtin_mul_overflow(est, static_cast<u128>(C), &est)) {
        sat = true;
        break;
      }
    }
    return sat ? std::string(">= 2^128") : to_string(est);
  };

  // Precompute, per pair index p = {lo, hi}, the triangles completed at p:
  // third vertex z < lo, with the two earlier pair indices.
  struct Tri {
    std::uint32_t xz, yz;  // pair indices {z,lo}, {z,hi}
  };
  std::vector<std::vector<Tri>> tris(P);
  for (std::uint32_t p = 0; p < P; ++p) {
    auto [lo, hi] = pair_of_index(p);
    for (std::uint32_t z = 0; z < lo; ++z)
      tris[p].push_back(Tri{pair_index(z, lo), pair_index(z, hi)});
  }

  std::vector<BinElem> cur(P);
  std::vector<std::size_t> choice(P, 0);

  auto pair_ok = [&](std::uint32_t p) {
    auto [lo, hi] = pair_of_index(p);
    (void)lo;
    (void)hi;
    for (const Tri& t : tris[p]) {
      // edges of triangle {z, lo, hi}: f(z,lo)=cur[xz], f(z,hi)=cur[yz], f(lo,hi)=cur[p]
      if (!triangle_ok(cur[t.xz], cur[p], cur[t.yz])) return false;
      // triangle_ok checks all orderings, so the argument order only needs to
      // name the three edges once: (f(x,y), f(y,z), f(x,z)) with x=z, y=lo, z=hi.
    }
    return true;
  };

  std::uint32_t p = 0;
  if (P == 0) {
    s.atoms.push_back(Atom::all_id(m));
  } else {
    while (true) {
      if (choice[p] == C) {
        // backtrack
        choice[p] = 0;
        if (p == 0) break;
        --p;
        ++choice[p];
        continue;
      }
      cur[p] = s.colors_[choice[p]];
      if (!pair_ok(p)) {
        ++choice[p];
        continue;
      }
      if (p + 1 == P) {
        if (s.atoms.size() >= ceiling)
          throw EnumerationLimitError("enumerate_atoms: atom-count ceiling exceeded (estimate " +
                                          estimate() + ")",
                                      estimate());
        s.atoms.push_back(Atom(m, cur));
        ++choice[p];
      } else {
        ++p;
      }
    }
  }

  s.index.reserve(s.atoms.size() * 2);
  for (std::uint32_t i = 0; i < s.atoms.size(); ++i)
    s.index.emplace(AtomStructure::entries_key(s.atoms[i].entries), i);
  return s;
}

void validate_structure(const AtomStructure& s) {
  if (s.m < 3) throw std::invalid_argument("structure: m must be >= 3");
  if (s.family.is_omega()) throw std::invalid_argument("structure: J must be finite");
  for (std::size_t i = 0; i < s.atoms.size(); ++i) {
    const Atom& a = s.atoms[i];
    if (a.m != s.m || a.entries.size() != pair_count(s.m))
      throw std::invalid_argument("structure: atom " + std::to_string(i) + " has wrong shape");
    if (!valid_atom(s.family, a))
      throw std::invalid_argument("structure: atom " + std::to_string(i) +
                                  " violates the Forb-triangle invariant");
    if (i > 0 && !(s.atoms[i - 1] < a))
      throw std::invalid_argument("structure: atoms not in canonical order / not distinct");
  }
  for (std::uint32_t i = 0; i < s.atoms.size(); ++i) {
    auto it = s.index.find(AtomStructure::entries_key(s.atoms[i].entries));
    if (it == s.index.end())
      throw std::invalid_argument("structure: index missing atom " + std::to_string(i));
  }
}

}  // namespace bao
