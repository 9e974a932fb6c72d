#pragma once

#include <cstdint>
#include <vector>

namespace bao {

// A total map {0..dim-1} -> {0..target-1}.  Maps with dim == target cover
// the replacements [i/j], transpositions [i,j] and general finitary maps;
// dim != target covers renamings between index sets.  Values beyond dim are
// understood to be fixed ("identity beyond dim").
struct Transform {
  std::uint32_t dim = 0;
  std::uint32_t target = 0;
  std::vector<std::uint32_t> image;

  Transform() = default;
  Transform(std::uint32_t dim_, std::uint32_t target_, std::vector<std::uint32_t> image_);

  std::uint32_t operator()(std::uint32_t i) const { return image.at(i); }

  bool is_identity() const;
  bool is_injective() const;
  // The single moved point of a replacement [i/j], if the map is one.
  bool is_replacement(std::uint32_t* i = nullptr, std::uint32_t* j = nullptr) const;
  bool is_transposition(std::uint32_t* i = nullptr, std::uint32_t* j = nullptr) const;

  bool operator==(const Transform&) const = default;
};

Transform identity_transform(std::uint32_t d);
// [i/j]: i |-> j, everything else fixed.
Transform make_replacement(std::uint32_t d, std::uint32_t i, std::uint32_t j);
// [i,j]: swap i and j.
Transform make_transposition(std::uint32_t d, std::uint32_t i, std::uint32_t j);

// apply(t, i) = t(i).
std::uint32_t apply(const Transform& t, std::uint32_t i);

// compose(s, t) applies t first, then s: result(i) = s(t(i)).
// Requires t.target == s.dim.
Transform compose(const Transform& s, const Transform& t);

// Writes a finitary permutation as a product of transpositions, such that
// composing the returned list left to right reproduces the input.
// Requires the input to be a permutation of its dimension.
std::vector<Transform> factor_into_transpositions(const Transform& p);

}  // namespace bao
