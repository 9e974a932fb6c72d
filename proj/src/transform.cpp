#include "bao/transform.hpp"

#include <stdexcept>
#include <string>

namespace bao {

Transform::Transform(std::uint32_t dim_, std::uint32_t target_, std::vector<std::uint32_t> image_)
    : dim(dim_), target(target_), image(std::move(image_)) {
  if (image.size() != dim) throw std::invalid_argument("Transform: image size != dim");
  for (std::uint32_t v : image)
    if (v >= target) throw std::invalid_argument("Transform: image value out of range");
}

bool Transform::is_identity() const {
  if (dim != target) return false;
  for (std::uint32_t i = 0; i < dim; ++i)
    if (image[i] != i) return false;
  return true;
}

bool Transform::is_injective() const {
  std::vector<bool> seen(target, false);
  for (std::uint32_t v : image) {
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

bool Transform::is_replacement(std::uint32_t* oi, std::uint32_t* oj) const {
  if (dim != target) return false;
  std::uint32_t moved = dim;
  for (std::uint32_t p = 0; p < dim; ++p) {
    if (image[p] == p) continue;
    if (moved != dim) return false;
    moved = p;
  }
  if (moved == dim) {
    // identity counts as [i/i]
    if (oi) *oi = 0;
    if (oj) *oj = 0;
    return true;
  }
  if (oi) *oi = moved;
  if (oj) *oj = image[moved];
  return true;
}

bool Transform::is_transposition(std::uint32_t* oi, std::uint32_t* oj) const {
  if (dim != target) return false;
  std::uint32_t a = dim, b = dim;
  for (std::uint32_t p = 0; p < dim; ++p) {
    if (image[p] == p) continue;
    if (a == dim) {
      a = p;
    } else if (b == dim) {
      b = p;
    } else {
      return false;
    }
  }
  if (a == dim) {
    if (oi) *oi = 0;
    if (oj) *oj = 0;
    return true;  // identity = [i,i]
  }
  if (b == dim) return false;
  if (image[a] != b || image[b] != a) return false;
  if (oi) *oi = a;
  if (oj) *oj = b;
  return true;
}

Transform identity_transform(std::uint32_t d) {
  std::vector<std::uint32_t> img(d);
  for (std::uint32_t i = 0; i < d; ++i) img[i] = i;
  return Transform(d, d, std::move(img));
}

Transform make_replacement(std::uint32_t d, std::uint32_t i, std::uint32_t j) {
  if (i >= d || j >= d) throw std::invalid_argument("make_replacement: index out of range");
  Transform t = identity_transform(d);
  t.image[i] = j;
  return t;
}

Transform make_transposition(std::uint32_t d, std::uint32_t i, std::uint32_t j) {
  if (i >= d || j >= d) throw std::invalid_argument("make_transposition: index out of range");
  Transform t = identity_transform(d);
  t.image[i] = j;
  t.image[j] = i;
  return t;
}

std::uint32_t apply(const Transform& t, std::uint32_t i) {
  if (i >= t.dim) throw std::invalid_argument("apply: index out of range");
  return t.image[i];
}

Transform compose(const Transform& s, const Transform& t) {
  if (t.target != s.dim)
    throw std::invalid_argument("compose: inner target dimension " + std::to_string(t.target) +
                                " != outer source dimension " + std::to_string(s.dim));
  std::vector<std::uint32_t> img(t.dim);
  for (std::uint32_t i = 0; i < t.dim; ++i) img[i] = s.image[t.image[i]];
  return Transform(t.dim, s.target, std::move(img));
}

std::vector<Transform> factor_into_transpositions(const Transform& p) {
  if (p.dim != p.target || !p.is_injective())
    throw std::invalid_argument("factor_into_transpositions: not a permutation");
  std::vector<Transform> out;
  std::vector<std::uint32_t> cur = p.image;
  // Selection sort by transpositions; composing the collected swaps left to
  // right rebuilds p.
  for (std::uint32_t pos = 0; pos < p.dim; ++pos) {
    if (cur[pos] == pos) continue;
    std::uint32_t src = pos;
    for (std::uint32_t q = pos + 1; q < p.dim; ++q)
      if (cur[q] == pos) src = q;
    out.push_back(make_transposition(p.dim, pos, src));
    std::swap(cur[pos], cur[src]);
  }
  // cur is now the identity; the swaps applied in reverse order rebuild p,
  // so report them reversed for left-to-right composition.
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace bao
