#include "bao/bin.hpp"

#include <stdexcept>
#include <string>

namespace bao {

BinFamily BinFamily::finite(std::uint32_t n, std::uint64_t r,
                            std::optional<std::uint64_t> psi_cap) {
  if (n < 2) throw std::invalid_argument("BinFamily: n must be >= 2");
  BinFamily f;
  f.n = n;
  f.r = r;
  if (psi_cap) {
    std::uint64_t true_psi = psi_u64(n, r);
    if (*psi_cap < 1 || *psi_cap > true_psi)
      throw std::invalid_argument("BinFamily: psi_cap must be in [1, psi(n,r)]");
    f.psi_bound = *psi_cap;
  } else {
    f.psi_bound = psi_u64(n, r);
  }
  return f;
}

BinFamily BinFamily::omega(std::uint32_t n) {
  if (n < 2) throw std::invalid_argument("BinFamily: n must be >= 2");
  BinFamily f;
  f.n = n;
  f.r = std::nullopt;
  f.psi_bound = 0;
  return f;
}

bool BinFamily::contains(const BinElem& e) const {
  if (e.is_id()) return true;
  if (e.i >= n - 1) return false;
  if (is_omega()) return true;
  return e.j < *r && e.k < psi_bound;
}

void BinFamily::require(const BinElem& e) const {
  if (!contains(e))
    throw std::invalid_argument("BinElem a^" + std::to_string(e.k) + "(" + std::to_string(e.i) +
                                "," + std::to_string(e.j) + ") is not in Bin(" +
                                std::to_string(n) + ", " + (is_omega() ? "omega" : std::to_string(*r)) +
                                ")");
}

u128 BinFamily::color_count() const {
  if (is_omega()) throw std::invalid_argument("color_count: infinite alphabet");
  return static_cast<u128>(1) + static_cast<u128>(n - 1) * (*r) * psi_bound;
}

std::vector<BinElem> BinFamily::colors() const {
  if (is_omega()) throw std::invalid_argument("colors: infinite alphabet");
  u128 cnt = color_count();
  if (cnt > (static_cast<u128>(1) << 32)) throw std::invalid_argument("colors: alphabet too large");
  std::vector<BinElem> out;
  out.reserve(static_cast<std::size_t>(cnt));
  out.push_back(BinElem::id());
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    for (std::uint64_t j = 0; j < *r; ++j)
      for (std::uint64_t k = 0; k < psi_bound; ++k)
        out.push_back(BinElem::a(i, static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k)));
  return out;
}

bool forbidden(const BinElem& u, const BinElem& v, const BinElem& w) {
  if (u.is_id()) return !(v == w);
  if (!v.colored || !w.colored) return false;
  return u.i == v.i && v.i == w.i && u.j == v.j && w.j <= u.j;
}

bool forbidden(const BinFamily& fam, const BinElem& u, const BinElem& v, const BinElem& w) {
  fam.require(u);
  fam.require(v);
  fam.require(w);
  return forbidden(u, v, w);
}

bool triangle_forbidden(const BinElem& a, const BinElem& b, const BinElem& c) {
  return forbidden(a, b, c) || forbidden(c, b, a) || forbidden(a, c, b) || forbidden(b, c, a) ||
         forbidden(c, a, b) || forbidden(b, a, c);
}

}  // namespace bao
