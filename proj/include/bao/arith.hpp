#pragma once

#include <cstdint>
#include <string>

#include "bao/errors.hpp"

namespace bao {

using u128 = unsigned __int128;

std::string to_string(u128 v);

// kappa(x, 0) = 0, kappa(x, y+1) = 1 + x * kappa(x, y).
// Grows like x^y; computed in 128-bit unsigned arithmetic and throws
// OverflowError instead of wrapping.
u128 kappa(std::uint64_t x, std::uint64_t y);

// psi(n, r) = kappa((n-1)r, (n-1)r) + 1.  Requires n >= 2.
u128 psi(std::uint64_t n, std::uint64_t r);

// psi clamped into uint64_t, for structures that actually get built.
std::uint64_t psi_u64(std::uint64_t n, std::uint64_t r);

struct GrowthParams {
  std::uint64_t n;  // >= 2
  std::uint64_t r;
  GrowthParams(std::uint64_t n_, std::uint64_t r_);
  u128 psi() const { return bao::psi(n, r); }
};

}  // namespace bao
