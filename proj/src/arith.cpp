#include "bao/arith.hpp"

#include <algorithm>

namespace bao {

std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

u128 kappa(std::uint64_t x, std::uint64_t y) {
  u128 acc = 0;
  for (std::uint64_t step = 0; step < y; ++step) {
    u128 prod;
    if (__builtin_mul_overflow(static_cast<u128>(x), acc, &prod))
      throw OverflowError("kappa(" + std::to_string(x) + ", " + std::to_string(y) +
                          ") exceeds 128-bit range");
    u128 next;
    if (__builtin_add_overflow(prod, static_cast<u128>(1), &next))
      throw OverflowError("kappa(" + std::to_string(x) + ", " + std::to_string(y) +
                          ") exceeds 128-bit range");
    acc = next;
  }
  return acc;
}

u128 psi(std::uint64_t n, std::uint64_t r) {
  if (n < 2) throw std::invalid_argument("psi: n must be >= 2");
  u128 a128 = static_cast<u128>(n - 1) * r;
  if (a128 > ~static_cast<std::uint64_t>(0))
    throw OverflowError("psi: (n-1)*r does not fit in 64 bits");
  std::uint64_t a = static_cast<std::uint64_t>(a128);
  u128 k = kappa(a, a);
  u128 out;
  if (__builtin_add_overflow(k, static_cast<u128>(1), &out))
    throw OverflowError("psi(" + std::to_string(n) + ", " + std::to_string(r) +
                        ") exceeds 128-bit range");
  return out;
}

std::uint64_t psi_u64(std::uint64_t n, std::uint64_t r) {
  u128 p = psi(n, r);
  if (p > ~static_cast<std::uint64_t>(0))
    throw OverflowError("psi(" + std::to_string(n) + ", " + std::to_string(r) +
                        ") does not fit in 64 bits");
  return static_cast<std::uint64_t>(p);
}

GrowthParams::GrowthParams(std::uint64_t n_, std::uint64_t r_) : n(n_), r(r_) {
  if (n < 2) throw std::invalid_argument("GrowthParams: n must be >= 2");
}

}  // namespace bao
