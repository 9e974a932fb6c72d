#include <doctest.h>

#include <random>

#include "bao/arith.hpp"
#include "bao/transform.hpp"

using namespace bao;

TEST_CASE("kappa base and hand-unrolled values") {
  CHECK(kappa(5, 0) == 0);
  CHECK(kappa(0, 0) == 0);
  CHECK(kappa(2, 1) == 1);   // 1 + 2*0
  CHECK(kappa(2, 2) == 3);   // 1 + 2*1
  CHECK(kappa(3, 3) == 13);  // 1 + 3*(1 + 3*1)
}

TEST_CASE("kappa recurrence identity on random inputs") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    std::uint64_t a = rng() % 50;
    std::uint64_t b = 1 + rng() % 12;
    CHECK(kappa(a, b) - 1 == static_cast<u128>(a) * kappa(a, b - 1));
  }
}

TEST_CASE("kappa overflow is loud") {
  CHECK_THROWS_AS(kappa(1ull << 63, 4), OverflowError);
  // large but still in range
  CHECK_NOTHROW(kappa(1ull << 40, 3));
}

TEST_CASE("psi values") {
  CHECK(psi(3, 1) == 4);
  CHECK(psi(4, 1) == 14);
  for (std::uint64_t n = 2; n < 9; ++n) CHECK(psi(n, 0) == 1);
  CHECK_THROWS_AS(psi(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(GrowthParams(1, 0), std::invalid_argument);
}

TEST_CASE("replacement, transposition, apply") {
  CHECK(apply(make_replacement(3, 0, 2), 0) == 2);
  CHECK(apply(make_replacement(3, 0, 2), 1) == 1);
  CHECK(apply(make_replacement(3, 0, 2), 2) == 2);
  Transform t = make_transposition(3, 0, 1);
  CHECK(compose(t, t).is_identity());
  CHECK_THROWS_AS(make_replacement(3, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(apply(make_replacement(3, 0, 1), 5), std::invalid_argument);
}

TEST_CASE("composition matches two-step application") {
  Transform s = make_replacement(3, 0, 1);
  Transform t = make_replacement(3, 1, 2);
  Transform st = compose(s, t);
  for (std::uint32_t i = 0; i < 3; ++i) CHECK(apply(st, i) == apply(s, apply(t, i)));
  CHECK(apply(st, 1) == apply(s, apply(t, 1)));
}

TEST_CASE("compose is associative on random compatible triples") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 300; ++it) {
    std::uint32_t d = 2 + rng() % 5;
    auto rnd = [&](std::uint32_t dim, std::uint32_t tgt) {
      std::vector<std::uint32_t> img(dim);
      for (auto& v : img) v = rng() % tgt;
      return Transform(dim, tgt, img);
    };
    Transform a = rnd(d, d), b = rnd(d, d), c = rnd(d, d);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}

TEST_CASE("permutations factor into transpositions") {
  std::mt19937_64 rng(13);
  for (int it = 0; it < 200; ++it) {
    std::uint32_t d = 1 + rng() % 7;
    std::vector<std::uint32_t> img(d);
    for (std::uint32_t i = 0; i < d; ++i) img[i] = i;
    std::shuffle(img.begin(), img.end(), rng);
    Transform p(d, d, img);
    auto factors = factor_into_transpositions(p);
    Transform acc = identity_transform(d);
    for (const Transform& f : factors) {
      CHECK(f.is_transposition());
      acc = compose(acc, f);
    }
    CHECK(acc == p);
  }
  CHECK_THROWS_AS(factor_into_transpositions(make_replacement(3, 0, 1)), std::invalid_argument);
}

TEST_CASE("injectivity flag") {
  CHECK(identity_transform(4).is_injective());
  CHECK(make_transposition(4, 1, 2).is_injective());
  CHECK_FALSE(make_replacement(4, 1, 2).is_injective());
}
