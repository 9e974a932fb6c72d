#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bao/algebra.hpp"
#include "bao/arith.hpp"

namespace bao {

// ind(i, I, J) = max({J(l) : l < n-1, I(l) = i} u {-1}).  The written range
// is l < n-1 although I's domain is {0..n-1}; implemented as written.
long long ind_index(std::uint32_t i, const std::vector<std::uint32_t>& I,
                    const std::vector<std::uint32_t>& J);

// rank(I, J) = sum over i < n-1 of ind(i, I, J)
long long rank_of(const std::vector<std::uint32_t>& I, const std::vector<std::uint32_t>& J,
                  std::uint32_t n);

struct CountingStep {
  std::uint64_t t = 0;
  std::string kappa_here;   // kappa(a, a-t)
  std::string kappa_next;   // kappa(a, a-t-1)
  bool exact = false;       // (kappa(a,a-t) - 1) / a == kappa(a, a-t-1), exactly
};

struct CountingTrace {
  std::uint32_t n = 0;
  std::uint64_t r = 0;
  std::uint64_t a = 0;  // (n-1) r
  std::string psi_value;
  bool base_bound = false;          // psi(n,r) > kappa(a,a)
  std::vector<CountingStep> steps;  // one per t < a
  bool kappa_zero_at_end = false;   // kappa(a, 0) == 0
  bool terminal_inequality = false; // 2-n+(n-1)r == (n-1)(r-1)+1 > (n-1)(r-1)
  bool ok() const {
    if (!base_bound || !kappa_zero_at_end || !terminal_inequality) return false;
    for (const auto& s : steps)
      if (!s.exact) return false;
    return true;
  }
};

// Verifies the exact division identities of the counting argument.
// Requires n >= 2, r >= 1; throws OverflowError past 128 bits.
CountingTrace counting_chain(std::uint32_t n, std::uint64_t r);

struct AlphaSpec {
  std::vector<BinElem> B;
  std::uint32_t i = 0, j = 0;  // i < j
};

// alpha(B, i, j) = sum over atoms f with f(0,1) in B of
// s_[0/i] s_[1/j] embed(f), computed in the host.
Element alpha_element(const Algebra& host, const std::vector<Element>& embed,
                      const AtomStructure& small, const AlphaSpec& spec);

// Same sum without the i < j gate (the beta construction uses alpha(Id,0,0)).
Element alpha_raw(const Algebra& host, const std::vector<Element>& embed,
                  const AtomStructure& small, const std::vector<BinElem>& B, std::uint32_t i,
                  std::uint32_t j);

struct ReplayOutcome {
  enum class Kind { PreconditionFailure, TrivialNoRounds, StuckAt, InputInconsistent };
  Kind kind = Kind::StuckAt;
  std::string stage;   // which equation / property failed
  std::string reason;
  std::uint32_t round = 0;
  std::vector<std::uint64_t> data;  // stage-dependent indices
  std::uint32_t rounds_completed = 0;
  long long final_rank = 0;
  long long max_rank = 0;
  struct ChainEntry {
    std::uint32_t t = 0;
    std::uint64_t size = 0;
    std::string bound;  // kappa(a, a-t)
    bool ok = false;    // size > bound
  };
  std::vector<ChainEntry> chain;
};

// Replays the counting-certificate induction inside `host` against the atom map
// `embed` of Rd_Sc C(m,n,r).  Shape violations yield PreconditionFailure;
// equation or bookkeeping failures yield StuckAt naming the stage; r = 0
// yields TrivialNoRounds; mechanically completing every round certifies that
// the input could not have been what it claims and yields InputInconsistent.
ReplayOutcome replay_derivation(const Algebra& host, const std::vector<Element>& embed,
                                const AtomStructure& small, std::uint32_t m, std::uint32_t n,
                                std::uint64_t r);

}  // namespace bao
