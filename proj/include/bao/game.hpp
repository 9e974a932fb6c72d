#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bao/atoms.hpp"
#include "bao/transform.hpp"

namespace bao {

// Board state of the amalgamation game: an atom over Bin(n, omega) together
// with a Lambda-labelling of ordered triples, Lambda = (n+1)^3.
struct Hypernetwork {
  std::uint32_t dim = 0;
  std::uint32_t n = 0;  // alphabet parameter of Bin(n, omega)
  Atom f;
  std::vector<std::uint32_t> g;  // dim^3 labels, index (x*dim + y)*dim + z

  Hypernetwork() = default;
  Hypernetwork(std::uint32_t dim_, std::uint32_t n_, Atom f_, std::vector<std::uint32_t> g_);

  static std::uint32_t lambda(std::uint32_t n) { return (n + 1) * (n + 1) * (n + 1); }

  std::uint32_t label(std::uint32_t x, std::uint32_t y, std::uint32_t z) const {
    return g[(static_cast<std::size_t>(x) * dim + y) * dim + z];
  }
  void set_label(std::uint32_t x, std::uint32_t y, std::uint32_t z, std::uint32_t v) {
    g[(static_cast<std::size_t>(x) * dim + y) * dim + z] = v;
  }

  // g is constant on Id-congruent triples
  bool congruent() const;
  // f Forb-free, labels below Lambda, congruence
  bool valid() const;
  // no Id edge between distinct members of X
  bool strict_over(const std::vector<std::uint32_t>& X) const;

  bool operator==(const Hypernetwork&) const = default;
};

// h tau: f tau together with g(tau x, tau y, tau z).  t.target must equal
// h.dim; the result has dimension t.dim.
Hypernetwork hn_apply(const Hypernetwork& h, const Transform& t);

// Agreement of f off X-pairs and of g off X-involving triples (generalizes
// =_x and =_{xy}).
bool hn_equiv(const Hypernetwork& a, const Hypernetwork& b, const std::vector<std::uint32_t>& X);

Hypernetwork hn_restrict(const Hypernetwork& h, std::uint32_t m2);

struct Move {
  enum class Kind { MDim, Amalg };
  Kind kind = Kind::MDim;
  Hypernetwork theta;  // MDim
  std::uint32_t u = 0, v = 0, x = 0, y = 0;
  Transform sigma, tau;  // maps on n+1
};

struct Provenance {
  enum class Case { Pad, Reuse, Construct };
  Case kase = Case::Pad;
  std::optional<std::uint32_t> reuse_round;
  std::optional<std::uint32_t> k;  // chosen element of K (an odd natural)
  std::optional<std::uint32_t> i;  // chosen colour index
};

struct PlayState {
  std::uint32_t m = 0, n = 0;
  std::vector<Hypernetwork> history;
  std::vector<Provenance> provenance;
};

// J is realized as omega with K the odd naturals, so J \ K (the evens) is
// infinite, as the strategy's colour-index selection requires.
inline bool in_chain_K(std::uint32_t j) { return (j & 1) == 1; }

// The strategy's response to one move.  Throws std::invalid_argument on an
// illegal move and StrategyError if the strategy cannot be implemented,
// which a conforming adversary can never force.
Hypernetwork eloise_respond(const PlayState& state, const Move& move,
                            Provenance* provenance = nullptr);

// Checks the move contract exactly: restriction equality for MDim, the two
// =-conditions for Amalg, and the hypernetwork invariants on the response.
bool validate_response(const PlayState& state, const Move& move, const Hypernetwork& response);

struct SchedulerBounds {
  std::uint32_t j_outside_k = 2;    // prefix length taken from J\K and from K
  std::uint32_t k_max = 2;          // superscript bound in the sub-alphabet
  std::uint32_t lambda_subset = 8;  // labels {0 .. min(Lambda, this)-1}
  // adversary scan budgets per round
  std::uint32_t scan_budget = 400000;
  std::uint32_t deep_checks = 48;
};

struct RoundRecord {
  Move move;
  Hypernetwork response;
  Provenance prov;
};

struct Transcript {
  std::uint32_t m = 0, n = 0;
  std::string scheduler;  // "exhaustive" | "random"
  SchedulerBounds bounds;
  std::uint64_t seed = 0;
  std::uint32_t rounds_requested = 0;
  std::vector<RoundRecord> rounds;
};

// Fair bounded interleaving of m-dimensional moves with amalgamation moves
// over the growing history; amalgamation candidates that are superfluous
// (solvable by reuse) or that fail the minimality discipline (an earlier
// round already matches one side) are skipped.  Deterministic.
Transcript run_play_exhaustive(std::uint32_t m, std::uint32_t n, std::uint32_t rounds,
                               const SchedulerBounds& bounds = {});

// Seeded random move generation; superfluous moves are allowed, so the reuse
// branch of the strategy gets exercised.  Deterministic per seed.
Transcript run_play_random(std::uint32_t m, std::uint32_t n, std::uint32_t rounds,
                           std::uint64_t seed, const SchedulerBounds& bounds = {});

struct TranscriptValidation {
  bool ok = true;
  std::uint32_t bad_round = 0;
  std::string reason;
};

// Independent replay: every recorded move must be well-formed and legal, and
// every recorded response must pass validate_response.
TranscriptValidation validate_transcript(const Transcript& t);

// Strategy-level invariants, checkable from a transcript alone.
bool padding_nonstrict_holds(const Transcript& t, std::string* why = nullptr);
bool k_freshness_holds(const Transcript& t, std::string* why = nullptr);

struct FragmentReport {
  struct Obligation {
    std::string kind;
    std::uint32_t round = 0;
    bool ok = true;
    std::string detail;
  };
  std::vector<Obligation> obligations;
  bool ok() const {
    for (const auto& o : obligations)
      if (!o.ok) return false;
    return true;
  }
};

// Closure properties of the played fragment H: every scheduled m-move has an
// extension in H, every scheduled amalgamation instance has a solution in H,
// and the map iota(f) = {h in H : h|m = f} is injective on scheduled m-atoms
// and consistent with diagonals and m-substitutions on the fragment.
FragmentReport fragment_check(const Transcript& t);

}  // namespace bao
