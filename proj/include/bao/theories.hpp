#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bao/algebra.hpp"

namespace bao {

// Terms over the BAO signature with index metavariables (slots 0..3 read as
// i, j, k, l) resolved at instantiation time.
struct Term {
  enum class Kind : std::uint8_t {
    Var, Zero, One, Plus, Times, Minus, Diag, Cyl, SubRepl, SubTransp, SubFull
  };
  Kind kind = Kind::Zero;
  std::uint8_t var = 0;                  // Var
  std::uint8_t idx0 = 0, idx1 = 0;       // metavariable slots
  std::shared_ptr<const Transform> tau;  // SubFull: a concrete map
  std::vector<Term> children;

  static Term v(std::uint8_t n);
  static Term zero();
  static Term one();
  static Term plus(Term a, Term b);
  static Term times(Term a, Term b);
  static Term minus(Term a);
  static Term diag(std::uint8_t i, std::uint8_t j);
  static Term cyl(std::uint8_t i, Term a);
  static Term sub_repl(std::uint8_t i, std::uint8_t j, Term a);
  static Term sub_transp(std::uint8_t i, std::uint8_t j, Term a);
  static Term sub_full(Transform tau, Term a);

  Element eval(const Algebra& A, const std::vector<std::uint32_t>& idx_env,
               const std::vector<Element>& elem_env) const;

  bool uses_diag() const;
  bool uses_transp() const;
  bool uses_repl() const;
  bool uses_full_sub() const;
  bool has_minus() const;
  void count_vars(std::vector<std::uint32_t>& counts) const;
  std::string show() const;  // for reports
};

// One appendix axiom (or one conjunct of one), as a two-sided schema.
struct EquationSchema {
  std::string id;
  std::string group;  // sc / qpa / qpea / ca / df
  int item = 0;       // numbered item within its source list
  bool externally_sourced = false;  // true for the CA postulates
  Term lhs, rhs;
  std::uint8_t n_index_vars = 0;
  std::uint8_t n_elem_vars = 0;
  // metavariable pairs required to take distinct values
  std::vector<std::pair<std::uint8_t, std::uint8_t>> distinct_pairs;
  // both sides additive in every element variable (checkable on atoms)
  bool additive = false;

  bool admits(std::uint32_t dim, const std::vector<std::uint32_t>& tuple) const;
};

// The full schema list for a class marker.  Sc yields the nine numbered
// items as 13 schemas (item 1 contributes its four conjuncts, item 3 splits
// into +/- preservation); QPA/QPEA extend Sc; CA is the standard
// seven-postulate axiomatization (externally sourced); Df is the
// cylindrifier laws; PEA shares QPEA's schemas with full s_tau admitted in
// terms.
std::vector<EquationSchema> axiom_suite(Signature k);

enum class CheckMode { Atoms, Exhaustive, Sampled };
enum class ModePolicy { Auto, AtomsOnly, ExhaustiveOnly, SampledOnly };

std::string to_string(CheckMode m);

struct Counterexample {
  std::vector<std::uint32_t> indices;                  // metavariable values
  std::vector<std::vector<std::uint32_t>> elements;    // atom-index lists per element var
};

struct CheckReport {
  std::string schema_id;
  CheckMode mode = CheckMode::Atoms;
  bool additive = false;
  std::uint64_t instantiations = 0;
  bool passed = false;
  bool budget_exceeded = false;
  std::optional<Counterexample> counterexample;
};

inline constexpr std::uint64_t kDefaultCheckBudget = 1ull << 22;
// Auto mode caps sampled schemas at this many evaluations; an explicit
// Sampled run uses the caller's budget unchanged.
inline constexpr std::uint64_t kAutoSampleEvaluations = 1ull << 15;

// Atoms mode is refused (std::invalid_argument) for non-additive schemas.
CheckReport check_schema(const Algebra& A, const EquationSchema& s, CheckMode mode,
                         std::uint64_t budget = kDefaultCheckBudget, std::uint64_t seed = 0);

// Re-evaluates a recorded counterexample; true iff the two sides still differ.
bool replay_counterexample(const Algebra& A, const EquationSchema& s, const Counterexample& ce);

struct TheoryReport {
  std::vector<CheckReport> reports;
  bool all_passed = true;
  bool any_budget_exceeded = false;
};

TheoryReport check_theory(const Algebra& A, Signature k, ModePolicy policy = ModePolicy::Auto,
                          std::uint64_t budget = kDefaultCheckBudget, std::uint64_t seed = 0);

}  // namespace bao
