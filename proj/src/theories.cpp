#include "bao/theories.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "bao/errors.hpp"

namespace bao {

Term Term::v(std::uint8_t n) {
  Term t;
  t.kind = Kind::Var;
  t.var = n;
  return t;
}
Term Term::zero() { return Term{}; }
Term Term::one() {
  Term t;
  t.kind = Kind::One;
  return t;
}
Term Term::plus(Term a, Term b) {
  Term t;
  t.kind = Kind::Plus;
  t.children = {std::move(a), std::move(b)};
  return t;
}
Term Term::times(Term a, Term b) {
  Term t;
  t.kind = Kind::Times;
  t.children = {std::move(a), std::move(b)};
  return t;
}
Term Term::minus(Term a) {
  Term t;
  t.kind = Kind::Minus;
  t.children = {std::move(a)};
  return t;
}
Term Term::diag(std::uint8_t i, std::uint8_t j) {
  Term t;
  t.kind = Kind::Diag;
  t.idx0 = i;
  t.idx1 = j;
  return t;
}
Term Term::cyl(std::uint8_t i, Term a) {
  Term t;
  t.kind = Kind::Cyl;
  t.idx0 = i;
  t.children = {std::move(a)};
  return t;
}
Term Term::sub_repl(std::uint8_t i, std::uint8_t j, Term a) {
  Term t;
  t.kind = Kind::SubRepl;
  t.idx0 = i;
  t.idx1 = j;
  t.children = {std::move(a)};
  return t;
}
Term Term::sub_transp(std::uint8_t i, std::uint8_t j, Term a) {
  Term t;
  t.kind = Kind::SubTransp;
  t.idx0 = i;
  t.idx1 = j;
  t.children = {std::move(a)};
  return t;
}
Term Term::sub_full(Transform tau, Term a) {
  Term t;
  t.kind = Kind::SubFull;
  t.tau = std::make_shared<Transform>(std::move(tau));
  t.children = {std::move(a)};
  return t;
}

Element Term::eval(const Algebra& A, const std::vector<std::uint32_t>& idx,
                   const std::vector<Element>& env) const {
  switch (kind) {
    case Kind::Var: return env.at(var);
    case Kind::Zero: return A.zero();
    case Kind::One: return A.unit();
    case Kind::Plus: return children[0].eval(A, idx, env) | children[1].eval(A, idx, env);
    case Kind::Times: return children[0].eval(A, idx, env) & children[1].eval(A, idx, env);
    case Kind::Minus: return A.complement(children[0].eval(A, idx, env));
    case Kind::Diag: return A.diagonal(idx.at(idx0), idx.at(idx1));
    case Kind::Cyl: return A.cylindrify(idx.at(idx0), children[0].eval(A, idx, env));
    case Kind::SubRepl:
      return A.subst_replacement(idx.at(idx0), idx.at(idx1), children[0].eval(A, idx, env));
    case Kind::SubTransp:
      return A.subst_transposition(idx.at(idx0), idx.at(idx1), children[0].eval(A, idx, env));
    case Kind::SubFull: return A.substitute(*tau, children[0].eval(A, idx, env));
  }
  throw std::logic_error("Term::eval: bad kind");
}

bool Term::uses_diag() const {
  if (kind == Kind::Diag) return true;
  for (const Term& c : children)
    if (c.uses_diag()) return true;
  return false;
}
bool Term::uses_transp() const {
  if (kind == Kind::SubTransp) return true;
  for (const Term& c : children)
    if (c.uses_transp()) return true;
  return false;
}
bool Term::uses_repl() const {
  if (kind == Kind::SubRepl) return true;
  for (const Term& c : children)
    if (c.uses_repl()) return true;
  return false;
}
bool Term::uses_full_sub() const {
  if (kind == Kind::SubFull) return true;
  for (const Term& c : children)
    if (c.uses_full_sub()) return true;
  return false;
}
bool Term::has_minus() const {
  if (kind == Kind::Minus) return true;
  for (const Term& c : children)
    if (c.has_minus()) return true;
  return false;
}
void Term::count_vars(std::vector<std::uint32_t>& counts) const {
  if (kind == Kind::Var) {
    if (var >= counts.size()) counts.resize(var + 1, 0);
    ++counts[var];
  }
  for (const Term& c : children) c.count_vars(counts);
}

std::string Term::show() const {
  auto mv = [](std::uint8_t n) { return std::string(1, "ijkl"[n]); };
  switch (kind) {
    case Kind::Var: return std::string(1, static_cast<char>('x' + var));
    case Kind::Zero: return "0";
    case Kind::One: return "1";
    case Kind::Plus: return "(" + children[0].show() + " + " + children[1].show() + ")";
    case Kind::Times: return "(" + children[0].show() + " . " + children[1].show() + ")";
    case Kind::Minus: return "-" + children[0].show();
    case Kind::Diag: return "d_" + mv(idx0) + mv(idx1);
    case Kind::Cyl: return "c_" + mv(idx0) + " " + children[0].show();
    case Kind::SubRepl: return "s[" + mv(idx0) + "/" + mv(idx1) + "] " + children[0].show();
    case Kind::SubTransp: return "s[" + mv(idx0) + "," + mv(idx1) + "] " + children[0].show();
    case Kind::SubFull: return "s_tau " + children[0].show();
  }
  return "?";
}

bool EquationSchema::admits(std::uint32_t, const std::vector<std::uint32_t>& tuple) const {
  for (auto [a, b] : distinct_pairs)
    if (tuple[a] == tuple[b]) return false;
  return true;
}

namespace {

EquationSchema make_schema(std::string id, std::string group, int item, Term lhs, Term rhs,
                           std::uint8_t n_index, std::uint8_t n_elem,
                           std::vector<std::pair<std::uint8_t, std::uint8_t>> distinct = {},
                           bool external = false) {
  EquationSchema s;
  s.id = std::move(id);
  s.group = std::move(group);
  s.item = item;
  s.externally_sourced = external;
  s.lhs = std::move(lhs);
  s.rhs = std::move(rhs);
  s.n_index_vars = n_index;
  s.n_elem_vars = n_elem;
  s.distinct_pairs = std::move(distinct);
  // additive = no complement and each element variable exactly once per side
  std::vector<std::uint32_t> lc, rc;
  s.lhs.count_vars(lc);
  s.rhs.count_vars(rc);
  lc.resize(n_elem, 0);
  rc.resize(n_elem, 0);
  s.additive = !s.lhs.has_minus() && !s.rhs.has_minus();
  for (std::uint8_t v = 0; v < n_elem && s.additive; ++v)
    if (lc[v] != 1 || rc[v] != 1) s.additive = false;
  return s;
}

using T = Term;
constexpr std::uint8_t I = 0, J = 1, K = 2, L = 3;

std::vector<EquationSchema> sc_schemas() {
  std::vector<EquationSchema> v;
  v.push_back(make_schema("sc1a-cyl-zero", "sc", 1, T::cyl(I, T::zero()), T::zero(), 1, 0));
  v.push_back(make_schema("sc1b-cyl-increasing", "sc", 1, T::times(T::v(0), T::cyl(I, T::v(0))),
                          T::v(0), 1, 1));
  v.push_back(make_schema("sc1c-cyl-meet", "sc", 1,
                          T::cyl(I, T::times(T::v(0), T::cyl(I, T::v(1)))),
                          T::times(T::cyl(I, T::v(0)), T::cyl(I, T::v(1))), 1, 2));
  v.push_back(make_schema("sc1d-cyl-commute", "sc", 1, T::cyl(I, T::cyl(J, T::v(0))),
                          T::cyl(J, T::cyl(I, T::v(0))), 2, 1));
  v.push_back(make_schema("sc2-subst-identity", "sc", 2, T::sub_repl(I, I, T::v(0)), T::v(0), 1, 1));
  v.push_back(make_schema("sc3a-subst-additive", "sc", 3,
                          T::sub_repl(I, J, T::plus(T::v(0), T::v(1))),
                          T::plus(T::sub_repl(I, J, T::v(0)), T::sub_repl(I, J, T::v(1))), 2, 2));
  v.push_back(make_schema("sc3b-subst-complement", "sc", 3,
                          T::sub_repl(I, J, T::minus(T::v(0))),
                          T::minus(T::sub_repl(I, J, T::v(0))), 2, 1));
  v.push_back(make_schema("sc4-subst-cyl-absorb", "sc", 4, T::sub_repl(I, J, T::cyl(I, T::v(0))),
                          T::cyl(I, T::v(0)), 2, 1));
  v.push_back(make_schema("sc5-cyl-subst-fixed", "sc", 5, T::cyl(I, T::sub_repl(I, J, T::v(0))),
                          T::sub_repl(I, J, T::v(0)), 2, 1, {{I, J}}));
  v.push_back(make_schema("sc6-subst-cyl-commute", "sc", 6, T::sub_repl(I, J, T::cyl(K, T::v(0))),
                          T::cyl(K, T::sub_repl(I, J, T::v(0))), 3, 1, {{K, I}, {K, J}}));
  v.push_back(make_schema("sc7-cyl-subst-swap", "sc", 7, T::cyl(I, T::sub_repl(J, I, T::v(0))),
                          T::cyl(J, T::sub_repl(I, J, T::v(0))), 2, 1));
  // disjoint replacements commute; the displayed form of this item garbles
  // the second factor (as printed it fails concretely at dimension 4, and
  // its side condition mentions l without using it)
  v.push_back(make_schema("sc8-subst-subst-commute", "sc", 8,
                          T::sub_repl(J, I, T::sub_repl(K, L, T::v(0))),
                          T::sub_repl(K, L, T::sub_repl(J, I, T::v(0))), 4, 1,
                          {{I, J}, {I, K}, {I, L}, {J, K}, {J, L}, {K, L}}));
  // item 9 uses the metavariables i, j, l of the display; slot 2 stands for l
  v.push_back(make_schema("sc9-subst-chain", "sc", 9,
                          T::sub_repl(K, I, T::sub_repl(J, K, T::v(0))),
                          T::sub_repl(K, I, T::sub_repl(J, I, T::v(0))), 3, 1));
  return v;
}

std::vector<EquationSchema> qpa_extra_schemas() {
  std::vector<EquationSchema> v;
  v.push_back(
      make_schema("qpa2a-transp-identity", "qpa", 2, T::sub_transp(I, I, T::v(0)), T::v(0), 1, 1));
  v.push_back(make_schema("qpa2b-transp-symmetric", "qpa", 2, T::sub_transp(I, J, T::v(0)),
                          T::sub_transp(J, I, T::v(0)), 2, 1));
  v.push_back(make_schema("qpa3a-transp-additive", "qpa", 3,
                          T::sub_transp(I, J, T::plus(T::v(0), T::v(1))),
                          T::plus(T::sub_transp(I, J, T::v(0)), T::sub_transp(I, J, T::v(1))), 2,
                          2));
  v.push_back(make_schema("qpa3b-transp-complement", "qpa", 3,
                          T::sub_transp(I, J, T::minus(T::v(0))),
                          T::minus(T::sub_transp(I, J, T::v(0))), 2, 1));
  v.push_back(make_schema("qpa10-transp-involution", "qpa", 10,
                          T::sub_transp(I, J, T::sub_transp(I, J, T::v(0))), T::v(0), 2, 1));
  v.push_back(make_schema("qpa11-transp-shift", "qpa", 11,
                          T::sub_transp(I, J, T::sub_transp(I, K, T::v(0))),
                          T::sub_transp(J, K, T::sub_transp(I, J, T::v(0))), 3, 1,
                          {{I, J}, {I, K}, {J, K}}));
  v.push_back(make_schema("qpa12-transp-vs-repl", "qpa", 12,
                          T::sub_transp(I, J, T::sub_repl(J, I, T::v(0))),
                          T::sub_repl(I, J, T::v(0)), 2, 1));
  return v;
}

std::vector<EquationSchema> qpea_extra_schemas() {
  std::vector<EquationSchema> v;
  v.push_back(make_schema("qpea13-diag-subst", "qpea", 13, T::sub_repl(I, J, T::diag(I, J)),
                          T::one(), 2, 0));
  // x . d_ij <= s_[i/j] x, normalized via a<=b iff a.b=a
  v.push_back(make_schema("qpea14-diag-leq-subst", "qpea", 14,
                          T::times(T::times(T::v(0), T::diag(I, J)), T::sub_repl(I, J, T::v(0))),
                          T::times(T::v(0), T::diag(I, J)), 2, 1));
  return v;
}

std::vector<EquationSchema> ca_schemas() {
  std::vector<EquationSchema> v;
  v.push_back(make_schema("ca1-cyl-zero", "ca", 1, T::cyl(I, T::zero()), T::zero(), 1, 0, {}, true));
  v.push_back(make_schema("ca2-cyl-increasing", "ca", 2, T::times(T::v(0), T::cyl(I, T::v(0))),
                          T::v(0), 1, 1, {}, true));
  v.push_back(make_schema("ca3-cyl-meet", "ca", 3, T::cyl(I, T::times(T::v(0), T::cyl(I, T::v(1)))),
                          T::times(T::cyl(I, T::v(0)), T::cyl(I, T::v(1))), 1, 2, {}, true));
  v.push_back(make_schema("ca4-cyl-commute", "ca", 4, T::cyl(I, T::cyl(J, T::v(0))),
                          T::cyl(J, T::cyl(I, T::v(0))), 2, 1, {}, true));
  v.push_back(make_schema("ca5-diag-reflexive", "ca", 5, T::diag(I, I), T::one(), 1, 0, {}, true));
  v.push_back(make_schema("ca6-diag-composition", "ca", 6, T::diag(I, J),
                          T::cyl(K, T::times(T::diag(I, K), T::diag(K, J))), 3, 0,
                          {{K, I}, {K, J}}, true));
  v.push_back(make_schema("ca7-diag-functional", "ca", 7,
                          T::times(T::cyl(I, T::times(T::diag(I, J), T::v(0))),
                                   T::cyl(I, T::times(T::diag(I, J), T::minus(T::v(0))))),
                          T::zero(), 2, 1, {{I, J}}, true));
  return v;
}

std::vector<EquationSchema> df_schemas() {
  std::vector<EquationSchema> v;
  v.push_back(make_schema("df1-cyl-zero", "df", 1, T::cyl(I, T::zero()), T::zero(), 1, 0));
  v.push_back(make_schema("df2-cyl-increasing", "df", 2, T::times(T::v(0), T::cyl(I, T::v(0))),
                          T::v(0), 1, 1));
  v.push_back(make_schema("df3-cyl-meet", "df", 3, T::cyl(I, T::times(T::v(0), T::cyl(I, T::v(1)))),
                          T::times(T::cyl(I, T::v(0)), T::cyl(I, T::v(1))), 1, 2));
  v.push_back(make_schema("df4-cyl-commute", "df", 4, T::cyl(I, T::cyl(J, T::v(0))),
                          T::cyl(J, T::cyl(I, T::v(0))), 2, 1));
  return v;
}

}  // namespace

std::vector<EquationSchema> axiom_suite(Signature k) {
  switch (k) {
    case Signature::Df: return df_schemas();
    case Signature::Sc: return sc_schemas();
    case Signature::CA: return ca_schemas();
    case Signature::QPA: {
      auto v = sc_schemas();
      auto extra = qpa_extra_schemas();
      v.insert(v.end(), extra.begin(), extra.end());
      return v;
    }
    case Signature::QPEA:
    case Signature::PEA: {
      auto v = sc_schemas();
      auto extra = qpa_extra_schemas();
      v.insert(v.end(), extra.begin(), extra.end());
      auto eq = qpea_extra_schemas();
      v.insert(v.end(), eq.begin(), eq.end());
      return v;
    }
    case Signature::PA:
      throw std::invalid_argument("axiom_suite: no schema list for pa (use qpa at finite dimension)");
  }
  throw std::invalid_argument("axiom_suite: unknown class marker");
}

std::string to_string(CheckMode m) {
  switch (m) {
    case CheckMode::Atoms: return "atoms";
    case CheckMode::Exhaustive: return "exhaustive";
    case CheckMode::Sampled: return "sampled";
  }
  return "?";
}

namespace {

void require_interpretable(const Algebra& A, const EquationSchema& s) {
  auto uses = [&](auto f) { return f(s.lhs) || f(s.rhs); };
  if (uses([](const Term& t) { return t.uses_diag(); }) && !sig_has_diagonals(A.sig()))
    throw SignatureError("check: schema " + s.id + " needs diagonals, signature is " +
                         to_string(A.sig()));
  if (uses([](const Term& t) { return t.uses_repl(); }) && !sig_has_replacements(A.sig()))
    throw SignatureError("check: schema " + s.id + " needs replacements");
  if (uses([](const Term& t) { return t.uses_transp(); }) && !sig_has_transpositions(A.sig()))
    throw SignatureError("check: schema " + s.id + " needs transpositions");
  if (uses([](const Term& t) { return t.uses_full_sub(); }) && !sig_has_full_substitutions(A.sig()))
    throw SignatureError("check: schema " + s.id + " needs full substitutions");
}

// iterate all metavariable tuples honoring distinctness; no symmetry reduction
template <typename F>
void for_each_tuple(const EquationSchema& s, std::uint32_t dim, F&& f) {
  std::vector<std::uint32_t> tuple(s.n_index_vars, 0);
  if (s.n_index_vars == 0) {
    f(tuple);
    return;
  }
  while (true) {
    if (s.admits(dim, tuple)) f(tuple);
    std::size_t p = 0;
    while (p < tuple.size()) {
      if (++tuple[p] < dim) break;
      tuple[p] = 0;
      ++p;
    }
    if (p == tuple.size()) break;
  }
}

}  // namespace

CheckReport check_schema(const Algebra& A, const EquationSchema& s, CheckMode mode,
                         std::uint64_t budget, std::uint64_t seed) {
  require_interpretable(A, s);
  if (mode == CheckMode::Atoms && !s.additive)
    throw std::invalid_argument("check_schema: atoms mode refused for non-additive schema " + s.id);

  CheckReport rep;
  rep.schema_id = s.id;
  rep.mode = mode;
  rep.additive = s.additive;

  const auto& atoms = A.carrier_atoms();
  const std::size_t K = atoms.size();
  const std::uint32_t P = s.n_elem_vars;

  // assignment generator per mode
  std::vector<Element> env(P, A.zero());

  auto test_env = [&](const std::vector<std::uint32_t>& tuple) -> bool {
    ++rep.instantiations;
    return s.lhs.eval(A, tuple, env) == s.rhs.eval(A, tuple, env);
  };

  auto record_failure = [&](const std::vector<std::uint32_t>& tuple) {
    Counterexample ce;
    ce.indices = tuple;
    for (const Element& e : env) ce.elements.push_back(e.to_indices());
    rep.counterexample = std::move(ce);
    rep.passed = false;
  };

  bool failed = false;
  bool budget_hit = false;

  if (mode == CheckMode::Atoms) {
    std::vector<std::size_t> pick(P, 0);
    for_each_tuple(s, A.dim(), [&](const std::vector<std::uint32_t>& tuple) {
      if (failed || budget_hit) return;
      if (P == 0) {
        if (rep.instantiations >= budget) {
          budget_hit = true;
          return;
        }
        if (!test_env(tuple)) {
          record_failure(tuple);
          failed = true;
        }
        return;
      }
      std::fill(pick.begin(), pick.end(), 0);
      if (K == 0) return;  // no atoms: vacuous
      while (true) {
        for (std::uint32_t v = 0; v < P; ++v) env[v] = atoms[pick[v]];
        if (rep.instantiations >= budget) {
          budget_hit = true;
          return;
        }
        if (!test_env(tuple)) {
          record_failure(tuple);
          failed = true;
          return;
        }
        std::size_t p = 0;
        while (p < pick.size()) {
          if (++pick[p] < K) break;
          pick[p] = 0;
          ++p;
        }
        if (p == pick.size()) break;
      }
    });
  } else if (mode == CheckMode::Exhaustive) {
    if (K > 62) {
      rep.budget_exceeded = true;
      return rep;
    }
    const std::uint64_t total = 1ull << K;
    std::vector<std::uint64_t> pick(P, 0);
    auto build = [&](std::uint64_t mask) {
      Element e = A.zero();
      for (std::size_t b = 0; b < K; ++b)
        if ((mask >> b) & 1) e |= atoms[b];
      return e;
    };
    for_each_tuple(s, A.dim(), [&](const std::vector<std::uint32_t>& tuple) {
      if (failed || budget_hit) return;
      std::fill(pick.begin(), pick.end(), 0);
      while (true) {
        for (std::uint32_t v = 0; v < P; ++v) env[v] = build(pick[v]);
        if (rep.instantiations >= budget) {
          budget_hit = true;
          return;
        }
        if (!test_env(tuple)) {
          record_failure(tuple);
          failed = true;
          return;
        }
        if (P == 0) break;
        std::size_t p = 0;
        while (p < pick.size()) {
          if (++pick[p] < total) break;
          pick[p] = 0;
          ++p;
        }
        if (p == pick.size()) break;
      }
    });
  } else {
    // sampled: per-tuple seeded generator, uniform subsets of carrier atoms
    std::uint64_t tuples = 0;
    for_each_tuple(s, A.dim(), [&](const std::vector<std::uint32_t>&) { ++tuples; });
    std::uint64_t per_tuple = tuples == 0 ? 0 : std::max<std::uint64_t>(1, budget / std::max<std::uint64_t>(tuples, 1));
    for_each_tuple(s, A.dim(), [&](const std::vector<std::uint32_t>& tuple) {
      if (failed) return;
      std::uint64_t h = seed ^ 0x9e3779b97f4a7c15ull;
      for (auto t : tuple) h = h * 0x100000001b3ull + t + 1;
      std::mt19937_64 rng(h);
      for (std::uint64_t it = 0; it < per_tuple && !failed; ++it) {
        for (std::uint32_t v = 0; v < P; ++v) {
          Element e = A.zero();
          for (std::size_t b = 0; b < K; ++b)
            if (rng() & 1) e |= atoms[b];
          env[v] = std::move(e);
        }
        if (!test_env(tuple)) {
          record_failure(tuple);
          failed = true;
        }
      }
    });
  }

  rep.budget_exceeded = budget_hit;
  rep.passed = !failed && !budget_hit;
  return rep;
}

bool replay_counterexample(const Algebra& A, const EquationSchema& s, const Counterexample& ce) {
  std::vector<Element> env;
  env.reserve(ce.elements.size());
  for (const auto& idx : ce.elements)
    env.push_back(DynBitset::from_indices(A.atom_count(), idx));
  return !(s.lhs.eval(A, ce.indices, env) == s.rhs.eval(A, ce.indices, env));
}

TheoryReport check_theory(const Algebra& A, Signature k, ModePolicy policy, std::uint64_t budget,
                          std::uint64_t seed) {
  TheoryReport out;
  const std::size_t K = A.carrier_atoms().size();
  for (const EquationSchema& s : axiom_suite(k)) {
    CheckMode mode;
    std::uint64_t schema_budget = budget;
    switch (policy) {
      case ModePolicy::AtomsOnly: mode = CheckMode::Atoms; break;
      case ModePolicy::ExhaustiveOnly: mode = CheckMode::Exhaustive; break;
      case ModePolicy::SampledOnly: mode = CheckMode::Sampled; break;
      case ModePolicy::Auto:
      default:
        if (s.additive) {
          mode = CheckMode::Atoms;
        } else if (K <= 62 && (1ull << K) <= budget) {
          mode = CheckMode::Exhaustive;
        } else {
          mode = CheckMode::Sampled;
          schema_budget = std::min(budget, kAutoSampleEvaluations);
        }
        break;
    }
    CheckReport rep = check_schema(A, s, mode, schema_budget, seed);
    out.all_passed = out.all_passed && rep.passed;
    out.any_budget_exceeded = out.any_budget_exceeded || rep.budget_exceeded;
    out.reports.push_back(std::move(rep));
  }
  return out;
}

}  // namespace bao
