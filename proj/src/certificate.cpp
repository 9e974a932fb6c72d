#include "bao/certificate.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "bao/errors.hpp"

namespace bao {

long long ind_index(std::uint32_t i, const std::vector<std::uint32_t>& I,
                    const std::vector<std::uint32_t>& J) {
  if (I.size() != J.size()) throw std::invalid_argument("ind: I and J must share a domain");
  const std::size_t n = I.size();
  long long best = -1;
  for (std::size_t l = 0; l + 1 < n; ++l)
    if (I[l] == i) best = std::max(best, static_cast<long long>(J[l]));
  return best;
}

long long rank_of(const std::vector<std::uint32_t>& I, const std::vector<std::uint32_t>& J,
                  std::uint32_t n) {
  long long sum = 0;
  for (std::uint32_t i = 0; i + 1 < n; ++i) sum += ind_index(i, I, J);
  return sum;
}

CountingTrace counting_chain(std::uint32_t n, std::uint64_t r) {
  if (n < 2) throw std::invalid_argument("counting_chain: n must be >= 2");
  if (r < 1) throw std::invalid_argument("counting_chain: r must be >= 1");
  CountingTrace tr;
  tr.n = n;
  tr.r = r;
  tr.a = static_cast<std::uint64_t>(n - 1) * r;
  const std::uint64_t a = tr.a;

  u128 psi_v = psi(n, r);
  tr.psi_value = to_string(psi_v);
  tr.base_bound = psi_v > kappa(a, a);

  for (std::uint64_t t = 0; t < a; ++t) {
    CountingStep step;
    step.t = t;
    u128 here = kappa(a, a - t);
    u128 next = kappa(a, a - t - 1);
    step.kappa_here = to_string(here);
    step.kappa_next = to_string(next);
    step.exact = here >= 1 && (here - 1) % a == 0 && (here - 1) / a == next;
    tr.steps.push_back(std::move(step));
  }
  tr.kappa_zero_at_end = kappa(a, 0) == 0;
  const long long lhs = 2 - static_cast<long long>(n) + static_cast<long long>(a);
  const long long mr = static_cast<long long>(n - 1) * (static_cast<long long>(r) - 1);
  tr.terminal_inequality = lhs == mr + 1 && lhs > mr;
  return tr;
}

Element alpha_raw(const Algebra& host, const std::vector<Element>& embed,
                  const AtomStructure& small, const std::vector<BinElem>& B, std::uint32_t i,
                  std::uint32_t j) {
  if (embed.size() != small.size())
    throw std::invalid_argument("alpha: embed is not total on the atoms of the structure");
  if (i >= host.dim() || j >= host.dim())
    throw std::invalid_argument("alpha: index exceeds host dimension");
  std::set<std::uint64_t> keys;
  for (const BinElem& b : B) keys.insert(b.key());
  const Transform s0i = make_replacement(host.dim(), 0, i);
  const Transform s1j = make_replacement(host.dim(), 1, j);
  Element out = host.zero();
  for (std::size_t a = 0; a < small.size(); ++a) {
    if (!keys.count(small.atoms[a].get(0, 1).key())) continue;
    out |= host.substitute(s0i, host.substitute(s1j, embed[a]));
  }
  return out;
}

Element alpha_element(const Algebra& host, const std::vector<Element>& embed,
                      const AtomStructure& small, const AlphaSpec& spec) {
  if (!(spec.i < spec.j)) throw std::invalid_argument("alpha: requires i < j");
  for (const BinElem& b : spec.B) small.family.require(b);
  return alpha_raw(host, embed, small, spec.B, spec.i, spec.j);
}

namespace {

struct AlphaTables {
  // per colour key, per (i, j) with i <= j < d: not all pairs are needed;
  // we store the (l, n) and (0, n) uses plus the full eq stages on demand
  std::map<std::uint64_t, std::map<std::pair<std::uint32_t, std::uint32_t>, Element>> cache;
  const Algebra* host;
  const std::vector<Element>* embed;
  const AtomStructure* small;

  const Element& at(const BinElem& b, std::uint32_t i, std::uint32_t j) {
    auto& slot = cache[b.key()];
    auto it = slot.find({i, j});
    if (it == slot.end())
      it = slot.emplace(std::make_pair(i, j), alpha_raw(*host, *embed, *small, {b}, i, j)).first;
    return it->second;
  }
};

}  // namespace

ReplayOutcome replay_derivation(const Algebra& host, const std::vector<Element>& embed,
                                const AtomStructure& small, std::uint32_t m, std::uint32_t n,
                                std::uint64_t r) {
  ReplayOutcome out;
  out.max_rank = static_cast<long long>(n - 1) * (static_cast<long long>(r) - 1);

  auto precondition = [&](const std::string& why) {
    out.kind = ReplayOutcome::Kind::PreconditionFailure;
    out.stage = "preconditions";
    out.reason = why;
    return out;
  };

  if (m < 3 || small.m != m) return precondition("small structure must have dimension m >= 3");
  if (small.n() != n || small.r() != r) return precondition("small structure parameters differ");
  if (host.dim() < n + 1) return precondition("host dimension must be at least n+1");
  if (embed.size() != small.size()) return precondition("embed is not total on atoms");
  for (const Element& e : embed)
    if (e.size() != host.atom_count()) return precondition("embed element size mismatch");
  if (!sig_has_replacements(host.sig()))
    return precondition("host signature lacks the replacements the derivation uses");

  if (r == 0) {
    out.kind = ReplayOutcome::Kind::TrivialNoRounds;
    out.stage = "trivial";
    out.reason = "(n-1) r = 0: no rounds to replay";
    return out;
  }

  auto stuck = [&](std::string stage, std::string reason, std::uint32_t round,
                   std::vector<std::uint64_t> data = {}) {
    out.kind = ReplayOutcome::Kind::StuckAt;
    out.stage = std::move(stage);
    out.reason = std::move(reason);
    out.round = round;
    out.data = std::move(data);
    return out;
  };

  const std::vector<BinElem> colors = small.colors();
  AlphaTables alphas{{}, &host, &embed, &small};

  // the alphas over all colours must sum to the unit
  for (std::uint32_t i = 0; i < n + 1; ++i)
    for (std::uint32_t j = i + 1; j < n + 1; ++j) {
      Element sum = host.zero();
      for (const BinElem& b : colors) sum |= alphas.at(b, i, j);
      if (!(sum == host.unit()))
        return stuck("alpha-partition", "sum of alpha(b, i, j) over all colours is not the unit", 0,
                     {i, j});
    }

  // forbidden triples must have vanishing alpha products
  for (const BinElem& u : colors)
    for (const BinElem& v : colors)
      for (const BinElem& w : colors) {
        if (!forbidden(u, v, w)) continue;
        for (std::uint32_t i = 0; i < n + 1; ++i)
          for (std::uint32_t j = i + 1; j < n + 1; ++j)
            for (std::uint32_t k = j + 1; k < n + 1; ++k) {
              Element prod = alphas.at(u, i, j) & alphas.at(v, j, k) & alphas.at(w, i, k);
              if (prod.any())
                return stuck("alpha-forbidden",
                             "alpha(u,i,j).alpha(v,j,k).alpha(w,i,k) is nonzero on a forbidden "
                             "triple",
                             0, {u.key(), v.key(), w.key(), i, j, k});
            }
      }

  // beta^k = alpha(a^k(0,0), 0, n) . prod_{i<n} alpha(Id, 0, i)
  Element id_prod = host.unit();
  for (std::uint32_t i = 0; i < n; ++i) id_prod &= alphas.at(BinElem::id(), 0, i);
  std::vector<Element> S;
  for (std::uint64_t k = 0; k < small.psi_bound(); ++k) {
    Element beta = alphas.at(BinElem::a(0, 0, static_cast<std::uint32_t>(k)), 0, n) & id_prod;
    if (beta.none())
      return stuck("beta-nonzero", "beta^k vanished", 0, {k});
    for (std::size_t k2 = 0; k2 < S.size(); ++k2)
      if (S[k2].intersects(beta))
        return stuck("beta-disjoint", "beta^k and beta^k' overlap", 0, {k2, k});
    S.push_back(std::move(beta));
  }

  const std::uint64_t a_par = static_cast<std::uint64_t>(n - 1) * r;
  std::vector<std::uint32_t> I(n, 0), J(n, 0);
  long long rho = rank_of(I, J, n);

  auto record_chain = [&](std::uint32_t t) {
    ReplayOutcome::ChainEntry e;
    e.t = t;
    e.size = S.size();
    u128 bound = kappa(a_par, a_par - t);
    e.bound = to_string(bound);
    e.ok = static_cast<u128>(S.size()) > bound;
    out.chain.push_back(std::move(e));
  };
  record_chain(0);

  // the unique-k bookkeeping: the k-class alphas at (0, n)
  auto k_tag = [&](const Element& beta, std::uint64_t* tag) -> int {
    int found = 0;
    for (std::uint64_t k = 0; k < small.psi_bound(); ++k) {
      std::vector<BinElem> cls;
      for (const BinElem& b : colors)
        if (in_a_sup(b, static_cast<std::uint32_t>(k))) cls.push_back(b);
      Element ak = host.zero();
      for (const BinElem& b : cls) ak |= alphas.at(b, 0, n);
      if (beta.subset_of(ak)) {
        ++found;
        if (tag) *tag = k;
      }
    }
    return found;
  };

  for (std::uint32_t t = 0; t < a_par; ++t) {
    if (S.size() < 2)
      return stuck("chain-exhausted", "S_t has fewer than two members", t);

    // first u < v with I(u) = I(v); l by the J comparison
    std::uint32_t u = n, v = n;
    for (std::uint32_t uu = 0; uu < n && u == n; ++uu)
      for (std::uint32_t vv = uu + 1; vv < n; ++vv)
        if (I[uu] == I[vv]) {
          u = uu;
          v = vv;
          break;
        }
    if (u == n) return stuck("pigeonhole", "no repeated value in I_t", t);
    const std::uint32_t l = (J[u] <= J[v]) ? u : v;

    const Element beta0 = S[0];
    const Element c_n_beta0 = host.cylindrify(n, beta0);
    const Transform s_nl = make_replacement(host.dim(), n, l);
    const Element c_l_beta0 = host.cylindrify(l, beta0);

    std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Element>> buckets;
    for (std::size_t bi = 1; bi < S.size(); ++bi) {
      const Element& beta = S[bi];
      if (!(host.cylindrify(n, beta) == c_n_beta0))
        return stuck("cylinder-agreement", "c_n beta differs from c_n beta_0", t,
                     {static_cast<std::uint64_t>(bi)});
      Element gamma = c_l_beta0 & host.substitute(s_nl, host.cylindrify(l, beta));
      if (gamma.none())
        return stuck("cyl-nonzero", "c_l beta_0 . s_[n/l] c_l beta vanished", t,
                     {static_cast<std::uint64_t>(bi), l});
      for (const BinElem& b : colors) {
        Element delta = gamma & alphas.at(b, l, n);
        if (delta.none()) continue;
        if (b.is_id())
          return stuck("delta-id-excluded", "a nonzero delta used b = Id", t,
                       {static_cast<std::uint64_t>(bi), l});
        auto& bucket = buckets[{b.i, b.j}];
        if (std::find(bucket.begin(), bucket.end(), delta) == bucket.end())
          bucket.push_back(std::move(delta));
      }
    }

    if (buckets.empty()) return stuck("chain-exhausted", "every bucket S(i, j) is empty", t);
    auto best = buckets.begin();
    for (auto it = buckets.begin(); it != buckets.end(); ++it)
      if (it->second.size() > best->second.size()) best = it;
    const auto [i0, j0] = best->first;

    std::vector<std::uint32_t> I2 = I, J2 = J;
    I2[l] = i0;
    J2[l] = j0;
    const long long rho2 = rank_of(I2, J2, n);
    if (rho2 <= rho)
      return stuck("rank-increase", "rank failed to increase at the chosen l", t, {l, i0, j0});

    // invariants of the new set
    for (std::size_t bi = 0; bi < best->second.size(); ++bi) {
      const Element& beta = best->second[bi];
      for (std::uint32_t p = 0; p < n; ++p) {
        std::vector<BinElem> cls;
        for (const BinElem& b : colors)
          if (in_a_cell(b, I2[p], J2[p])) cls.push_back(b);
        Element bound = host.zero();
        for (const BinElem& b : cls) bound |= alphas.at(b, p, n);
        if (!beta.subset_of(bound))
          return stuck("class-bound", "a new member escapes alpha(a(I(p), J(p)), p, n)", t,
                       {static_cast<std::uint64_t>(bi), p});
      }
    }
    std::set<std::uint64_t> tags;
    for (std::size_t bi = 0; bi < best->second.size(); ++bi) {
      std::uint64_t tag = 0;
      int found = k_tag(best->second[bi], &tag);
      if (found != 1)
        return stuck("unique-k", "a member lacks a unique k with beta <= alpha(a^k, 0, n)", t,
                     {static_cast<std::uint64_t>(bi), static_cast<std::uint64_t>(found)});
      if (!tags.insert(tag).second)
        return stuck("unique-k", "two members share a k tag", t,
                     {static_cast<std::uint64_t>(bi), tag});
    }

    S = std::move(best->second);
    I = std::move(I2);
    J = std::move(J2);
    rho = rho2;
    out.rounds_completed = t + 1;
    record_chain(t + 1);
  }

  out.final_rank = rho;
  if (rho > out.max_rank) {
    out.kind = ReplayOutcome::Kind::InputInconsistent;
    out.stage = "contradiction";
    out.reason = "derivation completed with rank above the attainable maximum; the claimed "
                 "embedding cannot exist";
  } else {
    out.kind = ReplayOutcome::Kind::StuckAt;
    out.stage = "rank-conclusion";
    out.reason = "rounds completed without exceeding the maximum rank";
    out.round = static_cast<std::uint32_t>(a_par);
  }
  return out;
}

}  // namespace bao
