#include "bao/game.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "bao/errors.hpp"

namespace bao {

Hypernetwork::Hypernetwork(std::uint32_t dim_, std::uint32_t n_, Atom f_,
                           std::vector<std::uint32_t> g_)
    : dim(dim_), n(n_), f(std::move(f_)), g(std::move(g_)) {
  if (f.m != dim) throw std::invalid_argument("Hypernetwork: atom dimension mismatch");
  if (g.size() != static_cast<std::size_t>(dim) * dim * dim)
    throw std::invalid_argument("Hypernetwork: label table has wrong size");
}

bool Hypernetwork::congruent() const {
  for (std::uint32_t x = 0; x < dim; ++x)
    for (std::uint32_t y = 0; y < dim; ++y)
      for (std::uint32_t z = 0; z < dim; ++z)
        for (std::uint32_t x2 = 0; x2 < dim; ++x2) {
          if (!f.get(x, x2).is_id()) continue;
          for (std::uint32_t y2 = 0; y2 < dim; ++y2) {
            if (!f.get(y, y2).is_id()) continue;
            for (std::uint32_t z2 = 0; z2 < dim; ++z2) {
              if (!f.get(z, z2).is_id()) continue;
              if (label(x, y, z) != label(x2, y2, z2)) return false;
            }
          }
        }
  return true;
}

bool Hypernetwork::valid() const {
  if (f.m != dim) return false;
  BinFamily fam = BinFamily::omega(n);
  if (!valid_atom(fam, f)) return false;
  const std::uint32_t L = lambda(n);
  for (std::uint32_t v : g)
    if (v >= L) return false;
  return congruent();
}

bool Hypernetwork::strict_over(const std::vector<std::uint32_t>& X) const {
  for (std::size_t a = 0; a < X.size(); ++a)
    for (std::size_t b = a + 1; b < X.size(); ++b)
      if (X[a] != X[b] && f.get(X[a], X[b]).is_id()) return false;
  return true;
}

Hypernetwork hn_apply(const Hypernetwork& h, const Transform& t) {
  if (t.target != h.dim) throw std::invalid_argument("hn_apply: transform target != dimension");
  Hypernetwork out;
  out.dim = t.dim;
  out.n = h.n;
  out.f = atom_apply(h.f, t);
  out.g.resize(static_cast<std::size_t>(t.dim) * t.dim * t.dim);
  for (std::uint32_t x = 0; x < t.dim; ++x)
    for (std::uint32_t y = 0; y < t.dim; ++y)
      for (std::uint32_t z = 0; z < t.dim; ++z)
        out.set_label(x, y, z, h.label(t(x), t(y), t(z)));
  return out;
}

bool hn_equiv(const Hypernetwork& a, const Hypernetwork& b, const std::vector<std::uint32_t>& X) {
  if (a.dim != b.dim || a.n != b.n) return false;
  auto in_X = [&](std::uint32_t v) {
    return std::find(X.begin(), X.end(), v) != X.end();
  };
  for (std::uint32_t p = 0; p < a.dim; ++p) {
    if (in_X(p)) continue;
    for (std::uint32_t q = p + 1; q < a.dim; ++q) {
      if (in_X(q)) continue;
      if (!(a.f.get(p, q) == b.f.get(p, q))) return false;
    }
  }
  for (std::uint32_t p = 0; p < a.dim; ++p) {
    if (in_X(p)) continue;
    for (std::uint32_t q = 0; q < a.dim; ++q) {
      if (in_X(q)) continue;
      for (std::uint32_t r = 0; r < a.dim; ++r) {
        if (in_X(r)) continue;
        if (a.label(p, q, r) != b.label(p, q, r)) return false;
      }
    }
  }
  return true;
}

Hypernetwork hn_restrict(const Hypernetwork& h, std::uint32_t m2) {
  if (m2 > h.dim) throw std::invalid_argument("hn_restrict: dimension grows");
  std::vector<std::uint32_t> img(m2);
  for (std::uint32_t i = 0; i < m2; ++i) img[i] = i;
  return hn_apply(h, Transform(m2, h.dim, std::move(img)));
}

namespace {

// least Id-connected vertex per vertex (the Id pattern of valid atoms is an
// equivalence)
std::vector<std::uint32_t> vertex_reps(const Atom& f) {
  std::vector<std::uint32_t> rep(f.m);
  for (std::uint32_t p = 0; p < f.m; ++p) {
    rep[p] = p;
    for (std::uint32_t q = 0; q < p; ++q)
      if (f.get(p, q).is_id()) {
        rep[p] = q;
        break;
      }
  }
  return rep;
}

std::size_t triple_key(std::uint32_t d, std::uint32_t x, std::uint32_t y, std::uint32_t z) {
  return (static_cast<std::size_t>(x) * d + y) * d + z;
}

// Constraint tables for the amalgamation condition hu =_x h =_y hv.
struct AmalgTarget {
  const Hypernetwork* hu;
  const Hypernetwork* hv;
  std::uint32_t x, y;

  std::optional<BinElem> f_need(std::uint32_t p, std::uint32_t q) const {
    if (p != x && q != x) return hu->f.get(p, q);
    if (p != y && q != y) return hv->f.get(p, q);
    return std::nullopt;
  }
  std::optional<std::uint32_t> g_need(std::uint32_t p, std::uint32_t q, std::uint32_t r) const {
    if (p != x && q != x && r != x) return hu->label(p, q, r);
    if (p != y && q != y && r != y) return hv->label(p, q, r);
    return std::nullopt;
  }
};

// DFS for rho with hu =_x (hw rho) =_y hv.
std::optional<Transform> find_reuse_map(const Hypernetwork& hw, const AmalgTarget& tgt) {
  const std::uint32_t d = hw.dim;
  std::vector<std::uint32_t> rho(d, 0);

  // quick colour prefilter: every needed f-value must occur in hw
  {
    std::set<std::uint64_t> have;
    for (std::uint32_t p = 0; p < d; ++p)
      for (std::uint32_t q = 0; q <= p; ++q) have.insert(hw.f.get(p, q).key());
    for (std::uint32_t p = 0; p < d; ++p)
      for (std::uint32_t q = p; q < d; ++q)
        if (auto c = tgt.f_need(p, q); c && !have.count(c->key())) return std::nullopt;
  }

  auto ok_at = [&](std::uint32_t pos) {
    for (std::uint32_t p = 0; p <= pos; ++p) {
      if (auto c = tgt.f_need(p, pos); c && !(hw.f.get(rho[p], rho[pos]) == *c)) return false;
    }
    for (std::uint32_t p = 0; p <= pos; ++p)
      for (std::uint32_t q = 0; q <= pos; ++q) {
        if (auto c = tgt.g_need(p, q, pos); c && hw.label(rho[p], rho[q], rho[pos]) != *c)
          return false;
        if (auto c = tgt.g_need(p, pos, q); c && hw.label(rho[p], rho[pos], rho[q]) != *c)
          return false;
        if (auto c = tgt.g_need(pos, p, q); c && hw.label(rho[pos], rho[p], rho[q]) != *c)
          return false;
      }
    return true;
  };

  std::uint32_t pos = 0;
  rho[0] = 0;
  while (true) {
    if (rho[pos] == d) {
      if (pos == 0) return std::nullopt;
      rho[pos] = 0;
      --pos;
      ++rho[pos];
      continue;
    }
    if (!ok_at(pos)) {
      ++rho[pos];
      continue;
    }
    if (pos + 1 == d) return Transform(d, d, rho);
    ++pos;
    rho[pos] = 0;
  }
}

// DFS for rho with target =_x (hw rho): one-sided variant.
std::optional<Transform> find_equiv_map(const Hypernetwork& hw, const Hypernetwork& target,
                                        std::uint32_t x) {
  const std::uint32_t d = hw.dim;
  std::vector<std::uint32_t> rho(d, 0);

  auto f_need = [&](std::uint32_t p, std::uint32_t q) -> std::optional<BinElem> {
    if (p != x && q != x) return target.f.get(p, q);
    return std::nullopt;
  };
  auto g_need = [&](std::uint32_t p, std::uint32_t q, std::uint32_t r) -> std::optional<std::uint32_t> {
    if (p != x && q != x && r != x) return target.label(p, q, r);
    return std::nullopt;
  };

  auto ok_at = [&](std::uint32_t pos) {
    for (std::uint32_t p = 0; p <= pos; ++p)
      if (auto c = f_need(p, pos); c && !(hw.f.get(rho[p], rho[pos]) == *c)) return false;
    for (std::uint32_t p = 0; p <= pos; ++p)
      for (std::uint32_t q = 0; q <= pos; ++q) {
        if (auto c = g_need(p, q, pos); c && hw.label(rho[p], rho[q], rho[pos]) != *c) return false;
        if (auto c = g_need(p, pos, q); c && hw.label(rho[p], rho[pos], rho[q]) != *c) return false;
        if (auto c = g_need(pos, p, q); c && hw.label(rho[pos], rho[p], rho[q]) != *c) return false;
      }
    return true;
  };

  std::uint32_t pos = 0;
  rho[0] = 0;
  while (true) {
    if (rho[pos] == d) {
      if (pos == 0) return std::nullopt;
      rho[pos] = 0;
      --pos;
      ++rho[pos];
      continue;
    }
    if (!ok_at(pos)) {
      ++rho[pos];
      continue;
    }
    if (pos + 1 == d) return Transform(d, d, rho);
    ++pos;
    rho[pos] = 0;
  }
}

Transform padding_map(std::uint32_t m, std::uint32_t n) {
  std::vector<std::uint32_t> img(n + 1);
  for (std::uint32_t i = 0; i < n + 1; ++i) img[i] = i < m ? i : 0;
  return Transform(n + 1, m, std::move(img));
}

void check_amalg_move(const PlayState& st, const Move& mv) {
  const std::uint32_t d = st.n + 1;
  std::uint32_t t = static_cast<std::uint32_t>(st.history.size());
  if (mv.u >= t || mv.v >= t) throw std::invalid_argument("amalgamation move: round out of range");
  if (mv.x >= d || mv.y >= d) throw std::invalid_argument("amalgamation move: index out of range");
  if (mv.sigma.dim != d || mv.sigma.target != d || mv.tau.dim != d || mv.tau.target != d)
    throw std::invalid_argument("amalgamation move: transform dimension mismatch");
}

}  // namespace

Hypernetwork eloise_respond(const PlayState& state, const Move& move, Provenance* provenance) {
  const std::uint32_t m = state.m, n = state.n, d = n + 1;
  Provenance prov;

  if (move.kind == Move::Kind::MDim) {
    const Hypernetwork& theta = move.theta;
    if (theta.dim != m || theta.n != n)
      throw std::invalid_argument("m-dimensional move: wrong dimensions");
    if (!theta.valid()) throw std::invalid_argument("m-dimensional move: invalid hypernetwork");
    Hypernetwork resp = hn_apply(theta, padding_map(m, n));
    prov.kase = Provenance::Case::Pad;
    if (provenance) *provenance = prov;
    return resp;
  }

  check_amalg_move(state, move);
  Hypernetwork hu = hn_apply(state.history[move.u], move.sigma);
  Hypernetwork hv = hn_apply(state.history[move.v], move.tau);
  const std::uint32_t x = move.x, y = move.y;
  if (!hn_equiv(hu, hv, {x, y}))
    throw std::invalid_argument("amalgamation move: h_u sigma and h_v tau differ off {x,y}");

  if (x == y) {
    prov.kase = Provenance::Case::Reuse;
    prov.reuse_round = move.u;
    if (provenance) *provenance = prov;
    return hu;
  }

  // reuse: search all prior rounds and all rho
  AmalgTarget tgt{&hu, &hv, x, y};
  {
    std::set<std::uint64_t> seen;  // skip duplicate history entries
    for (std::uint32_t w = 0; w < state.history.size(); ++w) {
      const Hypernetwork& hw = state.history[w];
      std::uint64_t fp = AtomStructure::entries_key(hw.f.entries);
      for (std::uint32_t lab : hw.g) fp = fp * 1099511628211ull + lab + 1;
      if (!seen.insert(fp).second) continue;
      if (auto rho = find_reuse_map(hw, tgt)) {
        prov.kase = Provenance::Case::Reuse;
        prov.reuse_round = w;
        if (provenance) *provenance = prov;
        return hn_apply(hw, *rho);
      }
    }
  }

  // construct a fresh response
  Atom f = Atom::all_id(d);
  for (std::uint32_t q = 1; q < d; ++q)
    for (std::uint32_t p = 0; p < q; ++p) {
      if (p != x && q != x) {
        f.set(p, q, hu.f.get(p, q));
      } else if (p != y && q != y) {
        f.set(p, q, hv.f.get(p, q));
      }
    }

  // k in K minimal strictly above every element of K occurring as a
  // j-coordinate anywhere in the history
  std::uint32_t max_k_used = 0;
  bool any_k = false;
  for (const Hypernetwork& h : state.history)
    for (const BinElem& e : h.f.entries)
      if (e.colored && in_chain_K(e.j)) {
        any_k = true;
        max_k_used = std::max(max_k_used, e.j);
      }
  const std::uint32_t fresh_k = any_k ? max_k_used + 2 : 1;

  // i < n-1 least such that no w and no j in J\K have both f_u sigma(y,w)
  // and f_v tau(w,x) in a(i,j)
  std::optional<std::uint32_t> fresh_i;
  for (std::uint32_t i = 0; i + 1 < n && !fresh_i; ++i) {
    bool blocked = false;
    for (std::uint32_t w = 0; w < d && !blocked; ++w) {
      const BinElem e1 = hu.f.get(y, w);
      const BinElem e2 = hv.f.get(w, x);
      blocked = e1.colored && e2.colored && e1.i == i && e2.i == i && e1.j == e2.j &&
                !in_chain_K(e1.j);
    }
    if (!blocked) fresh_i = i;
  }
  if (!fresh_i)
    throw StrategyError("strategy failure: every colour index i < n-1 is blocked at round " +
                        std::to_string(state.history.size()));
  f.set(x, y, BinElem::a(*fresh_i, fresh_k, 0));

  // g: determined triples from hu off x / hv off y; triples containing both
  // x and y are assigned by Id-congruence class
  Hypernetwork resp;
  resp.dim = d;
  resp.n = n;
  resp.f = std::move(f);
  resp.g.assign(static_cast<std::size_t>(d) * d * d, 0);

  std::vector<char> determined(resp.g.size(), 0);
  for (std::uint32_t p = 0; p < d; ++p)
    for (std::uint32_t q = 0; q < d; ++q)
      for (std::uint32_t r = 0; r < d; ++r) {
        std::size_t key = triple_key(d, p, q, r);
        if (p != x && q != x && r != x) {
          resp.g[key] = hu.label(p, q, r);
          determined[key] = 1;
        } else if (p != y && q != y && r != y) {
          resp.g[key] = hv.label(p, q, r);
          determined[key] = 1;
        }
      }

  const std::vector<std::uint32_t> reps = vertex_reps(resp.f);
  struct ClassInfo {
    bool has_label = false;
    std::uint32_t label = 0;
    bool has_undetermined = false;
  };
  std::map<std::array<std::uint32_t, 3>, ClassInfo> classes;
  std::vector<std::array<std::uint32_t, 3>> class_order;
  for (std::uint32_t p = 0; p < d; ++p)
    for (std::uint32_t q = 0; q < d; ++q)
      for (std::uint32_t r = 0; r < d; ++r) {
        std::array<std::uint32_t, 3> key{reps[p], reps[q], reps[r]};
        auto [it, fresh] = classes.try_emplace(key);
        if (fresh) class_order.push_back(key);
        std::size_t tk = triple_key(d, p, q, r);
        if (determined[tk]) {
          if (it->second.has_label && it->second.label != resp.g[tk])
            throw StrategyError("strategy failure: determined labels conflict within one "
                                "congruence class at round " +
                                std::to_string(state.history.size()));
          it->second.has_label = true;
          it->second.label = resp.g[tk];
        } else {
          it->second.has_undetermined = true;
        }
      }

  std::set<std::uint32_t> used;
  for (std::size_t tk = 0; tk < resp.g.size(); ++tk)
    if (determined[tk]) used.insert(resp.g[tk]);
  const std::uint32_t L = Hypernetwork::lambda(n);
  std::uint32_t cursor = 0;
  for (const auto& key : class_order) {
    ClassInfo& ci = classes[key];
    if (ci.has_label || !ci.has_undetermined) continue;
    while (cursor < L && used.count(cursor)) ++cursor;
    if (cursor >= L)
      throw StrategyError("strategy failure: label alphabet exhausted at round " +
                          std::to_string(state.history.size()));
    ci.has_label = true;
    ci.label = cursor;
    used.insert(cursor);
  }

  for (std::uint32_t p = 0; p < d; ++p)
    for (std::uint32_t q = 0; q < d; ++q)
      for (std::uint32_t r = 0; r < d; ++r) {
        std::size_t tk = triple_key(d, p, q, r);
        if (determined[tk]) continue;
        resp.g[tk] = classes[{reps[p], reps[q], reps[r]}].label;
      }

  if (!validate_response(state, move, resp))
    throw StrategyError("strategy failure: constructed response fails validation at round " +
                        std::to_string(state.history.size()));

  prov.kase = Provenance::Case::Construct;
  prov.k = fresh_k;
  prov.i = *fresh_i;
  if (provenance) *provenance = prov;
  return resp;
}

bool validate_response(const PlayState& state, const Move& move, const Hypernetwork& response) {
  const std::uint32_t m = state.m, n = state.n, d = n + 1;
  if (response.dim != d || response.n != n) return false;
  if (!response.valid()) return false;
  if (move.kind == Move::Kind::MDim) {
    return hn_restrict(response, m) == move.theta;
  }
  try {
    check_amalg_move(state, move);
  } catch (const std::invalid_argument&) {
    return false;
  }
  Hypernetwork hu = hn_apply(state.history[move.u], move.sigma);
  Hypernetwork hv = hn_apply(state.history[move.v], move.tau);
  return hn_equiv(hu, response, {move.x}) && hn_equiv(response, hv, {move.y});
}

namespace {

std::vector<BinElem> scheduler_palette(std::uint32_t n, const SchedulerBounds& b) {
  std::vector<std::uint32_t> js;
  for (std::uint32_t t = 0; t < b.j_outside_k; ++t) js.push_back(2 * t);      // from J \ K
  for (std::uint32_t t = 0; t < b.j_outside_k; ++t) js.push_back(2 * t + 1);  // K-prefix
  std::sort(js.begin(), js.end());
  std::vector<BinElem> palette;
  // colours first, Id last: the move stream then reaches strict
  // hypernetworks quickly, which is what makes amalgamation challenges
  // genuinely fresh
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    for (std::uint32_t j : js)
      for (std::uint32_t k = 0; k < b.k_max; ++k) palette.push_back(BinElem::a(i, j, k));
  palette.push_back(BinElem::id());
  return palette;
}

std::vector<std::uint32_t> triple_class_indices(const Atom& f) {
  // class index by first occurrence over the flattened triple order
  const std::uint32_t d = f.m;
  auto reps = vertex_reps(f);
  std::map<std::array<std::uint32_t, 3>, std::uint32_t> ids;
  std::vector<std::uint32_t> out(static_cast<std::size_t>(d) * d * d);
  for (std::uint32_t p = 0; p < d; ++p)
    for (std::uint32_t q = 0; q < d; ++q)
      for (std::uint32_t r = 0; r < d; ++r) {
        auto [it, fresh] =
            ids.try_emplace({reps[p], reps[q], reps[r]}, static_cast<std::uint32_t>(ids.size()));
        (void)fresh;
        out[triple_key(d, p, q, r)] = it->second;
      }
  return out;
}

Hypernetwork make_m_hypernetwork(std::uint32_t m, std::uint32_t n, const Atom& f,
                                 const std::vector<std::uint32_t>& labels_by_class) {
  Hypernetwork h;
  h.dim = m;
  h.n = n;
  h.f = f;
  h.g.resize(static_cast<std::size_t>(m) * m * m);
  auto cls = triple_class_indices(f);
  for (std::size_t t = 0; t < h.g.size(); ++t) h.g[t] = labels_by_class[cls[t] % labels_by_class.size()];
  return h;
}

// lazily enumerates valid atoms over a palette, in lexicographic order
struct AtomStream {
  std::uint32_t m;
  BinFamily fam;
  std::vector<BinElem> palette;
  std::vector<std::size_t> choice;
  bool first = true;
  bool done = false;

  AtomStream(std::uint32_t m_, std::uint32_t n_, std::vector<BinElem> palette_)
      : m(m_), fam(BinFamily::omega(n_)), palette(std::move(palette_)),
        choice(pair_count(m_), 0) {}

  std::optional<Atom> next() {
    if (done) return std::nullopt;
    while (true) {
      if (!first) {
        std::size_t p = 0;
        while (p < choice.size()) {
          if (++choice[p] < palette.size()) break;
          choice[p] = 0;
          ++p;
        }
        if (p == choice.size()) {
          done = true;
          return std::nullopt;
        }
      }
      first = false;
      std::vector<BinElem> entries(choice.size());
      for (std::size_t i = 0; i < choice.size(); ++i) entries[i] = palette[choice[i]];
      Atom a(m, std::move(entries));
      if (valid_atom(fam, a)) return a;
    }
  }
};

struct MDimStream {
  AtomStream atoms;
  std::vector<std::uint32_t> lambda_sub;
  std::optional<Atom> current;
  std::uint32_t shift = 0;
  std::uint32_t m, n;

  MDimStream(std::uint32_t m_, std::uint32_t n_, const SchedulerBounds& b)
      : atoms(m_, n_, scheduler_palette(n_, b)), m(m_), n(n_) {
    std::uint32_t L = std::min(Hypernetwork::lambda(n_), b.lambda_subset);
    for (std::uint32_t l = 0; l < L; ++l) lambda_sub.push_back(l);
    current = atoms.next();
  }

  std::optional<Hypernetwork> next() {
    // f varies fastest, the label shift is the slow coordinate
    if (!current) {
      if (shift + 1 >= lambda_sub.size()) return std::nullopt;
      ++shift;
      atoms = AtomStream(atoms.m, n, atoms.palette);
      current = atoms.next();
      if (!current) return std::nullopt;
    }
    std::vector<std::uint32_t> labels(lambda_sub.size());
    for (std::size_t c = 0; c < lambda_sub.size(); ++c)
      labels[c] = lambda_sub[(c + shift) % lambda_sub.size()];
    Hypernetwork h = make_m_hypernetwork(m, n, *current, labels);
    current = atoms.next();
    return h;
  }
};

std::vector<Transform> adversary_maps(std::uint32_t d) {
  std::vector<Transform> maps;
  maps.push_back(identity_transform(d));
  for (std::uint32_t i = 0; i < d; ++i)
    for (std::uint32_t j = 0; j < d; ++j)
      if (i != j) maps.push_back(make_replacement(d, i, j));
  for (std::uint32_t i = 0; i < d; ++i)
    for (std::uint32_t j = i + 1; j < d; ++j) maps.push_back(make_transposition(d, i, j));
  return maps;
}

// legality of (u, v, sigma, tau, x, y) without materializing the images
bool cheap_legal(const Hypernetwork& hu0, const Transform& sigma, const Hypernetwork& hv0,
                 const Transform& tau, std::uint32_t x, std::uint32_t y) {
  const std::uint32_t d = sigma.dim;
  for (std::uint32_t p = 0; p < d; ++p) {
    if (p == x || p == y) continue;
    for (std::uint32_t q = p + 1; q < d; ++q) {
      if (q == x || q == y) continue;
      if (!(hu0.f.get(sigma(p), sigma(q)) == hv0.f.get(tau(p), tau(q)))) return false;
    }
  }
  for (std::uint32_t p = 0; p < d; ++p) {
    if (p == x || p == y) continue;
    for (std::uint32_t q = 0; q < d; ++q) {
      if (q == x || q == y) continue;
      for (std::uint32_t r = 0; r < d; ++r) {
        if (r == x || r == y) continue;
        if (hu0.label(sigma(p), sigma(q), sigma(r)) != hv0.label(tau(p), tau(q), tau(r)))
          return false;
      }
    }
  }
  return true;
}

// deterministic cursor over amalgamation candidates, ordered so that the
// candidate set only grows at the end as history extends
struct AmalgCursor {
  std::uint32_t M = 0;     // max(u, v)
  std::uint32_t pair = 0;  // 0..2M: (M, 0..M), then (0..M-1, M)
  std::uint32_t x = 0, y = 1;
  std::uint32_t si = 0, ti = 0;

  std::pair<std::uint32_t, std::uint32_t> uv() const {
    if (pair <= M) return {M, pair};
    return {pair - M - 1, M};
  }

  bool advance(std::uint32_t t, std::uint32_t d, std::uint32_t F) {
    if (M >= t) return false;
    if (++ti < F) return true;
    ti = 0;
    if (++si < F) return true;
    si = 0;
    while (true) {
      ++y;
      if (y >= d) {
        y = 0;
        ++x;
      }
      if (x >= d) break;
      if (y != x) return true;
    }
    x = 0;
    y = 1;
    if (++pair <= 2 * M) return true;
    pair = 0;
    ++M;
    return M < t;
  }

  bool parked(std::uint32_t t) const { return M >= t; }
};

struct ExhaustiveScheduler {
  std::uint32_t m, n, d;
  SchedulerBounds bounds;
  MDimStream mstream;
  std::vector<Transform> maps;
  AmalgCursor cursor;

  ExhaustiveScheduler(std::uint32_t m_, std::uint32_t n_, const SchedulerBounds& b)
      : m(m_), n(n_), d(n_ + 1), bounds(b), mstream(m_, n_, b), maps(adversary_maps(n_ + 1)) {}

  std::optional<Move> next_amalg(const PlayState& st) {
    const std::uint32_t t = static_cast<std::uint32_t>(st.history.size());
    const std::uint32_t F = static_cast<std::uint32_t>(maps.size());
    std::uint32_t scanned = 0, deep = 0;
    while (scanned < bounds.scan_budget && deep < bounds.deep_checks) {
      if (cursor.parked(t)) return std::nullopt;
      auto [u, v] = cursor.uv();
      const Transform& sigma = maps[cursor.si];
      const Transform& tau = maps[cursor.ti];
      const std::uint32_t x = cursor.x, y = cursor.y;
      ++scanned;
      if (cheap_legal(st.history[u], sigma, st.history[v], tau, x, y)) {
        Hypernetwork hu = hn_apply(st.history[u], sigma);
        Hypernetwork hv = hn_apply(st.history[v], tau);
        bool skip = hu == hv || hn_equiv(hu, hv, {y}) || hn_equiv(hu, hv, {x});
        if (!skip) {
          ++deep;
          AmalgTarget tgt{&hu, &hv, x, y};
          bool superfluous = false;
          for (const Hypernetwork& hw : st.history)
            if (find_reuse_map(hw, tgt)) {
              superfluous = true;
              break;
            }
          bool minimal = true;
          if (!superfluous) {
            for (std::uint32_t w = 0; w < u && minimal; ++w)
              if (find_equiv_map(st.history[w], hu, x)) minimal = false;
            for (std::uint32_t w = 0; w < v && minimal; ++w)
              if (find_equiv_map(st.history[w], hv, y)) minimal = false;
          }
          if (!superfluous && minimal) {
            Move mv;
            mv.kind = Move::Kind::Amalg;
            mv.u = u;
            mv.v = v;
            mv.x = x;
            mv.y = y;
            mv.sigma = sigma;
            mv.tau = tau;
            cursor.advance(t, d, F);
            return mv;
          }
        }
      }
      if (!cursor.advance(t, d, F)) return std::nullopt;
    }
    return std::nullopt;
  }

  std::optional<Move> next(const PlayState& st, std::uint32_t round) {
    const bool prefer_amalg = (round % 2 == 1) && !st.history.empty();
    if (prefer_amalg) {
      if (auto mv = next_amalg(st)) return mv;
    }
    if (auto theta = mstream.next()) {
      Move mv;
      mv.kind = Move::Kind::MDim;
      mv.theta = std::move(*theta);
      return mv;
    }
    if (!prefer_amalg && !st.history.empty()) {
      if (auto mv = next_amalg(st)) return mv;
    }
    return std::nullopt;
  }
};

struct RandomScheduler {
  std::uint32_t m, n, d;
  SchedulerBounds bounds;
  std::mt19937_64 rng;
  std::vector<BinElem> palette;
  std::vector<Transform> maps;
  std::vector<std::uint32_t> lambda_sub;

  RandomScheduler(std::uint32_t m_, std::uint32_t n_, std::uint64_t seed, const SchedulerBounds& b)
      : m(m_), n(n_), d(n_ + 1), bounds(b), rng(seed ^ 0x9e3779b97f4a7c15ull),
        palette(scheduler_palette(n_, b)), maps(adversary_maps(n_ + 1)) {
    std::uint32_t L = std::min(Hypernetwork::lambda(n_), b.lambda_subset);
    for (std::uint32_t l = 0; l < L; ++l) lambda_sub.push_back(l);
  }

  std::uint32_t pick(std::uint32_t bound) {
    return static_cast<std::uint32_t>(rng() % bound);
  }

  Move random_mdim() {
    BinFamily fam = BinFamily::omega(n);
    Atom f = Atom::all_id(m);
    for (int tries = 0; tries < 500; ++tries) {
      Atom cand = Atom::all_id(m);
      for (std::uint32_t p = 0; p < pair_count(m); ++p)
        cand.entries[p] = palette[pick(static_cast<std::uint32_t>(palette.size()))];
      if (valid_atom(fam, cand)) {
        f = std::move(cand);
        break;
      }
    }
    std::uint32_t max_cls = static_cast<std::uint32_t>(m) * m * m;
    std::vector<std::uint32_t> labels(max_cls);
    for (auto& l : labels) l = lambda_sub[pick(static_cast<std::uint32_t>(lambda_sub.size()))];
    Move mv;
    mv.kind = Move::Kind::MDim;
    mv.theta = make_m_hypernetwork(m, n, f, labels);
    return mv;
  }

  std::optional<Move> next(const PlayState& st, std::uint32_t) {
    const std::uint32_t t = static_cast<std::uint32_t>(st.history.size());
    if (t > 0 && (rng() & 1)) {
      for (int tries = 0; tries < 300; ++tries) {
        Move mv;
        mv.kind = Move::Kind::Amalg;
        mv.u = pick(t);
        mv.v = pick(t);
        mv.x = pick(d);
        mv.y = pick(d);
        mv.sigma = maps[pick(static_cast<std::uint32_t>(maps.size()))];
        mv.tau = maps[pick(static_cast<std::uint32_t>(maps.size()))];
        if (cheap_legal(st.history[mv.u], mv.sigma, st.history[mv.v], mv.tau, mv.x, mv.y))
          return mv;
      }
    }
    return random_mdim();
  }
};

template <typename Sched>
Transcript run_play_common(std::uint32_t m, std::uint32_t n, std::uint32_t rounds, Sched& sched,
                           const std::string& name, std::uint64_t seed,
                           const SchedulerBounds& bounds) {
  if (m < 3 || m >= n) throw std::invalid_argument("run_play: requires 3 <= m < n");
  PlayState st;
  st.m = m;
  st.n = n;
  Transcript tr;
  tr.m = m;
  tr.n = n;
  tr.scheduler = name;
  tr.bounds = bounds;
  tr.seed = seed;
  tr.rounds_requested = rounds;
  for (std::uint32_t r = 0; r < rounds; ++r) {
    std::optional<Move> mv = sched.next(st, r);
    if (!mv) break;
    Provenance prov;
    Hypernetwork resp = eloise_respond(st, *mv, &prov);
    if (!validate_response(st, *mv, resp))
      throw StrategyError("strategy failure: response rejected by the validator at round " +
                          std::to_string(r));
    st.history.push_back(resp);
    st.provenance.push_back(prov);
    tr.rounds.push_back(RoundRecord{std::move(*mv), std::move(resp), prov});
  }
  return tr;
}

}  // namespace

Transcript run_play_exhaustive(std::uint32_t m, std::uint32_t n, std::uint32_t rounds,
                               const SchedulerBounds& bounds) {
  ExhaustiveScheduler sched(m, n, bounds);
  return run_play_common(m, n, rounds, sched, "exhaustive", 0, bounds);
}

Transcript run_play_random(std::uint32_t m, std::uint32_t n, std::uint32_t rounds,
                           std::uint64_t seed, const SchedulerBounds& bounds) {
  RandomScheduler sched(m, n, seed, bounds);
  return run_play_common(m, n, rounds, sched, "random", seed, bounds);
}

TranscriptValidation validate_transcript(const Transcript& t) {
  PlayState st;
  st.m = t.m;
  st.n = t.n;
  for (std::uint32_t r = 0; r < t.rounds.size(); ++r) {
    const RoundRecord& rec = t.rounds[r];
    try {
      if (rec.move.kind == Move::Kind::Amalg) {
        check_amalg_move(st, rec.move);
        Hypernetwork hu = hn_apply(st.history[rec.move.u], rec.move.sigma);
        Hypernetwork hv = hn_apply(st.history[rec.move.v], rec.move.tau);
        if (!hn_equiv(hu, hv, {rec.move.x, rec.move.y}))
          return {false, r, "illegal amalgamation move (images differ off {x,y})"};
      }
      if (!validate_response(st, rec.move, rec.response))
        return {false, r, "response violates the move contract or the hypernetwork invariants"};
    } catch (const std::exception& e) {
      return {false, r, e.what()};
    }
    st.history.push_back(rec.response);
  }
  return {};
}

bool padding_nonstrict_holds(const Transcript& t, std::string* why) {
  const std::uint32_t d = t.n + 1;
  for (std::uint32_t r = 0; r < t.rounds.size(); ++r) {
    if (t.rounds[r].move.kind != Move::Kind::MDim) continue;
    // every X with |X| > m must admit an Id edge; it suffices to refute
    // strictness on all (m+1)-subsets
    std::vector<std::uint32_t> subset;
    std::vector<std::uint32_t> idx;
    for (std::uint32_t i = 0; i <= t.m; ++i) idx.push_back(i);
    while (true) {
      subset.clear();
      for (std::uint32_t i : idx) subset.push_back(i);
      if (t.rounds[r].response.strict_over(subset)) {
        if (why)
          *why = "padded response at round " + std::to_string(r) + " is strict over a set of size " +
                 std::to_string(t.m + 1);
        return false;
      }
      // next combination
      int p = static_cast<int>(idx.size()) - 1;
      while (p >= 0 && idx[p] == d - idx.size() + p) --p;
      if (p < 0) break;
      ++idx[p];
      for (std::size_t q = p + 1; q < idx.size(); ++q) idx[q] = idx[q - 1] + 1;
    }
  }
  return true;
}

bool k_freshness_holds(const Transcript& t, std::string* why) {
  std::optional<std::uint32_t> last;
  for (std::uint32_t r = 0; r < t.rounds.size(); ++r) {
    const Provenance& p = t.rounds[r].prov;
    if (p.kase != Provenance::Case::Construct) continue;
    if (!p.k) {
      if (why) *why = "construct round " + std::to_string(r) + " lacks a recorded k";
      return false;
    }
    if (last && *p.k <= *last) {
      if (why)
        *why = "k at round " + std::to_string(r) + " (" + std::to_string(*p.k) +
               ") does not exceed the previous construct's k (" + std::to_string(*last) + ")";
      return false;
    }
    // strictly above every K-element used anywhere earlier in the play
    for (std::uint32_t s = 0; s < r; ++s)
      for (const BinElem& e : t.rounds[s].response.f.entries)
        if (e.colored && in_chain_K(e.j) && e.j >= *p.k) {
          if (why)
            *why = "k at round " + std::to_string(r) + " is not fresh over round " +
                   std::to_string(s);
          return false;
        }
    last = p.k;
  }
  return true;
}

FragmentReport fragment_check(const Transcript& t) {
  FragmentReport rep;
  std::vector<Hypernetwork> H;
  for (const RoundRecord& r : t.rounds) H.push_back(r.response);

  PlayState st;
  st.m = t.m;
  st.n = t.n;

  std::vector<const Atom*> scheduled_atoms;
  for (std::uint32_t r = 0; r < t.rounds.size(); ++r) {
    const RoundRecord& rec = t.rounds[r];
    if (rec.move.kind == Move::Kind::MDim) {
      bool found = false;
      for (const Hypernetwork& h : H)
        if (hn_restrict(h, t.m) == rec.move.theta) {
          found = true;
          break;
        }
      rep.obligations.push_back({"m-extension", r, found,
                                 found ? "" : "no member of H restricts to the scheduled theta"});
      scheduled_atoms.push_back(&rec.move.theta.f);
    } else {
      Hypernetwork hu = hn_apply(st.history[rec.move.u], rec.move.sigma);
      Hypernetwork hv = hn_apply(st.history[rec.move.v], rec.move.tau);
      bool found = false;
      for (const Hypernetwork& h : H)
        if (hn_equiv(hu, h, {rec.move.x}) && hn_equiv(h, hv, {rec.move.y})) {
          found = true;
          break;
        }
      rep.obligations.push_back({"amalgam-solution", r, found,
                                 found ? "" : "no member of H solves the scheduled amalgamation"});
    }
    st.history.push_back(rec.response);
  }

  // iota(f) = {h in H : h.f restricted to m equals f}
  auto iota = [&](const Atom& f) {
    std::vector<std::size_t> members;
    for (std::size_t h = 0; h < H.size(); ++h) {
      std::vector<std::uint32_t> img(t.m);
      for (std::uint32_t i = 0; i < t.m; ++i) img[i] = i;
      if (atom_apply(H[h].f, Transform(t.m, H[h].dim, img)) == f) members.push_back(h);
    }
    return members;
  };

  for (std::size_t a = 0; a < scheduled_atoms.size(); ++a) {
    auto ia = iota(*scheduled_atoms[a]);
    bool ok = !ia.empty();
    std::string detail = ok ? "" : "iota of a scheduled atom is empty";
    for (std::size_t b = 0; b < a && ok; ++b) {
      if (*scheduled_atoms[a] == *scheduled_atoms[b]) continue;
      auto ib = iota(*scheduled_atoms[b]);
      if (ia == ib) {
        ok = false;
        detail = "iota identifies two distinct scheduled atoms";
      }
    }
    rep.obligations.push_back({"iota-injective", static_cast<std::uint32_t>(a), ok, detail});
  }

  // diagonal and substitution consistency of iota on the fragment
  for (std::size_t a = 0; a < scheduled_atoms.size(); ++a) {
    const Atom& f = *scheduled_atoms[a];
    auto members = iota(f);
    bool ok = true;
    std::string detail;
    for (std::size_t h : members)
      for (std::uint32_t i = 0; i < t.m && ok; ++i)
        for (std::uint32_t j = 0; j < t.m && ok; ++j)
          if (H[h].f.get(i, j).is_id() != f.get(i, j).is_id()) {
            ok = false;
            detail = "diagonal membership differs between f and a member of iota(f)";
          }
    rep.obligations.push_back({"iota-diagonals", static_cast<std::uint32_t>(a), ok, detail});

    ok = true;
    detail.clear();
    std::vector<Transform> taus;
    for (std::uint32_t i = 0; i < t.m; ++i)
      for (std::uint32_t j = 0; j < t.m; ++j) {
        if (i != j) taus.push_back(make_replacement(t.m, i, j));
        if (i < j) taus.push_back(make_transposition(t.m, i, j));
      }
    for (const Transform& tau : taus) {
      Atom ftau = atom_apply(f, tau);
      Transform tau_bar = identity_transform(t.n + 1);
      for (std::uint32_t i = 0; i < t.m; ++i) tau_bar.image[i] = tau(i);
      for (std::size_t h : members) {
        Hypernetwork moved = hn_apply(H[h], tau_bar);
        std::vector<std::uint32_t> img(t.m);
        for (std::uint32_t i = 0; i < t.m; ++i) img[i] = i;
        Atom via_hn = atom_apply(moved.f, Transform(t.m, moved.dim, img));
        if (!(via_hn == ftau)) {
          ok = false;
          detail = "substitution through the hypernetwork disagrees with the atom-level result";
          break;
        }
      }
      if (!ok) break;
    }
    rep.obligations.push_back({"iota-substitutions", static_cast<std::uint32_t>(a), ok, detail});
  }

  return rep;
}

}  // namespace bao
