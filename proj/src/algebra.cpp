#include "bao/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "bao/errors.hpp"

namespace bao {

std::string to_string(Signature k) {
  switch (k) {
    case Signature::Df: return "df";
    case Signature::Sc: return "sc";
    case Signature::CA: return "ca";
    case Signature::QPA: return "qpa";
    case Signature::QPEA: return "qpea";
    case Signature::PA: return "pa";
    case Signature::PEA: return "pea";
  }
  return "?";
}

std::optional<Signature> signature_from_string(const std::string& s) {
  if (s == "df") return Signature::Df;
  if (s == "sc") return Signature::Sc;
  if (s == "ca") return Signature::CA;
  if (s == "qpa") return Signature::QPA;
  if (s == "qpea") return Signature::QPEA;
  if (s == "pa") return Signature::PA;
  if (s == "pea") return Signature::PEA;
  return std::nullopt;
}

bool sig_has_diagonals(Signature k) {
  return k == Signature::CA || k == Signature::QPEA || k == Signature::PEA;
}
bool sig_has_replacements(Signature k) {
  return k == Signature::Sc || k == Signature::QPA || k == Signature::QPEA ||
         k == Signature::PA || k == Signature::PEA;
}
bool sig_has_transpositions(Signature k) {
  return k == Signature::QPA || k == Signature::QPEA || k == Signature::PA || k == Signature::PEA;
}
bool sig_has_full_substitutions(Signature k) {
  return k == Signature::PA || k == Signature::PEA;
}

bool sig_definable_from(Signature target, Signature source) {
  if (target == source) return true;
  switch (target) {
    case Signature::Df: return true;
    case Signature::Sc:
      // s_[i/j] is definable from diagonals (c_i(d_ij . x)), so every class
      // except Df reaches Sc
      return source != Signature::Df;
    case Signature::CA:
      return sig_has_diagonals(source);
    case Signature::QPA:
    case Signature::PA:
      // finite dimension: PA and QPA are interdefinable
      return source == Signature::QPA || source == Signature::PA ||
             source == Signature::QPEA || source == Signature::PEA;
    case Signature::QPEA:
    case Signature::PEA:
      return source == Signature::QPEA || source == Signature::PEA;
  }
  return false;
}

struct Algebra::Base {
  std::shared_ptr<const AtomStructure> s;
  std::uint32_t m = 0;
  std::size_t N = 0;
  // =_x partitions: class id per atom, and one mask per class
  std::vector<std::vector<std::uint32_t>> class_of;
  std::vector<std::vector<Element>> class_masks;
  std::vector<Element> diagonals;  // m*m, index x*m+y
  // precomputed atom maps for replacements/transpositions: map[a] = id(a o t)
  std::vector<std::vector<std::uint32_t>> repl_map;    // i*m+j
  std::vector<std::vector<std::uint32_t>> transp_map;  // i*m+j (i<j used)

  Element c(std::uint32_t x, const Element& e) const {
    Element out(N);
    std::vector<bool> seen(class_masks[x].size(), false);
    e.for_each_set([&](std::size_t a) {
      std::uint32_t cls = class_of[x][a];
      if (!seen[cls]) {
        seen[cls] = true;
        out |= class_masks[x][cls];
      }
    });
    return out;
  }

  std::vector<std::uint32_t> apply_map(const Transform& tau) const {
    // image id per atom; N marks "f tau is not an atom of this structure",
    // which only happens for structures that are not apply-closed (e.g.
    // deliberately truncated files)
    std::vector<std::uint32_t> map(N);
    for (std::size_t a = 0; a < N; ++a) {
      auto id = s->find(atom_apply(s->atoms[a], tau));
      map[a] = id ? *id : static_cast<std::uint32_t>(N);
    }
    return map;
  }

  Element s_via_map(const std::vector<std::uint32_t>& map, const Element& e) const {
    // s_tau(X) = {f : f tau in X}
    Element out(N);
    for (std::size_t a = 0; a < N; ++a)
      if (map[a] < N && e.test(map[a])) out.set(a);
    return out;
  }

  Element s_tau(const Transform& tau, const Element& e) const {
    std::uint32_t i, j;
    if (tau.is_identity()) return e;
    if (tau.is_replacement(&i, &j)) return s_via_map(repl_map[i * m + j], e);
    if (tau.is_transposition(&i, &j)) {
      auto [lo, hi] = std::minmax(i, j);
      return s_via_map(transp_map[lo * m + hi], e);
    }
    return s_via_map(apply_map(tau), e);
  }
};

Algebra Algebra::complex(std::shared_ptr<const AtomStructure> s, Signature sig) {
  const std::uint32_t m = s->m;
  const std::size_t N = s->size();
  std::vector<std::vector<std::uint32_t>> class_of(m, std::vector<std::uint32_t>(N));
  for (std::uint32_t x = 0; x < m; ++x) {
    // key = entries on pairs avoiding x
    std::map<std::vector<std::uint64_t>, std::uint32_t> ids;
    for (std::size_t a = 0; a < N; ++a) {
      std::vector<std::uint64_t> key;
      key.reserve(pair_count(m));
      for (std::uint32_t hi = 1; hi < m; ++hi) {
        if (hi == x) continue;
        for (std::uint32_t lo = 0; lo < hi; ++lo) {
          if (lo == x) continue;
          key.push_back(s->atoms[a].entries[pair_index(lo, hi)].key());
        }
      }
      auto [it, fresh] = ids.emplace(std::move(key), static_cast<std::uint32_t>(ids.size()));
      (void)fresh;
      class_of[x][a] = it->second;
    }
  }
  return complex_with_cylindrifier_classes(std::move(s), std::move(class_of), sig);
}

Algebra Algebra::complex_with_cylindrifier_classes(std::shared_ptr<const AtomStructure> s,
                                                   std::vector<std::vector<std::uint32_t>> class_of,
                                                   Signature sig) {
  auto base = std::make_shared<Base>();
  base->s = std::move(s);
  base->m = base->s->m;
  base->N = base->s->size();
  const std::uint32_t m = base->m;
  const std::size_t N = base->N;
  if (class_of.size() != m) throw std::invalid_argument("cylindrifier class table has wrong arity");

  base->class_of = std::move(class_of);
  base->class_masks.resize(m);
  for (std::uint32_t x = 0; x < m; ++x) {
    std::uint32_t classes = 0;
    for (std::size_t a = 0; a < N; ++a) classes = std::max(classes, base->class_of[x][a] + 1);
    base->class_masks[x].assign(classes, Element(N));
    for (std::size_t a = 0; a < N; ++a) base->class_masks[x][base->class_of[x][a]].set(a);
  }

  base->diagonals.assign(static_cast<std::size_t>(m) * m, Element(N));
  for (std::uint32_t x = 0; x < m; ++x)
    for (std::uint32_t y = 0; y < m; ++y) {
      Element& d = base->diagonals[static_cast<std::size_t>(x) * m + y];
      for (std::size_t a = 0; a < N; ++a)
        if (base->s->atoms[a].get(x, y).is_id()) d.set(a);
    }

  base->repl_map.resize(static_cast<std::size_t>(m) * m);
  base->transp_map.resize(static_cast<std::size_t>(m) * m);
  for (std::uint32_t i = 0; i < m; ++i)
    for (std::uint32_t j = 0; j < m; ++j) {
      if (i != j) base->repl_map[i * m + j] = base->apply_map(make_replacement(m, i, j));
      if (i < j) base->transp_map[i * m + j] = base->apply_map(make_transposition(m, i, j));
    }

  Algebra alg;
  alg.base_ = std::move(base);
  alg.sig_ = sig;
  alg.dim_ = m;
  alg.rho_.resize(m);
  for (std::uint32_t i = 0; i < m; ++i) alg.rho_[i] = i;
  alg.unit_ = DynBitset::ones(N);
  return alg;
}

const std::vector<Element>& Algebra::carrier_atoms() const {
  if (!carrier_built_) {
    carrier_.clear();
    carrier_.reserve(unit_.count());
    unit_.for_each_set([&](std::size_t a) {
      Element e(base_->N);
      e.set(a);
      carrier_.push_back(std::move(e));
    });
    carrier_built_ = true;
  }
  return carrier_;
}

const AtomStructure& Algebra::structure() const { return *base_->s; }
std::shared_ptr<const AtomStructure> Algebra::structure_ptr() const { return base_->s; }
std::size_t Algebra::atom_count() const { return base_->N; }

Element Algebra::zero() const { return Element(base_->N); }

Element Algebra::complement(const Element& e) const { return unit_ - e; }

Element Algebra::clip(Element e) const { return relativized_ ? (e & unit_) : e; }

void Algebra::check_index(std::uint32_t i, const char* who) const {
  if (i >= dim_) throw std::invalid_argument(std::string(who) + ": index out of range");
}

void Algebra::check_allowed(std::initializer_list<std::uint32_t> idx, const char* who) const {
  if (!allowed_) return;
  for (std::uint32_t i : idx)
    if (std::find(allowed_->begin(), allowed_->end(), i) == allowed_->end())
      throw std::invalid_argument(std::string(who) +
                                  ": index outside the neat reduct's dimension set");
}

Element Algebra::diagonal(std::uint32_t x, std::uint32_t y) const {
  if (!sig_has_diagonals(sig_))
    throw SignatureError("diagonal: signature " + to_string(sig_) + " lacks diagonals");
  check_index(x, "diagonal");
  check_index(y, "diagonal");
  check_allowed({x, y}, "diagonal");
  return clip(base_->diagonals[static_cast<std::size_t>(rho_[x]) * base_->m + rho_[y]]);
}

Element Algebra::cylindrify(std::uint32_t x, const Element& e) const {
  check_index(x, "cylindrify");
  check_allowed({x}, "cylindrify");
  return clip(base_->c(rho_[x], e));
}

Transform Algebra::to_base(const Transform& t) const {
  if (t.dim != dim_ || t.target != dim_)
    throw std::invalid_argument("substitute: transform dimension mismatch");
  Transform out = identity_transform(base_->m);
  for (std::uint32_t i = 0; i < dim_; ++i) out.image[rho_[i]] = rho_[t(i)];
  return out;
}

Element Algebra::substitute(const Transform& t, const Element& e) const {
  std::uint32_t i, j;
  if (t.is_identity()) {
    // s_id is available in every signature that has substitutions at all;
    // it is also the interpretation of s_ii.
    return clip(base_->s_tau(to_base(t), e));
  }
  if (t.is_replacement(&i, &j)) {
    if (!sig_has_replacements(sig_))
      throw SignatureError("substitute: signature " + to_string(sig_) + " lacks s_[i/j]");
    check_allowed({i, j}, "substitute");
    return clip(base_->s_tau(to_base(t), e));
  }
  if (t.is_transposition(&i, &j)) {
    if (!sig_has_transpositions(sig_))
      throw SignatureError("substitute: signature " + to_string(sig_) + " lacks s_[i,j]");
    check_allowed({i, j}, "substitute");
    return clip(base_->s_tau(to_base(t), e));
  }
  if (!sig_has_full_substitutions(sig_))
    throw SignatureError("substitute: signature " + to_string(sig_) +
                         " admits only replacements/transpositions");
  if (allowed_) {
    for (std::uint32_t p = 0; p < t.dim; ++p)
      if (t(p) != p) check_allowed({p, t(p)}, "substitute");
  }
  return clip(base_->s_tau(to_base(t), e));
}

Element Algebra::subst_replacement(std::uint32_t i, std::uint32_t j, const Element& e) const {
  check_index(i, "subst_replacement");
  check_index(j, "subst_replacement");
  return substitute(make_replacement(dim_, i, j), e);
}

Element Algebra::subst_transposition(std::uint32_t i, std::uint32_t j, const Element& e) const {
  check_index(i, "subst_transposition");
  check_index(j, "subst_transposition");
  return substitute(make_transposition(dim_, i, j), e);
}

Element Algebra::pair_witness(const BinElem& b, std::uint32_t x, std::uint32_t y) const {
  check_index(x, "pair_witness");
  check_index(y, "pair_witness");
  base_->s->family.require(b);
  const std::uint32_t bx = rho_[x], by = rho_[y];
  Element out(base_->N);
  for (std::size_t a = 0; a < base_->N; ++a)
    if (base_->s->atoms[a].get(bx, by) == b) out.set(a);
  return clip(out);
}

bool Algebra::in_carrier(const Element& e) const {
  if (!e.subset_of(unit_)) return false;
  for (const Element& c : carrier_atoms()) {
    Element meet = e & c;
    if (meet.any() && !(meet == c)) return false;
  }
  return true;
}

Algebra Algebra::signature_reduct(Signature k) const {
  if (!sig_definable_from(k, sig_))
    throw SignatureError("signature_reduct: " + to_string(k) + " is not definable from " +
                         to_string(sig_));
  Algebra out = *this;
  out.sig_ = k;
  return out;
}

Algebra Algebra::rename_reduct(const Transform& rho) const {
  if (rho.target != dim_) throw std::invalid_argument("rename_reduct: target dimension mismatch");
  if (!rho.is_injective()) throw std::invalid_argument("rename_reduct: rho must be injective");
  if (allowed_) throw std::invalid_argument("rename_reduct: unsupported on neat reduct views");
  Algebra out = *this;
  out.dim_ = rho.dim;
  out.rho_.resize(rho.dim);
  for (std::uint32_t i = 0; i < rho.dim; ++i) out.rho_[i] = rho_[rho(i)];
  return out;
}

Algebra Algebra::dimension_reduct(std::uint32_t m_prime) const {
  if (m_prime > dim_) throw std::invalid_argument("dimension_reduct: dimension too large");
  std::vector<std::uint32_t> img(m_prime);
  for (std::uint32_t i = 0; i < m_prime; ++i) img[i] = i;
  return rename_reduct(Transform(m_prime, dim_, std::move(img)));
}

Algebra Algebra::relativize(const Element& x) const {
  if (x.none()) throw std::invalid_argument("relativize: x must be nonzero");
  if (!x.subset_of(unit_)) throw std::invalid_argument("relativize: x must lie below the unit");
  if (allowed_) throw std::invalid_argument("relativize: unsupported on neat reduct views");
  Algebra out = *this;
  out.unit_ = x;
  out.relativized_ = true;
  out.carrier_.clear();
  out.carrier_built_ = false;
  return out;
}

Algebra Algebra::neat_reduct(const std::vector<std::uint32_t>& gamma) const {
  if (relativized_) throw std::invalid_argument("neat_reduct: unsupported on relativized views");
  for (std::uint32_t g : gamma)
    if (g >= dim_) throw std::invalid_argument("neat_reduct: index out of range");
  std::vector<bool> in_gamma(dim_, false);
  for (std::uint32_t g : gamma) in_gamma[g] = true;

  // An element is fixed by every c_i outside gamma iff it is a union of
  // blocks of the join of those =_i partitions (their transitive closure).
  std::vector<std::uint32_t> parent(base_->N);
  for (std::size_t a = 0; a < base_->N; ++a) parent[a] = static_cast<std::uint32_t>(a);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t a) {
    while (parent[a] != a) {
      parent[a] = parent[parent[a]];
      a = parent[a];
    }
    return a;
  };
  for (std::uint32_t i = 0; i < dim_; ++i) {
    if (in_gamma[i]) continue;
    const auto& cls = base_->class_of[rho_[i]];
    std::map<std::uint32_t, std::uint32_t> first_of_class;
    for (std::size_t a = 0; a < base_->N; ++a) {
      auto [it, fresh] = first_of_class.emplace(cls[a], static_cast<std::uint32_t>(a));
      if (!fresh) parent[find(static_cast<std::uint32_t>(a))] = find(it->second);
    }
  }
  std::map<std::uint32_t, std::uint32_t> ids;
  std::vector<std::uint32_t> block(base_->N);
  for (std::size_t a = 0; a < base_->N; ++a) {
    auto [it, fresh] =
        ids.emplace(find(static_cast<std::uint32_t>(a)), static_cast<std::uint32_t>(ids.size()));
    (void)fresh;
    block[a] = it->second;
  }
  std::vector<Element> classes(ids.size(), Element(base_->N));
  for (std::size_t a = 0; a < base_->N; ++a) classes[block[a]].set(a);

  Algebra out = *this;
  out.allowed_ = gamma;
  out.carrier_ = std::move(classes);
  out.carrier_built_ = true;
  return out;
}

bool Algebra::commutativity_holds() const { return !commutativity_counterexample().has_value(); }

std::optional<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>>
Algebra::commutativity_counterexample() const {
  std::vector<std::uint32_t> idx;
  if (allowed_) {
    idx = *allowed_;
  } else {
    for (std::uint32_t i = 0; i < dim_; ++i) idx.push_back(i);
  }
  const std::vector<Element>& carrier = carrier_atoms();
  for (std::size_t ii = 0; ii < idx.size(); ++ii)
    for (std::size_t jj = ii + 1; jj < idx.size(); ++jj) {
      std::uint32_t i = idx[ii], j = idx[jj];
      for (std::uint32_t a = 0; a < carrier.size(); ++a) {
        const Element& e = carrier[a];
        if (!(cylindrify(i, cylindrify(j, e)) == cylindrify(j, cylindrify(i, e))))
          return std::make_tuple(i, j, a);
      }
    }
  return std::nullopt;
}

Element x_n_element(const AtomStructure& big, std::uint32_t m) {
  if (m < 3 || m >= big.m)
    throw std::invalid_argument("x_n_element: requires 3 <= m < structure dimension");
  Element out(big.size());
  for (std::size_t a = 0; a < big.size(); ++a) {
    const Atom& f = big.atoms[a];
    bool ok = true;
    for (std::uint32_t j = m; j < big.m && ok; ++j) {
      bool has_id = false;
      for (std::uint32_t i = 0; i < m && !has_id; ++i)
        if (f.get(i, j).is_id()) has_id = true;
      ok = has_id;
    }
    if (ok) out.set(a);
  }
  return out;
}

namespace {

std::optional<std::uint32_t> restrict_lookup(const AtomStructure& small, const Atom& f) {
  std::vector<BinElem> entries(pair_count(small.m));
  for (std::uint32_t y = 1; y < small.m; ++y)
    for (std::uint32_t x = 0; x < y; ++x) {
      BinElem e = f.get(x, y);
      if (!small.family.contains(e)) return std::nullopt;
      entries[pair_index(x, y)] = e;
    }
  return small.find(Atom(small.m, std::move(entries)));
}

}  // namespace

std::vector<Element> restriction_fibers(const AtomStructure& small, const AtomStructure& big) {
  if (!(small.family == big.family))
    throw std::invalid_argument("restriction_fibers: alphabet mismatch (need same n, r, psi bound)");
  if (small.m > big.m) throw std::invalid_argument("restriction_fibers: small.m must be <= big.m");
  std::vector<Element> fibers(small.size(), Element(big.size()));
  for (std::size_t a = 0; a < big.size(); ++a) {
    auto id = restrict_lookup(small, big.atoms[a]);
    if (!id)
      throw std::invalid_argument(
          "restriction_fibers: big atom restricts outside the small structure");
    fibers[*id].set(a);
  }
  return fibers;
}

Element nr_lift(const AtomStructure& small, const AtomStructure& big, const Element& X) {
  if (X.size() != small.size()) throw std::invalid_argument("nr_lift: element size mismatch");
  if (!(small.family == big.family) || small.m > big.m)
    throw std::invalid_argument("nr_lift: structure mismatch");
  Element out(big.size());
  for (std::size_t a = 0; a < big.size(); ++a) {
    auto id = restrict_lookup(small, big.atoms[a]);
    if (!id) throw std::invalid_argument("nr_lift: big atom restricts outside the small structure");
    if (X.test(*id)) out.set(a);
  }
  return out;
}

std::vector<Element> i_n_fibers(const AtomStructure& small, const AtomStructure& big,
                                std::uint32_t m) {
  if (m != small.m) throw std::invalid_argument("i_n: small structure must have dimension m");
  if (m < 3 || m >= big.m) throw std::invalid_argument("i_n: requires 3 <= m < big dimension");
  if (small.family.psi_bound != big.family.psi_bound || small.r() != big.r())
    throw std::invalid_argument("i_n: r/psi bound mismatch");
  if (big.n() < small.n()) throw std::invalid_argument("i_n: alphabet shrinks");
  if (big.n() - big.m != small.n() - small.m)
    throw std::invalid_argument("i_n: spare-dimension counts differ");
  Element xn = x_n_element(big, m);
  std::vector<Element> fibers(small.size(), Element(big.size()));
  for (std::size_t a = 0; a < big.size(); ++a) {
    if (!xn.test(a)) continue;
    auto id = restrict_lookup(small, big.atoms[a]);
    if (id) fibers[*id].set(a);
  }
  return fibers;
}

Element i_n_map(const AtomStructure& small, const AtomStructure& big, std::uint32_t m,
                const Element& S) {
  if (S.size() != small.size()) throw std::invalid_argument("i_n_map: element size mismatch");
  auto fibers = i_n_fibers(small, big, m);
  Element out(big.size());
  S.for_each_set([&](std::size_t a) { out |= fibers[a]; });
  return out;
}

}  // namespace bao
