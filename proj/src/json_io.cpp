#include "bao/json_io.hpp"

#include <fstream>
#include <sstream>

namespace bao {

json Manifest::to_json() const {
  json j;
  j["tool"] = tool;
  j["version"] = version;
  j["command"] = command;
  j["params"] = params;
  if (structure_hash) j["structure_hash"] = *structure_hash;
  j["wall_ms"] = wall_ms;
  j["outcome"] = outcome;
  return j;
}

std::string hash_hex(std::uint64_t h) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[h & 0xf];
    h >>= 4;
  }
  return s;
}

json transform_to_json(const Transform& t) {
  json j;
  j["dim"] = t.dim;
  if (t.target != t.dim) j["target"] = t.target;
  j["image"] = t.image;
  return j;
}

Transform transform_from_json(const json& j) {
  std::uint32_t dim = j.at("dim").get<std::uint32_t>();
  std::vector<std::uint32_t> image = j.at("image").get<std::vector<std::uint32_t>>();
  std::uint32_t target = j.contains("target") ? j.at("target").get<std::uint32_t>() : dim;
  return Transform(dim, target, std::move(image));
}

json bin_elem_to_json(const BinElem& e) {
  json j;
  if (e.is_id()) {
    j["t"] = "id";
  } else {
    j["t"] = "a";
    j["i"] = e.i;
    j["j"] = e.j;
    j["k"] = e.k;
  }
  return j;
}

BinElem bin_elem_from_json(const json& j) {
  std::string t = j.at("t").get<std::string>();
  if (t == "id") return BinElem::id();
  if (t == "a")
    return BinElem::a(j.at("i").get<std::uint32_t>(), j.at("j").get<std::uint32_t>(),
                      j.at("k").get<std::uint32_t>());
  throw std::invalid_argument("bin elem: unknown tag '" + t + "'");
}

json atom_to_json(const Atom& a) {
  json pairs = json::array();
  for (std::uint32_t y = 1; y < a.m; ++y)
    for (std::uint32_t x = 0; x < y; ++x) {
      json p;
      p["x"] = x;
      p["y"] = y;
      p["v"] = bin_elem_to_json(a.get(x, y));
      pairs.push_back(std::move(p));
    }
  json j;
  j["m"] = a.m;
  j["pairs"] = std::move(pairs);
  return j;
}

Atom atom_from_json(const json& j) {
  std::uint32_t m = j.at("m").get<std::uint32_t>();
  Atom a = Atom::all_id(m);
  const json& pairs = j.at("pairs");
  if (pairs.size() != pair_count(m)) throw std::invalid_argument("atom: wrong pair count");
  for (const json& p : pairs) {
    std::uint32_t x = p.at("x").get<std::uint32_t>();
    std::uint32_t y = p.at("y").get<std::uint32_t>();
    if (x == y || x >= m || y >= m) throw std::invalid_argument("atom: bad pair indices");
    a.set(x, y, bin_elem_from_json(p.at("v")));
  }
  return a;
}

json structure_to_json(const AtomStructure& s, const json& manifest) {
  json j;
  j["m"] = s.m;
  j["n"] = s.n();
  j["r"] = s.r();
  j["psi_bound"] = s.psi_bound();
  json atoms = json::array();
  for (const Atom& a : s.atoms) {
    json e;
    e["pairs"] = atom_to_json(a)["pairs"];
    atoms.push_back(std::move(e));
  }
  j["atoms"] = std::move(atoms);
  j["hash"] = hash_hex(s.hash());
  j["manifest"] = manifest;
  return j;
}

AtomStructure structure_from_json(const json& j, json* manifest_out) {
  AtomStructure s;
  s.m = j.at("m").get<std::uint32_t>();
  std::uint32_t n = j.at("n").get<std::uint32_t>();
  std::uint64_t r = j.at("r").get<std::uint64_t>();
  std::uint64_t psi_bound = j.at("psi_bound").get<std::uint64_t>();
  std::uint64_t true_psi = psi_u64(n, r);
  if (psi_bound < 1 || psi_bound > true_psi)
    throw std::invalid_argument("structure: psi_bound outside [1, psi(n,r)]");
  s.family = BinFamily::finite(n, r, psi_bound == true_psi ? std::nullopt
                                                           : std::optional<std::uint64_t>(psi_bound));
  s.colors_ = s.family.colors();
  for (const json& e : j.at("atoms")) {
    Atom a = Atom::all_id(s.m);
    const json& pairs = e.at("pairs");
    if (pairs.size() != pair_count(s.m)) throw std::invalid_argument("structure: bad atom shape");
    for (const json& p : pairs) {
      a.set(p.at("x").get<std::uint32_t>(), p.at("y").get<std::uint32_t>(),
            bin_elem_from_json(p.at("v")));
    }
    s.atoms.push_back(std::move(a));
  }
  s.index.reserve(s.atoms.size() * 2);
  for (std::uint32_t i = 0; i < s.atoms.size(); ++i)
    s.index.emplace(AtomStructure::entries_key(s.atoms[i].entries), i);
  validate_structure(s);
  if (j.contains("hash") && j.at("hash").get<std::string>() != hash_hex(s.hash()))
    throw std::invalid_argument("structure: recorded hash does not match content");
  if (manifest_out) *manifest_out = j.contains("manifest") ? j.at("manifest") : json::object();
  return s;
}

json element_to_json(const Element& e, const AtomStructure& s) {
  if (e.size() != s.size()) throw std::invalid_argument("element: size mismatch with structure");
  json j;
  j["structure"] = hash_hex(s.hash());
  j["atoms"] = e.to_indices();  // ascending by construction
  return j;
}

Element element_from_json(const json& j, const AtomStructure& s) {
  if (j.at("structure").get<std::string>() != hash_hex(s.hash()))
    throw std::invalid_argument("element: structure hash mismatch");
  return DynBitset::from_indices(s.size(), j.at("atoms").get<std::vector<std::uint32_t>>());
}

json hypernetwork_to_json(const Hypernetwork& h) {
  json j;
  j["dim"] = h.dim;
  j["n"] = h.n;
  j["f"] = atom_to_json(h.f)["pairs"];
  j["g"] = h.g;
  return j;
}

Hypernetwork hypernetwork_from_json(const json& j) {
  Hypernetwork h;
  h.dim = j.at("dim").get<std::uint32_t>();
  h.n = j.at("n").get<std::uint32_t>();
  json fa;
  fa["m"] = h.dim;
  fa["pairs"] = j.at("f");
  h.f = atom_from_json(fa);
  h.g = j.at("g").get<std::vector<std::uint32_t>>();
  if (h.g.size() != static_cast<std::size_t>(h.dim) * h.dim * h.dim)
    throw std::invalid_argument("hypernetwork: label table has wrong size");
  return h;
}

json move_to_json(const Move& m) {
  json j;
  if (m.kind == Move::Kind::MDim) {
    j["type"] = "mdim";
    j["theta"] = hypernetwork_to_json(m.theta);
  } else {
    j["type"] = "amalg";
    j["u"] = m.u;
    j["v"] = m.v;
    j["x"] = m.x;
    j["y"] = m.y;
    j["sigma"] = transform_to_json(m.sigma);
    j["tau"] = transform_to_json(m.tau);
  }
  return j;
}

Move move_from_json(const json& j) {
  Move m;
  std::string t = j.at("type").get<std::string>();
  if (t == "mdim") {
    m.kind = Move::Kind::MDim;
    m.theta = hypernetwork_from_json(j.at("theta"));
  } else if (t == "amalg") {
    m.kind = Move::Kind::Amalg;
    m.u = j.at("u").get<std::uint32_t>();
    m.v = j.at("v").get<std::uint32_t>();
    m.x = j.at("x").get<std::uint32_t>();
    m.y = j.at("y").get<std::uint32_t>();
    m.sigma = transform_from_json(j.at("sigma"));
    m.tau = transform_from_json(j.at("tau"));
  } else {
    throw std::invalid_argument("move: unknown type '" + t + "'");
  }
  return m;
}

json provenance_to_json(const Provenance& p) {
  json j;
  switch (p.kase) {
    case Provenance::Case::Pad: j["case"] = "pad"; break;
    case Provenance::Case::Reuse: j["case"] = "reuse"; break;
    case Provenance::Case::Construct: j["case"] = "construct"; break;
  }
  if (p.reuse_round) j["reuse_round"] = *p.reuse_round;
  if (p.k) j["k"] = *p.k;
  if (p.i) j["i"] = *p.i;
  return j;
}

Provenance provenance_from_json(const json& j) {
  Provenance p;
  std::string c = j.at("case").get<std::string>();
  if (c == "pad") {
    p.kase = Provenance::Case::Pad;
  } else if (c == "reuse") {
    p.kase = Provenance::Case::Reuse;
  } else if (c == "construct") {
    p.kase = Provenance::Case::Construct;
  } else {
    throw std::invalid_argument("provenance: unknown case '" + c + "'");
  }
  if (j.contains("reuse_round")) p.reuse_round = j.at("reuse_round").get<std::uint32_t>();
  if (j.contains("k")) p.k = j.at("k").get<std::uint32_t>();
  if (j.contains("i")) p.i = j.at("i").get<std::uint32_t>();
  return p;
}

json transcript_to_json(const Transcript& t, const json& manifest) {
  json j;
  j["m"] = t.m;
  j["n"] = t.n;
  j["scheduler"] = t.scheduler;
  j["seed"] = t.seed;
  j["rounds_requested"] = t.rounds_requested;
  json b;
  b["j_outside_k"] = t.bounds.j_outside_k;
  b["k_max"] = t.bounds.k_max;
  b["lambda_subset"] = t.bounds.lambda_subset;
  j["bounds"] = std::move(b);
  json rounds = json::array();
  for (const RoundRecord& r : t.rounds) {
    json e;
    e["move"] = move_to_json(r.move);
    e["response"] = hypernetwork_to_json(r.response);
    e["provenance"] = provenance_to_json(r.prov);
    rounds.push_back(std::move(e));
  }
  j["rounds"] = std::move(rounds);
  j["manifest"] = manifest;
  return j;
}

Transcript transcript_from_json(const json& j, json* manifest_out) {
  Transcript t;
  t.m = j.at("m").get<std::uint32_t>();
  t.n = j.at("n").get<std::uint32_t>();
  t.scheduler = j.at("scheduler").get<std::string>();
  t.seed = j.at("seed").get<std::uint64_t>();
  t.rounds_requested = j.at("rounds_requested").get<std::uint32_t>();
  const json& b = j.at("bounds");
  t.bounds.j_outside_k = b.at("j_outside_k").get<std::uint32_t>();
  t.bounds.k_max = b.at("k_max").get<std::uint32_t>();
  t.bounds.lambda_subset = b.at("lambda_subset").get<std::uint32_t>();
  for (const json& e : j.at("rounds")) {
    RoundRecord r;
    r.move = move_from_json(e.at("move"));
    r.response = hypernetwork_from_json(e.at("response"));
    r.prov = provenance_from_json(e.at("provenance"));
    t.rounds.push_back(std::move(r));
  }
  if (manifest_out) *manifest_out = j.contains("manifest") ? j.at("manifest") : json::object();
  return t;
}

json check_report_to_json(const CheckReport& r) {
  json j;
  j["schema"] = r.schema_id;
  j["mode"] = to_string(r.mode);
  j["additive"] = r.additive;
  j["instantiations"] = r.instantiations;
  j["passed"] = r.passed;
  j["budget_exceeded"] = r.budget_exceeded;
  if (r.counterexample) {
    json ce;
    ce["indices"] = r.counterexample->indices;
    ce["elements"] = r.counterexample->elements;
    j["counterexample"] = std::move(ce);
  }
  return j;
}

json theory_report_to_json(const TheoryReport& r) {
  json j;
  j["all_passed"] = r.all_passed;
  j["budget_exceeded"] = r.any_budget_exceeded;
  json reports = json::array();
  for (const CheckReport& c : r.reports) reports.push_back(check_report_to_json(c));
  j["reports"] = std::move(reports);
  return j;
}

json morphism_report_to_json(const MorphismReport& r) {
  json j;
  j["ok"] = r.ok();
  json checks = json::array();
  for (const MorphismCheck& c : r.checks) {
    json e;
    e["name"] = c.name;
    e["ok"] = c.ok;
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  return j;
}

json fragment_report_to_json(const FragmentReport& r) {
  json j;
  j["ok"] = r.ok();
  json obs = json::array();
  for (const auto& o : r.obligations) {
    json e;
    e["kind"] = o.kind;
    e["round"] = o.round;
    e["ok"] = o.ok;
    if (!o.detail.empty()) e["detail"] = o.detail;
    obs.push_back(std::move(e));
  }
  j["obligations"] = std::move(obs);
  return j;
}

json counting_trace_to_json(const CountingTrace& t) {
  json j;
  j["n"] = t.n;
  j["r"] = t.r;
  j["a"] = t.a;
  j["psi"] = t.psi_value;
  j["base_bound"] = t.base_bound;
  j["kappa_zero_at_end"] = t.kappa_zero_at_end;
  j["terminal_inequality"] = t.terminal_inequality;
  j["ok"] = t.ok();
  json steps = json::array();
  for (const CountingStep& s : t.steps) {
    json e;
    e["t"] = s.t;
    e["kappa"] = s.kappa_here;
    e["kappa_next"] = s.kappa_next;
    e["exact"] = s.exact;
    steps.push_back(std::move(e));
  }
  j["steps"] = std::move(steps);
  return j;
}

json replay_outcome_to_json(const ReplayOutcome& o) {
  json j;
  switch (o.kind) {
    case ReplayOutcome::Kind::PreconditionFailure: j["kind"] = "precondition-failure"; break;
    case ReplayOutcome::Kind::TrivialNoRounds: j["kind"] = "trivial-no-rounds"; break;
    case ReplayOutcome::Kind::StuckAt: j["kind"] = "stuck-at"; break;
    case ReplayOutcome::Kind::InputInconsistent: j["kind"] = "input-inconsistent"; break;
  }
  j["stage"] = o.stage;
  j["reason"] = o.reason;
  j["round"] = o.round;
  j["data"] = o.data;
  j["rounds_completed"] = o.rounds_completed;
  j["final_rank"] = o.final_rank;
  j["max_rank"] = o.max_rank;
  json chain = json::array();
  for (const auto& c : o.chain) {
    json e;
    e["t"] = c.t;
    e["size"] = c.size;
    e["bound"] = c.bound;
    e["ok"] = c.ok;
    chain.push_back(std::move(e));
  }
  j["chain"] = std::move(chain);
  return j;
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << dump_canonical(j);
}

}  // namespace bao
