#include "bao/cli.hpp"

#include <chrono>
#include <iostream>

#include "bao/errors.hpp"
#include "bao/json_io.hpp"

namespace bao::cli {

namespace {

std::uint64_t now_ms() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

struct Timer {
  std::uint64_t t0 = now_ms();
  std::uint64_t elapsed() const { return now_ms() - t0; }
};

void emit(const json& j, bool as_json, const std::string& human) {
  if (as_json)
    std::cout << dump_canonical(j);
  else
    std::cout << human;
}

}  // namespace

int cmd_build(const BuildArgs& a) {
  Timer timer;
  try {
    AtomStructure s = enumerate_atoms(a.m, a.n, a.r, a.psi_cap, a.ceiling);
    Manifest man;
    man.command = "build";
    man.params = {{"m", a.m}, {"n", a.n}, {"r", a.r}};
    if (a.psi_cap) man.params["psi_cap"] = *a.psi_cap;
    man.structure_hash = hash_hex(s.hash());
    man.outcome = "built " + std::to_string(s.size()) + " atoms";
    man.wall_ms = timer.elapsed();
    if (a.out) write_file(*a.out, structure_to_json(s, man.to_json()));
    json j;
    j["atoms"] = s.size();
    j["bin_colors"] = s.colors().size();
    j["psi_bound"] = s.psi_bound();
    j["hash"] = hash_hex(s.hash());
    emit(j, a.json,
         "F(" + std::to_string(a.m) + "," + std::to_string(a.n) + "," + std::to_string(a.r) +
             "): " + std::to_string(s.size()) + " atoms, |Bin| = " +
             std::to_string(s.colors().size()) + ", psi bound " + std::to_string(s.psi_bound()) +
             "\n");
    return kOk;
  } catch (const EnumerationLimitError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int cmd_axioms(const AxiomsArgs& a) {
  Timer timer;
  std::optional<Signature> k = signature_from_string(a.theory);
  if (!k) {
    std::cerr << "error: unknown theory '" << a.theory << "'\n";
    return kUsage;
  }
  ModePolicy policy;
  if (a.mode == "auto") {
    policy = ModePolicy::Auto;
  } else if (a.mode == "atoms") {
    policy = ModePolicy::AtomsOnly;
  } else if (a.mode == "exhaustive") {
    policy = ModePolicy::ExhaustiveOnly;
  } else if (a.mode == "sampled") {
    policy = ModePolicy::SampledOnly;
  } else {
    std::cerr << "error: unknown mode '" << a.mode << "'\n";
    return kUsage;
  }
  try {
    auto s = std::make_shared<AtomStructure>(structure_from_json(load_file(a.in)));
    Algebra A = Algebra::complex(s);
    TheoryReport rep = check_theory(A, *k, policy, a.budget, a.seed);
    json j = theory_report_to_json(rep);
    Manifest man;
    man.command = "axioms";
    man.params = {{"in", a.in}, {"theory", a.theory}, {"mode", a.mode},
                  {"budget", a.budget}, {"seed", a.seed}};
    man.structure_hash = hash_hex(s->hash());
    man.wall_ms = timer.elapsed();
    man.outcome = rep.all_passed ? "all passed" : "counterexample found";
    j["manifest"] = man.to_json();
    if (a.out) write_file(*a.out, j);
    std::string human;
    for (const CheckReport& c : rep.reports)
      human += (c.passed ? "pass  " : (c.budget_exceeded ? "budget" : "FAIL  ")) + std::string(" ") +
               c.schema_id + " (" + to_string(c.mode) + ", " +
               std::to_string(c.instantiations) + " instantiations)\n";
    human += rep.all_passed ? "all schemas passed\n"
                            : (rep.any_budget_exceeded ? "budget exceeded\n"
                                                       : "counterexample found\n");
    emit(j, a.json, human);
    bool counterexample = false;
    for (const CheckReport& c : rep.reports) counterexample |= c.counterexample.has_value();
    if (counterexample) return kViolation;
    if (rep.any_budget_exceeded) return kBudget;
    return rep.all_passed ? kOk : kViolation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int cmd_neat(const NeatArgs& a) {
  try {
    auto s = std::make_shared<AtomStructure>(structure_from_json(load_file(a.in)));
    Algebra A = Algebra::complex(s);
    Algebra nr = A.neat_reduct(a.gamma);
    json j;
    j["carrier_atoms"] = nr.carrier_atoms().size();
    std::size_t total = 0;
    for (const Element& c : nr.carrier_atoms()) total += c.count();
    j["atoms_covered"] = total;
    j["gamma"] = a.gamma;
    std::string human = "Nr carrier: " + std::to_string(nr.carrier_atoms().size()) +
                        " join-irreducible classes over " + std::to_string(total) + " atoms\n";
    emit(j, a.json, human);
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int cmd_iso(const IsoArgs& a) {
  try {
    auto small = std::make_shared<AtomStructure>(structure_from_json(load_file(a.small_in)));
    auto big = std::make_shared<AtomStructure>(structure_from_json(load_file(a.big_in)));
    Algebra A = Algebra::complex(small);
    MorphismReport rep;
    if (a.map == "nr_lift") {
      Algebra B = Algebra::complex(big);
      std::vector<Element> images = restriction_fibers(*small, *big);
      MorphismOptions opts;
      std::vector<std::uint32_t> gamma;
      for (std::uint32_t i = 0; i < small->m; ++i) gamma.push_back(i);
      opts.neat_into = gamma;
      rep = verify_morphism(images, A, B, Signature::PEA, opts);
    } else if (a.map == "i_n") {
      if (!a.m) {
        std::cerr << "error: i_n needs --m\n";
        return kUsage;
      }
      Algebra big_alg = Algebra::complex(big);
      Element xn = x_n_element(*big, *a.m);
      Algebra B = big_alg.dimension_reduct(*a.m).relativize(xn);
      std::vector<Element> images = i_n_fibers(*small, *big, *a.m);
      rep = verify_morphism(images, A, B, Signature::QPEA);
    } else {
      std::cerr << "error: unknown map '" << a.map << "'\n";
      return kUsage;
    }
    json j = morphism_report_to_json(rep);
    std::string human;
    for (const MorphismCheck& c : rep.checks)
      human += (c.ok ? "pass  " : "FAIL  ") + c.name + (c.detail.empty() ? "" : " (" + c.detail + ")") +
               "\n";
    emit(j, a.json, human);
    return rep.ok() ? kOk : kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int cmd_relativize(const RelativizeArgs& a) {
  try {
    auto s = std::make_shared<AtomStructure>(structure_from_json(load_file(a.in)));
    Algebra A = Algebra::complex(s);
    Element x(0);
    if (a.element) {
      x = element_from_json(load_file(*a.element), *s);
    } else if (a.xn_m) {
      x = x_n_element(*s, *a.xn_m);
    } else {
      std::cerr << "error: need --element or --xn\n";
      return kUsage;
    }
    Algebra view = (a.xn_m ? A.dimension_reduct(*a.xn_m) : A).relativize(x);
    bool comm = view.commutativity_holds();
    json j;
    j["carrier_atoms"] = view.carrier_atoms().size();
    j["commutativity"] = comm;
    auto ce = view.commutativity_counterexample();
    if (ce) {
      j["counterexample"] = {{"i", std::get<0>(*ce)}, {"j", std::get<1>(*ce)},
                             {"carrier_atom", std::get<2>(*ce)}};
    }
    emit(j, a.json,
         "Rl_x: " + std::to_string(view.carrier_atoms().size()) + " atoms below x, commutativity " +
             (comm ? "holds" : "FAILS") + "\n");
    return kOk;  // non-commutativity is a report, not an error
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int cmd_game(const GameArgs& a) {
  Timer timer;
  SchedulerBounds bounds;
  bounds.j_outside_k = a.j_outside_k;
  bounds.k_max = a.k_max;
  bounds.lambda_subset = a.lambda_subset;
  try {
    Transcript tr;
    if (a.scheduler == "exhaustive") {
      tr = run_play_exhaustive(a.m, a.n, a.rounds, bounds);
    } else if (a.scheduler == "random") {
      tr = run_play_random(a.m, a.n, a.rounds, a.seed, bounds);
    } else {
      std::cerr << "error: unknown scheduler '" << a.scheduler << "'\n";
      return kUsage;
    }
    FragmentReport frag = fragment_check(tr);
    Manifest man;
    man.command = "game";
    man.params = {{"m", a.m}, {"n", a.n}, {"rounds", a.rounds}, {"scheduler", a.scheduler},
                  {"seed", a.seed}};
    man.wall_ms = timer.elapsed();
    man.outcome = "played " + std::to_string(tr.rounds.size()) + " rounds";
    if (a.out) write_file(*a.out, transcript_to_json(tr, man.to_json()));
    json j;
    j["rounds"] = tr.rounds.size();
    j["fragment"] = fragment_report_to_json(frag);
    emit(j, a.json,
         "played " + std::to_string(tr.rounds.size()) + " rounds; fragment check " +
             (frag.ok() ? "passed" : "FAILED") + "\n");
    return frag.ok() ? kOk : kViolation;
  } catch (const StrategyError& e) {
    std::cerr << "strategy failure: " << e.what() << "\n";
    return kStrategyFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int cmd_validate(const ValidateArgs& a) {
  try {
    Transcript tr = transcript_from_json(load_file(a.transcript));
    TranscriptValidation v = validate_transcript(tr);
    json j;
    j["ok"] = v.ok;
    if (!v.ok) {
      j["bad_round"] = v.bad_round;
      j["reason"] = v.reason;
    }
    emit(j, a.json,
         v.ok ? "transcript validates\n"
              : "round " + std::to_string(v.bad_round) + " fails: " + v.reason + "\n");
    return v.ok ? kOk : kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int cmd_cert(const CertArgs& a) {
  try {
    if (a.small_in && a.big_in) {
      auto small = std::make_shared<AtomStructure>(structure_from_json(load_file(*a.small_in)));
      auto big = std::make_shared<AtomStructure>(structure_from_json(load_file(*a.big_in)));
      std::vector<Element> embed = restriction_fibers(*small, *big);
      Algebra host = Algebra::complex(big).signature_reduct(Signature::Sc);
      ReplayOutcome out = replay_derivation(host, embed, *small, small->m,
                                            static_cast<std::uint32_t>(small->n()), small->r());
      json j = replay_outcome_to_json(out);
      emit(j, a.json, "replay: " + j["kind"].get<std::string>() + " at stage '" + out.stage +
                          "' (" + out.reason + ")\n");
      if (out.kind == ReplayOutcome::Kind::InputInconsistent ||
          out.kind == ReplayOutcome::Kind::TrivialNoRounds)
        return kOk;
      return kViolation;
    }
    if (!a.n || !a.r) {
      std::cerr << "error: cert needs n and r (table mode) or --small/--big (replay mode)\n";
      return kUsage;
    }
    CountingTrace tr = counting_chain(*a.n, *a.r);
    json j = counting_trace_to_json(tr);
    std::string human = "psi(" + std::to_string(*a.n) + "," + std::to_string(*a.r) + ") = " +
                        tr.psi_value + "\nkappa chain:";
    for (const CountingStep& s : tr.steps) human += " " + s.kappa_here;
    human += " 0\nterminal inequality " + std::string(tr.terminal_inequality ? "holds" : "FAILS") +
             "\n";
    emit(j, a.json, human);
    return tr.ok() ? kOk : kViolation;
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace bao::cli
