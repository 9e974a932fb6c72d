#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "bao/algebra.hpp"
#include "bao/atoms.hpp"
#include "bao/certificate.hpp"
#include "bao/game.hpp"
#include "bao/morphism.hpp"
#include "bao/theories.hpp"
#include "bao/transform.hpp"

namespace bao {

using nlohmann::json;

// Every output file embeds the manifest of the run that produced its data;
// loaders carry it through verbatim so that re-export is byte-identical.
struct Manifest {
  std::string tool = "finbao";
  std::string version = "0.1.0";
  std::string command;
  json params = json::object();
  std::optional<std::string> structure_hash;
  std::uint64_t wall_ms = 0;
  std::string outcome;
  json to_json() const;
};

std::string hash_hex(std::uint64_t h);

json transform_to_json(const Transform& t);
Transform transform_from_json(const json& j);

json bin_elem_to_json(const BinElem& e);
BinElem bin_elem_from_json(const json& j);

json atom_to_json(const Atom& a);
Atom atom_from_json(const json& j);

// atoms listed in canonical order; the loader re-validates invariants
json structure_to_json(const AtomStructure& s, const json& manifest);
AtomStructure structure_from_json(const json& j, json* manifest_out = nullptr);

json element_to_json(const Element& e, const AtomStructure& s);
Element element_from_json(const json& j, const AtomStructure& s);

json hypernetwork_to_json(const Hypernetwork& h);
Hypernetwork hypernetwork_from_json(const json& j);

json move_to_json(const Move& m);
Move move_from_json(const json& j);

json provenance_to_json(const Provenance& p);
Provenance provenance_from_json(const json& j);

json transcript_to_json(const Transcript& t, const json& manifest);
Transcript transcript_from_json(const json& j, json* manifest_out = nullptr);

json check_report_to_json(const CheckReport& r);
json theory_report_to_json(const TheoryReport& r);
json morphism_report_to_json(const MorphismReport& r);
json fragment_report_to_json(const FragmentReport& r);
json counting_trace_to_json(const CountingTrace& t);
json replay_outcome_to_json(const ReplayOutcome& o);

std::string dump_canonical(const json& j);
json load_file(const std::string& path);
void write_file(const std::string& path, const json& j);

}  // namespace bao
