#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bao::cli {

inline constexpr int kOk = 0;
inline constexpr int kViolation = 2;
inline constexpr int kBudget = 3;
inline constexpr int kStrategyFailure = 4;
inline constexpr int kUsage = 64;

struct BuildArgs {
  std::uint32_t m = 3, n = 3;
  std::uint64_t r = 0;
  std::optional<std::uint64_t> psi_cap;
  std::size_t ceiling = 4'000'000;
  std::optional<std::string> out;
  bool json = false;
};
int cmd_build(const BuildArgs& a);

struct AxiomsArgs {
  std::string in;
  std::string theory = "qpea";
  std::string mode = "auto";  // auto | atoms | exhaustive | sampled
  std::uint64_t budget = 1ull << 22;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  bool json = false;
};
int cmd_axioms(const AxiomsArgs& a);

struct NeatArgs {
  std::string in;
  std::vector<std::uint32_t> gamma;
  bool json = false;
};
int cmd_neat(const NeatArgs& a);

struct IsoArgs {
  std::string small_in;
  std::string big_in;
  std::string map = "nr_lift";  // nr_lift | i_n
  std::optional<std::uint32_t> m;  // for i_n
  bool json = false;
};
int cmd_iso(const IsoArgs& a);

struct RelativizeArgs {
  std::string in;
  std::optional<std::string> element;  // element JSON file
  std::optional<std::uint32_t> xn_m;   // use x_n with this m
  bool json = false;
};
int cmd_relativize(const RelativizeArgs& a);

struct GameArgs {
  std::uint32_t m = 3, n = 4;
  std::uint32_t rounds = 50;
  std::string scheduler = "exhaustive";  // exhaustive | random
  std::uint64_t seed = 0;
  std::optional<std::string> out;
  std::uint32_t j_outside_k = 2, k_max = 2, lambda_subset = 8;
  bool json = false;
};
int cmd_game(const GameArgs& a);

struct ValidateArgs {
  std::string transcript;
  bool json = false;
};
int cmd_validate(const ValidateArgs& a);

struct CertArgs {
  // table mode
  std::optional<std::uint32_t> n;
  std::optional<std::uint64_t> r;
  // replay mode
  std::optional<std::string> small_in;
  std::optional<std::string> big_in;
  bool json = false;
};
int cmd_cert(const CertArgs& a);

}  // namespace bao::cli
