#include <CLI11.hpp>

#include "bao/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"finbao: a workbench for finite boolean algebras with operators"};
  app.require_subcommand(1);

  bao::cli::BuildArgs build;
  std::uint64_t build_cap = 0;
  auto* cb = app.add_subcommand("build", "enumerate an atom structure F(m, n, r)");
  cb->add_option("m", build.m, "dimension m (>= 3)")->required();
  cb->add_option("n", build.n, "alphabet parameter n (>= 2)")->required();
  cb->add_option("r", build.r, "linear order size r")->required();
  auto* cap_opt = cb->add_option("--psi-cap", build_cap, "cap the superscript range (1..psi)");
  cb->add_option("--ceiling", build.ceiling, "abort past this many atoms");
  cb->add_option("--out", [&](const std::vector<std::string>& v) {
    build.out = v.at(0);
    return true;
  }, "write the structure JSON here");
  cb->add_flag("--json", build.json, "structured output");

  bao::cli::AxiomsArgs ax;
  auto* ca = app.add_subcommand("axioms", "check an equational theory over a structure");
  ca->add_option("--in", ax.in, "structure JSON")->required();
  ca->add_option("--theory", ax.theory, "df|sc|ca|qpa|qpea|pea");
  ca->add_option("--mode", ax.mode, "auto|atoms|exhaustive|sampled");
  ca->add_option("--budget", ax.budget, "evaluation budget");
  ca->add_option("--seed", ax.seed, "seed for sampled mode");
  ca->add_option("--out", [&](const std::vector<std::string>& v) {
    ax.out = v.at(0);
    return true;
  }, "write the JSON report here");
  ca->add_flag("--json", ax.json, "structured output");

  bao::cli::NeatArgs neat;
  auto* cn = app.add_subcommand("neat", "compute a neat reduct carrier");
  cn->add_option("--in", neat.in, "structure JSON")->required();
  cn->add_option("--gamma", neat.gamma, "indices of the reduct dimension set")->required();
  cn->add_flag("--json", neat.json, "structured output");

  bao::cli::IsoArgs iso;
  std::uint32_t iso_m = 0;
  auto* ci = app.add_subcommand("iso", "verify a canonical embedding / isomorphism");
  ci->add_option("--small", iso.small_in, "source structure JSON")->required();
  ci->add_option("--big", iso.big_in, "target structure JSON")->required();
  ci->add_option("--map", iso.map, "nr_lift|i_n");
  auto* iso_m_opt = ci->add_option("--m", iso_m, "reduct dimension for i_n");
  ci->add_flag("--json", iso.json, "structured output");

  bao::cli::RelativizeArgs rel;
  std::uint32_t rel_xn = 0;
  auto* cr = app.add_subcommand("relativize", "relativize to an element and report commutativity");
  cr->add_option("--in", rel.in, "structure JSON")->required();
  cr->add_option("--element", [&](const std::vector<std::string>& v) {
    rel.element = v.at(0);
    return true;
  }, "element JSON file");
  auto* xn_opt = cr->add_option("--xn", rel_xn, "relativize Rd_m to x_n with this m");
  cr->add_flag("--json", rel.json, "structured output");

  bao::cli::GameArgs game;
  auto* cg = app.add_subcommand("game", "play the hypernetwork amalgamation game");
  cg->add_option("m", game.m, "m (>= 3)")->required();
  cg->add_option("n", game.n, "n (> m)")->required();
  cg->add_option("--rounds", game.rounds, "round budget");
  cg->add_option("--scheduler", game.scheduler, "exhaustive|random");
  cg->add_option("--seed", game.seed, "seed for the random scheduler");
  cg->add_option("--j-outside-k", game.j_outside_k, "adversary palette prefix length");
  cg->add_option("--k-max", game.k_max, "adversary palette superscript bound");
  cg->add_option("--lambda-subset", game.lambda_subset, "adversary label subset size");
  cg->add_option("--out", [&](const std::vector<std::string>& v) {
    game.out = v.at(0);
    return true;
  }, "write the transcript JSON here");
  cg->add_flag("--json", game.json, "structured output");

  bao::cli::ValidateArgs val;
  auto* cv = app.add_subcommand("validate", "independently replay a transcript");
  cv->add_option("--transcript", val.transcript, "transcript JSON")->required();
  cv->add_flag("--json", val.json, "structured output");

  bao::cli::CertArgs cert;
  std::uint32_t cert_n = 0;
  std::uint64_t cert_r = 0;
  auto* cc = app.add_subcommand("cert", "counting-chain tables or a derivation replay");
  auto* cert_n_opt = cc->add_option("n", cert_n, "construction parameter n");
  auto* cert_r_opt = cc->add_option("r", cert_r, "construction parameter r");
  cc->add_option("--small", [&](const std::vector<std::string>& v) {
    cert.small_in = v.at(0);
    return true;
  }, "replay: structure of C(m, n, r)");
  cc->add_option("--big", [&](const std::vector<std::string>& v) {
    cert.big_in = v.at(0);
    return true;
  }, "replay: host structure (dimension >= n+1)");
  cc->add_flag("--json", cert.json, "structured output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return bao::cli::kUsage;
  }

  if (cb->parsed()) {
    if (cap_opt->count()) build.psi_cap = build_cap;
    return bao::cli::cmd_build(build);
  }
  if (ca->parsed()) return bao::cli::cmd_axioms(ax);
  if (cn->parsed()) return bao::cli::cmd_neat(neat);
  if (ci->parsed()) {
    if (iso_m_opt->count()) iso.m = iso_m;
    return bao::cli::cmd_iso(iso);
  }
  if (cr->parsed()) {
    if (xn_opt->count()) rel.xn_m = rel_xn;
    return bao::cli::cmd_relativize(rel);
  }
  if (cg->parsed()) return bao::cli::cmd_game(game);
  if (cv->parsed()) return bao::cli::cmd_validate(val);
  if (cc->parsed()) {
    if (cert_n_opt->count()) cert.n = cert_n;
    if (cert_r_opt->count()) cert.r = cert_r;
    return bao::cli::cmd_cert(cert);
  }
  return bao::cli::kUsage;
}
