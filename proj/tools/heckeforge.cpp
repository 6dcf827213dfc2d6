// Command-line front end. Subcommands: validate, hecke-check, gha-check,
// extended-quotient, classify, tempered. Exit codes: 0 all checks pass,
// 1 a check failed, 2 input error.

#include "heckeforge/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace heckeforge;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string json_path;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string point_arg;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_seed = true, bool with_point = false) {
  cmd->add_option("--config", args.config_path, "configuration file")->required();
  cmd->add_option("--json", args.json_path, "write the machine-readable report here");
  if (with_seed) {
    auto* opt = cmd->add_option("--seed", args.seed, "seed for the numerical splitting");
    opt->each([&args](const std::string&) { args.seed_set = true; });
  }
  if (with_point)
    cmd->add_option("--point", args.point_arg, "torus point 'angles[;logmags]' overriding the config");
}

std::optional<TorusPoint> parse_point_arg(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto parts = detail_cfg::split_on(s, ';');
  if (parts.size() == 1) return TorusPoint::unitary(detail_cfg::parse_rat_vec(parts[0], "<point>", 1));
  if (parts.size() != 2) throw Error("ParseError", "--point needs 'angles[;logmags]'");
  return TorusPoint(detail_cfg::parse_rat_vec(parts[0], "<point>", 1),
                    detail_cfg::parse_rat_vec(parts[1], "<point>", 1));
}

int finish(const CommandResult& res, const CommonArgs& args) {
  std::cout << res.text;
  if (!args.json_path.empty()) {
    std::ofstream out(args.json_path);
    if (!out) {
      std::cerr << "error: cannot write " << args.json_path << "\n";
      return 2;
    }
    out << res.doc.dump(2) << "\n";
  }
  return res.status;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computer algebra for twisted affine and graded Hecke algebras"};
  app.require_subcommand(1);

  CommonArgs validate_args, hecke_args, gha_args, quotient_args, classify_args, tempered_args;
  std::string weights_path;

  auto* cmd_v = app.add_subcommand("validate", "structural checks of a configuration");
  add_common(cmd_v, validate_args, false);
  auto* cmd_h = app.add_subcommand("hecke-check", "affine algebra relation suites");
  add_common(cmd_h, hecke_args);
  auto* cmd_g = app.add_subcommand("gha-check", "graded algebra relation suites");
  add_common(cmd_g, gha_args, true, true);
  auto* cmd_q = app.add_subcommand("extended-quotient", "twisted extended quotient table");
  add_common(cmd_q, quotient_args);
  auto* cmd_c = app.add_subcommand("classify", "classification data at a unitary point");
  add_common(cmd_c, classify_args, true, true);
  auto* cmd_t = app.add_subcommand("tempered", "temperedness flags for a weight file");
  add_common(cmd_t, tempered_args, false);
  cmd_t->add_option("--weights", weights_path, "weight list file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_v->parsed()) {
      auto cfg = parse_config_file(validate_args.config_path);
      return finish(cmd_validate(cfg), validate_args);
    }
    if (cmd_h->parsed()) {
      auto cfg = parse_config_file(hecke_args.config_path);
      std::uint64_t seed = hecke_args.seed_set ? hecke_args.seed : cfg.seed;
      return finish(cmd_hecke_check(cfg, seed), hecke_args);
    }
    if (cmd_g->parsed()) {
      auto cfg = parse_config_file(gha_args.config_path);
      std::uint64_t seed = gha_args.seed_set ? gha_args.seed : cfg.seed;
      if (auto p = parse_point_arg(gha_args.point_arg)) cfg.point = *p;
      return finish(cmd_gha_check(cfg, seed), gha_args);
    }
    if (cmd_q->parsed()) {
      auto cfg = parse_config_file(quotient_args.config_path);
      std::uint64_t seed = quotient_args.seed_set ? quotient_args.seed : cfg.seed;
      return finish(cmd_extended_quotient(cfg, seed), quotient_args);
    }
    if (cmd_c->parsed()) {
      auto cfg = parse_config_file(classify_args.config_path);
      std::uint64_t seed = classify_args.seed_set ? classify_args.seed : cfg.seed;
      return finish(cmd_classify(cfg, seed, parse_point_arg(classify_args.point_arg)), classify_args);
    }
    if (cmd_t->parsed()) {
      auto cfg = parse_config_file(tempered_args.config_path);
      std::ifstream win(weights_path);
      if (!win) throw Error("ParseError", "cannot open weights file '" + weights_path + "'");
      std::stringstream buf;
      buf << win.rdbuf();
      return finish(cmd_tempered(cfg, buf.str()), tempered_args);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
