#include <CLI11.hpp>
#include <cstdio>
#include <optional>
#include <string>

#include "cli_config.hpp"
#include "commands.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::string emit_config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::string> bath;
  std::optional<int> threads;
  std::optional<std::string> field;
  bool diagonal = false;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file; flags override it");
  cmd->add_option("--emit-config", flags.emit_config_path,
                  "write the effective config (after overrides) to this path");
  cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_option("--out", flags.out, "primary output path");
  cmd->add_option("--bath", flags.bath, "input bath file");
  cmd->add_option("--threads", flags.threads, "worker threads for grid sweeps");
  cmd->add_option("--field", flags.field, "magnetic field with unit suffix, e.g. 200G or 0.02T");
  cmd->add_flag("--diagonal", flags.diagonal, "restrict the grid to the t = tau diagonal");
}

qee::cli::RunConfig resolve(const CommonFlags& flags) {
  qee::cli::RunConfig config;
  if (!flags.config_path.empty()) {
    config = qee::cli::load_config(flags.config_path);
  }
  if (flags.seed) config.seed = *flags.seed;
  if (flags.out) config.out_path = *flags.out;
  if (flags.bath) config.bath_path = *flags.bath;
  if (flags.threads) config.threads = *flags.threads;
  if (flags.field) config.b_z_tesla = qee::cli::parse_field(*flags.field);
  if (flags.diagonal) config.grid.diagonal = true;
  if (!flags.emit_config_path.empty()) {
    qee::cli::write_config(flags.emit_config_path, config);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pure-dephasing qubit-environment entanglement witness simulator"};
  app.require_subcommand(1);

  CommonFlags gen_flags, protocol_flags, echo_flags, noise_flags, verify_flags;
  std::string inject_fault;

  CLI::App* gen = app.add_subcommand("gen-bath", "generate, polarize and save an NV spin bath");
  add_common(gen, gen_flags);
  CLI::App* protocol = app.add_subcommand(
      "run-protocol", "two-preparation coherence trace plus per-tau entanglement report");
  add_common(protocol, protocol_flags);
  CLI::App* echo = app.add_subcommand("echo", "spin-echo coherence versus tau");
  add_common(echo, echo_flags);
  CLI::App* noise = app.add_subcommand("noise", "classical stochastic-field reference pipeline");
  add_common(noise, noise_flags);
  CLI::App* verify = app.add_subcommand("verify", "run the built-in oracle cross-checks");
  add_common(verify, verify_flags);
  verify->add_option("--inject-fault", inject_fault,
                     "deliberately break a named check (self-test of the checks)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) return qee::cli::cmd_gen_bath(resolve(gen_flags));
    if (protocol->parsed()) return qee::cli::cmd_run_protocol(resolve(protocol_flags));
    if (echo->parsed()) return qee::cli::cmd_echo(resolve(echo_flags));
    if (noise->parsed()) return qee::cli::cmd_noise(resolve(noise_flags));
    if (verify->parsed()) return qee::cli::cmd_verify(resolve(verify_flags), inject_fault);
  } catch (const qee::NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 3;
  } catch (const qee::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
