// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"
#include "motskit/errors.hpp"
#include "motskit/version.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 4;

void add_common_options(CLI::App* cmd, motskit::cli::RunConfig& cfg) {
  cmd->add_option("--metric", cfg.metric_spec, "metric spec, family:key=value,...");
  cmd->add_option("--data", cfg.data_spec, "initial data: K0 | KminusEpsG | KplusEpsG");
  auto eps_value = std::make_shared<double>(0.0);
  auto* eps_opt = cmd->add_option("--eps", *eps_value, "epsilon of the data spec (0 or 1)");
  cmd->add_option("--check", cfg.checks, "checks to run (repeatable)");
  cmd->add_option("--grid", cfg.grid, "grid points per axis")
      ->check(CLI::Range(8, 128));
  cmd->add_option("--tol", cfg.tol, "verifier tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "seed for sample sequences");
  cmd->add_option("--out", cfg.out_path, "output path (default: stdout)");
  cmd->add_option("--format", cfg.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
  auto range_text = std::make_shared<std::string>();
  auto* range_opt = cmd->add_option("--range", *range_text, "profile range lo:hi");
  cmd->callback([&cfg, eps_opt, eps_value, range_opt, range_text]() {
    if (eps_opt->count() > 0) cfg.eps = *eps_value;
    if (range_opt->count() > 0) {
      const std::size_t colon = range_text->find(':');
      if (colon == std::string::npos)
        throw CLI::ValidationError("--range expects lo:hi");
      cfg.range = std::make_pair(std::stod(range_text->substr(0, colon)),
                                 std::stod(range_text->substr(colon + 1)));
    }
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"motskit: initial-data sets, MOTS stability, and warped-product "
               "splitting checks on explicit metrics"};
  app.set_version_flag("--version", motskit::kVersion);
  app.require_subcommand(1);

  motskit::cli::RunConfig cfg;

  CLI::App* catalog = app.add_subcommand("catalog", "list metric families and expectations");
  catalog->add_option("--name", cfg.catalog_name, "family name filter");
  catalog->add_option("--out", cfg.out_path, "output path (default: stdout)");
  catalog->add_option("--format", cfg.format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));
  catalog->parse_complete_callback([&cfg]() {
    if (cfg.format == "csv") cfg.format = "text";
  });

  CLI::App* verify = app.add_subcommand(
      "verify", "run paper checks on a metric + data spec; JSON report");
  add_common_options(verify, cfg);
  verify->get_option("--metric")->required();

  CLI::App* profile =
      app.add_subcommand("profile", "emit theta / xi / spectrum / S profiles as CSV");
  add_common_options(profile, cfg);

  // catalog defaults to text output unless asked otherwise
  if (argc > 1 && std::string(argv[1]) == "catalog") cfg.format = "text";

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (catalog->parsed()) return motskit::cli::run_catalog(cfg);
    if (verify->parsed()) return motskit::cli::run_verify(cfg);
    if (profile->parsed()) return motskit::cli::run_profile(cfg);
    std::cerr << "no subcommand\n";
    return kConfigError;
  } catch (const motskit::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const motskit::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}
