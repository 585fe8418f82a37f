#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "omav/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"omav: tiltrotor morphology design, allocation and closed-loop simulation"};
  app.require_subcommand(1);

  std::string config;
  std::string out = "out";
  omav::cli::Overrides ov;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "JSON config file");
    sub->add_option("--out", out, "output directory")->capture_default_str();
    sub->add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { ov.seed = s; },
                                            "random seed");
  };
  auto bias = [&](CLI::App* sub) {
    sub->add_option_function<std::string>("--bias", [&](const std::string& s) { ov.bias = s == "on"; },
                                           "alpha bias near singular hover")
        ->check(CLI::IsMember({"on", "off"}));
  };

  CLI::App* optimize = app.add_subcommand("optimize", "morphology optimization");
  common(optimize);
  optimize->add_option_function<int>("--cost", [&](const int& c) { ov.cost = c; }, "cost function")
      ->check(CLI::IsMember({1, 2}));

  CLI::App* envelope = app.add_subcommand("envelope", "force/torque envelopes of a morphology");
  common(envelope);

  CLI::App* simulate = app.add_subcommand("simulate", "closed-loop simulation");
  common(simulate);
  simulate->add_option_function<std::string>("--traj", [&](const std::string& t) { ov.trajectory = t; },
                                              "a..g or a waypoint JSON file");
  simulate->add_option_function<std::string>("--controller",
                                              [&](const std::string& c) { ov.controller = c; },
                                              "controller")
      ->check(CLI::IsMember({"lqri", "pid"}));
  bias(simulate);
  simulate->add_option_function<int>("--unwind", [&](const int& n) { ov.unwind = n; },
                                     "number of arms starting at alpha = 2 pi")
      ->check(CLI::NonNegativeNumber);

  CLI::App* scan = app.add_subcommand("condition-scan", "condition number of A_alpha over the sphere");
  common(scan);
  bias(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return omav::cli::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const std::optional<std::filesystem::path> path =
      config.empty() ? std::nullopt : std::optional<std::filesystem::path>(config);
  return omav::cli::runCommand(command, path, ov, out, std::cout, std::cerr);
}
