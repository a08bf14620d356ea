#include "amir/cli/app.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <string>
#include <vector>

#include "amir/cli/config.hpp"
#include "amir/cli/pipeline.hpp"
#include "amir/cli/service.hpp"
#include "amir/error.hpp"

namespace amir::cli {
namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> k;
  std::optional<double> threshold;
  std::optional<std::string> out;
  std::string address = "127.0.0.1:8080";
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "Pipeline configuration (JSON)")->required();
  cmd->add_option("--seed", f.seed, "Override the LDA seed");
  cmd->add_option("--k", f.k, "Override the number of recommendations");
  cmd->add_option("--threshold", f.threshold, "Override the Specific-tier similarity threshold");
  cmd->add_option("--out", f.out, "Override the output directory");
}

void report(std::ostream& out, const StageResult& r) {
  out << stage_name(r.stage) << ": ";
  if (r.skipped) {
    out << "up to date\n";
    return;
  }
  out << "wrote";
  for (const auto& name : r.outputs) out << ' ' << name;
  out << '\n';
}

std::pair<std::string, int> split_address(const std::string& address) {
  const auto colon = address.rfind(':');
  if (colon == std::string::npos) throw ConfigInvalid("--address must be host:port");
  int port = 0;
  try {
    port = std::stoi(address.substr(colon + 1));
  } catch (const std::exception&) {
    throw ConfigInvalid("--address: bad port");
  }
  if (port < 0 || port > 65535) throw ConfigInvalid("--address: port out of range");
  return {address.substr(0, colon), port};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Misinformation rebuttal pipeline"};
  app.require_subcommand(1);
  Flags flags;

  std::vector<std::pair<CLI::App*, std::optional<Stage>>> commands;
  for (Stage s : all_stages()) {
    auto* cmd = app.add_subcommand(stage_name(s), std::string("Run the ") + stage_name(s) + " stage");
    add_common(cmd, flags);
    commands.emplace_back(cmd, s);
  }
  auto* run = app.add_subcommand("run", "Run every stage in order, skipping up-to-date ones");
  add_common(run, flags);
  auto* serve = app.add_subcommand("serve", "Serve recommendations over HTTP");
  add_common(serve, flags);
  serve->add_option("--address", flags.address, "host:port to listen on")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    ConfigOverrides ov;
    ov.seed = flags.seed;
    ov.k = flags.k;
    ov.threshold = flags.threshold;
    if (flags.out) ov.out = *flags.out;
    const PipelineConfig config = load_config(flags.config, ov);

    for (const auto& [cmd, stage] : commands) {
      if (cmd->parsed()) {
        report(out, run_stage(config, *stage));
        return kExitOk;
      }
    }
    if (run->parsed()) {
      for (const auto& r : run_all(config)) report(out, r);
      return kExitOk;
    }
    if (serve->parsed()) {
      const auto [host, port] = split_address(flags.address);
      RebuttalService service(config);
      if (!service.ready()) err << "warning: " << service.health().body.value("error", "") << '\n';
      HttpFrontend http(service);
      const int bound = http.bind(host, port);
      out << "listening on " << host << ':' << bound << std::endl;
      http.listen();
      return kExitOk;
    }
  } catch (const ConfigInvalid& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const StaleUpstream& e) {
    err << "stale upstream: " << e.what() << '\n';
    return kExitStale;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace amir::cli
