#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bogctilt/config.hpp"
#include "bogctilt/report.hpp"
#include "bogctilt/suites.hpp"
#include "bogctilt/version.hpp"

namespace {

// Exit codes: 0 all checks pass, 1 check failure, 2 config error.
constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

int cmd_run(const std::string& config_path, const std::string& out_path,
            const std::vector<std::string>& extra_suites) {
  bogctilt::SuiteConfig cfg;
  try {
    cfg = bogctilt::config_parse(config_path);
    for (const std::string& s : extra_suites) cfg.suites.push_back(s);
    bogctilt::Report report = bogctilt::run_suites(cfg);

    std::string path = out_path.empty() ? cfg.out_path : out_path;
    if (!path.empty()) bogctilt::report_write(report, path);

    for (const auto& suite : report.suites) {
      for (const auto& rec : suite.records) {
        std::printf("[%s] %s/%s rel_err=%.3e%s%s\n", rec.pass ? "PASS" : "FAIL",
                    suite.suite.c_str(), rec.name.c_str(), rec.rel_err,
                    rec.note.empty() ? "" : " ", rec.note.c_str());
      }
    }
    std::printf("%s\n", report.passed() ? "all checks passed" : "CHECK FAILURES PRESENT");
    return report.passed() ? kExitPass : kExitCheckFailure;
  } catch (const bogctilt::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitCheckFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bogc-tilt: numerical verification suites for tilted Toeplitz minor identities"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run suites from a config file");
  std::string config_path, out_path;
  std::vector<std::string> suites;
  run->add_option("--config", config_path, "path to the JSON config")->required();
  run->add_option("--out", out_path, "report output path (overrides config)");
  run->add_option("--suite", suites, "additional suite selection (repeatable)");

  auto* list = app.add_subcommand("list-suites", "list available suites");
  auto* version = app.add_subcommand("version", "print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitPass : kExitConfigError;
  }

  if (run->parsed()) return cmd_run(config_path, out_path, suites);
  if (list->parsed()) {
    for (const auto& def : bogctilt::list_suites())
      std::printf("%-13s %s\n", def.name.c_str(), def.description.c_str());
    return kExitPass;
  }
  if (version->parsed()) {
    std::printf("bogc-tilt %s\n", bogctilt::kVersion);
    return kExitPass;
  }
  return kExitConfigError;
}
