#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fplap/cli/config.hpp"
#include "fplap/cli/dispatch.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw fplap::invalid_argument_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_diagnostic(const std::string& out_dir, const std::string& command,
                      const std::string& what) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) return;
  std::ofstream os(std::filesystem::path(out_dir) / "diagnostic.json");
  fplap::json j;
  j["command"] = command;
  j["error"] = what;
  os << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fractional p-Laplacian toolbox: operator evaluation, steady states, "
               "eigenpairs, sliding comparisons and verification suites"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  int threads = -1;
  long long seed = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "config file (sectioned key = value)")->required();
    sub->add_option("--out", out_dir, "output directory (overrides [run] out)");
    sub->add_option("--threads", threads, "worker threads, 0 = auto (overrides [run] threads)");
    sub->add_option("--seed", seed, "RNG seed (overrides [run] seed)");
  };

  CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate the operator on a field");
  CLI::App* cmd_solve = app.add_subcommand("solve", "relax to a steady state");
  CLI::App* cmd_eigen = app.add_subcommand("eigen", "principal eigenpair on a ball");
  CLI::App* cmd_slide = app.add_subcommand("slide", "compare a field with its translate");
  CLI::App* cmd_verify = app.add_subcommand("verify", "run verification suites");
  for (CLI::App* sub : {cmd_eval, cmd_solve, cmd_eigen, cmd_slide, cmd_verify}) add_common(sub);

  CLI11_PARSE(app, argc, argv);

  std::string command = app.get_subcommands().front()->get_name();
  try {
    fplap::RunConfig cfg = fplap::parse_config(read_file(config_path));
    if (command == "eval") cfg.command = fplap::RunConfig::Command::eval;
    else if (command == "solve") cfg.command = fplap::RunConfig::Command::solve;
    else if (command == "eigen") cfg.command = fplap::RunConfig::Command::eigen;
    else if (command == "slide") cfg.command = fplap::RunConfig::Command::slide;
    else cfg.command = fplap::RunConfig::Command::verify;

    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (threads >= 0) cfg.threads = threads;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);

    int code = fplap::dispatch(cfg);
    if (code != 0) std::cerr << command << ": some assertions failed (see report.json)\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << command << ": error: " << e.what() << "\n";
    write_diagnostic(out_dir.empty() ? "out" : out_dir, command, e.what());
    return 2;
  }
}
