#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "commands.hpp"

using namespace filadyn::cli;

namespace {

struct Flags {
  std::string config_path;
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::string scheme;
};

int emit(const Report& report, const RunContext& ctx) {
  const auto path = ctx.config.text("output.path");
  if (!path || *path == "-") {
    write_report(std::cout, report, ctx.format);
    std::cout.flush();
    return std::cout ? kExitOk : kExitDomain;
  }
  std::ofstream out(*path, std::ios::binary | std::ios::trunc);
  if (!out) {
    std::cerr << "filadyn: cannot write '" << *path << "'\n";
    return kExitConfig;
  }
  write_report(out, report, ctx.format);
  out.close();
  return out ? kExitOk : kExitDomain;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of filamentary kinematic dynamos and ABC flows in flux-tube coordinates",
               "filadyn"};
  app.set_version_flag("--version", std::string(fd_version()));
  app.require_subcommand(1);
  app.fallthrough();

  Flags flags;
  app.add_option("--config", flags.config_path, "key = value configuration file");
  app.add_option("--out", flags.out_path, "output file (default: stdout)");
  app.add_option("--format", flags.format, "output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", flags.seed, "seed for randomized suites and points");
  app.add_option("--threads", flags.threads, "worker threads (0: all cores)");
  app.add_option("--scheme", flags.scheme, "coefficient scheme")
      ->check(CLI::IsMember({"eq13_14", "eq18", "eq24", "exact"}));

  auto* spectrum = app.add_subcommand("spectrum", "growth rates at one parameter point");
  auto* sweep = app.add_subcommand("sweep", "growth rates over a parameter grid");
  auto* verify = app.add_subcommand("verify", "spectral, temporal and geometric oracle suites");
  auto* frenet = app.add_subcommand("frenet-check", "Frenet frame against finite differences");
  auto* abc = app.add_subcommand("abc", "ABC flow evaluation in tube coordinates");
  abc->require_subcommand(1);
  abc->fallthrough();
  std::string abc_sub;
  for (const char* name : {"eval", "tube", "stagnation", "growth"}) {
    abc->add_subcommand(name)->fallthrough()->callback([&abc_sub, name] { abc_sub = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    Config config = flags.config_path.empty() ? Config{} : Config::load(flags.config_path);
    if (!flags.out_path.empty()) config.set("output.path", flags.out_path);
    if (!flags.format.empty()) config.set("output.format", flags.format);
    if (flags.seed) config.set("run.seed", std::to_string(*flags.seed));
    if (flags.threads) config.set("run.threads", std::to_string(*flags.threads));
    if (!flags.scheme.empty()) config.set("operator.scheme", flags.scheme);
    const RunContext ctx = make_context(std::move(config));

    bool passed = true;
    Report report;
    if (*spectrum) {
      report = cmd_spectrum(ctx);
    } else if (*sweep) {
      report = cmd_sweep(ctx);
    } else if (*verify) {
      report = cmd_verify(ctx, passed);
    } else if (*frenet) {
      report = cmd_frenet_check(ctx, passed);
    } else {
      report = cmd_abc(ctx, abc_sub);
    }
    const int written = emit(report, ctx);
    if (written != kExitOk) return written;
    if (!passed) {
      std::cerr << "filadyn: one or more checks failed\n";
      return kExitVerifyFailed;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "filadyn: " << e.what() << '\n';
    return exit_code_for(e);
  }
}
