// Thin argument shim: every option is forwarded as a string into the flat
// parameter map, so defaults, validation, and the sidecar all live in one
// place (cli::run). Only options the user actually passed are forwarded.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <biharmonic/cli.hpp>
#include <biharmonic/version.hpp>

namespace {

struct Forwarded {
  CLI::App* sub;
  std::string key;
  std::shared_ptr<std::string> value;
};

}  // namespace

int main(int argc, char** argv) {
  using biharmonic::cli::Command;

  CLI::App app{"biharmonic drive toolkit: waveform shaping, junction transport, photon-assisted noise"};
  app.set_version_flag("--version", std::string("biharmonic ") + biharmonic::version);
  app.require_subcommand(0, 1);

  std::string config_path;
  app.add_option("--config", config_path, "re-run a job from its JSON sidecar");

  std::vector<Forwarded> forwarded;
  auto add = [&forwarded](CLI::App* sub, const std::string& key, const std::string& desc) {
    auto holder = std::make_shared<std::string>();
    sub->add_option("--" + key, *holder, desc);
    forwarded.push_back({sub, key, holder});
  };

  std::map<CLI::App*, Command> command_of;

  CLI::App* wave = app.add_subcommand("waveform", "sweep extrema, load term, and impulse over the tone split");
  command_of[wave] = Command::Waveform;
  add(wave, "family", "cos-cos or sin-sin");
  add(wave, "alpha", "second-tone amplitude ratio");
  add(wave, "theta", "relative phase in (-pi, pi]");
  add(wave, "amplitude", "drive amplitude");
  add(wave, "omega", "fundamental angular frequency");
  add(wave, "zeta-grid", "tone split grid start:stop:count");

  CLI::App* eff = app.add_subcommand("efficiency-map", "rectification efficiency over (zeta, alpha)");
  command_of[eff] = Command::EfficiencyMap;
  add(eff, "family", "cos-cos or sin-sin");
  add(eff, "theta", "relative phase in (-pi, pi]");
  add(eff, "alpha-grid", "alpha grid start:stop:count");
  add(eff, "zeta-grid", "tone split grid start:stop:count");
  add(eff, "mode", "closed-form or ode");
  add(eff, "amplitude", "drive amplitude (ode mode)");
  add(eff, "omega", "drive angular frequency (ode mode)");
  add(eff, "dt", "integrator step, 0 picks the frequency-based bound");
  add(eff, "transient", "periods discarded before averaging");
  add(eff, "average", "periods averaged");
  add(eff, "v-threshold", "mean-voltage magnitude that counts as running");
  add(eff, "i-tolerance", "bisection width for depinning currents");

  CLI::App* iv = app.add_subcommand("iv-map", "mean junction voltage over (tone split, dc bias)");
  command_of[iv] = Command::IvMap;
  add(iv, "family", "cos-cos or sin-sin");
  add(iv, "theta", "relative phase in (-pi, pi]");
  add(iv, "alpha", "second-tone amplitude ratio");
  add(iv, "i0", "drive amplitude, lab units");
  add(iv, "ic", "junction critical current, lab units");
  add(iv, "omega", "drive angular frequency");
  add(iv, "lambda-grid", "log10 tone-ratio grid start:stop:count");
  add(iv, "i-grid", "dc bias grid start:stop:count, lab units");
  add(iv, "dt", "integrator step, 0 picks the frequency-based bound");
  add(iv, "transient", "periods discarded before averaging");
  add(iv, "average", "periods averaged");

  CLI::App* chan = app.add_subcommand("channel", "closed-form locking window over the tone ratio");
  command_of[chan] = Command::Channel;
  add(chan, "family", "cos-cos or sin-sin");
  add(chan, "theta", "relative phase in (-pi, pi]");
  add(chan, "alpha", "second-tone amplitude ratio");
  add(chan, "i0", "drive amplitude, lab units");
  add(chan, "ic", "junction critical current, lab units");
  add(chan, "lambda-grid", "log10 tone-ratio grid start:stop:count");

  CLI::App* noise = app.add_subcommand("noise-sweep", "shot noise versus tone split at fixed total drive");
  command_of[noise] = Command::NoiseSweep;
  add(noise, "total", "total drive z1 + 2 z2");
  add(noise, "q", "reduced dc bias");
  add(noise, "phi", "second-tone phase");
  add(noise, "conductance", "junction conductance G");
  add(noise, "fano", "Fano factor F");
  add(noise, "zeta-grid", "tone split grid start:stop:count");

  for (CLI::App* sub : {wave, eff, iv, chan, noise}) {
    add(sub, "output", "output file path (sidecar lands next to it)");
    add(sub, "format", "csv or json");
  }

  CLI11_PARSE(app, argc, argv);

  CLI::App* chosen = nullptr;
  for (const auto& [sub, cmd] : command_of) {
    if (app.got_subcommand(sub)) chosen = sub;
  }

  if (!config_path.empty()) {
    if (chosen != nullptr) {
      std::cerr << "invalid parameter: config: pass either --config or a subcommand, not both\n";
      return 2;
    }
    try {
      return biharmonic::cli::run(biharmonic::cli::load_config(config_path));
    } catch (const std::invalid_argument& e) {
      std::cerr << "invalid parameter: " << e.what() << "\n";
      return 2;
    }
  }
  if (chosen == nullptr) {
    std::cerr << app.help();
    return 2;
  }

  biharmonic::cli::RunConfig config;
  config.command = command_of[chosen];
  for (const auto& fwd : forwarded) {
    if (fwd.sub != chosen || fwd.sub->count("--" + fwd.key) == 0) continue;
    if (fwd.key == "format") {
      if (*fwd.value == "csv") config.output_format = biharmonic::cli::OutputFormat::Csv;
      else if (*fwd.value == "json") config.output_format = biharmonic::cli::OutputFormat::Json;
      else {
        std::cerr << "invalid parameter: format: must be csv or json, not '" << *fwd.value << "'\n";
        return 2;
      }
      continue;
    }
    config.parameters[fwd.key] = *fwd.value;
  }
  return biharmonic::cli::run(config);
}
