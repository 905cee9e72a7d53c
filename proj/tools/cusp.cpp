// Command-line surface for the evolvable cusp-like shaper: shaping,
// degradation, GA calibration, the three experiment sets, and pulse-height
// histogramming over the shared CSV/JSON formats.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cusp/experiments.hpp"
#include "cusp/fitness.hpp"
#include "cusp/ga.hpp"
#include "cusp/json_io.hpp"
#include "cusp/shaper.hpp"
#include "cusp/signal_gen.hpp"
#include "cusp/stats.hpp"
#include "cusp/version.hpp"
#include "cusp/waveform_io.hpp"

namespace fs = std::filesystem;
using cusp::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoConvergence = 2;

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

/// Reproducibility record emitted alongside every subcommand's outputs.
void write_manifest(const std::string& subcommand, const json& config,
                    const json& inputs, const json& outputs, std::uint64_t seed,
                    const std::string& path) {
  json manifest{{"tool", "cusp"},
                {"version", cusp::kVersion},
                {"subcommand", subcommand},
                {"config", config},
                {"inputs", inputs},
                {"outputs", outputs},
                {"seed", seed}};
  write_json(manifest, path);
}

cusp::ArithmeticPolicy parse_policy(const std::string& mode, int bits) {
  cusp::ArithmeticPolicy pol;
  pol.accumulator_bits = bits;
  if (mode == "trap")
    pol.overflow_mode = cusp::OverflowMode::trap;
  else if (mode == "saturate")
    pol.overflow_mode = cusp::OverflowMode::saturate;
  else if (mode == "wrap")
    pol.overflow_mode = cusp::OverflowMode::wrap;
  else
    throw std::invalid_argument("policy must be trap|saturate|wrap");
  pol.validate();
  return pol;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return json::parse(in);
}

void save_histogram_csv(const cusp::Histogram& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << "bin_lo,bin_hi,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    out << h.bin_edges[b] << ',' << h.bin_edges[b + 1] << ',' << h.counts[b] << '\n';
}

int run_scratch_cmd(const json& cfg_json, const std::string& out_dir) {
  cusp::ScratchConfig cfg = cfg_json.get<cusp::ScratchConfig>();
  cusp::ScratchResult res = cusp::run_scratch(cfg);

  json stats{{"stats", res.stats}};
  json runs = json::array();
  for (const auto& r : res.results) {
    runs.push_back(json{{"seed", r.seed},
                        {"generations", r.generations},
                        {"evaluations", r.evaluations},
                        {"best_fitness", r.best_fitness},
                        {"best_params", r.best_params},
                        {"wall_time", r.wall_time}});
  }
  stats["runs"] = runs;
  write_json(stats, out_dir + "/stats.json");

  std::ofstream traces(out_dir + "/traces.csv");
  traces << "run,generation,best_fitness\n";
  for (std::size_t i = 0; i < res.results.size(); ++i)
    for (std::size_t g = 0; g < res.results[i].fitness_trace.size(); ++g)
      traces << i << ',' << g + 1 << ',' << res.results[i].fitness_trace[g] << '\n';

  write_manifest("experiment scratch", cfg_json, json::object(),
                 json{{"stats", out_dir + "/stats.json"}, {"traces", out_dir + "/traces.csv"}},
                 cfg.ga.seed, out_dir + "/manifest.json");
  std::cout << "scratch: " << res.stats.successes << "/" << res.stats.runs
            << " runs converged, median generations " << res.stats.generations.median
            << "\n";
  return res.stats.successes == res.stats.runs ? kExitOk : kExitNoConvergence;
}

int run_degeneration_cmd(const json& cfg_json, const std::string& out_dir) {
  cusp::DegenerationConfig cfg = cfg_json.get<cusp::DegenerationConfig>();
  std::vector<cusp::RealWaveform> events = cusp::resolve_events(cfg.events);
  cusp::DegenerationResult res =
      cusp::run_degeneration(events, cfg.ref_params, cfg.degradation, cfg.ga,
                             cfg.v_fullscale, cfg.kind, cfg.calibration_index);

  double max_peak = *std::max_element(res.original_peaks.begin(), res.original_peaks.end());
  double hi = 1.2 * max_peak;
  auto original = cusp::make_histogram(res.original_peaks, cfg.bins, 0.0, hi);
  auto damaged = cusp::make_histogram(res.damaged_peaks, cfg.bins, 0.0, hi);
  auto restored = cusp::make_histogram(res.restored_peaks, cfg.bins, 0.0, hi);

  json result{{"regenerated_params", res.regenerated},
              {"fitness", res.fitness},
              {"calibration_rel_error_pct", res.calibration_rel_error},
              {"generations", res.evolution.generations},
              {"evaluations", res.evolution.evaluations},
              {"wall_time", res.evolution.wall_time},
              {"original_mode_bin", original.mode_bin()},
              {"damaged_mode_bin", damaged.mode_bin()},
              {"restored_mode_bin", restored.mode_bin()}};
  write_json(result, out_dir + "/result.json");

  std::ofstream hist(out_dir + "/histograms.csv");
  hist << "bin_lo,bin_hi,original,damaged,restored\n";
  for (std::size_t b = 0; b < cfg.bins; ++b)
    hist << original.bin_edges[b] << ',' << original.bin_edges[b + 1] << ','
         << original.counts[b] << ',' << damaged.counts[b] << ','
         << restored.counts[b] << '\n';

  write_manifest("experiment degeneration", cfg_json, json::object(),
                 json{{"result", out_dir + "/result.json"},
                      {"histograms", out_dir + "/histograms.csv"}},
                 cfg.ga.seed, out_dir + "/manifest.json");
  std::cout << "degeneration: regenerated params " << cusp::format_params(res.regenerated)
            << ", fitness " << res.fitness << ", peak error "
            << res.calibration_rel_error << "%\n";
  return kExitOk;
}

int run_sweep_cmd(const json& cfg_json, const std::string& out_dir) {
  cusp::SweepConfig cfg = cfg_json.get<cusp::SweepConfig>();
  cusp::SweepStats res =
      cusp::run_sweep(cfg.pulse, cfg.ref_params, cfg.grid(), cfg.ga, cfg.v_fullscale, cfg.kind);

  write_json(json(res), out_dir + "/sweep.json");
  std::ofstream csv(out_dir + "/sweep.csv");
  csv << "d_amplitude_pct,d_tau_pct,rel_error_pct,fitness,generations\n";
  for (const auto& p : res.points)
    csv << p.d_amplitude_pct << ',' << p.d_tau_pct << ',' << p.rel_error_pct << ','
        << p.fitness << ',' << p.generations << '\n';

  write_manifest("experiment sweep", cfg_json, json::object(),
                 json{{"stats", out_dir + "/sweep.json"}, {"points", out_dir + "/sweep.csv"}},
                 cfg.ga.seed, out_dir + "/manifest.json");
  std::cout << "sweep: " << res.points.size() << " points, mean error " << res.mean_error
            << "%, std " << res.std_error << "%\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evolvable cusp-like digital pulse shaper emulator"};
  app.set_version_flag("--version", cusp::kVersion);
  app.require_subcommand(1);

  // shape
  std::string in_path, out_path, params_text;
  std::string policy_mode = "trap";
  int acc_bits = 48;
  auto* shape_cmd = app.add_subcommand("shape", "Run the fixed-point shaper on a waveform CSV");
  shape_cmd->add_option("--input", in_path, "Input waveform CSV (integer samples)")->required();
  shape_cmd->add_option("--params", params_text, "Shaper params k,l,m1,m2")->required();
  shape_cmd->add_option("--policy", policy_mode, "Overflow mode: trap|saturate|wrap");
  shape_cmd->add_option("--acc-bits", acc_bits, "Accumulator width in bits");
  shape_cmd->add_option("--out", out_path, "Output waveform CSV")->required();

  // degrade
  double delta = 1.0, serial_sigma = 0.0, parallel_amp = 0.0, threshold = 1.0;
  std::uint64_t seed = 0;
  auto* degrade_cmd = app.add_subcommand("degrade", "Apply the sensor degradation model");
  degrade_cmd->add_option("--input", in_path, "Input waveform CSV (real samples)")->required();
  degrade_cmd->add_option("--delta", delta, "Attenuation factor in (0,1]")->required();
  degrade_cmd->add_option("--serial-sigma", serial_sigma, "White Gaussian noise std");
  degrade_cmd->add_option("--parallel-amp", parallel_amp, "1/f^2 noise RMS");
  degrade_cmd->add_option("--threshold", threshold, "Degradation gate level");
  degrade_cmd->add_option("--seed", seed, "RNG seed (printed for reproducibility)");
  degrade_cmd->add_option("--out", out_path, "Output waveform CSV")->required();

  // calibrate
  std::string ref_path, fitness_name = "f2", ga_config_path;
  bool seed_given = false;
  auto* cal_cmd = app.add_subcommand("calibrate", "Evolve shaper params against a reference output");
  cal_cmd->add_option("--input", in_path, "Input waveform CSV (integer samples)")->required();
  cal_cmd->add_option("--reference-output", ref_path, "Reference shaped output CSV")->required();
  cal_cmd->add_option("--fitness", fitness_name, "Fitness function: f1|f2|f3");
  cal_cmd->add_option("--ga-config", ga_config_path, "GA config JSON");
  cal_cmd->add_option("--seed", seed, "GA seed (overrides config)")
      ->each([&](const std::string&) { seed_given = true; });
  cal_cmd->add_option("--out", out_path, "Evolution result JSON")->required();

  // experiment
  std::string exp_kind, config_path, out_dir;
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment set");
  exp_cmd->add_option("kind", exp_kind, "scratch|degeneration|sweep")->required();
  exp_cmd->add_option("--config", config_path, "Experiment config JSON")->required();
  exp_cmd->add_option("--out-dir", out_dir, "Output directory")->required();

  // histogram
  std::string events_path;
  std::size_t bins = 128;
  double fullscale = 20.0;
  auto* hist_cmd = app.add_subcommand("histogram", "Pulse-height histogram of an event set");
  hist_cmd->add_option("--events", events_path, "Event directory or event_id,n,value CSV")->required();
  hist_cmd->add_option("--params", params_text, "Shaper params k,l,m1,m2")->required();
  hist_cmd->add_option("--bins", bins, "Number of bins");
  hist_cmd->add_option("--fullscale", fullscale, "Input bus fullscale (volts)");
  hist_cmd->add_option("--out", out_path, "Histogram CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (shape_cmd->parsed()) {
      cusp::ShaperParams params = cusp::parse_params(params_text);
      cusp::ArithmeticPolicy pol = parse_policy(policy_mode, acc_bits);
      auto v = cusp::load_waveform<std::int64_t>(in_path);
      auto s = cusp::shape(v, params, pol);
      cusp::save_waveform(s, out_path);
      write_manifest("shape",
                     json{{"params", params}, {"policy", policy_mode}, {"acc_bits", acc_bits}},
                     json{{"input", in_path}}, json{{"output", out_path}}, 0,
                     out_path + ".manifest.json");
      return kExitOk;
    }
    if (degrade_cmd->parsed()) {
      cusp::DegradationSpec spec{delta, serial_sigma, parallel_amp, threshold, seed};
      spec.validate();
      auto v = cusp::load_waveform<double>(in_path);
      auto d = cusp::degrade(v, spec);
      cusp::save_waveform(d, out_path);
      std::cout << "seed: " << seed << "\n";
      write_manifest("degrade", json(spec), json{{"input", in_path}},
                     json{{"output", out_path}}, seed, out_path + ".manifest.json");
      return kExitOk;
    }
    if (cal_cmd->parsed()) {
      auto v = cusp::load_waveform<std::int64_t>(in_path);
      auto s_ref = cusp::load_waveform<std::int64_t>(ref_path);
      if (v.samples.size() != s_ref.samples.size())
        throw std::invalid_argument("length mismatch between input and reference output");
      cusp::FitnessKind kind = cusp::parse_fitness_kind(fitness_name);
      cusp::GaConfig ga;
      if (!ga_config_path.empty()) ga = load_json(ga_config_path).get<cusp::GaConfig>();
      if (seed_given) ga.seed = seed;
      std::cout << "seed: " << ga.seed << "\n";
      cusp::EvolutionResult res = cusp::evolve(ga, [&](const cusp::ShaperParams& p) {
        return cusp::evaluate(p, v, s_ref, kind);
      });
      write_json(json(res), out_path);
      write_manifest("calibrate", json{{"ga", ga}, {"fitness", fitness_name}},
                     json{{"input", in_path}, {"reference_output", ref_path}},
                     json{{"result", out_path}}, ga.seed, out_path + ".manifest.json");
      std::cout << "best " << cusp::format_params(res.best_params) << " fitness "
                << res.best_fitness << " after " << res.generations << " generations\n";
      return res.converged(ga.target_fitness) ? kExitOk : kExitNoConvergence;
    }
    if (exp_cmd->parsed()) {
      json cfg = load_json(config_path);
      fs::create_directories(out_dir);
      if (exp_kind == "scratch") return run_scratch_cmd(cfg, out_dir);
      if (exp_kind == "degeneration") return run_degeneration_cmd(cfg, out_dir);
      if (exp_kind == "sweep") return run_sweep_cmd(cfg, out_dir);
      throw std::invalid_argument("unknown experiment kind '" + exp_kind + "'");
    }
    if (hist_cmd->parsed()) {
      cusp::ShaperParams params = cusp::parse_params(params_text);
      std::vector<cusp::RealWaveform> events = cusp::load_events(events_path);
      cusp::Histogram h = cusp::build_histogram(events, params, bins, fullscale);
      save_histogram_csv(h, out_path);
      write_manifest("histogram",
                     json{{"params", params}, {"bins", bins}, {"fullscale", fullscale}},
                     json{{"events", events_path}}, json{{"output", out_path}}, 0,
                     out_path + ".manifest.json");
      return kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
