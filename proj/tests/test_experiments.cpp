#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "cusp/experiments.hpp"
#include "cusp/json_io.hpp"

using namespace cusp;

TEST_CASE("relative_error") {
  IntWaveform ref;
  ref.samples = {0, 100, 0};
  IntWaveform up;
  up.samples = {0, 108, 0};
  IntWaveform down;
  down.samples = {0, 92, 0};
  CHECK(relative_error(ref, ref) == 0.0);
  CHECK(relative_error(up, ref) == Catch::Approx(8.0));
  CHECK(relative_error(down, ref) == Catch::Approx(-8.0));
  IntWaveform zero;
  zero.samples = {0, 0};
  CHECK_THROWS_AS(relative_error(ref, zero), std::invalid_argument);
}

TEST_CASE("run_scratch aggregates reproducible runs") {
  ScratchConfig cfg;
  cfg.runs = 3;
  cfg.ga.seed = 91;
  cfg.ga.mutation_prob = 1.0;
  cfg.ga.max_generations = 300;
  auto res = run_scratch(cfg);
  REQUIRE(res.results.size() == 3);
  CHECK(res.stats.runs == 3);
  // successes counts exactly the runs that reached the target
  std::size_t converged = 0;
  for (const auto& r : res.results)
    if (r.best_fitness <= cfg.ga.target_fitness) ++converged;
  CHECK(res.stats.successes == converged);
  CHECK(res.stats.generations.min <= res.stats.generations.median);
  CHECK(res.stats.generations.median <= res.stats.generations.max);
  for (const auto& r : res.results) CHECK(r.best_fitness >= 0.0);

  // distinct derived seeds per run
  CHECK(res.results[0].seed != res.results[1].seed);

  // single run equals its own stats
  ScratchConfig one = cfg;
  one.runs = 1;
  auto r1 = run_scratch(one);
  CHECK(r1.stats.generations.min == r1.stats.generations.max);
  CHECK(r1.stats.generations.mean ==
        static_cast<double>(r1.results[0].generations));

  // reproducibility of the whole experiment
  auto res2 = run_scratch(cfg);
  for (std::size_t i = 0; i < res.results.size(); ++i)
    CHECK(res.results[i].fitness_trace == res2.results[i].fitness_trace);
}

TEST_CASE("run_degeneration applies the regenerated shaper consistently") {
  auto events = gen_event_ensemble(3, PulseSpec{}, 0.03, 41);
  DegradationSpec deg{0.8, 0.0, 0.0, 1.0, 7};
  ShaperParams ref{63, 31, 19, 2};
  GaConfig ga;
  ga.seed = 4242;
  ga.mutation_prob = 1.0;
  ga.max_generations = 200;
  auto res = run_degeneration(events, ref, deg, ga);
  REQUIRE(res.restored_peaks.size() == 3);
  REQUIRE(res.restored_outputs.size() == 3);
  CHECK(res.regenerated == res.evolution.best_params);
  CHECK(res.fitness == res.evolution.best_fitness);

  // stored outputs carry the reported restored peaks
  for (std::size_t e = 0; e < 3; ++e)
    CHECK(static_cast<double>(peak(res.restored_outputs[e]).second) ==
          res.restored_peaks[e]);

  // original peaks come from the reference shaper on the undamaged events
  for (std::size_t e = 0; e < 3; ++e)
    CHECK(res.original_peaks[e] ==
          static_cast<double>(peak(shape(quantize(events[e], 20.0), ref)).second));

  // the calibration error is the restored calibration event against the
  // reference output of the original calibration event
  DegradationSpec cal = deg;
  cal.seed = derive_seed(deg.seed, 0);
  auto v_deg_cal = quantize(degrade(events[0], cal), 20.0);
  auto s_ref = shape(quantize(events[0], 20.0), ref);
  CHECK(res.calibration_rel_error ==
        relative_error(shape(v_deg_cal, res.regenerated), s_ref));
}

TEST_CASE("run_degeneration with delta=1 and zero noise leaves events untouched") {
  auto events = gen_event_ensemble(3, PulseSpec{}, 0.03, 41);
  DegradationSpec deg{1.0, 0.0, 0.0, 1.0, 7};
  GaConfig ga;
  ga.seed = 4242;
  ga.mutation_prob = 1.0;
  ga.max_generations = 50;
  auto res = run_degeneration(events, ShaperParams{63, 31, 19, 2}, deg, ga);
  REQUIRE(res.damaged_peaks.size() == 3);
  for (std::size_t e = 0; e < 3; ++e)
    CHECK(res.damaged_peaks[e] == res.original_peaks[e]);
}

TEST_CASE("run_degeneration input validation") {
  GaConfig ga;
  CHECK_THROWS_AS(
      (run_degeneration({}, ShaperParams{63, 31, 19, 2}, DegradationSpec{}, ga)),
      std::invalid_argument);
  auto events = gen_event_ensemble(2, PulseSpec{}, 0.03, 1);
  CHECK_THROWS_AS((run_degeneration(events, ShaperParams{63, 31, 19, 2},
                                    DegradationSpec{}, ga, 20.0, FitnessKind::F2, 5)),
                  std::invalid_argument);
}

TEST_CASE("run_sweep aggregates per-point results reproducibly") {
  GaConfig ga;
  ga.seed = 77;
  ga.mutation_prob = 1.0;
  ga.max_generations = 150;
  std::vector<std::pair<double, double>> grid{{0.0, 0.0}, {-10.0, 0.0}, {0.0, 10.0}};
  auto res = run_sweep(PulseSpec{}, ShaperParams{63, 31, 19, 2}, grid, ga);
  REQUIRE(res.points.size() == 3);
  double mean = 0.0;
  for (const auto& p : res.points) {
    CHECK(p.fitness >= 0.0);
    CHECK(p.fitness_trace.size() == p.generations);
    for (std::size_t i = 1; i < p.fitness_trace.size(); ++i)
      CHECK(p.fitness_trace[i] <= p.fitness_trace[i - 1]);
    mean += p.rel_error_pct;
  }
  CHECK(res.mean_error == Catch::Approx(mean / 3.0));

  auto res2 = run_sweep(PulseSpec{}, ShaperParams{63, 31, 19, 2}, grid, ga);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(res2.points[i].fitness == res.points[i].fitness);
    CHECK(res2.points[i].rel_error_pct == res.points[i].rel_error_pct);
  }
}

TEST_CASE("histogram of identical events lands in one bin") {
  std::vector<RealWaveform> events(10, gen_exponential(PulseSpec{}));
  auto h = build_histogram(events, ShaperParams{63, 31, 19, 2}, 32);
  CHECK(h.total() == 10);
  CHECK(*std::max_element(h.counts.begin(), h.counts.end()) == 10);

  auto single = build_histogram(events, ShaperParams{63, 31, 19, 2}, 1);
  CHECK(single.counts[0] == 10);
}

TEST_CASE("histogram is invariant under event permutation") {
  auto events = gen_event_ensemble(40, PulseSpec{}, 0.03, 8);
  auto h1 = build_histogram(events, ShaperParams{63, 31, 19, 2}, 16);
  std::mt19937_64 rng(9);
  std::shuffle(events.begin(), events.end(), rng);
  auto h2 = build_histogram(events, ShaperParams{63, 31, 19, 2}, 16,
                            20.0, std::pair{h1.bin_edges.front(), h1.bin_edges.back()});
  CHECK(h1.counts == h2.counts);
  CHECK(h1.total() == 40);
}

TEST_CASE("config JSON round trips") {
  ScratchConfig sc;
  sc.runs = 7;
  sc.ga.seed = 5;
  json j = sc;
  auto back = j.get<ScratchConfig>();
  CHECK(back.runs == 7);
  CHECK(back.ga.seed == 5);
  CHECK(back.ref_params == sc.ref_params);

  DegenerationConfig dc;
  dc.degradation.delta = 0.8;
  dc.events.synthetic.n_events = 11;
  json jd = dc;
  auto dback = jd.get<DegenerationConfig>();
  CHECK(dback.degradation.delta == 0.8);
  CHECK(dback.events.path.empty());
  CHECK(dback.events.synthetic.n_events == 11);

  SweepConfig sw;
  sw.amplitude_pct = {-10, 0, 10};
  json js = sw;
  auto sback = js.get<SweepConfig>();
  CHECK(sback.amplitude_pct == std::vector<double>{-10, 0, 10});
  CHECK(sback.grid().size() == 15);

  EvolutionResult er;
  er.best_params = ShaperParams{63, 31, 19, 2};
  er.best_fitness = 1.5;
  er.generations = 10;
  er.fitness_trace = {3.0, 2.0, 1.5};
  er.seed = 99;
  json je = er;
  auto eback = je.get<EvolutionResult>();
  CHECK(eback.best_params == er.best_params);
  CHECK(eback.fitness_trace == er.fitness_trace);
  CHECK(je.at("best_params").get<std::string>() == "63,31,19,2");
}
