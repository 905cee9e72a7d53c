#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <random>

#include "cusp/signal_gen.hpp"
#include "cusp/waveform_io.hpp"

using namespace cusp;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("cusp_io_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("integer waveform round trip") {
  TempDir tmp;
  IntWaveform w;
  w.samples = {0, 1, -8192, 8191, 42};
  save_waveform(w, tmp.file("w.csv"));
  auto r = load_waveform<std::int64_t>(tmp.file("w.csv"));
  CHECK(r.samples == w.samples);
}

TEST_CASE("real waveform round trip preserves doubles exactly") {
  TempDir tmp;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(-100.0, 100.0);
  RealWaveform w;
  for (int i = 0; i < 200; ++i) w.samples.push_back(dist(rng));
  w.samples.push_back(0.1 + 0.2);  // not exactly representable as text without %.17g
  save_waveform(w, tmp.file("w.csv"));
  auto r = load_waveform<double>(tmp.file("w.csv"));
  REQUIRE(r.samples.size() == w.samples.size());
  for (std::size_t i = 0; i < w.samples.size(); ++i)
    CHECK(r.samples[i] == w.samples[i]);
}

TEST_CASE("empty and header-only files are rejected") {
  TempDir tmp;
  { std::ofstream(tmp.file("empty.csv")); }
  CHECK_THROWS_WITH(load_waveform<double>(tmp.file("empty.csv")),
                    Catch::Matchers::ContainsSubstring("no samples"));
  {
    std::ofstream out(tmp.file("header.csv"));
    out << "n,value\n";
  }
  CHECK_THROWS_WITH(load_waveform<double>(tmp.file("header.csv")),
                    Catch::Matchers::ContainsSubstring("no samples"));
}

TEST_CASE("malformed rows report the line number") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("bad.csv"));
    out << "n,value\n0,1\n1,x\n";
  }
  CHECK_THROWS_WITH(load_waveform<double>(tmp.file("bad.csv")),
                    Catch::Matchers::ContainsSubstring("line 3"));
  {
    std::ofstream out(tmp.file("bad2.csv"));
    out << "wrong,header\n";
  }
  CHECK_THROWS_WITH(load_waveform<double>(tmp.file("bad2.csv")),
                    Catch::Matchers::ContainsSubstring("line 1"));
  CHECK_THROWS_AS(load_waveform<double>(tmp.file("missing.csv")), std::runtime_error);
}

TEST_CASE("integer loader rejects reals") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("real.csv"));
    out << "n,value\n0,1.5\n";
  }
  CHECK_THROWS_AS(load_waveform<std::int64_t>(tmp.file("real.csv")), std::runtime_error);
}

TEST_CASE("event set round trip via single CSV") {
  TempDir tmp;
  auto events = gen_event_ensemble(5, PulseSpec{}, 0.03, 17);
  save_events(events, tmp.file("events.csv"));
  auto r = load_events(tmp.file("events.csv"));
  REQUIRE(r.size() == events.size());
  for (std::size_t e = 0; e < events.size(); ++e)
    CHECK(r[e].samples == events[e].samples);
}

TEST_CASE("event set from a directory of per-event CSVs") {
  TempDir tmp;
  auto events = gen_event_ensemble(3, PulseSpec{}, 0.03, 23);
  for (std::size_t e = 0; e < events.size(); ++e)
    save_waveform(events[e], tmp.file("event_" + std::to_string(e) + ".csv"));
  auto r = load_events(tmp.path.string());
  REQUIRE(r.size() == 3);
  for (std::size_t e = 0; e < 3; ++e) CHECK(r[e].samples == events[e].samples);
}

TEST_CASE("event set errors") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("events.csv"));
    out << "event_id,n,value\n";
  }
  CHECK_THROWS_WITH(load_events(tmp.file("events.csv")),
                    Catch::Matchers::ContainsSubstring("no samples"));
  fs::create_directories(tmp.file("empty_dir"));
  CHECK_THROWS_WITH(load_events(tmp.file("empty_dir")),
                    Catch::Matchers::ContainsSubstring("no event files"));
}
