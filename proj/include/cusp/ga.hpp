#ifndef CUSP_GA_HPP
#define CUSP_GA_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cusp/shaper.hpp"

namespace cusp {

/// 40-bit binary encoding of ShaperParams. Field layout, most significant
/// field first: k (6 bits) | l (6 bits) | m1 (14 bits, two's complement)
/// | m2 (14 bits, two's complement), each field MSB-first. Bit index 0 is
/// the MSB of the k field.
class Chromosome {
 public:
  static constexpr int kBits = 40;

  Chromosome() = default;
  explicit Chromosome(std::uint64_t raw) : bits_(raw & kMask) {}

  /// Bit at spec position i (0 = MSB of k, 39 = LSB of m2).
  bool get(int i) const { return (bits_ >> (kBits - 1 - i)) & 1u; }
  void set(int i, bool v) {
    std::uint64_t m = std::uint64_t(1) << (kBits - 1 - i);
    bits_ = v ? (bits_ | m) : (bits_ & ~m);
  }
  void flip(int i) { bits_ ^= std::uint64_t(1) << (kBits - 1 - i); }

  std::uint64_t raw() const { return bits_; }

  std::string to_string() const {
    std::string s(kBits, '0');
    for (int i = 0; i < kBits; ++i)
      if (get(i)) s[static_cast<std::size_t>(i)] = '1';
    return s;
  }

  // Lexicographic bit-string order coincides with numeric order of raw().
  auto operator<=>(const Chromosome&) const = default;

 private:
  static constexpr std::uint64_t kMask = (std::uint64_t(1) << kBits) - 1;
  std::uint64_t bits_ = 0;
};

inline Chromosome encode(const ShaperParams& p) {
  p.validate();
  std::uint64_t raw = (std::uint64_t(p.k) << 34) | (std::uint64_t(p.l) << 28) |
                      ((std::uint64_t(p.m1) & 0x3fffu) << 14) |
                      (std::uint64_t(p.m2) & 0x3fffu);
  return Chromosome(raw);
}

inline ShaperParams decode(const Chromosome& c) {
  std::uint64_t raw = c.raw();
  auto sign14 = [](std::uint64_t field) {
    return static_cast<int>(field) - ((field & 0x2000u) ? 0x4000 : 0);
  };
  ShaperParams p;
  p.k = static_cast<int>((raw >> 34) & 0x3fu);
  p.l = static_cast<int>((raw >> 28) & 0x3fu);
  p.m1 = sign14((raw >> 14) & 0x3fffu);
  p.m2 = sign14(raw & 0x3fffu);
  return p;
}

inline Chromosome random_chromosome(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint64_t> dist(0, (std::uint64_t(1) << Chromosome::kBits) - 1);
  return Chromosome(dist(rng));
}

struct GaConfig {
  std::size_t population_size = 125;
  std::size_t elite_count = 4;
  double mutation_prob = 0.1;       // per offspring, single-bit flip
  std::size_t max_generations = 20000;
  double target_fitness = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (population_size == 0) throw std::invalid_argument("population_size must be >= 1");
    if (elite_count >= population_size)
      throw std::invalid_argument("elite_count must be < population_size");
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
      throw std::invalid_argument("mutation_prob must be in [0,1]");
    if (max_generations == 0) throw std::invalid_argument("max_generations must be >= 1");
  }
};

struct EvolutionResult {
  ShaperParams best_params;
  double best_fitness = 0.0;
  std::size_t generations = 0;
  std::size_t evaluations = 0;
  double wall_time = 0.0;  // seconds
  std::vector<double> fitness_trace;  // best per generation, non-increasing
  std::uint64_t seed = 0;

  bool converged(double target) const { return best_fitness <= target; }
};

/// Winner of a binary tournament between indices i and j (drawn in that
/// order): the lower fitness wins, ties go to the first drawn.
inline std::size_t tournament_pick(const std::vector<double>& fitnesses,
                                   std::size_t i, std::size_t j) {
  return fitnesses[j] < fitnesses[i] ? j : i;
}

inline std::size_t tournament_select(const std::vector<double>& fitnesses,
                                     std::mt19937_64& rng) {
  if (fitnesses.empty()) throw std::invalid_argument("empty population");
  std::uniform_int_distribution<std::size_t> dist(0, fitnesses.size() - 1);
  std::size_t i = dist(rng);
  std::size_t j = dist(rng);
  return tournament_pick(fitnesses, i, j);
}

/// 1-point crossover: the cut point is uniform over {1,...,39}, children
/// swap suffixes.
inline std::pair<Chromosome, Chromosome> one_point_crossover(const Chromosome& a,
                                                             const Chromosome& b,
                                                             std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(1, Chromosome::kBits - 1);
  int cut = dist(rng);
  std::uint64_t suffix_mask = (std::uint64_t(1) << (Chromosome::kBits - cut)) - 1;
  Chromosome c1((a.raw() & ~suffix_mask) | (b.raw() & suffix_mask));
  Chromosome c2((b.raw() & ~suffix_mask) | (a.raw() & suffix_mask));
  return {c1, c2};
}

/// With probability mutation_prob, flips exactly one uniformly chosen bit.
inline Chromosome mutate(Chromosome c, double mutation_prob, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (coin(rng) < mutation_prob) {
    std::uniform_int_distribution<int> bit(0, Chromosome::kBits - 1);
    c.flip(bit(rng));
  }
  return c;
}

/// Generational GA with elitism, binary tournament selection, 1-point
/// crossover and single-bit mutation. Fully reproducible per seed; the
/// best-fitness trace is non-increasing by construction.
inline EvolutionResult evolve(const GaConfig& config,
                              const std::function<double(const ShaperParams&)>& eval_fn) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(config.seed);

  std::vector<Chromosome> pop;
  pop.reserve(config.population_size);
  for (std::size_t i = 0; i < config.population_size; ++i)
    pop.push_back(random_chromosome(rng));

  EvolutionResult result;
  result.seed = config.seed;

  std::vector<double> fit(config.population_size);
  std::vector<std::size_t> order(config.population_size);
  for (std::size_t gen = 1; gen <= config.max_generations; ++gen) {
    for (std::size_t i = 0; i < pop.size(); ++i) fit[i] = eval_fn(decode(pop[i]));
    result.evaluations += pop.size();

    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (fit[a] != fit[b]) return fit[a] < fit[b];
      return pop[a] < pop[b];
    });

    result.generations = gen;
    result.best_params = decode(pop[order[0]]);
    result.best_fitness = fit[order[0]];
    result.fitness_trace.push_back(result.best_fitness);
    if (result.best_fitness <= config.target_fitness) break;
    if (gen == config.max_generations) break;

    std::vector<Chromosome> next;
    next.reserve(config.population_size);
    for (std::size_t e = 0; e < config.elite_count; ++e) next.push_back(pop[order[e]]);
    while (next.size() < config.population_size) {
      const Chromosome& a = pop[tournament_select(fit, rng)];
      const Chromosome& b = pop[tournament_select(fit, rng)];
      auto [c1, c2] = one_point_crossover(a, b, rng);
      next.push_back(mutate(c1, config.mutation_prob, rng));
      if (next.size() < config.population_size)
        next.push_back(mutate(c2, config.mutation_prob, rng));
    }
    pop = std::move(next);
  }

  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace cusp

#endif  // CUSP_GA_HPP
