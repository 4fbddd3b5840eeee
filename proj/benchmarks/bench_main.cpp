#include <benchmark/benchmark.h>

#include <random>

#include "golovin/agent.hpp"
#include "golovin/commands.hpp"
#include "golovin/harness.hpp"
#include "golovin/mapper.hpp"

using namespace golovin;

namespace {

const std::filesystem::path kData = GOLOVIN_BENCH_DATA_DIR;

struct Data {
  Lexicon lex = Lexicon::load_dir(kData);
  CommandDB db = CommandDB::load(kData / "sample.db");
};

const Data& data() {
  static Data d;
  return d;
}

void BM_CandidateGeneration(benchmark::State& state) {
  const auto& d = data();
  Agent agent(d.lex, d.db, AgentConfig{});
  NounFilter filter = agent.noun_filter();
  const std::string desc = "You are in a closet. There is a gun on the floor. Better get it. To exit, go east.";
  ScoringParams params;
  for (auto _ : state) {
    auto ctx = ScoringContext::make(desc, {"sword", "lamp"}, filter);
    auto nouns = ctx.description_nouns;
    nouns.insert(nouns.end(), ctx.inventory_nouns.begin(), ctx.inventory_nouns.end());
    auto syn = expand_synonyms(nouns, params.synonyms, d.lex.embeddings);
    benchmark::DoNotOptimize(generate_candidates(nouns, syn, d.db, ctx, d.lex, params));
  }
}
BENCHMARK(BM_CandidateGeneration);

void BM_Roulette(benchmark::State& state) {
  RouletteSelector sel(1);
  std::vector<double> w(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 + static_cast<double>(i % 7);
  for (auto _ : state) benchmark::DoNotOptimize(sel.pick(w));
}
BENCHMARK(BM_Roulette)->Arg(10)->Arg(100)->Arg(1000);

// A ring of rooms recorded twice over, so minimize has to fold the copies.
MapGraph doubled_ring(int rooms) {
  MapGraph g("Room 0.", {"north", "south"});
  for (int lap = 0; lap < 2; ++lap)
    for (int i = 1; i <= rooms; ++i) g.record_transition("north", "Room " + std::to_string(i % rooms) + ".");
  return g;
}

void BM_Minimize(benchmark::State& state) {
  auto g = doubled_ring(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(minimize(g).size());
}
BENCHMARK(BM_Minimize)->Arg(4)->Arg(8)->Arg(16);

void BM_Episode(benchmark::State& state) {
  const auto& d = data();
  auto w = load_world(kData / "worlds" / "labyrinth.world");
  std::uint64_t seed = 0;
  for (auto _ : state) {
    EpisodeOptions o;
    o.budget = static_cast<int>(state.range(0));
    o.seed = seed++;
    benchmark::DoNotOptimize(run_episode(w, d.lex, d.db, AgentConfig{}, o).raw);
  }
}
BENCHMARK(BM_Episode)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
