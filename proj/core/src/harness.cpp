#include "golovin/harness.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "golovin/errors.hpp"
#include "golovin/simulator.hpp"
#include "golovin/text.hpp"

namespace golovin {

double modified_score(double raw, double max) {
  if (!(max > 0)) throw UsageError("maximum score must be positive");
  double r = raw / max;
  return raw > 0 ? r + 0.2 : r;
}

std::uint64_t environment_seed(const WorldSpec& world, std::uint64_t run_seed) {
  return world.seed ^ (run_seed * 0x9E3779B97F4A7C15ULL);
}

EnvFactory simulator_factory(WorldSpec world) {
  auto shared = std::make_shared<const WorldSpec>(std::move(world));
  return [shared](std::uint64_t seed) -> std::unique_ptr<Environment> {
    return std::make_unique<Simulator>(*shared, environment_seed(*shared, seed));
  };
}

EpisodeReport run_episode(const std::string& game, int max_score, const EnvFactory& factory, const Lexicon& lex,
                          const CommandDB& db, AgentConfig config, const EpisodeOptions& options) {
  if (options.budget <= 0) throw UsageError("step budget must be positive");
  EpisodeReport report;
  report.game = game;
  report.max = max_score;
  report.transcript_path = options.transcript_path;
  config.seed = options.seed;

  std::ostringstream transcript;
  std::unique_ptr<Environment> env;
  try {
    env = factory(options.seed);
    Agent agent(lex, db, config);
    PlayResult r = agent.play(*env, options.budget, &transcript);
    report.raw = r.final_score;
    report.steps = r.steps;
    report.lives = r.lives;
    report.won = r.won;
  } catch (const EnvironmentError& e) {
    report.failed = true;
    report.error = e.what();
    if (env) {
      report.raw = env->last().score;
      report.steps = env->session().steps;
      report.lives = env->session().episode;
    }
  }
  transcript << "final\t" << report.raw << "\n";
  report.transcript = transcript.str();
  report.modified = max_score > 0 ? modified_score(report.raw, max_score) : 0.0;
  if (options.live) *options.live << report.transcript;
  if (!options.transcript_path.empty()) {
    std::ofstream out(options.transcript_path);
    if (!out) throw UsageError("cannot write transcript " + options.transcript_path.string());
    out << report.transcript;
  }
  return report;
}

EpisodeReport run_episode(const WorldSpec& world, const Lexicon& lex, const CommandDB& db, AgentConfig config,
                          const EpisodeOptions& options) {
  return run_episode(world.name, world.max_score, simulator_factory(world), lex, db, std::move(config), options);
}

AgentConfig Ablation::apply(AgentConfig c) const {
  c.use_map = use_map;
  c.use_battle = use_battle;
  return c;
}

std::vector<Ablation> ablations_for(const std::vector<std::string>& features) {
  bool map = false, battle = false;
  for (const auto& f : features) {
    auto w = text::to_lower(text::trim(f));
    if (w == "map") map = true;
    else if (w == "battle") battle = true;
    else if (!w.empty()) throw UsageError("unknown ablation feature '" + f + "'");
  }
  std::vector<Ablation> out{Ablation{"full", true, true}};
  if (map) out.push_back({"no-map", false, true});
  if (battle) out.push_back({"no-battle", true, false});
  if (map && battle) out.push_back({"no-map-no-battle", false, false});
  return out;
}

std::string SuiteReport::table() const {
  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  out << "game\tablation\truns\tmean_raw\tmean_modified\n";
  for (const auto& c : cells)
    out << c.game << "\t" << c.ablation << "\t" << c.runs << "\t" << c.mean_raw << "\t" << c.mean_modified << "\n";
  return out.str();
}

std::vector<std::pair<std::string, double>> SuiteReport::normalized() const {
  std::vector<std::string> order;
  std::map<std::string, std::pair<double, int>> sums;
  for (const auto& c : cells) {
    auto [it, fresh] = sums.try_emplace(c.ablation, 0.0, 0);
    if (fresh) order.push_back(c.ablation);
    it->second.first += c.mean_modified;
    ++it->second.second;
  }
  double best = 0;
  for (const auto& [name, s] : sums) best = std::max(best, s.first / s.second);
  std::vector<std::pair<std::string, double>> out;
  for (const auto& name : order) {
    const auto& s = sums[name];
    out.emplace_back(name, best > 0 ? 100.0 * (s.first / s.second) / best : 0.0);
  }
  return out;
}

std::string SuiteReport::normalized_table() const {
  std::ostringstream out;
  out.precision(2);
  out << std::fixed << "ablation\tpercent_of_best\n";
  for (const auto& [name, pct] : normalized()) out << name << "\t" << pct << "\n";
  return out.str();
}

SuiteReport evaluate_suite(const std::vector<std::filesystem::path>& games, const Lexicon& lex, const CommandDB& db,
                           const AgentConfig& config, const SuiteOptions& options) {
  if (options.runs <= 0) throw UsageError("runs must be positive");
  if (options.ablations.empty()) throw UsageError("no ablations to evaluate");
  std::vector<WorldSpec> worlds;
  worlds.reserve(games.size());
  for (const auto& g : games) worlds.push_back(load_world(g));

  struct Job {
    std::size_t cell;
    std::size_t world;
    AgentConfig config;
    std::uint64_t seed;
  };
  SuiteReport report;
  report.source = options.source;
  std::vector<Job> jobs;
  std::vector<EnvFactory> factories;
  for (const auto& w : worlds) factories.push_back(simulator_factory(w));
  for (std::size_t wi = 0; wi < worlds.size(); ++wi) {
    for (const auto& ab : options.ablations) {
      report.cells.push_back({worlds[wi].name, ab.name, options.runs, 0, 0, {}});
      report.cells.back().reports.resize(static_cast<std::size_t>(options.runs));
      for (int r = 0; r < options.runs; ++r)
        jobs.push_back({report.cells.size() - 1, wi, ab.apply(config), options.seed + static_cast<std::uint64_t>(r)});
    }
  }

  std::vector<EpisodeReport> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
      const Job& j = jobs[i];
      EpisodeOptions eo;
      eo.budget = options.budget;
      eo.seed = j.seed;
      results[i] = run_episode(worlds[j.world].name, worlds[j.world].max_score, factories[j.world], lex, db, j.config, eo);
    }
  };
  unsigned n = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(jobs.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  std::vector<std::size_t> filled(report.cells.size(), 0);
  for (std::size_t i = 0; i < jobs.size(); ++i) report.cells[jobs[i].cell].reports[filled[jobs[i].cell]++] = results[i];
  for (auto& c : report.cells) {
    double raw = 0, mod = 0;
    for (const auto& r : c.reports) {
      raw += r.raw;
      mod += r.modified;
    }
    c.mean_raw = raw / c.runs;
    c.mean_modified = mod / c.runs;
  }
  return report;
}

std::vector<std::filesystem::path> list_games(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(path)) return {path};
  if (!fs::is_directory(path)) throw UsageError("no such game file or directory: " + path.string());
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(path))
    if (e.is_regular_file() && e.path().extension() == ".world") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  if (out.empty()) throw UsageError("no .world files in " + path.string());
  return out;
}

std::string format_reports(const std::vector<EpisodeReport>& reports) {
  std::ostringstream out;
  for (const auto& r : reports)
    out << r.game << "\t" << r.raw << "\t" << r.max << "\t" << r.steps << "\t" << r.lives << "\t"
        << (r.failed ? 1 : 0) << "\n";
  return out.str();
}

std::vector<EpisodeReport> parse_reports(const std::string& contents, const std::string& source) {
  std::vector<EpisodeReport> out;
  std::istringstream in(contents);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    auto t = text::trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto f = text::split(line, '\t');
    if (f.size() != 6) throw FormatError(source, n, "expected 6 tab-separated fields");
    EpisodeReport r;
    r.game = f[0];
    try {
      std::size_t used = 0;
      auto num = [&](const std::string& s) {
        int v = std::stoi(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
      };
      r.raw = num(f[1]);
      r.max = num(f[2]);
      r.steps = num(f[3]);
      r.lives = num(f[4]);
      r.failed = num(f[5]) != 0;
    } catch (const std::logic_error&) {
      throw FormatError(source, n, "non-integer field");
    }
    if (r.max <= 0) throw FormatError(source, n, "maximum score must be positive");
    r.modified = modified_score(r.raw, r.max);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace golovin
