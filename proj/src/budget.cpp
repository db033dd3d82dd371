#include "photontrain/budget.hpp"

#include <cmath>
#include <future>
#include <random>
#include <stdexcept>

namespace photontrain::budget {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

// splitmix64 step, used to derive independent per-shard seeds.
std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

double EfficiencyModel::per_photon_emission() const {
  return emission_includes_intracavity ? p_cavity_emission
                                       : p_intracavity * p_cavity_emission;
}

void EfficiencyModel::validate() const {
  check_probability(p_intracavity, "p_intracavity");
  check_probability(p_cavity_emission, "p_cavity_emission");
  check_probability(p_detection, "p_detection");
  check_probability(p_double_excitation, "p_double_excitation");
  check_probability(f2_fidelity, "f2_fidelity");
}

EfficiencyModel EfficiencyModel::with_per_photon(double p) {
  EfficiencyModel m;
  m.p_cavity_emission = p;
  m.emission_includes_intracavity = true;
  m.validate();
  return m;
}

ThresholdTable ThresholdTable::paper_anchors() {
  return ThresholdTable{{
      {3, protocol::StateKind::GHZ, 0.75},
      {10, protocol::StateKind::GHZ, 0.53},
      {10, protocol::StateKind::LinearCluster, 0.35},
  }};
}

std::optional<double> ThresholdTable::threshold(
    int n, protocol::StateKind kind) const {
  for (const Entry& e : entries)
    if (e.n == n && e.kind == kind) return e.threshold;
  return std::nullopt;
}

double train_success(const EfficiencyModel& model, int n,
                     bool include_disconnection, bool include_detection) {
  if (n < 1) throw std::invalid_argument("photon count must be >= 1");
  model.validate();
  const int m = n + (include_disconnection ? 1 : 0);
  double p = std::pow(model.per_photon_emission(), m);
  if (include_detection) p *= std::pow(model.p_detection, m);
  return p;
}

std::optional<double> min_per_photon_fidelity(int n, protocol::StateKind kind,
                                              const ThresholdTable& table) {
  const std::optional<double> t = table.threshold(n, kind);
  if (!t) return std::nullopt;
  return std::pow(*t, 1.0 / n);
}

bool loss_tolerance_check(const EfficiencyModel& model) {
  return model.per_photon_emission() > 0.5;
}

SpdcReport spdc_comparison(int n, const EfficiencyModel& model,
                           double p_pair, double fusion_success) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("SPDC fusion model requires even n >= 2");
  check_probability(p_pair, "p_pair");
  check_probability(fusion_success, "fusion_success");
  model.validate();

  SpdcReport rep;
  rep.p_photon = model.per_photon_emission();
  rep.p_pair = p_pair;
  rep.fusion_success = fusion_success;
  rep.assumptions = {
      "independent per-photon emission; train success = p_photon^n",
      "SPDC pairs must arrive simultaneously: per-shot p_pair^(n/2)",
      "pairs joined by a linear chain of n/2 - 1 probabilistic fusions",
      "per-shot probabilities only; repetition rates are not modeled",
  };
  for (int m = 2; m <= n; m += 2) {
    SpdcRow row;
    row.n = m;
    row.p_cavity_chain = std::pow(rep.p_photon, m);
    row.p_spdc_chain =
        std::pow(p_pair, m / 2) * std::pow(fusion_success, m / 2 - 1);
    row.ratio = row.p_cavity_chain / row.p_spdc_chain;
    if (!rep.crossover_n && row.p_cavity_chain > row.p_spdc_chain)
      rep.crossover_n = m;
    rep.rows.push_back(row);
  }
  return rep;
}

MonteCarloResult monte_carlo_yield(const EfficiencyModel& model, int n,
                                   std::uint64_t shots, std::uint64_t seed,
                                   bool include_disconnection,
                                   bool include_detection) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const double expected =
      train_success(model, n, include_disconnection, include_detection);
  const int m = n + (include_disconnection ? 1 : 0);
  const double p_emit = model.per_photon_emission();
  const double p_det = model.p_detection;

  constexpr int kShards = 8;
  auto shard_worker = [&](std::uint64_t shard_seed,
                          std::uint64_t shard_shots) -> std::uint64_t {
    std::mt19937_64 rng(shard_seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uint64_t ok = 0;
    for (std::uint64_t s = 0; s < shard_shots; ++s) {
      bool success = true;
      for (int k = 0; k < m; ++k) {
        if (unif(rng) >= p_emit) { success = false; break; }
        if (include_detection && unif(rng) >= p_det) { success = false; break; }
      }
      if (success) ++ok;
    }
    return ok;
  };

  std::vector<std::future<std::uint64_t>> futures;
  std::uint64_t assigned = 0;
  for (int i = 0; i < kShards; ++i) {
    const std::uint64_t quota =
        shots / kShards + (static_cast<std::uint64_t>(i) < shots % kShards);
    futures.push_back(std::async(std::launch::async, shard_worker,
                                 mix_seed(seed + static_cast<std::uint64_t>(i)),
                                 quota));
    assigned += quota;
  }
  if (assigned != shots) throw std::logic_error("shard quota mismatch");

  MonteCarloResult res;
  res.shots = shots;
  res.seed = seed;
  res.expected = expected;
  for (auto& f : futures) res.successes += f.get();
  res.heralded_fraction =
      static_cast<double>(res.successes) / static_cast<double>(shots);
  res.ci_half_width =
      5.0 * std::sqrt(expected * (1.0 - expected) /
                      static_cast<double>(shots));
  res.within_ci =
      std::abs(res.heralded_fraction - expected) <= res.ci_half_width;
  return res;
}

}  // namespace photontrain::budget
