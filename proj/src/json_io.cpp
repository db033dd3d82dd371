#include "photontrain/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace photontrain::io {

namespace {

json amps_to_json(const Vector& amps) {
  json out = json::array();
  for (Eigen::Index i = 0; i < amps.size(); ++i)
    out.push_back({amps[i].real(), amps[i].imag()});
  return out;
}

const char* kind_name(protocol::StateKind kind) {
  return kind == protocol::StateKind::GHZ ? "ghz" : "cluster";
}

}  // namespace

json state_to_json(const PureState& state) {
  return {
      {"n_photons", state.n_photons},
      {"has_atom", state.has_atom},
      {"bit_convention",
       "photon k at bit k-1, atom at the highest bit; |+>,|s+> = 0 and "
       "|->,|s-> = 1"},
      {"amplitudes", amps_to_json(state.amps)},
  };
}

json isometry_to_json(const Isometry& v) {
  json rows = json::array();
  for (int r = 0; r < 4; ++r) {
    json row = json::array();
    for (int c = 0; c < 2; ++c) row.push_back({v(r, c).real(), v(r, c).imag()});
    rows.push_back(row);
  }
  return {{"row_order", "(+,s+), (+,s-), (-,s+), (-,s-)"},
          {"column_order", "|+>, |->"},
          {"rows", rows}};
}

json run_to_json(const protocol::ProtocolRun& run) {
  return {
      {"kind", kind_name(run.kind)},
      {"n", run.n},
      {"mu", run.mu},
      {"measurement_draw", run.measurement_draw},
      {"atom_schmidt_weight", run.atom_schmidt_weight},
      {"final_state", state_to_json(run.final_state)},
      {"hybrid_pre_measurement", state_to_json(run.hybrid_pre_measurement)},
  };
}

json scheme_to_json(const atomic::LevelScheme& scheme) {
  json levels = json::array();
  for (const auto& s : scheme.sublevels)
    levels.push_back({{"label", s.label()},
                      {"term", s.term},
                      {"two_j", s.two_j},
                      {"two_f", s.two_f},
                      {"two_m", s.two_m},
                      {"energy_tag", s.energy_tag}});
  json transitions = json::array();
  for (const auto& t : scheme.transitions)
    transitions.push_back({{"upper", scheme.sublevels[t.upper].label()},
                           {"lower", scheme.sublevels[t.lower].label()},
                           {"q", t.q},
                           {"amplitude", t.amplitude}});
  return {{"species", scheme.species},
          {"sublevels", levels},
          {"transitions", transitions}};
}

json compiled_to_json(const atomic::CompiledIsometry& compiled) {
  return {
      {"isometry", isometry_to_json(compiled.v)},
      {"branch_weights",
       {compiled.branch_weights[0], compiled.branch_weights[1]}},
      {"frame_corrected", isometry_to_json(compiled.corrected())},
  };
}

json model_to_json(const budget::EfficiencyModel& model) {
  return {
      {"p_intracavity", model.p_intracavity},
      {"p_cavity_emission", model.p_cavity_emission},
      {"p_detection", model.p_detection},
      {"p_double_excitation", model.p_double_excitation},
      {"f2_fidelity", model.f2_fidelity},
      {"emission_includes_intracavity", model.emission_includes_intracavity},
      {"per_photon_emission", model.per_photon_emission()},
      {"model_assumptions",
       {"per-photon losses independent and multiplicative",
        "per-photon fidelity multiplicative: F_N = f^N"}},
  };
}

json spdc_to_json(const budget::SpdcReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows)
    rows.push_back({{"n", r.n},
                    {"p_cavity_chain", r.p_cavity_chain},
                    {"p_spdc_chain", r.p_spdc_chain},
                    {"ratio", r.ratio}});
  json out = {{"p_photon", report.p_photon},
              {"p_pair", report.p_pair},
              {"fusion_success", report.fusion_success},
              {"rows", rows},
              {"assumptions", report.assumptions}};
  if (report.crossover_n)
    out["crossover_n"] = *report.crossover_n;
  else
    out["crossover_n"] = nullptr;
  return out;
}

json monte_carlo_to_json(const budget::MonteCarloResult& result) {
  return {
      {"shots", result.shots},
      {"successes", result.successes},
      {"heralded_fraction", result.heralded_fraction},
      {"expected", result.expected},
      {"ci_half_width_5sigma", result.ci_half_width},
      {"within_ci", result.within_ci},
      {"seed", result.seed},
  };
}

std::string spdc_to_csv(const budget::SpdcReport& report) {
  std::string out = "n,p_cavity_chain,p_spdc_chain,ratio\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.n) + "," + format_double(r.p_cavity_chain) + "," +
           format_double(r.p_spdc_chain) + "," + format_double(r.ratio) + "\n";
  }
  return out;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace photontrain::io
