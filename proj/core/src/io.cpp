#include "biphoton/io.hpp"

#include <stdexcept>

#include <json.hpp>

namespace biphoton {

namespace {

using nlohmann::json;

json complex_to_json(const std::complex<double>& z) {
  return json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw std::invalid_argument("complex values must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Eigen::Matrix3cd& m) {
  json rows = json::array();
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) rows.push_back(complex_to_json(m(i, k)));
  }
  return rows;
}

Eigen::Matrix3cd matrix_from_json(const json& j) {
  if (!j.is_array() || j.size() != 9) {
    throw std::invalid_argument("matrices must be row-major arrays of 9 [re, im] pairs");
  }
  Eigen::Matrix3cd m;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      m(i, k) = complex_from_json(j[static_cast<std::size_t>(3 * i + k)]);
    }
  }
  return m;
}

json parse(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("JSON parse error: ") + e.what());
  }
}

json k4_to_json_obj(const CoherencyMatrix& k) {
  return json{{"A", k.A},
              {"B", k.B},
              {"C", k.C},
              {"D", complex_to_json(k.D)},
              {"E", complex_to_json(k.E)},
              {"F", complex_to_json(k.F)}};
}

json report_to_json_obj(const ConstraintReport& report) {
  json j{{"normalization", report.normalization},
         {"pure_hypothesis", report.pure_hypothesis}};
  auto put = [&](const char* key, const std::optional<double>& v) {
    j[key] = v ? json(*v) : json(nullptr);
  };
  put("purity", report.purity);
  put("f_identity", report.f_identity);
  put("d_identity", report.d_identity);
  put("e_quotient", report.e_quotient);
  return j;
}

json extraction_to_json(const PureExtraction& e) {
  return json{{"magnitude", e.magnitude},
              {"phase", e.phase},
              {"reference", e.reference},
              {"purity_residual", e.purity_residual}};
}

json state_to_json_obj(const QutritState& state) {
  if (state.is_pure()) {
    const auto& c = state.amplitudes();
    json amps = json::array();
    for (int i = 0; i < 3; ++i) amps.push_back(complex_to_json(c(i)));
    return json{{"amplitudes", amps}};
  }
  return json{{"rho", matrix_to_json(state.rho())}};
}

json reconstruction_to_json_obj(const ReconstructionResult& r) {
  json j{{"k4", k4_to_json_obj(r.k4)},
         {"rho_raw", matrix_to_json(r.rho_raw)},
         {"rho_physical", matrix_to_json(r.rho_physical)},
         {"scale_factor", r.scale_factor},
         {"residuals", report_to_json_obj(r.residuals)},
         {"e_undetermined", r.e_undetermined}};
  j["pure_extraction"] =
      r.pure_extraction ? extraction_to_json(*r.pure_extraction) : json(nullptr);
  return j;
}

json moments_to_json_obj(const MomentVector& m) {
  json j{{"rates", m.rates}};
  if (m.counts) j["counts"] = *m.counts;
  if (m.total_per_setting) j["total_per_setting"] = *m.total_per_setting;
  if (m.seed) j["seed"] = *m.seed;
  return j;
}

json noise_to_json(const std::optional<PoissonNoise>& noise) {
  if (!noise) return json{{"mode", "exact"}};
  return json{{"mode", "poisson"},
              {"total_per_setting", noise->total_per_setting},
              {"seed", noise->seed}};
}

json sweep_config_to_json_obj(const SweepConfig& cfg) {
  return json{{"plate_thickness_um", cfg.plate_thickness_um},
              {"wavelength_nm", cfg.wavelength_nm},
              {"birefringence", cfg.birefringence},
              {"alpha_grid_deg", cfg.alpha_grid_deg},
              {"noise", noise_to_json(cfg.noise)}};
}

}  // namespace

std::string state_to_json(const QutritState& state) {
  return state_to_json_obj(state).dump();
}

QutritState state_from_json(std::string_view text, double tol) {
  const RawState raw = raw_state_from_json(text);
  if (raw.amplitudes) return QutritState::pure(*raw.amplitudes, tol);
  return QutritState::mixed(*raw.rho, tol);
}

RawState raw_state_from_json(std::string_view text) {
  const json j = parse(text);
  const bool has_amps = j.contains("amplitudes");
  const bool has_rho = j.contains("rho");
  if (has_amps == has_rho) {
    throw std::invalid_argument(
        "state must carry exactly one of \"amplitudes\" or \"rho\"");
  }
  RawState raw;
  if (has_amps) {
    const auto& amps = j.at("amplitudes");
    if (!amps.is_array() || amps.size() != 3) {
      throw std::invalid_argument("\"amplitudes\" must hold 3 [re, im] pairs");
    }
    Eigen::Vector3cd c;
    for (int i = 0; i < 3; ++i) {
      c(i) = complex_from_json(amps[static_cast<std::size_t>(i)]);
    }
    raw.amplitudes = c;
  } else {
    raw.rho = matrix_from_json(j.at("rho"));
  }
  return raw;
}

Eigen::Matrix3cd RawState::as_matrix() const {
  if (amplitudes) return *amplitudes * amplitudes->adjoint();
  return *rho;
}

std::string k4_to_json(const CoherencyMatrix& k) {
  return k4_to_json_obj(k).dump();
}

CoherencyMatrix k4_from_json(std::string_view text) {
  const json j = parse(text);
  CoherencyMatrix k;
  k.A = j.at("A").get<double>();
  k.B = j.at("B").get<double>();
  k.C = j.at("C").get<double>();
  k.D = complex_from_json(j.at("D"));
  k.E = complex_from_json(j.at("E"));
  k.F = complex_from_json(j.at("F"));
  return k;
}

std::string moments_to_json(const MomentVector& m) {
  return moments_to_json_obj(m).dump();
}

MomentVector moments_from_json(std::string_view text) {
  const json j = parse(text);
  MomentVector m;
  const auto& rates = j.at("rates");
  if (!rates.is_array()) {
    throw std::invalid_argument("\"rates\" must be an array");
  }
  m.rates = rates.get<std::vector<double>>();
  if (j.contains("counts") && !j["counts"].is_null()) {
    m.counts = j["counts"].get<std::vector<long long>>();
  }
  if (j.contains("total_per_setting") && !j["total_per_setting"].is_null()) {
    m.total_per_setting = j["total_per_setting"].get<long long>();
  }
  if (j.contains("seed") && !j["seed"].is_null()) {
    m.seed = j["seed"].get<std::uint64_t>();
  }
  return m;
}

std::string reconstruction_to_json(const ReconstructionResult& r) {
  return reconstruction_to_json_obj(r).dump();
}

std::string report_to_json(const ConstraintReport& report) {
  return report_to_json_obj(report).dump();
}

SweepConfig sweep_config_from_json(std::string_view text) {
  const json j = parse(text);
  SweepConfig cfg;
  if (j.contains("plate_thickness_um")) {
    cfg.plate_thickness_um = j["plate_thickness_um"].get<double>();
  }
  if (j.contains("wavelength_nm")) {
    cfg.wavelength_nm = j["wavelength_nm"].get<double>();
  }
  if (j.contains("birefringence")) {
    cfg.birefringence = j["birefringence"].get<double>();
  }
  if (j.contains("alpha_grid_deg")) {
    cfg.alpha_grid_deg = j["alpha_grid_deg"].get<std::vector<double>>();
  }
  if (j.contains("noise") && !j["noise"].is_null()) {
    const auto& n = j["noise"];
    const std::string mode = n.at("mode").get<std::string>();
    if (mode == "exact") {
      cfg.noise = std::nullopt;
    } else if (mode == "poisson") {
      PoissonNoise p;
      p.total_per_setting = n.at("total_per_setting").get<long long>();
      p.seed = n.contains("seed") ? n["seed"].get<std::uint64_t>() : 0;
      cfg.noise = p;
    } else {
      throw std::invalid_argument("noise mode must be \"exact\" or \"poisson\"");
    }
  }
  return cfg;
}

std::string sweep_config_to_json(const SweepConfig& cfg) {
  return sweep_config_to_json_obj(cfg).dump();
}

std::string sweep_to_json(std::span<const SweepRecord> records,
                          const SweepConfig& cfg) {
  json doc{{"config", sweep_config_to_json_obj(cfg)},
           {"delta_rad", cfg.delta_rad()}};
  json recs = json::array();
  for (const auto& rec : records) {
    recs.push_back(json{{"alpha_deg", rec.alpha_deg},
                        {"true_state", state_to_json_obj(rec.true_state)},
                        {"rates", moments_to_json_obj(rec.rates)},
                        {"reconstruction",
                         reconstruction_to_json_obj(rec.reconstruction)}});
  }
  doc["records"] = std::move(recs);
  return doc.dump(2);
}

}  // namespace biphoton
