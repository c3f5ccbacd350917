#include "chiral_sta/scenario_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chiral_sta/version.hpp"

namespace chiral_sta {

using nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", value);
  return buf;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

namespace {

const char* model_name(ModelKind m) {
  return m == ModelKind::Rwa3 ? "rwa3" : "lab4";
}
const char* stage2_kind_name(StageTwoKind k) {
  return k == StageTwoKind::ChosenPaths ? "chosen-paths" : "stirap";
}
const char* theta_family_name(ThetaFamily f) {
  return f == ThetaFamily::FromStirapPulses ? "from-stirap-pulses"
                                            : "polynomial-sine";
}
const char* beta_family_name(BetaFamily f) {
  return f == BetaFamily::Gaussian ? "gaussian" : "cos-like";
}
const char* initial_kind_name(InitialKind k) {
  switch (k) {
    case InitialKind::Ket1: return "ket1";
    case InitialKind::IdealSuperposition: return "ideal-superposition";
    case InitialKind::Ket: return "ket";
    case InitialKind::Density: return "density";
  }
  return "?";
}
const char* noise_kind_name(NoiseKind k) {
  return k == NoiseKind::Awgn ? "awgn" : "uniform-fluctuation";
}

template <class T>
T parse_enum(const json& j, const char* key,
             std::initializer_list<std::pair<const char*, T>> table) {
  const std::string v = j.get<std::string>();
  for (const auto& [name, val] : table)
    if (v == name) return val;
  std::string names;
  for (const auto& [name, val] : table) names += std::string(" ") + name;
  throw ParseError(std::string("key '") + key + "': unknown value '" + v +
                   "'; expected one of" + names);
}

void check_keys(const json& j, const char* context,
                std::initializer_list<const char*> allowed) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed)
      if (key == a) {
        ok = true;
        break;
      }
    if (!ok)
      throw ParseError(std::string("unknown key '") + key + "' in " + context);
  }
}

json scenario_to_json_value(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["model"] = model_name(s.model);

  json levels;
  levels["omega12_rad_per_us"] = s.levels.omega12;
  levels["omega13_rad_per_us"] = s.levels.omega13;
  if (s.levels.omega4) levels["omega4_rad_per_us"] = *s.levels.omega4;
  levels["p_drives_24"] = s.levels.p_drives_24;
  levels["q_drives_34"] = s.levels.q_drives_34;
  j["levels"] = levels;

  if (s.stage1) {
    json st1;
    st1["peak_rad_per_us"] = s.stage1->peak;
    st1["width_us"] = s.stage1->width;
    st1["end_us"] = s.stage1->t_end;
    j["stage1"] = st1;
  }

  json st2;
  st2["kind"] = stage2_kind_name(s.stage2_kind);
  st2["theta_family"] = theta_family_name(s.stage2.theta_family);
  st2["beta_family"] = beta_family_name(s.stage2.beta_family);
  st2["peak_rad_per_us"] = s.stage2.peak;
  st2["width_us"] = s.stage2.width;
  st2["delay_us"] = s.stage2.delay;
  st2["start_us"] = s.stage2.t_start;
  st2["end_us"] = s.stage2.t_end;
  st2["beta_peak_rad"] = s.stage2.beta_peak;
  st2["beta_width_us"] = s.stage2.beta_width;
  st2["epsilon"] = s.stage2.epsilon;
  st2["cp_ceiling_rad_per_us"] = s.stage2.cp_ceiling;
  j["stage2"] = st2;

  j["phases_rad"] = {{"p", s.phase_p}, {"s", s.phase_s}, {"q", s.phase_q}};

  json init;
  init["kind"] = initial_kind_name(s.initial_kind);
  if (s.initial_kind == InitialKind::Ket) {
    json re = json::array(), im = json::array();
    for (const Complex& c : s.initial_ket) {
      re.push_back(c.real());
      im.push_back(c.imag());
    }
    init["ket_re"] = re;
    init["ket_im"] = im;
  }
  if (s.initial_kind == InitialKind::Density) init["diagonal"] = s.initial_diagonal;
  j["initial"] = init;

  j["relaxation"] = {{"gamma12_per_us", s.relaxation.gamma12},
                     {"gamma13_per_us", s.relaxation.gamma13},
                     {"gamma23_per_us", s.relaxation.gamma23}};

  j["drift"] = {{"amplitude_rel",
                 {{"P", s.drift.amplitude_rel[0]},
                  {"S", s.drift.amplitude_rel[1]},
                  {"Q", s.drift.amplitude_rel[2]}}},
                {"carrier_shift_rad_per_us",
                 {{"P", s.drift.carrier_shift[0]},
                  {"S", s.drift.carrier_shift[1]},
                  {"Q", s.drift.carrier_shift[2]}}}};

  if (s.noise) {
    j["noise"] = {{"kind", noise_kind_name(s.noise->kind)},
                  {"snr_db", s.noise->snr_db},
                  {"bound", s.noise->bound},
                  {"seed", s.noise->seed}};
  }

  j["dt_us"] = s.time_resolution;
  j["t_end_us"] = s.t_end;
  j["integrator"] = {{"interaction_steps", s.integrator.interaction_steps},
                     {"lab_samples_per_period", s.integrator.lab_samples_per_period},
                     {"max_step_us", s.integrator.max_step},
                     {"norm_tol", s.integrator.norm_tol},
                     {"trace_tol", s.integrator.trace_tol},
                     {"positivity_tol", s.integrator.positivity_tol}};
  j["seed"] = s.seed;
  return j;
}

Scenario scenario_from_json_value(const json& j) {
  check_keys(j, "scenario",
             {"name", "model", "levels", "stage1", "stage2", "phases_rad",
              "initial", "relaxation", "drift", "noise", "dt_us", "t_end_us",
              "integrator", "seed"});
  if (!j.contains("stage2"))
    throw ParseError("missing required key 'stage2'");
  if (!j.contains("initial"))
    throw ParseError("missing required key 'initial'");

  Scenario s;
  s.name = j.value("name", std::string("custom"));
  if (j.contains("model"))
    s.model = parse_enum<ModelKind>(j.at("model"), "model",
                                    {{"rwa3", ModelKind::Rwa3},
                                     {"lab4", ModelKind::Lab4}});

  if (j.contains("levels")) {
    const json& L = j.at("levels");
    check_keys(L, "levels",
               {"omega12_rad_per_us", "omega13_rad_per_us", "omega4_rad_per_us",
                "p_drives_24", "q_drives_34"});
    if (!L.contains("omega12_rad_per_us"))
      throw ParseError("levels: missing required key 'omega12_rad_per_us'");
    if (!L.contains("omega13_rad_per_us"))
      throw ParseError("levels: missing required key 'omega13_rad_per_us'");
    s.levels.omega12 = L.at("omega12_rad_per_us").get<double>();
    s.levels.omega13 = L.at("omega13_rad_per_us").get<double>();
    s.levels.omega4.reset();
    if (L.contains("omega4_rad_per_us"))
      s.levels.omega4 = L.at("omega4_rad_per_us").get<double>();
    s.levels.p_drives_24 = L.value("p_drives_24", true);
    s.levels.q_drives_34 = L.value("q_drives_34", true);
  }

  if (j.contains("stage1") && !j.at("stage1").is_null()) {
    const json& st1 = j.at("stage1");
    check_keys(st1, "stage1", {"peak_rad_per_us", "width_us", "end_us"});
    for (const char* k : {"peak_rad_per_us", "width_us", "end_us"})
      if (!st1.contains(k))
        throw ParseError(std::string("stage1: missing required key '") + k + "'");
    s.stage1 = StageOneParams{st1.at("peak_rad_per_us").get<double>(),
                              st1.at("width_us").get<double>(),
                              st1.at("end_us").get<double>()};
  }

  {
    const json& st2 = j.at("stage2");
    check_keys(st2, "stage2",
               {"kind", "theta_family", "beta_family", "peak_rad_per_us",
                "width_us", "delay_us", "start_us", "end_us", "beta_peak_rad",
                "beta_width_us", "epsilon", "cp_ceiling_rad_per_us"});
    for (const char* k : {"width_us", "start_us", "end_us", "beta_peak_rad"})
      if (!st2.contains(k))
        throw ParseError(std::string("stage2: missing required key '") + k + "'");
    if (st2.contains("kind"))
      s.stage2_kind = parse_enum<StageTwoKind>(
          st2.at("kind"), "stage2.kind",
          {{"chosen-paths", StageTwoKind::ChosenPaths},
           {"stirap", StageTwoKind::Stirap}});
    if (st2.contains("theta_family"))
      s.stage2.theta_family = parse_enum<ThetaFamily>(
          st2.at("theta_family"), "stage2.theta_family",
          {{"from-stirap-pulses", ThetaFamily::FromStirapPulses},
           {"polynomial-sine", ThetaFamily::PolynomialSine}});
    if (st2.contains("beta_family"))
      s.stage2.beta_family = parse_enum<BetaFamily>(
          st2.at("beta_family"), "stage2.beta_family",
          {{"gaussian", BetaFamily::Gaussian},
           {"cos-like", BetaFamily::CosLike}});
    s.stage2.peak = st2.value("peak_rad_per_us", 1.0);
    s.stage2.width = st2.at("width_us").get<double>();
    s.stage2.delay = st2.value("delay_us", 2.0 * s.stage2.width);
    s.stage2.t_start = st2.at("start_us").get<double>();
    s.stage2.t_end = st2.at("end_us").get<double>();
    s.stage2.beta_peak = st2.at("beta_peak_rad").get<double>();
    s.stage2.beta_width = st2.value("beta_width_us", 0.0);
    s.stage2.epsilon = st2.value("epsilon", 0.0);
    s.stage2.cp_ceiling = st2.value("cp_ceiling_rad_per_us", 0.0);
  }

  if (j.contains("phases_rad")) {
    const json& ph = j.at("phases_rad");
    check_keys(ph, "phases_rad", {"p", "s", "q"});
    s.phase_p = ph.value("p", 0.0);
    s.phase_s = ph.value("s", 0.0);
    s.phase_q = ph.value("q", 0.5 * M_PI);
  }

  {
    const json& init = j.at("initial");
    check_keys(init, "initial", {"kind", "ket_re", "ket_im", "diagonal"});
    if (!init.contains("kind"))
      throw ParseError("initial: missing required key 'kind'");
    s.initial_kind = parse_enum<InitialKind>(
        init.at("kind"), "initial.kind",
        {{"ket1", InitialKind::Ket1},
         {"ideal-superposition", InitialKind::IdealSuperposition},
         {"ket", InitialKind::Ket},
         {"density", InitialKind::Density}});
    if (s.initial_kind == InitialKind::Ket) {
      if (!init.contains("ket_re"))
        throw ParseError("initial: missing required key 'ket_re'");
      const auto re = init.at("ket_re").get<std::vector<double>>();
      std::vector<double> im(re.size(), 0.0);
      if (init.contains("ket_im")) im = init.at("ket_im").get<std::vector<double>>();
      if (im.size() != re.size())
        throw ParseError("initial: ket_re and ket_im must have equal length");
      s.initial_ket.clear();
      for (std::size_t i = 0; i < re.size(); ++i)
        s.initial_ket.emplace_back(re[i], im[i]);
    }
    if (s.initial_kind == InitialKind::Density) {
      if (!init.contains("diagonal"))
        throw ParseError("initial: missing required key 'diagonal'");
      s.initial_diagonal = init.at("diagonal").get<std::vector<double>>();
    }
  }

  if (j.contains("relaxation")) {
    const json& rel = j.at("relaxation");
    check_keys(rel, "relaxation",
               {"gamma12_per_us", "gamma13_per_us", "gamma23_per_us"});
    s.relaxation.gamma12 = rel.value("gamma12_per_us", 0.0);
    s.relaxation.gamma13 = rel.value("gamma13_per_us", 0.0);
    s.relaxation.gamma23 = rel.value("gamma23_per_us", 0.0);
  }

  if (j.contains("drift")) {
    const json& dr = j.at("drift");
    check_keys(dr, "drift", {"amplitude_rel", "carrier_shift_rad_per_us"});
    if (dr.contains("amplitude_rel")) {
      const json& a = dr.at("amplitude_rel");
      check_keys(a, "drift.amplitude_rel", {"P", "S", "Q"});
      s.drift.amplitude_rel = {a.value("P", 0.0), a.value("S", 0.0),
                               a.value("Q", 0.0)};
    }
    if (dr.contains("carrier_shift_rad_per_us")) {
      const json& c = dr.at("carrier_shift_rad_per_us");
      check_keys(c, "drift.carrier_shift_rad_per_us", {"P", "S", "Q"});
      s.drift.carrier_shift = {c.value("P", 0.0), c.value("S", 0.0),
                               c.value("Q", 0.0)};
    }
  }

  if (j.contains("noise") && !j.at("noise").is_null()) {
    const json& n = j.at("noise");
    check_keys(n, "noise", {"kind", "snr_db", "bound", "seed"});
    if (!n.contains("kind"))
      throw ParseError("noise: missing required key 'kind'");
    NoiseSpec spec;
    spec.kind = parse_enum<NoiseKind>(
        n.at("kind"), "noise.kind",
        {{"awgn", NoiseKind::Awgn},
         {"uniform-fluctuation", NoiseKind::UniformFluctuation}});
    spec.snr_db = n.value("snr_db", 0.0);
    spec.bound = n.value("bound", 0.0);
    spec.seed = n.value("seed", std::uint64_t{0});
    s.noise = spec;
  }

  s.time_resolution = j.value("dt_us", 0.0);
  s.t_end = j.value("t_end_us", 0.0);

  if (j.contains("integrator")) {
    const json& it = j.at("integrator");
    check_keys(it, "integrator",
               {"interaction_steps", "lab_samples_per_period", "max_step_us",
                "norm_tol", "trace_tol", "positivity_tol"});
    s.integrator.interaction_steps = it.value("interaction_steps", 10000);
    s.integrator.lab_samples_per_period = it.value("lab_samples_per_period", 160.0);
    s.integrator.max_step = it.value("max_step_us", 0.0);
    s.integrator.norm_tol = it.value("norm_tol", 1e-6);
    s.integrator.trace_tol = it.value("trace_tol", 1e-6);
    s.integrator.positivity_tol = it.value("positivity_tol", 1e-6);
  }

  s.seed = j.value("seed", std::uint64_t{1});
  s.validate();
  return s;
}

json parse_text(const std::string& text, const char* what) {
  std::string stripped = text;
  const auto pos = stripped.find_first_not_of(" \t\r\n");
  if (pos == std::string::npos)
    throw ParseError(std::string(what) +
                     " file is empty: missing required key 'stage2'");
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Map the byte offset to a line number for the diagnostic.
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    throw ParseError("line " + std::to_string(line) + ": " + e.what());
  }
}

void deep_merge(json& base, const json& overrides) {
  for (const auto& [key, value] : overrides.items()) {
    if (value.is_object() && base.contains(key) && base.at(key).is_object())
      deep_merge(base.at(key), value);
    else
      base[key] = value;
  }
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
  return scenario_to_json_value(s).dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  json j = parse_text(text, "scenario");
  if (!j.is_object()) throw ParseError("scenario file must be a JSON object");
  if (j.contains("figure")) {
    const std::string figure = j.at("figure").get<std::string>();
    j.erase("figure");
    json merged = scenario_to_json_value(canonical_scenario(figure));
    deep_merge(merged, j);
    // A null stage1 override removes the block entirely.
    if (merged.contains("stage1") && merged.at("stage1").is_null())
      merged.erase("stage1");
    if (merged.contains("noise") && merged.at("noise").is_null())
      merged.erase("noise");
    return scenario_from_json_value(merged);
  }
  return scenario_from_json_value(j);
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open scenario file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

void save_scenario_file(const Scenario& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out)
    throw ParseError("cannot write scenario file '" + path.string() + "'");
  out << scenario_to_json(s);
}

std::uint64_t scenario_hash(const Scenario& s) {
  return fnv1a64(scenario_to_json(s));
}

std::string sweep_spec_to_json(const SweepSpec& spec) {
  json j;
  json axes = json::array();
  for (const auto& ax : spec.axes)
    axes.push_back({{"parameter", ax.parameter}, {"values", ax.values}});
  j["axes"] = axes;
  j["trials"] = spec.trials;
  j["reducer"] = spec.reducer == Reducer::Mean  ? "mean"
                 : spec.reducer == Reducer::Min ? "min"
                                                : "all";
  j["base_seed"] = spec.base_seed;
  return j.dump(2) + "\n";
}

SweepSpec sweep_spec_from_json(const std::string& text) {
  json j = parse_text(text, "sweep-spec");
  check_keys(j, "sweep spec", {"axes", "trials", "reducer", "base_seed"});
  if (!j.contains("axes"))
    throw ParseError("sweep spec: missing required key 'axes'");
  SweepSpec spec;
  for (const json& ax : j.at("axes")) {
    check_keys(ax, "sweep axis", {"parameter", "values"});
    if (!ax.contains("parameter") || !ax.contains("values"))
      throw ParseError("sweep axis: required keys are 'parameter' and 'values'");
    spec.axes.push_back({ax.at("parameter").get<std::string>(),
                         ax.at("values").get<std::vector<double>>()});
  }
  spec.trials = j.value("trials", 1);
  if (j.contains("reducer"))
    spec.reducer = parse_enum<Reducer>(j.at("reducer"), "reducer",
                                       {{"mean", Reducer::Mean},
                                        {"min", Reducer::Min},
                                        {"all", Reducer::All}});
  spec.base_seed = j.value("base_seed", std::uint64_t{0});
  spec.validate();
  return spec;
}

SweepSpec load_sweep_spec_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open sweep spec file '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return sweep_spec_from_json(buf.str());
}

// ---------------------------------------------------------------------------
// CSV writers
// ---------------------------------------------------------------------------

void write_trajectory_csv(const std::filesystem::path& path, const RunResult& r,
                          Chirality chirality) {
  const auto& pops = chirality == Chirality::Left ? r.pops_left : r.pops_right;
  std::ofstream out(path);
  out << "t_us,P1,P2,P3";
  if (r.dim == 4) out << ",P4";
  out << "\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    out << format_number(r.times[i]);
    for (int k = 0; k < r.dim; ++k) out << "," << format_number(pops[i][k]);
    out << "\n";
  }
}

void write_trajectory_meta(const std::filesystem::path& path, const RunResult& r,
                           Chirality chirality, std::uint64_t seed) {
  json j;
  j["scenario_hash"] = hex64(r.scenario_hash);
  j["integrator_step_us"] = r.step_used;
  j["seed"] = seed;
  j["chirality"] = chirality_name(chirality);
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

void write_waveforms_csv(const std::filesystem::path& path,
                         const WaveformTable& w) {
  std::ofstream out(path);
  out << "t_us,omega_P,omega_S,omega_Q\n";
  for (std::size_t i = 0; i < w.t.size(); ++i)
    out << format_number(w.t[i]) << "," << format_number(w.omega_p[i]) << ","
        << format_number(w.omega_s[i]) << "," << format_number(w.omega_q[i])
        << "\n";
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& r,
                     bool reduced) {
  std::ofstream out(path);
  out << "# scenario_hash=" << hex64(r.scenario_hash)
      << " version=" << kVersion << "\n";
  for (const auto& name : r.axis_names) out << name << ",";
  out << "D,P3L,P3R,P1R,P2R,status,seed\n";
  const auto& rows = reduced ? r.reduced : r.rows;
  for (const auto& row : rows) {
    for (double v : row.axis_values) out << format_number(v) << ",";
    out << format_number(row.d) << "," << format_number(row.p3l) << ","
        << format_number(row.p3r) << "," << format_number(row.p1r) << ","
        << format_number(row.p2r) << "," << row.status << "," << row.seed
        << "\n";
  }
}

// ---------------------------------------------------------------------------
// Manifest
// ---------------------------------------------------------------------------

std::string file_digest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return hex64(fnv1a64(buf.str()));
}

void RunManifest::add_file(const std::filesystem::path& out_root,
                           const std::filesystem::path& file) {
  outputs.push_back({std::filesystem::relative(file, out_root).string(),
                     file_digest(file)});
}

void RunManifest::write(const std::filesystem::path& path) const {
  json j;
  j["command"] = command;
  j["version"] = kVersion;
  j["out_dir"] = out_dir;
  j["scenario_hash"] = hex64(scenario_hash);
  j["seed"] = seed;
  j["duration_seconds"] = duration_seconds;
  json files = json::array();
  for (const auto& e : outputs)
    files.push_back({{"path", e.path}, {"fnv1a64", e.digest}});
  j["outputs"] = files;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

}  // namespace chiral_sta
