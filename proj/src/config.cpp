#include "ddsim/config.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <thread>

#include "ddsim/average_hamiltonian.hpp"
#include "ddsim/sequence_dsl.hpp"

namespace ddsim {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& context) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) ok = true;
    if (!ok)
      throw ConfigError("unknown key '" + it.key() + "' in " + context);
  }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback,
         const std::string& context) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad type for '") + key + "' in " + context);
  }
}

BathModel bath_model_from(const std::string& name) {
  if (name == "none") return BathModel::none;
  if (name == "secular_dipolar") return BathModel::secular_dipolar;
  if (name == "diagonal") return BathModel::diagonal;
  throw ConfigError("unknown bath_model '" + name + "'");
}

std::string bath_model_name(BathModel m) {
  switch (m) {
    case BathModel::none: return "none";
    case BathModel::secular_dipolar: return "secular_dipolar";
    case BathModel::diagonal: return "diagonal";
  }
  return "none";
}

SampleSpec::Mode sample_mode_from(const std::string& name) {
  if (name == "cycle_boundaries") return SampleSpec::Mode::cycle_boundaries;
  if (name == "window_centers") return SampleSpec::Mode::window_centers;
  if (name == "every_pulse") return SampleSpec::Mode::every_pulse;
  if (name == "uniform") return SampleSpec::Mode::uniform;
  throw ConfigError("unknown sample_points.mode '" + name + "'");
}

std::string sample_mode_name(SampleSpec::Mode m) {
  switch (m) {
    case SampleSpec::Mode::cycle_boundaries: return "cycle_boundaries";
    case SampleSpec::Mode::window_centers: return "window_centers";
    case SampleSpec::Mode::every_pulse: return "every_pulse";
    case SampleSpec::Mode::uniform: return "uniform";
  }
  return "cycle_boundaries";
}

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config root must be an object");
  check_keys(j,
             {"hamiltonian", "sequence", "n_cycles", "sample_points", "sweep",
              "outputs", "workers"},
             "config root");
  ExperimentConfig c;

  if (!j.contains("hamiltonian") || !j.at("hamiltonian").is_object())
    throw ConfigError("config needs a 'hamiltonian' object");
  const json& h = j.at("hamiltonian");
  check_keys(h, {"n_bath", "omega_s", "bath_model", "epsilon", "seed", "b",
                 "d", "sample"},
             "hamiltonian");
  c.hamiltonian.n_bath = get_or(h, "n_bath", 0, "hamiltonian");
  c.hamiltonian.omega_s = get_or(h, "omega_s", 0.0, "hamiltonian");
  c.hamiltonian.bath_model = bath_model_from(
      get_or<std::string>(h, "bath_model", "none", "hamiltonian"));
  c.hamiltonian.epsilon = get_or(h, "epsilon", 0.0, "hamiltonian");
  c.hamiltonian.seed =
      get_or<std::uint64_t>(h, "seed", 0, "hamiltonian");
  if (h.contains("sample")) {
    if (h.contains("b") || h.contains("d"))
      throw ConfigError(
          "hamiltonian: give either explicit 'b'/'d' or a 'sample' block, "
          "not both");
    const json& s = h.at("sample");
    check_keys(s, {"scale_b", "scale_d"}, "hamiltonian.sample");
    c.sample_scale_b = get_or(s, "scale_b", 0.0, "hamiltonian.sample");
    c.sample_scale_d = get_or(s, "scale_d", 0.0, "hamiltonian.sample");
  } else {
    c.hamiltonian.b = get_or(h, "b", std::vector<double>{}, "hamiltonian");
    c.hamiltonian.d = get_or(h, "d", std::vector<double>{}, "hamiltonian");
    if (static_cast<int>(c.hamiltonian.b.size()) != c.hamiltonian.n_bath)
      throw ConfigError("hamiltonian: 'b' must have n_bath entries");
  }

  if (!j.contains("sequence") || !j.at("sequence").is_object())
    throw ConfigError("config needs a 'sequence' object");
  const json& s = j.at("sequence");
  check_keys(s, {"builder", "tau", "symmetric", "n_pulses", "phase_deg",
                 "level", "dsl"},
             "sequence");
  c.sequence.builder = get_or<std::string>(s, "builder", "", "sequence");
  c.sequence.dsl = get_or<std::string>(s, "dsl", "", "sequence");
  if (c.sequence.builder.empty() == c.sequence.dsl.empty())
    throw ConfigError(
        "sequence: exactly one of 'builder' or 'dsl' must be given");
  c.sequence.tau = get_or(s, "tau", 0.0, "sequence");
  c.sequence.symmetric = get_or(s, "symmetric", true, "sequence");
  c.sequence.n_pulses = get_or(s, "n_pulses", 2, "sequence");
  c.sequence.phase_deg = get_or(s, "phase_deg", 90.0, "sequence");
  c.sequence.level = get_or(s, "level", 2, "sequence");

  c.n_cycles = get_or(j, "n_cycles", 1, "config root");
  if (c.n_cycles < 1) throw ConfigError("n_cycles must be >= 1");

  if (j.contains("sample_points")) {
    const json& sp = j.at("sample_points");
    check_keys(sp, {"mode", "dt"}, "sample_points");
    c.sample_points.mode = sample_mode_from(
        get_or<std::string>(sp, "mode", "cycle_boundaries", "sample_points"));
    c.sample_points.dt = get_or(sp, "dt", 0.0, "sample_points");
    if (c.sample_points.mode == SampleSpec::Mode::uniform &&
        !(c.sample_points.dt > 0.0))
      throw ConfigError("sample_points: uniform mode needs dt > 0");
  }

  if (j.contains("sweep")) {
    if (!j.at("sweep").is_array())
      throw ConfigError("sweep must be an array of {path, values}");
    for (const json& axis : j.at("sweep")) {
      check_keys(axis, {"path", "values"}, "sweep axis");
      SweepAxis a;
      a.path = get_or<std::string>(axis, "path", "", "sweep axis");
      if (a.path.empty()) throw ConfigError("sweep axis needs a 'path'");
      if (!axis.contains("values") || !axis.at("values").is_array() ||
          axis.at("values").empty())
        throw ConfigError("sweep axis '" + a.path +
                          "' needs a nonempty 'values' array");
      for (const json& v : axis.at("values")) {
        if (v.is_number() && !std::isfinite(v.get<double>()))
          throw ConfigError("sweep axis '" + a.path + "' has non-finite value");
        a.values.push_back(v);
      }
      c.sweep.push_back(std::move(a));
    }
  }

  c.outputs = get_or<std::string>(j, "outputs", "out", "config root");
  c.workers = get_or(j, "workers", 1, "config root");
  if (c.workers < 1) throw ConfigError("workers must be >= 1");
  return c;
}

json ExperimentConfig::to_json() const {
  json h;
  h["n_bath"] = hamiltonian.n_bath;
  h["omega_s"] = hamiltonian.omega_s;
  h["bath_model"] = bath_model_name(hamiltonian.bath_model);
  h["epsilon"] = hamiltonian.epsilon;
  h["seed"] = hamiltonian.seed;
  if (sample_scale_b || sample_scale_d) {
    h["sample"] = {{"scale_b", sample_scale_b.value_or(0.0)},
                   {"scale_d", sample_scale_d.value_or(0.0)}};
  } else {
    h["b"] = hamiltonian.b;
    h["d"] = hamiltonian.d;
  }
  json s;
  if (!sequence.dsl.empty()) {
    s["dsl"] = sequence.dsl;
  } else {
    s["builder"] = sequence.builder;
    s["symmetric"] = sequence.symmetric;
  }
  s["tau"] = sequence.tau;
  s["n_pulses"] = sequence.n_pulses;
  s["phase_deg"] = sequence.phase_deg;
  s["level"] = sequence.level;
  json sp;
  sp["mode"] = sample_mode_name(sample_points.mode);
  if (sample_points.mode == SampleSpec::Mode::uniform)
    sp["dt"] = sample_points.dt;
  json out;
  out["hamiltonian"] = std::move(h);
  out["sequence"] = std::move(s);
  out["n_cycles"] = n_cycles;
  out["sample_points"] = std::move(sp);
  if (!sweep.empty()) {
    json axes = json::array();
    for (const auto& a : sweep) {
      json values = json::array();
      for (const auto& v : a.values) values.push_back(v);
      axes.push_back({{"path", a.path}, {"values", values}});
    }
    out["sweep"] = std::move(axes);
  }
  out["outputs"] = outputs;
  out["workers"] = workers;
  return out;
}

PulseSequence realize_sequence(const SequenceChoice& choice) {
  if (!choice.dsl.empty()) {
    PulseSequence s = parse_sequence(choice.dsl);
    s.label = "dsl";
    return s;
  }
  const std::string& b = choice.builder;
  if (b == "xy4") return build_xy4(choice.tau, choice.symmetric);
  if (b == "xy8") return build_xy8(choice.tau, choice.symmetric);
  if (b == "xy16") return build_xy16(choice.tau, choice.symmetric);
  if (b == "cpmg")
    return build_cpmg(choice.n_pulses, choice.tau, choice.symmetric,
                      choice.phase_deg * std::numbers::pi / 180.0);
  if (b == "cdd") return build_cdd(choice.level, choice.tau, choice.symmetric);
  throw ConfigError("unknown sequence builder '" + b + "'");
}

HamiltonianParts realize_hamiltonian(const ExperimentConfig& config) {
  HamiltonianSpec spec = config.hamiltonian;
  if (config.sample_scale_b || config.sample_scale_d) {
    auto [b, d] = sample_couplings(spec.n_bath,
                                   config.sample_scale_b.value_or(0.0),
                                   config.sample_scale_d.value_or(0.0),
                                   spec.seed);
    spec.b = std::move(b);
    spec.d = std::move(d);
  }
  return build_hamiltonian(spec);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
  try {
    return ExperimentConfig::from_json(j);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "time,mx,my,mz\n";
  for (size_t i = 0; i < traj.times.size(); ++i) {
    out += fmt12(traj.times[i]) + "," + fmt12(traj.mx[i]) + "," +
           fmt12(traj.my[i]) + "," + fmt12(traj.mz[i]) + "\n";
  }
  return out;
}

namespace {

json decay_json(const DecayResult& r) {
  json j;
  j["status"] = r.status == DecayResult::Status::ok ? "ok" : "not_decayed";
  if (r.status == DecayResult::Status::ok) j["time"] = r.time;
  j["last_value"] = r.last_value;
  return j;
}

struct PointOutput {
  PointMetrics metrics;
  std::string trajectory_csv_text;
  std::string aht_text;
  std::vector<std::string> run_warnings;
};

PointOutput run_point(const json& point_json, int index,
                      const json& overrides) {
  PointOutput out;
  out.metrics.point = index;
  out.metrics.overrides = overrides;
  try {
    const ExperimentConfig cfg = ExperimentConfig::from_json(point_json);
    const HamiltonianParts parts = realize_hamiltonian(cfg);
    const PulseSequence seq = realize_sequence(cfg.sequence);
    const QuantumState rho0 = prepare_state(parts, Axis::y);

    const Trajectory traj = evolve(seq, parts, cfg.hamiltonian.epsilon, rho0,
                                   cfg.n_cycles, cfg.sample_points);
    out.trajectory_csv_text = trajectory_csv(traj);

    json metrics;
    for (auto [key, channel] :
         {std::pair{"decay_my", DecayChannel::my},
          std::pair{"decay_total", DecayChannel::total}}) {
      try {
        metrics[key] = decay_json(decay_time(traj, channel));
      } catch (const Error& e) {
        metrics[key] = {{"status", "unavailable"}, {"note", e.what()}};
        out.run_warnings.push_back("point " + std::to_string(index) + ": " +
                                   e.what());
      }
    }
    metrics["final_my"] = traj.my.back();

    Trajectory boundary = traj;
    if (cfg.sample_points.mode != SampleSpec::Mode::cycle_boundaries)
      boundary = evolve(seq, parts, cfg.hamiltonian.epsilon, rho0,
                        cfg.n_cycles, SampleSpec::cycle_boundaries());
    try {
      metrics["precession_per_pulse"] =
          precession_angle(boundary, seq.n_pulses());
    } catch (const DegenerateFitError& e) {
      metrics["precession_per_pulse"] = nullptr;
      metrics["precession_note"] = e.what();
      out.run_warnings.push_back("point " + std::to_string(index) + ": " +
                                 e.what());
    }

    metrics["fidelity_series"] = process_fidelity_series(
        seq, parts, cfg.hamiltonian.epsilon, cfg.n_cycles);

    const AverageHamiltonian avg = average_hamiltonian(
        seq, parts, cfg.hamiltonian.epsilon, 2);
    out.aht_text = "sequence: " + seq.label + "\n" + aht_report(avg);

    out.metrics.status = "ok";
    json m;
    m["sequence_label"] = seq.label;
    m["cycle_time"] = traj.cycle_time;
    m["n_pulses_per_cycle"] = traj.n_pulses_per_cycle;
    m["metrics"] = std::move(metrics);
    m["warnings"] = traj.warnings;
    out.metrics.metrics = std::move(m);
    for (const auto& w : traj.warnings)
      out.run_warnings.push_back("point " + std::to_string(index) + ": " + w);
  } catch (const std::exception& e) {
    out.metrics.status = "error";
    out.metrics.message = e.what();
    out.run_warnings.push_back("point " + std::to_string(index) +
                               " failed: " + e.what());
  }
  return out;
}

}  // namespace

RunResult run_config(const ExperimentConfig& config) {
  const json base = config.to_json();

  // Cartesian expansion, last axis fastest.
  std::vector<std::pair<json, json>> points;  // (patched config, overrides)
  points.emplace_back(base, json::object());
  for (const auto& axis : config.sweep) {
    const std::string pointer_text =
        "/" + [&] {
          std::string p = axis.path;
          for (char& ch : p)
            if (ch == '.') ch = '/';
          return p;
        }();
    const json::json_pointer ptr(pointer_text);
    if (!base.contains(ptr))
      throw ConfigError("sweep path '" + axis.path +
                        "' does not exist in the base config");
    std::vector<std::pair<json, json>> next;
    for (const auto& [doc, ov] : points) {
      for (const auto& v : axis.values) {
        json doc2 = doc;
        doc2[ptr] = v;
        json ov2 = ov;
        ov2[axis.path] = v;
        next.emplace_back(std::move(doc2), std::move(ov2));
      }
    }
    points = std::move(next);
  }

  std::vector<PointOutput> outputs(points.size());
  const int workers = std::min<int>(config.workers,
                                    static_cast<int>(points.size()));
  if (workers <= 1) {
    for (size_t i = 0; i < points.size(); ++i)
      outputs[i] = run_point(points[i].first, static_cast<int>(i),
                             points[i].second);
  } else {
    std::atomic<size_t> cursor{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (size_t i = cursor.fetch_add(1); i < points.size();
             i = cursor.fetch_add(1))
          outputs[i] = run_point(points[i].first, static_cast<int>(i),
                                 points[i].second);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Single collector writes all files in point order.
  namespace fs = std::filesystem;
  const fs::path dir = config.outputs.empty() ? "." : config.outputs;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + dir.string() +
                      "': " + ec.message());
  const auto write_file = [&](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + p.string() + "'");
    f << text;
  };

  RunResult result;
  json summary;
  summary["config"] = base;
  summary["points"] = json::array();
  for (size_t i = 0; i < outputs.size(); ++i) {
    auto& o = outputs[i];
    char tag[16];
    std::snprintf(tag, sizeof(tag), "point_%03zu", i);
    json pj;
    pj["point"] = o.metrics.point;
    pj["overrides"] = o.metrics.overrides;
    pj["status"] = o.metrics.status;
    if (!o.metrics.message.empty()) pj["message"] = o.metrics.message;
    if (!o.metrics.metrics.is_null())
      pj.update(o.metrics.metrics.get<json::object_t>());
    write_file(dir / (std::string(tag) + "_metrics.json"), pj.dump(2) + "\n");
    if (o.metrics.status == "ok") {
      write_file(dir / (std::string(tag) + "_trajectory.csv"),
                 o.trajectory_csv_text);
      write_file(dir / (std::string(tag) + "_aht.txt"), o.aht_text);
    }
    summary["points"].push_back(pj);
    result.points.push_back(std::move(o.metrics));
    for (auto& w : o.run_warnings) result.warnings.push_back(std::move(w));
  }
  summary["warnings"] = result.warnings;
  write_file(dir / "summary.json", summary.dump(2) + "\n");
  return result;
}

}  // namespace ddsim
