#include "uscqed/sweep.hpp"

#include "uscqed/csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <optional>
#include <set>
#include <thread>

namespace uscqed {

using nlohmann::json;

namespace {
constexpr const char* kVersion = "0.1.0";
}

const char* to_string(SweepTarget t) {
    switch (t) {
        case SweepTarget::Point: return "point";
        case SweepTarget::EtaJoint: return "eta_joint";
        case SweepTarget::EtaSingle: return "eta_single";
        case SweepTarget::OmegaB: return "omega_b";
        case SweepTarget::GBMagnitude: return "g_b_magnitude";
        case SweepTarget::PhiB: return "phi_b";
        case SweepTarget::OmegaS: return "omega_s";
    }
    return "?";
}

const char* to_string(OutputKind k) {
    switch (k) {
        case OutputKind::Eigenvalues: return "eigenvalues";
        case OutputKind::Parity: return "parity";
        case OutputKind::P2Table: return "p2_table";
        case OutputKind::SpectrumQrt: return "spectrum_qrt";
        case OutputKind::SpectrumSaa: return "spectrum_saa";
    }
    return "?";
}

SweepTarget sweep_target_from_string(const std::string& s) {
    for (SweepTarget t : {SweepTarget::EtaJoint, SweepTarget::EtaSingle, SweepTarget::OmegaB,
                          SweepTarget::GBMagnitude, SweepTarget::PhiB, SweepTarget::OmegaS})
        if (s == to_string(t)) return t;
    throw ConfigError("unknown sweep target '" + s + "'");
}

OutputKind output_kind_from_string(const std::string& s) {
    for (OutputKind k : {OutputKind::Eigenvalues, OutputKind::Parity, OutputKind::P2Table,
                         OutputKind::SpectrumQrt, OutputKind::SpectrumSaa})
        if (s == to_string(k)) return k;
    throw ConfigError("unknown output kind '" + s + "'");
}

std::vector<double> SweepSpec::values() const {
    if (target == SweepTarget::Point || n_points == 1) return {start};
    std::vector<double> out(n_points);
    for (int i = 0; i < n_points; ++i)
        out[i] = start + (stop - start) * static_cast<double>(i) / (n_points - 1);
    return out;
}

// ---------------------------------------------------------------- json I/O

namespace {

[[noreturn]] void config_fail(const std::string& path, const std::string& why) {
    throw ConfigError(path + ": " + why);
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) config_fail(path, "expected a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& path) {
    if (!j.is_number_integer()) config_fail(path, "expected an integer");
    return j.get<int>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) config_fail(path, "expected a string");
    return j.get<std::string>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) config_fail(path, "expected a boolean");
    return j.get<bool>();
}

const std::set<std::string> kModelKeys = {
    "omega_c", "omega_a", "omega_b", "omega_s", "g_a", "g_b", "g_s", "phi_b",
    "kappa", "gamma_a", "gamma_b", "gamma_s", "p_inc", "bath_cav", "bath_atom",
    "bath_sensor", "gauge", "model", "gauge_corrected", "n_fock", "m_dressed",
    "cross_window_factor"};

void apply_model_overrides(ModelConfig& cfg, const json& j, const std::string& path) {
    if (!j.is_object()) config_fail(path, "expected an object");
    for (const auto& [key, value] : j.items()) {
        const std::string p = path + "." + key;
        if (!kModelKeys.count(key)) config_fail(p, "unknown model field");
        try {
            if (key == "omega_c") cfg.omega_c = as_number(value, p);
            else if (key == "omega_a") cfg.omega_a = as_number(value, p);
            else if (key == "omega_b") cfg.omega_b = as_number(value, p);
            else if (key == "omega_s") cfg.omega_s = as_number(value, p);
            else if (key == "g_a") cfg.g_a = as_number(value, p);
            else if (key == "g_b") cfg.g_b = as_number(value, p);
            else if (key == "g_s") cfg.g_s = as_number(value, p);
            else if (key == "phi_b") cfg.phi_b = as_number(value, p);
            else if (key == "kappa") cfg.kappa = as_number(value, p);
            else if (key == "gamma_a") cfg.gamma_a = as_number(value, p);
            else if (key == "gamma_b") cfg.gamma_b = as_number(value, p);
            else if (key == "gamma_s") cfg.gamma_s = as_number(value, p);
            else if (key == "p_inc") cfg.p_inc = as_number(value, p);
            else if (key == "bath_cav") cfg.bath_cav = bath_kind_from_string(as_string(value, p));
            else if (key == "bath_atom") cfg.bath_atom = bath_kind_from_string(as_string(value, p));
            else if (key == "bath_sensor")
                cfg.bath_sensor = bath_kind_from_string(as_string(value, p));
            else if (key == "gauge") cfg.gauge = gauge_from_string(as_string(value, p));
            else if (key == "model") cfg.model = model_kind_from_string(as_string(value, p));
            else if (key == "gauge_corrected") cfg.gauge_corrected = as_bool(value, p);
            else if (key == "n_fock") cfg.n_fock = as_int(value, p);
            else if (key == "m_dressed") cfg.m_dressed = as_int(value, p);
            else if (key == "cross_window_factor") cfg.cross_window_factor = as_number(value, p);
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            config_fail(p, e.what());
        }
    }
}

json model_to_json(const ModelConfig& c) {
    json j;
    j["omega_c"] = c.omega_c;
    j["omega_a"] = c.omega_a;
    j["omega_b"] = c.omega_b;
    j["omega_s"] = c.omega_s;
    j["g_a"] = c.g_a;
    j["g_b"] = c.g_b;
    j["g_s"] = c.g_s;
    j["phi_b"] = c.phi_b;
    j["kappa"] = c.kappa;
    j["gamma_a"] = c.gamma_a;
    j["gamma_b"] = c.gamma_b;
    j["gamma_s"] = c.gamma_s;
    j["p_inc"] = c.p_inc;
    j["bath_cav"] = to_string(c.bath_cav);
    j["bath_atom"] = to_string(c.bath_atom);
    j["bath_sensor"] = to_string(c.bath_sensor);
    j["gauge"] = to_string(c.gauge);
    j["model"] = to_string(c.model);
    j["gauge_corrected"] = c.gauge_corrected;
    j["n_fock"] = c.n_fock;
    j["m_dressed"] = c.m_dressed;
    j["cross_window_factor"] = c.cross_window_factor;
    return j;
}

std::vector<OutputKind> parse_outputs(const json& j, const std::string& path) {
    if (!j.is_array()) config_fail(path, "expected an array of output kinds");
    std::vector<OutputKind> out;
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(output_kind_from_string(as_string(j[i], path + "[" + std::to_string(i) + "]")));
    return out;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) config_fail("config", "top level must be an object");

    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "model") {
            apply_model_overrides(cfg.model, value, "model");
        } else if (key == "g_s_ratio") {
            cfg.g_s_ratio = as_number(value, "g_s_ratio");
        } else if (key == "outputs") {
            cfg.point_outputs = parse_outputs(value, "outputs");
        } else if (key == "spectrum") {
            if (!value.is_object()) config_fail("spectrum", "expected an object");
            for (const auto& [sk, sv] : value.items()) {
                const std::string p = "spectrum." + sk;
                if (sk == "omega_min") cfg.spectrum.omega_min = as_number(sv, p);
                else if (sk == "omega_max") cfg.spectrum.omega_max = as_number(sv, p);
                else if (sk == "n_points") cfg.spectrum.n_points = as_int(sv, p);
                else if (sk == "normalize") cfg.spectrum.normalize = as_bool(sv, p);
                else config_fail(p, "unknown spectrum field");
            }
        } else if (key == "sweeps") {
            if (!value.is_array()) config_fail("sweeps", "expected an array");
            for (std::size_t i = 0; i < value.size(); ++i) {
                const std::string p = "sweeps[" + std::to_string(i) + "]";
                const json& sj = value[i];
                if (!sj.is_object()) config_fail(p, "expected an object");
                SweepSpec spec;
                for (const auto& [sk, sv] : sj.items()) {
                    const std::string sp = p + "." + sk;
                    if (sk == "target") spec.target = sweep_target_from_string(as_string(sv, sp));
                    else if (sk == "start") spec.start = as_number(sv, sp);
                    else if (sk == "stop") spec.stop = as_number(sv, sp);
                    else if (sk == "n_points") spec.n_points = as_int(sv, sp);
                    else if (sk == "outputs") spec.outputs = parse_outputs(sv, sp);
                    else config_fail(sp, "unknown sweep field");
                }
                if (spec.target == SweepTarget::Point) config_fail(p + ".target", "missing");
                if (spec.n_points < 2) config_fail(p + ".n_points", "must be >= 2");
                if (spec.start < 0.0 || spec.stop < 0.0)
                    config_fail(p, "sweep values must be >= 0");
                if (spec.target == SweepTarget::PhiB && (spec.start > 1.0 || spec.stop > 1.0))
                    config_fail(p, "phi_b sweeps live in [0, 1]");
                cfg.sweeps.push_back(std::move(spec));
            }
        } else if (key == "variants") {
            if (!value.is_array()) config_fail("variants", "expected an array");
            for (std::size_t i = 0; i < value.size(); ++i) {
                const std::string p = "variants[" + std::to_string(i) + "]";
                const json& vj = value[i];
                if (!vj.is_object()) config_fail(p, "expected an object");
                Variant v;
                json overrides = json::object();
                for (const auto& [vk, vv] : vj.items()) {
                    if (vk == "name") v.name = as_string(vv, p + ".name");
                    else if (vk == "outputs") v.outputs = parse_outputs(vv, p + ".outputs");
                    else overrides[vk] = vv;
                }
                if (v.name.empty()) config_fail(p + ".name", "must be non-empty");
                ModelConfig probe = cfg.model;  // validate override keys early
                apply_model_overrides(probe, overrides, p);
                v.overrides_json = overrides.dump();
                cfg.variants.push_back(std::move(v));
            }
        } else {
            config_fail(key, "unknown top-level field");
        }
    }
    if (cfg.variants.empty()) cfg.variants.push_back(Variant{});
    if (cfg.sweeps.empty() && cfg.point_outputs.empty())
        config_fail("config", "no sweeps and no point outputs requested");
    for (std::size_t i = 0; i < cfg.sweeps.size(); ++i) {
        bool any = !cfg.sweeps[i].outputs.empty();
        for (const auto& v : cfg.variants) any = any || !v.outputs.empty();
        if (!any)
            config_fail("sweeps[" + std::to_string(i) + "].outputs", "no outputs requested");
    }
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("config: cannot open " + file.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_run_config(text);
}

std::string canonical_config_json(const RunConfig& cfg) {
    json j;
    j["model"] = model_to_json(cfg.model);
    j["g_s_ratio"] = cfg.g_s_ratio;
    j["spectrum"] = {{"omega_min", cfg.spectrum.omega_min},
                     {"omega_max", cfg.spectrum.omega_max},
                     {"n_points", cfg.spectrum.n_points},
                     {"normalize", cfg.spectrum.normalize}};
    j["sweeps"] = json::array();
    for (const auto& s : cfg.sweeps) {
        json sj = {{"target", to_string(s.target)},
                   {"start", s.start},
                   {"stop", s.stop},
                   {"n_points", s.n_points}};
        sj["outputs"] = json::array();
        for (auto k : s.outputs) sj["outputs"].push_back(to_string(k));
        j["sweeps"].push_back(sj);
    }
    j["outputs"] = json::array();
    for (auto k : cfg.point_outputs) j["outputs"].push_back(to_string(k));
    j["variants"] = json::array();
    for (const auto& v : cfg.variants) {
        json vj = {{"name", v.name}, {"overrides", json::parse(v.overrides_json)}};
        vj["outputs"] = json::array();
        for (auto k : v.outputs) vj["outputs"].push_back(to_string(k));
        j["variants"].push_back(vj);
    }
    return j.dump();
}

std::uint64_t config_hash(const RunConfig& cfg) {
    const std::string s = canonical_config_json(cfg);
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// ---------------------------------------------------------------- execution

namespace {

struct JobKey {
    int variant = 0;
    int sweep = 0;  // -1 for the single-point pseudo-sweep
    int point = 0;
    double value = 0.0;
};

struct JobData {
    bool failed = false;
    std::string error;
    double seconds = 0.0;
    std::optional<Eigen::VectorXd> energies;
    std::optional<ParityTable> parity;
    std::optional<std::vector<FluxEntry>> flux;
    std::optional<SpectrumResult> qrt;
    std::optional<std::vector<FluxEntry>> qrt_flux;  // annotations for the sidecar
    std::optional<SpectrumResult> saa;               // full curve
    std::optional<double> saa_point;                 // omega_s-swept single value
};

ModelConfig resolve_config(const RunConfig& run_cfg, const Variant& variant, SweepTarget target,
                           double value) {
    ModelConfig cfg = run_cfg.model;
    apply_model_overrides(cfg, json::parse(variant.overrides_json), "variants." + variant.name);
    switch (target) {
        case SweepTarget::Point: break;
        case SweepTarget::EtaJoint:
            cfg.g_a = value * cfg.omega_c;
            if (cfg.two_atom()) cfg.g_b = value * cfg.omega_c;
            break;
        case SweepTarget::EtaSingle: cfg.g_a = value * cfg.omega_c; break;
        case SweepTarget::OmegaB: cfg.omega_b = value * cfg.omega_c; break;
        case SweepTarget::GBMagnitude: cfg.g_b = value * cfg.omega_c; break;
        case SweepTarget::PhiB: cfg.phi_b = value; break;
        case SweepTarget::OmegaS: cfg.omega_s = value * cfg.omega_c; break;
    }
    if (run_cfg.g_s_ratio > 0.0) cfg.g_s = run_cfg.g_s_ratio * cfg.g_a;
    cfg.validate();
    return cfg;
}

std::vector<OutputKind> job_outputs(const RunConfig& rc, const Variant& v, int sweep_idx) {
    if (!v.outputs.empty()) return v.outputs;
    if (sweep_idx < 0) return rc.point_outputs;
    return rc.sweeps[sweep_idx].outputs;
}

void execute_job(const RunConfig& rc, const Variant& variant, SweepTarget target, double value,
                 const std::vector<OutputKind>& outputs, std::uint64_t hash, JobData& out) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const ModelConfig cfg = resolve_config(rc, variant, target, value);

        const bool needs_saa_point =
            target == SweepTarget::OmegaS &&
            std::count(outputs.begin(), outputs.end(), OutputKind::SpectrumSaa) > 0;
        const bool needs_model =
            std::count_if(outputs.begin(), outputs.end(), [&](OutputKind k) {
                return k != OutputKind::SpectrumSaa;
            }) > 0;

        std::optional<GaugeModel> model;
        std::optional<DressedBasis> basis;
        if (needs_model) {
            model = build_model(cfg);
            basis = diagonalize(*model, cfg.m_dressed);
        }

        for (OutputKind k : outputs) {
            switch (k) {
                case OutputKind::Eigenvalues:
                    out.energies = basis->energies;
                    break;
                case OutputKind::Parity:
                    out.parity = parity_table(*basis, *model);
                    break;
                case OutputKind::P2Table:
                    out.flux = photon_flux_table(*basis, *model);
                    break;
                case OutputKind::SpectrumQrt: {
                    const AssembledGme gme = assemble_liouvillian(*model, *basis);
                    const Matrix rho = steady_state(gme.liouvillian);
                    SpectrumResult s =
                        spectrum_qrt(gme.liouvillian, rho, gme.cav, rc.spectrum.grid());
                    s.gauge = to_string(cfg.gauge);
                    s.config_hash = hash;
                    if (rc.spectrum.normalize) s.normalize();
                    out.qrt = std::move(s);
                    out.qrt_flux = photon_flux_table(*basis, *model);
                    break;
                }
                case OutputKind::SpectrumSaa: {
                    if (cfg.two_atom())
                        throw ConfigError(
                            "spectrum_saa: the sensing-atom detector is defined for "
                            "single-atom models");
                    if (needs_saa_point) {
                        Eigen::VectorXd one(1);
                        one(0) = cfg.omega_s;
                        SaaOptions so;
                        so.warn_invasive = false;
                        SpectrumResult s = spectrum_saa(cfg, one, so);
                        if (!s.failed.empty())
                            throw NumericalError("spectrum_saa: steady state failed");
                        out.saa_point = s.intensity(0);
                    } else {
                        SpectrumResult s = spectrum_saa(cfg, rc.spectrum.grid());
                        s.config_hash = hash;
                        if (rc.spectrum.normalize) s.normalize();
                        out.saa = std::move(s);
                    }
                    break;
                }
            }
        }
    } catch (const std::exception& e) {
        out.failed = true;
        out.error = e.what();
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string hex16(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json spectrum_sidecar(const ModelConfig& cfg, const SpectrumResult& s, SweepTarget target,
                      double value, const std::vector<FluxEntry>* flux) {
    json j;
    j["method"] = s.method;
    j["gauge"] = s.gauge;
    j["config_hash"] = hex16(s.config_hash);
    j["model"] = model_to_json(cfg);
    j["sweep"] = {{"target", to_string(target)}, {"value", value}};
    j["clipped"] = s.clipped;
    json peaks = json::array();
    double smax = 0.0;
    for (Eigen::Index i = 0; i < s.intensity.size(); ++i)
        if (std::isfinite(s.intensity(i))) smax = std::max(smax, s.intensity(i));
    for (Eigen::Index i = 1; i + 1 < s.intensity.size(); ++i) {
        if (!(s.intensity(i) > s.intensity(i - 1) && s.intensity(i) > s.intensity(i + 1)))
            continue;
        if (s.intensity(i) < 0.02 * smax) continue;
        json peak = {{"omega", s.omega(i)}, {"intensity", s.intensity(i)}};
        if (flux) {
            const double window = std::max(0.02, 1.5 * cfg.kappa);
            const FluxEntry* best = nullptr;
            for (const auto& f : *flux)
                if (std::abs(f.omega - s.omega(i)) <
                    (best ? std::abs(best->omega - s.omega(i)) : window))
                    best = &f;
            if (best)
                peak["transition"] = {{"j", best->j},
                                      {"k", best->k},
                                      {"omega", best->omega},
                                      {"p2", best->p2},
                                      {"rate", best->rate}};
        }
        peaks.push_back(peak);
    }
    j["peaks"] = peaks;
    return j;
}

}  // namespace

RunManifest run(const RunConfig& cfg, const RunOptions& opts) {
    const std::uint64_t hash = config_hash(cfg);
    RunManifest manifest;
    manifest.hash = hash;
    manifest.version = kVersion;
    manifest.run_dir = opts.out_root / hex16(hash);
    std::filesystem::create_directories(manifest.run_dir);

    // job list: (variant, sweep, point) in deterministic order
    struct PendingJob {
        JobKey key;
        SweepTarget target;
        std::vector<OutputKind> outputs;
        std::string name;
    };
    std::vector<PendingJob> pending;
    const int n_sweeps = static_cast<int>(cfg.sweeps.size());
    for (int v = 0; v < static_cast<int>(cfg.variants.size()); ++v) {
        if (n_sweeps == 0) {
            const auto outs = job_outputs(cfg, cfg.variants[v], -1);
            if (!outs.empty())
                pending.push_back({{v, -1, 0, 0.0},
                                   SweepTarget::Point,
                                   outs,
                                   cfg.variants[v].name + "/point"});
            continue;
        }
        for (int s = 0; s < n_sweeps; ++s) {
            const auto outs = job_outputs(cfg, cfg.variants[v], s);
            if (outs.empty()) continue;
            const auto vals = cfg.sweeps[s].values();
            for (int p = 0; p < static_cast<int>(vals.size()); ++p)
                pending.push_back({{v, s, p, vals[p]},
                                   cfg.sweeps[s].target,
                                   outs,
                                   cfg.variants[v].name + "/" +
                                       to_string(cfg.sweeps[s].target) + "[" +
                                       std::to_string(p) + "]"});
        }
    }

    std::vector<JobData> results(pending.size());
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= pending.size()) return;
            execute_job(cfg, cfg.variants[pending[i].key.variant], pending[i].target,
                        pending[i].key.value, pending[i].outputs, hash, results[i]);
        }
    };
    const int workers = std::max(1, opts.workers);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }

    // ------------------------------------------------ deterministic merge
    auto group_stub = [&](int v, int s) {
        const std::string target = s < 0 ? "point" : to_string(cfg.sweeps[s].target);
        return cfg.variants[v].name + "__" + target;
    };

    std::map<std::string, CsvTable> tables;
    auto table_for = [&](const std::string& name, std::vector<std::string> header) -> CsvTable& {
        auto it = tables.find(name);
        if (it == tables.end()) {
            CsvTable t;
            t.header = std::move(header);
            it = tables.emplace(name, std::move(t)).first;
        }
        return it->second;
    };

    for (std::size_t i = 0; i < pending.size(); ++i) {
        const auto& job = pending[i];
        const auto& data = results[i];
        JobRecord rec;
        rec.name = job.name;
        rec.seconds = data.seconds;
        rec.status = data.failed ? "failed" : "ok";
        rec.error = data.error;
        const std::string stub = group_stub(job.key.variant, job.key.sweep);
        const std::string sval = format_double(job.key.value);
        if (!data.failed) {
            if (data.energies) {
                auto& t = table_for(stub + "__eigenvalues.csv",
                                    {"sweep_value", "state_index", "energy"});
                for (Eigen::Index n = 0; n < data.energies->size(); ++n)
                    t.rows.push_back({sval, std::to_string(n), format_double((*data.energies)(n))});
                rec.outputs.push_back(stub + "__eigenvalues.csv");
            }
            if (data.parity) {
                auto& t = table_for(stub + "__parity.csv",
                                    {"sweep_value", "state_index", "parity", "label", "mixed"});
                for (Eigen::Index n = 0; n < data.parity->value.size(); ++n)
                    t.rows.push_back({sval, std::to_string(n),
                                      format_double(data.parity->value(n)),
                                      data.parity->label[n] > 0 ? "even" : "odd",
                                      data.parity->mixed[n] ? "1" : "0"});
                rec.outputs.push_back(stub + "__parity.csv");
            }
            if (data.flux) {
                auto& t = table_for(stub + "__p2_table.csv",
                                    {"sweep_value", "j", "k", "omega", "p2", "rate"});
                for (const auto& f : *data.flux)
                    t.rows.push_back({sval, std::to_string(f.j), std::to_string(f.k),
                                      format_double(f.omega), format_double(f.p2),
                                      format_double(f.rate)});
                rec.outputs.push_back(stub + "__p2_table.csv");
            }
            auto emit_spectrum = [&](const SpectrumResult& s, const char* kind,
                                     const std::vector<FluxEntry>* flux) {
                char suffix[32];
                std::snprintf(suffix, sizeof(suffix), "__p%03d", job.key.point);
                const std::string base = stub + "__" + kind + suffix;
                CsvTable t;
                t.header = {"omega_over_omega_c", "intensity"};
                for (Eigen::Index n = 0; n < s.omega.size(); ++n)
                    t.rows.push_back({format_double(s.omega(n)), format_double(s.intensity(n))});
                write_csv(manifest.run_dir / (base + ".csv"), t);
                const ModelConfig cfgp = resolve_config(cfg, cfg.variants[job.key.variant],
                                                        job.target, job.key.value);
                std::ofstream side(manifest.run_dir / (base + ".json"));
                side << spectrum_sidecar(cfgp, s, job.target, job.key.value, flux).dump(2)
                     << "\n";
                rec.outputs.push_back(base + ".csv");
                // merged long-format fan
                auto& merged = table_for(stub + "__" + kind + ".csv",
                                         {"sweep_value", "omega_over_omega_c", "intensity"});
                for (Eigen::Index n = 0; n < s.omega.size(); ++n)
                    merged.rows.push_back({sval, format_double(s.omega(n)),
                                           format_double(s.intensity(n))});
            };
            if (data.qrt)
                emit_spectrum(*data.qrt, "spectrum_qrt",
                              data.qrt_flux ? &*data.qrt_flux : nullptr);
            if (data.saa) emit_spectrum(*data.saa, "spectrum_saa", nullptr);
            if (data.saa_point) {
                auto& t = table_for(stub + "__spectrum_saa.csv",
                                    {"omega_s_over_omega_c", "intensity"});
                t.rows.push_back({sval, format_double(*data.saa_point)});
                rec.outputs.push_back(stub + "__spectrum_saa.csv");
            }
        }
        manifest.jobs.push_back(std::move(rec));
    }

    for (const auto& [name, table] : tables) write_csv(manifest.run_dir / name, table);

    manifest.ok = std::all_of(manifest.jobs.begin(), manifest.jobs.end(),
                              [](const JobRecord& r) { return r.status == "ok"; });

    json mj;
    mj["config_hash"] = hex16(hash);
    mj["version"] = manifest.version;
    mj["config"] = json::parse(canonical_config_json(cfg));
    mj["ok"] = manifest.ok;
    mj["jobs"] = json::array();
    for (const auto& r : manifest.jobs) {
        json rj = {{"name", r.name},
                   {"status", r.status},
                   {"seconds", r.seconds},
                   {"outputs", r.outputs}};
        if (!r.error.empty()) rj["error"] = r.error;
        mj["jobs"].push_back(rj);
    }
    std::ofstream mout(manifest.run_dir / "manifest.json");
    mout << mj.dump(2) << "\n";
    return manifest;
}

RunManifest run(const std::filesystem::path& config_file, const RunOptions& opts) {
    return run(load_run_config(config_file), opts);
}

CompareReport compare_goldens(const std::filesystem::path& run_dir,
                              const std::filesystem::path& golden_dir,
                              const std::map<std::string, double>& tolerances,
                              double default_tol) {
    CompareReport report;
    if (!std::filesystem::is_directory(golden_dir))
        throw ConfigError("compare: golden dir " + golden_dir.string() + " does not exist");
    if (!std::filesystem::is_directory(run_dir))
        throw ConfigError("compare: run dir " + run_dir.string() + " does not exist");

    std::vector<std::filesystem::path> goldens;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(golden_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".csv")
            goldens.push_back(std::filesystem::relative(entry.path(), golden_dir));
    std::sort(goldens.begin(), goldens.end());

    bool ok = true;
    for (const auto& rel : goldens) {
        CompareEntry e;
        e.file = rel.string();
        e.tol = default_tol;
        for (const auto& [pattern, tol] : tolerances)
            if (e.file.find(pattern) != std::string::npos) {
                e.tol = tol;
                break;
            }
        const auto run_file = run_dir / rel;
        if (!std::filesystem::exists(run_file)) {
            e.status = "missing";
            ok = false;
        } else {
            const CsvTable a = read_csv(run_file);
            const CsvTable b = read_csv(golden_dir / rel);
            e.max_rel = compare_tables(a, b, e.tol, &e.detail);
            e.status = e.max_rel <= e.tol ? "ok" : "mismatch";
            if (e.status != "ok") ok = false;
        }
        report.entries.push_back(std::move(e));
    }
    report.ok = ok;
    return report;
}

// ---------------------------------------------------------------- recipes

namespace {

std::vector<Recipe> make_recipes() {
    std::vector<Recipe> r;
    const char* kUscRates =
        R"("kappa": 0.125, "gamma_a": 0.0025, "gamma_b": 0.0025, "p_inc": 0.005)";

    r.push_back({"fig2a", "QRM vs JCM eigenvalue fan over the joint coupling",
                 R"({
  "model": {"model": "qrm", "gauge": "dipole", "n_fock": 200, "m_dressed": 10, "g_a": 0.5},
  "sweeps": [{"target": "eta_joint", "start": 0.0, "stop": 1.0, "n_points": 50,
              "outputs": ["eigenvalues"]}],
  "variants": [{"name": "qrm", "model": "qrm"}, {"name": "jcm", "model": "jcm"}]
})"});
    r.push_back({"fig2b", "Sensor-atom eigenvalue fan, sensor resonant with the cavity",
                 R"({
  "model": {"model": "saa", "gauge": "dipole", "n_fock": 150, "m_dressed": 14,
            "omega_s": 1.0, "g_a": 0.5, "g_s": 0.0005},
  "g_s_ratio": 0.001,
  "sweeps": [{"target": "eta_joint", "start": 0.01, "stop": 1.0, "n_points": 50,
              "outputs": ["eigenvalues"]}],
  "variants": [{"name": "saa", "model": "saa"}, {"name": "saa_rwa", "model": "saa_rwa"}]
})"});
    r.push_back({"fig2c", "Sensor-atom eigenvalue fan, sensor at half the cavity frequency",
                 R"({
  "model": {"model": "saa", "gauge": "dipole", "n_fock": 150, "m_dressed": 14,
            "omega_s": 0.5, "g_a": 0.5, "g_s": 0.0005},
  "g_s_ratio": 0.001,
  "sweeps": [{"target": "eta_joint", "start": 0.01, "stop": 1.0, "n_points": 50,
              "outputs": ["eigenvalues"]}],
  "variants": [{"name": "saa", "model": "saa"}, {"name": "saa_rwa", "model": "saa_rwa"}]
})"});

    auto fig3 = [&](const char* name, const char* cav, const char* atom, const char* desc) {
        std::string cfg = std::string(R"({
  "model": {"model": "qrm", "gauge": "dipole", "n_fock": 150, "m_dressed": 12,
            "g_a": 0.5, "g_s": 0.0005, "gamma_s": 0.0025, )") +
                          kUscRates + R"(, "bath_cav": ")" + cav + R"(", "bath_atom": ")" +
                          atom + R"(", "bath_sensor": ")" + atom + R"("},
  "outputs": ["spectrum_qrt"],
  "spectrum": {"omega_min": 0.05, "omega_max": 2.2, "n_points": 400, "normalize": true},
  "variants": [
    {"name": "qrt", "model": "qrm", "outputs": ["spectrum_qrt"]},
    {"name": "qrt_naive", "model": "qrm", "gauge_corrected": false, "outputs": ["spectrum_qrt"]},
    {"name": "saa", "model": "saa", "outputs": ["spectrum_saa"]},
    {"name": "saa_naive", "model": "saa", "gauge_corrected": false, "outputs": ["spectrum_saa"]}
  ]
})";
        r.push_back({name, desc, cfg});
    };
    fig3("fig3a", "flat", "flat", "QRM spectra, flat cavity and flat atomic baths (QRT + SAA)");
    fig3("fig3b", "flat", "ohmic", "QRM spectra, flat cavity and Ohmic atomic baths");
    fig3("fig3c", "ohmic", "flat", "QRM spectra, Ohmic cavity and flat atomic baths");
    fig3("fig3d", "ohmic", "ohmic", "QRM spectra, Ohmic cavity and Ohmic atomic baths");

    r.push_back({"fig4a", "GDM eigenvalue fan over the joint coupling (omega_b = omega_c/2)",
                 R"({
  "model": {"model": "gdm", "gauge": "dipole", "n_fock": 200, "m_dressed": 7,
            "omega_b": 0.5, "g_a": 0.5, "g_b": 0.5},
  "sweeps": [{"target": "eta_joint", "start": 0.01, "stop": 1.0, "n_points": 50,
              "outputs": ["eigenvalues"]}],
  "variants": [{"name": "gdm", "model": "gdm"}, {"name": "gdm_rwa", "model": "gdm_rwa"}]
})"});
    r.push_back({"fig4b", "GDM eigenvalue fan over the coupling phase",
                 R"({
  "model": {"model": "gdm", "gauge": "dipole", "n_fock": 200, "m_dressed": 7,
            "omega_b": 0.5, "g_a": 0.5, "g_b": 0.5},
  "sweeps": [{"target": "phi_b", "start": 0.0, "stop": 1.0, "n_points": 51,
              "outputs": ["eigenvalues"]}]
})"});
    r.push_back({"fig5", "GDM parity, eigenvalues and quadrature elements vs omega_b",
                 std::string(R"({
  "model": {"model": "gdm", "gauge": "dipole", "n_fock": 200, "m_dressed": 7,
            "g_a": 0.5, "g_b": 0.5, )") +
                     kUscRates + R"(},
  "sweeps": [{"target": "omega_b", "start": 0.25, "stop": 2.0, "n_points": 50,
              "outputs": ["eigenvalues", "parity", "p2_table"]}]
})"});
    r.push_back({"fig6a", "GDM spectra vs omega_b in all four gauge/correction variants",
                 std::string(R"({
  "model": {"model": "gdm", "n_fock": 200, "m_dressed": 12, "g_a": 0.5, "g_b": 0.5, )") +
                     kUscRates + R"(},
  "sweeps": [{"target": "omega_b", "start": 0.1, "stop": 2.0, "n_points": 50,
              "outputs": ["spectrum_qrt"]}],
  "spectrum": {"normalize": true},
  "variants": [
    {"name": "dipole", "gauge": "dipole"},
    {"name": "coulomb", "gauge": "coulomb"},
    {"name": "dipole_naive", "gauge": "dipole", "gauge_corrected": false},
    {"name": "coulomb_naive", "gauge": "coulomb", "gauge_corrected": false}
  ]
})"});
    r.push_back({"fig6b", "GDM spectra at omega_b in {0.5, 1.0, 1.5} plus the one-atom reference",
                 std::string(R"({
  "model": {"model": "gdm", "gauge": "dipole", "n_fock": 200, "m_dressed": 12,
            "g_a": 0.5, "g_b": 0.5, )") +
                     kUscRates + R"(},
  "sweeps": [{"target": "omega_b", "start": 0.5, "stop": 1.5, "n_points": 3,
              "outputs": ["spectrum_qrt"]}],
  "variants": [{"name": "gdm", "model": "gdm"},
               {"name": "qrm_ref", "model": "qrm", "gamma_b": 0.0}]
})"});
    {
        std::string cfg = std::string(R"({
  "model": {"model": "gdm", "gauge": "dipole", "n_fock": 200, "m_dressed": 12,
            "g_a": 0.5, "g_b": 0.5, )") +
                          kUscRates + R"(},
  "sweeps": [{"target": "omega_b", "start": 0.25, "stop": 2.0, "n_points": 40,
              "outputs": ["spectrum_qrt"]}],
  "variants": [)";
        for (int i = 1; i <= 10; ++i) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "%s{\"name\": \"eta_0p%d\", \"g_a\": %.2f, \"g_b\": %.2f}",
                          i > 1 ? ",\n               " : "", i, 0.1 * i, 0.1 * i);
            cfg += buf;
        }
        cfg += "]\n}";
        r.push_back({"fig7", "GDM spectra vs omega_b for eta from 0.1 to 1.0", cfg});
    }
    r.push_back({"fig8", "GDM spectra vs the second coupling magnitude at selected omega_b",
                 std::string(R"({
  "model": {"model": "gdm", "gauge": "dipole", "n_fock": 200, "m_dressed": 12,
            "g_a": 0.5, "g_b": 0.5, )") +
                     kUscRates + R"(},
  "sweeps": [{"target": "g_b_magnitude", "start": 0.0, "stop": 0.5, "n_points": 26,
              "outputs": ["spectrum_qrt"]}],
  "variants": [{"name": "wb_0p5", "omega_b": 0.5},
               {"name": "wb_1p0", "omega_b": 1.0},
               {"name": "wb_1p5", "omega_b": 1.5}]
})"});
    r.push_back({"fig9", "GDM spectra vs the coupling phase at selected omega_b",
                 std::string(R"({
  "model": {"model": "gdm", "gauge": "dipole", "n_fock": 200, "m_dressed": 12,
            "g_a": 0.5, "g_b": 0.5, )") +
                     kUscRates + R"(},
  "sweeps": [{"target": "phi_b", "start": 0.0, "stop": 1.0, "n_points": 26,
              "outputs": ["spectrum_qrt"]}],
  "variants": [{"name": "wb_0p5", "omega_b": 0.5}, {"name": "wb_1p5", "omega_b": 1.5}]
})"});
    return r;
}

}  // namespace

const std::vector<Recipe>& built_in_recipes() {
    static const std::vector<Recipe> recipes = make_recipes();
    return recipes;
}

const Recipe* find_recipe(const std::string& name) {
    for (const auto& r : built_in_recipes())
        if (r.name == name) return &r;
    return nullptr;
}

}  // namespace uscqed
