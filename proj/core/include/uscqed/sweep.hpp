// sweep.hpp — Config-driven parameter sweeps with persistence and golden comparison
#pragma once

#include "uscqed/spectra.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace uscqed {

enum class SweepTarget { Point, EtaJoint, EtaSingle, OmegaB, GBMagnitude, PhiB, OmegaS };
enum class OutputKind { Eigenvalues, Parity, P2Table, SpectrumQrt, SpectrumSaa };

const char* to_string(SweepTarget t);
const char* to_string(OutputKind k);
SweepTarget sweep_target_from_string(const std::string& s);
OutputKind output_kind_from_string(const std::string& s);

struct SweepSpec {
    SweepTarget target = SweepTarget::Point;
    double start = 0.0, stop = 0.0;
    int n_points = 1;
    std::vector<OutputKind> outputs;

    std::vector<double> values() const;
};

struct SpectrumGrid {
    double omega_min = 0.05, omega_max = 2.2;
    int n_points = 400;
    bool normalize = false;

    Eigen::VectorXd grid() const {
        return Eigen::VectorXd::LinSpaced(n_points, omega_min, omega_max);
    }
};

// A named model override applied on top of the base model config; every variant
// runs every sweep (its own `outputs`, when given, replace the sweep's).
struct Variant {
    std::string name = "model";
    std::string overrides_json = "{}";
    std::vector<OutputKind> outputs;  // empty: use the sweep's outputs
};

struct RunConfig {
    ModelConfig model;
    // When g_s_ratio > 0, g_s is re-derived as g_s_ratio * g_a after every sweep
    // assignment (sensor coupling tied to the primary coupling).
    double g_s_ratio = 0.0;
    std::vector<SweepSpec> sweeps;
    std::vector<OutputKind> point_outputs;  // used when sweeps is empty
    SpectrumGrid spectrum;
    std::vector<Variant> variants;          // defaults to one pass-through variant
};

RunConfig load_run_config(const std::filesystem::path& file);
RunConfig parse_run_config(const std::string& json_text);
std::string canonical_config_json(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);

struct JobRecord {
    std::string name;
    std::string status;  // "ok" | "failed"
    std::string error;
    double seconds = 0.0;
    std::vector<std::string> outputs;  // files this job contributed to
};

struct RunManifest {
    std::uint64_t hash = 0;
    std::string version;
    std::filesystem::path run_dir;
    std::vector<JobRecord> jobs;
    bool ok = false;
};

struct RunOptions {
    std::filesystem::path out_root = "runs";
    int workers = 1;
};

RunManifest run(const std::filesystem::path& config_file, const RunOptions& opts = {});
RunManifest run(const RunConfig& cfg, const RunOptions& opts = {});

struct CompareEntry {
    std::string file;
    std::string status;  // "ok" | "mismatch" | "missing"
    double max_rel = 0.0;
    double tol = 0.0;
    std::string detail;
};

struct CompareReport {
    std::vector<CompareEntry> entries;
    bool ok = false;
};

// Per-file relative comparison of every golden CSV against the run directory.
// Tolerances are matched by file-name substring (first match wins), e.g.
// {"spectrum": 1e-5}; everything else uses default_tol.
CompareReport compare_goldens(const std::filesystem::path& run_dir,
                              const std::filesystem::path& golden_dir,
                              const std::map<std::string, double>& tolerances = {},
                              double default_tol = 1e-9);

struct Recipe {
    std::string name;
    std::string description;
    std::string config_json;
};

const std::vector<Recipe>& built_in_recipes();
const Recipe* find_recipe(const std::string& name);

}  // namespace uscqed
