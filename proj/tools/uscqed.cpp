// uscqed — run parameter sweeps, compare against goldens, list bundled recipes.
//
// Exit codes: 0 success, 1 failure (failed jobs or golden mismatch), 2 config error.

#include "uscqed/sweep.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

int worker_count_from_env() {
    if (const char* env = std::getenv("USCQED_WORKERS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 1;
}

int cmd_run(const std::string& config_arg, const std::string& out_dir, int workers) {
    uscqed::RunConfig cfg;
    if (std::filesystem::exists(config_arg)) {
        cfg = uscqed::load_run_config(config_arg);
    } else if (const uscqed::Recipe* recipe = uscqed::find_recipe(config_arg)) {
        cfg = uscqed::parse_run_config(recipe->config_json);
    } else {
        throw uscqed::ConfigError("config: '" + config_arg +
                                  "' is neither a file nor a bundled recipe name");
    }
    uscqed::RunOptions opts;
    opts.out_root = out_dir;
    opts.workers = workers;
    const uscqed::RunManifest manifest = uscqed::run(cfg, opts);
    std::cout << "run dir: " << manifest.run_dir.string() << "\n";
    int failed = 0;
    for (const auto& job : manifest.jobs) {
        if (job.status != "ok") {
            ++failed;
            std::cout << "  FAILED " << job.name << ": " << job.error << "\n";
        }
    }
    std::cout << manifest.jobs.size() - failed << "/" << manifest.jobs.size()
              << " jobs ok\n";
    return manifest.ok ? 0 : 1;
}

int cmd_compare(const std::string& run_dir, const std::string& golden_dir,
                const std::vector<std::string>& tol_args, double default_tol) {
    std::map<std::string, double> tolerances;
    for (const auto& arg : tol_args) {
        const auto eq = arg.find('=');
        if (eq == std::string::npos)
            throw uscqed::ConfigError("--tol expects NAME=VALUE, got '" + arg + "'");
        tolerances[arg.substr(0, eq)] = std::stod(arg.substr(eq + 1));
    }
    const auto report = uscqed::compare_goldens(run_dir, golden_dir, tolerances, default_tol);
    for (const auto& e : report.entries) {
        std::cout << (e.status == "ok" ? "PASS " : "FAIL ") << e.file;
        if (e.status == "missing")
            std::cout << "  (missing from run)";
        else
            std::cout << "  max_rel=" << e.max_rel << " tol=" << e.tol;
        if (!e.detail.empty() && e.status == "mismatch") std::cout << "  [" << e.detail << "]";
        std::cout << "\n";
    }
    std::cout << (report.ok ? "compare: OK" : "compare: MISMATCH") << "\n";
    return report.ok ? 0 : 1;
}

int cmd_list_recipes() {
    for (const auto& r : uscqed::built_in_recipes())
        std::cout << r.name << "  -  " << r.description << "\n";
    return 0;
}

int cmd_write_recipe(const std::string& name, const std::string& out) {
    const uscqed::Recipe* r = uscqed::find_recipe(name);
    if (!r) throw uscqed::ConfigError("unknown recipe '" + name + "'");
    if (out.empty() || out == "-") {
        std::cout << r->config_json << "\n";
    } else {
        std::ofstream f(out);
        f << r->config_json << "\n";
        std::cout << "wrote " << out << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gauge-invariant open-system cavity QED in the ultrastrong-coupling regime"};
    app.require_subcommand(1);

    std::string config_arg, out_dir = "runs";
    int workers = worker_count_from_env();
    auto* run_cmd = app.add_subcommand("run", "Execute a sweep config (file or recipe name)");
    run_cmd->add_option("config", config_arg, "Config file path or recipe name")->required();
    run_cmd->add_option("--out", out_dir, "Output root directory");
    run_cmd->add_option("--workers", workers, "Parallel jobs (env: USCQED_WORKERS)");

    std::string run_dir, golden_dir;
    std::vector<std::string> tol_args;
    double default_tol = 1e-9;
    auto* cmp_cmd = app.add_subcommand("compare", "Compare a run directory against goldens");
    cmp_cmd->add_option("run", run_dir, "Run directory")->required();
    cmp_cmd->add_option("golden", golden_dir, "Golden directory")->required();
    cmp_cmd->add_option("--tol", tol_args, "Per-file-pattern tolerance NAME=VALUE");
    cmp_cmd->add_option("--default-tol", default_tol, "Fallback relative tolerance");

    auto* list_cmd = app.add_subcommand("list-recipes", "List bundled figure recipes");

    std::string recipe_name, recipe_out;
    auto* write_cmd = app.add_subcommand("write-recipe", "Materialize a bundled recipe config");
    write_cmd->add_option("name", recipe_name, "Recipe name")->required();
    write_cmd->add_option("-o,--out", recipe_out, "Output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(config_arg, out_dir, workers);
        if (cmp_cmd->parsed()) return cmd_compare(run_dir, golden_dir, tol_args, default_tol);
        if (list_cmd->parsed()) return cmd_list_recipes();
        if (write_cmd->parsed()) return cmd_write_recipe(recipe_name, recipe_out);
    } catch (const uscqed::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
