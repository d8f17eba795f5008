#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nlholder/configio.hpp"
#include "nlholder/experiments.hpp"
#include "nlholder/heatkernel.hpp"
#include "nlholder/montecarlo.hpp"
#include "nlholder/nonlocal.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nlh;

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const fs::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw config_error("cannot write " + path.string());
    out << text;
}

void write_columns(const fs::path &path,
                   const std::vector<std::string> &header,
                   const std::vector<std::vector<double>> &cols) {
    std::string s;
    for (size_t c = 0; c < header.size(); ++c)
        s += (c ? "," : "") + header[c];
    s += "\n";
    size_t rows = cols.empty() ? 0 : cols[0].size();
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < cols.size(); ++c)
            s += (c ? "," : "") + g17(cols[c][r]);
        s += "\n";
    }
    write_text(path, s);
}

int effective_threads(const ExperimentConfig &cfg) {
    if (const char *env = std::getenv("NONLOCAL_THREADS"))
        return std::max(1, std::atoi(env));
    return std::max(1, cfg.threads);
}

void write_manifest(const fs::path &dir, const ExperimentConfig &cfg,
                    const std::string &subcommand) {
    json m;
    m["name"] = cfg.name;
    m["subcommand"] = subcommand;
    m["config_hash"] = hash_hex(cfg.config_hash());
    m["seed"] = cfg.seed;
    m["corpus_seeds"] = json::array();
    for (int i = 0; i < cfg.corpus_size; ++i)
        m["corpus_seeds"].push_back(cfg.seed + i);
    m["threads"] = effective_threads(cfg);
    m["versions"] = {{"artifact", "1.0"}};
    write_text(dir / "manifest.json", m.dump(2) + "\n");
}

json ratio_report_json(const RatioReport &rep) {
    json r;
    r["config_hash"] = hash_hex(rep.config_hash);
    r["C_hat"] = rep.C_hat;
    r["ratios"] = rep.ratios;
    r["seeds"] = rep.seeds;
    for (auto &[n, c] : rep.by_resolution)
        r["by_resolution"][std::to_string(n)] = c;
    return r;
}

void write_ratio_outputs(const fs::path &dir, const RatioReport &rep) {
    write_text(dir / "report.json", ratio_report_json(rep).dump(2) + "\n");
    std::vector<double> idx(rep.ratios.size()), seeds(rep.ratios.size());
    for (size_t i = 0; i < rep.ratios.size(); ++i) {
        idx[i] = static_cast<double>(i);
        seeds[i] = static_cast<double>(rep.seeds[i]);
    }
    write_columns(dir / "ratios.csv", {"index", "seed", "ratio"},
                  {idx, seeds, rep.ratios});
    std::vector<double> ns, cs;
    for (auto &[n, c] : rep.by_resolution) {
        ns.push_back(n);
        cs.push_back(c);
    }
    write_columns(dir / "resolution.csv", {"n", "C_hat"}, {ns, cs});
}

void grid_csv(const fs::path &path, const std::vector<std::string> &names,
              const std::vector<const GridFunction *> &fns) {
    std::vector<std::string> header = {"x"};
    header.insert(header.end(), names.begin(), names.end());
    int n = fns[0]->n();
    std::vector<std::vector<double>> cols(1 + fns.size());
    for (int i = 0; i < n; ++i)
        cols[0].push_back(fns[0]->coord(i));
    for (size_t c = 0; c < fns.size(); ++c)
        cols[1 + c] = fns[c]->values();
    write_columns(path, header, cols);
}

void run_norms(const ExperimentConfig &cfg, const fs::path &dir) {
    GridFunction f = random_holder_sample(cfg.psi, cfg.seed, cfg.n, 1,
                                          cfg.period, cfg.band_fraction);
    HolderReport hr = holder_norm(f, cfg.psi);
    json r;
    r["config_hash"] = hash_hex(cfg.config_hash());
    r["norm"] = hr.norm;
    r["sup_norm"] = hr.sup_norm;
    r["deriv_sup_norms"] = hr.deriv_sup_norms;
    r["seminorm_first"] = hr.seminorm_first;
    r["seminorm_second"] = hr.seminorm_second;
    r["k"] = hr.k;
    write_text(dir / "report.json", r.dump(2) + "\n");
    grid_csv(dir / "sample.csv", {"f"}, {&f});
}

void run_symbol(const ExperimentConfig &cfg, const fs::path &dir) {
    SymbolTable st = subordinate_symbol(cfg.bernstein, 1, cfg.n, cfg.period);
    st.save_csv((dir / "symbol.csv").string());
    json r;
    r["config_hash"] = hash_hex(cfg.config_hash());
    r["n"] = st.n;
    r["period"] = st.period;
    write_text(dir / "report.json", r.dump(2) + "\n");
}

void run_apply(const ExperimentConfig &cfg, const fs::path &dir) {
    LevyKernel k{cfg.bernstein, 1, cfg.coefficient};
    OperatorSpec spec = OperatorSpec::make(k);
    GridFunction u = random_holder_sample(cfg.phipsi(), cfg.seed, cfg.n, 1,
                                          cfg.period, cfg.band_fraction);
    GridFunction lu = apply_L(spec, u);
    grid_csv(dir / "apply.csv", {"u", "Lu"}, {&u, &lu});
    json r;
    r["config_hash"] = hash_hex(cfg.config_hash());
    r["sup_Lu"] = lu.sup_norm();
    write_text(dir / "report.json", r.dump(2) + "\n");
}

void run_heatkernel(const ExperimentConfig &cfg, const fs::path &dir) {
    HeatKernelGrid q = density(cfg.bernstein, cfg.t, 1, cfg.n, cfg.period);
    grid_csv(dir / "heatkernel.csv", {"q"}, {&q.grid});
    json r;
    r["config_hash"] = hash_hex(cfg.config_hash());
    r["t"] = q.t;
    r["mass"] = q.grid.integral();
    r["spectral_cutoff"] = q.spectral_cutoff;
    write_text(dir / "report.json", r.dump(2) + "\n");
}

void run_solve(const ExperimentConfig &cfg, const fs::path &dir) {
    SymbolTable st = subordinate_symbol(cfg.bernstein, 1, cfg.n, cfg.period);
    GridFunction f = random_holder_sample(cfg.psi, cfg.seed, cfg.n, 1,
                                          cfg.period, cfg.band_fraction);
    GridFunction u = solve_constant(st, f);
    grid_csv(dir / "solve.csv", {"f", "u"}, {&f, &u});
    json r;
    r["config_hash"] = hash_hex(cfg.config_hash());
    r["sup_u"] = u.sup_norm();
    r["holder_ratio"] = holder_norm(u, cfg.phipsi()).norm /
                        (u.sup_norm() + holder_norm(f, cfg.psi).norm);
    write_text(dir / "report.json", r.dump(2) + "\n");
}

KsReport run_simulate(const ExperimentConfig &cfg, const fs::path &dir) {
    if (cfg.bernstein.family != "stable")
        throw config_error(
            "simulate: sampling requires a stable subordinator");
    double alpha = cfg.bernstein.alpha;
    HeatKernelGrid q = density(cfg.bernstein, cfg.t, 1, cfg.n, cfg.period);
    PathSample p = sample_sbm(alpha, cfg.t, cfg.samples, 1, cfg.seed);
    std::vector<double> xs(p.increments.size());
    for (size_t i = 0; i < xs.size(); ++i)
        xs[i] = p.increments[i][0];
    KsReport ks = ks_compare(xs, q);
    write_columns(dir / "samples.csv", {"x"}, {xs});
    json r;
    r["config_hash"] = hash_hex(cfg.config_hash());
    r["ks"] = ks.ks;
    r["clipped_fraction"] = ks.clipped_fraction;
    r["n_samples"] = ks.n_samples;
    write_text(dir / "report.json", r.dump(2) + "\n");
    return ks;
}

void write_perturbation_outputs(const fs::path &dir,
                                const PerturbationReport &rep) {
    json r;
    r["config_hash"] = hash_hex(rep.config_hash);
    r["r_values"] = rep.r_values;
    r["b_coefficient"] = rep.b_coefficient;
    r["h_coefficient"] = rep.h_coefficient;
    r["freezing_residual"] = rep.freezing_residual;
    r["seeds"] = rep.seeds;
    write_text(dir / "report.json", r.dump(2) + "\n");
    write_columns(dir / "decay.csv", {"r", "b_coefficient", "h_coefficient"},
                  {rep.r_values, rep.b_coefficient, rep.h_coefficient});
}

// Stability gates applied during verify-all; mirror the suite-level
// acceptance bars.
bool verify_one(const ExperimentConfig &cfg, const fs::path &dir,
                std::string &why) {
    auto prefix = [&](const char *p) { return cfg.name.rfind(p, 0) == 0; };
    if (prefix("schauder")) {
        RatioReport rep = schauder_ratio(cfg);
        write_ratio_outputs(dir, rep);
        double lo = rep.by_resolution.begin()->second;
        double hi = rep.by_resolution.rbegin()->second;
        if (std::abs(hi - lo) / hi >= 0.10) {
            why = "schauder C_hat drifts >= 10% under resolution halving";
            return false;
        }
        return true;
    }
    if (prefix("mapping")) {
        RatioReport rep = mapping_ratio(cfg);
        write_ratio_outputs(dir, rep);
        double lo = rep.by_resolution.begin()->second;
        double hi = rep.by_resolution.rbegin()->second;
        if (std::abs(hi - lo) / hi >= 0.10) {
            why = "mapping C_hat drifts >= 10% under resolution halving";
            return false;
        }
        return true;
    }
    if (prefix("perturbation")) {
        PerturbationReport rep = perturbation_suite(cfg);
        write_perturbation_outputs(dir, rep);
        for (size_t i = 1; i < rep.b_coefficient.size(); ++i)
            if (rep.b_coefficient[i] >= rep.b_coefficient[i - 1]) {
                why = "perturbation coefficient fails to decay with r";
                return false;
            }
        return true;
    }
    if (prefix("simulate")) {
        KsReport ks = run_simulate(cfg, dir);
        if (ks.ks > 0.02) {
            why = "simulate KS distance exceeds 0.02";
            return false;
        }
        return true;
    }
    why = "config name must start with schauder/mapping/perturbation/"
          "simulate";
    return false;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Generalized Holder spaces, nonlocal operators of "
                 "functional order, and empirical regularity estimates"};
    app.require_subcommand(1);

    std::string config_path, output_dir = "out", config_dir;
    std::vector<std::string> overrides;

    auto add_common = [&](CLI::App *sub, bool needs_config) {
        auto *opt = sub->add_option("--config", config_path, "JSON config");
        if (needs_config)
            opt->required();
        sub->add_option("--output-dir", output_dir, "output directory");
        sub->add_option("--set", overrides,
                        "dotted-path override, e.g. psi.alpha=0.7");
    };

    std::vector<std::pair<std::string, std::string>> single = {
        {"norms", "Holder norm report for a corpus sample"},
        {"symbol", "exact symbol table as CSV"},
        {"apply", "apply the nonlocal operator to a corpus sample"},
        {"heatkernel", "periodized transition density at time t"},
        {"solve", "spectral solve of the frozen equation"},
        {"simulate", "subordinate-Brownian samples and KS report"},
        {"schauder", "a priori estimate ratio sweep"},
        {"mapping", "operator mapping-bound ratio sweep"},
        {"perturbation", "localization decay sweep"}};
    for (const auto &[name, desc] : single)
        add_common(app.add_subcommand(name, desc), true);
    CLI::App *verify = app.add_subcommand(
        "verify-all", "run every config in a directory with stability gates");
    verify->add_option("--config-dir", config_dir, "directory of JSON configs")
        ->required();
    verify->add_option("--output-dir", output_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e) ? 1 : 0;
    }

    try {
        fs::create_directories(output_dir);
        if (verify->parsed()) {
            std::vector<fs::path> files;
            for (const auto &entry : fs::directory_iterator(config_dir))
                if (entry.path().extension() == ".json")
                    files.push_back(entry.path());
            std::sort(files.begin(), files.end());
            if (files.empty())
                throw config_error("verify-all: no .json configs in " +
                                   config_dir);
            bool all_ok = true;
            for (const fs::path &f : files) {
                ExperimentConfig cfg = load_experiment_config(f.string());
                fs::path dir = fs::path(output_dir) / cfg.name;
                fs::create_directories(dir);
                write_manifest(dir, cfg, "verify-all");
                std::string why;
                bool ok = verify_one(cfg, dir, why);
                std::cout << (ok ? "PASS " : "FAIL ") << cfg.name
                          << (ok ? "" : ": " + why) << "\n";
                all_ok = all_ok && ok;
            }
            return all_ok ? 0 : 3;
        }

        ExperimentConfig cfg = load_experiment_config(config_path, overrides);
        fs::path dir = output_dir;
        std::string sub = app.get_subcommands().front()->get_name();
        write_manifest(dir, cfg, sub);
        if (sub == "norms")
            run_norms(cfg, dir);
        else if (sub == "symbol")
            run_symbol(cfg, dir);
        else if (sub == "apply")
            run_apply(cfg, dir);
        else if (sub == "heatkernel")
            run_heatkernel(cfg, dir);
        else if (sub == "solve")
            run_solve(cfg, dir);
        else if (sub == "simulate")
            run_simulate(cfg, dir);
        else if (sub == "schauder")
            write_ratio_outputs(dir, schauder_ratio(cfg));
        else if (sub == "mapping")
            write_ratio_outputs(dir, mapping_ratio(cfg));
        else if (sub == "perturbation")
            write_perturbation_outputs(dir, perturbation_suite(cfg));
        return 0;
    } catch (const config_error &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const guard_error &e) {
        std::cerr << "guard violated: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
