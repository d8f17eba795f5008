#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "funcspace.hpp"
#include "nonlocal.hpp"

namespace nlh {

// One empirical-constant experiment: moduli, kernel, grid, corpus, sweeps.
struct ExperimentConfig {
    std::string name;
    Modulus psi;
    BernsteinSpec bernstein;
    KernelCoefficient coefficient = KernelCoefficient::constant(1.0);
    int n = 2048;
    double period = 2.0 * PI;
    int corpus_size = 32;
    uint64_t seed = 1;
    double band_fraction = 0.5; // relative to the Nyquist of n
    std::vector<double> r_list = {0.25, 0.125, 0.0625};
    Point x0{PI, 0.0};
    int threads = 1;
    double t = 1.0;      // time for the heatkernel / simulate subcommands
    int samples = 100000; // Monte Carlo draws for simulate

    Modulus phipsi() const; // product varphi * psi
    uint64_t config_hash() const;
};

struct RatioReport {
    std::vector<double> ratios; // per corpus member, seed order
    double C_hat = 0.0;
    std::map<int, double> by_resolution; // n -> C_hat (same corpus band)
    uint64_t config_hash = 0;
    std::vector<uint64_t> seeds;
};

// ||u||_{C^{phi psi}} / (||u||_0 + ||f||_{C^psi}) for u = solve(f) over a
// mean-zero C^psi corpus, constant-coefficient symmetric kernel.
// Guards: I_psi in (0,1); I_{phi psi} avoids the 0.02 bands around 1, 2 and
// stays below 3.
RatioReport schauder_ratio(const ExperimentConfig &cfg);

// Same ratios computed through an externally supplied symbol (used for the
// cross-implementation consistency check).
RatioReport schauder_ratio_with_symbol(const ExperimentConfig &cfg,
                                       const std::vector<double> &symbol);

// ||L u||_{C^psi} / ||u||_{C^{phi psi}} over a C^{phi psi} corpus.
// Guard: max(M_phi, M_psi) < m_phi + m_psi; h-symmetry when 1 in I_varphi.
RatioReport mapping_ratio(const ExperimentConfig &cfg);

// ||R f||_{C^{phi psi}} / (||f||_{C^psi} + ||R f||_0) with R = -solve.
RatioReport potential_regularity(const ExperimentConfig &cfg);

struct PerturbationReport {
    std::vector<double> r_values;
    std::vector<double> b_coefficient; // max ||B v||_psi / ||v||_{phi psi}
    std::vector<double> h_coefficient; // max ||H||_psi / ||u||_{phi psi}
    double freezing_residual = 0.0;    // relative sup residual, one combo
    uint64_t config_hash = 0;
    std::vector<uint64_t> seeds;
};

// Localization sweep: v = u * eta_{r,x0}; reports the empirical phi-psi
// coefficient of the B-bound per r (expected to decay with r) and the
// H-norm ratios; re-runs the product-rule residual check.
PerturbationReport perturbation_suite(const ExperimentConfig &cfg);

} // namespace nlh
