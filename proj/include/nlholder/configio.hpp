#pragma once

#include <string>
#include <vector>

#include "experiments.hpp"

namespace nlh {

// JSON experiment config schema (all keys optional except name):
//   name            string
//   psi             {"family":"power","alpha":a} |
//                   {"family":"power_log","alpha":a,"beta":b}
//   bernstein       {"family":"stable","alpha":a} |
//                   {"family":"stable_log","alpha":a,"beta":b}
//   coefficient     {"family":"constant","value":c} |
//                   {"family":"cosine_x","amplitude":c}
//   n, corpus_size, seed, threads, samples   integers
//   period, band_fraction, x0, t             numbers
//   r_list          array of numbers
// Unknown keys are rejected. Overrides use dotted paths, e.g.
// "psi.alpha=0.7" or "n=1024"; values parse as JSON literals.
ExperimentConfig parse_experiment_config(
    const std::string &json_text,
    const std::vector<std::string> &overrides = {});

ExperimentConfig load_experiment_config(
    const std::string &path, const std::vector<std::string> &overrides = {});

std::string hash_hex(uint64_t h);

} // namespace nlh
