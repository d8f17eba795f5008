#include "nlholder/configio.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace nlh {

namespace {

using nlohmann::json;

double need_number(const json &j, const std::string &key) {
    if (!j.contains(key) || !j[key].is_number())
        throw config_error("config: missing numeric key '" + key + "'");
    return j[key].get<double>();
}

void check_keys(const json &j, const std::set<std::string> &allowed,
                const std::string &where) {
    for (auto &item : j.items())
        if (!allowed.count(item.key()))
            throw config_error("config: unknown key '" + item.key() +
                               "' in " + where);
}

Modulus modulus_from(const json &j, const std::string &where) {
    if (!j.is_object() || !j.contains("family"))
        throw config_error("config: " + where +
                           " must be an object with a 'family'");
    std::string fam = j["family"].get<std::string>();
    if (fam == "power") {
        check_keys(j, {"family", "alpha"}, where);
        return Modulus::power(need_number(j, "alpha"));
    }
    if (fam == "power_log") {
        check_keys(j, {"family", "alpha", "beta"}, where);
        return Modulus::power_log(need_number(j, "alpha"),
                                  need_number(j, "beta"));
    }
    throw config_error("config: unknown modulus family '" + fam + "' in " +
                       where);
}

BernsteinSpec bernstein_from(const json &j) {
    if (!j.is_object() || !j.contains("family"))
        throw config_error(
            "config: bernstein must be an object with a 'family'");
    std::string fam = j["family"].get<std::string>();
    if (fam == "stable") {
        check_keys(j, {"family", "alpha"}, "bernstein");
        return BernsteinSpec::stable(need_number(j, "alpha"));
    }
    if (fam == "stable_log") {
        check_keys(j, {"family", "alpha", "beta"}, "bernstein");
        return BernsteinSpec::stable_log(need_number(j, "alpha"),
                                         need_number(j, "beta"));
    }
    throw config_error("config: unknown bernstein family '" + fam + "'");
}

KernelCoefficient coefficient_from(const json &j) {
    if (!j.is_object() || !j.contains("family"))
        throw config_error(
            "config: coefficient must be an object with a 'family'");
    std::string fam = j["family"].get<std::string>();
    if (fam == "constant") {
        check_keys(j, {"family", "value"}, "coefficient");
        return KernelCoefficient::constant(need_number(j, "value"));
    }
    if (fam == "cosine_x") {
        check_keys(j, {"family", "amplitude"}, "coefficient");
        return KernelCoefficient::cosine_x(need_number(j, "amplitude"));
    }
    throw config_error("config: unknown coefficient family '" + fam + "'");
}

void apply_override(json &root, const std::string &kv) {
    size_t eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("override must look like path.to.key=value: " +
                           kv);
    std::string path = kv.substr(0, eq), value = kv.substr(eq + 1);
    json *node = &root;
    size_t pos = 0;
    while (true) {
        size_t dot = path.find('.', pos);
        std::string key = path.substr(pos, dot - pos);
        if (key.empty())
            throw config_error("override has an empty path segment: " + kv);
        if (dot == std::string::npos) {
            json parsed = json::parse(value, nullptr, false);
            (*node)[key] = parsed.is_discarded() ? json(value) : parsed;
            return;
        }
        node = &(*node)[key];
        pos = dot + 1;
    }
}

} // namespace

ExperimentConfig parse_experiment_config(
    const std::string &json_text, const std::vector<std::string> &overrides) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw config_error("config: not a JSON object");
    for (const std::string &o : overrides)
        apply_override(j, o);

    check_keys(j,
               {"name", "psi", "bernstein", "coefficient", "n", "period",
                "corpus_size", "seed", "band_fraction", "r_list", "x0",
                "threads", "t", "samples"},
               "config root");

    ExperimentConfig cfg;
    if (!j.contains("name") || !j["name"].is_string())
        throw config_error("config: missing string key 'name'");
    cfg.name = j["name"].get<std::string>();
    if (j.contains("psi"))
        cfg.psi = modulus_from(j["psi"], "psi");
    else
        cfg.psi = Modulus::power(0.5);
    cfg.bernstein = j.contains("bernstein")
                        ? bernstein_from(j["bernstein"])
                        : BernsteinSpec::stable(0.5);
    if (j.contains("coefficient"))
        cfg.coefficient = coefficient_from(j["coefficient"]);
    if (j.contains("n"))
        cfg.n = j["n"].get<int>();
    if (j.contains("period"))
        cfg.period = need_number(j, "period");
    if (j.contains("corpus_size"))
        cfg.corpus_size = j["corpus_size"].get<int>();
    if (j.contains("seed"))
        cfg.seed = j["seed"].get<uint64_t>();
    if (j.contains("band_fraction"))
        cfg.band_fraction = need_number(j, "band_fraction");
    if (j.contains("r_list")) {
        if (!j["r_list"].is_array())
            throw config_error("config: r_list must be an array");
        cfg.r_list = j["r_list"].get<std::vector<double>>();
    }
    if (j.contains("x0"))
        cfg.x0 = {need_number(j, "x0"), 0.0};
    if (j.contains("threads"))
        cfg.threads = j["threads"].get<int>();
    if (j.contains("t"))
        cfg.t = need_number(j, "t");
    if (j.contains("samples"))
        cfg.samples = j["samples"].get<int>();

    if (cfg.n < 8 || (cfg.n & (cfg.n - 1)) != 0)
        throw config_error("config: n must be a power of two >= 8");
    if (!(cfg.period > 0.0) || !(cfg.t > 0.0))
        throw config_error("config: period and t must be positive");
    if (cfg.corpus_size < 1 || cfg.samples < 1)
        throw config_error("config: corpus_size and samples must be >= 1");
    if (!(cfg.band_fraction > 0.0) || cfg.band_fraction > 1.0)
        throw config_error("config: band_fraction must lie in (0, 1]");
    for (double r : cfg.r_list)
        if (!(r > 0.0))
            throw config_error("config: r_list entries must be positive");
    return cfg;
}

ExperimentConfig load_experiment_config(
    const std::string &path, const std::vector<std::string> &overrides) {
    std::ifstream in(path);
    if (!in)
        throw config_error("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_experiment_config(ss.str(), overrides);
}

std::string hash_hex(uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

} // namespace nlh
