#include "nlholder/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "nlholder/heatkernel.hpp"

namespace nlh {

namespace {

uint64_t fnv1a(const std::string &s, uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void require_unit_cell(const IndexInterval &idx, const std::string &who) {
    double lo = std::floor(idx.m), hi = std::floor(idx.M);
    bool ok = lo == hi && integer_distance(idx.m) >= 0.02 &&
              integer_distance(idx.M) >= 0.02 && idx.M < 3.0;
    if (!ok)
        throw guard_error(who + ": index interval [" + num(idx.m) + ", " +
                          num(idx.M) +
                          "] touches an integer order (0.02 guard band)");
}

std::vector<GridFunction> corpus(const ExperimentConfig &cfg,
                                 const Modulus &gen, int n_run) {
    // fix the mode set across resolutions: the band is tied to cfg.n
    double bf = cfg.band_fraction * cfg.n / n_run;
    std::vector<GridFunction> out;
    out.reserve(cfg.corpus_size);
    for (int i = 0; i < cfg.corpus_size; ++i)
        out.push_back(random_holder_sample(gen, cfg.seed + i, n_run, 1,
                                           cfg.period, bf));
    return out;
}

RatioReport finish(RatioReport rep, const ExperimentConfig &cfg) {
    rep.C_hat = 0.0;
    for (double r : rep.ratios)
        rep.C_hat = std::max(rep.C_hat, r);
    rep.config_hash = cfg.config_hash();
    for (int i = 0; i < cfg.corpus_size; ++i)
        rep.seeds.push_back(cfg.seed + i);
    return rep;
}

double schauder_chat(const ExperimentConfig &cfg, int n_run,
                     const std::vector<double> *symbol_override,
                     std::vector<double> *ratios_out) {
    SymbolTable st;
    if (symbol_override) {
        st.dim = 1;
        st.n = n_run;
        st.period = cfg.period;
        st.values = *symbol_override;
    } else {
        st = subordinate_symbol(cfg.bernstein, 1, n_run, cfg.period);
    }
    Modulus pp = cfg.phipsi();
    double chat = 0.0;
    for (const GridFunction &f : corpus(cfg, cfg.psi, n_run)) {
        GridFunction u = solve_constant(st, f);
        double ratio = holder_norm(u, pp).norm /
                       (u.sup_norm() + holder_norm(f, cfg.psi).norm);
        if (ratios_out)
            ratios_out->push_back(ratio);
        chat = std::max(chat, ratio);
    }
    return chat;
}

void schauder_guards(const ExperimentConfig &cfg) {
    IndexInterval ip = cfg.psi.indices(20);
    if (!(ip.m > 0.0 && ip.M < 1.0))
        throw guard_error("schauder: I_psi must lie inside (0,1)");
    require_unit_cell(cfg.phipsi().indices(20), "schauder: I_phipsi");
}

} // namespace

Modulus ExperimentConfig::phipsi() const {
    return Modulus::product(bernstein.varphi, psi);
}

uint64_t ExperimentConfig::config_hash() const {
    std::string s = name + "|" + psi.family() + "|" + bernstein.family + "|";
    for (double r : {0.03, 0.2, 0.7, 1.0}) {
        s += num(psi.eval(r)) + ",";
        s += num(bernstein.varphi.eval(r)) + ",";
        s += num(coefficient.eval({r * period, 0.0}, {r, 0.0})) + ";";
    }
    s += num(n) + "|" + num(period) + "|" + num(corpus_size) + "|" +
         num(static_cast<double>(seed)) + "|" + num(band_fraction) + "|" +
         num(x0[0]) + "|" + num(t) + "|" + num(samples);
    for (double r : r_list)
        s += "," + num(r);
    return fnv1a(s);
}

RatioReport schauder_ratio(const ExperimentConfig &cfg) {
    schauder_guards(cfg);
    RatioReport rep;
    rep.by_resolution[cfg.n / 2] =
        schauder_chat(cfg, cfg.n / 2, nullptr, nullptr);
    rep.by_resolution[cfg.n] = schauder_chat(cfg, cfg.n, nullptr, &rep.ratios);
    return finish(std::move(rep), cfg);
}

RatioReport schauder_ratio_with_symbol(const ExperimentConfig &cfg,
                                       const std::vector<double> &symbol) {
    schauder_guards(cfg);
    RatioReport rep;
    rep.by_resolution[cfg.n] =
        schauder_chat(cfg, cfg.n, &symbol, &rep.ratios);
    return finish(std::move(rep), cfg);
}

RatioReport mapping_ratio(const ExperimentConfig &cfg) {
    IndexInterval iv = cfg.bernstein.varphi.indices(20);
    IndexInterval ip = cfg.psi.indices(20);
    if (!(std::max(iv.M, ip.M) < iv.m + ip.m))
        throw guard_error(
            "mapping: requires max(M_phi, M_psi) < m_phi + m_psi");
    LevyKernel kern{cfg.bernstein, 1, cfg.coefficient};
    OperatorSpec spec = OperatorSpec::make(kern);
    Modulus pp = cfg.phipsi();
    RatioReport rep;
    for (int n_run : {cfg.n / 2, cfg.n}) {
        FrozenOperator h_op;
        bool sep = cfg.coefficient.separable();
        if (sep)
            h_op = separable_h_operator(spec, n_run, cfg.period);
        double chat = 0.0;
        for (const GridFunction &u : corpus(cfg, pp, n_run)) {
            GridFunction lu =
                sep ? apply_separable(spec, h_op, u) : apply_L(spec, u);
            double ratio =
                holder_norm(lu, cfg.psi).norm / holder_norm(u, pp).norm;
            if (n_run == cfg.n)
                rep.ratios.push_back(ratio);
            chat = std::max(chat, ratio);
        }
        rep.by_resolution[n_run] = chat;
    }
    return finish(std::move(rep), cfg);
}

RatioReport potential_regularity(const ExperimentConfig &cfg) {
    schauder_guards(cfg);
    Modulus pp = cfg.phipsi();
    SymbolTable st = subordinate_symbol(cfg.bernstein, 1, cfg.n, cfg.period);
    RatioReport rep;
    for (int n_run : {cfg.n / 2, cfg.n}) {
        SymbolTable s =
            subordinate_symbol(cfg.bernstein, 1, n_run, cfg.period);
        double chat = 0.0;
        for (const GridFunction &f : corpus(cfg, cfg.psi, n_run)) {
            GridFunction rf = -1.0 * solve_constant(s, f); // R f = -u
            double ratio = holder_norm(rf, pp).norm /
                           (holder_norm(f, cfg.psi).norm + rf.sup_norm());
            if (n_run == cfg.n)
                rep.ratios.push_back(ratio);
            chat = std::max(chat, ratio);
        }
        rep.by_resolution[n_run] = chat;
    }
    return finish(std::move(rep), cfg);
}

PerturbationReport perturbation_suite(const ExperimentConfig &cfg) {
    IndexInterval iv = cfg.bernstein.varphi.indices(20);
    IndexInterval ip = cfg.psi.indices(20);
    IndexInterval ipp = cfg.phipsi().indices(20);
    if (!(std::max(iv.M, ip.M) < ipp.m))
        throw guard_error(
            "perturbation: requires max(M_phi, M_psi) < m_phipsi");
    if (!(iv.M < 0.98))
        throw guard_error("perturbation: the localization sweep runs the "
                          "compensator-free branch, needs M_varphi < 1");

    LevyKernel kern{cfg.bernstein, 1, cfg.coefficient};
    OperatorSpec spec = OperatorSpec::make(kern);
    spec.xi_cap = 0.5 * PI * cfg.n / cfg.period;
    OperatorSpec diffspec = freeze(spec, cfg.x0).second;
    QuadratureRule rule = make_rule(spec, cfg.n, cfg.period);
    FrozenOperator h_op;
    bool sep = cfg.coefficient.separable();
    if (sep)
        h_op = separable_h_operator(spec, cfg.n, cfg.period);

    Modulus pp = cfg.phipsi();
    std::vector<GridFunction> us = corpus(cfg, pp, cfg.n);

    PerturbationReport rep;
    rep.config_hash = cfg.config_hash();
    for (int i = 0; i < cfg.corpus_size; ++i)
        rep.seeds.push_back(cfg.seed + i);

    for (double r : cfg.r_list) {
        Cutoff eta = make_cutoff(1, cfg.n, cfg.period, r, cfg.x0);
        double bmax = 0.0, hmax = 0.0;
        for (const GridFunction &u : us) {
            GridFunction v = hadamard(u, eta.values);
            GridFunction bv = sep ? apply_separable(diffspec, h_op, v)
                                  : apply_B(diffspec, v);
            bmax = std::max(bmax, holder_norm(bv, cfg.psi).norm /
                                      holder_norm(v, pp).norm);
            GridFunction H = apply_H(spec, u, eta, rule);
            hmax = std::max(hmax, holder_norm(H, cfg.psi).norm /
                                      holder_norm(u, pp).norm);
        }
        rep.r_values.push_back(r);
        rep.b_coefficient.push_back(bmax);
        rep.h_coefficient.push_back(hmax);
    }

    // product-rule residual on the first corpus member at the largest r
    {
        const GridFunction &u = us.front();
        Cutoff eta = make_cutoff(1, cfg.n, cfg.period, cfg.r_list.front(),
                                 cfg.x0);
        GridFunction ue = hadamard(u, eta.values);
        GridFunction lhs =
            sep ? apply_separable(spec, h_op, ue) : apply_L(spec, ue);
        GridFunction lu =
            sep ? apply_separable(spec, h_op, u) : apply_L(spec, u);
        GridFunction le = sep ? apply_separable(spec, h_op, eta.values)
                              : apply_L(spec, eta.values);
        GridFunction H = apply_H(spec, u, eta, rule);
        double scale = lu.sup_norm() + le.sup_norm() * u.sup_norm() + 1.0;
        double worst = 0.0;
        for (int i = 0; i < cfg.n; ++i) {
            double rhs = eta.values[i] * lu[i] + u[i] * le[i] + H[i];
            worst = std::max(worst, std::abs(lhs[i] - rhs));
        }
        rep.freezing_residual = worst / scale;
    }
    return rep;
}

} // namespace nlh
