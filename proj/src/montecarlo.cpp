#include "tppp/montecarlo.hpp"

#include <algorithm>
#include <cmath>

#include "tppp/rng.hpp"

namespace tppp {

double cond_success_prob(const PointPattern& pattern,
                         const NetworkParams& params, double receiver_mark) {
    double s_eff = params.s() / receiver_mark;
    double out = 1.0;
    for (const auto& z : pattern.points) {
        double sv = s_eff * z.shadow_mark;
        double r_alpha = std::pow(z.pos.squaredNorm(), params.alpha / 2);
        out *= 1.0 - params.p * sv / (sv + r_alpha);
    }
    return out;
}

namespace {

// One replicate: pattern i of the stream, with the receiver's own
// shadowing mark drawn from the same stream.
double one_replicate(PointProcessModel model, const NetworkParams& params,
                     double window_radius, std::uint64_t seed, int i) {
    Rng rng = Rng::stream(seed, std::uint64_t(i));
    PointPattern pat = sample_pattern(model, params, window_radius, rng);
    double receiver_mark = params.shadow_sigma > 0
                               ? rng.lognormal_mean1(params.shadow_sigma)
                               : 1.0;
    return cond_success_prob(pat, params, receiver_mark);
}

} // namespace

EmpiricalMd estimate_md(PointProcessModel model, const NetworkParams& params,
                        const SimConfig& sim) {
    double R = sim.window_radius > 0 ? sim.window_radius
                                     : default_window_radius(params);
    EmpiricalMd out;
    out.x_grid = sim.x_grid;
    out.n_realizations = sim.n_realizations;
    std::vector<long> above(sim.x_grid.size(), 0);
    if (sim.record_raw) out.raw.reserve(sim.n_realizations);
    for (int i = 0; i < sim.n_realizations; ++i) {
        double ps = one_replicate(model, params, R, sim.seed, i);
        if (sim.record_raw) out.raw.push_back(ps);
        for (std::size_t k = 0; k < sim.x_grid.size(); ++k)
            if (ps > sim.x_grid[k]) ++above[k];
    }
    out.estimates.resize(above.size());
    out.std_errs.resize(above.size());
    for (std::size_t k = 0; k < above.size(); ++k) {
        double est = double(above[k]) / sim.n_realizations;
        out.estimates[k] = est;
        out.std_errs[k] = std::sqrt(est * (1 - est) / sim.n_realizations);
    }
    return out;
}

std::pair<double, double> estimate_success_prob(PointProcessModel model,
                                                const NetworkParams& params,
                                                const SimConfig& sim) {
    double R = sim.window_radius > 0 ? sim.window_radius
                                     : default_window_radius(params);
    double sum = 0, sum_sq = 0;
    for (int i = 0; i < sim.n_realizations; ++i) {
        double ps = one_replicate(model, params, R, sim.seed, i);
        sum += ps;
        sum_sq += ps * ps;
    }
    double mean = sum / sim.n_realizations;
    double var = std::max(0.0, sum_sq / sim.n_realizations - mean * mean);
    return {mean, std::sqrt(var / sim.n_realizations)};
}

std::vector<ShadowGapRow> shadowing_gap_sweep(const NetworkParams& params,
                                              const std::vector<double>& sigmas,
                                              const SimConfig& sim) {
    std::vector<ShadowGapRow> out;
    std::vector<double> default_grid;
    if (sim.x_grid.empty())
        for (double x = 0.05; x < 0.951; x += 0.05) default_grid.push_back(x);
    for (std::size_t j = 0; j < sigmas.size(); ++j) {
        double sigma = sigmas[j];
        double scaling = lognormal_mean1_moment(sigma, params.delta());
        NetworkParams q = params;
        q.shadow_sigma = sigma;
        q.lambda = params.lambda / scaling;
        SimConfig cfg = sim;
        if (cfg.x_grid.empty()) cfg.x_grid = default_grid;
        cfg.seed = sim.seed + 1000003 * j;
        EmpiricalMd plp = estimate_md(PointProcessModel::PLP_PPP, q, cfg);
        cfg.seed += 500009;
        EmpiricalMd tppp = estimate_md(PointProcessModel::TPPP_PLP, q, cfg);
        ShadowGapRow row{sigma, scaling, 0.0, 0.0};
        for (std::size_t k = 0; k < plp.x_grid.size(); ++k) {
            double gap = std::abs(plp.estimates[k] - tppp.estimates[k]);
            if (gap >= row.sup_gap) {
                row.sup_gap = gap;
                row.std_err = std::hypot(plp.std_errs[k], tppp.std_errs[k]);
            }
        }
        out.push_back(row);
    }
    return out;
}

} // namespace tppp
