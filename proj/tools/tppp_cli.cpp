// Command-line front end: theta sweeps, meta-distribution curves,
// Monte Carlo runs, congestion contours, and the PLP-vs-TPPP gap scan.
// Each command reads one JSON config and writes CSV/JSON outputs plus a
// run manifest sufficient to reproduce them bit-identically.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "tppp/analytic.hpp"
#include "tppp/congestion.hpp"
#include "tppp/geometry.hpp"
#include "tppp/metadist.hpp"
#include "tppp/model.hpp"
#include "tppp/montecarlo.hpp"
#include "tppp/numerics.hpp"

using json = nlohmann::json;
using namespace tppp;

namespace {

constexpr const char* kVersion = "0.1.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- output

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string file_checksum(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx",
                  (unsigned long long)fnv1a64(ss.str()));
    return buf;
}

class CsvFile {
  public:
    CsvFile(std::string path, const std::vector<std::string>& header)
        : path_(std::move(path)), out_(path_) {
        if (!out_) throw ConfigError("cannot open output file " + path_);
        write_row_strings(header);
    }

    void row(const std::vector<double>& values) {
        std::vector<std::string> cells;
        for (double v : values) cells.push_back(fmt17(v));
        write_row_strings(cells);
    }

    void row_mixed(const std::vector<std::string>& cells) {
        write_row_strings(cells);
    }

    const std::string& path() const { return path_; }
    void close() { out_.close(); }

  private:
    void write_row_strings(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::string path_;
    std::ofstream out_;
};

// --------------------------------------------------------------- context

struct RunContext {
    std::string command;
    std::string config_path;
    std::string out_dir;
    int threads = 1;
    bool verbose = false;
    std::optional<std::uint64_t> seed_override;

    json config;          // as parsed, then updated with resolved values
    json manifest_extra;  // command-specific additions (timings, results)
    std::vector<std::string> outputs;
    std::string status = "complete";
    std::chrono::steady_clock::time_point start =
        std::chrono::steady_clock::now();

    std::string out_path(const std::string& name) const {
        return out_dir + "/" + name;
    }

    void note(const std::string& msg) const {
        if (verbose) std::cerr << "[tppp] " << msg << "\n";
    }

    void write_manifest() {
        double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
        json m;
        m["command"] = command;
        m["version"] = kVersion;
        m["config"] = config;
        m["threads"] = threads;
        m["status"] = status;
        m["duration_seconds"] = secs;
        json sums = json::object();
        for (const auto& p : outputs) sums[p] = file_checksum(p);
        m["outputs"] = sums;
        for (auto& [k, v] : manifest_extra.items()) m[k] = v;
        std::string path = out_path(command + "_manifest.json");
        std::ofstream(path) << m.dump(2) << "\n";
    }
};

// Splits [0, n) across the worker bound; each index writes its own slot,
// so the assembled result is independent of the thread count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& body) {
    int workers = std::max(1, std::min<int>(threads, (int)n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) body(i);
        });
    }
    for (auto& t : pool) t.join();
}

// ---------------------------------------------------------------- config

json require(const json& j, const std::string& key) {
    if (!j.contains(key)) throw ConfigError("config is missing \"" + key + "\"");
    return j.at(key);
}

std::vector<double> grid_from_json(const json& j) {
    std::vector<double> out;
    if (j.is_array()) {
        for (const auto& v : j) out.push_back(v.get<double>());
    } else if (j.is_object()) {
        double start = require(j, "start").get<double>();
        double stop = require(j, "stop").get<double>();
        int n = require(j, "count").get<int>();
        if (n < 1) throw ConfigError("grid count must be >= 1");
        bool logspace = j.value("log", false);
        for (int i = 0; i < n; ++i) {
            double f = n == 1 ? 0.0 : (double)i / (n - 1);
            out.push_back(logspace ? start * std::pow(stop / start, f)
                                   : start + (stop - start) * f);
        }
    } else {
        throw ConfigError("grid must be an array or {start, stop, count}");
    }
    if (out.empty()) throw ConfigError("empty grid");
    return out;
}

NetworkParams params_from_json(const json& j) {
    NetworkParams p;
    p.lambda = j.value("lambda", p.lambda);
    p.mu = j.value("mu", p.mu);
    p.p = j.value("p", p.p);
    p.d_link = j.value("d_link", p.d_link);
    p.alpha = j.value("alpha", p.alpha);
    p.m = j.value("m", p.m);
    p.shadow_sigma = j.value("shadow_sigma", p.shadow_sigma);
    if (j.contains("theta_db") && j.contains("theta"))
        throw ConfigError("give theta_db or theta, not both");
    if (j.contains("theta_db"))
        p.theta = db_to_linear(j.at("theta_db").get<double>());
    else if (j.contains("theta"))
        p.theta = j.at("theta").get<double>();
    if (j.contains("half_length")) {
        const json& h = j.at("half_length");
        std::string kind = require(h, "kind").get<std::string>();
        if (kind == "rayleigh")
            p.half_length = HalfLengthDist::rayleigh(require(h, "c").get<double>());
        else if (kind == "deterministic")
            p.half_length =
                HalfLengthDist::deterministic(require(h, "h").get<double>());
        else
            throw ConfigError("unknown half_length kind \"" + kind + "\"");
        p.street_model = StreetModel::PSP;
    }
    if (j.value("street_model", "") == std::string("psp"))
        p.street_model = StreetModel::PSP;
    return p;
}

json params_to_json(const NetworkParams& p) {
    json j;
    j["lambda"] = p.lambda;
    j["mu"] = p.mu;
    j["p"] = p.p;
    j["theta"] = p.theta;
    j["theta_db"] = linear_to_db(p.theta);
    j["d_link"] = p.d_link;
    j["alpha"] = p.alpha;
    j["m"] = p.m;
    j["shadow_sigma"] = p.shadow_sigma;
    j["street_model"] = p.street_model == StreetModel::PSP ? "psp" : "plp";
    if (p.half_length) {
        json h;
        if (p.half_length->kind == HalfLengthDist::Kind::Rayleigh) {
            h["kind"] = "rayleigh";
            h["c"] = p.half_length->c;
        } else {
            h["kind"] = "deterministic";
            h["h"] = p.half_length->h0;
        }
        j["half_length"] = h;
    }
    return j;
}

PointProcessModel model_from_string(const std::string& name) {
    if (name == "ppp1d") return PointProcessModel::PPP1D;
    if (name == "ppp2d") return PointProcessModel::PPP2D;
    if (name == "plp_ppp") return PointProcessModel::PLP_PPP;
    if (name == "tppp_plp") return PointProcessModel::TPPP_PLP;
    if (name == "psp_ppp") return PointProcessModel::PSP_PPP;
    if (name == "tppp_psp") return PointProcessModel::TPPP_PSP;
    throw ConfigError("unknown model \"" + name + "\"");
}

// --------------------------------------------------------------- success

// Per-model success probability used by the theta sweep; "ppp1d" and
// "ppp2d" are the transdimensional model's two components on their own.
double success_value(const std::string& name, const NetworkParams& q) {
    if (name == "ppp1d")
        return moment_dppp(1.0, 1, q.m * q.lambda / 2, q).real();
    if (name == "ppp2d") return moment_dppp(1.0, 2, q.lambda * q.mu, q).real();
    if (name == "tppp_plp") return success_prob_tppp_plp(q);
    if (name == "plp_ppp") return success_prob_plp_ppp(q);
    if (name == "psp_ppp") return success_prob_psp_ppp(q);
    if (name == "tppp_psp") return success_prob_tppp_psp(q);
    if (name == "asymptote_theta0") return 1.0 - asymptote_theta0(q, q.theta);
    if (name == "asymptote_theta_inf") return asymptote_theta_inf(q, q.theta);
    throw ConfigError("unknown success model \"" + name + "\"");
}

int cmd_success(RunContext& ctx) {
    NetworkParams base = params_from_json(require(ctx.config, "params"));
    std::vector<double> theta_db = grid_from_json(require(ctx.config, "theta_db"));
    std::vector<std::string> models =
        require(ctx.config, "models").get<std::vector<std::string>>();
    ctx.config["params"] = params_to_json(base);

    std::vector<std::vector<double>> values(
        models.size(), std::vector<double>(theta_db.size()));
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        ctx.note("sweeping " + models[mi]);
        parallel_for(theta_db.size(), ctx.threads, [&](std::size_t k) {
            values[mi][k] = success_value(
                models[mi], base.with_theta(db_to_linear(theta_db[k])));
        });
    }

    CsvFile csv(ctx.out_path("success.csv"),
                {"theta_db", "model", "success_prob"});
    for (std::size_t mi = 0; mi < models.size(); ++mi)
        for (std::size_t k = 0; k < theta_db.size(); ++k)
            csv.row_mixed({fmt17(theta_db[k]), models[mi], fmt17(values[mi][k])});
    csv.close();
    ctx.outputs.push_back(csv.path());
    return 0;
}

// -------------------------------------------------------------- metadist

int cmd_metadist(RunContext& ctx) {
    NetworkParams base = params_from_json(require(ctx.config, "params"));
    PointProcessModel model =
        model_from_string(ctx.config.value("model", "tppp_plp"));
    std::string method = ctx.config.value("method", "exact");
    ctx.config["params"] = params_to_json(base);

    CsvFile csv(ctx.out_path("metadist.csv"),
                {"theta_db", "x", "md", "std_err"});
    if (ctx.config.contains("x_grid")) {
        // MD vs x at the fixed theta from params
        std::vector<double> xs = grid_from_json(ctx.config.at("x_grid"));
        if (method == "empirical") {
            SimConfig sim;
            sim.n_realizations = ctx.config.value("n_realizations", 10000);
            sim.seed = ctx.seed_override.value_or(ctx.config.value("seed", 1));
            ctx.config["seed"] = sim.seed;
            sim.x_grid = xs;
            EmpiricalMd emd = estimate_md(model, base, sim);
            for (std::size_t k = 0; k < xs.size(); ++k)
                csv.row({linear_to_db(base.theta), xs[k], emd.estimates[k],
                         emd.std_errs[k]});
        } else {
            MdEvaluator ev(model, base);
            for (double x : xs) {
                double v = method == "beta" ? ev.md_beta(x) : ev.md_exact(x);
                csv.row({linear_to_db(base.theta), x, v, 0.0});
            }
        }
    } else if (ctx.config.contains("theta_db")) {
        // MD vs theta at fixed x
        std::vector<double> thetas = grid_from_json(ctx.config.at("theta_db"));
        double x = require(ctx.config, "x").get<double>();
        for (double tdb : thetas) {
            NetworkParams q = base.with_theta(db_to_linear(tdb));
            double v = method == "beta" ? md_beta(model, q, x)
                                        : md_exact(model, q, x);
            csv.row({tdb, x, v, 0.0});
        }
    } else if (!ctx.config.contains("invert")) {
        throw ConfigError("metadist config needs x_grid, theta_db, or invert");
    }
    csv.close();
    ctx.outputs.push_back(csv.path());

    if (ctx.config.contains("invert")) {
        // inverse sweep: the theta_db at which MD(x) meets the target
        const json& inv = ctx.config.at("invert");
        double x = require(inv, "x").get<double>();
        double target = require(inv, "target").get<double>();
        double lo = inv.value("theta_db_lo", -40.0);
        double hi = inv.value("theta_db_hi", 20.0);
        double tdb = brent_root(
            [&](double t) {
                return md_exact(model, base.with_theta(db_to_linear(t)), x) -
                       target;
            },
            lo, hi, 1e-6);
        CsvFile icsv(ctx.out_path("metadist_inverse.csv"),
                     {"x", "target_md", "theta_db"});
        icsv.row({x, target, tdb});
        icsv.close();
        ctx.outputs.push_back(icsv.path());
        ctx.manifest_extra["inverse_theta_db"] = tdb;
    }
    return 0;
}

// -------------------------------------------------------------- simulate

int cmd_simulate(RunContext& ctx) {
    NetworkParams base = params_from_json(require(ctx.config, "params"));
    PointProcessModel model =
        model_from_string(require(ctx.config, "model").get<std::string>());
    SimConfig sim;
    sim.n_realizations = ctx.config.value("n_realizations", 10000);
    sim.seed = ctx.seed_override.value_or(
        ctx.config.value("seed", (std::uint64_t)1));
    sim.window_radius = ctx.config.value("window_radius", 0.0);
    ctx.config["params"] = params_to_json(base);
    ctx.config["seed"] = sim.seed;

    std::vector<std::string> quantities = ctx.config.value(
        "quantities", std::vector<std::string>{"md", "success"});
    for (const std::string& q : quantities) {
        ctx.note("estimating " + q);
        if (q == "md") {
            sim.x_grid = ctx.config.contains("x_grid")
                             ? grid_from_json(ctx.config.at("x_grid"))
                             : grid_from_json(json{{"start", 0.05},
                                                   {"stop", 0.95},
                                                   {"count", 19}});
            EmpiricalMd emd = estimate_md(model, base, sim);
            CsvFile csv(ctx.out_path("simulate_md.csv"),
                        {"x", "md", "std_err"});
            for (std::size_t k = 0; k < emd.x_grid.size(); ++k)
                csv.row({emd.x_grid[k], emd.estimates[k], emd.std_errs[k]});
            csv.close();
            ctx.outputs.push_back(csv.path());
        } else if (q == "success") {
            auto [mean, se] = estimate_success_prob(model, base, sim);
            CsvFile csv(ctx.out_path("simulate_success.csv"),
                        {"success_prob", "std_err"});
            csv.row({mean, se});
            csv.close();
            ctx.outputs.push_back(csv.path());
        } else if (q == "histogram") {
            // raw conditional success probabilities, binned
            SimConfig raw = sim;
            raw.record_raw = true;
            raw.x_grid = {0.5};
            EmpiricalMd emd = estimate_md(model, base, raw);
            int nbins = ctx.config.value("bins", 50);
            std::vector<int> counts(nbins, 0);
            for (double v : emd.raw) {
                int b = std::min(nbins - 1, (int)(v * nbins));
                counts[std::max(0, b)]++;
            }
            CsvFile csv(ctx.out_path("simulate_histogram.csv"),
                        {"bin_lo", "bin_hi", "count"});
            for (int b = 0; b < nbins; ++b)
                csv.row({(double)b / nbins, (double)(b + 1) / nbins,
                         (double)counts[b]});
            csv.close();
            ctx.outputs.push_back(csv.path());
        } else if (q == "nnd") {
            int n_max = ctx.config.value("n_max", 40);
            auto rows = nn_distance_moments(model, base, n_max,
                                            sim.n_realizations, sim.seed);
            CsvFile csv(ctx.out_path("simulate_nnd.csv"),
                        {"n", "mean_r2_over_n", "std_err"});
            for (const auto& r : rows)
                csv.row({(double)r.n, r.mean_r2_over_n, r.std_err});
            csv.close();
            ctx.outputs.push_back(csv.path());
        } else {
            throw ConfigError("unknown quantity \"" + q + "\"");
        }
    }
    return 0;
}

// --------------------------------------------------------------- contour

int cmd_contour(RunContext& ctx) {
    ContourRequest req;
    req.fixed = params_from_json(require(ctx.config, "params"));
    req.target_q = require(ctx.config, "q").get<double>();
    std::string mode = ctx.config.value("mode", "success");
    if (mode == "md")
        req.reliability_x = require(ctx.config, "x").get<double>();
    else if (mode != "success")
        throw ConfigError("contour mode must be \"success\" or \"md\"");
    if (ctx.config.contains("inv_lambda_grid")) {
        for (double inv : grid_from_json(ctx.config.at("inv_lambda_grid")))
            req.lambda_grid.push_back(1.0 / inv);
    } else {
        req.lambda_grid = grid_from_json(require(ctx.config, "lambda_grid"));
    }
    ctx.config["params"] = params_to_json(req.fixed);

    auto pts = mode == "md" ? contour_md(req) : contour_success(req);

    std::vector<ValidationRow> vrows;
    bool validating = mode == "md" && ctx.config.contains("validate");
    if (validating) {
        const json& v = ctx.config.at("validate");
        SimConfig sim;
        sim.n_realizations = v.value("n_realizations", 0);
        sim.seed = ctx.seed_override.value_or(v.value("seed", (std::uint64_t)1));
        ctx.note("validating against the exact PLP-PPP MD");
        vrows = validate_against_exact(pts, req.fixed, *req.reliability_x, sim);
    }

    std::vector<std::string> header = {"lambda", "inv_lambda", "p",
                                       "feasible", "achieved"};
    if (validating) {
        header.push_back("exact_md");
        header.push_back("deviation");
    }
    CsvFile csv(ctx.out_path("contour.csv"), header);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<std::string> cells = {
            fmt17(pts[i].lambda), fmt17(1.0 / pts[i].lambda), fmt17(pts[i].p),
            pts[i].feasible ? "1" : "0", fmt17(pts[i].achieved)};
        if (validating) {
            cells.push_back(fmt17(vrows[i].exact_md));
            cells.push_back(fmt17(vrows[i].deviation));
        }
        csv.row_mixed(cells);
    }
    csv.close();
    ctx.outputs.push_back(csv.path());
    return 0;
}

// ---------------------------------------------------------------- maxgap

int cmd_maxgap(RunContext& ctx) {
    double mu = ctx.config.value("mu", 0.204);
    double alpha = ctx.config.value("alpha", 4.0);
    double d_link = ctx.config.value("d_link", 0.25);
    double delta = 2.0 / alpha;
    std::vector<double> lp_grid = grid_from_json(ctx.config.value(
        "lambda_p", json{{"start", 0.01}, {"stop", 1.0}, {"count", 31},
                         {"log", true}}));
    std::vector<double> c2_grid = grid_from_json(ctx.config.value(
        "d2_theta_delta", json{{"start", 0.1}, {"stop", 100.0}, {"count", 31},
                               {"log", true}}));
    ctx.config["mu"] = mu;
    ctx.config["alpha"] = alpha;
    ctx.config["d_link"] = d_link;

    // b = 1 moments depend on lambda and p only through lambda p, and on
    // (theta, D) only through D^2 theta^delta; pick representatives.
    std::vector<double> gap(lp_grid.size() * c2_grid.size());
    parallel_for(gap.size(), ctx.threads, [&](std::size_t k) {
        double lp = lp_grid[k / c2_grid.size()];
        double c2 = c2_grid[k % c2_grid.size()];
        NetworkParams q;
        q.mu = mu;
        q.alpha = alpha;
        q.d_link = d_link;
        q.lambda = std::max(1.0, lp);
        q.p = lp / q.lambda;
        q.theta = std::pow(c2 / (d_link * d_link), 1.0 / delta);
        gap[k] = success_prob_plp_ppp(q) - success_prob_tppp_plp(q);
    });

    std::size_t best = 0;
    for (std::size_t k = 1; k < gap.size(); ++k)
        if (gap[k] > gap[best]) best = k;

    json out;
    out["max_gap"] = gap[best];
    out["lambda_p"] = lp_grid[best / c2_grid.size()];
    out["d2_theta_delta"] = c2_grid[best % c2_grid.size()];
    out["grid"] = {{"lambda_p_points", lp_grid.size()},
                   {"d2_theta_delta_points", c2_grid.size()}};
    std::string path = ctx.out_path("maxgap.json");
    std::ofstream(path) << out.dump(2) << "\n";
    ctx.outputs.push_back(path);
    ctx.manifest_extra["max_gap"] = gap[best];
    return 0;
}

// ------------------------------------------------------------------ main

int run(RunContext& ctx, int (*cmd)(RunContext&)) {
    try {
        std::ifstream in(ctx.config_path);
        if (!in) throw ConfigError("cannot read config " + ctx.config_path);
        ctx.config = json::parse(in);
        int rc = cmd(ctx);
        ctx.write_manifest();
        return rc;
    } catch (const json::exception& e) {
        std::cerr << json{{"error", "config"}, {"detail", e.what()}}.dump()
                  << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << json{{"error", "config"}, {"detail", e.what()}}.dump()
                  << "\n";
        return 2;
    } catch (const ValidationError& e) {
        std::cerr << json{{"error", "validation"}, {"detail", e.what()}}.dump()
                  << "\n";
        return 2;
    } catch (const NoConvergence& e) {
        // partial outputs stay on disk; the manifest flags the failure
        ctx.status = "partial";
        ctx.manifest_extra["convergence_error"] = e.what();
        ctx.manifest_extra["error_estimate"] = e.error_estimate;
        ctx.write_manifest();
        std::cerr << json{{"error", "non-convergence"}, {"detail", e.what()}}
                         .dump()
                  << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << json{{"error", "runtime"}, {"detail", e.what()}}.dump()
                  << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transdimensional Poisson point process toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    RunContext ctx;
    const char* env_dir = std::getenv("TPPP_OUT_DIR");
    ctx.out_dir = env_dir ? env_dir : ".";
    std::uint64_t seed_flag = 0;
    bool seed_set = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", ctx.config_path, "JSON config file")
            ->required();
        sub->add_option("-o,--out", ctx.out_dir, "output directory");
        sub->add_option("-t,--threads", ctx.threads, "worker thread bound");
        sub->add_flag("-v,--verbose", ctx.verbose, "progress to stderr");
        sub->add_option("-s,--seed", seed_flag, "override the config seed")
            ->each([&](const std::string&) { seed_set = true; });
    };

    struct Cmd {
        const char* name;
        const char* help;
        int (*fn)(RunContext&);
    };
    const Cmd cmds[] = {
        {"success", "theta sweeps of the analytic success probabilities",
         cmd_success},
        {"metadist", "SIR meta distribution curves and inverse sweeps",
         cmd_metadist},
        {"simulate", "Monte Carlo estimates (MD, success, histogram, NND)",
         cmd_simulate},
        {"contour", "congestion-control (1/lambda, p) contours", cmd_contour},
        {"maxgap", "scan of the PLP-PPP vs TPPP success-probability gap",
         cmd_maxgap},
    };
    for (const Cmd& c : cmds) add_common(app.add_subcommand(c.name, c.help));

    CLI11_PARSE(app, argc, argv);

    if (seed_set) ctx.seed_override = seed_flag;
    for (const Cmd& c : cmds) {
        if (app.get_subcommand(c.name)->parsed()) {
            ctx.command = c.name;
            return run(ctx, c.fn);
        }
    }
    return 2;
}
