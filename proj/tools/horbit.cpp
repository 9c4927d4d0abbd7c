// horbit: enumerate Fuchsian group orbits in hyperbolic balls and check
// their angular statistics against the closed-form limiting densities.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orbits/angular.hpp"
#include "orbits/density.hpp"
#include "orbits/io.hpp"
#include "orbits/lattice.hpp"

namespace {

using namespace orbits;

constexpr int kExitIo = 1;
constexpr int kExitValidation = 2;
constexpr int kExitBudget = 3;

struct Overrides {
    std::optional<std::string> config_path;
    std::optional<std::string> kind;
    std::optional<int> level;
    std::optional<std::vector<double>> z0, z1, w, thresholds;
    std::optional<double> interval_start, interval_length, s;
    std::optional<int> bins, n_max, m_max, threads;
    std::optional<std::size_t> budget;
    std::optional<std::string> format, out_path;
};

void add_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config_path, "JSON config file");
    cmd->add_option("--kind", o.kind, "group kind: SL2Z or GammaN");
    cmd->add_option("--level", o.level, "congruence level N");
    cmd->add_option("--z0", o.z0, "z0 as x y")->expected(2);
    cmd->add_option("--z1", o.z1, "z1 as x y")->expected(2);
    cmd->add_option("--w", o.w, "w as x y")->expected(2);
    cmd->add_option("--thresholds", o.thresholds, "cosh thresholds X")->expected(-1);
    cmd->add_option("--interval-start", o.interval_start, "interval start in [0,1)");
    cmd->add_option("--interval-length", o.interval_length, "interval length in (0,1]");
    cmd->add_option("--bins", o.bins, "number of bins / samples");
    cmd->add_option("--n-max", o.n_max, "largest exponential-sum frequency");
    cmd->add_option("--M", o.m_max, "Erdos-Turan cutoff");
    cmd->add_option("--budget", o.budget, "max enumerated elements");
    cmd->add_option("--threads", o.threads, "worker threads (0 = auto)");
    cmd->add_option("--s", o.s, "g-series exponent (> 1)");
    cmd->add_option("--format", o.format, "output format: csv or json");
    cmd->add_option("--output", o.out_path, "output path (default stdout)");
}

ExperimentConfig build_config(const Overrides& o) {
    ExperimentConfig cfg;
    if (o.config_path) {
        std::ifstream in(*o.config_path);
        if (!in) throw std::runtime_error("cannot open config file " + *o.config_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("config parse error: ") + e.what());
        }
        try {
            cfg = config_from_json(j);
        } catch (const nlohmann::json::exception& e) {
            throw std::invalid_argument(std::string("config field error: ") + e.what());
        }
    }
    if (o.kind) cfg.group.kind = *o.kind;
    if (o.level) cfg.group.level = *o.level;
    if (o.z0) cfg.points.z0 = {(*o.z0)[0], (*o.z0)[1]};
    if (o.z1) cfg.points.z1 = {(*o.z1)[0], (*o.z1)[1]};
    if (o.w) cfg.points.w = {(*o.w)[0], (*o.w)[1]};
    if (o.thresholds) cfg.thresholds = *o.thresholds;
    if (o.interval_start) cfg.interval.start = *o.interval_start;
    if (o.interval_length) cfg.interval.length = *o.interval_length;
    if (o.bins) cfg.bins = *o.bins;
    if (o.n_max) cfg.n_max = *o.n_max;
    if (o.m_max) cfg.m_max = *o.m_max;
    if (o.budget) cfg.budget = *o.budget;
    if (o.threads) cfg.threads = *o.threads;
    if (o.s) cfg.s = *o.s;
    if (o.format) cfg.output.format = *o.format;
    if (o.out_path) cfg.output.path = *o.out_path;
    cfg.validate();
    return cfg;
}

void emit(const ExperimentConfig& cfg, const std::string& contents) {
    if (cfg.output.path.empty())
        std::cout << contents;
    else
        write_file_atomic(cfg.output.path, contents);
}

std::vector<OrbitRecord> run_query(const ExperimentConfig& cfg, Point center, Point base,
                                   Point viewpoint, double x) {
    BallQuery q{cfg.group_spec(), center, base, viewpoint, x};
    return enumerate_ball(q, cfg.enumeration_options());
}

int cmd_enumerate(const ExperimentConfig& cfg) {
    double x = cfg.max_threshold();
    BallQuery q{cfg.group_spec(), cfg.z0(), cfg.z1(), cfg.z0(), x};
    auto records = enumerate_ball(q, cfg.enumeration_options());
    double mt = main_term(q);
    std::cerr << "N=" << records.size() << " main_term=" << format_double(mt)
              << " ratio=" << format_double(records.size() / mt) << "\n";
    emit(cfg, orbit_csv(records));
    return 0;
}

int cmd_equidist(const ExperimentConfig& cfg) {
    AngleInterval interval{NormalizedAngle::wrap(cfg.interval.start), cfg.interval.length};
    auto rep = equidistribution_report(cfg.group_spec(), cfg.z0(), cfg.z1(), cfg.thresholds,
                                       interval, cfg.enumeration_options());
    emit(cfg, to_json(rep).dump(2) + "\n");
    return 0;
}

int cmd_density(const ExperimentConfig& cfg) {
    DensityParams p = DensityParams::make(cfg.z0(), cfg.z1());
    std::string out = "omega,rho,eta,k\n";
    for (int j = 0; j < cfg.bins; ++j) {
        NormalizedAngle w{static_cast<double>(j) / cfg.bins};
        out += format_double(w.omega) + "," + format_double(rho(p, w)) + "," +
               format_double(eta(p, fold_to_line_angle(w))) + "," +
               format_double(k_theta(p, w)) + "\n";
    }
    emit(cfg, out);
    return 0;
}

int cmd_theorem3(const ExperimentConfig& cfg) {
    auto rep = theorem3_report(cfg.group_spec(), cfg.z0(), cfg.z1(), cfg.w(),
                               cfg.max_threshold(), cfg.bins, cfg.enumeration_options());
    emit(cfg, to_json(rep).dump(2) + "\n");
    return 0;
}

int cmd_theorem2(const ExperimentConfig& cfg) {
    auto rep = theorem2_report(cfg.group_spec(), cfg.z0(), cfg.z1(), cfg.max_threshold(),
                               cfg.bins, cfg.enumeration_options());
    emit(cfg, to_json(rep).dump(2) + "\n");
    return 0;
}

int cmd_expsum(const ExperimentConfig& cfg) {
    auto records = run_query(cfg, cfg.z0(), cfg.z1(), cfg.z0(), cfg.max_threshold());
    double n_total = static_cast<double>(records.size());
    std::string out = "n,abs_S_n,abs_S_n_over_N\n";
    for (int n = 0; n <= cfg.n_max; ++n) {
        double s_abs = std::abs(exponential_sum(std::span<const OrbitRecord>(records), n));
        out += std::to_string(n) + "," + format_double(s_abs) + "," +
               format_double(n_total > 0 ? s_abs / n_total : 0.0) + "\n";
    }
    emit(cfg, out);
    return 0;
}

int cmd_gseries(const ExperimentConfig& cfg) {
    auto records = run_query(cfg, cfg.z0(), cfg.z1(), cfg.z0(), cfg.max_threshold());
    std::string out = "n,X,re,im,scaled_re\n";
    for (int n = 0; n <= cfg.n_max; ++n) {
        for (double x : cfg.thresholds) {
            auto v = g_series_partial(std::span<const OrbitRecord>(records), n, cfg.s, x,
                                      cfg.group_spec());
            out += std::to_string(n) + "," + format_double(x) + "," + format_double(v.real()) +
                   "," + format_double(v.imag()) + "," +
                   format_double((cfg.s - 1.0) * v.real()) + "\n";
        }
    }
    emit(cfg, out);
    return 0;
}

int cmd_qdist(const ExperimentConfig& cfg) {
    DensityParams p = DensityParams::make(cfg.z0(), cfg.z1());
    Point z1c(p.x1p, p.y1p);  // z1 in the frame where z0 = i
    double r = std::acosh(cfg.max_threshold());
    std::string out = "t,Q_exact,Q_asymptotic,gap\n";
    for (int j = 0; j < cfg.bins; ++j) {
        double t = -M_PI + (j + 0.5) * 2.0 * M_PI / cfg.bins;
        double qe = sector_radius_exact(z1c, t, r);
        double qa = sector_radius_asymptotic(p, t, r);
        out += format_double(t) + "," + format_double(qe) + "," + format_double(qa) + "," +
               format_double(std::fabs(std::exp(qe) - std::exp(qa))) + "\n";
    }
    emit(cfg, out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperbolic lattice orbit statistics"};
    app.require_subcommand(1);

    Overrides o;
    int (*action)(const ExperimentConfig&) = nullptr;
    struct Cmd {
        const char* name;
        const char* help;
        int (*fn)(const ExperimentConfig&);
    };
    const Cmd cmds[] = {
        {"enumerate", "orbit ball as CSV", cmd_enumerate},
        {"equidist", "sector counts across thresholds with decay fit", cmd_equidist},
        {"density", "rho/eta/k samples", cmd_density},
        {"theorem2", "line-angle histogram vs eta", cmd_theorem2},
        {"theorem3", "angle histogram vs rho", cmd_theorem3},
        {"expsum", "exponential sums S_n", cmd_expsum},
        {"gseries", "tail-corrected partial G_n sums", cmd_gseries},
        {"qdist", "exact vs asymptotic sector radius Q", cmd_qdist},
    };
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_options(sub, o);
        sub->callback([&action, fn = c.fn] { action = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    try {
        ExperimentConfig cfg = build_config(o);
        return action(cfg);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
