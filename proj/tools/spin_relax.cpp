// Command-line front end: lattice construction, correlator/bound/tomography
// sweeps, spin-squeezing surfaces and the brute-force verification gate.
// Configuration comes from a flat JSON file plus flags; flags win.

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "spin_relax/bounds.hpp"
#include "spin_relax/csv.hpp"
#include "spin_relax/dynamics.hpp"
#include "spin_relax/lattice.hpp"
#include "spin_relax/oracle.hpp"
#include "spin_relax/series_io.hpp"
#include "spin_relax/threading.hpp"
#include "spin_relax/tomography.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace spinrelax;

namespace {

struct RunConfig {
    std::string kind = "triangular-hex";
    std::vector<int> L{16};
    std::vector<double> alpha{1.5};
    double J = 1.0;
    double B = 0.0;
    std::vector<std::string> observables{"xx", "yy", "yz", "x"};
    std::vector<std::size_t> pair;    // empty: centre pair
    std::vector<std::size_t> triple;  // for ppp
    double grid_min = 0.01, grid_max = 100.0;
    std::size_t grid_points = 512;
    std::string grid_spacing = "geometric";
    std::string out = "out";
    double sx = 1.0, sxx = 1.0;
    std::optional<double> sxxx;
    std::string moments_file;
    int threads = 0;
    double theta_min = 0.0, theta_max = 3.14159265358979324;
    std::size_t theta_points = 65;
    int instances = 200;
    unsigned seed = 20130613;
    double tolerance = 1e-10;
};

void apply_json(RunConfig& cfg, const json& j) {
    auto get_sizes = [](const json& v) {
        std::vector<std::size_t> out;
        for (const auto& x : v) out.push_back(x.get<std::size_t>());
        return out;
    };
    for (const auto& [key, value] : j.items()) {
        if (key == "kind") cfg.kind = value.get<std::string>();
        else if (key == "L") {
            cfg.L.clear();
            if (value.is_array())
                for (const auto& x : value) cfg.L.push_back(x.get<int>());
            else cfg.L.push_back(value.get<int>());
        } else if (key == "alpha") {
            cfg.alpha.clear();
            if (value.is_array())
                for (const auto& x : value) cfg.alpha.push_back(x.get<double>());
            else cfg.alpha.push_back(value.get<double>());
        } else if (key == "J") cfg.J = value.get<double>();
        else if (key == "B") cfg.B = value.get<double>();
        else if (key == "observables") cfg.observables = value.get<std::vector<std::string>>();
        else if (key == "pair") cfg.pair = get_sizes(value);
        else if (key == "triple") cfg.triple = get_sizes(value);
        else if (key == "grid_min") cfg.grid_min = value.get<double>();
        else if (key == "grid_max") cfg.grid_max = value.get<double>();
        else if (key == "grid_points") cfg.grid_points = value.get<std::size_t>();
        else if (key == "grid_spacing") cfg.grid_spacing = value.get<std::string>();
        else if (key == "out") cfg.out = value.get<std::string>();
        else if (key == "sx") cfg.sx = value.get<double>();
        else if (key == "sxx") cfg.sxx = value.get<double>();
        else if (key == "sxxx") {
            if (!value.is_null()) cfg.sxxx = value.get<double>();
        } else if (key == "moments_file") cfg.moments_file = value.get<std::string>();
        else if (key == "threads") cfg.threads = value.get<int>();
        else if (key == "theta_min") cfg.theta_min = value.get<double>();
        else if (key == "theta_max") cfg.theta_max = value.get<double>();
        else if (key == "theta_points") cfg.theta_points = value.get<std::size_t>();
        else if (key == "instances") cfg.instances = value.get<int>();
        else if (key == "seed") cfg.seed = value.get<unsigned>();
        else if (key == "tolerance") cfg.tolerance = value.get<double>();
        else throw CLI::ValidationError("config", "unknown config key: " + key);
    }
}

std::vector<double> make_grid(const RunConfig& cfg) {
    if (cfg.grid_spacing == "linear")
        return linear_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points);
    if (cfg.grid_spacing == "geometric")
        return geometric_grid(cfg.grid_min, cfg.grid_max, cfg.grid_points);
    throw CLI::ValidationError("grid_spacing", "must be linear or geometric");
}

InitialMoments make_moments(const RunConfig& cfg) {
    auto m = InitialMoments::uniform(cfg.sx, cfg.sxx, cfg.sxxx);
    if (cfg.moments_file.empty()) return m;
    std::ifstream in(cfg.moments_file);
    if (!in) throw CLI::ValidationError("moments_file", "cannot open " + cfg.moments_file);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto f = split_csv_line(line);
        if (f[0] == "sx" && f.size() == 3) m.set_sx(std::stoul(f[1]), std::stod(f[2]));
        else if (f[0] == "sxx" && f.size() == 4)
            m.set_sxx(std::stoul(f[1]), std::stoul(f[2]), std::stod(f[3]));
        else if (f[0] == "sxxx" && f.size() == 5)
            m.set_sxxx(std::stoul(f[1]), std::stoul(f[2]), std::stoul(f[3]), std::stod(f[4]));
        else throw CLI::ValidationError("moments_file", "bad row: " + line);
    }
    return m;
}

std::ofstream open_out(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.out);
    const auto path = fs::path(cfg.out) / name;
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path.string());
    std::cout << "wrote " << path.string() << "\n";
    return os;
}

std::string tag(const RunConfig& cfg, int L, double alpha) {
    return "L" + std::to_string(L) + "_alpha" + format_double(alpha) + "_B" +
           format_double(cfg.B);
}

std::pair<std::size_t, std::size_t> resolve_pair(const RunConfig& cfg, const Lattice& lat) {
    if (cfg.pair.empty()) return center_pair(lat);
    if (cfg.pair.size() != 2)
        throw CLI::ValidationError("pair", "needs exactly two site indices");
    if (cfg.pair[0] >= lat.n_sites() || cfg.pair[1] >= lat.n_sites() ||
        cfg.pair[0] == cfg.pair[1])
        throw CLI::ValidationError("pair", "indices must be distinct and in range");
    return {cfg.pair[0], cfg.pair[1]};
}

int cmd_lattice(const RunConfig& cfg) {
    for (int L : cfg.L) {
        const auto lat = build_lattice(lattice_kind_from_string(cfg.kind), L);
        auto os = open_out(cfg, "lattice_" + cfg.kind + "_L" + std::to_string(L) + ".csv");
        write_lattice_csv(lat, os);
    }
    return 0;
}

int cmd_correlators(const RunConfig& cfg) {
    if (cfg.observables.empty())
        throw CLI::ValidationError("observables", "at least one observable is required");
    const auto grid = make_grid(cfg);
    const auto m = make_moments(cfg);
    for (int L : cfg.L) {
        const auto lat = build_lattice(lattice_kind_from_string(cfg.kind), L);
        if (lat.n_sites() < 2)
            throw CLI::ValidationError("L", "no pair exists on a single-site lattice");
        const auto [pi, pj] = resolve_pair(cfg, lat);
        for (double alpha : cfg.alpha) {
            const auto c = CouplingMatrix::power_law(lat, cfg.J, alpha);
            for (const auto& name : cfg.observables) {
                const auto obs = observable_from_string(name);
                std::vector<std::size_t> idx{pi, pj};
                if (obs == Observable::PPP) {
                    if (cfg.triple.size() == 3) idx = cfg.triple;
                    else idx.push_back(0);
                }
                auto s = evaluate_series(m, c, obs, idx, grid, cfg.B, cfg.threads);
                s.L = L;
                auto os = open_out(cfg, name + "_" + tag(cfg, L, alpha) + ".csv");
                write_series_csv(s, os);
            }
        }
    }
    return 0;
}

int cmd_bounds(const RunConfig& cfg) {
    const auto grid = make_grid(cfg);
    for (int L : cfg.L) {
        const auto lat = build_lattice(lattice_kind_from_string(cfg.kind), L);
        const auto [pi, pj] = resolve_pair(cfg, lat);
        const double delta = pair_distance(lat, pi, pj);
        for (double alpha : cfg.alpha) {
            auto os = open_out(cfg, "bounds_" + tag(cfg, L, alpha) + ".csv");
            write_bounds_csv(grid, alpha, lat.n_sites(), delta, cfg.J, os);
        }
    }
    // relaxation-time bound across exponents
    std::vector<double> alphas;
    for (double a = 0.05; a <= 3.0 + 1e-9; a += 0.05) alphas.push_back(a);
    auto os = open_out(cfg, "tau_bound.csv");
    write_tau_table_csv(alphas, 2.0, cfg.J, os);
    return 0;
}

int cmd_tomography(const RunConfig& cfg) {
    const auto grid = make_grid(cfg);
    const auto m = make_moments(cfg);
    for (int L : cfg.L) {
        const auto lat = build_lattice(lattice_kind_from_string(cfg.kind), L);
        if (lat.n_sites() < 3)
            throw CLI::ValidationError("L", "tomography needs at least three sites");
        const auto [pi, pj] = resolve_pair(cfg, lat);
        for (double alpha : cfg.alpha) {
            const auto c = CouplingMatrix::power_law(lat, cfg.J, alpha);
            std::vector<TomographyRow> rows(grid.size());
            parallel_for(grid.size(), cfg.threads, [&](std::size_t b, std::size_t e) {
                for (std::size_t k = b; k < e; ++k) {
                    const auto ms = moments_at(m, c, pi, pj, grid[k], cfg.B);
                    const auto rho = rho_two(ms);
                    const auto mods = offdiag_moduli(rho);
                    rows[k] = {grid[k],       purity(rho_one(ms, PairSite::I)),
                               purity(rho),   mods.diag,
                               mods.m14,      mods.m23,
                               mods.m12};
                }
            });
            auto os = open_out(cfg, "tomography_" + tag(cfg, L, alpha) + ".csv");
            write_tomography_csv(rows, os);
        }
    }
    return 0;
}

int cmd_squeeze(const RunConfig& cfg) {
    const auto grid = make_grid(cfg);
    const auto m = make_moments(cfg);
    if (cfg.theta_points < 2) throw CLI::ValidationError("theta_points", "needs >= 2");
    for (int L : cfg.L) {
        const auto lat = build_lattice(lattice_kind_from_string(cfg.kind), L);
        for (double alpha : cfg.alpha) {
            const auto c = CouplingMatrix::power_law(lat, cfg.J, alpha);
            std::vector<SqueezeRow> rows;
            rows.reserve(grid.size() * cfg.theta_points);
            for (double t : grid) {
                const auto sums = jz2_pair_sums(m, c, t, cfg.B, cfg.threads);
                for (std::size_t q = 0; q < cfg.theta_points; ++q) {
                    const double th = cfg.theta_min +
                                      (cfg.theta_max - cfg.theta_min) *
                                          static_cast<double>(q) /
                                          static_cast<double>(cfg.theta_points - 1);
                    const double st = std::sin(th), ct = std::cos(th);
                    const double val = static_cast<double>(lat.n_sites()) / 4.0 +
                                       0.25 * (st * st * sums.s_yy - st * ct * sums.s_yzzy);
                    rows.push_back({th, t, val});
                }
            }
            auto os = open_out(cfg, "squeeze_" + tag(cfg, L, alpha) + ".csv");
            write_squeeze_csv(rows, os);
        }
    }
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    VerificationConfig vc;
    vc.instances = cfg.instances;
    vc.seed = cfg.seed;
    vc.tolerance = cfg.tolerance;
    vc.threads = cfg.threads;
    const auto report = run_verification(vc);
    const auto text = to_json(report);
    std::cout << text;
    auto os = open_out(cfg, "verify_report.json");
    os << text;
    return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact long-range Ising dynamics: correlators, bounds, tomography"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file (flags override it)")
        ->check(CLI::ExistingFile);

    RunConfig flags;  // receives command-line values
    std::string spacing_flag;
    app.add_option("--kind", flags.kind, "lattice kind");
    auto* oL = app.add_option("--L", flags.L, "side lengths");
    auto* oA = app.add_option("--alpha", flags.alpha, "power-law exponents");
    auto* oJ = app.add_option("--J", flags.J, "coupling scale");
    auto* oB = app.add_option("--B", flags.B, "longitudinal field");
    auto* oObs = app.add_option("--observables", flags.observables, "observable tags");
    auto* oPair = app.add_option("--pair", flags.pair, "pair site indices");
    auto* oTriple = app.add_option("--triple", flags.triple, "triple site indices");
    auto* oGmin = app.add_option("--grid-min", flags.grid_min, "grid start");
    auto* oGmax = app.add_option("--grid-max", flags.grid_max, "grid end");
    auto* oGpts = app.add_option("--grid-points", flags.grid_points, "grid size");
    auto* oGsp = app.add_option("--grid-spacing", spacing_flag, "linear|geometric");
    auto* oOut = app.add_option("--out", flags.out, "output directory");
    auto* oSx = app.add_option("--sx", flags.sx, "uniform first moment");
    auto* oSxx = app.add_option("--sxx", flags.sxx, "uniform second moment");
    double sxxx_flag = 0.0;
    auto* oSxxx = app.add_option("--sxxx", sxxx_flag, "uniform third moment");
    auto* oMf = app.add_option("--moments-file", flags.moments_file, "per-site moment overrides");
    auto* oThreads = app.add_option("--threads", flags.threads, "worker threads (0 = auto)");
    auto* oTmin = app.add_option("--theta-min", flags.theta_min, "rotation angle start");
    auto* oTmax = app.add_option("--theta-max", flags.theta_max, "rotation angle end");
    auto* oTpts = app.add_option("--theta-points", flags.theta_points, "rotation angle count");
    auto* oInst = app.add_option("--instances", flags.instances, "verification instances");
    auto* oSeed = app.add_option("--seed", flags.seed, "verification seed");
    auto* oTol = app.add_option("--tolerance", flags.tolerance, "verification tolerance");

    auto* sc_lattice = app.add_subcommand("lattice", "write site-position CSVs");
    auto* sc_corr = app.add_subcommand("correlators", "write correlator series CSVs");
    auto* sc_bounds = app.add_subcommand("bounds", "write bound overlays and the tau table");
    auto* sc_tomo = app.add_subcommand("tomography", "write purity and coherence series");
    auto* sc_squeeze = app.add_subcommand("squeeze", "write the <Jz^2>(theta, t) surface");
    auto* sc_verify = app.add_subcommand("verify", "run the brute-force comparison gate");
    for (auto* sc : {sc_lattice, sc_corr, sc_bounds, sc_tomo, sc_squeeze, sc_verify})
        sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;  // defaults
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            json j;
            in >> j;
            apply_json(cfg, j);
        }
        auto take = [](const CLI::Option* opt, auto& dst, const auto& src) {
            if (opt->count() > 0) dst = src;
        };
        if (app.get_option("--kind")->count() > 0) cfg.kind = flags.kind;
        take(oL, cfg.L, flags.L);
        take(oA, cfg.alpha, flags.alpha);
        take(oJ, cfg.J, flags.J);
        take(oB, cfg.B, flags.B);
        take(oObs, cfg.observables, flags.observables);
        take(oPair, cfg.pair, flags.pair);
        take(oTriple, cfg.triple, flags.triple);
        take(oGmin, cfg.grid_min, flags.grid_min);
        take(oGmax, cfg.grid_max, flags.grid_max);
        take(oGpts, cfg.grid_points, flags.grid_points);
        if (oGsp->count() > 0) cfg.grid_spacing = spacing_flag;
        take(oOut, cfg.out, flags.out);
        take(oSx, cfg.sx, flags.sx);
        take(oSxx, cfg.sxx, flags.sxx);
        if (oSxxx->count() > 0) cfg.sxxx = sxxx_flag;
        take(oMf, cfg.moments_file, flags.moments_file);
        take(oThreads, cfg.threads, flags.threads);
        take(oTmin, cfg.theta_min, flags.theta_min);
        take(oTmax, cfg.theta_max, flags.theta_max);
        take(oTpts, cfg.theta_points, flags.theta_points);
        take(oInst, cfg.instances, flags.instances);
        take(oSeed, cfg.seed, flags.seed);
        take(oTol, cfg.tolerance, flags.tolerance);

        if (sc_lattice->parsed()) return cmd_lattice(cfg);
        if (sc_corr->parsed()) return cmd_correlators(cfg);
        if (sc_bounds->parsed()) return cmd_bounds(cfg);
        if (sc_tomo->parsed()) return cmd_tomography(cfg);
        if (sc_squeeze->parsed()) return cmd_squeeze(cfg);
        if (sc_verify->parsed()) return cmd_verify(cfg);
    } catch (const CLI::ValidationError& err) {
        std::cerr << "config error [" << err.get_name() << "] " << err.what() << "\n";
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}
