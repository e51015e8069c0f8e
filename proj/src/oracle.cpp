#include "spin_relax/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "spin_relax/csv.hpp"
#include "spin_relax/dynamics.hpp"
#include "spin_relax/threading.hpp"
#include "spin_relax/tomography.hpp"

namespace spinrelax {

namespace {

using cd = std::complex<double>;

void check_size(int n) {
    if (n < 1 || n > kOracleMaxSites)
        throw std::invalid_argument("oracle handles 1 to 12 spins (exact enumeration)");
}

// z-basis convention: bit b of a configuration is 1 when spin b points down,
// giving sigma^z eigenvalue -1. Bit 0 is site 0.
inline double zval(std::size_t config, std::size_t site) {
    return (config >> site) & 1U ? -1.0 : 1.0;
}

// Amplitudes of the x-basis product configuration `xc` (bit 1: site in
// |-x>): <z|xc> = 2^{-N/2} * (-1)^{popcount(z & xc)}.
inline double x_amp_sign(std::size_t z, std::size_t xc) {
    return std::popcount(z & xc) & 1U ? -1.0 : 1.0;
}

}  // namespace

DenseState build_product_state(std::span<const double> sx) {
    check_size(static_cast<int>(sx.size()));
    for (double v : sx)
        if (!(std::abs(v) <= 1.0))
            throw std::invalid_argument("first moments must lie in [-1, 1]");
    DenseState st;
    st.n_sites = static_cast<int>(sx.size());
    st.sx.assign(sx.begin(), sx.end());
    const std::size_t nx = std::size_t{1} << st.n_sites;
    st.weights.resize(nx);
    for (std::size_t xc = 0; xc < nx; ++xc) {
        double w = 1.0;
        for (int i = 0; i < st.n_sites; ++i) {
            const double pm = (xc >> i) & 1U ? -1.0 : 1.0;
            w *= 0.5 * (1.0 + pm * sx[static_cast<std::size_t>(i)]);
        }
        st.weights[xc] = w;
    }
    return st;
}

OracleContext make_oracle_context(const CouplingMatrix& c, double B) {
    const int n = static_cast<int>(c.n_sites());
    check_size(n);
    OracleContext ctx;
    ctx.n_sites = n;
    const std::size_t dim = std::size_t{1} << n;
    ctx.energies.assign(dim, 0.0);
    for (std::size_t z = 0; z < dim; ++z) {
        double e = 0.0;
        for (int i = 0; i < n; ++i) {
            const double zi = zval(z, static_cast<std::size_t>(i));
            for (int j = i + 1; j < n; ++j)
                e -= c.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * zi *
                     zval(z, static_cast<std::size_t>(j));
            e -= B * zi;
        }
        ctx.energies[z] = e;
    }
    return ctx;
}

namespace {

// e^{-i E_z t} for every z configuration; shared by all x configurations.
std::vector<cd> phase_table(const OracleContext& ctx, double t) {
    const std::size_t dim = ctx.energies.size();
    std::vector<cd> ph(dim);
    for (std::size_t z = 0; z < dim; ++z) {
        const double phase = -ctx.energies[z] * t;
        ph[z] = cd(std::cos(phase), std::sin(phase));
    }
    return ph;
}

// Evolved state vector of one x-basis configuration in the z basis.
void evolved_config(const OracleContext& ctx, std::size_t xc, const std::vector<cd>& ph,
                    std::vector<cd>& w) {
    const std::size_t dim = ctx.energies.size();
    const double norm = std::pow(2.0, -0.5 * ctx.n_sites);
    w.resize(dim);
    for (std::size_t z = 0; z < dim; ++z) w[z] = x_amp_sign(z, xc) * norm * ph[z];
}

struct PauliAction {
    std::size_t flip_mask = 0;
    std::vector<std::pair<std::size_t, char>> terms;  // site bit, axis
};

PauliAction make_action(int n, std::span<const PauliTerm> obs) {
    PauliAction act;
    for (const auto& term : obs) {
        if (term.site >= static_cast<std::size_t>(n))
            throw std::invalid_argument("observable site out of range");
        if (term.axis != 'X' && term.axis != 'Y' && term.axis != 'Z')
            throw std::invalid_argument("Pauli axis must be X, Y or Z");
        for (const auto& prev : act.terms)
            if (prev.first == term.site)
                throw std::invalid_argument("repeated site in Pauli string");
        if (term.axis != 'Z') act.flip_mask |= std::size_t{1} << term.site;
        act.terms.emplace_back(term.site, term.axis);
    }
    return act;
}

// phase factor phi(z) with A|z> = phi(z) |z ^ flip_mask>
inline cd pauli_phase(const PauliAction& act, std::size_t z) {
    cd phi(1.0, 0.0);
    for (const auto& [site, axis] : act.terms) {
        const bool down = (z >> site) & 1U;
        switch (axis) {
            case 'X': break;
            case 'Y': phi *= down ? cd(0.0, -1.0) : cd(0.0, 1.0); break;
            default: phi *= down ? -1.0 : 1.0; break;
        }
    }
    return phi;
}

}  // namespace

double evolve_expectation(const DenseState& state, const OracleContext& ctx, double t,
                          std::span<const PauliTerm> obs) {
    if (state.n_sites != ctx.n_sites)
        throw std::invalid_argument("state and context sizes differ");
    const auto act = make_action(ctx.n_sites, obs);
    const std::size_t dim = ctx.energies.size();
    const auto ph = phase_table(ctx, t);
    // matrix-element factor <z|U* ... U|zf>, identical for every ensemble member
    std::vector<cd> q(dim);
    for (std::size_t z = 0; z < dim; ++z) {
        const std::size_t zf = z ^ act.flip_mask;
        q[z] = std::conj(ph[z]) * pauli_phase(act, zf) * ph[zf];
    }
    const double norm2 = std::pow(2.0, -ctx.n_sites);
    cd total(0.0, 0.0);
    for (std::size_t xc = 0; xc < state.weights.size(); ++xc) {
        const double wt = state.weights[xc];
        if (wt == 0.0) continue;
        cd acc(0.0, 0.0);
        for (std::size_t z = 0; z < dim; ++z) {
            // product of the two x-basis amplitude signs of this member
            const bool neg =
                (std::popcount(z & xc) + std::popcount((z ^ act.flip_mask) & xc)) & 1U;
            acc += neg ? -q[z] : q[z];
        }
        total += wt * acc;
    }
    return total.real() * norm2;
}

double evolve_expectation(const DenseState& state, const CouplingMatrix& c, double B, double t,
                          std::span<const PauliTerm> obs) {
    const auto ctx = make_oracle_context(c, B);
    return evolve_expectation(state, ctx, t, obs);
}

std::complex<double> evolve_ladder_expectation(const DenseState& state,
                                               const OracleContext& ctx, double t,
                                               std::span<const std::size_t> sites) {
    // sigma^+ = |up><down|: maps z-configs with the site bit set to unset.
    if (state.n_sites != ctx.n_sites)
        throw std::invalid_argument("state and context sizes differ");
    std::size_t mask = 0;
    for (std::size_t s : sites) {
        if (s >= static_cast<std::size_t>(ctx.n_sites))
            throw std::invalid_argument("observable site out of range");
        if (mask & (std::size_t{1} << s))
            throw std::invalid_argument("repeated site in ladder string");
        mask |= std::size_t{1} << s;
    }
    const std::size_t dim = ctx.energies.size();
    std::vector<cd> w;
    cd total(0.0, 0.0);
    for (std::size_t xc = 0; xc < state.weights.size(); ++xc) {
        const double wt = state.weights[xc];
        if (wt == 0.0) continue;
        evolved_config(ctx, xc, t, w);
        cd acc(0.0, 0.0);
        for (std::size_t z = 0; z < dim; ++z) {
            if (z & mask) continue;        // bra needs all listed sites up
            const std::size_t zf = z | mask;  // ket component with them down
            acc += std::conj(w[z]) * w[zf];
        }
        total += wt * acc;
    }
    return total;
}

Eigen::MatrixXcd reduced_density(const DenseState& state, const OracleContext& ctx, double t,
                                 std::span<const std::size_t> keep) {
    if (state.n_sites != ctx.n_sites)
        throw std::invalid_argument("state and context sizes differ");
    if (keep.empty() || keep.size() > static_cast<std::size_t>(ctx.n_sites))
        throw std::invalid_argument("keep list must name 1..N sites");
    std::size_t keep_mask = 0;
    for (std::size_t s : keep) {
        if (s >= static_cast<std::size_t>(ctx.n_sites))
            throw std::invalid_argument("keep site out of range");
        if (keep_mask & (std::size_t{1} << s))
            throw std::invalid_argument("repeated site in keep list");
        keep_mask |= std::size_t{1} << s;
    }
    const std::size_t dim = ctx.energies.size();
    const std::size_t kd = std::size_t{1} << keep.size();
    // sub-index of a full configuration: keep[0] is the high tensor slot,
    // matching |s_keep[0]> x |s_keep[1]> x ...
    auto sub_index = [&](std::size_t z) {
        std::size_t idx = 0;
        for (std::size_t a = 0; a < keep.size(); ++a)
            idx = (idx << 1) | ((z >> keep[a]) & 1U);
        return idx;
    };
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(static_cast<long>(kd), static_cast<long>(kd));
    std::vector<cd> w;
    for (std::size_t xc = 0; xc < state.weights.size(); ++xc) {
        const double wt = state.weights[xc];
        if (wt == 0.0) continue;
        evolved_config(ctx, xc, t, w);
        for (std::size_t z = 0; z < dim; ++z) {
            const std::size_t a = sub_index(z);
            const std::size_t rest = z & ~keep_mask;
            // pair z with every z' sharing the traced-out part
            for (std::size_t b = 0; b < kd; ++b) {
                std::size_t zb = rest;
                for (std::size_t s = 0; s < keep.size(); ++s)
                    if ((b >> (keep.size() - 1 - s)) & 1U) zb |= std::size_t{1} << keep[s];
                rho(static_cast<long>(a), static_cast<long>(b)) +=
                    wt * w[z] * std::conj(w[zb]);
            }
        }
    }
    return rho;
}

double jz2_expectation(const DenseState& state, const OracleContext& ctx, double t,
                       double theta) {
    if (state.n_sites != ctx.n_sites)
        throw std::invalid_argument("state and context sizes differ");
    const std::size_t dim = ctx.energies.size();
    const int n = ctx.n_sites;
    const double ct = std::cos(theta), st = std::sin(theta);
    std::vector<cd> w, v;
    double total = 0.0;
    for (std::size_t xc = 0; xc < state.weights.size(); ++xc) {
        const double wt = state.weights[xc];
        if (wt == 0.0) continue;
        evolved_config(ctx, xc, t, w);
        // v = J_rot |w>, J_rot = sum_i (cos(theta) Z_i - sin(theta) Y_i)/2
        v.assign(dim, cd(0.0, 0.0));
        for (std::size_t z = 0; z < dim; ++z) {
            for (int i = 0; i < n; ++i) {
                const bool down = (z >> i) & 1U;
                v[z] += 0.5 * ct * (down ? -1.0 : 1.0) * w[z];
                // -sin(theta) Y_i / 2: Y|z_i> = i(-1)^{z_i} |flip z_i>
                const std::size_t zf = z ^ (std::size_t{1} << i);
                const cd yphase = (zf >> i) & 1U ? cd(0.0, -1.0) : cd(0.0, 1.0);
                v[z] += -0.5 * st * yphase * w[zf];
            }
        }
        double acc = 0.0;
        for (std::size_t z = 0; z < dim; ++z) acc += std::norm(v[z]);
        total += wt * acc;
    }
    return total;
}

double energy_expectation(const DenseState& state, const OracleContext& ctx, double t) {
    const std::size_t dim = ctx.energies.size();
    std::vector<cd> w;
    double total = 0.0;
    for (std::size_t xc = 0; xc < state.weights.size(); ++xc) {
        const double wt = state.weights[xc];
        if (wt == 0.0) continue;
        evolved_config(ctx, xc, t, w);
        double acc = 0.0;
        for (std::size_t z = 0; z < dim; ++z) acc += ctx.energies[z] * std::norm(w[z]);
        total += wt * acc;
    }
    return total;
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    // fixed mapping so streams are identical across standard libraries
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

struct InstanceResult {
    std::vector<double> max_dev;  // per observable slot
};

const std::vector<std::string>& observable_labels() {
    static const std::vector<std::string> labels = {
        "xx", "yy", "xy", "xz", "yz", "zz", "one_spin_x", "one_spin_y", "ppp", "jz2_theta"};
    return labels;
}

}  // namespace

VerificationReport run_verification(const VerificationConfig& cfg) {
    const auto t_start = std::chrono::steady_clock::now();
    const auto& labels = observable_labels();
    const std::size_t nobs = labels.size();

    std::vector<InstanceResult> results(static_cast<std::size_t>(cfg.instances));
    // per-instance RNG seeds drawn up front so threading cannot reorder draws
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(cfg.instances));
    std::mt19937_64 seeder(cfg.seed);
    for (auto& s : seeds) s = seeder();

    parallel_for(static_cast<std::size_t>(cfg.instances), cfg.threads,
                 [&](std::size_t lo, std::size_t hi) {
        for (std::size_t inst = lo; inst < hi; ++inst) {
            std::mt19937_64 rng(seeds[inst]);
            InstanceResult res;
            res.max_dev.assign(nobs, 0.0);

            // geometry: chain or a hex fragment trimmed to the target size
            const int n = 2 + static_cast<int>(rng() % 9);  // 2..10
            const bool use_hex = n >= 7 && (rng() & 1U);
            Lattice lat;
            if (use_hex) {
                // hex fragment: L=3 patch (19 sites) cut back to n sites in ring order
                lat = build_lattice(LatticeKind::TriangularHex, 3);
                while (static_cast<int>(lat.n_sites()) > n) lat.positions.pop_back();
            } else {
                lat = build_lattice(LatticeKind::Chain, n);
            }
            const double alpha = uniform(rng, 0.0, cfg.alpha_max);
            const double J = uniform(rng, 0.5, 1.5);
            const double B = uniform(rng, 0.0, cfg.b_max);
            const auto c = CouplingMatrix::power_law(lat, J, alpha);

            std::vector<double> sx(lat.n_sites());
            for (auto& v : sx) v = uniform(rng, -1.0, 1.0);
            const auto state = build_product_state(sx);
            const auto moments = InitialMoments::product_state(sx);
            const auto ctx = make_oracle_context(c, B);

            const std::size_t N = lat.n_sites();
            std::size_t i = rng() % N, j = rng() % N;
            while (j == i) j = rng() % N;
            std::size_t k = 0;
            if (N >= 3) {
                k = rng() % N;
                while (k == i || k == j) k = rng() % N;
            }

            for (int rep = 0; rep < cfg.times_per_instance; ++rep) {
                const double t = uniform(rng, 0.0, cfg.t_max);
                const double theta = uniform(rng, 0.0, 3.14159265358979324);
                auto record = [&](std::size_t slot, double analytic, double brute) {
                    res.max_dev[slot] =
                        std::max(res.max_dev[slot], std::abs(analytic - brute));
                };
                using PT = PauliTerm;
                const PT xi{i, 'X'}, yi{i, 'Y'}, zi{i, 'Z'};
                const PT xj{j, 'X'}, yj{j, 'Y'}, zj{j, 'Z'};
                record(0, corr_xx(moments, c, i, j, t, B),
                       evolve_expectation(state, ctx, t, std::vector<PT>{xi, xj}));
                record(1, corr_yy(moments, c, i, j, t, B),
                       evolve_expectation(state, ctx, t, std::vector<PT>{yi, yj}));
                record(2, corr_xy(moments, c, i, j, t, B),
                       evolve_expectation(state, ctx, t, std::vector<PT>{xi, yj}));
                record(3, corr_xz(moments, c, i, j, t, B),
                       evolve_expectation(state, ctx, t, std::vector<PT>{xi, zj}));
                record(4, corr_yz(moments, c, i, j, t, B),
                       evolve_expectation(state, ctx, t, std::vector<PT>{yi, zj}));
                record(5, corr_zz(i, j, t),
                       evolve_expectation(state, ctx, t, std::vector<PT>{zi, zj}));
                record(6, one_spin_x(moments, c, i, t, B),
                       evolve_expectation(state, ctx, t, std::vector<PT>{xi}));
                record(7, one_spin_y(moments, c, i, t, B),
                       evolve_expectation(state, ctx, t, std::vector<PT>{yi}));
                if (N >= 3) {
                    const auto ppp = corr_ppp(moments, c, i, j, k, t, B);
                    const auto ppp_bf = evolve_ladder_expectation(
                        state, ctx, t, std::vector<std::size_t>{i, j, k});
                    record(8, 0.0, std::abs(ppp - ppp_bf));
                }
                record(9, jz2_theta(moments, c, theta, t, B),
                       jz2_expectation(state, ctx, t, theta));
            }
            results[inst] = std::move(res);
        }
    });

    VerificationReport report;
    report.tolerance = cfg.tolerance;
    report.instances = cfg.instances;
    report.entries.resize(nobs);
    for (std::size_t s = 0; s < nobs; ++s) {
        report.entries[s].observable = labels[s];
        report.entries[s].samples = static_cast<std::size_t>(cfg.instances) *
                                    static_cast<std::size_t>(cfg.times_per_instance);
    }
    for (const auto& res : results)
        for (std::size_t s = 0; s < nobs; ++s)
            report.entries[s].max_abs_dev =
                std::max(report.entries[s].max_abs_dev, res.max_dev[s]);
    for (const auto& e : report.entries)
        report.max_abs_dev = std::max(report.max_abs_dev, e.max_abs_dev);
    report.passed = report.max_abs_dev <= cfg.tolerance;
    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return report;
}

std::string to_json(const VerificationReport& report) {
    std::ostringstream os;
    os << "{\n  \"passed\": " << (report.passed ? "true" : "false")
       << ",\n  \"tolerance\": " << format_double(report.tolerance)
       << ",\n  \"instances\": " << report.instances
       << ",\n  \"max_abs_dev\": " << format_double(report.max_abs_dev)
       << ",\n  \"elapsed_seconds\": " << format_double(report.elapsed_seconds)
       << ",\n  \"observables\": [\n";
    for (std::size_t k = 0; k < report.entries.size(); ++k) {
        const auto& e = report.entries[k];
        os << "    {\"observable\": \"" << e.observable
           << "\", \"max_abs_dev\": " << format_double(e.max_abs_dev)
           << ", \"samples\": " << e.samples << "}" << (k + 1 < report.entries.size() ? "," : "")
           << "\n";
    }
    os << "  ]\n}\n";
    return os.str();
}

}  // namespace spinrelax
