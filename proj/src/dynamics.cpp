#include "spin_relax/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spin_relax/kernels.hpp"
#include "spin_relax/threading.hpp"

namespace spinrelax {

namespace {

void check_moment(double v) {
    if (!(std::abs(v) <= 1.0)) throw std::invalid_argument("moments must lie in [-1, 1]");
}

std::pair<std::uint64_t, std::uint64_t> ordered(std::size_t a, std::size_t b) {
    return a < b ? std::pair<std::uint64_t, std::uint64_t>{a, b}
                 : std::pair<std::uint64_t, std::uint64_t>{b, a};
}

std::array<std::uint64_t, 3> ordered3(std::size_t a, std::size_t b, std::size_t c) {
    std::array<std::uint64_t, 3> k{a, b, c};
    std::sort(k.begin(), k.end());
    return k;
}

}  // namespace

InitialMoments InitialMoments::uniform(double sx, double sxx, std::optional<double> sxxx) {
    check_moment(sx);
    check_moment(sxx);
    if (sxxx) check_moment(*sxxx);
    InitialMoments m;
    m.uniform_sx_ = sx;
    m.uniform_sxx_ = sxx;
    m.uniform_sxxx_ = sxxx;
    return m;
}

InitialMoments InitialMoments::product_state(std::vector<double> sx) {
    for (double v : sx) check_moment(v);
    InitialMoments m;
    m.product_mode_ = true;
    m.site_sx_ = std::move(sx);
    return m;
}

void InitialMoments::set_sx(std::size_t i, double v) {
    check_moment(v);
    sx_over_[i] = v;
}

void InitialMoments::set_sxx(std::size_t i, std::size_t j, double v) {
    if (i == j) throw std::invalid_argument("second moments are defined for distinct sites");
    check_moment(v);
    sxx_over_[ordered(i, j)] = v;
}

void InitialMoments::set_sxxx(std::size_t i, std::size_t j, std::size_t k, double v) {
    if (i == j || j == k || i == k)
        throw std::invalid_argument("third moments need three distinct sites");
    check_moment(v);
    sxxx_over_[ordered3(i, j, k)] = v;
}

double InitialMoments::sx(std::size_t i) const {
    if (const auto it = sx_over_.find(i); it != sx_over_.end()) return it->second;
    if (product_mode_) {
        if (i >= site_sx_.size()) throw std::invalid_argument("site index out of range");
        return site_sx_[i];
    }
    return uniform_sx_;
}

double InitialMoments::sxx(std::size_t i, std::size_t j) const {
    if (i == j) throw std::invalid_argument("second moments are defined for distinct sites");
    if (const auto it = sxx_over_.find(ordered(i, j)); it != sxx_over_.end()) return it->second;
    if (product_mode_) return sx(i) * sx(j);
    return uniform_sxx_;
}

bool InitialMoments::has_sxxx() const {
    return product_mode_ || uniform_sxxx_.has_value() || !sxxx_over_.empty();
}

double InitialMoments::sxxx(std::size_t i, std::size_t j, std::size_t k) const {
    if (i == j || j == k || i == k)
        throw std::invalid_argument("third moments need three distinct sites");
    if (const auto it = sxxx_over_.find(ordered3(i, j, k)); it != sxxx_over_.end())
        return it->second;
    if (product_mode_) return sx(i) * sx(j) * sx(k);
    if (!uniform_sxxx_) throw std::invalid_argument("third moments are not populated");
    return *uniform_sxxx_;
}

Observable observable_from_string(const std::string& s) {
    if (s == "xx") return Observable::XX;
    if (s == "yy") return Observable::YY;
    if (s == "xy") return Observable::XY;
    if (s == "xz") return Observable::XZ;
    if (s == "yz") return Observable::YZ;
    if (s == "zz") return Observable::ZZ;
    if (s == "x") return Observable::X;
    if (s == "y") return Observable::Y;
    if (s == "Pplus") return Observable::PPlus;
    if (s == "Pminus") return Observable::PMinus;
    if (s == "Pz") return Observable::PZ;
    if (s == "ppp") return Observable::PPP;
    throw std::invalid_argument("unknown observable: " + s);
}

std::string to_string(Observable o) {
    switch (o) {
        case Observable::XX: return "xx";
        case Observable::YY: return "yy";
        case Observable::XY: return "xy";
        case Observable::XZ: return "xz";
        case Observable::YZ: return "yz";
        case Observable::ZZ: return "zz";
        case Observable::X: return "x";
        case Observable::Y: return "y";
        case Observable::PPlus: return "Pplus";
        case Observable::PMinus: return "Pminus";
        case Observable::PZ: return "Pz";
        case Observable::PPP: return "ppp";
    }
    throw std::invalid_argument("unknown observable");
}

std::vector<double> linear_grid(double t0, double t1, std::size_t n) {
    if (n < 2 || !(t1 > t0)) throw std::invalid_argument("need n >= 2 and t1 > t0");
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k)
        t[k] = t0 + (t1 - t0) * static_cast<double>(k) / static_cast<double>(n - 1);
    return t;
}

std::vector<double> geometric_grid(double t0, double t1, std::size_t n) {
    if (n < 2 || !(t0 > 0.0) || !(t1 > t0))
        throw std::invalid_argument("need n >= 2 and 0 < t0 < t1");
    const double lr = std::log(t1 / t0) / static_cast<double>(n - 1);
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k) t[k] = t0 * std::exp(lr * static_cast<double>(k));
    return t;
}

std::vector<double> power_spaced_grid(double t_max, double p, std::size_t n) {
    if (n < 2 || !(t_max > 0.0) || !(p > 0.0))
        throw std::invalid_argument("need n >= 2, t_max > 0 and p > 0");
    const double u_max = std::pow(t_max, p);
    std::vector<double> t(n);
    for (std::size_t k = 0; k < n; ++k)
        t[k] = std::pow(u_max * static_cast<double>(k) / static_cast<double>(n - 1), 1.0 / p);
    return t;
}

namespace {

// Precomputed cosine arguments for one pair: 2(J_ki + J_kj), 2(J_ki - J_kj)
// over k != i,j, and 2 J_ik over k != i,j for the P^z product.
struct PairArgs {
    std::vector<double> sum2, diff2, site2;
    double j_ij = 0.0;
};

PairArgs make_pair_args(const CouplingMatrix& c, std::size_t i, std::size_t j) {
    if (i == j) throw std::invalid_argument("pair operations require distinct sites");
    const auto ri = c.row(i), rj = c.row(j);
    PairArgs a;
    const std::size_t n = c.n_sites();
    a.sum2.reserve(n - 2);
    a.diff2.reserve(n - 2);
    a.site2.reserve(n - 2);
    for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        a.sum2.push_back(2.0 * (ri[k] + rj[k]));
        a.diff2.push_back(2.0 * (ri[k] - rj[k]));
        a.site2.push_back(2.0 * ri[k]);
    }
    a.j_ij = ri[j];
    return a;
}

std::vector<double> one_spin_args(const CouplingMatrix& c, std::size_t i) {
    const auto ri = c.row(i);
    std::vector<double> a;
    a.reserve(c.n_sites() - 1);
    for (std::size_t k = 0; k < c.n_sites(); ++k)
        if (k != i) a.push_back(2.0 * ri[k]);
    return a;
}

std::vector<double> triple_args(const CouplingMatrix& c, std::size_t i, std::size_t j,
                                std::size_t k) {
    if (i == j || j == k || i == k)
        throw std::invalid_argument("triple operations require distinct sites");
    const auto ri = c.row(i), rj = c.row(j), rk = c.row(k);
    std::vector<double> a;
    a.reserve(c.n_sites() - 3);
    for (std::size_t l = 0; l < c.n_sites(); ++l)
        if (l != i && l != j && l != k) a.push_back(2.0 * (ri[l] + rj[l] + rk[l]));
    return a;
}

double pz_from(const PairArgs& a, double sx_i, double t) {
    const SignedLogValue prod = cos_product(a.site2, t);
    return -sx_i * std::sin(2.0 * t * a.j_ij) * prod.to_linear();
}

}  // namespace

SignedLogValue p_plus(const CouplingMatrix& c, std::size_t i, std::size_t j, double t) {
    const auto a = make_pair_args(c, i, j);
    return cos_product(a.sum2, t);
}

SignedLogValue p_minus(const CouplingMatrix& c, std::size_t i, std::size_t j, double t) {
    const auto a = make_pair_args(c, i, j);
    return cos_product(a.diff2, t);
}

double corr_xx(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, std::size_t j,
               double t, double B) {
    const auto a = make_pair_args(c, i, j);
    const double pm = cos_product(a.diff2, t).to_linear();
    const double pp = cos_product(a.sum2, t).to_linear();
    return 0.5 * m.sxx(i, j) * (pm + std::cos(4.0 * B * t) * pp);
}

double corr_yy(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, std::size_t j,
               double t, double B) {
    const auto a = make_pair_args(c, i, j);
    const double pm = cos_product(a.diff2, t).to_linear();
    const double pp = cos_product(a.sum2, t).to_linear();
    return 0.5 * m.sxx(i, j) * (pm - std::cos(4.0 * B * t) * pp);
}

double corr_xy(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, std::size_t j,
               double t, double B) {
    const auto a = make_pair_args(c, i, j);
    const double pp = cos_product(a.sum2, t).to_linear();
    return -0.5 * m.sxx(i, j) * std::sin(4.0 * B * t) * pp;
}

double p_z(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, std::size_t j,
           double t) {
    const auto a = make_pair_args(c, i, j);
    return pz_from(a, m.sx(i), t);
}

double corr_xz(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, std::size_t j,
               double t, double B) {
    return std::sin(2.0 * B * t) * p_z(m, c, i, j, t);
}

double corr_yz(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, std::size_t j,
               double t, double B) {
    return std::cos(2.0 * B * t) * p_z(m, c, i, j, t);
}

double corr_zz(std::size_t i, std::size_t j, double t) {
    if (i == j) throw std::invalid_argument("pair operations require distinct sites");
    (void)t;
    return 0.0;  // vanishes identically for this initial-state class
}

double one_spin_x(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, double t,
                  double B) {
    const auto a = one_spin_args(c, i);
    return m.sx(i) * std::cos(2.0 * B * t) * cos_product(a, t).to_linear();
}

double one_spin_y(const InitialMoments& m, const CouplingMatrix& c, std::size_t i, double t,
                  double B) {
    const auto a = one_spin_args(c, i);
    return -m.sx(i) * std::sin(2.0 * B * t) * cos_product(a, t).to_linear();
}

std::complex<double> corr_ppp(const InitialMoments& m, const CouplingMatrix& c, std::size_t i,
                              std::size_t j, std::size_t k, double t, double B) {
    if (!m.has_sxxx()) throw std::invalid_argument("three-spin correlator needs third moments");
    const auto a = triple_args(c, i, j, k);
    const double amp = 0.125 * m.sxxx(i, j, k) * cos_product(a, t).to_linear();
    return amp * std::exp(std::complex<double>(0.0, -6.0 * B * t));
}

CorrelatorSeries evaluate_series(const InitialMoments& m, const CouplingMatrix& c,
                                 Observable obs, std::span<const std::size_t> indices,
                                 std::vector<double> times, double B, int threads) {
    for (std::size_t k = 1; k < times.size(); ++k)
        if (!(times[k] > times[k - 1]))
            throw std::invalid_argument("time grid must be strictly increasing");
    for (std::size_t idx : indices)
        if (idx >= c.n_sites()) throw std::invalid_argument("site index out of range");

    CorrelatorSeries s;
    s.observable = obs;
    s.B = B;
    s.n_sites = c.n_sites();
    if (c.is_power_law()) {
        s.alpha = c.alpha();
        s.j_scale = c.j_scale();
    }
    const std::size_t nt = times.size();
    s.values.resize(nt);

    const bool is_one_spin = obs == Observable::X || obs == Observable::Y;
    const bool is_triple = obs == Observable::PPP;
    const std::size_t need = is_one_spin ? 1 : (is_triple ? 3 : 2);
    if (indices.size() < need) throw std::invalid_argument("not enough site indices");
    std::copy(indices.begin(), indices.begin() + static_cast<std::ptrdiff_t>(need),
              s.indices.begin());
    s.n_indices = static_cast<int>(need);

    if (is_one_spin) {
        const std::size_t i = indices[0];
        const auto args = one_spin_args(c, i);
        cos_product_series(args, times, s.values.data(), threads);
        const double sx = m.sx(i);
        for (std::size_t k = 0; k < nt; ++k) {
            const double trig = obs == Observable::X ? std::cos(2.0 * B * times[k])
                                                     : -std::sin(2.0 * B * times[k]);
            s.values[k] *= SignedLogValue::from_linear(sx * trig);
        }
        s.times = std::move(times);
        return s;
    }

    if (is_triple) {
        const std::size_t i = indices[0], j = indices[1], l = indices[2];
        if (!m.has_sxxx())
            throw std::invalid_argument("three-spin correlator needs third moments");
        const auto args = triple_args(c, i, j, l);
        cos_product_series(args, times, s.values.data(), threads);
        s.values_im.resize(nt);
        const double amp = 0.125 * m.sxxx(i, j, l);
        for (std::size_t k = 0; k < nt; ++k) {
            const SignedLogValue bare = s.values[k] * SignedLogValue::from_linear(amp);
            s.values[k] = bare * SignedLogValue::from_linear(std::cos(6.0 * B * times[k]));
            s.values_im[k] = bare * SignedLogValue::from_linear(-std::sin(6.0 * B * times[k]));
        }
        s.times = std::move(times);
        return s;
    }

    const std::size_t i = indices[0], j = indices[1];
    const auto args = make_pair_args(c, i, j);
    switch (obs) {
        case Observable::PPlus:
            cos_product_series(args.sum2, times, s.values.data(), threads);
            break;
        case Observable::PMinus:
            cos_product_series(args.diff2, times, s.values.data(), threads);
            break;
        case Observable::PZ:
        case Observable::XZ:
        case Observable::YZ: {
            cos_product_series(args.site2, times, s.values.data(), threads);
            const double sx = m.sx(i);
            for (std::size_t k = 0; k < nt; ++k) {
                double f = -sx * std::sin(2.0 * times[k] * args.j_ij);
                if (obs == Observable::XZ) f *= std::sin(2.0 * B * times[k]);
                if (obs == Observable::YZ) f *= std::cos(2.0 * B * times[k]);
                s.values[k] *= SignedLogValue::from_linear(f);
            }
            break;
        }
        case Observable::ZZ:
            for (auto& v : s.values) v = SignedLogValue::zero();
            break;
        case Observable::XX:
        case Observable::YY:
        case Observable::XY: {
            std::vector<SignedLogValue> plus(nt);
            cos_product_series(args.sum2, times, plus.data(), threads);
            const double half_sxx = 0.5 * m.sxx(i, j);
            if (obs == Observable::XY) {
                for (std::size_t k = 0; k < nt; ++k)
                    s.values[k] = plus[k] * SignedLogValue::from_linear(
                                                -half_sxx * std::sin(4.0 * B * times[k]));
            } else {
                cos_product_series(args.diff2, times, s.values.data(), threads);
                const double ysign = obs == Observable::YY ? -1.0 : 1.0;
                for (std::size_t k = 0; k < nt; ++k) {
                    const SignedLogValue dressed = plus[k] * SignedLogValue::from_linear(
                                                                 ysign * std::cos(4.0 * B * times[k]));
                    s.values[k] = scale(add(s.values[k], dressed), half_sxx);
                }
            }
            break;
        }
        default:
            throw std::invalid_argument("unsupported observable for evaluate_series");
    }
    s.times = std::move(times);
    return s;
}

namespace {

double normalization_of(const CorrelatorSeries& s) {
    if (s.values.empty()) throw std::invalid_argument("empty series");
    const SignedLogValue& v0 = s.values.front();
    if (v0.is_zero())
        throw std::invalid_argument("series normalization requires a nonzero first sample");
    return std::abs(v0.to_linear());
}

}  // namespace

std::vector<double> recurrence_scan(const CorrelatorSeries& s, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("recurrence threshold must lie in (0, 1)");
    const double ref = normalization_of(s);
    std::vector<double> hits;
    bool armed = false;
    for (std::size_t k = 0; k < s.values.size(); ++k) {
        const double v = std::abs(s.values[k].to_linear()) / ref;
        if (!armed && v < 0.5 * threshold) {
            armed = true;
        } else if (armed && v >= threshold) {
            hits.push_back(s.times[k]);
            armed = false;
        }
    }
    return hits;
}

double relaxation_time(const CorrelatorSeries& s) {
    const double ref = normalization_of(s);
    const double e1 = std::exp(-1.0);
    const std::size_t n = s.values.size();
    const double t_end = s.times.back();
    for (std::size_t a = 0; a < n; ++a) {
        const double ta = s.times[a];
        if (ta <= 0.0) continue;
        if (std::abs(s.values[a].to_linear()) / ref > e1) continue;
        if (1.5 * ta > t_end) break;  // dwell window would leave the grid
        bool ok = true;
        for (std::size_t b = a; b < n && s.times[b] <= 1.5 * ta; ++b) {
            if (std::abs(s.values[b].to_linear()) / ref > e1) {
                ok = false;
                break;
            }
        }
        if (ok) return ta;
    }
    return std::numeric_limits<double>::infinity();
}

}  // namespace spinrelax
