#include "spin_relax/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "spin_relax/csv.hpp"

namespace spinrelax {

LatticeKind lattice_kind_from_string(const std::string& s) {
    if (s == "triangular-hex") return LatticeKind::TriangularHex;
    if (s == "chain") return LatticeKind::Chain;
    if (s == "square") return LatticeKind::Square;
    if (s == "cubic") return LatticeKind::Cubic;
    throw std::invalid_argument("unsupported lattice kind: " + s);
}

std::string to_string(LatticeKind k) {
    switch (k) {
        case LatticeKind::TriangularHex: return "triangular-hex";
        case LatticeKind::Chain: return "chain";
        case LatticeKind::Square: return "square";
        case LatticeKind::Cubic: return "cubic";
    }
    throw std::invalid_argument("unknown lattice kind");
}

namespace {

Lattice build_hex_patch(int L) {
    // Axial coordinates (m, n) with basis a1 = (1,0), a2 = (1/2, sqrt(3)/2).
    // The patch is the hexagonal ball max(|m|,|n|,|m+n|) <= L-1, which holds
    // 3L(L-1)+1 sites. Squared radius m^2 + mn + n^2 is an integer, so the
    // ring sort is exact.
    struct Site {
        int m, n;
        long r2;
        double angle;
    };
    const int r = L - 1;
    std::vector<Site> sites;
    sites.reserve(static_cast<std::size_t>(3 * L * (L - 1) + 1));
    for (int m = -r; m <= r; ++m) {
        for (int n = -r; n <= r; ++n) {
            if (std::max({std::abs(m), std::abs(n), std::abs(m + n)}) > r) continue;
            const double x = m + 0.5 * n;
            const double y = 0.86602540378443865 * n;
            double ang = std::atan2(y, x);
            if (ang < 0.0) ang += 6.2831853071795865;
            sites.push_back({m, n, static_cast<long>(m) * m + static_cast<long>(m) * n +
                                       static_cast<long>(n) * n,
                             ang});
        }
    }
    std::sort(sites.begin(), sites.end(), [](const Site& a, const Site& b) {
        if (a.r2 != b.r2) return a.r2 < b.r2;
        if (a.angle != b.angle) return a.angle < b.angle;
        return std::pair(a.m, a.n) < std::pair(b.m, b.n);
    });
    Lattice lat{LatticeKind::TriangularHex, L, 2, {}};
    lat.positions.reserve(sites.size());
    for (const auto& s : sites)
        lat.positions.push_back({s.m + 0.5 * s.n, 0.86602540378443865 * s.n, 0.0});
    return lat;
}

}  // namespace

Lattice build_lattice(LatticeKind kind, int L) {
    if (L < 1) throw std::invalid_argument("lattice side length must be >= 1");
    switch (kind) {
        case LatticeKind::TriangularHex:
            return build_hex_patch(L);
        case LatticeKind::Chain: {
            Lattice lat{kind, L, 1, {}};
            for (int k = 0; k < L; ++k) lat.positions.push_back({double(k), 0.0, 0.0});
            return lat;
        }
        case LatticeKind::Square: {
            Lattice lat{kind, L, 2, {}};
            for (int y = 0; y < L; ++y)
                for (int x = 0; x < L; ++x) lat.positions.push_back({double(x), double(y), 0.0});
            return lat;
        }
        case LatticeKind::Cubic: {
            Lattice lat{kind, L, 3, {}};
            for (int z = 0; z < L; ++z)
                for (int y = 0; y < L; ++y)
                    for (int x = 0; x < L; ++x)
                        lat.positions.push_back({double(x), double(y), double(z)});
            return lat;
        }
    }
    throw std::invalid_argument("unsupported lattice kind");
}

namespace {

double dist3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    const double dx = a[0] - b[0], dy = a[1] - b[1], dz = a[2] - b[2];
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace

double pair_distance(const Lattice& lat, std::size_t i, std::size_t j) {
    if (i >= lat.n_sites() || j >= lat.n_sites())
        throw std::invalid_argument("site index out of range");
    if (i == j) throw std::invalid_argument("pair_distance requires distinct sites");
    return dist3(lat.positions[i], lat.positions[j]);
}

std::pair<std::size_t, std::size_t> center_pair(const Lattice& lat) {
    if (lat.n_sites() < 3) throw std::invalid_argument("lattice too small for a centre pair");
    std::array<double, 3> c{0.0, 0.0, 0.0};
    for (const auto& p : lat.positions)
        for (int d = 0; d < 3; ++d) c[d] += p[d];
    for (int d = 0; d < 3; ++d) c[d] /= static_cast<double>(lat.n_sites());
    auto nearest = [&](double off) {
        const std::array<double, 3> target{c[0] + off, c[1], c[2]};
        std::size_t best = 0;
        double bestd = dist3(lat.positions[0], target);
        for (std::size_t k = 1; k < lat.n_sites(); ++k) {
            const double d = dist3(lat.positions[k], target);
            if (d < bestd - 1e-12) {
                bestd = d;
                best = k;
            }
        }
        return best;
    };
    const std::size_t i = nearest(+1.0), j = nearest(-1.0);
    if (i == j) throw std::invalid_argument("lattice has no symmetric centre pair");
    return {i, j};
}

CouplingMatrix CouplingMatrix::power_law(const Lattice& lat, double J, double alpha) {
    if (alpha < 0.0) throw std::invalid_argument("power-law exponent alpha must be >= 0");
    CouplingMatrix c;
    c.n_ = lat.n_sites();
    c.positions_ = lat.positions;
    c.j_ = J;
    c.alpha_ = alpha;
    return c;
}

CouplingMatrix CouplingMatrix::dense(std::size_t n, std::vector<double> values) {
    if (values.size() != n * n) throw std::invalid_argument("dense coupling matrix must be n*n");
    for (std::size_t i = 0; i < n; ++i) {
        if (values[i * n + i] != 0.0)
            throw std::invalid_argument("coupling matrix diagonal must be zero");
        for (std::size_t j = i + 1; j < n; ++j)
            if (values[i * n + j] != values[j * n + i])
                throw std::invalid_argument("coupling matrix must be symmetric");
    }
    CouplingMatrix c;
    c.n_ = n;
    c.values_ = std::move(values);
    return c;
}

double CouplingMatrix::at(std::size_t i, std::size_t j) const {
    if (i >= n_ || j >= n_) throw std::invalid_argument("site index out of range");
    if (i == j) return 0.0;
    if (is_power_law()) return j_ * std::pow(dist3(positions_[i], positions_[j]), -alpha_);
    return values_[i * n_ + j];
}

std::vector<double> CouplingMatrix::row(std::size_t i) const {
    if (i >= n_) throw std::invalid_argument("site index out of range");
    std::vector<double> out(n_);
    if (is_power_law()) {
        for (std::size_t k = 0; k < n_; ++k)
            out[k] = k == i ? 0.0 : j_ * std::pow(dist3(positions_[i], positions_[k]), -alpha_);
    } else {
        std::copy(values_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                  values_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_), out.begin());
    }
    return out;
}

void write_lattice_csv(const Lattice& lat, std::ostream& os) {
    os << "# kind=" << to_string(lat.kind) << " L=" << lat.L << " dim=" << lat.dim
       << " N=" << lat.n_sites() << "\n";
    os << (lat.dim == 3 ? "index,x,y,z" : "index,x,y") << "\n";
    for (std::size_t k = 0; k < lat.n_sites(); ++k) {
        os << k << ',' << format_double(lat.positions[k][0]) << ','
           << format_double(lat.positions[k][1]);
        if (lat.dim == 3) os << ',' << format_double(lat.positions[k][2]);
        os << "\n";
    }
}

Lattice read_lattice_csv(std::istream& is) {
    Lattice lat{LatticeKind::Chain, 0, 2, {}};
    std::string line;
    bool meta_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ls(line.substr(1));
            std::string tok;
            while (ls >> tok) {
                const auto eq = tok.find('=');
                if (eq == std::string::npos) continue;
                const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
                if (key == "kind") lat.kind = lattice_kind_from_string(val);
                else if (key == "L") lat.L = std::stoi(val);
                else if (key == "dim") lat.dim = std::stoi(val);
            }
            meta_seen = true;
            continue;
        }
        if (line.rfind("index", 0) == 0) continue;  // column header
        const auto f = split_csv_line(line);
        if (f.size() < 3) throw std::runtime_error("malformed lattice CSV row: " + line);
        lat.positions.push_back(
            {std::stod(f[1]), std::stod(f[2]), f.size() > 3 ? std::stod(f[3]) : 0.0});
    }
    if (!meta_seen && lat.positions.empty()) throw std::runtime_error("empty lattice CSV");
    return lat;
}

CouplingMatrix read_couplings_csv(std::istream& is, std::size_t n_sites) {
    std::vector<double> values(n_sites * n_sites, 0.0);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'i') continue;
        const auto f = split_csv_line(line);
        if (f.size() != 3) throw std::runtime_error("coupling CSV rows must be i,j,J_ij");
        const std::size_t i = std::stoul(f[0]), j = std::stoul(f[1]);
        if (i >= n_sites || j >= n_sites) throw std::runtime_error("coupling CSV index out of range");
        if (i == j) throw std::runtime_error("coupling CSV must not set diagonal entries");
        const double v = std::stod(f[2]);
        values[i * n_sites + j] = v;
        values[j * n_sites + i] = v;
    }
    return CouplingMatrix::dense(n_sites, std::move(values));
}

}  // namespace spinrelax
