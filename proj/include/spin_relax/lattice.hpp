#ifndef SPIN_RELAX_LATTICE_HPP
#define SPIN_RELAX_LATTICE_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace spinrelax {

enum class LatticeKind { TriangularHex, Chain, Square, Cubic };

LatticeKind lattice_kind_from_string(const std::string& s);
std::string to_string(LatticeKind k);

// Finite open lattice with unit lattice constant. Site ordering is
// deterministic: the triangular-hex patch lists the centre site first and
// then rings of increasing radius (ties broken by polar angle); the other
// kinds are in row-major coordinate order.
struct Lattice {
    LatticeKind kind;
    int L = 0;    // side length
    int dim = 0;  // spatial dimension d
    std::vector<std::array<double, 3>> positions;

    std::size_t n_sites() const { return positions.size(); }
};

// Hexagonal patches of the triangular lattice hold N = 3L(L-1)+1 sites; this
// count is a convention of this library (see README), chosen so that the
// patch is point-symmetric about its centre site.
Lattice build_lattice(LatticeKind kind, int L);

double pair_distance(const Lattice& lat, std::size_t i, std::size_t j);

// The symmetric pair flanking the centre site at distance 2 (triangular-hex
// and odd chains/grids); the default probe pair for correlator sweeps.
std::pair<std::size_t, std::size_t> center_pair(const Lattice& lat);

// Pairwise couplings J_{ij}. Power-law instances compute J * D_{ij}^{-alpha}
// on demand from site positions (an explicit N x N matrix would not scale to
// the 1e6-site sweeps this library targets); dense instances store the matrix.
class CouplingMatrix {
  public:
    static CouplingMatrix power_law(const Lattice& lat, double J, double alpha);
    // Row-major n*n values; must be symmetric with zero diagonal.
    static CouplingMatrix dense(std::size_t n, std::vector<double> values);

    std::size_t n_sites() const { return n_; }
    double at(std::size_t i, std::size_t j) const;
    // Couplings from site i to every site (entry i is 0).
    std::vector<double> row(std::size_t i) const;

    bool is_power_law() const { return !positions_.empty(); }
    double j_scale() const { return j_; }
    double alpha() const { return alpha_; }

  private:
    CouplingMatrix() = default;
    std::size_t n_ = 0;
    // power-law backing
    std::vector<std::array<double, 3>> positions_;
    double j_ = 0.0;
    double alpha_ = 0.0;
    // dense backing
    std::vector<double> values_;
};

// CSV interfaces: lattice files carry one row per site with columns
// index,x,y[,z]; coupling files carry triplets i,j,J_ij.
void write_lattice_csv(const Lattice& lat, std::ostream& os);
Lattice read_lattice_csv(std::istream& is);
CouplingMatrix read_couplings_csv(std::istream& is, std::size_t n_sites);

}  // namespace spinrelax

#endif
