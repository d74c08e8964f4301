#ifndef PI1_ISOMONO_HPP
#define PI1_ISOMONO_HPP

#include <string>
#include <vector>

#include "pi1/laxmat.hpp"
#include "pi1/multipoly.hpp"

namespace pi1 {

// Rank-two isomonodromic side at genus g: one irregular pole at infinity
// of ramified order 2g+3, canonical choice of trivial times.  Everything
// below the fixed top of the time tower (t_{2g+3} = 2, t_{2g+1} = 0, all
// even times 0) is a free odd time t_1, t_3, ..., t_{2g-1}; entries may
// be symbols or numbers.
struct IrregularTimes {
    int g = 0;
    std::vector<MultiPoly> free_odd;  // free_odd[k] = t_{2k+1}, k = 0..g-1

    static IrregularTimes symbolic(int g);
    static IrregularTimes numeric(int g, const std::vector<Rational>& odd_values);

    // t_m for any odd m >= 1, fixed values included (0 beyond the tower).
    MultiPoly t(int odd_index) const;
};

// Apparent-singularity data: q_i are the zeros of the (1,2) entry of the
// geometric matrix, p_i the values of the (1,1) entry there.  Positions
// must be numeric (distinct constants) whenever an operation divides by
// their differences; genus one never does, so symbols are fine there.
struct OperPoint {
    IrregularTimes times;
    std::vector<MultiPoly> q;
    std::vector<MultiPoly> p;
};

// Elementary-symmetric repackaging: Q_i = e_i(q), and P is the unique
// solution of p_i = sum_k P_k d e_k / d q_i.  Polynomial throughout, so
// both coordinates may stay symbolic.
struct SymPoint {
    IrregularTimes times;
    std::vector<MultiPoly> Q;
    std::vector<MultiPoly> P;
};

// The lambda-polynomial carrying the times in the companion matrix:
// monic-negative of degree 2g+1, vanishing next-to-leading coefficient,
// quadratic tail in the free odd times.
LambdaSeries times_polynomial(const IrregularTimes& times);

// Interpolating polynomial through (q_i, -p_i); degree <= g-1.
LambdaSeries momentum_interpolant(const OperPoint& pt);

// Hamiltonian densities H_0..H_{g-1}: coefficients of the polynomial of
// degree <= g-1 interpolating p_i^2 + P(q_i) + sum_{j != i}
// (p_j - p_i)/(q_i - q_j) at the positions q_i (the transposed-
// Vandermonde moment system, solved in the Lagrange basis).
std::vector<MultiPoly> companion_hamiltonians(const OperPoint& pt);

// Companion-form connection matrix (0 1; * *), expanded at infinity to
// the watermark depth2 (the simple poles at the q_i become tails).
LaxMat companion_matrix(const OperPoint& pt, int depth2);

// Gauge factor from the geometric to the companion trivialization.
LaxMat companion_gauge(const OperPoint& pt);

// Traceless geometric matrix, entries exact lambda-polynomials.  The
// oper-coordinate route clears the apparent singularities by exact
// division; the symmetric-coordinate route is polynomial term by term.
LaxMat geometric_matrix(const OperPoint& pt);
LaxMat geometric_matrix(const SymPoint& pt);

// Companion matrix reconstructed from a geometric matrix by the scalar
// reduction formulas; expanded to depth2.
LaxMat companion_from_geometric(const LaxMat& hat, int depth2);

// lambda^g coefficient of the (2,1) entry of a geometric matrix: the
// one free coefficient of the normalized leading behaviour.  Equals Q_1.
MultiPoly normalization_coefficient(const LaxMat& hat);

// Coordinate maps.  The positions-to-symmetric direction is closed-form;
// the opposite one would need root extraction, so only the momentum half
// inverts (against the same positions).
SymPoint to_symmetric(const OperPoint& pt);
std::vector<MultiPoly> momenta_from_symmetric(const std::vector<MultiPoly>& q,
                                              const std::vector<MultiPoly>& P);

// Weights nu_1..nu_g of the Hamiltonian combination attached to the odd
// deformation direction alpha_odd in {1, 3, ..., 2g-1}; the triangular
// time-Toeplitz system is solved by exact forward substitution.
std::vector<MultiPoly> flow_weights(int g, int alpha_odd, const IrregularTimes& times);

// The two Hamiltonian presentations: a nu-weighted sum of the densities
// above, and its closed polynomial form in symmetric coordinates
// (quadratic in P).  They agree under the coordinate map.
MultiPoly hamiltonian(const OperPoint& pt, int alpha_odd);
MultiPoly hamiltonian(const SymPoint& pt, int alpha_odd);

// Eigenvalue expansion at infinity: sqrt(-det) of the geometric matrix
// must carry coefficient 1 on lambda^{g+1/2}, 0 on lambda^{g-1/2}, and
// t_{2k+1}/2 on lambda^{k-1/2} for k = 0..g-1.  Integer powers cannot
// occur in the square root of an integer-power polynomial and are
// asserted absent; in particular nothing is checked at lambda^{-1}.
bool eigenvalue_expansion_check(const OperPoint& pt);

// Lagrange-basis versus symmetric-coordinate rewriting of the momentum
// interpolant, cleared of Vandermonde denominators: a full polynomial
// identity in symbolic positions and momenta.
bool interpolant_rewrite_identity(int g);

// Math-mode snapshot of the times polynomial, the geometric matrix in
// symmetric coordinates, and the first Hamiltonian, for documentation.
std::string isomonodromy_latex(int g);

}  // namespace pi1

#endif
