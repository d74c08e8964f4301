#ifndef PI1_DIFFJET_HPP
#define PI1_DIFFJET_HPP

#include <vector>

#include "pi1/multipoly.hpp"

namespace pi1 {

// Differential polynomials in u: MultiPoly over the jet atoms UJet(k)
// plus the times STime(l) (s_1 = x lives at STime(0)).  The alias is
// documentation; ring purity is enforced at the entry points below.
using DiffPoly = MultiPoly;

// Throws std::logic_error when p strays outside the jet/time ring.
void require_jet_ring(const MultiPoly& p, const char* where);

// The Lenard family R_{-1}, R_1, R_3, ...  Entry l holds R_{2l-1}.
struct LenardTable {
    std::vector<MultiPoly> entries;

    int lmax() const { return static_cast<int>(entries.size()) - 1; }
    // Access by odd subscript: R(k) = R_k, k = -1, 1, 3, ...
    const MultiPoly& R(int k) const;
};

// Total x-derivative: UJet(k) -> UJet(k+1), x -> 1, s_{2l+1} -> 0.
MultiPoly d_x(const MultiPoly& p);
MultiPoly d_x(const MultiPoly& p, int times);

// Flow derivative along s_{2l+1}, l >= 1, using u_{s_{2l+1}} = 2 d_x R_{2l+1}:
// UJet(k) -> d_x^k(2 d_x R_{2l+1}), STime(m) -> delta_{m,l}.
// The table must contain R_{2l+1}.
MultiPoly d_s(int l, const MultiPoly& p, const LenardTable& table);

// Build R_{2l-1} for l = 0..l_max via the quadratic recursion.
LenardTable lenard(int l_max);

// Antiderivative under d_x inside the pure u-jet subring, normalized to
// have no u-independent term.  Works weight by weight (weight(u^{(k)}) =
// k + 2) via an exact linear solve; throws std::domain_error when p is
// not a total x-derivative of a jet polynomial.
MultiPoly integrate_jets(const MultiPoly& p);

// String-equation data.  c_coeffs(g) returns the coefficients c_{2l-1}
// for l = 0..g+1: x/2, (2l+1)s_{2l+1}/2 for l <= g-1, then 0, then 1.
std::vector<MultiPoly> c_coeffs(int g);

// The string polynomial R_{2g+1} + sum_{l=1}^{g-1} c_{2l-1} R_{2l-1}
// (+ x/2 when with_x).  Leading jet term is u^{(2g)} / (2*4^g).
MultiPoly string_lhs(int g, bool with_x, const LenardTable& table);
MultiPoly string_lhs(int g, bool with_x = true);

// On the zero locus of the string polynomial the jets u^{(k)}, k >= 2g,
// are functions of the lower ones.  Entry j of the table is the image
// of u^{(2g+j)}, fully reduced (only jets of order < 2g remain).
std::vector<MultiPoly> string_locus_table(int g, int j_max, const LenardTable& table);
// Eliminate all jets of order >= 2g from p using that table.
MultiPoly reduce_on_string_locus(const MultiPoly& p, int g, const LenardTable& table);

// Order-7 ODE for the second hierarchy member: eliminating s_3 from the
// coupled string/flow system must reproduce the reference expansion.
MultiPoly g2_eliminated_ode();
MultiPoly g2_reference_ode();
bool g2_ode_elimination_check();

}  // namespace pi1

#endif
