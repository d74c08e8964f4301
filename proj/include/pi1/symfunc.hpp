#ifndef PI1_SYMFUNC_HPP
#define PI1_SYMFUNC_HPP

#include <vector>

#include "pi1/multipoly.hpp"

namespace pi1 {

// Bases of symmetric polynomials in n variables: elementary e_k,
// complete homogeneous h_k, and power sums S_k.  Values are generic
// MultiPoly, so the "variables" may themselves be symbols or numbers.

enum class SymKind { Elementary, CompleteHomogeneous, PowerSum };

struct SymBasisVector {
    SymKind kind;
    int n = 0;                      // number of underlying variables
    std::vector<MultiPoly> values;  // index k holds e_k / h_k / S_k

    // Bounds-checked read; for Elementary, k > n reads as 0.
    const MultiPoly& at(int k) const;
};

// e_0..e_n of the given roots: prod_j (lambda - x_j) expanded.
SymBasisVector e_from_roots(const std::vector<MultiPoly>& x);

// Wrap externally supplied values e_1..e_n (e.g. symbols) as an
// Elementary vector; e_0 = 1 is prepended.
SymBasisVector elementary_from_values(int n, const std::vector<MultiPoly>& e1_to_en);

// h_0..h_{k_max} via the alternating sum over compositions of k:
//   h_k = sum_{j=1..k} (-1)^j sum_{b_1+...+b_j = k, b_m >= 1}
//            prod_m (-1)^{b_m} e_{b_m}.
// Valid (and nonzero) also for k > n.
SymBasisVector h_from_e(const SymBasisVector& e, int k_max);

// S_0..S_{m_max} via the multinomial sum over weak compositions
// b_1 + 2 b_2 + ... + m b_m = m:
//   S_m = (-1)^m m sum (-1)^{|b|} / |b| * multinomial(|b|; b) * prod e_i^{b_i},
// with |b| = b_1 + ... + b_m and S_0 = n.
SymBasisVector powersum_from_e(const SymBasisVector& e, int m_max);

// Brute-force definitional evaluation, kept as independent oracles:
// sums over strictly increasing / weakly increasing index tuples and
// plain k-th powers respectively.
MultiPoly e_direct(const std::vector<MultiPoly>& x, int k);
MultiPoly h_direct(const std::vector<MultiPoly>& x, int k);
MultiPoly powersum_direct(const std::vector<MultiPoly>& x, int k);

}  // namespace pi1

#endif
