#ifndef PI1_MINIMAL_MODEL_HPP
#define PI1_MINIMAL_MODEL_HPP

#include <cstdint>
#include <vector>

#include "pi1/diffjet.hpp"
#include "pi1/laxmat.hpp"

namespace pi1 {

// Lax formulation of the string-equation hierarchy: the generating wave
// matrix U(lambda), its polynomial truncations, the lambda-equation
// matrix, the spectral curve h = -det, and the Hamiltonians carried by
// its coefficients in spectral coordinates.

// Generating matrix
//   B = sum_{l>=0} R_{2l-1} lambda^{-l},   A = -B_x/2,
//   C = -B_xx/2 + (lambda - u) B,          U = [[A, B], [C, -A]],
// with every entry truncated at lambda^{-lmax}.  det U = -lambda up to
// the watermark.  The table must hold R_{2*lmax-1}.
LaxMat wave_matrix(int lmax, const LenardTable& table);
LaxMat wave_matrix(int lmax);

// Polynomial member: [lambda^n U]_+ minus R_{2n+1} in the (2,1) slot.
// Exact lambda-polynomial entries.
LaxMat poly_matrix(int n, const LenardTable& table);
LaxMat poly_matrix(int n);

// Matrix of the lambda equation: sum_{l=1}^{g+1} c_{2l-1} poly_matrix(l-1).
LaxMat lambda_matrix(int g);

// Entrywise derivatives along x, the flow s_{2l+1}, and lambda.
LaxMat mat_dx(const LaxMat& m);
LaxMat mat_ds(int l, const LaxMat& m, const LenardTable& table);
LaxMat mat_dlambda(const LaxMat& m);

// --- zero-curvature checks ---

// x vs s_{2l+1} compatibility of the polynomial members, 1 <= l <= g-1.
// Holds identically in the jet ring (the flow definition is the content).
bool flow_curvature_check(int g, int l);

// x vs lambda compatibility of (lambda_matrix, wave truncation): every
// residual entry vanishes except the (2,1) slot, which is a constant
// multiple of d_x applied to the string polynomial (x-term included).
// Returns that constant; throws if the residual has any other shape.
Rational string_curvature_factor(int g);

// Remaining pairs: lambda vs s_{2l+1}, and s vs s flows among themselves.
struct CurvatureReport {
    bool raw_zero;    // vanishes identically in the jet ring
    bool locus_zero;  // vanishes after string-locus reduction
};
CurvatureReport mixed_curvature_check(int g);

// --- spectral curve ---

// Ordered convolution sum_m c_{2m-1} c_{2(k-m)-1+2} over the window
// where both indices exist: the lambda^k coefficient of the square of
// the c-expansion.  c is indexed like c_coeffs(g).
MultiPoly c_convolution(const std::vector<MultiPoly>& c, int g, int k);

// Casimir part: lambda^{2g+1} + sum_{k=g}^{2g} conv(k) lambda^k.
LambdaSeries casimir_poly(const std::vector<MultiPoly>& c, int g);
// Full time-determined part: casimir plus the conv tail below lambda^g.
LambdaSeries invariant_base(const std::vector<MultiPoly>& c, int g);

struct SpectralData {
    int g = 0;
    std::vector<MultiPoly> c;  // c_{2l-1}, l = 0..g+1
    LambdaSeries h;            // -det(lambda_matrix); monic, degree 2g+1
    LambdaSeries xi;           // sqrt(h); half-integer exponents only
    LambdaSeries I0_tilde;     // casimir_poly(c, g)
    LambdaSeries I0;           // invariant_base(c, g)
    std::vector<MultiPoly> I;  // I[k-1] = [h]_{lambda^{g-k}} - conv(g-k)
    std::vector<MultiPoly> H;  // H[k-1] = 2 [xi]_{lambda^{-k-1/2}}

    // Coefficient of lambda^{(2m-1)/2} in xi.
    const MultiPoly& alpha(int m) const { return xi.coeff2(2 * m - 1); }
};

SpectralData spectral_data(int g);

// Unit lower-triangular Toeplitz matrices of the c's:
// [i][j] = c_{2g+1-2(i-j)}.  Sizes g x g and (g+1) x (g+1).
std::vector<std::vector<MultiPoly>> toeplitz_c(const std::vector<MultiPoly>& c, int g);
std::vector<std::vector<MultiPoly>> toeplitz_c_ext(const std::vector<MultiPoly>& c, int g);

// Identities tying the curve to the times, after string-locus reduction:
// the xi coefficients at nonnegative half-powers equal the c's, the
// curve coefficients at lambda^{g..2g} equal the convolutions, and
// I = C(s) H as polynomial identities.  Symbolic; g <= 3 is practical.
bool spectral_locus_check(int g);
// The same identities at seeded numeric jets completed to the locus.
bool spectral_numeric_check(int g, std::uint64_t seed, int trials);

// --- beta family ---

// R~_n(lambda) = sum_{k=0}^n R_{2k-1} lambda^{n-k}; equals the (1,2)
// entry of poly_matrix(n).
LambdaSeries r_tilde(int n, const LenardTable& table);

// Monic polynomial with prescribed roots, and the nonnegative parts
// [lambda^{n-g} beta_g]_+ for n = 0..g.
LambdaSeries beta_from_roots(const std::vector<Rational>& lam);
std::vector<LambdaSeries> beta_projections(const LambdaSeries& beta_g, int g);

// Invert the unit-triangular extended Toeplitz relation beta = C~ R~
// by forward substitution (no division).
std::vector<LambdaSeries> rtilde_from_beta(const std::vector<LambdaSeries>& betas,
                                           const std::vector<MultiPoly>& c, int g);

// beta_g coefficients vs c*R convolutions, projections vs C~ R~, and
// the (1,2)-entry identification of R~_n; all as exact identities.
bool toeplitz_relation_check(int g);

// --- Hamiltonians in spectral coordinates ---
// lam must be pairwise distinct (throws otherwise); c is indexed like
// c_coeffs(g) and may be symbolic or numeric, but must live in a single
// coefficient ring.

// Divided sums H_k = sum_j (mu_j^2 - I0(lam_j)) R~_{k-1}(lam_j) / prod',
// with prod' = prod_{i != j}(lam_j - lam_i) and the R~ recovered from
// the beta projections through the Toeplitz relation.
std::vector<MultiPoly> spectral_hamiltonians(int g, const std::vector<Rational>& lam,
                                             const std::vector<Rational>& mu,
                                             const std::vector<MultiPoly>& c);
// The same values read off sqrt of the interpolated spectral curve:
// h = casimir + Lagrange correction with h(lam_j) = mu_j^2.
std::vector<MultiPoly> curve_hamiltonians(int g, const std::vector<Rational>& lam,
                                          const std::vector<Rational>& mu,
                                          const std::vector<MultiPoly>& c);
// Invariants of the interpolated curve: [h]_{lambda^{g-k}} - conv(g-k).
std::vector<MultiPoly> curve_invariants(int g, const std::vector<Rational>& lam,
                                        const std::vector<Rational>& mu,
                                        const std::vector<MultiPoly>& c);

// K_{2k-1} = H_k - sum_j mu_j R~'_{k-1}(lam_j) / prod', the generator
// of the s_{2k-1} evolution of (lam, mu).
MultiPoly k_hamiltonian(int g, int k, const std::vector<Rational>& lam,
                        const std::vector<Rational>& mu, const std::vector<MultiPoly>& c);

// Residue form of the correction term: for every k in [1,g],
//   Res_inf lambda^{-(g+1-k)} sum_j mu_j beta_g(lambda)/((lambda-lam_j)^2 prod')
// equals -sum_j mu_j beta'_{k-1}(lam_j)/prod'.
bool correction_residue_check(int g, const std::vector<Rational>& lam,
                              const std::vector<Rational>& mu);

}  // namespace pi1

#endif
