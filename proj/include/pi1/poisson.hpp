#ifndef PI1_POISSON_HPP
#define PI1_POISSON_HPP

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pi1/laxmat.hpp"
#include "pi1/multipoly.hpp"
#include "pi1/sampling.hpp"

namespace pi1 {

// Poisson geometry on the 3g+1-dimensional space of traceless matrices
//
//     [[alpha(lambda), beta(lambda)], [gamma(lambda), -alpha(lambda)]]
//
// with alpha of degree g-1 and beta, gamma monic of degrees g and g+1.
// The bracket is the loop-algebra r-matrix bracket shifted by the
// constant tensor Delta = E21 (x) E21; it closes on the coefficients,
// so it is stored as a finite antisymmetric table over the Moduli
// atoms.  Two-point identities (functions of both evaluation points)
// live in MultiPoly over the two Spectral atoms.

// Coefficient vectors of one matrix: a has size g, b size g, c size
// g+1; the monic leading coefficients of beta and gamma are implicit.
// Entries may be symbolic Moduli atoms or rational constants.
struct MumfordPhase {
    int g = 0;
    std::vector<MultiPoly> a, b, c;

    static MumfordPhase symbolic(int g);

    // Coefficient of lambda^k, the implicit monic heads included
    // (alpha_hat(k) = 0 for k >= g; beta_hat(g) = gamma_hat(g+1) = 1).
    MultiPoly alpha_hat(int k) const;
    MultiPoly beta_hat(int k) const;
    MultiPoly gamma_hat(int k) const;

    LambdaSeries alpha() const;
    LambdaSeries beta() const;
    LambdaSeries gamma() const;
    LaxMat matrix() const;

    // Coefficient of lambda^k in -det = alpha^2 + beta*gamma.
    MultiPoly curve_coefficient(int k) const;
};

// Antisymmetric table {x, y} for the 3g+1 coordinate atoms, plus its
// extension to polynomial observables as a biderivation.
struct CoeffBracket {
    int g = 0;
    // Keyed by (x, y) with x < y in atom order; only nonzero entries.
    std::map<std::pair<Atom, Atom>, MultiPoly> table;

    // {x, y} with antisymmetry applied; zero for absent pairs.
    MultiPoly entry(const Atom& x, const Atom& y) const;
    // {f, h} = sum over atoms of df/dx dh/dy {x, y}.
    MultiPoly apply(const MultiPoly& f, const MultiPoly& h) const;
};

// Reads the table off the divided-difference identities
//   {alpha(l), beta(m)}  = (beta(l) - beta(m)) / (l - m)
//   {alpha(l), gamma(m)} = -(gamma(l) - gamma(m)) / (l - m) + beta(l)
//   {beta(l),  gamma(m)} = 2 (alpha(l) - alpha(m)) / (l - m)
//   {gamma(l), gamma(m)} = -2 (alpha(l) - alpha(m))
// by expanding both points symbolically and matching monomials.
CoeffBracket derive_coeff_brackets(int g);

// --- tensor algebra over C^2 (x) C^2 ---

using Mat2 = std::array<std::array<MultiPoly, 2>, 2>;

Mat2 identity_mat2();
Mat2 sigma_plus();    // E12
Mat2 sigma_minus();   // E21
Mat2 sigma_third();   // diag(1, -1)
Mat2 mat2_mul(const Mat2& x, const Mat2& y);

// The phase matrix with the spectral atom in the given slot (0 or 1)
// substituted for lambda.
Mat2 phase_matrix_at(const MumfordPhase& phase, int slot);

// 4x4 matrices in the Kronecker basis e_i (x) e_k, row index 2i + k.
struct TensorMat {
    std::array<std::array<MultiPoly, 4>, 4> e{};

    MultiPoly& at(int i, int j) { return e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
    const MultiPoly& at(int i, int j) const {
        return e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }

    TensorMat& operator+=(const TensorMat& o);
    TensorMat& operator-=(const TensorMat& o);
    TensorMat& operator*=(const MultiPoly& s);
    TensorMat operator-() const;
    friend TensorMat operator+(TensorMat x, const TensorMat& y) { return x += y; }
    friend TensorMat operator-(TensorMat x, const TensorMat& y) { return x -= y; }
    friend TensorMat operator*(TensorMat x, const MultiPoly& s) { return x *= s; }
    friend TensorMat operator*(const MultiPoly& s, TensorMat x) { return x *= s; }
    friend TensorMat operator*(const TensorMat& x, const TensorMat& y);
    friend bool operator==(const TensorMat& x, const TensorMat& y) { return x.e == y.e; }
    friend bool operator!=(const TensorMat& x, const TensorMat& y) { return !(x == y); }

    bool is_zero() const;
};

TensorMat kron(const Mat2& x, const Mat2& y);
TensorMat tensor_commutator(const TensorMat& x, const TensorMat& y);
TensorMat permutation_tensor();  // v (x) w  ->  w (x) v
TensorMat delta_tensor();        // E21 (x) E21

// Exact quotient f / (lam - mu) of the two spectral atoms; throws
// std::domain_error when f is not divisible.
MultiPoly divide_by_spectral_difference(const MultiPoly& f);

// The three routes to the two-point bracket tensor:
//   definition:  [A(l) (x) I + I (x) A(m), P/(l-m)] + [A(l) (x) I - I (x) A(m), Delta]
//   from_table:  sum {A_ab(l), A_cd(m)} E_ab (x) E_cd via CoeffBracket
//   explicit:    the six-term sigma-basis expansion
// The first two accept any matrices polynomial in one spectral atom
// each; the definition route requires the permutation commutator to be
// divisible by (lam - mu), which holds when both arguments present one
// matrix family at the two points.
TensorMat tensor_bracket_definition(const Mat2& at_lam, const Mat2& at_mu);
TensorMat tensor_bracket_from_table(const CoeffBracket& br, const Mat2& at_lam,
                                    const Mat2& at_mu);
TensorMat tensor_bracket_explicit(const MumfordPhase& phase);

// All three routes agree entrywise at this genus; on failure, *witness
// names the first differing entry.
bool tensor_vs_scalar_check(int g, std::string* witness = nullptr);

// --- canonical coordinates (roots of beta and alpha there) ---

// Numeric configuration assembled from distinct rational roots of
// beta; alpha and the gamma tail are free.
struct SpectralSample {
    int g = 0;
    std::vector<Rational> roots;  // lambda_j, pairwise distinct
    std::vector<Rational> a;      // alpha coefficients, size g
    std::vector<Rational> c;      // gamma tail, size g+1
};

SpectralSample sample_spectral(SplitMix64& rng, int g);

// Moduli-atom values induced by the sample (b from the root product).
std::map<Atom, Rational> phase_values(const SpectralSample& sample);

// The pairings {lambda_i, lambda_j}, {lambda_i, mu_j}, {mu_i, mu_j}
// obtained by the chain rule d lambda_i / d b_k = -lambda_i^k /
// beta'(lambda_i) summed against the coefficient table.  Throws
// std::domain_error when roots coincide.
struct CanonicalPairings {
    std::vector<std::vector<Rational>> ll, lm, mm;
};
CanonicalPairings canonical_pairings(const CoeffBracket& br, const SpectralSample& sample);

// Pairings are delta_ij / 0 / 0 over seeded samples.
bool canonical_check(int g, int seeds);

// Coefficients of the curve at lambda^g..lambda^2g Poisson-commute
// with every coordinate: symbolically for g <= 2, at seeded samples
// always, and against the root coordinates via the chain rule.
bool casimir_check(int g);

// On the locus cut out by an actual jet, the bracket with the spectral
// invariant I_{l+1} generates the commutator with
//   [lambda^{l-g} A]_+ - E21 b_{g-l-1},
// entrywise in lambda, for l = 0..g-1.  The subtracted scalar is the
// matrix's own beta coefficient; it collapses to the recursion value
// R_{2l+1} when the intermediate times are switched off, but the two
// differ by time-weighted lower recursion entries in general, and only
// the intrinsic form commutes with the verified Hamiltonian flows.
bool ad_flow_check(int g);

}  // namespace pi1

#endif
