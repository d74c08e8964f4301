#include "pi1/minimal_model.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "pi1/sampling.hpp"

namespace pi1 {

namespace {

MultiPoly u_poly() { return MultiPoly(Atom{Tag::UJet, 0, 0}); }

bool exact_zero_series(const LambdaSeries& s) { return s.exact() && s.is_zero_trusted(); }

bool exact_equal(const LambdaSeries& a, const LambdaSeries& b) {
    return exact_zero_series(a - b);
}

// prod_{i != j} (lam[j] - lam[i]); the coordinates must be distinct.
Rational off_product(const std::vector<Rational>& lam, std::size_t j) {
    Rational prod(1);
    for (std::size_t i = 0; i < lam.size(); ++i)
        if (i != j) prod *= lam[j] - lam[i];
    return prod;
}

void require_coordinates(int g, const std::vector<Rational>& lam,
                         const std::vector<Rational>& mu, const char* where) {
    if (g < 1) throw std::domain_error(std::string(where) + ": genus must be positive");
    if (lam.size() != static_cast<std::size_t>(g) || mu.size() != static_cast<std::size_t>(g))
        throw std::invalid_argument(std::string(where) + ": expected g coordinate pairs");
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::size_t j = i + 1; j < lam.size(); ++j)
            if (lam[i] == lam[j])
                throw std::domain_error(std::string(where) + ": coincident spectral positions");
}

void require_c_vector(int g, const std::vector<MultiPoly>& c, const char* where) {
    if (c.size() != static_cast<std::size_t>(g) + 2)
        throw std::invalid_argument(std::string(where) + ": coefficient vector must have g+2 slots");
}

// Lagrange interpolation of the curve: h = casimir + delta with
// delta(lam_j) = mu_j^2 - casimir(lam_j), deg delta <= g-1.
LambdaSeries interpolated_curve(int g, const std::vector<Rational>& lam,
                                const std::vector<Rational>& mu,
                                const std::vector<MultiPoly>& c) {
    LambdaSeries base = casimir_poly(c, g);
    LambdaSeries h = base;
    for (std::size_t j = 0; j < lam.size(); ++j) {
        LambdaSeries basis = LambdaSeries::constant(MultiPoly(1));
        for (std::size_t i = 0; i < lam.size(); ++i)
            if (i != j) basis *= LambdaSeries::lambda() - LambdaSeries::constant(MultiPoly(lam[i]));
        MultiPoly value = MultiPoly(mu[j] * mu[j]) - base.eval_at(lam[j]);
        h += basis * (value * off_product(lam, j).inv());
    }
    return h;
}

}  // namespace

LaxMat wave_matrix(int lmax, const LenardTable& table) {
    if (lmax < 1) throw std::domain_error("wave_matrix: depth must be at least 1");
    if (table.lmax() < lmax)
        throw std::out_of_range("wave_matrix: recursion table too small for requested depth");
    LambdaSeries B;
    for (int l = 0; l <= lmax; ++l) B += LambdaSeries::monomial2(-2 * l, table.R(2 * l - 1));
    B = B.truncated2(-2 * lmax);
    LambdaSeries A = B.map_coeffs([](const MultiPoly& p) { return d_x(p); }) * Rational(-1, 2);
    LambdaSeries C = B.map_coeffs([](const MultiPoly& p) { return d_x(p, 2); }) * Rational(-1, 2) +
                     (LambdaSeries::lambda() - LambdaSeries::constant(u_poly())) * B;
    LaxMat U;
    U.at(0, 0) = A;
    U.at(0, 1) = B;
    U.at(1, 0) = C;
    U.at(1, 1) = -A;
    return U;
}

LaxMat wave_matrix(int lmax) { return wave_matrix(lmax, lenard(lmax)); }

LaxMat poly_matrix(int n, const LenardTable& table) {
    if (n < 0) throw std::domain_error("poly_matrix: index must be nonnegative");
    LaxMat U = wave_matrix(n + 2, table);
    LaxMat out = U.map_entries(
        [&](const LambdaSeries& s) { return s.shifted2(2 * n).proj_nonneg(); });
    out.at(1, 0) -= LambdaSeries::constant(table.R(2 * n + 1));
    return out;
}

LaxMat poly_matrix(int n) { return poly_matrix(n, lenard(n + 2)); }

LaxMat lambda_matrix(int g) {
    if (g < 1) throw std::domain_error("lambda_matrix: genus must be positive");
    LenardTable table = lenard(g + 2);
    std::vector<MultiPoly> c = c_coeffs(g);
    LaxMat acc;
    for (int l = 1; l <= g + 1; ++l) {
        if (c[static_cast<std::size_t>(l)].is_zero()) continue;
        acc += poly_matrix(l - 1, table) * c[static_cast<std::size_t>(l)];
    }
    return acc;
}

LaxMat mat_dx(const LaxMat& m) {
    return m.map_coeffs([](const MultiPoly& p) { return d_x(p); });
}

LaxMat mat_ds(int l, const LaxMat& m, const LenardTable& table) {
    return m.map_coeffs([&](const MultiPoly& p) { return d_s(l, p, table); });
}

LaxMat mat_dlambda(const LaxMat& m) {
    return m.map_entries([](const LambdaSeries& s) { return s.d_lambda(); });
}

bool flow_curvature_check(int g, int l) {
    if (g < 2 || l < 1 || l > g - 1)
        throw std::domain_error("flow_curvature_check: flow index out of range");
    LenardTable table = lenard(l + 2);
    LaxMat U1 = poly_matrix(0, table);
    LaxMat Ul = poly_matrix(l, table);
    LaxMat Z = mat_dx(Ul) - mat_ds(l, U1, table) + LaxMat::commutator(Ul, U1);
    return Z.exact_zero();
}

Rational string_curvature_factor(int g) {
    if (g < 1) throw std::domain_error("string_curvature_factor: genus must be positive");
    LenardTable table = lenard(g + 2);
    LaxMat Ag = lambda_matrix(g);
    LaxMat U1 = poly_matrix(0, table);
    LaxMat Z = mat_dx(Ag) - mat_dlambda(U1) + LaxMat::commutator(Ag, U1);
    if (!exact_zero_series(Z.at(0, 0)) || !exact_zero_series(Z.at(0, 1)) ||
        !exact_zero_series(Z.at(1, 1)))
        throw std::logic_error("string_curvature_factor: residual outside the (2,1) slot");
    const LambdaSeries& R = Z.at(1, 0);
    if (!R.is_poly() || R.poly_degree() > 0)
        throw std::logic_error("string_curvature_factor: residual is not lambda-free");
    MultiPoly resid = R.coeff2(0);
    MultiPoly target = d_x(string_lhs(g, true, table));
    const auto& lead = *target.terms().begin();
    Rational factor = resid.coeff(lead.first) / lead.second;
    if (resid - factor * target != MultiPoly())
        throw std::logic_error("string_curvature_factor: residual is not proportional to the string derivative");
    return factor;
}

CurvatureReport mixed_curvature_check(int g) {
    if (g < 1) throw std::domain_error("mixed_curvature_check: genus must be positive");
    LenardTable table = lenard(g + 2);
    LaxMat Ag = lambda_matrix(g);
    std::vector<LaxMat> U(static_cast<std::size_t>(g));  // U[l] = poly_matrix(l)
    for (int l = 0; l <= g - 1; ++l) U[static_cast<std::size_t>(l)] = poly_matrix(l, table);

    std::vector<LaxMat> residuals;
    for (int l = 1; l <= g - 1; ++l) {
        const LaxMat& Ul = U[static_cast<std::size_t>(l)];
        residuals.push_back(mat_ds(l, Ag, table) - mat_dlambda(Ul) + LaxMat::commutator(Ag, Ul));
    }
    for (int l = 1; l <= g - 1; ++l)
        for (int m = l + 1; m <= g - 1; ++m) {
            const LaxMat& Ul = U[static_cast<std::size_t>(l)];
            const LaxMat& Um = U[static_cast<std::size_t>(m)];
            residuals.push_back(mat_ds(m, Ul, table) - mat_ds(l, Um, table) +
                                LaxMat::commutator(Ul, Um));
        }

    CurvatureReport report{true, true};
    for (const LaxMat& Z : residuals)
        if (!Z.exact_zero()) report.raw_zero = false;
    if (!report.raw_zero) {
        for (const LaxMat& Z : residuals) {
            LaxMat reduced = Z.map_coeffs(
                [&](const MultiPoly& p) { return reduce_on_string_locus(p, g, table); });
            if (!reduced.exact_zero()) report.locus_zero = false;
        }
    }
    return report;
}

MultiPoly c_convolution(const std::vector<MultiPoly>& c, int g, int k) {
    require_c_vector(g, c, "c_convolution");
    MultiPoly out;
    for (int m = std::max(0, k - g); m <= std::min(g + 1, k + 1); ++m)
        out += c[static_cast<std::size_t>(m)] * c[static_cast<std::size_t>(k + 1 - m)];
    return out;
}

LambdaSeries casimir_poly(const std::vector<MultiPoly>& c, int g) {
    require_c_vector(g, c, "casimir_poly");
    LambdaSeries out;
    for (int k = g; k <= 2 * g + 1; ++k)
        out += LambdaSeries::monomial2(2 * k, c_convolution(c, g, k));
    return out;
}

LambdaSeries invariant_base(const std::vector<MultiPoly>& c, int g) {
    LambdaSeries out = casimir_poly(c, g);
    for (int k = 0; k <= g - 1; ++k)
        out += LambdaSeries::monomial2(2 * k, c_convolution(c, g, k));
    return out;
}

SpectralData spectral_data(int g) {
    SpectralData sd;
    sd.g = g;
    sd.c = c_coeffs(g);
    sd.h = -lambda_matrix(g).det();
    if (!sd.h.is_poly() || sd.h.poly_degree() != 2 * g + 1 ||
        sd.h.coeff2(2 * (2 * g + 1)) != MultiPoly(1))
        throw std::logic_error("spectral_data: curve is not monic of degree 2g+1");
    // Deep enough to read every stored Hamiltonian (exp2 -(2g+1)) with a
    // spare coefficient; the tail grows combinatorially with depth.
    sd.xi = sd.h.sqrt(-(2 * g + 5));
    sd.I0_tilde = casimir_poly(sd.c, g);
    sd.I0 = invariant_base(sd.c, g);
    for (int k = 1; k <= g; ++k) {
        sd.I.push_back(sd.h.coeff2(2 * (g - k)) - c_convolution(sd.c, g, g - k));
        sd.H.push_back(Rational(2) * sd.xi.coeff2(-(2 * k + 1)));
    }
    return sd;
}

std::vector<std::vector<MultiPoly>> toeplitz_c(const std::vector<MultiPoly>& c, int g) {
    require_c_vector(g, c, "toeplitz_c");
    std::vector<std::vector<MultiPoly>> T(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
        T[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(g));
        for (int j = 0; j <= i; ++j)
            T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                c[static_cast<std::size_t>(g + 1 - (i - j))];
    }
    return T;
}

std::vector<std::vector<MultiPoly>> toeplitz_c_ext(const std::vector<MultiPoly>& c, int g) {
    require_c_vector(g, c, "toeplitz_c_ext");
    std::vector<std::vector<MultiPoly>> T(static_cast<std::size_t>(g) + 1);
    for (int i = 0; i <= g; ++i) {
        T[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(g) + 1);
        for (int j = 0; j <= i; ++j)
            T[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                c[static_cast<std::size_t>(g + 1 - (i - j))];
    }
    return T;
}

bool spectral_locus_check(int g) {
    SpectralData sd = spectral_data(g);
    LenardTable table = lenard(g + 2);
    auto reduced_zero = [&](const MultiPoly& p) {
        return reduce_on_string_locus(p, g, table).is_zero();
    };

    // xi coefficients at nonnegative half-powers are the c's.
    if (sd.alpha(g + 1) != MultiPoly(1)) return false;
    for (int m = 0; m <= g; ++m)
        if (!reduced_zero(sd.alpha(m) - sd.c[static_cast<std::size_t>(m)])) return false;

    // Curve coefficients above the invariants are the convolutions.
    for (int k = g; k <= 2 * g; ++k)
        if (!reduced_zero(sd.h.coeff2(2 * k) - c_convolution(sd.c, g, k))) return false;

    // Invariants against Hamiltonians through the Toeplitz matrix.
    auto C = toeplitz_c(sd.c, g);
    for (int k = 1; k <= g; ++k) {
        MultiPoly rhs;
        for (int j = 1; j <= k; ++j)
            rhs += C[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)] *
                   sd.H[static_cast<std::size_t>(j - 1)];
        if (!reduced_zero(sd.I[static_cast<std::size_t>(k - 1)] - rhs)) return false;
    }
    return true;
}

bool spectral_numeric_check(int g, std::uint64_t seed, int trials) {
    SpectralData sd = spectral_data(g);
    LenardTable table = lenard(g + 2);
    MultiPoly top_jet = string_locus_table(g, 0, table)[0];
    auto C = toeplitz_c(sd.c, g);
    SplitMix64 rng{seed};

    for (int t = 0; t < trials; ++t) {
        std::map<Atom, Rational> at;
        for (int k = 0; k < 2 * g; ++k) at[u_jet(k)] = sample_rational(rng);
        for (int l = 0; l <= g - 1; ++l) at[s_time(l)] = sample_rational(rng);
        at[u_jet(2 * g)] = top_jet.eval_partial(at).constant_value();
        auto vanishes = [&](const MultiPoly& p) {
            return p.eval_partial(at).constant_value().is_zero();
        };

        for (int m = 0; m <= g; ++m)
            if (!vanishes(sd.alpha(m) - sd.c[static_cast<std::size_t>(m)])) return false;
        for (int k = g; k <= 2 * g; ++k)
            if (!vanishes(sd.h.coeff2(2 * k) - c_convolution(sd.c, g, k))) return false;
        for (int k = 1; k <= g; ++k) {
            MultiPoly rhs;
            for (int j = 1; j <= k; ++j)
                rhs += C[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)] *
                       sd.H[static_cast<std::size_t>(j - 1)];
            if (!vanishes(sd.I[static_cast<std::size_t>(k - 1)] - rhs)) return false;
        }
    }
    return true;
}

LambdaSeries r_tilde(int n, const LenardTable& table) {
    if (n < 0) throw std::domain_error("r_tilde: index must be nonnegative");
    LambdaSeries out;
    for (int k = 0; k <= n; ++k)
        out += LambdaSeries::monomial2(2 * (n - k), table.R(2 * k - 1));
    return out;
}

LambdaSeries beta_from_roots(const std::vector<Rational>& lam) {
    LambdaSeries b = LambdaSeries::constant(MultiPoly(1));
    for (const Rational& root : lam)
        b *= LambdaSeries::lambda() - LambdaSeries::constant(MultiPoly(root));
    return b;
}

std::vector<LambdaSeries> beta_projections(const LambdaSeries& beta_g, int g) {
    std::vector<LambdaSeries> out;
    out.reserve(static_cast<std::size_t>(g) + 1);
    for (int n = 0; n <= g; ++n) out.push_back(beta_g.shifted2(2 * (n - g)).proj_nonneg());
    return out;
}

std::vector<LambdaSeries> rtilde_from_beta(const std::vector<LambdaSeries>& betas,
                                           const std::vector<MultiPoly>& c, int g) {
    require_c_vector(g, c, "rtilde_from_beta");
    if (betas.size() != static_cast<std::size_t>(g) + 1)
        throw std::invalid_argument("rtilde_from_beta: expected g+1 projections");
    std::vector<LambdaSeries> R(static_cast<std::size_t>(g) + 1);
    for (int n = 0; n <= g; ++n) {
        LambdaSeries acc = betas[static_cast<std::size_t>(n)];
        for (int k = 0; k < n; ++k)
            acc -= R[static_cast<std::size_t>(k)] * c[static_cast<std::size_t>(g + 1 - (n - k))];
        R[static_cast<std::size_t>(n)] = acc;
    }
    return R;
}

bool toeplitz_relation_check(int g) {
    if (g < 1) throw std::domain_error("toeplitz_relation_check: genus must be positive");
    LenardTable table = lenard(g + 2);
    std::vector<MultiPoly> c = c_coeffs(g);
    LambdaSeries beta = lambda_matrix(g).at(0, 1);

    if (!beta.is_poly() || beta.poly_degree() != g || beta.coeff2(2 * g) != MultiPoly(1))
        return false;

    // The (1,2) entries of the polynomial members are the R~ family.
    for (int n = 0; n <= g; ++n)
        if (!exact_equal(r_tilde(n, table), poly_matrix(n, table).at(0, 1))) return false;

    // Coefficients of beta as c*R convolutions.
    for (int n = 1; n <= g; ++n) {
        MultiPoly rhs;
        for (int j = 0; j <= n; ++j)
            rhs += c[static_cast<std::size_t>(g + 1 - j)] * table.R(2 * (n - j) - 1);
        if (beta.coeff2(2 * (g - n)) != rhs) return false;
    }

    // Projections against the extended Toeplitz matrix acting on R~.
    auto T = toeplitz_c_ext(c, g);
    std::vector<LambdaSeries> projections = beta_projections(beta, g);
    for (int n = 0; n <= g; ++n) {
        LambdaSeries rhs;
        for (int k = 0; k <= n; ++k)
            rhs += r_tilde(k, table) *
                   T[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
        if (!exact_equal(projections[static_cast<std::size_t>(n)], rhs)) return false;
    }

    // Round trip: forward substitution recovers the R~ family.
    std::vector<LambdaSeries> recovered = rtilde_from_beta(projections, c, g);
    for (int n = 0; n <= g; ++n)
        if (!exact_equal(recovered[static_cast<std::size_t>(n)], r_tilde(n, table)))
            return false;
    return true;
}

std::vector<MultiPoly> spectral_hamiltonians(int g, const std::vector<Rational>& lam,
                                             const std::vector<Rational>& mu,
                                             const std::vector<MultiPoly>& c) {
    require_coordinates(g, lam, mu, "spectral_hamiltonians");
    require_c_vector(g, c, "spectral_hamiltonians");
    std::vector<LambdaSeries> rt =
        rtilde_from_beta(beta_projections(beta_from_roots(lam), g), c, g);
    LambdaSeries base = invariant_base(c, g);
    std::vector<MultiPoly> H;
    H.reserve(static_cast<std::size_t>(g));
    for (int k = 1; k <= g; ++k) {
        MultiPoly acc;
        for (std::size_t j = 0; j < lam.size(); ++j) {
            MultiPoly value = MultiPoly(mu[j] * mu[j]) - base.eval_at(lam[j]);
            acc += value * rt[static_cast<std::size_t>(k - 1)].eval_at(lam[j]) *
                   off_product(lam, j).inv();
        }
        H.push_back(acc);
    }
    return H;
}

std::vector<MultiPoly> curve_hamiltonians(int g, const std::vector<Rational>& lam,
                                          const std::vector<Rational>& mu,
                                          const std::vector<MultiPoly>& c) {
    require_coordinates(g, lam, mu, "curve_hamiltonians");
    require_c_vector(g, c, "curve_hamiltonians");
    LambdaSeries xi = interpolated_curve(g, lam, mu, c).sqrt(default_depth2(g));
    std::vector<MultiPoly> H;
    H.reserve(static_cast<std::size_t>(g));
    for (int k = 1; k <= g; ++k) H.push_back(Rational(2) * xi.coeff2(-(2 * k + 1)));
    return H;
}

std::vector<MultiPoly> curve_invariants(int g, const std::vector<Rational>& lam,
                                        const std::vector<Rational>& mu,
                                        const std::vector<MultiPoly>& c) {
    require_coordinates(g, lam, mu, "curve_invariants");
    require_c_vector(g, c, "curve_invariants");
    LambdaSeries h = interpolated_curve(g, lam, mu, c);
    std::vector<MultiPoly> I;
    I.reserve(static_cast<std::size_t>(g));
    for (int k = 1; k <= g; ++k)
        I.push_back(h.coeff2(2 * (g - k)) - c_convolution(c, g, g - k));
    return I;
}

MultiPoly k_hamiltonian(int g, int k, const std::vector<Rational>& lam,
                        const std::vector<Rational>& mu, const std::vector<MultiPoly>& c) {
    if (k < 1 || k > g) throw std::domain_error("k_hamiltonian: flow index out of range");
    std::vector<MultiPoly> H = spectral_hamiltonians(g, lam, mu, c);
    std::vector<LambdaSeries> rt =
        rtilde_from_beta(beta_projections(beta_from_roots(lam), g), c, g);
    LambdaSeries deriv = rt[static_cast<std::size_t>(k - 1)].d_lambda();
    MultiPoly correction;
    for (std::size_t j = 0; j < lam.size(); ++j)
        correction += deriv.eval_at(lam[j]) * mu[j] * off_product(lam, j).inv();
    return H[static_cast<std::size_t>(k - 1)] - correction;
}

bool correction_residue_check(int g, const std::vector<Rational>& lam,
                              const std::vector<Rational>& mu) {
    require_coordinates(g, lam, mu, "correction_residue_check");
    LambdaSeries beta = beta_from_roots(lam);
    std::vector<LambdaSeries> projections = beta_projections(beta, g);
    const int depth2 = -2 * (2 * g + 6);

    LambdaSeries sum;
    for (std::size_t j = 0; j < lam.size(); ++j) {
        LambdaSeries linear = LambdaSeries::lambda() - LambdaSeries::constant(MultiPoly(lam[j]));
        LambdaSeries inv = linear.inverse(depth2);
        sum += beta * inv * inv * (MultiPoly(mu[j]) * off_product(lam, j).inv());
    }
    for (int k = 1; k <= g; ++k) {
        MultiPoly lhs = sum.shifted2(-2 * (g + 1 - k)).residue_infty();
        MultiPoly rhs;
        LambdaSeries deriv = projections[static_cast<std::size_t>(k - 1)].d_lambda();
        for (std::size_t j = 0; j < lam.size(); ++j)
            rhs -= deriv.eval_at(lam[j]) * mu[j] * off_product(lam, j).inv();
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace pi1
