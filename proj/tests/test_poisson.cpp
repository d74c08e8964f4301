#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "pi1/diffjet.hpp"
#include "pi1/minimal_model.hpp"
#include "pi1/poisson.hpp"
#include "pi1/sampling.hpp"

using namespace pi1;

namespace {

Atom ma(int i) { return moduli('a', i); }
Atom mb(int i) { return moduli('b', i); }
Atom mc(int i) { return moduli('c', i); }

const MultiPoly kLam{MultiPoly(spectral(0))};
const MultiPoly kMu{MultiPoly(spectral(1))};

// One matrix family evaluated at a spectral slot, assembled from the
// published entries of the phase matrix.
MultiPoly two_point(const MumfordPhase& ph, char fam, int slot) {
    const Mat2 m = phase_matrix_at(ph, slot);
    return fam == 'a' ? m[0][0] : fam == 'b' ? m[0][1] : m[1][0];
}

Mat2 rational_mat2(long a, long b, long c, long d) {
    Mat2 m;
    m[0][0] = MultiPoly(a);
    m[0][1] = MultiPoly(b);
    m[1][0] = MultiPoly(c);
    m[1][1] = MultiPoly(d);
    return m;
}

std::function<Rational(const Atom&)> resolver(const std::map<Atom, Rational>& vals) {
    return [&vals](const Atom& a) {
        auto it = vals.find(a);
        REQUIRE(it != vals.end());
        return it->second;
    };
}

// All atoms appearing in the coefficients of a matrix.
std::set<Atom> atoms_of(const LaxMat& m) {
    std::set<Atom> out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (const auto& [exp2, coeff] : m.at(i, j).raw())
                for (const auto& [mono, q] : coeff.terms())
                    for (const auto& [atom, e] : mono.factors()) out.insert(atom);
    return out;
}

// Numeric matrix from a symbolic one.
LaxMat eval_mat(const LaxMat& m, const std::map<Atom, Rational>& vals) {
    auto f = resolver(vals);
    return m.map_coeffs([&](const MultiPoly& p) { return MultiPoly(p.eval(f)); });
}

// Moduli values cut out by a numeric matrix in phase-space shape.
std::map<Atom, Rational> phase_point_of(const LaxMat& m, int g) {
    std::map<Atom, Rational> pv;
    for (int i = 0; i < g; ++i) pv[ma(i)] = m.at(0, 0).coeff2(2 * i).constant_value();
    for (int i = 0; i < g; ++i) pv[mb(i)] = m.at(0, 1).coeff2(2 * i).constant_value();
    for (int i = 0; i <= g; ++i) pv[mc(i)] = m.at(1, 0).coeff2(2 * i).constant_value();
    return pv;
}

// The matrix { . , invariant } evaluated at a phase point, entry by
// entry in the spectral parameter.
LaxMat bracket_flow(const CoeffBracket& br, const MumfordPhase& ph,
                    const std::map<Atom, Rational>& pv, const MultiPoly& invariant) {
    const LaxMat sym = ph.matrix();
    LaxMat out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            LambdaSeries acc;
            for (const auto& [exp2, coeff] : sym.at(i, j).raw()) {
                const MultiPoly b = br.apply(coeff, invariant);
                if (b.is_zero()) continue;
                acc += LambdaSeries::monomial2(exp2, b.eval_partial(pv));
            }
            out.at(i, j) = acc;
        }
    return out;
}

// Row l (0-based) of the inverse of a numeric lower-unitriangular matrix.
std::vector<Rational> unitriangular_inverse_row(const std::vector<std::vector<Rational>>& C,
                                                int l) {
    const int n = static_cast<int>(C.size());
    std::vector<Rational> row(static_cast<std::size_t>(n), Rational(0));
    row[static_cast<std::size_t>(l)] = Rational(1);
    for (int j = l - 1; j >= 0; --j) {
        Rational s(0);
        for (int k = j + 1; k <= l; ++k)
            s += row[static_cast<std::size_t>(k)] * C[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        row[static_cast<std::size_t>(j)] = -s;
    }
    return row;
}

// The weights expressing H_{l+1} through the spectral invariants at
// numeric times: row l of the inverse Toeplitz matrix.
std::vector<Rational> hamiltonian_weights(int g, int l, const std::map<Atom, Rational>& vals) {
    const auto C_sym = toeplitz_c(c_coeffs(g), g);
    auto f = resolver(vals);
    std::vector<std::vector<Rational>> C(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
        C[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(g), Rational(0));
        for (int j = 0; j <= i; ++j) {
            const MultiPoly& e = C_sym[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                e.is_zero() ? Rational(0) : e.eval(f);
        }
    }
    return unitriangular_inverse_row(C, l);
}

// Values of every jet, position, and time atom in the set, constrained
// to the locus where the string polynomial and its derivatives vanish:
// jets of order < 2g and the times are free, the rest is substituted.
std::map<Atom, Rational> locus_values(int g, const std::set<Atom>& atoms, SplitMix64& rng,
                                      const LenardTable& table) {
    int max_order = 2 * g - 1;
    for (const Atom& a : atoms)
        if (a.tag == Tag::UJet && a.idx > max_order) max_order = a.idx;

    std::map<Atom, Rational> vals;
    for (const Atom& a : atoms)
        if (a.tag != Tag::UJet || a.idx < 2 * g) vals[a] = sample_rational(rng);
    vals[s_time(0)] = sample_rational(rng);  // the string polynomial carries x
    for (int k = 0; k < 2 * g; ++k) {
        const Atom a = u_jet(k);
        if (!vals.count(a)) vals[a] = sample_rational(rng);
    }
    for (int l = 1; l <= g - 1; ++l) {
        const Atom a = s_time(l);
        if (!vals.count(a)) vals[a] = sample_rational(rng);
    }

    const auto subs = string_locus_table(g, max_order - 2 * g, table);
    auto f = resolver(vals);
    for (int j = 0; j + 2 * g <= max_order; ++j)
        vals[u_jet(2 * g + j)] = subs[static_cast<std::size_t>(j)].eval(f);
    return vals;
}

}  // namespace

TEST_CASE("phase matrix assembles two monic pencils") {
    const MumfordPhase ph = MumfordPhase::symbolic(2);
    CHECK(ph.beta().poly_degree() == 2);
    CHECK(ph.beta().coeff2(4) == MultiPoly(1));
    CHECK(ph.gamma().poly_degree() == 3);
    CHECK(ph.gamma().coeff2(6) == MultiPoly(1));
    CHECK(ph.matrix().trace().is_zero_trusted());
    CHECK(ph.curve_coefficient(5) == MultiPoly(1));

    // -det agrees with the curve coefficients.
    const LambdaSeries h = -ph.matrix().det();
    for (int k = 0; k <= 5; ++k) CHECK(h.coeff2(2 * k) == ph.curve_coefficient(k));

    CHECK_THROWS_AS(MumfordPhase::symbolic(0), std::invalid_argument);
    MumfordPhase broken = ph;
    broken.c.pop_back();
    CHECK_THROWS_AS(broken.matrix(), std::invalid_argument);
}

TEST_CASE("coefficient table at genus one in closed form") {
    const CoeffBracket br = derive_coeff_brackets(1);
    const MultiPoly b0{MultiPoly(mb(0))}, c1{MultiPoly(mc(1))};

    CHECK(br.entry(ma(0), mb(0)) == MultiPoly(1));
    CHECK(br.entry(ma(0), mc(0)) == b0 - c1);
    CHECK(br.entry(ma(0), mc(1)) == MultiPoly(-1));
    CHECK(br.entry(mb(0), mc(0)).is_zero());
    CHECK(br.entry(mb(0), mc(1)).is_zero());
    CHECK(br.entry(mc(0), mc(1)).is_zero());

    // Antisymmetry is applied on lookup.
    CHECK(br.entry(mb(0), ma(0)) == MultiPoly(-1));
    CHECK(br.entry(mc(0), ma(0)) == c1 - b0);
    CHECK(br.entry(ma(0), ma(0)).is_zero());
    CHECK_THROWS_AS(br.entry(u_jet(0), ma(0)), std::invalid_argument);
}

TEST_CASE("coefficient table matches the hat formulas through genus three") {
    for (int g = 1; g <= 3; ++g) {
        const CoeffBracket br = derive_coeff_brackets(g);
        const MumfordPhase ph = MumfordPhase::symbolic(g);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                CHECK(br.entry(ma(i), ma(j)).is_zero());
                CHECK(br.entry(mb(i), mb(j)).is_zero());
                CHECK(br.entry(ma(i), mb(j)) == ph.beta_hat(i + j + 1));
            }
        for (int i = 0; i < g; ++i)
            for (int j = 0; j <= g; ++j) {
                MultiPoly want_ac = -ph.gamma_hat(i + j + 1);
                if (j == 0) want_ac += ph.beta_hat(i);
                CHECK(br.entry(ma(i), mc(j)) == want_ac);
                CHECK(br.entry(mb(i), mc(j)) == Rational(2) * ph.alpha_hat(i + j + 1));
            }
        for (int i = 0; i <= g; ++i)
            for (int j = 0; j <= g; ++j) {
                MultiPoly want_cc;
                if (j == 0) want_cc -= Rational(2) * ph.alpha_hat(i);
                if (i == 0) want_cc += Rational(2) * ph.alpha_hat(j);
                CHECK(br.entry(mc(i), mc(j)) == want_cc);
            }
    }
}

TEST_CASE("two-point sums rebuild the divided differences") {
    for (int g = 2; g <= 3; ++g) {
        const CoeffBracket br = derive_coeff_brackets(g);
        const MumfordPhase ph = MumfordPhase::symbolic(g);
        const MultiPoly alpha_l = two_point(ph, 'a', 0), alpha_m = two_point(ph, 'a', 1);
        const MultiPoly beta_l = two_point(ph, 'b', 0), beta_m = two_point(ph, 'b', 1);
        const MultiPoly gamma_l = two_point(ph, 'c', 0), gamma_m = two_point(ph, 'c', 1);

        MultiPoly sum_ab, sum_ac, sum_bc, sum_cc;
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j)
                sum_ab += br.entry(ma(i), mb(j)) * kLam.pow(i) * kMu.pow(j);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j <= g; ++j) {
                sum_ac += br.entry(ma(i), mc(j)) * kLam.pow(i) * kMu.pow(j);
                sum_bc += br.entry(mb(i), mc(j)) * kLam.pow(i) * kMu.pow(j);
            }
        for (int i = 0; i <= g; ++i)
            for (int j = 0; j <= g; ++j)
                sum_cc += br.entry(mc(i), mc(j)) * kLam.pow(i) * kMu.pow(j);

        CHECK(sum_ab == divide_by_spectral_difference(beta_l - beta_m));
        CHECK(sum_ac == -divide_by_spectral_difference(gamma_l - gamma_m) + beta_l);
        CHECK(sum_bc == Rational(2) * divide_by_spectral_difference(alpha_l - alpha_m));
        CHECK(sum_cc == Rational(-2) * (alpha_l - alpha_m));
    }
}

TEST_CASE("division by the spectral difference is exact or refused") {
    CHECK(divide_by_spectral_difference(kLam.pow(3) - kMu.pow(3)) ==
          kLam * kLam + kLam * kMu + kMu * kMu);
    CHECK(divide_by_spectral_difference(MultiPoly()).is_zero());

    SplitMix64 rng(0x2206011ULL);
    const std::vector<Atom> atoms{spectral(0), spectral(1), ma(0), mb(1)};
    for (int t = 0; t < 5; ++t) {
        const MultiPoly f = sample_poly(rng, atoms, 6, 3);
        CHECK(divide_by_spectral_difference(f * (kLam - kMu)) == f);
    }

    CHECK_THROWS_AS(divide_by_spectral_difference(kMu), std::domain_error);
    CHECK_THROWS_AS(divide_by_spectral_difference(MultiPoly(5)), std::domain_error);
    CHECK_THROWS_AS(divide_by_spectral_difference(kLam * kMu + MultiPoly(1)),
                    std::domain_error);
}

TEST_CASE("permutation and corner tensors act as advertised") {
    const TensorMat P = permutation_tensor();
    TensorMat identity;
    for (int i = 0; i < 4; ++i) identity.at(i, i) = MultiPoly(1);
    CHECK(P * P == identity);
    CHECK(delta_tensor() == kron(sigma_minus(), sigma_minus()));

    // P conjugates a product tensor into the swapped product.
    const Mat2 X = rational_mat2(1, 2, -3, 5), Y = rational_mat2(0, 7, 1, -2);
    CHECK(P * kron(X, Y) * P == kron(Y, X));
    CHECK(kron(mat2_mul(X, Y), identity_mat2()) ==
          kron(X, identity_mat2()) * kron(Y, identity_mat2()));
}

TEST_CASE("sigma commutators with the structure tensors") {
    const Mat2 id = identity_mat2(), sp = sigma_plus(), sm = sigma_minus(), s3 = sigma_third();
    const TensorMat P = permutation_tensor(), D = delta_tensor();
    const MultiPoly two(2);

    CHECK(tensor_commutator(kron(id, s3), P) == two * (kron(sm, sp) - kron(sp, sm)));
    CHECK(tensor_commutator(kron(s3, id), P) == -(two * (kron(sm, sp) - kron(sp, sm))));
    CHECK(tensor_commutator(kron(id, sp), P) == kron(sp, s3) - kron(s3, sp));
    CHECK(tensor_commutator(kron(sp, id), P) == -(kron(sp, s3) - kron(s3, sp)));
    CHECK(tensor_commutator(kron(id, sm), P) == kron(s3, sm) - kron(sm, s3));
    CHECK(tensor_commutator(kron(sm, id), P) == -(kron(s3, sm) - kron(sm, s3)));

    CHECK(tensor_commutator(kron(id, s3), D) == -(two * kron(sm, sm)));
    CHECK(tensor_commutator(kron(s3, id), D) == -(two * kron(sm, sm)));
    CHECK(tensor_commutator(kron(id, sp), D) == kron(sm, s3));
    CHECK(tensor_commutator(kron(sp, id), D) == kron(s3, sm));
    CHECK(tensor_commutator(kron(id, sm), D).is_zero());
    CHECK(tensor_commutator(kron(sm, id), D).is_zero());
}

TEST_CASE("all three bracket-tensor routes agree") {
    for (int g = 1; g <= 3; ++g) {
        std::string witness;
        CHECK(tensor_vs_scalar_check(g, &witness));
        CHECK(witness.empty());
    }
    CHECK_THROWS_AS(tensor_vs_scalar_check(0), std::invalid_argument);
    CHECK_THROWS_AS(tensor_vs_scalar_check(4), std::invalid_argument);
}

TEST_CASE("bracket tensor components sit on the expected slots") {
    const MumfordPhase ph = MumfordPhase::symbolic(2);
    const TensorMat T = tensor_bracket_definition(phase_matrix_at(ph, 0), phase_matrix_at(ph, 1));
    const MultiPoly alpha_l = two_point(ph, 'a', 0), alpha_m = two_point(ph, 'a', 1);
    const MultiPoly beta_l = two_point(ph, 'b', 0), beta_m = two_point(ph, 'b', 1);

    CHECK(T.at(0, 0).is_zero());                                // {alpha(l), alpha(m)}
    CHECK(T.at(0, 3).is_zero());                                // {beta(l), beta(m)}
    CHECK(T.at(3, 0) == Rational(-2) * (alpha_l - alpha_m));    // {gamma(l), gamma(m)}
    CHECK(T.at(0, 1) == divide_by_spectral_difference(beta_l - beta_m));
}

TEST_CASE("matrix bracket against the curve polynomial") {
    for (int g = 1; g <= 2; ++g) {
        const CoeffBracket br = derive_coeff_brackets(g);
        const MumfordPhase ph = MumfordPhase::symbolic(g);
        const Mat2 at_lam = phase_matrix_at(ph, 0), at_mu = phase_matrix_at(ph, 1);
        const MultiPoly h_mu =
            at_mu[0][0] * at_mu[0][0] + at_mu[0][1] * at_mu[1][0];

        // [A(lam), A(mu)] / (lam - mu) + [A(lam), beta(mu) sigma_-].
        Mat2 comm = mat2_mul(at_lam, at_mu), rev = mat2_mul(at_mu, at_lam);
        Mat2 rhs;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                rhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    divide_by_spectral_difference(
                        comm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                        rev[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        Mat2 corner = sigma_minus();
        for (auto& row : corner)
            for (auto& e : row) e *= at_mu[0][1];
        const Mat2 c1 = mat2_mul(at_lam, corner), c2 = mat2_mul(corner, at_lam);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                rhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    c1[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] -
                    c2[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(br.apply(at_lam[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                               h_mu) ==
                      rhs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
}

TEST_CASE("time-determined part of the curve commutes with the matrix") {
    for (int g = 1; g <= 2; ++g) {
        const CoeffBracket br = derive_coeff_brackets(g);
        const MumfordPhase ph = MumfordPhase::symbolic(g);
        const Mat2 at_lam = phase_matrix_at(ph, 0);
        MultiPoly casimir_mu;
        for (int k = g; k <= 2 * g + 1; ++k)
            casimir_mu += ph.curve_coefficient(k) * kMu.pow(k);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(br.apply(at_lam[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                               casimir_mu)
                          .is_zero());
    }
}

TEST_CASE("curve coefficients above the genus are casimirs") {
    CHECK(casimir_check(1));
    CHECK(casimir_check(2));
    CHECK(casimir_check(3));
    CHECK(casimir_check(4));
    CHECK_THROWS_AS(casimir_check(0), std::invalid_argument);
}

TEST_CASE("the casimir window is sharp at genus one") {
    const CoeffBracket br = derive_coeff_brackets(1);
    const MumfordPhase ph = MumfordPhase::symbolic(1);
    const MultiPoly b0{MultiPoly(mb(0))}, c0{MultiPoly(mc(0))}, c1{MultiPoly(mc(1))};
    // The coefficient below the window fails to commute already with a0.
    CHECK(br.apply(MultiPoly(ma(0)), ph.curve_coefficient(0)) == c0 + b0 * b0 - b0 * c1);
}

TEST_CASE("canonical pairings at frozen roots") {
    SUBCASE("genus two at roots one and two") {
        SpectralSample s;
        s.g = 2;
        s.roots = {Rational(1), Rational(2)};
        s.a = {Rational(1, 2), Rational(3)};
        s.c = {Rational(1), Rational(2), Rational(5)};
        const CanonicalPairings pr = canonical_pairings(derive_coeff_brackets(2), s);
        CHECK(pr.lm[0][0] == Rational(1));
        CHECK(pr.lm[0][1] == Rational(0));
        CHECK(pr.lm[1][0] == Rational(0));
        CHECK(pr.lm[1][1] == Rational(1));
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                CHECK(pr.ll[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                      Rational(0));
                CHECK(pr.mm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ==
                      Rational(0));
            }
    }
    SUBCASE("genus one closed form") {
        SpectralSample s;
        s.g = 1;
        s.roots = {Rational(3)};
        s.a = {Rational(5, 2)};
        s.c = {Rational(-1), Rational(4)};
        const CanonicalPairings pr = canonical_pairings(derive_coeff_brackets(1), s);
        CHECK(pr.lm[0][0] == Rational(1));
        CHECK(pr.ll[0][0] == Rational(0));
        CHECK(pr.mm[0][0] == Rational(0));
    }
    SUBCASE("degenerate and mismatched inputs are rejected") {
        SpectralSample s;
        s.g = 2;
        s.roots = {Rational(1), Rational(1)};
        s.a = {Rational(1), Rational(2)};
        s.c = {Rational(1), Rational(2), Rational(3)};
        CHECK_THROWS_AS(canonical_pairings(derive_coeff_brackets(2), s), std::domain_error);
        s.roots = {Rational(1), Rational(2)};
        CHECK_THROWS_AS(canonical_pairings(derive_coeff_brackets(3), s), std::invalid_argument);
    }
}

TEST_CASE("canonical relations hold across genus and seeds") {
    CHECK(canonical_check(1, 5));
    CHECK(canonical_check(2, 5));
    CHECK(canonical_check(3, 3));
    CHECK(canonical_check(4, 2));
    CHECK(canonical_check(5, 10));
}

TEST_CASE("bracket is an antisymmetric biderivation") {
    SplitMix64 rng(0x2206012ULL);
    const std::vector<Atom> atoms{ma(0), ma(1), mb(0), mb(1), mc(0), mc(1), mc(2)};
    const CoeffBracket br = derive_coeff_brackets(2);
    for (int t = 0; t < 4; ++t) {
        const MultiPoly f = sample_poly(rng, atoms, 4, 2);
        const MultiPoly h = sample_poly(rng, atoms, 4, 2);
        const MultiPoly k = sample_poly(rng, atoms, 4, 2);
        CHECK(br.apply(f, h) == -br.apply(h, f));
        CHECK(br.apply(f, h * k) == br.apply(f, h) * k + h * br.apply(f, k));
        CHECK(br.apply(f + h, k) == br.apply(f, k) + br.apply(h, k));
    }
}

TEST_CASE("jacobi identity on sampled linear observables") {
    for (int g = 1; g <= 2; ++g) {
        const CoeffBracket br = derive_coeff_brackets(g);
        std::vector<Atom> atoms;
        for (int i = 0; i < g; ++i) atoms.push_back(ma(i));
        for (int i = 0; i < g; ++i) atoms.push_back(mb(i));
        for (int i = 0; i <= g; ++i) atoms.push_back(mc(i));

        SplitMix64 rng(0x2206013ULL + static_cast<std::uint64_t>(g));
        auto linear = [&]() {
            MultiPoly p(sample_rational(rng));
            for (const Atom& a : atoms) p += sample_rational(rng) * MultiPoly(a);
            return p;
        };
        for (int t = 0; t < 20; ++t) {
            const MultiPoly f = linear(), h = linear(), k = linear();
            const MultiPoly cyc =
                br.apply(f, br.apply(h, k)) + br.apply(h, br.apply(k, f)) +
                br.apply(k, br.apply(f, h));
            CHECK(cyc.is_zero());
        }
    }
}

TEST_CASE("gauge shift by the lower corner preserves the bracket") {
    SplitMix64 rng(0x2206014ULL);
    const Rational cval = sample_rational_nonzero(rng);
    Mat2 G = identity_mat2(), Gi = identity_mat2();
    G[1][0] = MultiPoly(cval);
    Gi[1][0] = MultiPoly(-cval);

    const TensorMat GG = kron(G, G), GGi = kron(Gi, Gi);
    CHECK(tensor_commutator(GG, permutation_tensor()).is_zero());
    CHECK(tensor_commutator(GG, delta_tensor()).is_zero());

    const MumfordPhase ph = MumfordPhase::symbolic(1);
    const CoeffBracket br = derive_coeff_brackets(1);
    const Mat2 at_lam = phase_matrix_at(ph, 0), at_mu = phase_matrix_at(ph, 1);
    const Mat2 b_lam = mat2_mul(Gi, mat2_mul(at_lam, G));
    const Mat2 b_mu = mat2_mul(Gi, mat2_mul(at_mu, G));

    const TensorMat conjugated = GGi * tensor_bracket_definition(at_lam, at_mu) * GG;
    CHECK(tensor_bracket_definition(b_lam, b_mu) == conjugated);
    CHECK(tensor_bracket_from_table(br, b_lam, b_mu) == conjugated);
}

TEST_CASE("ad flow generates the spectral invariants") {
    CHECK(ad_flow_check(1));
    CHECK(ad_flow_check(2));
    CHECK(ad_flow_check(3));
    CHECK_THROWS_AS(ad_flow_check(0), std::invalid_argument);
}

TEST_CASE("flow generators carry the time-weighted recursion tail") {
    // The beta coefficient subtracted in the l-th flow generator equals
    // the recursion entry R_{2l+1} plus time-weighted lower entries; the
    // two coincide exactly when the intermediate times are switched off.
    for (int g = 2; g <= 3; ++g) {
        const LenardTable table = lenard(g + 1);
        const LaxMat big = lambda_matrix(g);
        const auto c = c_coeffs(g);
        for (int l = 0; l < g; ++l) {
            MultiPoly want = table.R(2 * l + 1);
            for (int m = g - l; m <= g - 1; ++m)
                want += c[static_cast<std::size_t>(m)] * table.R(2 * (m + l - g) - 1);
            CHECK(big.at(0, 1).coeff2(2 * (g - l - 1)) == want);
        }
    }
}

TEST_CASE("hamiltonian flows match the polynomial members") {
    for (int g = 1; g <= 3; ++g) {
        const CoeffBracket br = derive_coeff_brackets(g);
        const MumfordPhase ph = MumfordPhase::symbolic(g);
        const LenardTable table = lenard(g + 2);
        const LaxMat big = lambda_matrix(g);

        std::set<Atom> atoms = atoms_of(big);
        for (int l = 0; l < g; ++l) {
            const std::set<Atom> more = atoms_of(poly_matrix(l, table));
            atoms.insert(more.begin(), more.end());
        }
        for (int l = 1; l <= g - 1; ++l) atoms.insert(s_time(l));

        SplitMix64 rng(0x2206015ULL + static_cast<std::uint64_t>(g));
        for (int trial = 0; trial < 2; ++trial) {
            std::map<Atom, Rational> vals;
            for (const Atom& a : atoms) vals[a] = sample_rational(rng);
            const LaxMat a_num = eval_mat(big, vals);
            const std::map<Atom, Rational> pv = phase_point_of(a_num, g);

            for (int l = 0; l < g; ++l) {
                const std::vector<Rational> w = hamiltonian_weights(g, l, vals);
                LaxMat lhs;
                for (int k = 1; k <= g; ++k) {
                    if (w[static_cast<std::size_t>(k - 1)].sgn() == 0) continue;
                    lhs += bracket_flow(br, ph, pv, ph.curve_coefficient(g - k)) *
                           w[static_cast<std::size_t>(k - 1)];
                }
                const LaxMat member = eval_mat(poly_matrix(l, table), vals);
                const LaxMat rhs = LaxMat::commutator(member, a_num);
                CHECK((lhs - rhs).exact_zero());
            }
        }
    }
}

TEST_CASE("time flows split into a hamiltonian and an explicit part") {
    for (int g = 1; g <= 2; ++g) {
        const CoeffBracket br = derive_coeff_brackets(g);
        const MumfordPhase ph = MumfordPhase::symbolic(g);
        const LenardTable table = lenard(g + 2);
        const LaxMat big = lambda_matrix(g);

        SplitMix64 rng(0x2206016ULL + static_cast<std::uint64_t>(g));
        for (int l = 0; l < g; ++l) {
            const LaxMat member = poly_matrix(l, table);
            const LaxMat flowed = l == 0 ? mat_dx(big) : mat_ds(l, big, table);

            std::set<Atom> atoms = atoms_of(big);
            const std::set<Atom> m1 = atoms_of(member), m2 = atoms_of(flowed);
            atoms.insert(m1.begin(), m1.end());
            atoms.insert(m2.begin(), m2.end());

            const std::map<Atom, Rational> vals = locus_values(g, atoms, rng, table);
            const LaxMat a_num = eval_mat(big, vals);
            const std::map<Atom, Rational> pv = phase_point_of(a_num, g);

            const std::vector<Rational> w = hamiltonian_weights(g, l, vals);
            LaxMat hamiltonian_part;
            for (int k = 1; k <= g; ++k) {
                if (w[static_cast<std::size_t>(k - 1)].sgn() == 0) continue;
                hamiltonian_part +=
                    bracket_flow(br, ph, pv, ph.curve_coefficient(g - k)) *
                    w[static_cast<std::size_t>(k - 1)];
            }
            const LaxMat rhs = hamiltonian_part + eval_mat(mat_dlambda(member), vals);
            CHECK((eval_mat(flowed, vals) - rhs).exact_zero());
        }
    }
}

TEST_CASE("sampling guards reject malformed phase input") {
    SplitMix64 rng(0x2206017ULL);
    CHECK_THROWS_AS(sample_spectral(rng, 0), std::invalid_argument);

    SpectralSample s = sample_spectral(rng, 2);
    CHECK(s.roots.size() == 2);
    const std::map<Atom, Rational> vals = phase_values(s);
    // beta coefficients come from the root product.
    CHECK(vals.at(mb(1)) == -(s.roots[0] + s.roots[1]));
    CHECK(vals.at(mb(0)) == s.roots[0] * s.roots[1]);

    s.a.pop_back();
    CHECK_THROWS_AS(phase_values(s), std::invalid_argument);
}
