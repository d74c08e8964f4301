#include "pi1/poisson.hpp"

#include <set>
#include <stdexcept>

#include "pi1/minimal_model.hpp"
#include "pi1/sampling.hpp"
#include "pi1/symfunc.hpp"

namespace pi1 {

namespace {

const MultiPoly kOne(1);

void require_phase_shape(const MumfordPhase& ph) {
    if (ph.g < 1) throw std::invalid_argument("phase space needs genus >= 1");
    if (ph.a.size() != static_cast<std::size_t>(ph.g) ||
        ph.b.size() != static_cast<std::size_t>(ph.g) ||
        ph.c.size() != static_cast<std::size_t>(ph.g) + 1)
        throw std::invalid_argument("phase vectors must have sizes g, g, g+1");
}

// Evaluate a coefficient family at one spectral atom.
MultiPoly at_spectral(const MumfordPhase& ph, char fam, int slot) {
    const MultiPoly z{MultiPoly(spectral(slot))};
    const int deg = fam == 'a' ? ph.g - 1 : fam == 'b' ? ph.g : ph.g + 1;
    MultiPoly out;
    for (int k = 0; k <= deg; ++k) {
        const MultiPoly hat = fam == 'a'   ? ph.alpha_hat(k)
                              : fam == 'b' ? ph.beta_hat(k)
                                           : ph.gamma_hat(k);
        if (!hat.is_zero()) out += hat * z.pow(k);
    }
    return out;
}

std::set<Atom> moduli_atoms_of(const MultiPoly& p) {
    std::set<Atom> out;
    for (const auto& [mono, coeff] : p.terms())
        for (const auto& [atom, exp] : mono.factors())
            if (atom.tag == Tag::Moduli) out.insert(atom);
    return out;
}

MultiPoly lookup_or_zero(const std::map<int, MultiPoly>& m, int k) {
    auto it = m.find(k);
    return it == m.end() ? MultiPoly() : it->second;
}

// All 3g+1 coordinate atoms in a fixed order.
std::vector<Atom> coordinate_atoms(int g) {
    std::vector<Atom> out;
    for (int i = 0; i < g; ++i) out.push_back(moduli('a', i));
    for (int i = 0; i < g; ++i) out.push_back(moduli('b', i));
    for (int i = 0; i <= g; ++i) out.push_back(moduli('c', i));
    return out;
}

// Gradient-vs-gradient contraction against the numeric table.
Rational pair_value(const CoeffBracket& br, const std::map<Atom, Rational>& vals,
                    const std::map<Atom, Rational>& grad_f,
                    const std::map<Atom, Rational>& grad_h) {
    auto resolver = [&vals](const Atom& a) {
        auto it = vals.find(a);
        if (it == vals.end()) throw std::logic_error("phase value missing for a coordinate");
        return it->second;
    };
    Rational out(0);
    for (const auto& [x, fx] : grad_f) {
        if (fx.sgn() == 0) continue;
        for (const auto& [y, hy] : grad_h) {
            if (hy.sgn() == 0) continue;
            const MultiPoly e = br.entry(x, y);
            if (e.is_zero()) continue;
            out += fx * hy * e.eval(resolver);
        }
    }
    return out;
}

// Derivatives of every coordinate of h, evaluated at the point.
std::map<Atom, Rational> gradient_at(const MultiPoly& h, int g,
                                     const std::map<Atom, Rational>& vals) {
    std::map<Atom, Rational> out;
    for (const Atom& x : coordinate_atoms(g)) {
        const MultiPoly d = h.derivative(x);
        if (d.is_zero()) continue;
        auto resolver = [&vals](const Atom& a) {
            auto it = vals.find(a);
            if (it == vals.end()) throw std::logic_error("phase value missing for a coordinate");
            return it->second;
        };
        out[x] = d.eval(resolver);
    }
    return out;
}

}  // namespace

MumfordPhase MumfordPhase::symbolic(int g) {
    if (g < 1) throw std::invalid_argument("phase space needs genus >= 1");
    MumfordPhase ph;
    ph.g = g;
    for (int i = 0; i < g; ++i) ph.a.emplace_back(moduli('a', i));
    for (int i = 0; i < g; ++i) ph.b.emplace_back(moduli('b', i));
    for (int i = 0; i <= g; ++i) ph.c.emplace_back(moduli('c', i));
    return ph;
}

MultiPoly MumfordPhase::alpha_hat(int k) const {
    require_phase_shape(*this);
    if (k < 0 || k > g - 1) return MultiPoly();
    return a[static_cast<std::size_t>(k)];
}

MultiPoly MumfordPhase::beta_hat(int k) const {
    require_phase_shape(*this);
    if (k == g) return kOne;
    if (k < 0 || k > g) return MultiPoly();
    return b[static_cast<std::size_t>(k)];
}

MultiPoly MumfordPhase::gamma_hat(int k) const {
    require_phase_shape(*this);
    if (k == g + 1) return kOne;
    if (k < 0 || k > g + 1) return MultiPoly();
    return c[static_cast<std::size_t>(k)];
}

LambdaSeries MumfordPhase::alpha() const {
    LambdaSeries out;
    for (int k = 0; k < g; ++k) out += LambdaSeries::monomial2(2 * k, alpha_hat(k));
    return out;
}

LambdaSeries MumfordPhase::beta() const {
    LambdaSeries out = LambdaSeries::monomial2(2 * g, kOne);
    for (int k = 0; k < g; ++k) out += LambdaSeries::monomial2(2 * k, beta_hat(k));
    return out;
}

LambdaSeries MumfordPhase::gamma() const {
    LambdaSeries out = LambdaSeries::monomial2(2 * (g + 1), kOne);
    for (int k = 0; k <= g; ++k) out += LambdaSeries::monomial2(2 * k, gamma_hat(k));
    return out;
}

LaxMat MumfordPhase::matrix() const {
    require_phase_shape(*this);
    LaxMat m;
    m.at(0, 0) = alpha();
    m.at(0, 1) = beta();
    m.at(1, 0) = gamma();
    m.at(1, 1) = -m.at(0, 0);
    return m;
}

MultiPoly MumfordPhase::curve_coefficient(int k) const {
    require_phase_shape(*this);
    const LambdaSeries al = alpha();
    return (al * al + beta() * gamma()).coeff2(2 * k);
}

MultiPoly CoeffBracket::entry(const Atom& x, const Atom& y) const {
    if (x.tag != Tag::Moduli || y.tag != Tag::Moduli)
        throw std::invalid_argument("bracket table holds matrix coefficients only");
    if (x == y) return MultiPoly();
    const bool flip = y < x;
    auto it = table.find(flip ? std::make_pair(y, x) : std::make_pair(x, y));
    if (it == table.end()) return MultiPoly();
    return flip ? -it->second : it->second;
}

MultiPoly CoeffBracket::apply(const MultiPoly& f, const MultiPoly& h) const {
    MultiPoly out;
    for (const Atom& x : moduli_atoms_of(f)) {
        const MultiPoly fx = f.derivative(x);
        if (fx.is_zero()) continue;
        for (const Atom& y : moduli_atoms_of(h)) {
            const MultiPoly br = entry(x, y);
            if (br.is_zero()) continue;
            out += fx * h.derivative(y) * br;
        }
    }
    return out;
}

CoeffBracket derive_coeff_brackets(int g) {
    const MumfordPhase ph = MumfordPhase::symbolic(g);
    const MultiPoly alpha_l = at_spectral(ph, 'a', 0), alpha_m = at_spectral(ph, 'a', 1);
    const MultiPoly beta_l = at_spectral(ph, 'b', 0), beta_m = at_spectral(ph, 'b', 1);
    const MultiPoly gamma_l = at_spectral(ph, 'c', 0), gamma_m = at_spectral(ph, 'c', 1);

    const MultiPoly ab = divide_by_spectral_difference(beta_l - beta_m);
    const MultiPoly ac = -divide_by_spectral_difference(gamma_l - gamma_m) + beta_l;
    const MultiPoly bc = Rational(2) * divide_by_spectral_difference(alpha_l - alpha_m);
    const MultiPoly cc = Rational(-2) * (alpha_l - alpha_m);

    CoeffBracket br;
    br.g = g;

    auto load = [&](const MultiPoly& f, char xrole, int xmax, char yrole, int ymax) {
        for (const auto& [i, fi] : f.collect(spectral(0)))
            for (const auto& [j, fij] : fi.collect(spectral(1))) {
                if (fij.is_zero()) continue;
                if (i > xmax || j > ymax)
                    throw std::logic_error("bracket entry outside the coefficient range");
                br.table[{moduli(xrole, i), moduli(yrole, j)}] = fij;
            }
    };
    load(ab, 'a', g - 1, 'b', g - 1);
    load(ac, 'a', g - 1, 'c', g);
    load(bc, 'b', g - 1, 'c', g);

    // The gamma-gamma block is taken with both orientations present;
    // antisymmetry of the two-point polynomial is an invariant.
    std::map<std::pair<int, int>, MultiPoly> cm;
    for (const auto& [i, fi] : cc.collect(spectral(0)))
        for (const auto& [j, fij] : fi.collect(spectral(1)))
            if (!fij.is_zero()) cm[{i, j}] = fij;
    for (const auto& [key, val] : cm) {
        const auto [i, j] = key;
        if (i > g || j > g) throw std::logic_error("bracket entry outside the coefficient range");
        auto mirror = cm.find({j, i});
        const MultiPoly mirrored = mirror == cm.end() ? MultiPoly() : mirror->second;
        if (i == j ? !val.is_zero() : mirrored != -val)
            throw std::logic_error("coefficient table failed antisymmetry");
        if (i < j) br.table[{moduli('c', i), moduli('c', j)}] = val;
    }
    return br;
}

Mat2 identity_mat2() {
    Mat2 m;
    m[0][0] = kOne;
    m[1][1] = kOne;
    return m;
}

Mat2 sigma_plus() {
    Mat2 m;
    m[0][1] = kOne;
    return m;
}

Mat2 sigma_minus() {
    Mat2 m;
    m[1][0] = kOne;
    return m;
}

Mat2 sigma_third() {
    Mat2 m;
    m[0][0] = kOne;
    m[1][1] = MultiPoly(-1);
    return m;
}

Mat2 mat2_mul(const Mat2& x, const Mat2& y) {
    Mat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            MultiPoly s;
            for (int k = 0; k < 2; ++k)
                s += x[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                     y[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s;
        }
    return out;
}

Mat2 phase_matrix_at(const MumfordPhase& phase, int slot) {
    require_phase_shape(phase);
    Mat2 out;
    out[0][0] = at_spectral(phase, 'a', slot);
    out[0][1] = at_spectral(phase, 'b', slot);
    out[1][0] = at_spectral(phase, 'c', slot);
    out[1][1] = -out[0][0];
    return out;
}

TensorMat& TensorMat::operator+=(const TensorMat& o) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) at(i, j) += o.at(i, j);
    return *this;
}

TensorMat& TensorMat::operator-=(const TensorMat& o) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) at(i, j) -= o.at(i, j);
    return *this;
}

TensorMat& TensorMat::operator*=(const MultiPoly& s) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) at(i, j) *= s;
    return *this;
}

TensorMat TensorMat::operator-() const {
    TensorMat r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.at(i, j) = -at(i, j);
    return r;
}

TensorMat operator*(const TensorMat& x, const TensorMat& y) {
    TensorMat r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            MultiPoly s;
            for (int k = 0; k < 4; ++k) s += x.at(i, k) * y.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

bool TensorMat::is_zero() const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (!at(i, j).is_zero()) return false;
    return true;
}

TensorMat kron(const Mat2& x, const Mat2& y) {
    TensorMat r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    r.at(2 * i + k, 2 * j + l) =
                        x[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                        y[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
    return r;
}

TensorMat tensor_commutator(const TensorMat& x, const TensorMat& y) { return x * y - y * x; }

TensorMat permutation_tensor() {
    TensorMat r;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) r.at(2 * i + k, 2 * k + i) = kOne;
    return r;
}

TensorMat delta_tensor() { return kron(sigma_minus(), sigma_minus()); }

MultiPoly divide_by_spectral_difference(const MultiPoly& f) {
    if (f.is_zero()) return f;
    const Atom lam = spectral(0), mu_atom = spectral(1);
    const MultiPoly lam_poly{MultiPoly(lam)}, mu_poly{MultiPoly(mu_atom)};
    const std::map<int, MultiPoly> parts = f.collect(lam);
    const int top = parts.rbegin()->first;

    MultiPoly quotient, carry;
    for (int k = top; k >= 1; --k) {
        carry = lookup_or_zero(parts, k) + mu_poly * carry;
        quotient += carry * lam_poly.pow(k - 1);
    }
    const MultiPoly remainder = lookup_or_zero(parts, 0) + mu_poly * carry;
    if (!remainder.is_zero())
        throw std::domain_error("polynomial is not divisible by the spectral difference");
    return quotient;
}

TensorMat tensor_bracket_definition(const Mat2& at_lam, const Mat2& at_mu) {
    const Mat2 id = identity_mat2();
    const TensorMat sum = kron(at_lam, id) + kron(id, at_mu);
    const TensorMat diff = kron(at_lam, id) - kron(id, at_mu);
    TensorMat r_part = tensor_commutator(sum, permutation_tensor());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r_part.at(i, j) = divide_by_spectral_difference(r_part.at(i, j));
    return r_part + tensor_commutator(diff, delta_tensor());
}

TensorMat tensor_bracket_from_table(const CoeffBracket& br, const Mat2& at_lam,
                                    const Mat2& at_mu) {
    TensorMat out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    out.at(2 * a + c, 2 * b + d) +=
                        br.apply(at_lam[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)],
                                 at_mu[static_cast<std::size_t>(c)][static_cast<std::size_t>(d)]);
    return out;
}

TensorMat tensor_bracket_explicit(const MumfordPhase& phase) {
    const MultiPoly alpha_l = at_spectral(phase, 'a', 0), alpha_m = at_spectral(phase, 'a', 1);
    const MultiPoly beta_l = at_spectral(phase, 'b', 0), beta_m = at_spectral(phase, 'b', 1);
    const MultiPoly gamma_l = at_spectral(phase, 'c', 0), gamma_m = at_spectral(phase, 'c', 1);
    const MultiPoly dd_alpha = divide_by_spectral_difference(alpha_l - alpha_m);
    const MultiPoly dd_beta = divide_by_spectral_difference(beta_l - beta_m);
    const MultiPoly dd_gamma = divide_by_spectral_difference(gamma_l - gamma_m);

    const Mat2 sp = sigma_plus(), sm = sigma_minus(), s3 = sigma_third();
    TensorMat out = (Rational(-2) * (alpha_l - alpha_m)) * kron(sm, sm);
    out += (Rational(2) * dd_alpha) * (kron(sp, sm) - kron(sm, sp));
    out += dd_beta * (kron(s3, sp) - kron(sp, s3));
    out -= dd_gamma * (kron(s3, sm) - kron(sm, s3));
    out += beta_l * kron(s3, sm);
    out -= beta_m * kron(sm, s3);
    return out;
}

bool tensor_vs_scalar_check(int g, std::string* witness) {
    if (g < 1 || g > 3)
        throw std::invalid_argument("two-point expansion limited to genus 1..3");
    const MumfordPhase ph = MumfordPhase::symbolic(g);
    const CoeffBracket br = derive_coeff_brackets(g);
    const Mat2 at_lam = phase_matrix_at(ph, 0), at_mu = phase_matrix_at(ph, 1);

    const TensorMat t_def = tensor_bracket_definition(at_lam, at_mu);
    const TensorMat t_tab = tensor_bracket_from_table(br, at_lam, at_mu);
    const TensorMat t_exp = tensor_bracket_explicit(ph);

    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (t_def.at(i, j) != t_tab.at(i, j)) {
                if (witness)
                    *witness = "definition vs table at entry (" + std::to_string(i) + "," +
                               std::to_string(j) + ")";
                return false;
            }
            if (t_def.at(i, j) != t_exp.at(i, j)) {
                if (witness)
                    *witness = "definition vs explicit form at entry (" + std::to_string(i) + "," +
                               std::to_string(j) + ")";
                return false;
            }
        }
    return true;
}

SpectralSample sample_spectral(SplitMix64& rng, int g) {
    if (g < 1) throw std::invalid_argument("phase space needs genus >= 1");
    SpectralSample s;
    s.g = g;
    s.roots = sample_distinct_positions(rng, g);
    for (int i = 0; i < g; ++i) s.a.push_back(sample_rational(rng));
    for (int i = 0; i <= g; ++i) s.c.push_back(sample_rational(rng));
    return s;
}

std::map<Atom, Rational> phase_values(const SpectralSample& sample) {
    const int g = sample.g;
    if (g < 1) throw std::invalid_argument("phase space needs genus >= 1");
    if (sample.roots.size() != static_cast<std::size_t>(g) ||
        sample.a.size() != static_cast<std::size_t>(g) ||
        sample.c.size() != static_cast<std::size_t>(g) + 1)
        throw std::invalid_argument("sample vectors must have sizes g, g, g+1");

    std::vector<MultiPoly> roots;
    for (const Rational& r : sample.roots) roots.emplace_back(r);
    const SymBasisVector e = e_from_roots(roots);

    std::map<Atom, Rational> vals;
    for (int i = 0; i < g; ++i) vals[moduli('a', i)] = sample.a[static_cast<std::size_t>(i)];
    for (int k = 0; k < g; ++k) {
        Rational ek = e.at(g - k).constant_value();
        if ((g - k) % 2 != 0) ek = -ek;
        vals[moduli('b', k)] = ek;
    }
    for (int k = 0; k <= g; ++k) vals[moduli('c', k)] = sample.c[static_cast<std::size_t>(k)];
    return vals;
}

CanonicalPairings canonical_pairings(const CoeffBracket& br, const SpectralSample& sample) {
    const int g = sample.g;
    if (br.g != g) throw std::invalid_argument("bracket table genus does not match the sample");
    const std::map<Atom, Rational> vals = phase_values(sample);

    // Root sensitivities: d lambda_i / d b_k = -lambda_i^k / beta'(lambda_i),
    // with beta'(lambda_i) the off-product of the distinct roots.
    std::vector<std::map<Atom, Rational>> grad_lam(static_cast<std::size_t>(g));
    std::vector<std::map<Atom, Rational>> grad_mu(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
        Rational bprime(1);
        for (int j = 0; j < g; ++j) {
            if (j == i) continue;
            const Rational d = sample.roots[static_cast<std::size_t>(i)] -
                               sample.roots[static_cast<std::size_t>(j)];
            if (d.sgn() == 0) throw std::domain_error("coincident spectral positions");
            bprime *= d;
        }
        const Rational li = sample.roots[static_cast<std::size_t>(i)];
        Rational apr(0), power(1);
        for (int m = 1; m < g; ++m) {
            apr += Rational(m) * sample.a[static_cast<std::size_t>(m)] * power;
            power *= li;
        }
        power = Rational(1);
        for (int k = 0; k < g; ++k) {
            const Rational dl = -power * bprime.inv();
            grad_lam[static_cast<std::size_t>(i)][moduli('b', k)] = dl;
            grad_mu[static_cast<std::size_t>(i)][moduli('b', k)] = apr * dl;
            power *= li;
        }
        power = Rational(1);
        for (int m = 0; m < g; ++m) {
            grad_mu[static_cast<std::size_t>(i)][moduli('a', m)] = power;
            power *= li;
        }
    }

    CanonicalPairings out;
    out.ll.assign(static_cast<std::size_t>(g), std::vector<Rational>(static_cast<std::size_t>(g)));
    out.lm = out.ll;
    out.mm = out.ll;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            out.ll[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pair_value(
                br, vals, grad_lam[static_cast<std::size_t>(i)], grad_lam[static_cast<std::size_t>(j)]);
            out.lm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pair_value(
                br, vals, grad_lam[static_cast<std::size_t>(i)], grad_mu[static_cast<std::size_t>(j)]);
            out.mm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = pair_value(
                br, vals, grad_mu[static_cast<std::size_t>(i)], grad_mu[static_cast<std::size_t>(j)]);
        }
    return out;
}

bool canonical_check(int g, int seeds) {
    if (g < 1) throw std::invalid_argument("phase space needs genus >= 1");
    const CoeffBracket br = derive_coeff_brackets(g);
    SplitMix64 rng(0x706f6973736f6eULL + static_cast<std::uint64_t>(g));
    for (int trial = 0; trial < seeds; ++trial) {
        const SpectralSample sample = sample_spectral(rng, g);
        const CanonicalPairings pr = canonical_pairings(br, sample);
        for (int i = 0; i < g; ++i)
            for (int j = 0; j < g; ++j) {
                const Rational want(i == j ? 1 : 0);
                if (pr.ll[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].sgn() != 0)
                    return false;
                if (pr.mm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].sgn() != 0)
                    return false;
                if (pr.lm[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != want)
                    return false;
            }
    }
    return true;
}

bool casimir_check(int g) {
    if (g < 1) throw std::invalid_argument("phase space needs genus >= 1");
    const CoeffBracket br = derive_coeff_brackets(g);
    const MumfordPhase ph = MumfordPhase::symbolic(g);

    std::vector<MultiPoly> casimirs;
    for (int k = g; k <= 2 * g; ++k) casimirs.push_back(ph.curve_coefficient(k));

    if (g <= 2) {
        for (const Atom& x : coordinate_atoms(g))
            for (const MultiPoly& cas : casimirs)
                if (!br.apply(MultiPoly(x), cas).is_zero()) return false;
    }

    SplitMix64 rng(0x636173696d6972ULL + static_cast<std::uint64_t>(g));
    for (int trial = 0; trial < 3; ++trial) {
        const SpectralSample sample = sample_spectral(rng, g);
        const std::map<Atom, Rational> vals = phase_values(sample);
        for (const MultiPoly& cas : casimirs) {
            const std::map<Atom, Rational> grad_cas = gradient_at(cas, g, vals);
            // Against every coordinate direction.
            for (const Atom& x : coordinate_atoms(g)) {
                const std::map<Atom, Rational> unit{{x, Rational(1)}};
                if (pair_value(br, vals, unit, grad_cas).sgn() != 0) return false;
            }
            // Against the root coordinates via the chain rule.
            for (int i = 0; i < g; ++i) {
                Rational bprime(1), power(1);
                std::map<Atom, Rational> grad_lam;
                for (int j = 0; j < g; ++j)
                    if (j != i)
                        bprime *= sample.roots[static_cast<std::size_t>(i)] -
                                  sample.roots[static_cast<std::size_t>(j)];
                for (int k = 0; k < g; ++k) {
                    grad_lam[moduli('b', k)] = -power * bprime.inv();
                    power *= sample.roots[static_cast<std::size_t>(i)];
                }
                if (pair_value(br, vals, grad_lam, grad_cas).sgn() != 0) return false;
            }
        }
    }
    return true;
}

bool ad_flow_check(int g) {
    if (g < 1) throw std::invalid_argument("phase space needs genus >= 1");
    const CoeffBracket br = derive_coeff_brackets(g);
    const MumfordPhase ph = MumfordPhase::symbolic(g);
    const LaxMat symbolic_matrix = ph.matrix();
    const LaxMat big = lambda_matrix(g);

    // Every jet and time atom feeding the matrix.
    std::set<Atom> jet_atoms;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (const auto& [exp2, coeff] : big.at(i, j).raw())
                for (const auto& [mono, q] : coeff.terms())
                    for (const auto& [atom, e] : mono.factors()) jet_atoms.insert(atom);

    SplitMix64 rng(0x6164666c6f77ULL + static_cast<std::uint64_t>(g));
    for (int trial = 0; trial < 2; ++trial) {
        std::map<Atom, Rational> jv;
        for (const Atom& a : jet_atoms) jv[a] = sample_rational(rng);
        auto jet_resolver = [&jv](const Atom& a) {
            auto it = jv.find(a);
            if (it == jv.end()) throw std::logic_error("jet value missing for an atom");
            return it->second;
        };

        const LaxMat a_num =
            big.map_coeffs([&](const MultiPoly& p) { return MultiPoly(p.eval(jet_resolver)); });

        // Phase point cut out by the jet.
        std::map<Atom, Rational> pv;
        MumfordPhase at_point;
        at_point.g = g;
        for (int i = 0; i < g; ++i) {
            const Rational v = a_num.at(0, 0).coeff2(2 * i).constant_value();
            pv[moduli('a', i)] = v;
            at_point.a.emplace_back(v);
        }
        for (int i = 0; i < g; ++i) {
            const Rational v = a_num.at(0, 1).coeff2(2 * i).constant_value();
            pv[moduli('b', i)] = v;
            at_point.b.emplace_back(v);
        }
        for (int i = 0; i <= g; ++i) {
            const Rational v = a_num.at(1, 0).coeff2(2 * i).constant_value();
            pv[moduli('c', i)] = v;
            at_point.c.emplace_back(v);
        }
        if (!(at_point.matrix() - a_num).exact_zero())
            throw std::logic_error("jet-induced matrix left the phase-space shape");

        for (int l = 0; l < g; ++l) {
            const MultiPoly invariant = ph.curve_coefficient(g - l - 1);

            LaxMat lhs;
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    LambdaSeries acc;
                    for (const auto& [exp2, coeff] : symbolic_matrix.at(i, j).raw()) {
                        const MultiPoly bracket = br.apply(coeff, invariant);
                        if (bracket.is_zero()) continue;
                        acc += LambdaSeries::monomial2(exp2, bracket.eval_partial(pv));
                    }
                    lhs.at(i, j) = acc;
                }

            const Rational b_val = pv.at(moduli('b', g - l - 1));
            LaxMat flow = a_num.map_entries(
                [&](const LambdaSeries& s) { return s.shifted2(2 * (l - g)).proj_nonneg(); });
            flow.at(1, 0) -= LambdaSeries::constant(MultiPoly(b_val));
            const LaxMat rhs = LaxMat::commutator(flow, a_num);

            if (!(lhs - rhs).exact_zero()) return false;
        }
    }
    return true;
}

}  // namespace pi1
