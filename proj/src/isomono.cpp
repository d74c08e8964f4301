#include "pi1/isomono.hpp"

#include <stdexcept>
#include <string>

#include "pi1/symfunc.hpp"

namespace pi1 {

namespace {

const MultiPoly kOne(1);

// (-1)^n for n >= 0.
Rational par(int n) { return n % 2 == 0 ? Rational(1) : Rational(-1); }

void require_times(const IrregularTimes& times) {
    if (times.g < 1) throw std::invalid_argument("irregular times need genus >= 1");
    if (static_cast<int>(times.free_odd.size()) != times.g)
        throw std::invalid_argument("irregular times hold one entry per free odd time");
}

void require_point_shape(const IrregularTimes& times, std::size_t nq, std::size_t np) {
    require_times(times);
    if (static_cast<int>(nq) != times.g || static_cast<int>(np) != times.g)
        throw std::invalid_argument("coordinate vectors must have one entry per genus");
}

// Positions as plain numbers.  Only genus one ever gets away with
// symbolic positions: everything at g >= 2 divides by their differences.
std::vector<Rational> position_values(const OperPoint& pt) {
    std::vector<Rational> q;
    q.reserve(pt.q.size());
    for (const MultiPoly& v : pt.q) {
        if (!v.is_constant())
            throw std::domain_error("positions must be numeric beyond genus one");
        q.push_back(v.constant_value());
    }
    for (std::size_t i = 0; i < q.size(); ++i)
        for (std::size_t j = i + 1; j < q.size(); ++j)
            if (q[i] == q[j]) throw std::domain_error("coincident singularity positions");
    return q;
}

// prod_{j != skip} (lambda - q_j), exact polynomial; skip = -1 keeps all.
LambdaSeries prod_linear(const std::vector<MultiPoly>& q, int skip = -1) {
    LambdaSeries r = LambdaSeries::constant(kOne);
    for (int j = 0; j < static_cast<int>(q.size()); ++j) {
        if (j == skip) continue;
        r = r * (LambdaSeries::lambda() - LambdaSeries::constant(q[j]));
    }
    return r;
}

Rational off_product(const std::vector<Rational>& q, int i) {
    Rational r(1);
    for (int j = 0; j < static_cast<int>(q.size()); ++j)
        if (j != i) r = r * (q[i] - q[j]);
    return r;
}

std::vector<MultiPoly> p2_coefficients(const IrregularTimes& times) {
    LambdaSeries p2 = times_polynomial(times);
    std::vector<MultiPoly> c(static_cast<std::size_t>(2 * times.g + 2));
    for (int k = 0; k <= 2 * times.g + 1; ++k)
        c[static_cast<std::size_t>(k)] = p2.coeff2(2 * k);
    return c;
}

// sum_{i=j+1}^g P_i Q_{i-j-1}: the momentum-weighted tail that builds the
// diagonal entries of the symmetric-coordinate matrix.
MultiPoly momentum_weight(const std::vector<MultiPoly>& P, const SymBasisVector& e, int j) {
    MultiPoly a;
    const int g = e.n;
    for (int i = j + 1; i <= g; ++i) a += P[static_cast<std::size_t>(i - 1)] * e.at(i - j - 1);
    return a;
}

void require_exact_zero_remainder(const LambdaSeries& r) {
    if (!(r.exact() && r.is_zero_trusted()))
        throw std::logic_error("apparent singularity failed to clear in the geometric matrix");
}

}  // namespace

IrregularTimes IrregularTimes::symbolic(int g) {
    if (g < 1) throw std::invalid_argument("irregular times need genus >= 1");
    IrregularTimes times;
    times.g = g;
    for (int k = 0; k < g; ++k) times.free_odd.emplace_back(i_time(2 * k + 1));
    return times;
}

IrregularTimes IrregularTimes::numeric(int g, const std::vector<Rational>& odd_values) {
    if (g < 1) throw std::invalid_argument("irregular times need genus >= 1");
    if (static_cast<int>(odd_values.size()) != g)
        throw std::invalid_argument("irregular times hold one entry per free odd time");
    IrregularTimes times;
    times.g = g;
    for (const Rational& v : odd_values) times.free_odd.emplace_back(v);
    return times;
}

MultiPoly IrregularTimes::t(int odd_index) const {
    require_times(*this);
    if (odd_index < 1 || odd_index % 2 == 0)
        throw std::invalid_argument("irregular time index must be odd >= 1");
    if (odd_index <= 2 * g - 1) return free_odd[static_cast<std::size_t>((odd_index - 1) / 2)];
    if (odd_index == 2 * g + 3) return MultiPoly(2);
    return MultiPoly();  // t_{2g+1} and everything above the tower
}

LambdaSeries times_polynomial(const IrregularTimes& times) {
    require_times(times);
    const int g = times.g;
    LambdaSeries p2 = LambdaSeries::monomial2(2 * (2 * g + 1), MultiPoly(-1));
    for (int k = g + 1; k <= 2 * g - 1; ++k) {
        MultiPoly c = -times.t(2 * k - 2 * g + 1);
        for (int m = k - g + 3; m <= g; ++m)
            c -= Rational(1, 4) * (times.t(2 * m - 1) * times.t(2 * k - 2 * m + 5));
        p2 += LambdaSeries::monomial2(2 * k, c);
    }
    MultiPoly c = -times.t(1);
    for (int m = 3; m <= g; ++m)
        c -= Rational(1, 4) * (times.t(2 * m - 1) * times.t(2 * g - 2 * m + 5));
    p2 += LambdaSeries::monomial2(2 * g, c);
    return p2;
}

LambdaSeries momentum_interpolant(const OperPoint& pt) {
    require_point_shape(pt.times, pt.q.size(), pt.p.size());
    const int g = pt.times.g;
    if (g == 1) return LambdaSeries::constant(-pt.p[0]);
    const std::vector<Rational> q = position_values(pt);
    LambdaSeries interp;
    for (int i = 0; i < g; ++i)
        interp += prod_linear(pt.q, i) * (-off_product(q, i).inv() * pt.p[static_cast<std::size_t>(i)]);
    return interp;
}

std::vector<MultiPoly> companion_hamiltonians(const OperPoint& pt) {
    require_point_shape(pt.times, pt.q.size(), pt.p.size());
    const int g = pt.times.g;
    const LambdaSeries p2 = times_polynomial(pt.times);
    if (g == 1) return {pt.p[0] * pt.p[0] + p2.eval_at(pt.q[0])};
    const std::vector<Rational> q = position_values(pt);
    // Moments first: the value the density polynomial must take at q_i.
    std::vector<MultiPoly> moment(static_cast<std::size_t>(g));
    for (int i = 0; i < g; ++i) {
        MultiPoly m = pt.p[static_cast<std::size_t>(i)] * pt.p[static_cast<std::size_t>(i)] +
                      MultiPoly(p2.eval_at(q[static_cast<std::size_t>(i)]));
        for (int j = 0; j < g; ++j) {
            if (j == i) continue;
            m += (q[static_cast<std::size_t>(i)] - q[static_cast<std::size_t>(j)]).inv() *
                 (pt.p[static_cast<std::size_t>(j)] - pt.p[static_cast<std::size_t>(i)]);
        }
        moment[static_cast<std::size_t>(i)] = m;
    }
    LambdaSeries density;
    for (int i = 0; i < g; ++i)
        density += prod_linear(pt.q, i) *
                   (off_product(q, i).inv() * moment[static_cast<std::size_t>(i)]);
    std::vector<MultiPoly> h(static_cast<std::size_t>(g));
    for (int k = 0; k < g; ++k) h[static_cast<std::size_t>(k)] = density.coeff2(2 * k);
    return h;
}

LaxMat companion_matrix(const OperPoint& pt, int depth2) {
    const std::vector<MultiPoly> h = companion_hamiltonians(pt);
    const int g = pt.times.g;
    LaxMat comp;
    comp.at(0, 1) = LambdaSeries::constant(kOne);
    LambdaSeries lower = -times_polynomial(pt.times);
    for (int k = 0; k < g; ++k)
        lower += LambdaSeries::monomial2(2 * k, h[static_cast<std::size_t>(k)]);
    for (int j = 0; j < g; ++j) {
        const LambdaSeries inv =
            (LambdaSeries::lambda() - LambdaSeries::constant(pt.q[static_cast<std::size_t>(j)]))
                .inverse(depth2);
        comp.at(1, 1) += inv;
        lower -= inv * pt.p[static_cast<std::size_t>(j)];
    }
    comp.at(1, 0) = lower.truncated2(depth2);
    comp.at(1, 1) = comp.at(1, 1).truncated2(depth2);
    return comp;
}

LaxMat companion_gauge(const OperPoint& pt) {
    LaxMat gauge;
    gauge.at(0, 0) = LambdaSeries::constant(kOne);
    gauge.at(1, 0) = -momentum_interpolant(pt);
    gauge.at(1, 1) = prod_linear(pt.q);
    return gauge;
}

LaxMat geometric_matrix(const OperPoint& pt) {
    const LambdaSeries interp = momentum_interpolant(pt);
    const std::vector<MultiPoly> h = companion_hamiltonians(pt);
    const int g = pt.times.g;
    const LambdaSeries pi = prod_linear(pt.q);
    LambdaSeries regular = -times_polynomial(pt.times) - interp * interp;
    for (int k = 0; k < g; ++k)
        regular += LambdaSeries::monomial2(2 * k, h[static_cast<std::size_t>(k)]);
    // Numerator of the (2,1) entry over pi^2: derivative part, the
    // companion entry pulled under the product, minus the squared gauge.
    LambdaSeries num = interp.d_lambda() * pi - interp * pi.d_lambda() + regular * pi;
    for (int j = 0; j < g; ++j)
        num -= prod_linear(pt.q, j) * pt.p[static_cast<std::size_t>(j)];
    auto [q1, r1] = LambdaSeries::divmod(num, pi);
    require_exact_zero_remainder(r1);
    auto [q2, r2] = LambdaSeries::divmod(q1, pi);
    require_exact_zero_remainder(r2);
    LaxMat hat;
    hat.at(0, 0) = -interp;
    hat.at(0, 1) = pi;
    hat.at(1, 0) = q2;
    hat.at(1, 1) = interp;
    return hat;
}

LaxMat geometric_matrix(const SymPoint& pt) {
    require_point_shape(pt.times, pt.Q.size(), pt.P.size());
    const int g = pt.times.g;
    const SymBasisVector e = elementary_from_values(g, pt.Q);
    const SymBasisVector h = h_from_e(e, g + 1);
    const std::vector<MultiPoly> p2c = p2_coefficients(pt.times);

    LaxMat hat;
    for (int j = 0; j <= g - 1; ++j)
        hat.at(0, 0) += LambdaSeries::monomial2(2 * j, -(par(j + 1) * momentum_weight(pt.P, e, j)));
    for (int m = 0; m <= g; ++m)
        hat.at(0, 1) += LambdaSeries::monomial2(2 * m, par(g - m) * e.at(g - m));
    hat.at(1, 1) = -hat.at(0, 0);
    for (int i = 0; i <= g + 1; ++i) {
        MultiPoly c;
        for (int j = g + i; j <= 2 * g + 1; ++j)
            c -= p2c[static_cast<std::size_t>(j)] * h.at(j - g - i);
        for (int j1 = i + 1; j1 <= g - 1; ++j1)
            for (int j2 = g + i - j1; j2 <= g - 1; ++j2)
                c -= par(j1 + j2) * momentum_weight(pt.P, e, j1) * momentum_weight(pt.P, e, j2) *
                     h.at(j1 + j2 - g - i);
        hat.at(1, 0) += LambdaSeries::monomial2(2 * i, c);
    }
    return hat;
}

LaxMat companion_from_geometric(const LaxMat& hat, int depth2) {
    if (!hat.at(0, 1).is_poly() || hat.at(0, 1).poly_degree() < 1)
        throw std::invalid_argument("geometric matrix needs a nonconstant polynomial (1,2) entry");
    // The inverse is taken deeper than the requested depth: the polynomial
    // factors below shift the trusted window up by their degrees.
    const int slack2 = 4 * hat.at(0, 1).poly_degree();
    const LambdaSeries ratio = hat.at(0, 1).d_lambda() * hat.at(0, 1).inverse(depth2 - slack2);
    LaxMat comp;
    comp.at(0, 1) = LambdaSeries::constant(kOne);
    comp.at(1, 0) = (-hat.det() + hat.at(0, 0).d_lambda() - hat.at(0, 0) * ratio).truncated2(depth2);
    comp.at(1, 1) = (hat.trace() + ratio).truncated2(depth2);
    return comp;
}

MultiPoly normalization_coefficient(const LaxMat& hat) {
    const LambdaSeries& lower = hat.at(1, 0);
    if (!lower.is_poly() || lower.poly_degree() < 1)
        throw std::invalid_argument("normalization lives in a polynomial (2,1) entry");
    return lower.coeff2(2 * (lower.poly_degree() - 1));
}

SymPoint to_symmetric(const OperPoint& pt) {
    require_point_shape(pt.times, pt.q.size(), pt.p.size());
    const int g = pt.times.g;
    SymPoint sym;
    sym.times = pt.times;
    const SymBasisVector e = e_from_roots(pt.q);
    for (int k = 1; k <= g; ++k) sym.Q.push_back(e.at(k));
    if (g == 1) {
        sym.P.push_back(pt.p[0]);
        return sym;
    }
    const std::vector<Rational> q = position_values(pt);
    // Dual Lagrange weights: P_k picks up p_i against q_i^{g-k}.
    for (int k = 1; k <= g; ++k) {
        MultiPoly pk;
        for (int i = 0; i < g; ++i)
            pk += (par(k + 1) * q[static_cast<std::size_t>(i)].pow(g - k) * off_product(q, i).inv()) *
                  pt.p[static_cast<std::size_t>(i)];
        sym.P.push_back(pk);
    }
    return sym;
}

std::vector<MultiPoly> momenta_from_symmetric(const std::vector<MultiPoly>& q,
                                              const std::vector<MultiPoly>& P) {
    const int g = static_cast<int>(q.size());
    if (g < 1 || P.size() != q.size())
        throw std::invalid_argument("coordinate vectors must have one entry per genus");
    std::vector<MultiPoly> p;
    for (int i = 0; i < g; ++i) {
        std::vector<MultiPoly> rest;
        for (int j = 0; j < g; ++j)
            if (j != i) rest.push_back(q[static_cast<std::size_t>(j)]);
        const SymBasisVector e = e_from_roots(rest);
        MultiPoly pi;
        for (int k = 1; k <= g; ++k) pi += P[static_cast<std::size_t>(k - 1)] * e.at(k - 1);
        p.push_back(pi);
    }
    return p;
}

std::vector<MultiPoly> flow_weights(int g, int alpha_odd, const IrregularTimes& times) {
    require_times(times);
    if (times.g != g) throw std::invalid_argument("flow weights need matching genus");
    if (alpha_odd < 1 || alpha_odd % 2 == 0 || alpha_odd > 2 * g - 1)
        throw std::invalid_argument("deformation direction must be an odd index <= 2g-1");
    const int pivot = g + 1 - (alpha_odd + 1) / 2;  // 1-based row carrying the direction
    std::vector<MultiPoly> nu(static_cast<std::size_t>(g));
    for (int i = 1; i <= g; ++i) {
        MultiPoly rhs = i == pivot ? MultiPoly(Rational(2, alpha_odd)) : MultiPoly();
        for (int j = 1; j < i; ++j)
            rhs -= times.t(2 * g + 3 - 2 * (i - j)) * nu[static_cast<std::size_t>(j - 1)];
        nu[static_cast<std::size_t>(i - 1)] = Rational(1, 2) * rhs;
    }
    return nu;
}

MultiPoly hamiltonian(const OperPoint& pt, int alpha_odd) {
    const std::vector<MultiPoly> h = companion_hamiltonians(pt);
    const std::vector<MultiPoly> nu = flow_weights(pt.times.g, alpha_odd, pt.times);
    MultiPoly ham;
    for (std::size_t k = 0; k < h.size(); ++k) ham += nu[k] * h[k];
    return ham;
}

MultiPoly hamiltonian(const SymPoint& pt, int alpha_odd) {
    require_point_shape(pt.times, pt.Q.size(), pt.P.size());
    const int g = pt.times.g;
    const std::vector<MultiPoly> nu = flow_weights(g, alpha_odd, pt.times);
    const SymBasisVector e = elementary_from_values(g, pt.Q);
    const SymBasisVector h = h_from_e(e, 2 * g + 1);
    const SymBasisVector s = powersum_from_e(e, g);
    const std::vector<MultiPoly> p2c = p2_coefficients(pt.times);
    const std::vector<MultiPoly>& P = pt.P;

    MultiPoly ham;
    for (int i = 1; i <= g; ++i) {
        const MultiPoly& nu_i = nu[static_cast<std::size_t>(i - 1)];
        if (nu_i.is_zero()) continue;
        MultiPoly block;
        // Linear-in-P correction from reordering the symmetric basis.
        for (int k = i + 1; k <= g; ++k) {
            MultiPoly inner =
                (par(i) * Rational(g - i)) * (P[static_cast<std::size_t>(k - 1)] * e.at(k - 1 - i));
            for (int m = i + 1; m <= k - 1; ++m)
                inner += par(m) * (P[static_cast<std::size_t>(k - 1)] * e.at(k - 1 - m) * s.at(m - i));
            block -= inner;
        }
        // Quadratic-in-P part.
        for (int k1 = 1; k1 <= g; ++k1)
            for (int k2 = 1; k2 <= g; ++k2) {
                MultiPoly bracket;
                const int r1_lo = i - k2 > 0 ? i - k2 : 0;
                const int r1_hi = k1 - 1 < i - 1 ? k1 - 1 : i - 1;
                for (int r1 = r1_lo; r1 <= r1_hi; ++r1)
                    bracket += par(i + 1) * (e.at(k1 - 1 - r1) * e.at(k2 - i + r1));
                for (int r1 = 0; r1 <= k1 - 1; ++r1)
                    for (int r2 = 0; r2 <= k2 - 1; ++r2) {
                        if (r1 + r2 < g) continue;
                        MultiPoly tail;
                        for (int m = i; m <= g; ++m)
                            tail += par(g - m) * (e.at(g - m) * h.at(r1 + r2 + m - i - g + 1));
                        bracket += par(r1 + r2) * (e.at(k1 - 1 - r1) * e.at(k2 - 1 - r2) * tail);
                    }
                if (!bracket.is_zero())
                    block += P[static_cast<std::size_t>(k1 - 1)] * P[static_cast<std::size_t>(k2 - 1)] *
                             bracket;
            }
        // Times-polynomial part.
        for (int r = g; r <= 2 * g + 1; ++r)
            for (int m = i; m <= g; ++m)
                block += par(g - m) * (p2c[static_cast<std::size_t>(r)] * e.at(g - m) *
                                       h.at(r + m - i - g + 1));
        ham += nu_i * block;
    }
    return ham;
}

bool eigenvalue_expansion_check(const OperPoint& pt) {
    const LaxMat hat = geometric_matrix(pt);
    const int g = pt.times.g;
    const LambdaSeries det = -hat.det();
    if (!det.is_poly() || det.poly_degree() != 2 * g + 1 || det.coeff2(2 * (2 * g + 1)) != kOne)
        throw std::logic_error("eigenvalue expansion needs a monic squared eigenvalue");
    const LambdaSeries xi = det.sqrt(-4);
    if (xi.coeff2(2 * g + 1) != kOne) return false;
    if (!xi.coeff2(2 * g - 1).is_zero()) return false;  // the frozen time above the free ones
    for (int k = 0; k < g; ++k)
        if (xi.coeff2(2 * k - 1) != Rational(1, 2) * pt.times.t(2 * k + 1)) return false;
    for (int exp2 = -2; exp2 <= 2 * g; exp2 += 2)
        if (!xi.coeff2(exp2).is_zero()) return false;  // integer powers cannot occur
    return true;
}

bool interpolant_rewrite_identity(int g) {
    if (g < 1) throw std::invalid_argument("identity check needs genus >= 1");
    std::vector<MultiPoly> q, p;
    for (int i = 1; i <= g; ++i) {
        q.emplace_back(oper_q(i));
        p.emplace_back(oper_p(i));
    }
    // Clearing factor per node: the full Vandermonde product divided by
    // this node's own differences, sign included.
    std::vector<MultiPoly> clear(static_cast<std::size_t>(g), MultiPoly(1));
    for (int i = 0; i < g; ++i) {
        MultiPoly c = par(i);  // (-1)^{i-1} with 1-based i = this + 1
        for (int k = 0; k < g; ++k)
            for (int l = k + 1; l < g; ++l) {
                if (k == i || l == i) continue;
                c *= q[static_cast<std::size_t>(k)] - q[static_cast<std::size_t>(l)];
            }
        clear[static_cast<std::size_t>(i)] = c;
    }
    LambdaSeries lhs;
    for (int i = 0; i < g; ++i)
        lhs -= prod_linear(q, i) * (p[static_cast<std::size_t>(i)] * clear[static_cast<std::size_t>(i)]);
    // P_k with the same factor cleared.
    std::vector<MultiPoly> pk(static_cast<std::size_t>(g));
    for (int k = 1; k <= g; ++k) {
        MultiPoly v;
        for (int i = 0; i < g; ++i)
            v += par(k + 1) * (p[static_cast<std::size_t>(i)] *
                               q[static_cast<std::size_t>(i)].pow(g - k) *
                               clear[static_cast<std::size_t>(i)]);
        pk[static_cast<std::size_t>(k - 1)] = v;
    }
    const SymBasisVector e = e_from_roots(q);
    LambdaSeries rhs;
    for (int j = 0; j <= g - 1; ++j) {
        MultiPoly c;
        for (int i = j + 1; i <= g; ++i) c += pk[static_cast<std::size_t>(i - 1)] * e.at(i - j - 1);
        rhs += LambdaSeries::monomial2(2 * j, par(j + 1) * c);
    }
    const LambdaSeries diff = lhs - rhs;
    return diff.exact() && diff.is_zero_trusted();
}

std::string isomonodromy_latex(int g) {
    const IrregularTimes times = IrregularTimes::symbolic(g);
    SymPoint sym;
    sym.times = times;
    for (int i = 1; i <= g; ++i) {
        sym.Q.emplace_back(sym_q(i));
        sym.P.emplace_back(sym_p(i));
    }
    const LaxMat hat = geometric_matrix(sym);
    std::string out;
    out += "P(\\lambda) = " + times_polynomial(times).latex() + "\n";
    out += "L_{2,1}(\\lambda) = " + (-times_polynomial(times)).latex() +
           " + \\sum_{k} H_{k}\\lambda^{k} - \\sum_{j} p_{j}(\\lambda-q_{j})^{-1}\n";
    const char* names[2][2] = {{"1,1", "1,2"}, {"2,1", "2,2"}};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out += "\\hat{L}_{" + std::string(names[i][j]) + "}(\\lambda) = " +
                   hat.at(i, j).latex() + "\n";
    out += "\\mathrm{Ham}^{(e_{1})} = " + hamiltonian(sym, 1).latex() + "\n";
    return out;
}

}  // namespace pi1
