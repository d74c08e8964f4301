#include "pi1/diffjet.hpp"

#include <functional>
#include <set>
#include <stdexcept>


namespace pi1 {

namespace {

// Chain rule for a derivation given by its action on atoms.
MultiPoly apply_derivation(const MultiPoly& p,
                           const std::function<MultiPoly(const Atom&)>& image_of) {
    std::set<Atom> atoms;
    for (const auto& [m, c] : p.terms())
        for (const auto& [a, e] : m.factors()) atoms.insert(a);
    MultiPoly out;
    for (const Atom& a : atoms) {
        MultiPoly img = image_of(a);
        if (img.is_zero()) continue;
        out += p.derivative(a) * img;
    }
    return out;
}

// Polynomial antiderivative with respect to a single atom.
MultiPoly antiderivative_in(const MultiPoly& p, const Atom& a) {
    MultiPoly out;
    for (auto& [e, q] : p.collect(a))
        out += q * MultiPoly::term(Monomial(a, e + 1), Rational(1, e + 1));
    return out;
}

}  // namespace

void require_jet_ring(const MultiPoly& p, const char* where) {
    if (p.ring() != RING_NONE && p.ring() != RING_JET)
        throw std::logic_error(std::string(where) + ": expected a jet/time polynomial");
}

const MultiPoly& LenardTable::R(int k) const {
    if (k % 2 == 0) throw std::logic_error("LenardTable::R: even subscript");
    const int l = (k + 1) / 2;
    if (l < 0 || l > lmax()) throw std::out_of_range("LenardTable::R: subscript out of range");
    return entries[static_cast<std::size_t>(l)];
}

MultiPoly d_x(const MultiPoly& p) {
    require_jet_ring(p, "d_x");
    return apply_derivation(p, [](const Atom& a) {
        if (a.tag == Tag::UJet) return MultiPoly(u_jet(a.idx + 1));
        return a.idx == 0 ? MultiPoly(1) : MultiPoly{};  // s_1 = x; higher times are constants
    });
}

MultiPoly d_x(const MultiPoly& p, int times) {
    MultiPoly out = p;
    for (int i = 0; i < times; ++i) out = d_x(out);
    return out;
}

MultiPoly d_s(int l, const MultiPoly& p, const LenardTable& table) {
    require_jet_ring(p, "d_s");
    if (l < 1) throw std::out_of_range("d_s: flow index must be >= 1");
    if (table.lmax() < l + 1) throw std::out_of_range("d_s: Lenard table too small for this flow");
    const MultiPoly flow = Rational(2) * d_x(table.R(2 * l + 1));
    std::vector<MultiPoly> dxk{flow};  // dxk[k] = d_x^k(flow)
    return apply_derivation(p, [&](const Atom& a) {
        if (a.tag == Tag::STime) return a.idx == l ? MultiPoly(1) : MultiPoly{};
        while (static_cast<int>(dxk.size()) <= a.idx) dxk.push_back(d_x(dxk.back()));
        return dxk[static_cast<std::size_t>(a.idx)];
    });
}

LenardTable lenard(int l_max) {
    if (l_max < 0) throw std::domain_error("lenard: table size must be >= 0");
    LenardTable t;
    t.entries.reserve(static_cast<std::size_t>(l_max) + 1);
    t.entries.emplace_back(1);
    const MultiPoly u(u_jet(0));
    std::vector<MultiPoly> dx{MultiPoly{}};  // dx[i] = d_x(entries[i])
    for (int l = 0; l + 1 <= l_max; ++l) {
        const auto& e = t.entries;
        MultiPoly r;
        for (int l1 = 1; l1 <= l - 1; ++l1) r -= Rational(1, 8) * dx[l1] * dx[l - l1];
        for (int l1 = 0; l1 <= l; ++l1) r += Rational(1, 2) * u * e[l1] * e[l - l1];
        // The second-derivative sum carries 1/4: anything else is
        // inconsistent with the generating-series identity (tested).
        for (int l1 = 1; l1 <= l; ++l1) r += Rational(1, 4) * e[l - l1] * d_x(dx[l1]);
        for (int l1 = 0; l1 <= l - 1; ++l1) r -= Rational(1, 2) * e[l1 + 1] * e[l - l1];
        dx.push_back(d_x(r));
        t.entries.push_back(std::move(r));
    }
    return t;
}

MultiPoly integrate_jets(const MultiPoly& p) {
    require_jet_ring(p, "integrate_jets");
    for (const auto& [m, c] : p.terms())
        for (const auto& [a, e] : m.factors())
            if (a.tag != Tag::UJet) throw std::logic_error("integrate_jets: non-jet atom");
    // In a total x-derivative the top jet u^{(k)} appears linearly, and
    // its coefficient is d(antiderivative)/d(u^{(k-1)}).  Peel one order
    // at a time; a nonzero remainder in u alone has no antiderivative.
    MultiPoly rem = p, out;
    while (!rem.is_zero()) {
        const int k = rem.max_ujet_order();
        if (k <= 0) throw std::domain_error("integrate_jets: no antiderivative exists");
        auto parts = rem.collect(u_jet(k));
        if (parts.rbegin()->first != 1)
            throw std::domain_error("integrate_jets: no antiderivative exists");
        MultiPoly piece = antiderivative_in(parts[1], u_jet(k - 1));
        out += piece;
        rem -= d_x(piece);
    }
    return out;
}

std::vector<MultiPoly> c_coeffs(int g) {
    if (g < 1) throw std::domain_error("c_coeffs: g must be >= 1");
    std::vector<MultiPoly> c;
    for (int l = 0; l <= g - 1; ++l)
        c.push_back(Rational(2 * l + 1, 2) * MultiPoly(s_time(l)));
    c.emplace_back();   // l = g
    c.emplace_back(1);  // l = g+1
    return c;
}

MultiPoly string_lhs(int g, bool with_x, const LenardTable& table) {
    if (g < 1) throw std::domain_error("string_lhs: g must be >= 1");
    if (table.lmax() < g + 1) throw std::out_of_range("string_lhs: Lenard table too small");
    auto c = c_coeffs(g);
    MultiPoly out = table.R(2 * g + 1);
    for (int l = 1; l <= g - 1; ++l) out += c[static_cast<std::size_t>(l)] * table.R(2 * l - 1);
    if (with_x) out += Rational(1, 2) * MultiPoly(s_time(0));
    return out;
}

MultiPoly string_lhs(int g, bool with_x) { return string_lhs(g, with_x, lenard(g + 1)); }

std::vector<MultiPoly> string_locus_table(int g, int j_max, const LenardTable& table) {
    const Rational lead(1, 2L << (2 * g));  // u^{(2g)} coefficient of the string polynomial
    const Atom top = u_jet(2 * g);
    MultiPoly s = string_lhs(g, true, table);
    MultiPoly sub0 = (MultiPoly::term(Monomial(top), lead) - s) * lead.inv();
    std::vector<MultiPoly> sub{sub0};
    for (int j = 1; j <= j_max; ++j)
        sub.push_back(d_x(sub.back()).subst(top, sub0));
    return sub;
}

MultiPoly reduce_on_string_locus(const MultiPoly& p, int g, const LenardTable& table) {
    require_jet_ring(p, "reduce_on_string_locus");
    const int j_max = p.max_ujet_order() - 2 * g;
    if (j_max < 0) return p;
    auto sub = string_locus_table(g, j_max, table);
    std::map<Atom, MultiPoly> images;
    for (int j = 0; j <= j_max; ++j) images.emplace(u_jet(2 * g + j), sub[static_cast<std::size_t>(j)]);
    return p.subst(images);
}

MultiPoly g2_eliminated_ode() {
    const auto table = lenard(4);
    const MultiPoly u(u_jet(0));
    const Atom s3 = s_time(1);
    const MultiPoly e1 = Rational(2) * string_lhs(2, true, table);
    const MultiPoly flow = d_s(1, u, table);

    MultiPoly d = u * d_s(1, e1, table);
    auto dc = d.collect(s3);
    auto ec = e1.collect(s3);
    // The s_3-linear part of u * d/ds_3(e1) is flow * (s_3-block of e1),
    // so on the locus e1 = 0 it trades exactly for -flow * (rest of e1).
    if (dc[1] != flow * ec[1])
        throw std::logic_error("g2_eliminated_ode: unexpected s3 structure");
    return dc[0] - flow * ec[0];
}

MultiPoly g2_reference_ode() {
    const MultiPoly u(u_jet(0)), u1(u_jet(1)), u2(u_jet(2)), u3(u_jet(3)), u4(u_jet(4)),
        u5(u_jet(5)), u7(u_jet(7)), x(s_time(0));
    const MultiPoly fl = Rational(1, 4) * u3 + Rational(3, 2) * u * u1;
    MultiPoly r;
    r += Rational(1, 64) * u * u7;
    r += Rational(3, 32) * u * (Rational(10) * u3 * u2 + Rational(5) * u1 * u4 + u * u5);
    r += Rational(5, 8) * u * u2 * fl;
    r += Rational(5, 8) * u.pow(2) *
         (Rational(1, 4) * u5 + Rational(3, 2) * u * u3 + Rational(9, 2) * u1 * u2);
    r += Rational(5, 8) * u * u1 *
         (Rational(1, 4) * u4 + Rational(3, 2) * u1.pow(2) + Rational(3, 2) * u * u2);
    r += Rational(15, 8) * u.pow(3) * fl;
    r += Rational(3, 2) * u.pow(2);
    r -= (Rational(1, 16) * u4 + Rational(5, 8) * u * u2 + Rational(5, 16) * u1.pow(2) +
          Rational(5, 8) * u.pow(3) + x) *
         fl;
    return r;
}

bool g2_ode_elimination_check() { return g2_eliminated_ode() == g2_reference_ode(); }

}  // namespace pi1
