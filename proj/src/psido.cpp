#include "pi1/psido.hpp"

#include <stdexcept>
#include <utility>

namespace pi1 {

namespace {

bool contains_ujet(const MultiPoly& p) {
    for (const auto& [m, c] : p.terms()) {
        (void)c;
        for (const auto& [a, e] : m.factors()) {
            (void)e;
            if (a.tag == Tag::UJet) return true;
        }
    }
    return false;
}

std::string dpow(int k) {
    if (k == 1) return "d";
    return "d^" + std::to_string(k);
}

}  // namespace

PsiOp PsiOp::monomial(int k, const MultiPoly& c) {
    require_jet_ring(c, "PsiOp coefficient");
    PsiOp out;
    if (!c.is_zero()) out.c_.emplace(k, c);
    return out;
}

int PsiOp::order() const {
    if (c_.empty()) throw std::logic_error("PsiOp::order: no stored terms");
    return c_.begin()->first;
}

int PsiOp::effective_order() const {
    if (!c_.empty()) return c_.begin()->first;
    if (!exact_) return low_ - 1;  // content, if any, hides below the watermark
    return kNegInf;
}

const MultiPoly& PsiOp::coeff(int k) const {
    if (!exact_ && k < low_)
        throw std::logic_error("PsiOp::coeff: read below truncation watermark");
    static const MultiPoly zero;
    auto it = c_.find(k);
    return it == c_.end() ? zero : it->second;
}

void PsiOp::enforce_watermark() {
    if (exact_) return;
    while (!c_.empty() && c_.rbegin()->first < low_)
        c_.erase(std::prev(c_.end()));
}

PsiOp& PsiOp::operator+=(const PsiOp& o) {
    const bool nex = exact_ && o.exact_;
    const int nl = std::max(low(), o.low());
    for (const auto& [k, c] : o.c_) {
        auto it = c_.find(k);
        if (it == c_.end()) {
            c_.emplace(k, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    exact_ = nex;
    low_ = nex ? kNegInf : nl;
    enforce_watermark();
    return *this;
}

PsiOp PsiOp::operator-() const {
    PsiOp out = *this;
    for (auto& [k, c] : out.c_) {
        (void)k;
        c = -c;
    }
    return out;
}

PsiOp& PsiOp::operator-=(const PsiOp& o) { return *this += -o; }

PsiOp& PsiOp::operator*=(const Rational& c) {
    if (c.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& [k, p] : c_) {
        (void)k;
        p *= c;
    }
    return *this;
}

PsiOp PsiOp::compose(const PsiOp& a, const PsiOp& b) {
    if (a.exact_ && a.c_.empty()) return PsiOp();
    if (b.exact_ && b.c_.empty()) return PsiOp();

    int floor_ = kNegInf;
    if (!a.exact_ || !b.exact_) {
        long f1 = a.exact_ ? (long)kNegInf
                           : (long)a.low_ + (long)b.effective_order();
        long f2 = b.exact_ ? (long)kNegInf
                           : (long)b.low_ + (long)a.effective_order();
        floor_ = (int)std::max(f1, f2);
    } else if (a.c_.rbegin()->first < 0) {
        // d^{-1} against a jet coefficient expands forever; the caller
        // has to say where to cut.
        for (const auto& [j, bj] : b.c_) {
            (void)j;
            if (contains_ujet(bj))
                throw std::domain_error(
                    "PsiOp::compose: infinite tail; truncate an operand");
        }
    }

    PsiOp out;
    out.exact_ = (floor_ == kNegInf);
    out.low_ = floor_;

    for (const auto& [i, ai] : a.c_) {
        for (const auto& [j, bj] : b.c_) {
            MultiPoly der = bj;
            for (int r = 0;; ++r) {
                if (r > 0) der = d_x(der);
                if (i >= 0 && r > i) break;
                if (der.is_zero()) break;
                const long m = (long)i + (long)j - (long)r;
                if (m < (long)floor_) break;
                const Rational cb = binomial_falling((long)i, (long)r);
                MultiPoly term = ai * der;
                term *= cb;
                if (term.is_zero()) continue;
                auto it = out.c_.find((int)m);
                if (it == out.c_.end()) {
                    out.c_.emplace((int)m, std::move(term));
                } else {
                    it->second += term;
                    if (it->second.is_zero()) out.c_.erase(it);
                }
            }
        }
    }
    return out;
}

PsiOp PsiOp::commutator(const PsiOp& a, const PsiOp& b) {
    return compose(a, b) - compose(b, a);
}

bool PsiOp::equal_to_depth(const PsiOp& a, const PsiOp& b, int depth) {
    if (a.low() > depth || b.low() > depth)
        throw std::logic_error("PsiOp::equal_to_depth: operand untrusted at depth");
    for (const auto& [k, c] : a.c_) {
        if (k < depth) continue;
        if (!(b.coeff(k) == c)) return false;
    }
    for (const auto& [k, c] : b.c_) {
        if (k < depth) continue;
        if (a.c_.find(k) == a.c_.end() && !c.is_zero()) return false;
    }
    return true;
}

PsiOp PsiOp::proj_plus() const {
    if (!exact_ && low_ > 0)
        throw std::logic_error("PsiOp::proj_plus: untrusted at order 0");
    PsiOp out;
    for (const auto& [k, c] : c_) {
        if (k < 0) break;  // descending keys
        out.c_.emplace(k, c);
    }
    return out;  // exact: everything at order >= 0 is known
}

PsiOp PsiOp::proj_minus() const {
    PsiOp out;
    out.exact_ = exact_;
    out.low_ = low_;
    for (const auto& [k, c] : c_)
        if (k < 0) out.c_.emplace(k, c);
    return out;
}

MultiPoly PsiOp::residue() const { return coeff(-1); }

PsiOp PsiOp::truncated(int low) const {
    PsiOp out;
    out.exact_ = false;
    out.low_ = low;
    for (const auto& [k, c] : c_) {
        if (k < low) break;
        out.c_.emplace(k, c);
    }
    return out;
}

PsiOp PsiOp::invert(int depth) const {
    if (!exact_ && low_ > depth)
        throw std::logic_error("PsiOp::invert: operand not trusted to requested depth");
    if (c_.empty() || c_.begin()->first != 0)
        throw std::domain_error("PsiOp::invert: expected 1 + lower-order terms");
    const MultiPoly& c0 = c_.begin()->second;
    if (!c0.is_constant() || !c0.constant_value().is_one())
        throw std::domain_error("PsiOp::invert: expected 1 + lower-order terms");

    const PsiOp at = truncated(depth);
    const PsiOp one = d(0);
    PsiOp y = one;
    for (;;) {
        PsiOp e = one - compose(at, y);  // trusted down to `depth`
        if (e.is_zero_trusted()) break;
        const int t = e.order();
        y += monomial(t, e.coeff(t));
    }
    return y.truncated(depth);
}

std::string PsiOp::str() const {
    std::string out;
    bool first = true;
    for (const auto& [k, c] : c_) {
        std::string body;
        bool neg = false;
        if (c.terms().size() > 1) {
            body = "(" + c.str() + ")";
        } else {
            body = c.str();
            if (!body.empty() && body[0] == '-') {
                neg = true;
                body = body.substr(1);
            }
        }
        if (k != 0) body = (body == "1") ? dpow(k) : body + "*" + dpow(k);
        if (first) {
            out = (neg ? "-" : "") + body;
            first = false;
        } else {
            out += (neg ? " - " : " + ") + body;
        }
    }
    if (!exact_) {
        const std::string tail = "O(" + dpow(low_ - 1) + ")";
        out = out.empty() ? tail : out + " + " + tail;
    }
    return out.empty() ? "0" : out;
}

PsiOp Q_op() {
    return PsiOp::d(2) + PsiOp::mult(MultiPoly(Atom(u_jet(0))));
}

PsiOp sqrt_Q(int depth) {
    if (depth > 0)
        throw std::domain_error("sqrt_Q: depth must be <= 0");
    const PsiOp q = Q_op();
    PsiOp s = PsiOp::d();
    for (;;) {
        const PsiOp st = s.truncated(depth);
        PsiOp e = q - PsiOp::compose(st, st);  // trusted down to depth + 1
        if (e.is_zero_trusted()) break;
        const int t = e.order();
        // a correction q_m d^m shifts the square by 2 q_m d^{m+1} + lower
        PsiOp fix = PsiOp::monomial(t - 1, e.coeff(t));
        fix *= Rational(1, 2);
        s += fix;
    }
    return s.truncated(depth);
}

PsiOp Q_halfpower(int l, int depth) {
    if (l < 0) throw std::domain_error("Q_halfpower: l must be >= 0");
    const PsiOp q = Q_op();
    PsiOp whole = PsiOp::d(0);
    for (int i = 0; i < l; ++i) whole = PsiOp::compose(whole, q);
    return PsiOp::compose(whole, sqrt_Q(depth - 2 * l));
}

PsiOp B_op(int k) {
    if (k < 1 || k % 2 == 0)
        throw std::domain_error("B_op: positive odd order required");
    return Q_halfpower((k - 1) / 2, 0).proj_plus();
}

bool kdv_flow_check(int l) {
    if (l < 0) throw std::domain_error("kdv_flow_check: l must be >= 0");
    const LenardTable tab = lenard(l + 1);
    const MultiPoly R = tab.R(2 * l + 1);
    const PsiOp B = B_op(2 * l + 1);

    PsiOp diff = PsiOp::commutator(B, Q_op())
               - PsiOp::mult(Rational(2) * d_x(R));
    if (!diff.exact() || !diff.is_zero_trusted()) return false;

    PsiOp rhs = PsiOp::compose(B, Q_op()) + PsiOp::monomial(1, R)
              - PsiOp::monomial(0, Rational(1, 2) * d_x(R));
    PsiOp diff2 = B_op(2 * l + 3) - rhs;
    return diff2.exact() && diff2.is_zero_trusted();
}

bool string_operator_check(int g) {
    if (g < 1) throw std::domain_error("string_operator_check: g must be >= 1");
    const LenardTable tab = lenard(g + 1);
    const auto c = c_coeffs(g);
    PsiOp P = B_op(2 * g + 1);
    for (int l = 1; l <= g - 1; ++l)
        P += PsiOp::compose(PsiOp::mult(c[(size_t)l]), B_op(2 * l - 1));
    PsiOp lhs = PsiOp::commutator(Q_op(), P) - PsiOp::d(0);
    PsiOp rhs = PsiOp::mult(Rational(-2) * d_x(string_lhs(g, true, tab)));
    PsiOp diff = lhs - rhs;
    return diff.exact() && diff.is_zero_trusted();
}

}  // namespace pi1
