#include "pi1/series.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pi1 {

namespace {
const MultiPoly kZero{};

std::string exp2_str(int e2, bool latex) {
    if (e2 % 2 == 0) return std::to_string(e2 / 2);
    if (latex)
        return (e2 < 0 ? "-" : "") + ("\\frac{" + std::to_string(e2 < 0 ? -e2 : e2) + "}{2}");
    return std::to_string(e2) + "/2";
}
}  // namespace

LambdaSeries LambdaSeries::monomial2(int exp2, const MultiPoly& c) {
    LambdaSeries s;
    if (!c.is_zero()) s.c_.emplace(exp2, c);
    return s;
}

bool LambdaSeries::half_step() const {
    for (const auto& [e, c] : c_)
        if (e & 1) return true;
    return false;
}

int LambdaSeries::top2() const {
    if (c_.empty()) throw std::domain_error("LambdaSeries: top of a series with no terms");
    return c_.begin()->first;
}

int LambdaSeries::effective_top2() const {
    int t = exact_ ? kNegInf : low2_ - 1;
    if (!c_.empty()) t = std::max(t, c_.begin()->first);
    return t;
}

const MultiPoly& LambdaSeries::coeff2(int exp2) const {
    if (!exact_ && exp2 < low2_)
        throw std::domain_error("LambdaSeries: coefficient at lambda^{" + exp2_str(exp2, false) +
                                "} is below the truncation watermark lambda^{" +
                                exp2_str(low2_, false) + "}");
    auto it = c_.find(exp2);
    return it == c_.end() ? kZero : it->second;
}

void LambdaSeries::set_term(int exp2, MultiPoly c) {
    if (c.is_zero())
        c_.erase(exp2);
    else
        c_.insert_or_assign(exp2, std::move(c));
}

void LambdaSeries::enforce_watermark() {
    if (exact_) return;
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->first < low2_)
            it = c_.erase(it);
        else
            ++it;
    }
}

LambdaSeries& LambdaSeries::operator+=(const LambdaSeries& o) {
    for (const auto& [e, c] : o.c_) {
        auto it = c_.find(e);
        if (it == c_.end()) {
            c_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) c_.erase(it);
        }
    }
    if (!o.exact_) {
        low2_ = exact_ ? o.low2_ : std::max(low2_, o.low2_);
        exact_ = false;
    }
    enforce_watermark();
    return *this;
}

LambdaSeries& LambdaSeries::operator-=(const LambdaSeries& o) { return *this += -o; }

LambdaSeries LambdaSeries::operator-() const {
    LambdaSeries r(*this);
    for (auto& [e, c] : r.c_) c = -c;
    return r;
}

LambdaSeries& LambdaSeries::operator*=(const LambdaSeries& o) {
    if ((exact_ && c_.empty()) || (o.exact_ && o.c_.empty())) {
        *this = LambdaSeries();
        return *this;
    }
    bool res_exact = exact_ && o.exact_;
    int res_low = kNegInf;
    if (!res_exact) {
        long long cand = std::numeric_limits<long long>::min();
        if (!exact_) cand = std::max(cand, static_cast<long long>(low2_) + o.effective_top2());
        if (!o.exact_) cand = std::max(cand, static_cast<long long>(o.low2_) + effective_top2());
        res_low = static_cast<int>(cand);
    }
    std::map<int, MultiPoly, std::greater<int>> out;
    for (const auto& [ea, ca] : c_) {
        for (const auto& [eb, cb] : o.c_) {
            int e = ea + eb;
            if (!res_exact && e < res_low) continue;
            MultiPoly p = ca * cb;
            if (p.is_zero()) continue;
            auto it = out.find(e);
            if (it == out.end()) {
                out.emplace(e, std::move(p));
            } else {
                it->second += p;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    c_ = std::move(out);
    exact_ = res_exact;
    low2_ = res_low;
    return *this;
}

LambdaSeries& LambdaSeries::operator*=(const MultiPoly& c) {
    if (c.is_zero()) {
        *this = LambdaSeries();  // exactly zero, unknown tail included
        return *this;
    }
    for (auto& [e, v] : c_) v *= c;
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second.is_zero())
            it = c_.erase(it);
        else
            ++it;
    }
    return *this;
}

LambdaSeries& LambdaSeries::operator*=(const Rational& c) { return *this *= MultiPoly(c); }

bool LambdaSeries::equal_to_depth(const LambdaSeries& a, const LambdaSeries& b, int depth2) {
    if (a.low2() > depth2 || b.low2() > depth2)
        throw std::domain_error("equal_to_depth: operands not trusted to the requested depth");
    std::set<int> keys;
    for (const auto& [e, c] : a.c_)
        if (e >= depth2) keys.insert(e);
    for (const auto& [e, c] : b.c_)
        if (e >= depth2) keys.insert(e);
    for (int e : keys)
        if (a.coeff2(e) != b.coeff2(e)) return false;
    return true;
}

LambdaSeries LambdaSeries::shifted2(int exp2) const {
    LambdaSeries r;
    r.exact_ = exact_;
    r.low2_ = exact_ ? kNegInf : low2_ + exp2;
    for (const auto& [e, c] : c_) r.c_.emplace(e + exp2, c);
    return r;
}

LambdaSeries LambdaSeries::truncated2(int depth2) const {
    if (!exact_ && depth2 < low2_)
        throw std::logic_error("LambdaSeries: cannot extend the watermark below computed depth");
    LambdaSeries r(*this);
    r.exact_ = false;
    r.low2_ = depth2;
    r.enforce_watermark();
    return r;
}

LambdaSeries LambdaSeries::inverse(int depth2) const {
    if (c_.empty()) throw std::domain_error("LambdaSeries: inverse of a series with no terms");
    const int T = top2();
    const MultiPoly& lead = c_.begin()->second;
    if (!lead.is_constant())
        throw std::domain_error("LambdaSeries: inverse needs an invertible leading coefficient, got " +
                                lead.str());
    const Rational l0 = lead.constant_value();
    if (!exact_) {
        const long long cap = static_cast<long long>(low2_) - 2LL * T;
        if (depth2 < cap)
            throw std::domain_error("LambdaSeries: inverse depth exceeds what the watermark supports");
    }
    if (exact_ && c_.size() == 1) {  // monomial: exact inverse
        return monomial2(-T, MultiPoly(l0.inv()));
    }
    LambdaSeries r;
    r.exact_ = false;
    r.low2_ = depth2;
    r.c_.emplace(-T, MultiPoly(l0.inv()));
    for (int m = -T - 1; m >= depth2; --m) {
        // 0 = sum_{i+j=m+T} d_i c_j, isolate the j = T term.
        MultiPoly acc;
        for (const auto& [i, di] : r.c_) {
            if (i <= m) continue;
            int j = m + T - i;
            auto it = c_.find(j);
            if (it != c_.end()) acc += di * it->second;
        }
        if (!acc.is_zero()) r.c_.emplace(m, acc * MultiPoly(-l0.inv()));
    }
    return r;
}

LambdaSeries LambdaSeries::div(const LambdaSeries& a, const LambdaSeries& b, int depth2) {
    if (a.c_.empty()) {
        if (a.exact_) return LambdaSeries();
        LambdaSeries z = a;  // keeps a's watermark: unknown tail / b
        z.low2_ = depth2;    // caller-requested trust cannot exceed computed region
        if (a.low2_ - b.top2() > depth2)
            throw std::domain_error("LambdaSeries: division cannot reach the requested depth");
        return z;
    }
    LambdaSeries inv = b.inverse(depth2 - a.effective_top2());
    LambdaSeries prod = a * inv;
    if (prod.low2() > depth2)
        throw std::domain_error("LambdaSeries: division cannot reach the requested depth");
    return prod.truncated2(depth2);
}

LambdaSeries LambdaSeries::sqrt(int depth2) const {
    if (c_.empty()) throw std::domain_error("LambdaSeries: sqrt of a series with no terms");
    for (const auto& [e, c] : c_)
        if (e & 1) throw std::domain_error("LambdaSeries: sqrt input must have integer powers");
    const int T = top2();
    const MultiPoly& lead = c_.begin()->second;
    if (!lead.is_constant() || !lead.constant_value().is_one())
        throw std::domain_error("LambdaSeries: sqrt input must be monic, leading coefficient is " +
                                lead.str());
    if (!exact_) {
        const long long cap = static_cast<long long>(low2_) - T / 2;
        if (depth2 < cap)
            throw std::domain_error("LambdaSeries: sqrt depth exceeds what the watermark supports");
    }
    if (exact_ && c_.size() == 1) return monomial2(T / 2, MultiPoly(1));

    // this = lambda^{T/2} (1 + r); solve s^2 = 1 + r descending.
    const int s_depth = depth2 - T / 2;
    LambdaSeries s;
    s.exact_ = false;
    s.low2_ = s_depth;
    s.c_.emplace(0, MultiPoly(1));
    const Rational half(1, 2);
    for (int m = -1; m >= s_depth; --m) {
        MultiPoly rhs;
        {
            auto it = c_.find(m + T);
            if (it != c_.end()) rhs = it->second;
        }
        for (const auto& [i, si] : s.c_) {
            if (i >= 0 || i <= m) continue;
            int j = m - i;
            if (j >= 0 || j <= m) continue;
            auto jt = s.c_.find(j);
            if (jt != s.c_.end()) rhs -= si * jt->second;
        }
        rhs *= half;
        if (!rhs.is_zero()) s.c_.emplace(m, rhs);
    }
    return s.shifted2(T / 2);
}

MultiPoly LambdaSeries::residue_infty() const {
    if (!exact_ && low2_ > -2)
        throw std::domain_error("LambdaSeries: residue needs trust at lambda^{-1}");
    return -coeff2(-2);
}

LambdaSeries LambdaSeries::proj_nonneg() const {
    if (!exact_ && low2_ > 0)
        throw std::domain_error("LambdaSeries: projection needs trust at lambda^0");
    LambdaSeries r;
    for (const auto& [e, c] : c_)
        if (e >= 0) r.c_.emplace(e, c);
    return r;
}

LambdaSeries LambdaSeries::d_lambda() const {
    LambdaSeries r;
    r.exact_ = exact_;
    r.low2_ = exact_ ? kNegInf : low2_ - 2;
    for (const auto& [e, c] : c_) {
        if (e == 0) continue;
        r.c_.emplace(e - 2, c * Rational(e, 2));
    }
    return r;
}

LambdaSeries LambdaSeries::map_coeffs(const std::function<MultiPoly(const MultiPoly&)>& f) const {
    LambdaSeries r;
    r.exact_ = exact_;
    r.low2_ = low2_;
    for (const auto& [e, c] : c_) {
        MultiPoly m = f(c);
        if (!m.is_zero()) r.c_.emplace(e, std::move(m));
    }
    return r;
}

bool LambdaSeries::is_poly() const {
    if (!exact_) return false;
    for (const auto& [e, c] : c_)
        if (e < 0 || (e & 1)) return false;
    return true;
}

int LambdaSeries::poly_degree() const {
    if (!is_poly()) throw std::domain_error("LambdaSeries: not a polynomial");
    return c_.empty() ? -1 : top2() / 2;
}

std::pair<LambdaSeries, LambdaSeries> LambdaSeries::divmod(const LambdaSeries& a,
                                                           const LambdaSeries& b) {
    if (!a.is_poly() || !b.is_poly())
        throw std::domain_error("LambdaSeries::divmod: both operands must be polynomials");
    if (b.c_.empty()) throw std::domain_error("LambdaSeries::divmod: division by zero");
    const MultiPoly& bl = b.c_.begin()->second;
    if (!bl.is_constant())
        throw std::domain_error("LambdaSeries::divmod: divisor leading coefficient must be constant");
    const Rational binv = bl.constant_value().inv();
    const int db = b.top2();
    LambdaSeries q, r = a;
    while (!r.c_.empty() && r.top2() >= db) {
        int e = r.top2();
        MultiPoly f = r.c_.begin()->second * binv;
        q.c_.emplace(e - db, f);
        for (const auto& [eb, cb] : b.c_) {
            auto it = r.c_.find(eb + e - db);
            MultiPoly sub = f * cb;
            if (it == r.c_.end()) {
                if (!sub.is_zero()) r.c_.emplace(eb + e - db, -sub);
            } else {
                it->second -= sub;
                if (it->second.is_zero()) r.c_.erase(it);
            }
        }
    }
    return {q, r};
}

MultiPoly LambdaSeries::eval_at(const Rational& lambda0) const {
    return eval_at(MultiPoly(lambda0));
}

MultiPoly LambdaSeries::eval_at(const MultiPoly& lambda0) const {
    if (!is_poly()) throw std::domain_error("LambdaSeries: eval_at requires a polynomial");
    MultiPoly r;
    for (const auto& [e, c] : c_) r += c * lambda0.pow(e / 2);
    return r;
}

std::string LambdaSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
        std::string cs = c.str();
        bool wrap = c.term_count() > 1 || cs.find('-') != std::string::npos;
        if (!first) os << " + ";
        first = false;
        if (e == 0) {
            os << (c.term_count() > 1 ? "(" + cs + ")" : cs);
            continue;
        }
        if (c.is_constant() && c.constant_value().is_one())
            os << "l^" << exp2_str(e, false);
        else
            os << (wrap ? "(" + cs + ")" : cs) << "*l^" << exp2_str(e, false);
    }
    if (first) os << "0";
    if (!exact_) os << " + O(l^" << exp2_str(low2_ - 1, false) << ")";
    return os.str();
}

std::string LambdaSeries::latex() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
        std::string cs = c.latex();
        bool wrap = c.term_count() > 1;
        std::string lam = e == 0 ? "" : "\\lambda^{" + exp2_str(e, true) + "}";
        std::string piece;
        if (e != 0 && c.is_constant() && c.constant_value().is_one())
            piece = lam;
        else if (e != 0 && c.is_constant() && (-c.constant_value()).is_one())
            piece = "-" + lam;
        else
            piece = (wrap ? "\\left(" + cs + "\\right)" : cs) + lam;
        if (!first && piece[0] != '-') os << "+";
        first = false;
        os << piece;
    }
    if (first && exact_) os << "0";
    if (!exact_) os << (first ? "" : "+") << "O\\left(\\lambda^{" + exp2_str(low2_ - 1, true) + "}\\right)";
    return os.str();
}

}  // namespace pi1
