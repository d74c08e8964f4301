#include "pi1/multipoly.hpp"

#include <sstream>
#include <stdexcept>

namespace pi1 {

Monomial::Monomial(const Atom& a, int e) {
    if (e < 0) throw std::invalid_argument("Monomial: negative exponent");
    if (e > 0) f_.emplace_back(a, e);
}

int Monomial::total_degree() const {
    int d = 0;
    for (const auto& [a, e] : f_) d += e;
    return d;
}

int Monomial::degree_of(const Atom& a) const {
    for (const auto& [b, e] : f_)
        if (b == a) return e;
    return 0;
}

Monomial Monomial::mul(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.f_.reserve(a.f_.size() + b.f_.size());
    auto ia = a.f_.begin(), ib = b.f_.begin();
    while (ia != a.f_.end() && ib != b.f_.end()) {
        if (ia->first == ib->first) {
            r.f_.emplace_back(ia->first, ia->second + ib->second);
            ++ia, ++ib;
        } else if (ia->first < ib->first) {
            r.f_.push_back(*ia++);
        } else {
            r.f_.push_back(*ib++);
        }
    }
    r.f_.insert(r.f_.end(), ia, a.f_.end());
    r.f_.insert(r.f_.end(), ib, b.f_.end());
    return r;
}

Monomial Monomial::without(const Atom& a) const {
    Monomial r;
    bool found = false;
    for (const auto& fe : f_) {
        if (fe.first == a) {
            found = true;
            continue;
        }
        r.f_.push_back(fe);
    }
    if (!found) throw std::invalid_argument("Monomial::without: atom not present");
    return r;
}

bool operator<(const Monomial& a, const Monomial& b) {
    const auto &fa = a.f_, &fb = b.f_;
    for (std::size_t i = 0; i < fa.size() && i < fb.size(); ++i) {
        if (fa[i].first != fb[i].first) return fa[i].first < fb[i].first;
        if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
    }
    return fa.size() < fb.size();
}

std::string Monomial::str() const {
    if (f_.empty()) return "1";
    std::string s;
    for (const auto& [a, e] : f_) {
        if (!s.empty()) s += "*";
        s += atom_name(a);
        if (e != 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string Monomial::latex() const {
    if (f_.empty()) return "1";
    std::string s;
    for (const auto& [a, e] : f_) {
        std::string n = atom_name(a);
        // foo3 -> foo_{3}; u_xx and u^(k) keep their own notation
        if (a.tag != Tag::UJet && a.idx >= 0 && n.size() > 1 && n.back() >= '0' && n.back() <= '9') {
            std::size_t cut = n.find_first_of("0123456789");
            n = n.substr(0, cut) + "_{" + n.substr(cut) + "}";
        }
        if (a.tag == Tag::UJet && a.idx > 0 && a.idx <= 3)
            n = "u_{" + std::string(static_cast<std::size_t>(a.idx), 'x') + "}";
        if (a.tag == Tag::UJet && a.idx > 3) n = "u^{(" + std::to_string(a.idx) + ")}";
        s += n;
        if (e != 1) s += "^{" + std::to_string(e) + "}";
    }
    return s;
}

MultiPoly::MultiPoly(long n) {
    if (n != 0) t_.emplace(Monomial(), Rational(n));
}

MultiPoly::MultiPoly(const Rational& c) {
    if (!c.is_zero()) t_.emplace(Monomial(), c);
}

MultiPoly::MultiPoly(const Atom& a) : ring_(ring_of(a)) {
    t_.emplace(Monomial(a), Rational(1));
}

MultiPoly MultiPoly::term(const Monomial& m, const Rational& c) {
    MultiPoly p;
    if (!c.is_zero()) {
        p.t_.emplace(m, c);
        for (const auto& [a, e] : m.factors()) p.ring_ |= ring_of(a);
        if (!rings_compatible(p.ring_))
            throw std::logic_error("MultiPoly: mixed coefficient rings in monomial " + m.str());
    }
    return p;
}

bool MultiPoly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.trivial());
}

Rational MultiPoly::constant_part() const {
    auto it = t_.find(Monomial());
    return it == t_.end() ? Rational(0) : it->second;
}

Rational MultiPoly::constant_value() const {
    if (!is_constant()) throw std::domain_error("MultiPoly: not a constant: " + str());
    return constant_part();
}

Rational MultiPoly::coeff(const Monomial& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
}

void MultiPoly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

void MultiPoly::recompute_ring() {
    ring_ = RING_NONE;
    for (const auto& [m, c] : t_)
        for (const auto& [a, e] : m.factors()) ring_ |= ring_of(a);
}

void MultiPoly::merge_ring(unsigned other) {
    unsigned merged = ring_ | other;
    if (!rings_compatible(merged))
        throw std::logic_error("MultiPoly: operation would mix incompatible coefficient rings");
    ring_ = merged;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
    merge_ring(o.ring_);
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
    merge_ring(o.ring_);
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

MultiPoly& MultiPoly::operator*=(const MultiPoly& o) {
    merge_ring(o.ring_);
    std::map<Monomial, Rational> out;
    for (const auto& [ma, ca] : t_) {
        for (const auto& [mb, cb] : o.t_) {
            Rational c = ca * cb;
            if (c.is_zero()) continue;
            Monomial m = Monomial::mul(ma, mb);
            auto [it, fresh] = out.emplace(std::move(m), c);
            if (!fresh) {
                it->second += c;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    t_ = std::move(out);
    if (t_.empty()) ring_ = RING_NONE;
    return *this;
}

MultiPoly& MultiPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        t_.clear();
        ring_ = RING_NONE;
        return *this;
    }
    for (auto& [m, v] : t_) v *= c;
    return *this;
}

MultiPoly& MultiPoly::operator/=(const Rational& c) {
    if (c.is_zero()) throw std::domain_error("MultiPoly: division by zero");
    return *this *= c.inv();
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(*this);
    for (auto& [m, v] : r.t_) v = -v;
    return r;
}

MultiPoly MultiPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("MultiPoly::pow: negative exponent");
    MultiPoly r(1), base(*this);
    while (e > 0) {
        if (e & 1) r *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return r;
}

MultiPoly MultiPoly::derivative(const Atom& a) const {
    MultiPoly r;
    for (const auto& [m, c] : t_) {
        int e = m.degree_of(a);
        if (e == 0) continue;
        Monomial reduced = Monomial::mul(m.without(a), Monomial(a, e - 1));
        r.add_term(reduced, c * Rational(e));
    }
    r.recompute_ring();
    return r;
}

MultiPoly MultiPoly::subst(const Atom& a, const MultiPoly& image) const {
    std::map<Atom, MultiPoly> one{{a, image}};
    return subst(one);
}

MultiPoly MultiPoly::subst(const std::map<Atom, MultiPoly>& images) const {
    MultiPoly r;
    for (const auto& [m, c] : t_) {
        MultiPoly term{c};
        for (const auto& [a, e] : m.factors()) {
            auto it = images.find(a);
            if (it == images.end())
                term *= MultiPoly(a).pow(e);
            else
                term *= it->second.pow(e);
        }
        r += term;
    }
    return r;
}

MultiPoly MultiPoly::eval_partial(const std::map<Atom, Rational>& values) const {
    MultiPoly r;
    for (const auto& [m, c] : t_) {
        Rational coeff = c;
        Monomial rest;
        for (const auto& [a, e] : m.factors()) {
            auto it = values.find(a);
            if (it == values.end())
                rest = Monomial::mul(rest, Monomial(a, e));
            else
                coeff *= it->second.pow(e);
        }
        r.add_term(rest, coeff);
    }
    r.recompute_ring();
    return r;
}

Rational MultiPoly::eval(const std::function<Rational(const Atom&)>& value_of) const {
    Rational r(0);
    for (const auto& [m, c] : t_) {
        Rational v = c;
        for (const auto& [a, e] : m.factors()) v *= value_of(a).pow(e);
        r += v;
    }
    return r;
}

std::map<int, MultiPoly> MultiPoly::collect(const Atom& a) const {
    std::map<int, MultiPoly> out;
    for (const auto& [m, c] : t_) {
        int e = m.degree_of(a);
        Monomial rest = e > 0 ? m.without(a) : m;
        out[e].add_term(rest, c);
    }
    for (auto& [e, p] : out) p.recompute_ring();
    return out;
}

int MultiPoly::degree_in(const Atom& a) const {
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.degree_of(a));
    return d;
}

int MultiPoly::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.total_degree());
    return d;
}

int MultiPoly::max_ujet_order() const {
    int k = -1;
    for (const auto& [m, c] : t_)
        for (const auto& [a, e] : m.factors())
            if (a.tag == Tag::UJet) k = std::max(k, a.idx);
    return k;
}

std::string MultiPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        Rational a = c;
        if (first) {
            if (a.sgn() < 0) {
                os << "-";
                a = -a;
            }
            first = false;
        } else {
            os << (a.sgn() < 0 ? " - " : " + ");
            if (a.sgn() < 0) a = -a;
        }
        if (m.trivial())
            os << a.str();
        else if (a.is_one())
            os << m.str();
        else
            os << a.str() << "*" << m.str();
    }
    return os.str();
}

std::string MultiPoly::latex() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        Rational a = c;
        if (first) {
            if (a.sgn() < 0) {
                os << "-";
                a = -a;
            }
            first = false;
        } else {
            os << (a.sgn() < 0 ? "-" : "+");
            if (a.sgn() < 0) a = -a;
        }
        std::string coef;
        if (a.is_integer()) {
            coef = a.str();
        } else {
            std::string s = a.str();
            auto slash = s.find('/');
            coef = "\\frac{" + s.substr(0, slash) + "}{" + s.substr(slash + 1) + "}";
        }
        if (m.trivial())
            os << coef;
        else if (a.is_one())
            os << m.latex();
        else
            os << coef << m.latex();
    }
    return os.str();
}

}  // namespace pi1
