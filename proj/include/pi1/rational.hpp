// Exact arbitrary-precision rational scalar over GMP's mpq_t.
// Canonical form is maintained by GMP (lowest terms, positive denominator);
// zero is 0/1. Everything downstream assumes these invariants.
#ifndef PI1_RATIONAL_HPP
#define PI1_RATIONAL_HPP

#include <gmp.h>

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace pi1 {

class Rational {
public:
    Rational() { mpq_init(q_); }
    Rational(long n) {
        mpq_init(q_);
        mpq_set_si(q_, n, 1);
    }
    Rational(long num, long den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        if (den < 0) {  // mpq_set_si takes the denominator unsigned
            num = -num;
            den = -den;
        }
        mpq_init(q_);
        mpq_set_si(q_, num, static_cast<unsigned long>(den));
        mpq_canonicalize(q_);
    }
    // Parses "p", "-p", or "p/q". Throws on malformed input or q = 0.
    explicit Rational(const std::string& s) {
        mpq_init(q_);
        if (mpq_set_str(q_, s.c_str(), 10) != 0) {
            mpq_clear(q_);
            throw std::invalid_argument("Rational: cannot parse '" + s + "'");
        }
        if (mpz_sgn(mpq_denref(q_)) == 0) {
            mpq_clear(q_);
            throw std::domain_error("Rational: zero denominator in '" + s + "'");
        }
        mpq_canonicalize(q_);
    }

    Rational(const Rational& o) {
        mpq_init(q_);
        mpq_set(q_, o.q_);
    }
    Rational(Rational&& o) noexcept {
        mpq_init(q_);
        mpq_swap(q_, o.q_);
    }
    Rational& operator=(const Rational& o) {
        if (this != &o) mpq_set(q_, o.q_);
        return *this;
    }
    Rational& operator=(Rational&& o) noexcept {
        if (this != &o) mpq_swap(q_, o.q_);
        return *this;
    }
    ~Rational() { mpq_clear(q_); }

    bool is_zero() const { return mpq_sgn(q_) == 0; }
    bool is_one() const { return mpq_cmp_si(q_, 1, 1) == 0; }
    int sgn() const { return mpq_sgn(q_); }
    bool is_integer() const { return mpz_cmp_ui(mpq_denref(q_), 1) == 0; }

    Rational& operator+=(const Rational& o) {
        mpq_add(q_, q_, o.q_);
        return *this;
    }
    Rational& operator-=(const Rational& o) {
        mpq_sub(q_, q_, o.q_);
        return *this;
    }
    Rational& operator*=(const Rational& o) {
        mpq_mul(q_, q_, o.q_);
        return *this;
    }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw std::domain_error("Rational: division by zero");
        mpq_div(q_, q_, o.q_);
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const {
        Rational r(*this);
        mpq_neg(r.q_, r.q_);
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return mpq_equal(a.q_, b.q_) != 0; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) < 0; }
    friend bool operator<=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) <= 0; }
    friend bool operator>(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) > 0; }
    friend bool operator>=(const Rational& a, const Rational& b) { return mpq_cmp(a.q_, b.q_) >= 0; }

    Rational inv() const {
        if (is_zero()) throw std::domain_error("Rational: inverse of zero");
        Rational r;
        mpq_inv(r.q_, q_);
        return r;
    }

    Rational pow(long e) const {
        if (e < 0) return inv().pow(-e);
        Rational r(1), base(*this);
        while (e > 0) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return r;
    }

    // Canonical text form: "p" for integers, "p/q" otherwise.
    std::string str() const {
        char* raw = mpq_get_str(nullptr, 10, q_);
        std::string s(raw);
        void (*freefn)(void*, size_t);
        mp_get_memory_functions(nullptr, nullptr, &freefn);
        freefn(raw, s.size() + 1);
        return s;
    }

    size_t hash() const {
        // Cheap but adequate: fold the limbs of numerator and denominator.
        auto fold = [](mpz_srcptr z, size_t h) {
            size_t n = mpz_size(z);
            for (size_t i = 0; i < n; ++i) h = h * 1099511628211ULL + mpz_getlimbn(z, i);
            return h * 1099511628211ULL + static_cast<size_t>(mpz_sgn(z) + 1);
        };
        return fold(mpq_denref(q_), fold(mpq_numref(q_), 1469598103934665603ULL));
    }

private:
    mpq_t q_;
};

inline std::ostream& operator<<(std::ostream& os, const Rational& r);

// binomial(k, j) for integer or negative k and j >= 0, via the falling
// factorial k(k-1)...(k-j+1)/j!. Needed by the extended Leibniz rule.
inline Rational binomial_falling(long k, long j) {
    if (j < 0) return Rational(0);
    Rational num(1);
    for (long i = 0; i < j; ++i) num *= Rational(k - i);
    Rational den(1);
    for (long i = 2; i <= j; ++i) den *= Rational(i);
    return num / den;
}

// binomial(1/2, j) and friends: falling factorial with rational top argument.
inline Rational binomial_falling(const Rational& k, long j) {
    if (j < 0) return Rational(0);
    Rational num(1);
    for (long i = 0; i < j; ++i) num *= (k - Rational(i));
    Rational den(1);
    for (long i = 2; i <= j; ++i) den *= Rational(i);
    return num / den;
}

inline Rational factorial(long n) {
    Rational r(1);
    for (long i = 2; i <= n; ++i) r *= Rational(i);
    return r;
}

}  // namespace pi1

#include <ostream>
namespace pi1 {
inline std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }
}  // namespace pi1

namespace std {
template <>
struct hash<pi1::Rational> {
    size_t operator()(const pi1::Rational& r) const { return r.hash(); }
};
}  // namespace std

#endif
