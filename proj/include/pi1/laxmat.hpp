#ifndef PI1_LAXMAT_HPP
#define PI1_LAXMAT_HPP

#include <functional>

#include "pi1/series.hpp"

namespace pi1 {

// 2x2 matrix over LambdaSeries.  Indices are 0-based; the watermark
// discipline of the entries is inherited, so "zero" comes in the same
// two strengths as for a single series.
struct LaxMat {
    LambdaSeries e[2][2];

    LambdaSeries& at(int i, int j) { return e[i][j]; }
    const LambdaSeries& at(int i, int j) const { return e[i][j]; }

    LaxMat& operator+=(const LaxMat& o) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) e[i][j] += o.e[i][j];
        return *this;
    }
    LaxMat& operator-=(const LaxMat& o) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) e[i][j] -= o.e[i][j];
        return *this;
    }
    LaxMat& operator*=(const MultiPoly& c) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) e[i][j] *= c;
        return *this;
    }
    LaxMat& operator*=(const Rational& c) {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) e[i][j] *= c;
        return *this;
    }
    LaxMat operator-() const {
        LaxMat r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = -e[i][j];
        return r;
    }
    friend LaxMat operator+(LaxMat a, const LaxMat& b) { return a += b; }
    friend LaxMat operator-(LaxMat a, const LaxMat& b) { return a -= b; }
    friend LaxMat operator*(LaxMat a, const MultiPoly& c) { return a *= c; }
    friend LaxMat operator*(LaxMat a, const Rational& c) { return a *= c; }

    friend LaxMat operator*(const LaxMat& a, const LaxMat& b) {
        LaxMat r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.e[i][j] = a.e[i][0] * b.e[0][j] + a.e[i][1] * b.e[1][j];
        return r;
    }

    static LaxMat commutator(const LaxMat& a, const LaxMat& b) { return a * b - b * a; }

    LambdaSeries trace() const { return e[0][0] + e[1][1]; }
    LambdaSeries det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }

    LaxMat map_entries(const std::function<LambdaSeries(const LambdaSeries&)>& f) const {
        LaxMat r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.e[i][j] = f(e[i][j]);
        return r;
    }
    // Apply f to every lambda-coefficient of every entry.
    LaxMat map_coeffs(const std::function<MultiPoly(const MultiPoly&)>& f) const {
        return map_entries([&](const LambdaSeries& s) { return s.map_coeffs(f); });
    }

    // Genuinely zero: all entries exact with no terms.
    bool exact_zero() const {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!(e[i][j].exact() && e[i][j].is_zero_trusted())) return false;
        return true;
    }
    // Zero on the trusted region of every entry.
    bool zero_trusted() const {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (!e[i][j].is_zero_trusted()) return false;
        return true;
    }
};

}  // namespace pi1

#endif
