#include "pi1/symfunc.hpp"

#include <functional>
#include <stdexcept>

namespace pi1 {

namespace {

const MultiPoly kZero{};

// All compositions of k into ordered positive parts (2^{k-1} of them).
void for_each_composition(int k, std::vector<int>& parts,
                          const std::function<void(const std::vector<int>&)>& fn) {
    if (k == 0) {
        fn(parts);
        return;
    }
    for (int b = 1; b <= k; ++b) {
        parts.push_back(b);
        for_each_composition(k - b, parts, fn);
        parts.pop_back();
    }
}

// All weak compositions (b_1,...,b_m), b_i >= 0, with b_1 + 2 b_2 + ... + m b_m = m.
void for_each_weighted_partition(int i, int remaining, std::vector<int>& b,
                                 const std::function<void(const std::vector<int>&)>& fn) {
    if (i == 0) {
        if (remaining == 0) fn(b);
        return;
    }
    for (int cnt = 0; cnt * i <= remaining; ++cnt) {
        b[static_cast<std::size_t>(i) - 1] = cnt;
        for_each_weighted_partition(i - 1, remaining - cnt * i, b, fn);
    }
    b[static_cast<std::size_t>(i) - 1] = 0;
}

}  // namespace

const MultiPoly& SymBasisVector::at(int k) const {
    if (k < 0) throw std::out_of_range("SymBasisVector: negative index");
    if (static_cast<std::size_t>(k) < values.size()) return values[static_cast<std::size_t>(k)];
    if (kind == SymKind::Elementary && k > n) return kZero;
    throw std::out_of_range("SymBasisVector: index beyond computed range");
}

SymBasisVector e_from_roots(const std::vector<MultiPoly>& x) {
    const int n = static_cast<int>(x.size());
    SymBasisVector out{SymKind::Elementary, n, {MultiPoly(1)}};
    // Multiply the generating product out one root at a time:
    // e_k <- e_k + x_j * e_{k-1}.
    for (int j = 0; j < n; ++j) {
        out.values.push_back(MultiPoly{});
        for (int k = j + 1; k >= 1; --k)
            out.values[static_cast<std::size_t>(k)] +=
                x[static_cast<std::size_t>(j)] * out.values[static_cast<std::size_t>(k) - 1];
    }
    return out;
}

SymBasisVector elementary_from_values(int n, const std::vector<MultiPoly>& e1_to_en) {
    if (static_cast<int>(e1_to_en.size()) != n)
        throw std::logic_error("elementary_from_values: need exactly n values");
    SymBasisVector out{SymKind::Elementary, n, {MultiPoly(1)}};
    out.values.insert(out.values.end(), e1_to_en.begin(), e1_to_en.end());
    return out;
}

SymBasisVector h_from_e(const SymBasisVector& e, int k_max) {
    if (e.kind != SymKind::Elementary) throw std::logic_error("h_from_e: input must be Elementary");
    SymBasisVector out{SymKind::CompleteHomogeneous, e.n, {MultiPoly(1)}};
    for (int k = 1; k <= k_max; ++k) {
        MultiPoly hk;
        std::vector<int> parts;
        for_each_composition(k, parts, [&](const std::vector<int>& b) {
            MultiPoly term(1);
            for (int bm : b) {
                const MultiPoly& ef = e.at(bm);
                if (ef.is_zero()) return;  // a factor e_{b_m} vanished
                term *= ef;
                if (bm % 2 != 0) term *= Rational(-1);
            }
            if (b.size() % 2 != 0) term *= Rational(-1);
            hk += term;
        });
        out.values.push_back(std::move(hk));
    }
    return out;
}

SymBasisVector powersum_from_e(const SymBasisVector& e, int m_max) {
    if (e.kind != SymKind::Elementary)
        throw std::logic_error("powersum_from_e: input must be Elementary");
    SymBasisVector out{SymKind::PowerSum, e.n, {MultiPoly(e.n)}};
    for (int m = 1; m <= m_max; ++m) {
        MultiPoly sm;
        std::vector<int> b(static_cast<std::size_t>(m), 0);
        for_each_weighted_partition(m, m, b, [&](const std::vector<int>& bb) {
            long total = 0;
            for (int bi : bb) total += bi;
            // multinomial(|b|; b_1,...,b_m) / |b|, with the sign (-1)^{|b|}
            Rational coef = factorial(total) / Rational(total);
            MultiPoly term(1);
            for (int i = 1; i <= m; ++i) {
                const int bi = bb[static_cast<std::size_t>(i) - 1];
                if (bi == 0) continue;
                coef /= factorial(bi);
                const MultiPoly& ef = e.at(i);
                if (ef.is_zero()) return;
                term *= ef.pow(bi);
            }
            if (total % 2 != 0) coef = -coef;
            sm += term * coef;
        });
        sm *= Rational(m);
        if (m % 2 != 0) sm *= Rational(-1);
        out.values.push_back(std::move(sm));
    }
    return out;
}

MultiPoly e_direct(const std::vector<MultiPoly>& x, int k) {
    const int n = static_cast<int>(x.size());
    if (k == 0) return MultiPoly(1);
    if (k < 0 || k > n) return MultiPoly{};
    MultiPoly acc;
    std::function<void(int, int, const MultiPoly&)> rec = [&](int start, int left,
                                                              const MultiPoly& prod) {
        if (left == 0) {
            acc += prod;
            return;
        }
        for (int i = start; i <= n - left; ++i)
            rec(i + 1, left - 1, prod * x[static_cast<std::size_t>(i)]);
    };
    rec(0, k, MultiPoly(1));
    return acc;
}

MultiPoly h_direct(const std::vector<MultiPoly>& x, int k) {
    const int n = static_cast<int>(x.size());
    if (k == 0) return MultiPoly(1);
    if (k < 0 || n == 0) return MultiPoly{};
    MultiPoly acc;
    // weakly increasing index tuples i_1 <= ... <= i_k
    std::function<void(int, int, const MultiPoly&)> rec = [&](int start, int left,
                                                              const MultiPoly& prod) {
        if (left == 0) {
            acc += prod;
            return;
        }
        for (int i = start; i < n; ++i) rec(i, left - 1, prod * x[static_cast<std::size_t>(i)]);
    };
    rec(0, k, MultiPoly(1));
    return acc;
}

MultiPoly powersum_direct(const std::vector<MultiPoly>& x, int k) {
    if (k == 0) return MultiPoly(static_cast<long>(x.size()));
    MultiPoly acc;
    for (const auto& xi : x) acc += xi.pow(k);
    return acc;
}

}  // namespace pi1
