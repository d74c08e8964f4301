#ifndef PI1_SERIES_HPP
#define PI1_SERIES_HPP

#include <functional>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "pi1/multipoly.hpp"

namespace pi1 {

// Formal Laurent/Puiseux series at lambda = infinity over MultiPoly
// coefficients, truncated below with a fail-loud watermark.
//
// Exponents are stored doubled ("exp2"): lambda^{e} has key 2e, so the
// half-integer powers produced by square roots live at odd keys.
//
// Every series is either `exact` (a finite sum; everything not stored
// is genuinely zero) or carries a watermark `low2`: coefficients with
// key >= low2 are exact, anything below is unknown and reading there
// throws.  Arithmetic propagates the watermark pessimistically:
//   add: max of the two watermarks
//   mul: max(a.low + b.top, b.low + a.top)
//   1/b: b.low - 2*b.top
//   sqrt(a): a.low - a.top/2
class LambdaSeries {
  public:
    static constexpr int kNegInf = std::numeric_limits<int>::min() / 4;

    LambdaSeries() = default;  // exact zero
    static LambdaSeries constant(const MultiPoly& c) { return monomial2(0, c); }
    static LambdaSeries lambda() { return monomial2(2, MultiPoly(1)); }
    // c * lambda^{exp2/2}
    static LambdaSeries monomial2(int exp2, const MultiPoly& c);

    bool exact() const { return exact_; }
    int low2() const { return exact_ ? kNegInf : low2_; }
    bool has_terms() const { return !c_.empty(); }
    // True when every stored coefficient in the trusted region is zero.
    bool is_zero_trusted() const { return c_.empty(); }
    bool half_step() const;
    int top2() const;  // largest stored exponent; throws when empty

    // Watermark-checked access (key may be absent: returns zero).
    const MultiPoly& coeff2(int exp2) const;

    LambdaSeries& operator+=(const LambdaSeries& o);
    LambdaSeries& operator-=(const LambdaSeries& o);
    LambdaSeries& operator*=(const LambdaSeries& o);
    LambdaSeries& operator*=(const MultiPoly& c);
    LambdaSeries& operator*=(const Rational& c);
    LambdaSeries operator-() const;
    friend LambdaSeries operator+(LambdaSeries a, const LambdaSeries& b) { return a += b; }
    friend LambdaSeries operator-(LambdaSeries a, const LambdaSeries& b) { return a -= b; }
    friend LambdaSeries operator*(LambdaSeries a, const LambdaSeries& b) { return a *= b; }
    friend LambdaSeries operator*(LambdaSeries a, const MultiPoly& c) { return a *= c; }
    friend LambdaSeries operator*(LambdaSeries a, const Rational& c) { return a *= c; }
    friend LambdaSeries operator*(const Rational& c, LambdaSeries a) { return a *= c; }

    // Exact equality of the stored data on the common trusted region;
    // both series must be trusted down to `depth2`.
    static bool equal_to_depth(const LambdaSeries& a, const LambdaSeries& b, int depth2);

    LambdaSeries shifted2(int exp2) const;  // multiply by lambda^{exp2/2}
    // Forget everything below exp2 = depth2 and stamp the watermark there.
    LambdaSeries truncated2(int depth2) const;

    // 1 / this, trusted down to depth2.  Leading coefficient must be a
    // nonzero constant.  Requesting more depth than the operand's
    // watermark supports throws.
    LambdaSeries inverse(int depth2) const;
    static LambdaSeries div(const LambdaSeries& a, const LambdaSeries& b, int depth2);

    // Square root with leading coefficient +1; input must be monic with
    // integer-power support.  Output picks up half-integer exponents
    // when the leading exponent is odd.
    LambdaSeries sqrt(int depth2) const;

    // Residue at infinity: MINUS the coefficient of lambda^{-1}.
    MultiPoly residue_infty() const;

    // Projection onto nonnegative powers; exact result.  The watermark
    // must reach 0 so the projection is complete.
    LambdaSeries proj_nonneg() const;

    LambdaSeries d_lambda() const;
    LambdaSeries map_coeffs(const std::function<MultiPoly(const MultiPoly&)>& f) const;

    // ---- exact-polynomial helpers (integer powers, exponents >= 0) ----
    bool is_poly() const;
    int poly_degree() const;  // in lambda; -1 for zero
    // Long division a = q*b + r, deg r < deg b; requires is_poly() on
    // both and an invertible (constant) leading coefficient for b.
    static std::pair<LambdaSeries, LambdaSeries> divmod(const LambdaSeries& a,
                                                        const LambdaSeries& b);
    MultiPoly eval_at(const Rational& lambda0) const;
    MultiPoly eval_at(const MultiPoly& lambda0) const;

    const std::map<int, MultiPoly, std::greater<int>>& raw() const { return c_; }

    std::string str() const;
    std::string latex() const;

  private:
    void set_term(int exp2, MultiPoly c);
    void enforce_watermark();
    int effective_top2() const;  // for watermark algebra on termless series

    // Descending exponent order: leading term first.
    std::map<int, MultiPoly, std::greater<int>> c_;
    bool exact_ = true;
    int low2_ = kNegInf;
};

// Conventional truncation depth when serving genus-g computations.
constexpr int default_depth2(int g) { return -2 * (2 * g + 4); }

}  // namespace pi1

#endif
