#ifndef PI1_PSIDO_HPP
#define PI1_PSIDO_HPP

#include <limits>
#include <map>
#include <string>

#include "pi1/diffjet.hpp"

namespace pi1 {

// Truncated pseudo-differential operators: finite sums  sum_k X_k d^k
// with X_k differential polynomials, plus a fail-loud truncation
// watermark exactly like LambdaSeries.  An operator is `exact` when
// every unstored coefficient is genuinely zero; otherwise coefficients
// below `low()` are unknown and reading them throws.
//
// Composition follows the extended Leibniz rule
//   d^k . a = sum_{j>=0} binom(k,j) a^(j) d^(k-j),  k in Z,
// with falling-factorial binomials.  For k < 0 the sum never terminates
// unless a's x-derivatives eventually vanish, so composing two exact
// operators whose product has an infinite tail is refused; truncate one
// operand first to say where the tail may be cut.
class PsiOp {
  public:
    static constexpr int kNegInf = std::numeric_limits<int>::min() / 4;

    PsiOp() = default;  // exact zero
    static PsiOp monomial(int k, const MultiPoly& c);
    static PsiOp d(int k = 1) { return monomial(k, MultiPoly(1)); }
    static PsiOp mult(const MultiPoly& f) { return monomial(0, f); }

    bool exact() const { return exact_; }
    int low() const { return exact_ ? kNegInf : low_; }
    bool has_terms() const { return !c_.empty(); }
    bool is_zero_trusted() const { return c_.empty(); }
    int order() const;  // largest stored exponent; throws when empty

    // Watermark-checked access (absent key above the watermark reads 0).
    const MultiPoly& coeff(int k) const;

    PsiOp& operator+=(const PsiOp& o);
    PsiOp& operator-=(const PsiOp& o);
    PsiOp& operator*=(const Rational& c);
    PsiOp operator-() const;
    friend PsiOp operator+(PsiOp a, const PsiOp& b) { return a += b; }
    friend PsiOp operator-(PsiOp a, const PsiOp& b) { return a -= b; }
    friend PsiOp operator*(PsiOp a, const Rational& c) { return a *= c; }
    friend PsiOp operator*(const Rational& c, PsiOp a) { return a *= c; }

    static PsiOp compose(const PsiOp& a, const PsiOp& b);
    static PsiOp commutator(const PsiOp& a, const PsiOp& b);

    // Exact equality of stored data down to `depth`; both operands must
    // be trusted there.
    static bool equal_to_depth(const PsiOp& a, const PsiOp& b, int depth);

    PsiOp proj_plus() const;   // orders >= 0; needs trust at 0; exact result
    PsiOp proj_minus() const;  // orders < 0; keeps the watermark
    MultiPoly residue() const;  // coefficient of d^{-1}, trust-checked

    PsiOp truncated(int low) const;  // forget below `low`, stamp watermark

    // Inverse of 1 + (strictly negative orders), trusted down to depth.
    PsiOp invert(int depth) const;

    std::string str() const;

  private:
    void set_term(int k, MultiPoly c);
    void enforce_watermark();
    int effective_order() const;

    std::map<int, MultiPoly, std::greater<int>> c_;
    bool exact_ = true;
    int low_ = kNegInf;
};

// Q = d^2 + u.
PsiOp Q_op();

// The square root d + sum_{k<=0} q_k d^k of Q, trusted down to d^{depth}
// (depth <= 0), found by peeling the top error coefficient.
PsiOp sqrt_Q(int depth);

// Q^{l + 1/2}, trusted deep enough to read residues for the table row l.
PsiOp Q_halfpower(int l, int depth);

// B_k = (Q^{k/2})_+ for odd k >= 1; exact differential operator.
PsiOp B_op(int k);

// [B_{2l+1}, Q] = 2 d_x(R_{2l+1}) as multiplication operators, plus the
// positive-part recursion B_{k+2} = B_k Q + R_k d - (1/2) R_k'.
bool kdv_flow_check(int l);

// [Q, P^{(g)}] - 1 = -2 d_x(string polynomial) as multiplication
// operators, with P^{(g)} = B_{2g+1} + sum_{l=1}^{g-1} c_{2l-1} B_{2l-1}.
bool string_operator_check(int g);

}  // namespace pi1

#endif
