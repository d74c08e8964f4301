#ifndef PI1_MULTIPOLY_HPP
#define PI1_MULTIPOLY_HPP

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pi1/atom.hpp"
#include "pi1/rational.hpp"

namespace pi1 {

// Power product of atoms, exponents >= 1, factors sorted by atom order.
class Monomial {
  public:
    Monomial() = default;
    explicit Monomial(const Atom& a, int e = 1);

    const std::vector<std::pair<Atom, int>>& factors() const { return f_; }
    bool trivial() const { return f_.empty(); }
    int total_degree() const;
    int degree_of(const Atom& a) const;

    static Monomial mul(const Monomial& a, const Monomial& b);
    // Remove atom^k exactly; throws if the monomial does not contain it.
    Monomial without(const Atom& a) const;

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }
    friend bool operator<(const Monomial& a, const Monomial& b);

    std::string str() const;
    std::string latex() const;

  private:
    std::vector<std::pair<Atom, int>> f_;
};

// Sparse multivariate polynomial with exact rational coefficients.
// Never stores zero coefficients; ring purity (jet vs deformation vs
// moduli atoms) is enforced on every operation that could mix rings.
class MultiPoly {
  public:
    MultiPoly() = default;
    MultiPoly(long n);                    // NOLINT: implicit by design
    MultiPoly(const Rational& c);         // NOLINT
    explicit MultiPoly(const Atom& a);
    static MultiPoly term(const Monomial& m, const Rational& c);

    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    // Constant term (0 if absent); the polynomial need not be constant.
    Rational constant_part() const;
    // Value of a constant polynomial; throws std::domain_error otherwise.
    Rational constant_value() const;
    unsigned ring() const { return ring_; }
    std::size_t term_count() const { return t_.size(); }
    const std::map<Monomial, Rational>& terms() const { return t_; }
    Rational coeff(const Monomial& m) const;

    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const Rational& c);
    MultiPoly& operator/=(const Rational& c);
    MultiPoly operator-() const;
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const MultiPoly& b) { return a *= b; }
    friend MultiPoly operator*(MultiPoly a, const Rational& c) { return a *= c; }
    friend MultiPoly operator*(const Rational& c, MultiPoly a) { return a *= c; }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.t_ == b.t_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly pow(int e) const;

    // Formal partial derivative with respect to one atom.
    MultiPoly derivative(const Atom& a) const;

    // Substitute a single atom (image may live in a different ring).
    MultiPoly subst(const Atom& a, const MultiPoly& image) const;
    // Simultaneous substitution of every atom present in the map.
    MultiPoly subst(const std::map<Atom, MultiPoly>& images) const;
    // Substitute rational values for some atoms, keep the rest symbolic.
    MultiPoly eval_partial(const std::map<Atom, Rational>& values) const;
    // Full evaluation; the resolver must cover every atom present.
    Rational eval(const std::function<Rational(const Atom&)>& value_of) const;

    // Decompose as sum_k (atom^k) * cofactor_k with atom removed.
    std::map<int, MultiPoly> collect(const Atom& a) const;
    int degree_in(const Atom& a) const;
    int total_degree() const;
    // Largest derivative order k such that u^(k) occurs (-1 if u-free).
    int max_ujet_order() const;

    std::string str() const;
    std::string latex() const;

  private:
    void add_term(const Monomial& m, const Rational& c);
    void recompute_ring();
    void merge_ring(unsigned other);

    std::map<Monomial, Rational> t_;
    unsigned ring_ = RING_NONE;
};

}  // namespace pi1

#endif
