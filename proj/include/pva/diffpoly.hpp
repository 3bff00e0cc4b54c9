#ifndef PVA_DIFFPOLY_HPP
#define PVA_DIFFPOLY_HPP

#include "pva/algebra.hpp"

#include <compare>
#include <cstdint>
#include <vector>

namespace pva {

/// Multi-index of derivative orders, one entry per derivation.
using MultiIndex = std::vector<uint32_t>;

inline uint32_t mi_total(const MultiIndex& m) {
    uint32_t s = 0;
    for (auto x : m) s += x;
    return s;
}

/// One jet variable u_i^{(n)}: generator index and derivative multi-index.
/// The total order (gen-major, then graded-lex on the order) fixes the
/// canonical sorting of monomial factors.
struct DerivKey {
    uint32_t gen = 0;
    MultiIndex order;

    friend bool operator==(const DerivKey&, const DerivKey&) = default;
    friend bool operator<(const DerivKey& a, const DerivKey& b) {
        if (a.gen != b.gen) return a.gen < b.gen;
        uint32_t ta = mi_total(a.order), tb = mi_total(b.order);
        if (ta != tb) return ta < tb;
        return a.order < b.order;
    }
};

/// Instance of a function symbol with formal partial derivatives applied.
/// dord[k] counts derivatives with respect to the k-th declared argument;
/// mixed partials commute, so a count vector is the whole state.
struct FuncKey {
    uint32_t sym = 0;
    std::vector<uint32_t> dord;

    friend bool operator==(const FuncKey&, const FuncKey&) = default;
    friend bool operator<(const FuncKey& a, const FuncKey& b) {
        if (a.sym != b.sym) return a.sym < b.sym;
        return a.dord < b.dord;
    }
};

/// Product of jet-variable powers and function-symbol powers. Factors are
/// kept sorted by key; exponents are positive.
struct Monomial {
    std::vector<std::pair<DerivKey, uint32_t>> derivs;
    std::vector<std::pair<FuncKey, uint32_t>> funcs;

    bool is_empty() const { return derivs.empty() && funcs.empty(); }
    uint32_t total_degree() const;
    /// Sum over factors of exponent times derivative order; the grading used
    /// by the dispersionless scaling.
    uint32_t total_deriv_order() const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
    /// Fixed total order: total degree descending, then factor-wise compare.
    friend bool operator<(const Monomial& a, const Monomial& b);
};

/// Element of the differential polynomial algebra: a canonical sum of
/// monomials with Scalar coefficients. Canonical form is unique, so equality
/// is plain representation equality.
class DiffPoly {
public:
    using Term = std::pair<Monomial, Scalar>;

    DiffPoly() = default;

    static DiffPoly zero() { return {}; }
    static DiffPoly from_scalar(Scalar s);
    static DiffPoly constant(Rat r);
    /// The generator u_i (order 0).
    static DiffPoly gen(uint32_t i, const Algebra& alg);
    static DiffPoly jet(DerivKey k);
    static DiffPoly func(FuncKey f);
    static DiffPoly make(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }

    /// Coefficient of the empty monomial (the "constant term", a Scalar).
    Scalar constant_term() const;

    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator-(const DiffPoly& a);
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    DiffPoly& operator*=(const DiffPoly& o) { return *this = *this * o; }
    friend DiffPoly operator*(const Scalar& s, const DiffPoly& p);
    friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator<(const DiffPoly& a, const DiffPoly& b);

    DiffPoly pow(uint32_t e) const;

    /// Largest exponent of a parameter over all coefficients.
    int32_t param_degree(size_t param) const;
    /// Substitutes a scalar value for a parameter in every coefficient.
    DiffPoly substitute_param(size_t param, const Scalar& value) const;

    /// Multiplies each monomial by scale^(total derivative order); the
    /// DiffPoly half of the dispersionless grading.
    DiffPoly scale_by_deriv_order(const Scalar& scale) const;

private:
    std::vector<Term> terms_;
};

/// Total derivative along derivation alpha (0-based). Leibniz-linear; acts on
/// jet variables by raising the order, on function symbols by the chain rule.
DiffPoly total_derivative(const Algebra& alg, const DiffPoly& p, uint32_t alpha);

/// Iterated total derivative, one entry of `orders` per derivation.
DiffPoly total_derivative(const Algebra& alg, const DiffPoly& p, const MultiIndex& orders);

/// Formal partial derivative with respect to the jet variable `k`. Function
/// symbols respond only to order-0 keys of their arguments.
DiffPoly partial_derivative(const Algebra& alg, const DiffPoly& p, const DerivKey& k);

/// Variational derivative: sum over n of (-d)^n applied to the partial with
/// respect to u_i^{(n)}; finite by finite support.
DiffPoly variational_derivative(const Algebra& alg, const DiffPoly& p, uint32_t i);

/// All jet variables a partial derivative could see: keys occurring in the
/// monomials plus the order-0 keys of every function-symbol argument.
std::vector<DerivKey> support(const Algebra& alg, const DiffPoly& p);

/// Outcome of the membership test for the image of the total derivative.
struct TotalDerivativeWitness {
    bool is_total = false;
    std::vector<DiffPoly> variational; // one witness per generator
    Scalar constant_term;
};

/// Decides p in dV for D=1, FuncSym-free input: all variational derivatives
/// vanish and the constant term is zero. Other inputs are refused.
TotalDerivativeWitness is_total_derivative(const Algebra& alg, const DiffPoly& p);

} // namespace pva

#endif
