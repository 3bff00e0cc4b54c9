#ifndef PVA_SCALAR_HPP
#define PVA_SCALAR_HPP

#include "pva/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pva {

/// Declared formal parameters of a computation (e.g. the trace-form scale c,
/// the pencil parameter z, user constants). Indices are stable; parameters
/// may be appended after construction.
class Params {
public:
    Params() = default;
    explicit Params(std::vector<std::string> names);

    size_t size() const { return names_.size(); }
    const std::string& name(size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    /// Index of a declared parameter; throws if unknown.
    size_t index(const std::string& name) const;
    bool contains(const std::string& name) const;

    /// Appends a new parameter, returns its index. Name must be fresh.
    size_t declare(const std::string& name);

private:
    std::vector<std::string> names_;
};

/// Exponent vector over the declared parameters, indexed by parameter id and
/// normalized by trimming trailing zeros (so the same monomial has one
/// representation regardless of how many parameters exist). Entries may be
/// negative: coefficients live in the Laurent ring Q[p1^±1, ..., pk^±1].
/// Monomial denominators are exactly what dual bases of a trace form
/// introduce (powers of the scale c); nothing beyond that is representable,
/// which keeps canonical forms decidable.
using ExpVec = std::vector<int32_t>;

/// Multivariate Laurent polynomial with exact rational coefficients.
/// Canonical form: terms sorted by exponent vector (lexicographic with
/// implicit zero-extension, descending), like terms merged, zero
/// coefficients dropped. Zero is the empty term list. Equality is
/// representation equality.
class Scalar {
public:
    using Term = std::pair<ExpVec, Rat>;

    Scalar() = default;

    static Scalar constant(Rat r);
    static Scalar param(size_t idx, int32_t power = 1);

    /// Builds canonical form from an arbitrary term list.
    static Scalar make(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    /// True when no parameter occurs (a plain rational, possibly zero).
    bool is_rational() const;
    Rat rational_value() const; // requires is_rational()
    bool is_monomial() const { return terms_.size() == 1; }

    const std::vector<Term>& terms() const { return terms_; }

    /// Largest and smallest exponent of a parameter across all terms
    /// (0 for the zero scalar).
    int32_t degree(size_t param) const;
    int32_t low_degree(size_t param) const;

    /// Multiplicative inverse; defined only for monomials.
    Scalar inverse() const;

    Scalar pow(int32_t e) const; // negative e requires a monomial

    /// Substitutes `value` for the parameter `param`. When any term carries a
    /// negative exponent of `param`, `value` must be an invertible monomial.
    Scalar substitute(size_t param, const Scalar& value) const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator-(const Scalar& a);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    friend bool operator==(const Scalar& a, const Scalar& b) { return a.terms_ == b.terms_; }

    /// Total order compatible with the canonical form (used by containers).
    friend bool operator<(const Scalar& a, const Scalar& b);

    std::string str(const Params& params) const;

private:
    std::vector<Term> terms_;
};

} // namespace pva

#endif
