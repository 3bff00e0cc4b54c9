#ifndef PVA_LAMBDA_HPP
#define PVA_LAMBDA_HPP

#include "pva/diffpoly.hpp"

#include <cstdint>
#include <vector>

namespace pva {

/// Execution policy for the residual kernels. Parallel runs distribute
/// independent output entries over OpenMP threads; results are identical to
/// the serial reference by construction (each entry is computed in full by
/// one thread into its own slot).
enum class Exec { serial, parallel };

/// Polynomial in the formal parameters of one or more families (lambda, mu,
/// ...), one exponent per derivation per family, with DiffPoly coefficients.
/// Canonical: terms sorted by exponent (graded-lex, descending), zero
/// coefficients dropped.
class LambdaExpr {
public:
    using Exp = std::vector<uint32_t>; // size = fams * dims, family-major
    using Term = std::pair<Exp, DiffPoly>;

    LambdaExpr() = default;
    LambdaExpr(uint32_t dims, uint32_t fams) : dims_(dims), fams_(fams) {}

    static LambdaExpr zero(uint32_t dims, uint32_t fams = 1) { return LambdaExpr(dims, fams); }
    static LambdaExpr from_poly(DiffPoly p, uint32_t dims, uint32_t fams = 1);
    /// lambda_{fam,alpha} as an expression.
    static LambdaExpr param(uint32_t dims, uint32_t fams, uint32_t fam, uint32_t alpha);
    static LambdaExpr make(uint32_t dims, uint32_t fams, std::vector<Term> terms);

    uint32_t dims() const { return dims_; }
    uint32_t fams() const { return fams_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    /// Coefficient of a given exponent vector (zero if absent).
    DiffPoly coeff(const Exp& e) const;
    /// Maximum total degree in a given family.
    uint32_t degree(uint32_t fam) const;

    LambdaExpr& operator+=(const LambdaExpr& o);
    LambdaExpr& operator-=(const LambdaExpr& o);
    friend LambdaExpr operator+(LambdaExpr a, const LambdaExpr& b) { return a += b; }
    friend LambdaExpr operator-(LambdaExpr a, const LambdaExpr& b) { return a -= b; }
    friend LambdaExpr operator-(const LambdaExpr& a);
    friend LambdaExpr operator*(const DiffPoly& p, const LambdaExpr& x);
    friend LambdaExpr operator*(const Scalar& s, const LambdaExpr& x);
    friend LambdaExpr operator*(const LambdaExpr& a, const LambdaExpr& b);
    friend bool operator==(const LambdaExpr& a, const LambdaExpr& b);

    /// Re-embeds into a context with `fams` families, family i of this
    /// expression becoming family fam_map[i].
    LambdaExpr promote(uint32_t fams, const std::vector<uint32_t>& fam_map) const;

    int32_t param_degree(size_t param) const;
    LambdaExpr substitute_param(size_t param, const Scalar& value) const;

private:
    uint32_t dims_ = 1, fams_ = 1;
    std::vector<Term> terms_; // sorted graded-lex descending on exponents
};

/// (sign * (lambda_{fam,alpha} + d_alpha)) X, the composition primitive:
/// the derivation acts on every DiffPoly coefficient to the right.
LambdaExpr apply_shift(const Algebra& alg, const LambdaExpr& x, uint32_t fam, uint32_t alpha,
                       bool negate);

/// Iterated shift over a multi-index (one exponent per derivation).
LambdaExpr apply_shift(const Algebra& alg, const LambdaExpr& x, uint32_t fam, const MultiIndex& n,
                       bool negate);

/// H(lambda+d) X for a one-family entry H: each lambda power of H becomes the
/// iterated shift acting rightward on X, left-multiplied by its coefficient.
LambdaExpr apply_entry(const Algebra& alg, const LambdaExpr& h, const LambdaExpr& x, uint32_t fam);

/// H(d) v: substitutes the derivation for the parameter, acting rightward.
DiffPoly apply_entry_at_d(const Algebra& alg, const LambdaExpr& h, const DiffPoly& v);

/// N x N matrix of one-family LambdaExpr; entry (i,j) is {u_i lambda u_j}.
class BracketMatrix {
public:
    BracketMatrix() = default;
    BracketMatrix(uint32_t n, uint32_t dims);

    uint32_t n() const { return n_; }
    uint32_t dims() const { return dims_; }
    LambdaExpr& at(uint32_t i, uint32_t j) { return entries_.at(size_t(i) * n_ + j); }
    const LambdaExpr& at(uint32_t i, uint32_t j) const { return entries_.at(size_t(i) * n_ + j); }

    friend bool operator==(const BracketMatrix& a, const BracketMatrix& b);

    BracketMatrix substitute_param(size_t param, const Scalar& value) const;

    /// z-pencil combination: this + z * other, entrywise.
    BracketMatrix pencil(const BracketMatrix& other, const Scalar& z) const;

private:
    uint32_t n_ = 0, dims_ = 1;
    std::vector<LambdaExpr> entries_;
};

/// The Master Formula: extends the generator brackets H to arbitrary f, g.
/// Result is a one-family LambdaExpr in the bracket parameter.
LambdaExpr master_bracket(const Algebra& alg, const DiffPoly& f, const DiffPoly& g,
                          const BracketMatrix& h);

/// Entry (i,j) = {u_i lambda u_j} + ({u_j mu u_i} with mu -> -lambda-d acting
/// on the coefficients). The bracket is skew-symmetric iff all entries vanish.
BracketMatrix skew_residual(const Algebra& alg, const BracketMatrix& h, Exec exec = Exec::parallel);

/// Left side of the Jacobi identity on generator triples, in two parameter
/// families (lambda = family 0, mu = family 1). Indexing: entry(i,j,k).
class JacobiResidual {
public:
    JacobiResidual() = default;
    JacobiResidual(uint32_t n, uint32_t dims);
    uint32_t n() const { return n_; }
    LambdaExpr& at(uint32_t i, uint32_t j, uint32_t k);
    const LambdaExpr& at(uint32_t i, uint32_t j, uint32_t k) const;
    bool all_zero() const;

private:
    uint32_t n_ = 0;
    std::vector<LambdaExpr> entries_;
};

JacobiResidual jacobi_residual(const Algebra& alg, const BracketMatrix& h,
                               Exec exec = Exec::parallel);

/// {f lambda {g mu h}} - {g mu {f lambda h}} - {{f lambda g} lambda+mu h} for
/// arbitrary elements; vanishes for a Poisson structure.
LambdaExpr jacobi_on(const Algebra& alg, const DiffPoly& f, const DiffPoly& g, const DiffPoly& p,
                     const BracketMatrix& h);

/// Replaces the last family by -(sum of the other families) - d, the
/// derivation acting on the coefficients. Result has one family less, except
/// for a single-family input where the parameter becomes -d alone.
LambdaExpr shift_substitute(const Algebra& alg, const LambdaExpr& e);

/// Evolutionary vector field of characteristic X applied to f.
DiffPoly ev_vfield(const Algebra& alg, const std::vector<DiffPoly>& x, const DiffPoly& f);

/// du_i/dt = sum_j H_ij(d) delta h / delta u_j. Defined for D = 1.
std::vector<DiffPoly> hamiltonian_flow(const Algebra& alg, const DiffPoly& h,
                                       const BracketMatrix& hmat);

/// Density of the Lie bracket of local functionals; vanishing mod dV means
/// the functionals are in involution. Defined for D = 1.
DiffPoly functional_bracket(const Algebra& alg, const DiffPoly& f, const DiffPoly& g,
                            const BracketMatrix& hmat);

} // namespace pva

#endif
