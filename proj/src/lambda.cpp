#include "pva/lambda.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace pva {

namespace {

uint32_t exp_total(const LambdaExpr::Exp& e) { return std::accumulate(e.begin(), e.end(), 0u); }

// Storage order: graded-lex, larger first.
struct ExpBefore {
    bool operator()(const LambdaExpr::Exp& a, const LambdaExpr::Exp& b) const {
        uint32_t ta = exp_total(a), tb = exp_total(b);
        if (ta != tb) return ta > tb;
        return a > b;
    }
};

} // namespace

LambdaExpr LambdaExpr::from_poly(DiffPoly p, uint32_t dims, uint32_t fams) {
    LambdaExpr x(dims, fams);
    if (!p.is_zero()) x.terms_.push_back({Exp(size_t(dims) * fams, 0), std::move(p)});
    return x;
}

LambdaExpr LambdaExpr::param(uint32_t dims, uint32_t fams, uint32_t fam, uint32_t alpha) {
    LambdaExpr x(dims, fams);
    Exp e(size_t(dims) * fams, 0);
    e.at(size_t(fam) * dims + alpha) = 1;
    x.terms_.push_back({std::move(e), DiffPoly::from_scalar(Scalar::constant(1))});
    return x;
}

LambdaExpr LambdaExpr::make(uint32_t dims, uint32_t fams, std::vector<Term> terms) {
    std::map<Exp, DiffPoly, ExpBefore> acc;
    for (auto& [e, p] : terms) {
        auto it = acc.find(e);
        if (it == acc.end())
            acc.emplace(std::move(e), std::move(p));
        else
            it->second += p;
    }
    LambdaExpr x(dims, fams);
    for (auto& [e, p] : acc)
        if (!p.is_zero()) x.terms_.push_back({e, std::move(p)});
    return x;
}

DiffPoly LambdaExpr::coeff(const Exp& e) const {
    for (const auto& [ex, p] : terms_)
        if (ex == e) return p;
    return {};
}

uint32_t LambdaExpr::degree(uint32_t fam) const {
    uint32_t d = 0;
    for (const auto& [e, p] : terms_) {
        uint32_t s = 0;
        for (uint32_t a = 0; a < dims_; ++a) s += e[size_t(fam) * dims_ + a];
        d = std::max(d, s);
    }
    return d;
}

LambdaExpr& LambdaExpr::operator+=(const LambdaExpr& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
        *this = o;
        return *this;
    }
    if (dims_ != o.dims_ || fams_ != o.fams_) throw DomainError("lambda expression shape mismatch");
    ExpBefore before;
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].first == o.terms_[j].first) {
            DiffPoly p = terms_[i].second + o.terms_[j].second;
            if (!p.is_zero()) out.push_back({terms_[i].first, std::move(p)});
            ++i, ++j;
        } else if (before(terms_[i].first, o.terms_[j].first)) {
            out.push_back(terms_[i++]);
        } else {
            out.push_back(o.terms_[j++]);
        }
    }
    while (i < terms_.size()) out.push_back(terms_[i++]);
    while (j < o.terms_.size()) out.push_back(o.terms_[j++]);
    terms_ = std::move(out);
    return *this;
}

LambdaExpr& LambdaExpr::operator-=(const LambdaExpr& o) { return *this += -o; }

LambdaExpr operator-(const LambdaExpr& a) {
    LambdaExpr x = a;
    for (auto& [e, p] : x.terms_) p = -p;
    return x;
}

LambdaExpr operator*(const DiffPoly& p, const LambdaExpr& x) {
    if (p.is_zero()) return LambdaExpr(x.dims_, x.fams_);
    LambdaExpr out(x.dims_, x.fams_);
    for (const auto& [e, c] : x.terms_) {
        DiffPoly q = p * c;
        if (!q.is_zero()) out.terms_.push_back({e, std::move(q)});
    }
    return out;
}

LambdaExpr operator*(const Scalar& s, const LambdaExpr& x) {
    return DiffPoly::from_scalar(s) * x;
}

LambdaExpr operator*(const LambdaExpr& a, const LambdaExpr& b) {
    if (a.dims_ != b.dims_ || a.fams_ != b.fams_) throw DomainError("lambda expression shape mismatch");
    std::vector<LambdaExpr::Term> out;
    for (const auto& [ea, pa] : a.terms_)
        for (const auto& [eb, pb] : b.terms_) {
            LambdaExpr::Exp e = ea;
            for (size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
            out.push_back({std::move(e), pa * pb});
        }
    return LambdaExpr::make(a.dims_, a.fams_, std::move(out));
}

bool operator==(const LambdaExpr& a, const LambdaExpr& b) {
    return a.dims_ == b.dims_ && a.fams_ == b.fams_ && a.terms_ == b.terms_;
}

LambdaExpr LambdaExpr::promote(uint32_t fams, const std::vector<uint32_t>& fam_map) const {
    if (fam_map.size() != fams_) throw DomainError("family map size mismatch");
    LambdaExpr out(dims_, fams);
    std::vector<Term> terms;
    for (const auto& [e, p] : terms_) {
        Exp ne(size_t(dims_) * fams, 0);
        for (uint32_t f = 0; f < fams_; ++f)
            for (uint32_t a = 0; a < dims_; ++a)
                ne.at(size_t(fam_map[f]) * dims_ + a) += e[size_t(f) * dims_ + a];
        terms.push_back({std::move(ne), p});
    }
    return make(dims_, fams, std::move(terms));
}

int32_t LambdaExpr::param_degree(size_t param) const {
    int32_t d = 0;
    for (const auto& [e, p] : terms_) d = std::max(d, p.param_degree(param));
    return d;
}

LambdaExpr LambdaExpr::substitute_param(size_t param, const Scalar& value) const {
    std::vector<Term> terms;
    for (const auto& [e, p] : terms_) terms.push_back({e, p.substitute_param(param, value)});
    return make(dims_, fams_, std::move(terms));
}

LambdaExpr apply_shift(const Algebra& alg, const LambdaExpr& x, uint32_t fam, uint32_t alpha,
                       bool negate) {
    std::vector<LambdaExpr::Term> out;
    for (const auto& [e, p] : x.terms()) {
        LambdaExpr::Exp up = e;
        up.at(size_t(fam) * x.dims() + alpha) += 1;
        out.push_back({std::move(up), negate ? -p : p});
        DiffPoly dp = total_derivative(alg, p, alpha);
        if (!dp.is_zero()) out.push_back({e, negate ? -dp : std::move(dp)});
    }
    return LambdaExpr::make(x.dims(), x.fams(), std::move(out));
}

LambdaExpr apply_shift(const Algebra& alg, const LambdaExpr& x, uint32_t fam, const MultiIndex& n,
                       bool negate) {
    LambdaExpr y = x;
    for (uint32_t alpha = 0; alpha < n.size(); ++alpha)
        for (uint32_t k = 0; k < n[alpha]; ++k) y = apply_shift(alg, y, fam, alpha, negate);
    return y;
}

LambdaExpr apply_entry(const Algebra& alg, const LambdaExpr& h, const LambdaExpr& x, uint32_t fam) {
    if (h.fams() != 1) throw DomainError("bracket entry must have a single parameter family");
    LambdaExpr acc(x.dims(), x.fams());
    for (const auto& [p, hp] : h.terms()) {
        LambdaExpr y = apply_shift(alg, x, fam, p, false);
        acc += hp * y;
    }
    return acc;
}

DiffPoly apply_entry_at_d(const Algebra& alg, const LambdaExpr& h, const DiffPoly& v) {
    DiffPoly acc;
    for (const auto& [p, hp] : h.terms()) acc += hp * total_derivative(alg, v, p);
    return acc;
}

BracketMatrix::BracketMatrix(uint32_t n, uint32_t dims) : n_(n), dims_(dims) {
    entries_.assign(size_t(n) * n, LambdaExpr(dims, 1));
}

bool operator==(const BracketMatrix& a, const BracketMatrix& b) {
    return a.n_ == b.n_ && a.dims_ == b.dims_ && a.entries_ == b.entries_;
}

BracketMatrix BracketMatrix::substitute_param(size_t param, const Scalar& value) const {
    BracketMatrix out(n_, dims_);
    for (size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k].substitute_param(param, value);
    return out;
}

BracketMatrix BracketMatrix::pencil(const BracketMatrix& other, const Scalar& z) const {
    if (other.n_ != n_ || other.dims_ != dims_) throw DomainError("bracket matrix shape mismatch");
    BracketMatrix out(n_, dims_);
    for (size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = entries_[k] + z * other.entries_[k];
    return out;
}

LambdaExpr master_bracket(const Algebra& alg, const DiffPoly& f, const DiffPoly& g,
                          const BracketMatrix& h) {
    if (h.n() != alg.n() || h.dims() != alg.d()) throw DomainError("bracket matrix shape mismatch");
    LambdaExpr acc(alg.d(), 1);
    auto gsup = support(alg, g);
    auto fsup = support(alg, f);
    for (const DerivKey& kg : gsup) {
        DiffPoly gn = partial_derivative(alg, g, kg);
        if (gn.is_zero()) continue;
        for (const DerivKey& kf : fsup) {
            DiffPoly fm = partial_derivative(alg, f, kf);
            if (fm.is_zero()) continue;
            LambdaExpr x = LambdaExpr::from_poly(std::move(fm), alg.d(), 1);
            x = apply_shift(alg, x, 0, kf.order, true);
            x = apply_entry(alg, h.at(kf.gen, kg.gen), x, 0);
            x = apply_shift(alg, x, 0, kg.order, false);
            acc += gn * x;
        }
    }
    return acc;
}

namespace {

LambdaExpr times_exp_monomial(const LambdaExpr& x, const LambdaExpr::Exp& mono) {
    std::vector<LambdaExpr::Term> out;
    for (const auto& [e, c] : x.terms()) {
        LambdaExpr::Exp ne = e;
        for (size_t k = 0; k < ne.size(); ++k) ne[k] += mono[k];
        out.push_back({std::move(ne), c});
    }
    return LambdaExpr::make(x.dims(), x.fams(), std::move(out));
}

} // namespace

LambdaExpr shift_substitute(const Algebra& alg, const LambdaExpr& e) {
    uint32_t fams = e.fams();
    uint32_t act = fams - 1; // families that survive
    uint32_t out_fams = act > 0 ? act : 1;
    uint32_t d = e.dims();
    LambdaExpr acc(d, out_fams);
    for (const auto& [exp, c] : e.terms()) {
        LambdaExpr y = LambdaExpr::from_poly(c, d, out_fams);
        for (uint32_t alpha = 0; alpha < d; ++alpha) {
            uint32_t m = exp[size_t(act) * d + alpha];
            for (uint32_t k = 0; k < m; ++k) {
                // y <- -( sum over surviving families of lambda_{fam,alpha} + d_alpha ) y
                std::vector<LambdaExpr::Term> terms;
                for (const auto& [ye, yc] : y.terms()) {
                    for (uint32_t fam = 0; fam < act; ++fam) {
                        LambdaExpr::Exp up = ye;
                        up[size_t(fam) * d + alpha] += 1;
                        terms.push_back({std::move(up), -yc});
                    }
                    DiffPoly dp = total_derivative(alg, yc, alpha);
                    if (!dp.is_zero()) terms.push_back({ye, -dp});
                }
                y = LambdaExpr::make(d, out_fams, std::move(terms));
            }
        }
        LambdaExpr::Exp rest(size_t(out_fams) * d, 0);
        for (uint32_t fam = 0; fam < act; ++fam)
            for (uint32_t alpha = 0; alpha < d; ++alpha)
                rest[size_t(fam) * d + alpha] = exp[size_t(fam) * d + alpha];
        acc += times_exp_monomial(y, rest);
    }
    return acc;
}

BracketMatrix skew_residual(const Algebra& alg, const BracketMatrix& h, Exec exec) {
    uint32_t n = h.n();
    BracketMatrix out(n, h.dims());
    auto compute = [&](uint32_t i, uint32_t j) {
        LambdaExpr swapped = h.at(j, i).promote(2, {1});
        out.at(i, j) = h.at(i, j) + shift_substitute(alg, swapped);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for collapse(2) schedule(dynamic)
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j) compute(i, j);
    } else {
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j) compute(i, j);
    }
    return out;
}

namespace {

// nu -> lambda + mu: expands a one-family expression into two families by the
// binomial theorem, per derivation.
LambdaExpr subst_param_sum(const LambdaExpr& y) {
    uint32_t d = y.dims();
    std::vector<LambdaExpr::Term> out;
    for (const auto& [q, c] : y.terms()) {
        // iterate over r <= q componentwise
        LambdaExpr::Exp r(d, 0);
        for (;;) {
            Rat coeff = 1;
            for (uint32_t a = 0; a < d; ++a) coeff *= rat_binom(q[a], r[a]);
            LambdaExpr::Exp e(size_t(2) * d, 0);
            for (uint32_t a = 0; a < d; ++a) {
                e[a] = r[a];
                e[size_t(d) + a] = q[a] - r[a];
            }
            out.push_back({std::move(e), Scalar::constant(coeff) * c});
            uint32_t a = 0;
            while (a < d) {
                if (r[a] < q[a]) {
                    ++r[a];
                    break;
                }
                r[a] = 0;
                ++a;
            }
            if (a == d) break;
        }
    }
    return LambdaExpr::make(d, 2, std::move(out));
}

} // namespace

LambdaExpr jacobi_on(const Algebra& alg, const DiffPoly& f, const DiffPoly& g, const DiffPoly& p,
                     const BracketMatrix& h) {
    uint32_t d = alg.d();
    LambdaExpr res(d, 2);
    // {f_lambda {g_mu p}}
    {
        LambdaExpr inner = master_bracket(alg, g, p, h);
        for (const auto& [m, c] : inner.terms()) {
            LambdaExpr t = master_bracket(alg, f, c, h).promote(2, {0});
            LambdaExpr::Exp mono(size_t(2) * d, 0);
            for (uint32_t a = 0; a < d; ++a) mono[size_t(d) + a] = m[a];
            res += times_exp_monomial(t, mono);
        }
    }
    // -{g_mu {f_lambda p}}
    {
        LambdaExpr inner = master_bracket(alg, f, p, h);
        for (const auto& [m, c] : inner.terms()) {
            LambdaExpr t = master_bracket(alg, g, c, h).promote(2, {1});
            LambdaExpr::Exp mono(size_t(2) * d, 0);
            for (uint32_t a = 0; a < d; ++a) mono[a] = m[a];
            res -= times_exp_monomial(t, mono);
        }
    }
    // -{{f_lambda g}_{lambda+mu} p}
    {
        LambdaExpr outer = master_bracket(alg, f, g, h);
        for (const auto& [m, c] : outer.terms()) {
            LambdaExpr t = subst_param_sum(master_bracket(alg, c, p, h));
            LambdaExpr::Exp mono(size_t(2) * d, 0);
            for (uint32_t a = 0; a < d; ++a) mono[a] = m[a];
            res -= times_exp_monomial(t, mono);
        }
    }
    return res;
}

JacobiResidual::JacobiResidual(uint32_t n, uint32_t dims) : n_(n) {
    entries_.assign(size_t(n) * n * n, LambdaExpr(dims, 2));
}

LambdaExpr& JacobiResidual::at(uint32_t i, uint32_t j, uint32_t k) {
    return entries_.at((size_t(i) * n_ + j) * n_ + k);
}

const LambdaExpr& JacobiResidual::at(uint32_t i, uint32_t j, uint32_t k) const {
    return entries_.at((size_t(i) * n_ + j) * n_ + k);
}

bool JacobiResidual::all_zero() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const LambdaExpr& e) { return e.is_zero(); });
}

JacobiResidual jacobi_residual(const Algebra& alg, const BracketMatrix& h, Exec exec) {
    uint32_t n = h.n();
    JacobiResidual out(n, alg.d());
    std::vector<DiffPoly> gens;
    for (uint32_t i = 0; i < n; ++i) gens.push_back(DiffPoly::gen(i, alg));
    int64_t total = int64_t(n) * n * n;
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int64_t idx = 0; idx < total; ++idx) {
            uint32_t i = uint32_t(idx / (n * n)), j = uint32_t((idx / n) % n), k = uint32_t(idx % n);
            out.at(i, j, k) = jacobi_on(alg, gens[i], gens[j], gens[k], h);
        }
    } else {
        for (int64_t idx = 0; idx < total; ++idx) {
            uint32_t i = uint32_t(idx / (n * n)), j = uint32_t((idx / n) % n), k = uint32_t(idx % n);
            out.at(i, j, k) = jacobi_on(alg, gens[i], gens[j], gens[k], h);
        }
    }
    return out;
}

DiffPoly ev_vfield(const Algebra& alg, const std::vector<DiffPoly>& x, const DiffPoly& f) {
    if (x.size() != alg.n()) throw DomainError("characteristic length mismatch");
    DiffPoly acc;
    for (const DerivKey& k : support(alg, f)) {
        DiffPoly pf = partial_derivative(alg, f, k);
        if (pf.is_zero()) continue;
        acc += total_derivative(alg, x[k.gen], k.order) * pf;
    }
    return acc;
}

std::vector<DiffPoly> hamiltonian_flow(const Algebra& alg, const DiffPoly& h,
                                       const BracketMatrix& hmat) {
    if (alg.d() != 1) throw DomainError("hamiltonian flows are defined for D = 1");
    std::vector<DiffPoly> var(alg.n());
    for (uint32_t j = 0; j < alg.n(); ++j) var[j] = variational_derivative(alg, h, j);
    std::vector<DiffPoly> flow(alg.n());
    for (uint32_t i = 0; i < alg.n(); ++i)
        for (uint32_t j = 0; j < alg.n(); ++j)
            // H_ij = {u_j lambda u_i}
            flow[i] += apply_entry_at_d(alg, hmat.at(j, i), var[j]);
    return flow;
}

DiffPoly functional_bracket(const Algebra& alg, const DiffPoly& f, const DiffPoly& g,
                            const BracketMatrix& hmat) {
    if (alg.d() != 1) throw DomainError("functional brackets are defined for D = 1");
    DiffPoly acc;
    for (uint32_t i = 0; i < alg.n(); ++i) {
        DiffPoly vf = variational_derivative(alg, f, i);
        if (vf.is_zero()) continue;
        for (uint32_t j = 0; j < alg.n(); ++j) {
            DiffPoly vg = variational_derivative(alg, g, j);
            if (vg.is_zero()) continue;
            acc += vg * apply_entry_at_d(alg, hmat.at(i, j), vf);
        }
    }
    return acc;
}

} // namespace pva
