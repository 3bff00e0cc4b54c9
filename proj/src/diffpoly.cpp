#include "pva/diffpoly.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace pva {

Algebra::Algebra(std::vector<std::string> generators, uint32_t derivations, Params params,
                 std::vector<FuncSig> functions)
    : gens_(std::move(generators)), dims_(derivations), params_(std::move(params)),
      funcs_(std::move(functions)) {
    if (gens_.empty()) throw DomainError("algebra needs at least one generator");
    if (dims_ < 1) throw DomainError("algebra needs at least one derivation");
    for (size_t i = 0; i < gens_.size(); ++i)
        for (size_t j = i + 1; j < gens_.size(); ++j)
            if (gens_[i] == gens_[j]) throw DomainError("duplicate generator name: " + gens_[i]);
    for (const auto& f : funcs_) {
        if (f.args.empty()) throw DomainError("function symbol needs at least one argument: " + f.name);
        for (size_t k = 0; k + 1 < f.args.size(); ++k)
            if (f.args[k] >= f.args[k + 1])
                throw DomainError("function arguments must be strictly increasing: " + f.name);
        if (f.args.back() >= gens_.size()) throw DomainError("function argument out of range: " + f.name);
    }
}

uint32_t Algebra::gen_index(const std::string& name) const {
    for (uint32_t i = 0; i < gens_.size(); ++i)
        if (gens_[i] == name) return i;
    throw DomainError("unknown generator: " + name);
}

bool Algebra::has_gen(const std::string& name) const {
    return std::find(gens_.begin(), gens_.end(), name) != gens_.end();
}

bool Algebra::has_func(const std::string& name) const {
    for (const auto& f : funcs_)
        if (f.name == name) return true;
    return false;
}

uint32_t Algebra::func_index(const std::string& name) const {
    for (uint32_t i = 0; i < funcs_.size(); ++i)
        if (funcs_[i].name == name) return i;
    throw DomainError("unknown function symbol: " + name);
}

uint32_t Monomial::total_degree() const {
    uint32_t s = 0;
    for (const auto& [k, e] : derivs) s += e;
    for (const auto& [k, e] : funcs) s += e;
    return s;
}

uint32_t Monomial::total_deriv_order() const {
    uint32_t s = 0;
    for (const auto& [k, e] : derivs) s += e * mi_total(k.order);
    return s;
}

bool operator<(const Monomial& a, const Monomial& b) {
    uint32_t da = a.total_degree(), db = b.total_degree();
    if (da != db) return da > db; // higher degree first
    if (a.derivs != b.derivs) return a.derivs < b.derivs;
    return a.funcs < b.funcs;
}

namespace {

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.derivs.reserve(a.derivs.size() + b.derivs.size());
    {
        size_t i = 0, j = 0;
        while (i < a.derivs.size() && j < b.derivs.size()) {
            if (a.derivs[i].first == b.derivs[j].first) {
                out.derivs.push_back({a.derivs[i].first, a.derivs[i].second + b.derivs[j].second});
                ++i, ++j;
            } else if (a.derivs[i].first < b.derivs[j].first) {
                out.derivs.push_back(a.derivs[i++]);
            } else {
                out.derivs.push_back(b.derivs[j++]);
            }
        }
        while (i < a.derivs.size()) out.derivs.push_back(a.derivs[i++]);
        while (j < b.derivs.size()) out.derivs.push_back(b.derivs[j++]);
    }
    {
        size_t i = 0, j = 0;
        while (i < a.funcs.size() && j < b.funcs.size()) {
            if (a.funcs[i].first == b.funcs[j].first) {
                out.funcs.push_back({a.funcs[i].first, a.funcs[i].second + b.funcs[j].second});
                ++i, ++j;
            } else if (a.funcs[i].first < b.funcs[j].first) {
                out.funcs.push_back(a.funcs[i++]);
            } else {
                out.funcs.push_back(b.funcs[j++]);
            }
        }
        while (i < a.funcs.size()) out.funcs.push_back(a.funcs[i++]);
        while (j < b.funcs.size()) out.funcs.push_back(b.funcs[j++]);
    }
    return out;
}

// Removes one power of `key` (which must be present), returns old exponent.
template <typename K>
uint32_t take_factor(std::vector<std::pair<K, uint32_t>>& v, size_t idx) {
    uint32_t e = v[idx].second;
    if (e == 1)
        v.erase(v.begin() + idx);
    else
        v[idx].second = e - 1;
    return e;
}

} // namespace

DiffPoly DiffPoly::from_scalar(Scalar s) {
    DiffPoly p;
    if (!s.is_zero()) p.terms_.push_back({Monomial{}, std::move(s)});
    return p;
}

DiffPoly DiffPoly::constant(Rat r) {
    return from_scalar(Scalar::constant(std::move(r)));
}

DiffPoly DiffPoly::gen(uint32_t i, const Algebra& alg) {
    return jet(DerivKey{i, MultiIndex(alg.d(), 0)});
}

DiffPoly DiffPoly::jet(DerivKey k) {
    DiffPoly p;
    Monomial m;
    m.derivs.push_back({std::move(k), 1});
    p.terms_.push_back({std::move(m), Scalar::constant(1)});
    return p;
}

DiffPoly DiffPoly::func(FuncKey f) {
    DiffPoly p;
    Monomial m;
    m.funcs.push_back({std::move(f), 1});
    p.terms_.push_back({std::move(m), Scalar::constant(1)});
    return p;
}

DiffPoly DiffPoly::make(std::vector<Term> terms) {
    std::map<Monomial, Scalar> acc;
    for (auto& [m, s] : terms) {
        auto it = acc.find(m);
        if (it == acc.end())
            acc.emplace(std::move(m), std::move(s));
        else
            it->second += s;
    }
    DiffPoly p;
    for (auto& [m, s] : acc)
        if (!s.is_zero()) p.terms_.push_back({m, std::move(s)});
    return p;
}

Scalar DiffPoly::constant_term() const {
    for (const auto& [m, s] : terms_)
        if (m.is_empty()) return s;
    return Scalar{};
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
        terms_ = o.terms_;
        return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        if (terms_[i].first == o.terms_[j].first) {
            Scalar s = terms_[i].second + o.terms_[j].second;
            if (!s.is_zero()) out.push_back({terms_[i].first, std::move(s)});
            ++i, ++j;
        } else if (terms_[i].first < o.terms_[j].first) {
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

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) { return *this += -o; }

DiffPoly operator-(const DiffPoly& a) {
    DiffPoly p = a;
    for (auto& [m, s] : p.terms_) s = -s;
    return p;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    if (a.terms_.empty() || b.terms_.empty()) return {};
    std::map<Monomial, Scalar> acc;
    for (const auto& [ma, sa] : a.terms_)
        for (const auto& [mb, sb] : b.terms_) {
            Monomial m = mono_mul(ma, mb);
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(std::move(m), sa * sb);
            else
                it->second += sa * sb;
        }
    DiffPoly p;
    for (auto& [m, s] : acc)
        if (!s.is_zero()) p.terms_.push_back({m, std::move(s)});
    return p;
}

DiffPoly operator*(const Scalar& s, const DiffPoly& p) {
    if (s.is_zero()) return {};
    DiffPoly out = p;
    for (auto& [m, c] : out.terms_) c = c * s;
    std::erase_if(out.terms_, [](const auto& t) { return t.second.is_zero(); });
    return out;
}

bool operator<(const DiffPoly& a, const DiffPoly& b) {
    const auto &x = a.terms_, &y = b.terms_;
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (!(x[i].first == y[i].first)) return x[i].first < y[i].first;
        if (!(x[i].second == y[i].second)) return x[i].second < y[i].second;
    }
    return x.size() < y.size();
}

DiffPoly DiffPoly::pow(uint32_t e) const {
    DiffPoly acc = from_scalar(Scalar::constant(1));
    DiffPoly b = *this;
    while (e) {
        if (e & 1) acc = acc * b;
        b = b * b;
        e >>= 1;
    }
    return acc;
}

int32_t DiffPoly::param_degree(size_t param) const {
    int32_t d = 0;
    for (const auto& [m, s] : terms_) d = std::max(d, s.degree(param));
    return d;
}

DiffPoly DiffPoly::substitute_param(size_t param, const Scalar& value) const {
    std::vector<Term> out;
    for (const auto& [m, s] : terms_) out.push_back({m, s.substitute(param, value)});
    return make(std::move(out));
}

DiffPoly DiffPoly::scale_by_deriv_order(const Scalar& scale) const {
    std::vector<Term> out;
    for (const auto& [m, s] : terms_) out.push_back({m, s * scale.pow(int32_t(m.total_deriv_order()))});
    return make(std::move(out));
}

DiffPoly total_derivative(const Algebra& alg, const DiffPoly& p, uint32_t alpha) {
    if (alpha >= alg.d()) throw DomainError("derivation index out of range");
    std::vector<DiffPoly::Term> out;
    for (const auto& [m, s] : p.terms()) {
        // jet factors
        for (size_t idx = 0; idx < m.derivs.size(); ++idx) {
            Monomial rest = m;
            uint32_t e = take_factor(rest.derivs, idx);
            DerivKey raised = m.derivs[idx].first;
            raised.order[alpha] += 1;
            Monomial prod = mono_mul(rest, Monomial{{{raised, 1}}, {}});
            out.push_back({std::move(prod), s * Scalar::constant(rat_of(long(e)))});
        }
        // function-symbol factors, chain rule
        for (size_t idx = 0; idx < m.funcs.size(); ++idx) {
            Monomial rest = m;
            uint32_t e = take_factor(rest.funcs, idx);
            const FuncKey& f = m.funcs[idx].first;
            const FuncSig& sig = alg.func(f.sym);
            for (size_t k = 0; k < sig.args.size(); ++k) {
                FuncKey df = f;
                df.dord[k] += 1;
                MultiIndex ord(alg.d(), 0);
                ord[alpha] = 1;
                Monomial prod = mono_mul(rest, Monomial{{{DerivKey{sig.args[k], std::move(ord)}, 1}},
                                                        {{std::move(df), 1}}});
                out.push_back({std::move(prod), s * Scalar::constant(rat_of(long(e)))});
            }
        }
    }
    return DiffPoly::make(std::move(out));
}

DiffPoly total_derivative(const Algebra& alg, const DiffPoly& p, const MultiIndex& orders) {
    DiffPoly q = p;
    for (uint32_t alpha = 0; alpha < orders.size(); ++alpha)
        for (uint32_t k = 0; k < orders[alpha]; ++k) q = total_derivative(alg, q, alpha);
    return q;
}

DiffPoly partial_derivative(const Algebra& alg, const DiffPoly& p, const DerivKey& key) {
    if (key.gen >= alg.n() || key.order.size() != alg.d())
        throw DomainError("jet variable out of range");
    bool order0 = mi_total(key.order) == 0;
    std::vector<DiffPoly::Term> out;
    for (const auto& [m, s] : p.terms()) {
        for (size_t idx = 0; idx < m.derivs.size(); ++idx) {
            if (!(m.derivs[idx].first == key)) continue;
            Monomial rest = m;
            uint32_t e = take_factor(rest.derivs, idx);
            out.push_back({std::move(rest), s * Scalar::constant(rat_of(long(e)))});
        }
        if (!order0) continue;
        for (size_t idx = 0; idx < m.funcs.size(); ++idx) {
            const FuncKey& f = m.funcs[idx].first;
            const FuncSig& sig = alg.func(f.sym);
            for (size_t k = 0; k < sig.args.size(); ++k) {
                if (sig.args[k] != key.gen) continue;
                Monomial rest = m;
                uint32_t e = take_factor(rest.funcs, idx);
                FuncKey df = f;
                df.dord[k] += 1;
                Monomial prod = mono_mul(rest, Monomial{{}, {{std::move(df), 1}}});
                out.push_back({std::move(prod), s * Scalar::constant(rat_of(long(e)))});
            }
        }
    }
    return DiffPoly::make(std::move(out));
}

std::vector<DerivKey> support(const Algebra& alg, const DiffPoly& p) {
    std::set<DerivKey> keys;
    for (const auto& [m, s] : p.terms()) {
        for (const auto& [k, e] : m.derivs) keys.insert(k);
        for (const auto& [f, e] : m.funcs)
            for (uint32_t a : alg.func(f.sym).args) keys.insert(DerivKey{a, MultiIndex(alg.d(), 0)});
    }
    return {keys.begin(), keys.end()};
}

namespace {

// (-d)^n q, component-wise over the derivations.
DiffPoly neg_total(const Algebra& alg, DiffPoly q, const MultiIndex& n) {
    for (uint32_t alpha = 0; alpha < n.size(); ++alpha)
        for (uint32_t k = 0; k < n[alpha]; ++k) q = -total_derivative(alg, q, alpha);
    return q;
}

} // namespace

DiffPoly variational_derivative(const Algebra& alg, const DiffPoly& p, uint32_t i) {
    DiffPoly acc;
    for (const DerivKey& k : support(alg, p)) {
        if (k.gen != i) continue;
        acc += neg_total(alg, partial_derivative(alg, p, k), k.order);
    }
    return acc;
}

TotalDerivativeWitness is_total_derivative(const Algebra& alg, const DiffPoly& p) {
    if (alg.d() != 1)
        throw DomainError("is_total_derivative supports D = 1 only");
    for (const auto& [m, s] : p.terms())
        if (!m.funcs.empty())
            throw DomainError("is_total_derivative is undecidable for function-symbol densities");
    TotalDerivativeWitness w;
    w.constant_term = p.constant_term();
    w.is_total = w.constant_term.is_zero();
    for (uint32_t i = 0; i < alg.n(); ++i) {
        w.variational.push_back(variational_derivative(alg, p, i));
        if (!w.variational.back().is_zero()) w.is_total = false;
    }
    return w;
}

} // namespace pva
