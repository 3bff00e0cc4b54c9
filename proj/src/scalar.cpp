#include "pva/scalar.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace pva {

Params::Params(std::vector<std::string> names) : names_(std::move(names)) {
    for (size_t i = 0; i < names_.size(); ++i)
        for (size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j]) throw DomainError("duplicate parameter name: " + names_[i]);
}

size_t Params::index(const std::string& name) const {
    for (size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    throw DomainError("unknown parameter: " + name);
}

bool Params::contains(const std::string& name) const {
    for (const auto& n : names_)
        if (n == name) return true;
    return false;
}

size_t Params::declare(const std::string& name) {
    if (contains(name)) throw DomainError("parameter already declared: " + name);
    names_.push_back(name);
    return names_.size() - 1;
}

namespace {

void trim(ExpVec& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

// Lexicographic with implicit zero-extension; returns <0, 0, >0.
int exp_cmp(const ExpVec& a, const ExpVec& b) {
    size_t n = std::max(a.size(), b.size());
    for (size_t i = 0; i < n; ++i) {
        int32_t x = i < a.size() ? a[i] : 0;
        int32_t y = i < b.size() ? b[i] : 0;
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

struct ExpBefore {
    bool operator()(const ExpVec& a, const ExpVec& b) const { return exp_cmp(a, b) > 0; }
};

} // namespace

Scalar Scalar::constant(Rat r) {
    Scalar s;
    if (r != 0) s.terms_.push_back({ExpVec{}, std::move(r)});
    return s;
}

Scalar Scalar::param(size_t idx, int32_t power) {
    if (power == 0) return constant(1);
    ExpVec e(idx + 1, 0);
    e[idx] = power;
    Scalar s;
    s.terms_.push_back({std::move(e), Rat(1)});
    return s;
}

Scalar Scalar::make(std::vector<Term> terms) {
    std::map<ExpVec, Rat, ExpBefore> acc;
    for (auto& [e, r] : terms) {
        trim(e);
        acc[std::move(e)] += r;
    }
    Scalar s;
    for (auto& [e, r] : acc)
        if (r != 0) s.terms_.push_back({e, std::move(r)});
    return s;
}

bool Scalar::is_one() const {
    return terms_.size() == 1 && terms_[0].first.empty() && terms_[0].second == 1;
}

bool Scalar::is_rational() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_[0].first.empty();
}

Rat Scalar::rational_value() const {
    if (terms_.empty()) return 0;
    if (!is_rational()) throw DomainError("scalar is not a plain rational");
    return terms_[0].second;
}

int32_t Scalar::degree(size_t param) const {
    int32_t d = 0;
    for (const auto& [e, r] : terms_)
        if (param < e.size()) d = std::max(d, e[param]);
    return d;
}

int32_t Scalar::low_degree(size_t param) const {
    int32_t d = 0;
    for (const auto& [e, r] : terms_)
        if (param < e.size()) d = std::min(d, e[param]);
    return d;
}

Scalar Scalar::inverse() const {
    if (terms_.size() != 1) throw DomainError("scalar inverse requires a monomial");
    ExpVec e = terms_[0].first;
    for (auto& x : e) x = -x;
    Scalar s;
    s.terms_.push_back({std::move(e), 1 / terms_[0].second});
    return s;
}

Scalar Scalar::pow(int32_t e) const {
    if (is_zero()) {
        if (e <= 0) throw DomainError("zero scalar has no negative or zeroth inverse power");
        return Scalar{};
    }
    if (e < 0) return inverse().pow(-e);
    Scalar acc = constant(1);
    Scalar b = *this;
    uint32_t k = uint32_t(e);
    while (k) {
        if (k & 1) acc = acc * b;
        b = b * b;
        k >>= 1;
    }
    return acc;
}

Scalar Scalar::substitute(size_t param, const Scalar& value) const {
    std::vector<Term> out;
    for (const auto& [e, r] : terms_) {
        int32_t k = param < e.size() ? e[param] : 0;
        ExpVec reste = e;
        if (param < reste.size()) reste[param] = 0;
        Scalar rest;
        trim(reste);
        rest.terms_.push_back({std::move(reste), r});
        Scalar sub = value.pow(k); // throws for k<0 unless value is an invertible monomial
        for (auto& t : (rest * sub).terms_) out.push_back(t);
    }
    return make(std::move(out));
}

Scalar& Scalar::operator+=(const Scalar& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) {
        terms_ = o.terms_;
        return *this;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = exp_cmp(terms_[i].first, o.terms_[j].first);
        if (c == 0) {
            Rat r = terms_[i].second + o.terms_[j].second;
            if (r != 0) out.push_back({terms_[i].first, std::move(r)});
            ++i, ++j;
        } else if (c > 0) {
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

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar operator-(const Scalar& a) {
    Scalar s = a;
    for (auto& [e, r] : s.terms_) r = -r;
    return s;
}

Scalar operator*(const Scalar& a, const Scalar& b) {
    if (a.terms_.empty() || b.terms_.empty()) return Scalar{};
    std::vector<Scalar::Term> out;
    out.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& [ea, ra] : a.terms_)
        for (const auto& [eb, rb] : b.terms_) {
            ExpVec e(std::max(ea.size(), eb.size()), 0);
            for (size_t k = 0; k < ea.size(); ++k) e[k] += ea[k];
            for (size_t k = 0; k < eb.size(); ++k) e[k] += eb[k];
            out.push_back({std::move(e), ra * rb});
        }
    return Scalar::make(std::move(out));
}

bool operator<(const Scalar& a, const Scalar& b) {
    const auto &x = a.terms_, &y = b.terms_;
    for (size_t i = 0; i < x.size() && i < y.size(); ++i) {
        int c = exp_cmp(x[i].first, y[i].first);
        if (c != 0) return c < 0;
        if (x[i].second != y[i].second) return x[i].second < y[i].second;
    }
    return x.size() < y.size();
}

std::string Scalar::str(const Params& params) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, r] : terms_) {
        Rat coeff = r;
        if (first) {
            if (coeff < 0) {
                os << "-";
                coeff = -coeff;
            }
        } else {
            os << (coeff < 0 ? " - " : " + ");
            if (coeff < 0) coeff = -coeff;
        }
        first = false;
        bool any_param = !e.empty();
        bool printed = false;
        if (coeff != 1 || !any_param) {
            os << coeff.get_str();
            printed = true;
        }
        for (size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (printed) os << "*";
            os << params.name(k);
            if (e[k] != 1) os << "^" << e[k];
            printed = true;
        }
    }
    return os.str();
}

} // namespace pva
