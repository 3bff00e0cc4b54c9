#include "pva/parse.hpp"

#include <cctype>
#include <optional>
#include <sstream>

namespace pva {

namespace {

struct Lexer {
    const std::string& src;
    size_t pos = 0;

    explicit Lexer(const std::string& s) : src(s) { skip(); }

    void skip() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool eof() const { return pos >= src.size(); }
    char peek() const { return pos < src.size() ? src[pos] : '\0'; }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg + " at position " + std::to_string(pos) + " in '" + src + "'");
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            skip();
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    std::optional<std::string> ident() {
        if (eof()) return std::nullopt;
        char c = src[pos];
        if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') return std::nullopt;
        size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        std::string s = src.substr(start, pos - start);
        skip();
        return s;
    }

    std::optional<unsigned long> number() {
        if (eof() || !std::isdigit(static_cast<unsigned char>(src[pos]))) return std::nullopt;
        size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        std::string s = src.substr(start, pos - start);
        skip();
        return std::stoul(s);
    }

    uint32_t primes() {
        uint32_t n = 0;
        while (pos < src.size() && src[pos] == '\'') {
            ++n;
            ++pos;
        }
        skip();
        return n;
    }
};

struct Parser {
    const Algebra& alg;
    const FamilyNames& fams;
    Lexer lex;

    Parser(const Algebra& a, const std::string& text, const FamilyNames& f)
        : alg(a), fams(f), lex(text) {}

    uint32_t nfams() const { return fams.empty() ? 1 : uint32_t(fams.size()); }

    LambdaExpr lift(DiffPoly p) const { return LambdaExpr::from_poly(std::move(p), alg.d(), nfams()); }

    LambdaExpr parse() {
        LambdaExpr v = expr();
        if (!lex.eof()) lex.fail("trailing input");
        return v;
    }

    LambdaExpr expr() {
        LambdaExpr v = term();
        for (;;) {
            if (lex.accept('+'))
                v += term();
            else if (lex.accept('-'))
                v -= term();
            else
                return v;
        }
    }

    LambdaExpr term() {
        LambdaExpr v = unary();
        for (;;) {
            if (lex.accept('*')) {
                v = v * unary();
            } else if (lex.accept('/')) {
                v = v * invert(unary());
            } else {
                return v;
            }
        }
    }

    LambdaExpr unary() {
        if (lex.accept('-')) return -unary();
        return power();
    }

    LambdaExpr power() {
        LambdaExpr base = atom();
        if (!lex.accept('^')) return base;
        bool neg = lex.accept('-');
        auto n = lex.number();
        if (!n) lex.fail("expected integer exponent");
        if (neg) {
            LambdaExpr inv = invert(base);
            return ipow(inv, *n);
        }
        return ipow(base, *n);
    }

    static LambdaExpr ipow(const LambdaExpr& b, unsigned long e) {
        LambdaExpr acc = LambdaExpr::from_poly(DiffPoly::constant(1), b.dims(), b.fams());
        LambdaExpr sq = b;
        while (e) {
            if (e & 1) acc = acc * sq;
            sq = sq * sq;
            e >>= 1;
        }
        return acc;
    }

    /// Inverts a value; only scalar monomials are invertible.
    LambdaExpr invert(const LambdaExpr& v) {
        if (v.terms().size() != 1) lex.fail("division by a non-monomial");
        const auto& [le, p] = v.terms().front();
        for (uint32_t k : le)
            if (k) lex.fail("division by a bracket parameter");
        if (p.size() != 1 || !p.terms().front().first.is_empty())
            lex.fail("division by a non-scalar");
        const Scalar& s = p.terms().front().second;
        return lift(DiffPoly::from_scalar(s.inverse()));
    }

    LambdaExpr atom() {
        if (auto n = lex.number()) return lift(DiffPoly::constant(rat_of(long(*n))));
        if (lex.accept('(')) {
            LambdaExpr v = expr();
            lex.expect(')');
            return v;
        }
        auto id = lex.ident();
        if (!id) lex.fail("expected a factor");
        if (*id == "d" && lex.peek() == '[') return jet_prefixed();
        if (*id == "D" && lex.peek() == '[') return func_partial();
        if (alg.has_gen(*id)) {
            uint32_t g = alg.gen_index(*id);
            uint32_t n = lex.primes();
            if (n > 0 && alg.d() != 1) lex.fail("prime derivatives need D = 1; use d[k]");
            MultiIndex order(alg.d(), 0);
            if (n > 0) order[0] = n;
            return lift(DiffPoly::jet(DerivKey{g, std::move(order)}));
        }
        if (alg.has_func(*id)) {
            uint32_t f = alg.func_index(*id);
            return lift(DiffPoly::func(FuncKey{f, std::vector<uint32_t>(alg.func(f).args.size(), 0)}));
        }
        if (alg.params().contains(*id))
            return lift(DiffPoly::from_scalar(Scalar::param(alg.params().index(*id))));
        for (uint32_t f = 0; f < fams.size(); ++f) {
            if (*id != fams[f]) continue;
            uint32_t comp = 0;
            if (lex.accept('[')) {
                auto n = lex.number();
                if (!n || *n < 1 || *n > alg.d()) lex.fail("bad derivation index");
                comp = uint32_t(*n) - 1;
                lex.expect(']');
            } else if (alg.d() != 1) {
                lex.fail("parameter '" + *id + "' needs a component index for D > 1");
            }
            return LambdaExpr::param(alg.d(), nfams(), f, comp);
        }
        lex.fail("unknown name '" + *id + "'");
    }

    // d[k](^m) ... applied to a generator
    LambdaExpr jet_prefixed() {
        MultiIndex order(alg.d(), 0);
        for (;;) {
            lex.expect('[');
            auto k = lex.number();
            if (!k || *k < 1 || *k > alg.d()) lex.fail("bad derivation index");
            uint32_t rep = 1;
            lex.expect(']');
            if (lex.accept('^')) {
                auto m = lex.number();
                if (!m) lex.fail("expected exponent");
                rep = uint32_t(*m);
            }
            order[*k - 1] += rep;
            auto id = lex.ident();
            if (!id) lex.fail("expected a generator after d[..]");
            if (*id == "d" && lex.peek() == '[') continue;
            if (!alg.has_gen(*id)) lex.fail("unknown generator '" + *id + "'");
            return lift(DiffPoly::jet(DerivKey{alg.gen_index(*id), std::move(order)}));
        }
    }

    // D[g, u, u, v]
    LambdaExpr func_partial() {
        lex.expect('[');
        auto id = lex.ident();
        if (!id || !alg.has_func(*id)) lex.fail("unknown function symbol in D[..]");
        uint32_t f = alg.func_index(*id);
        const FuncSig& sig = alg.func(f);
        std::vector<uint32_t> dord(sig.args.size(), 0);
        while (lex.accept(',')) {
            auto arg = lex.ident();
            if (!arg || !alg.has_gen(*arg)) lex.fail("unknown generator in D[..]");
            uint32_t g = alg.gen_index(*arg);
            bool found = false;
            for (size_t k = 0; k < sig.args.size(); ++k)
                if (sig.args[k] == g) {
                    ++dord[k];
                    found = true;
                    break;
                }
            if (!found) lex.fail("'" + *arg + "' is not an argument of " + sig.name);
        }
        lex.expect(']');
        return lift(DiffPoly::func(FuncKey{f, std::move(dord)}));
    }
};

std::string jet_str(const Algebra& alg, const DerivKey& k) {
    std::ostringstream os;
    uint32_t total = mi_total(k.order);
    if (alg.d() == 1 && total <= 3) {
        os << alg.gen_name(k.gen);
        for (uint32_t i = 0; i < total; ++i) os << '\'';
        return os.str();
    }
    for (uint32_t a = 0; a < alg.d(); ++a) {
        if (k.order[a] == 0) continue;
        os << "d[" << a + 1 << "]";
        if (k.order[a] > 1) os << "^" << k.order[a];
    }
    os << alg.gen_name(k.gen);
    return os.str();
}

std::string func_str(const Algebra& alg, const FuncKey& f) {
    const FuncSig& sig = alg.func(f.sym);
    if (mi_total(f.dord) == 0) return sig.name;
    std::ostringstream os;
    os << "D[" << sig.name;
    for (size_t k = 0; k < sig.args.size(); ++k)
        for (uint32_t r = 0; r < f.dord[k]; ++r) os << "," << alg.gen_name(sig.args[k]);
    os << "]";
    return os.str();
}

// Fully distributed printable atom: rational * parameter monomial * jet/func
// monomial * bracket-parameter monomial. Printing distributed keeps signs
// trivial and the round trip exact.
struct FlatTerm {
    Rat q;
    ExpVec pexp;
    const Monomial* mono;
    LambdaExpr::Exp lexp;
};

std::string flat_str(const Algebra& alg, const FlatTerm& t, const FamilyNames& fams) {
    std::vector<std::string> factors;
    for (size_t k = 0; k < t.pexp.size(); ++k) {
        if (t.pexp[k] == 0) continue;
        std::string s = alg.params().name(k);
        if (t.pexp[k] != 1) s += "^" + std::to_string(t.pexp[k]);
        factors.push_back(std::move(s));
    }
    if (t.mono) {
        for (const auto& [k, e] : t.mono->derivs) {
            std::string s = jet_str(alg, k);
            if (e != 1) s += "^" + std::to_string(e);
            factors.push_back(std::move(s));
        }
        for (const auto& [k, e] : t.mono->funcs) {
            std::string s = func_str(alg, k);
            if (e != 1) s += "^" + std::to_string(e);
            factors.push_back(std::move(s));
        }
    }
    for (size_t k = 0; k < t.lexp.size(); ++k) {
        if (t.lexp[k] == 0) continue;
        uint32_t fam = uint32_t(k) / alg.d(), comp = uint32_t(k) % alg.d();
        std::string s = fams.at(fam);
        if (alg.d() > 1) s += "[" + std::to_string(comp + 1) + "]";
        if (t.lexp[k] != 1) s += "^" + std::to_string(t.lexp[k]);
        factors.push_back(std::move(s));
    }
    std::ostringstream os;
    Rat q = t.q < 0 ? Rat(-t.q) : t.q;
    bool printed = false;
    if (q != 1 || factors.empty()) {
        os << q.get_str();
        printed = true;
    }
    for (const auto& f : factors) {
        if (printed) os << "*";
        os << f;
        printed = true;
    }
    return os.str();
}

std::string join_terms(const Algebra& alg, const std::vector<FlatTerm>& terms,
                       const FamilyNames& fams) {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms) {
        if (first) {
            if (t.q < 0) os << "-";
        } else {
            os << (t.q < 0 ? " - " : " + ");
        }
        first = false;
        os << flat_str(alg, t, fams);
    }
    return os.str();
}

std::vector<FlatTerm> flatten(const LambdaExpr& x) {
    std::vector<FlatTerm> out;
    for (const auto& [le, p] : x.terms())
        for (const auto& [m, s] : p.terms())
            for (const auto& [pe, q] : s.terms()) out.push_back({q, pe, &m, le});
    return out;
}

} // namespace

LambdaExpr parse_lambda(const Algebra& alg, const std::string& text, const FamilyNames& fams) {
    Parser p(alg, text, fams);
    return p.parse();
}

DiffPoly parse_poly(const Algebra& alg, const std::string& text) {
    LambdaExpr x = parse_lambda(alg, text, {});
    DiffPoly out;
    for (const auto& [le, c] : x.terms()) {
        for (uint32_t k : le)
            if (k) throw ParseError("bracket parameter not allowed here: '" + text + "'");
        out += c;
    }
    return out;
}

std::string print_lambda(const Algebra& alg, const LambdaExpr& x, const FamilyNames& fams) {
    return join_terms(alg, flatten(x), fams);
}

std::string print_poly(const Algebra& alg, const DiffPoly& p) {
    LambdaExpr x = LambdaExpr::from_poly(p, alg.d(), 1);
    return join_terms(alg, flatten(x), {"lambda"});
}

std::string print_collected(const Algebra& alg, const LambdaExpr& x, const std::string& fam,
                            const Rat& a) {
    if (alg.d() != 1 || x.fams() != 1 || a == 0) return print_lambda(alg, x, {fam});
    std::ostringstream os;
    LambdaExpr rest = x;
    bool first = true;
    while (!rest.is_zero()) {
        uint32_t n = rest.degree(0);
        DiffPoly top = rest.coeff(LambdaExpr::Exp{n});
        Scalar scale = Scalar::constant(1 / rat_pow(a, n));
        DiffPoly g = scale * top;
        // subtract (a*lambda + d)^n g
        LambdaExpr sub = LambdaExpr::from_poly(g, 1, 1);
        for (uint32_t k = 0; k < n; ++k) {
            LambdaExpr shifted = apply_shift(alg, sub, 0, 0, false); // (lambda + d) sub
            // want (a*lambda + d): add (a-1)*lambda*sub
            std::vector<LambdaExpr::Term> extra;
            for (const auto& [e, c] : sub.terms()) {
                LambdaExpr::Exp up = e;
                up[0] += 1;
                extra.push_back({std::move(up), Scalar::constant(a - 1) * c});
            }
            sub = shifted + LambdaExpr::make(1, 1, std::move(extra));
        }
        rest -= sub;
        if (!first) os << " + ";
        first = false;
        if (n == 0)
            os << print_poly(alg, g);
        else {
            os << "(" << (a == 1 ? "" : a.get_str() + "*") << fam << "+d)";
            if (n > 1) os << "^" << n;
            os << "[" << print_poly(alg, g) << "]";
        }
    }
    if (first) return "0";
    return os.str();
}

} // namespace pva
