#ifndef PVA_PARSE_HPP
#define PVA_PARSE_HPP

#include "pva/lambda.hpp"

#include <string>
#include <vector>

namespace pva {

/// Names of the formal bracket parameters, one per family ("lambda", "mu").
/// With D > 1 each name denotes the whole tuple; components are written
/// name[alpha].
using FamilyNames = std::vector<std::string>;

/// Parses an expression in the algebra. Accepted syntax:
///   u, v1            generators (declared names)
///   u', u''          jet variables, D = 1 only
///   d[2]u, d[1]^3u   jet variables by derivation index (1-based)
///   g                declared function symbol
///   D[g,u,u,v]       formal partial of g (arguments with multiplicity)
///   c, z             declared parameters
///   lambda, mu[2]    bracket parameters when family names are supplied
///   + - * / ^ ( )    arithmetic; '/' only by invertible scalar monomials;
///                    '^' by integers (negative only on scalar monomials)
/// Reserved words: d, D.
LambdaExpr parse_lambda(const Algebra& alg, const std::string& text, const FamilyNames& fams);

/// Same grammar without bracket parameters.
DiffPoly parse_poly(const Algebra& alg, const std::string& text);

/// Canonical text form; parse_lambda(print_lambda(x)) == x exactly.
std::string print_lambda(const Algebra& alg, const LambdaExpr& x, const FamilyNames& fams);
std::string print_poly(const Algebra& alg, const DiffPoly& p);

/// (a*lambda + d)-collected view: x written as sum over m of
/// (a*lambda + d)^m applied to plain densities. Unique by a top-down
/// degree argument; display only, canonical comparisons use print_lambda.
std::string print_collected(const Algebra& alg, const LambdaExpr& x, const std::string& fam,
                            const Rat& a = 2);

} // namespace pva

#endif
