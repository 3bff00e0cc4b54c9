#ifndef PVA_ALGEBRA_HPP
#define PVA_ALGEBRA_HPP

#include "pva/scalar.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace pva {

/// Signature of an abstract order-0 function symbol: a named function of a
/// subset of the generators (undifferentiated). Hydrodynamic-type metrics
/// g_ij(u) and Christoffel data b^k_ij(u) are the canonical use.
struct FuncSig {
    std::string name;
    std::vector<uint32_t> args; // generator indices, 0-based, strictly increasing
};

/// Declares a differential polynomial algebra: N generators, D commuting
/// derivations, formal parameters, and the available function symbols.
class Algebra {
public:
    Algebra(std::vector<std::string> generators, uint32_t derivations, Params params,
            std::vector<FuncSig> functions = {});

    uint32_t n() const { return uint32_t(gens_.size()); }
    uint32_t d() const { return dims_; }
    const std::string& gen_name(uint32_t i) const { return gens_.at(i); }
    const std::vector<std::string>& gen_names() const { return gens_; }
    /// 0-based index of a generator name; throws if unknown.
    uint32_t gen_index(const std::string& name) const;
    bool has_gen(const std::string& name) const;

    const Params& params() const { return params_; }

    const std::vector<FuncSig>& funcs() const { return funcs_; }
    const FuncSig& func(uint32_t id) const { return funcs_.at(id); }
    bool has_func(const std::string& name) const;
    uint32_t func_index(const std::string& name) const;

private:
    std::vector<std::string> gens_;
    uint32_t dims_;
    Params params_;
    std::vector<FuncSig> funcs_;
};

} // namespace pva

#endif
