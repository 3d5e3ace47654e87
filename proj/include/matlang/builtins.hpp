#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "matlang/numeric.hpp"

namespace matlang {

struct EvalConfig;

/// A named pointwise function on complex scalars, total on its domain.
/// Partial operations are extended: division by zero yields zero, x/sqrt(y)
/// with y not a positive real yields zero. Comparisons return 1 or 0 and
/// return 0 when an input is not real. Boolean functions treat exactly 1 as
/// true. In the Float tower, zero tests and comparisons use the configured
/// epsilon; the Exact tower tests exactly.
struct BuiltinFn {
    std::string name;
    int arity = 1;
    /// Usable in the Exact tower (false for the sqrt family).
    bool exact_ok = true;
    std::function<FloatComplex(std::span<const FloatComplex>, const EvalConfig&)> apply_float;
    std::function<RatComplex(std::span<const RatComplex>, const EvalConfig&)> apply_exact;
};

/// The fixed function repertoire:
///   monus, add, sub, mul, div, recip, recip1p, le, eq, ne0, gt0,
///   and, or, not, andnot, divsqrt, conj, re, im,
/// plus constant functions named `const:<rational>` or
/// `const:<rational>+<rational>i` of arity 1 (the argument is ignored).
const std::map<std::string, BuiltinFn>& builtin_registry();

/// Resolves a function name, handling the dynamic `const:...` family.
std::optional<BuiltinFn> builtin_lookup(const std::string& name);

/// Spells the constant function name for a value ("const:7", "const:1/2+3i").
std::string const_fn_name(const RatComplex& c);

}  // namespace matlang
