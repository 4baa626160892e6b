#ifndef GALINDEX_ERRORS_HPP
#define GALINDEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace galindex {

/* Error categories map onto the CLI exit codes: InputError -> 2,
 * ResourceError (precision or enumeration budget) -> 3. Disagreements
 * between formula and oracle are reported, not thrown. */

struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceError : std::runtime_error {
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PrimeMismatch : InputError {
    explicit PrimeMismatch(const std::string& msg) : InputError(msg) {}
};

struct NotInvertibleToPrecision : ResourceError {
    explicit NotInvertibleToPrecision(const std::string& msg) : ResourceError(msg) {}
};

struct PrecisionExhausted : ResourceError {
    explicit PrecisionExhausted(const std::string& msg) : ResourceError(msg) {}
};

struct BudgetExceeded : ResourceError {
    explicit BudgetExceeded(const std::string& msg) : ResourceError(msg) {}
};

struct NotIrreducible : InputError {
    explicit NotIrreducible(const std::string& msg) : InputError(msg) {}
};

struct NotEisenstein : InputError {
    explicit NotEisenstein(const std::string& msg) : InputError(msg) {}
};

struct NotGalois : InputError {
    explicit NotGalois(const std::string& msg) : InputError(msg) {}
};

struct NoPthRootsOfUnity : InputError {
    explicit NoPthRootsOfUnity(const std::string& msg) : InputError(msg) {}
};

struct InvalidJump : InputError {
    explicit InvalidJump(const std::string& msg) : InputError(msg) {}
};

struct InvalidProfile : InputError {
    explicit InvalidProfile(const std::string& msg) : InputError(msg) {}
};

struct InvalidData : InputError {
    explicit InvalidData(const std::string& msg) : InputError(msg) {}
};

struct GcdViolation : InputError {
    explicit GcdViolation(const std::string& msg) : InputError(msg) {}
};

struct UnsupportedBase : InputError {
    explicit UnsupportedBase(const std::string& msg) : InputError(msg) {}
};

struct NotGenerator : InputError {
    explicit NotGenerator(const std::string& msg) : InputError(msg) {}
};

struct SearchExhausted : ResourceError {
    explicit SearchExhausted(const std::string& msg) : ResourceError(msg) {}
};

/* A computed quantity violated a structural constraint that is supposed to
 * hold unconditionally; indicates a bug, not bad input. */
struct InvariantViolation : std::logic_error {
    explicit InvariantViolation(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace galindex

#endif
