#pragma once

#include <stdexcept>
#include <string>

namespace procure {

// Bad inputs or calls outside a routine's mathematical domain.  The CLI maps
// these to exit code 1.
struct InputError : std::invalid_argument {
    explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

// A numerical routine failed to converge.  The CLI maps these to exit code 2.
struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct LengthMismatch : InputError {
    explicit LengthMismatch(const std::string& what) : InputError(what) {}
};

struct NonPositiveBid : InputError {
    explicit NonPositiveBid(const std::string& what) : InputError(what) {}
};

struct DomainError : InputError {
    explicit DomainError(const std::string& what) : InputError(what) {}
};

// find_root_bracketed: f has the same sign at both bracket endpoints.
struct NoSignChange : InputError {
    explicit NoSignChange(const std::string& what) : InputError(what) {}
};

// integrate_tail: the claimed decay exponent makes the integral infinite.
struct Divergent : InputError {
    explicit Divergent(const std::string& what) : InputError(what) {}
};

// Myerson payment integral requires alpha > 1.
struct DivergentPayment : InputError {
    explicit DivergentPayment(const std::string& what) : InputError(what) {}
};

// Tullock contest with fewer than two agents valuing the budget.
struct NoEquilibrium : InputError {
    explicit NoEquilibrium(const std::string& what) : InputError(what) {}
};

// Paid-as-bid PNE requires alpha > n/(n-1).
struct AlphaTooSmall : InputError {
    explicit AlphaTooSmall(const std::string& what) : InputError(what) {}
};

struct NoConvergence : NumericError {
    explicit NoConvergence(const std::string& what) : NumericError(what) {}
};

} // namespace procure
