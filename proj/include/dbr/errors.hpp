#ifndef DBR_ERRORS_HPP
#define DBR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dbr {

// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define DBR_DEFINE_ERROR(Name)                                     \
    struct Name : Error {                                          \
        explicit Name(const std::string& what_arg)                 \
            : Error(std::string(#Name) + ": " + what_arg) {}       \
    }

// polynomial core
DBR_DEFINE_ERROR(ZeroPolynomial);
DBR_DEFINE_ERROR(DegreeZero);
DBR_DEFINE_ERROR(CohnInapplicable);
DBR_DEFINE_ERROR(Borderline);
DBR_DEFINE_ERROR(BadParameters);

// Blaschke products and pairs
DBR_DEFINE_ERROR(PoleHit);
DBR_DEFINE_ERROR(NotAPair);
DBR_DEFINE_ERROR(RequiresIZeroAtOrigin);

// Hardy-space numerics
DBR_DEFINE_ERROR(PoleOnCircle);
DBR_DEFINE_ERROR(TailTooLarge);
DBR_DEFINE_ERROR(OrderMismatch);
DBR_DEFINE_ERROR(DegenerateGram);
DBR_DEFINE_ERROR(NotOuter);

// Clark measures
DBR_DEFINE_ERROR(RootOffCircle);
DBR_DEFINE_ERROR(DegenerateDerivative);
DBR_DEFINE_ERROR(TooCloseToBoundary);
DBR_DEFINE_ERROR(InvariantViolation);

// H(b) machinery
DBR_DEFINE_ERROR(NotInHb);
DBR_DEFINE_ERROR(PoleAtPoint);
DBR_DEFINE_ERROR(IllConditioned);

// CLI / configuration
DBR_DEFINE_ERROR(ConfigError);

#undef DBR_DEFINE_ERROR

}  // namespace dbr

#endif  // DBR_ERRORS_HPP
