#pragma once

#include <stdexcept>
#include <string>

namespace nhpoly {

// Base class for every failure this library reports deliberately.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define NHPOLY_ERROR_TYPE(Name)                 \
    struct Name : Error {                       \
        using Error::Error;                     \
    }

// lattice
NHPOLY_ERROR_TYPE(DimensionTooLarge);
NHPOLY_ERROR_TYPE(DegeneratePolytope);

// hodge
NHPOLY_ERROR_TYPE(BoxOverflow);
NHPOLY_ERROR_TYPE(InsufficientRange);
NHPOLY_ERROR_TYPE(NotCoprime);
NHPOLY_ERROR_TYPE(UnsupportedParameters);
NHPOLY_ERROR_TYPE(OutOfRange);
NHPOLY_ERROR_TYPE(OutsideValidityDomain);

// gf
NHPOLY_ERROR_TYPE(NotPrime);
NHPOLY_ERROR_TYPE(BudgetExceeded);
NHPOLY_ERROR_TYPE(ZeroCoordinate);

// zeta
NHPOLY_ERROR_TYPE(InexactDivision);
NHPOLY_ERROR_TYPE(PolynomialityViolation);
NHPOLY_ERROR_TYPE(EmptyInput);
NHPOLY_ERROR_TYPE(EndpointMismatch);

// diagonal
NHPOLY_ERROR_TYPE(SingularMatrix);
NHPOLY_ERROR_TYPE(DegeneratePrime);

// families
NHPOLY_ERROR_TYPE(InvalidSpec);

// numeric safety net: int64 rational arithmetic refused an overflowing value
NHPOLY_ERROR_TYPE(ArithmeticOverflow);

#undef NHPOLY_ERROR_TYPE

} // namespace nhpoly
