#pragma once

#include <stdexcept>
#include <string>

namespace lsieve {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define LSIEVE_ERROR_TYPE(Name)                                              \
    struct Name : Error {                                                    \
        explicit Name(const std::string& msg = #Name) : Error(msg) {}        \
    }

// field / ring construction
LSIEVE_ERROR_TYPE(NonPrime);
LSIEVE_ERROR_TYPE(DegreeZero);
LSIEVE_ERROR_TYPE(ZeroInverse);
LSIEVE_ERROR_TYPE(DivideByZero);
LSIEVE_ERROR_TYPE(ConstantInput);
LSIEVE_ERROR_TYPE(ZeroInput);
LSIEVE_ERROR_TYPE(ParseError);

// laurent / solvers
LSIEVE_ERROR_TYPE(InsufficientPrecision);
LSIEVE_ERROR_TYPE(ProductConditionViolated);
LSIEVE_ERROR_TYPE(SearchSpaceTooLarge);
LSIEVE_ERROR_TYPE(InternalInfeasible);

// characters / L-functions
LSIEVE_ERROR_TYPE(GroupTooLarge);
LSIEVE_ERROR_TYPE(ZeroModulus);
LSIEVE_ERROR_TYPE(ModulusTooLarge);
LSIEVE_ERROR_TYPE(RootFindingFailure);
LSIEVE_ERROR_TYPE(RangeTooLarge);
LSIEVE_ERROR_TYPE(NonIntegerResult);

// engines
LSIEVE_ERROR_TYPE(Cond1Violated);
LSIEVE_ERROR_TYPE(Cond2Violated);
LSIEVE_ERROR_TYPE(NotCoprime);

// quadratic extensions
LSIEVE_ERROR_TYPE(NotImaginary);
LSIEVE_ERROR_TYPE(NotSquarefree);
LSIEVE_ERROR_TYPE(EvenCharacteristic);
LSIEVE_ERROR_TYPE(NotDivisible);
LSIEVE_ERROR_TYPE(NotIrreducible);
LSIEVE_ERROR_TYPE(SearchTooLarge);
LSIEVE_ERROR_TYPE(GenusTooLarge);

// invariant violations that indicate a bug rather than bad input
LSIEVE_ERROR_TYPE(InternalCheckFailed);

#undef LSIEVE_ERROR_TYPE

}  // namespace lsieve
