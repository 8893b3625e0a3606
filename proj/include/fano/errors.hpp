#ifndef FANO_ERRORS_HPP
#define FANO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fano {

// Every library error derives from Error so callers can catch them uniformly.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define FANO_ERROR(Name)                                \
    struct Name : Error {                               \
        explicit Name(const std::string& what)          \
            : Error(std::string(#Name ": ") + what) {}  \
    }

FANO_ERROR(ZeroPolynomial);
FANO_ERROR(DivisionByZero);
FANO_ERROR(NonExactDivision);
FANO_ERROR(IncompleteInput);
FANO_ERROR(OutOfRange);
FANO_ERROR(ParameterViolation);
FANO_ERROR(RegimeMismatch);
FANO_ERROR(NotPrime);
FANO_ERROR(NoEmbedding);
FANO_ERROR(DimensionMismatch);
FANO_ERROR(SmoothnessRequired);
FANO_ERROR(InsufficientSamples);
FANO_ERROR(ParseError);
FANO_ERROR(UsageError);
FANO_ERROR(IoError);

#undef FANO_ERROR

} // namespace fano

#endif
