#pragma once

#include <stdexcept>
#include <string>

namespace tropodegen {

/// Broad failure class, used by the CLI to pick an exit code.
enum class ErrorKind { Input, Numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

#define TROPODEGEN_ERROR(Name, Kind)                                                   \
    class Name : public Error {                                                        \
    public:                                                                            \
        explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {}      \
    };

// Input / combinatorial errors.
TROPODEGEN_ERROR(SchemaError, Input)
TROPODEGEN_ERROR(GluingError, Input)
TROPODEGEN_ERROR(OrientabilityError, Input)
TROPODEGEN_ERROR(TopologyError, Input)
TROPODEGEN_ERROR(PathError, Input)
TROPODEGEN_ERROR(DimensionError, Input)
TROPODEGEN_ERROR(AdmissibilityError, Input)
TROPODEGEN_ERROR(FormError, Input)
TROPODEGEN_ERROR(MatchingError, Input)
TROPODEGEN_ERROR(MissingBasisError, Input)

// Numeric errors.
TROPODEGEN_ERROR(DomainError, Numeric)
TROPODEGEN_ERROR(NoConvergence, Numeric)
TROPODEGEN_ERROR(SingularJacobian, Numeric)
TROPODEGEN_ERROR(DegenerateTripleError, Numeric)
TROPODEGEN_ERROR(ConsistencyError, Numeric)

#undef TROPODEGEN_ERROR

}  // namespace tropodegen
