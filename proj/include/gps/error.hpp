#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gps {

enum class ErrorKind {
    SingularOrderMatrix,
    DimensionMismatch,
    NonPositiveSupportElement,
    IncompatibleAmbient,
    BoxUnderflow,
    BoxNotContained,
    OutsideBox,
    ZeroSeries,
    LeadingTermUncertain,
    NotPositive,
    PositiveCharacteristic,
    BadVariableIndex,
    NotVariables,
    NotParameters,
    NotRegular,
    NonTermination,
    BadDimension,
    ExponentOverflow,
    ResourceLimit,
    InvalidArgument,
    ParseError,
    UndeclaredVariable,
    MissingBox,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace gps
