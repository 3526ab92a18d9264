#include "gps/error.hpp"

namespace gps {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::SingularOrderMatrix: return "SingularOrderMatrix";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonPositiveSupportElement: return "NonPositiveSupportElement";
    case ErrorKind::IncompatibleAmbient: return "IncompatibleAmbient";
    case ErrorKind::BoxUnderflow: return "BoxUnderflow";
    case ErrorKind::BoxNotContained: return "BoxNotContained";
    case ErrorKind::OutsideBox: return "OutsideBox";
    case ErrorKind::ZeroSeries: return "ZeroSeries";
    case ErrorKind::LeadingTermUncertain: return "LeadingTermUncertain";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::PositiveCharacteristic: return "PositiveCharacteristic";
    case ErrorKind::BadVariableIndex: return "BadVariableIndex";
    case ErrorKind::NotVariables: return "NotVariables";
    case ErrorKind::NotParameters: return "NotParameters";
    case ErrorKind::NotRegular: return "NotRegular";
    case ErrorKind::NonTermination: return "NonTermination";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::ExponentOverflow: return "ExponentOverflow";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UndeclaredVariable: return "UndeclaredVariable";
    case ErrorKind::MissingBox: return "MissingBox";
    }
    return "Unknown";
}

}  // namespace gps
