#include "fmf/error.hpp"

namespace fmf {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotANumber: return "NotANumber";
        case ErrorCode::NotAQuantity: return "NotAQuantity";
        case ErrorCode::NotATimestamp: return "NotATimestamp";
        case ErrorCode::UnterminatedQuote: return "UnterminatedQuote";
        case ErrorCode::UnknownUnit: return "UnknownUnit";
        case ErrorCode::BadExponent: return "BadExponent";
        case ErrorCode::CurrencyNotComparable: return "CurrencyNotComparable";
        case ErrorCode::IncompatibleDimensions: return "IncompatibleDimensions";
        case ErrorCode::NoHeadline: return "NoHeadline";
        case ErrorCode::UnknownCoding: return "UnknownCoding";
        case ErrorCode::BadDelimiter: return "BadDelimiter";
        case ErrorCode::BadColumnSpec: return "BadColumnSpec";
        case ErrorCode::MissingCounterpart: return "MissingCounterpart";
        case ErrorCode::DanglingSymbol: return "DanglingSymbol";
        case ErrorCode::NotValid: return "NotValid";
        case ErrorCode::IncompatibleBounds: return "IncompatibleBounds";
        case ErrorCode::CorruptIndex: return "CorruptIndex";
        case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

}  // namespace fmf
