#include "ipgaka/error.hpp"

namespace ipgaka {

std::string_view error_name(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::WidthCountMismatch: return "WidthCountMismatch";
    case ErrorCode::NonPalindromicWidths: return "NonPalindromicWidths";
    case ErrorCode::WidthNotByteMultiple: return "WidthNotByteMultiple";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::MalformedGridFile: return "MalformedGridFile";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::GridTooSmall: return "GridTooSmall";
    case ErrorCode::NoCompositionFound: return "NoCompositionFound";
    case ErrorCode::SequenceGridMismatch: return "SequenceGridMismatch";
    case ErrorCode::ColumnExhausted: return "ColumnExhausted";
    case ErrorCode::MalformedKeySequenceFile: return "MalformedKeySequenceFile";
    case ErrorCode::InsufficientSample: return "InsufficientSample";
    case ErrorCode::InvalidImsi: return "InvalidImsi";
    case ErrorCode::InvalidBitLength: return "InvalidBitLength";
    case ErrorCode::PrimeGenerationFailed: return "PrimeGenerationFailed";
    case ErrorCode::BlockOutOfRange: return "BlockOutOfRange";
    case ErrorCode::EphemeralOutOfRange: return "EphemeralOutOfRange";
    case ErrorCode::NonInvertibleElement: return "NonInvertibleElement";
    case ErrorCode::BlockTooLargeForModulus: return "BlockTooLargeForModulus";
    case ErrorCode::MalformedParamsFile: return "MalformedParamsFile";
    case ErrorCode::NccOverflow: return "NccOverflow";
    case ErrorCode::MalformedMessage: return "MalformedMessage";
    case ErrorCode::MalformedStateFile: return "MalformedStateFile";
    case ErrorCode::UnknownEndpoint: return "UnknownEndpoint";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::ZeroLifetime: return "ZeroLifetime";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code)
{
}

}  // namespace ipgaka
