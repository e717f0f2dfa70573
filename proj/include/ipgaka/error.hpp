#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ipgaka {

/// Every domain failure the library reports. The CLI prints the enumerator
/// name verbatim, so renaming one is a user-visible change.
enum class ErrorCode {
    // cgrid
    InvalidDimension,
    WidthCountMismatch,
    NonPalindromicWidths,
    WidthNotByteMultiple,
    IndexOutOfRange,
    MalformedGridFile,
    ValidationFailed,
    // keygen
    GridTooSmall,
    NoCompositionFound,
    SequenceGridMismatch,
    ColumnExhausted,
    MalformedKeySequenceFile,
    InsufficientSample,
    // imsi_crypto
    InvalidImsi,
    InvalidBitLength,
    PrimeGenerationFailed,
    BlockOutOfRange,
    EphemeralOutOfRange,
    NonInvertibleElement,
    BlockTooLargeForModulus,
    MalformedParamsFile,
    // key_hierarchy
    NccOverflow,
    // protocol / wire
    MalformedMessage,
    MalformedStateFile,
    // simnet
    UnknownEndpoint,
    UnknownScenario,
    // analysis
    EmptyInput,
    ZeroLifetime,
    ConfigInvalid,
};

std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail);

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

private:
    ErrorCode code_;
};

}  // namespace ipgaka
