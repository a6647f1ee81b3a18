#pragma once

/**
 * @file error.hpp
 * @brief The single exception type thrown by the library.
 *
 * Every failure carries an ErrorCode. The code decides the process exit
 * status used by the command-line tool (see exit_status()).
 */

#include <stdexcept>
#include <string>
#include <string_view>

namespace k3tower {

enum class ErrorCode {
    // configuration / domain errors
    InvalidEll,
    InvalidLevel,
    NotPrime,
    NotOdd,
    NotAUnit,
    LevelMismatch,
    NotPrimitive,
    BottomLevel,
    KernelTooLarge,
    NotIntegralizable,
    NotSimilitude,
    NotInvertible,
    NotClosed,
    InvalidBranch,
    MissingCertificate,
    ConfigError,
    // size guard
    TooLarge,
    // internal inconsistency
    ConventionSearchFailed,
    InconsistentRamification,
    InternalInconsistency,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidEll: return "InvalidEll";
        case ErrorCode::InvalidLevel: return "InvalidLevel";
        case ErrorCode::NotPrime: return "NotPrime";
        case ErrorCode::NotOdd: return "NotOdd";
        case ErrorCode::NotAUnit: return "NotAUnit";
        case ErrorCode::LevelMismatch: return "LevelMismatch";
        case ErrorCode::NotPrimitive: return "NotPrimitive";
        case ErrorCode::BottomLevel: return "BottomLevel";
        case ErrorCode::KernelTooLarge: return "KernelTooLarge";
        case ErrorCode::NotIntegralizable: return "NotIntegralizable";
        case ErrorCode::NotSimilitude: return "NotSimilitude";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::InvalidBranch: return "InvalidBranch";
        case ErrorCode::MissingCertificate: return "MissingCertificate";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::ConventionSearchFailed: return "ConventionSearchFailed";
        case ErrorCode::InconsistentRamification: return "InconsistentRamification";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    }
    return "Unknown";
}

/// Exit status of the CLI: 2 config error, 3 size guard, 4 internal inconsistency.
constexpr int exit_status(ErrorCode code) {
    switch (code) {
        case ErrorCode::TooLarge:
            return 3;
        case ErrorCode::ConventionSearchFailed:
        case ErrorCode::InconsistentRamification:
        case ErrorCode::InternalInconsistency:
            return 4;
        default:
            return 2;
    }
}

class error : public std::runtime_error {
public:
    error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace k3tower
