#pragma once

#include <stdexcept>
#include <string>

namespace bnec {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// field
struct NotPrimePower : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct DivideByZero : Error { using Error::Error; };

// linalg
struct DimensionMismatch : Error { using Error::Error; };
struct KTooLarge : Error { using Error::Error; };

// netgraph
struct ParseError : Error { using Error::Error; };
struct CycleDetected : Error { using Error::Error; };
struct UnreachableReceiver : Error { using Error::Error; };
struct BadProbability : Error { using Error::Error; };
struct UnknownReceiver : Error { using Error::Error; };
struct InsufficientCut : Error { using Error::Error; };

// design
struct InfeasibleRate : Error { using Error::Error; };
struct RankDeficient : Error { using Error::Error; };
struct GuardrailExceeded : Error { using Error::Error; };

struct DesignFailed : Error {
    std::string edge;
    int retries;
    DesignFailed(std::string edge_id, int tries)
        : Error("design failed at edge '" + edge_id + "' after " + std::to_string(tries) +
                " retries; field size is likely too small"),
          edge(std::move(edge_id)),
          retries(tries) {}
};

// codec / decode
struct NotInCodeSpace : Error { using Error::Error; };
struct CodeDefect : Error { using Error::Error; };
struct ErasuresPresent : Error { using Error::Error; };
struct Ambiguous : Error { using Error::Error; };
struct BadDecoder : Error { using Error::Error; };

// channel
struct HeaderOverflow : Error { using Error::Error; };

// analysis
struct NotIndependent : Error { using Error::Error; };

}  // namespace bnec
