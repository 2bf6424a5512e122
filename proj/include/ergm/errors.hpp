#pragma once

#include <stdexcept>
#include <string>

namespace ergm {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// graph construction / mutation
struct IndexOutOfRange : Error { using Error::Error; };
struct SelfLoop : Error { using Error::Error; };
struct DuplicateEdge : Error { using Error::Error; };
struct ToggleConflict : Error { using Error::Error; };

// term / model construction
struct MalformedTerm : Error { using Error::Error; };
struct NonFiniteTheta : Error { using Error::Error; };

// estimation
struct TooLarge : Error { using Error::Error; };
struct NonPositiveNullAic : Error { using Error::Error; };

// screening
struct EmptyModelList : Error { using Error::Error; };
struct AllModelsDegenerate : Error { using Error::Error; };

// file ingestion; line is 1-based, 0 when not line-addressable
struct ParseError : Error {
    ParseError(const std::string& what, std::string file, long line)
        : Error(file + ":" + std::to_string(line) + ": " + what),
          file(std::move(file)), line(line) {}
    std::string file;
    long line;
};

struct ConfigError : Error { using Error::Error; };

} // namespace ergm
