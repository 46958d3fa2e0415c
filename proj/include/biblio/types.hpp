#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace biblio {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structural problems: id collisions, unknown ids, duplicate or
/// degenerate edges, malformed input documents.
class DatabaseError : public Error {
public:
    using Error::Error;
};

/// A transformation or computation was asked to leave the supported
/// domain: splitting a cited paper, non-partition reassignment, zero
/// normalizers, invalid parameters.
class DomainError : public Error {
public:
    using Error::Error;
};

/// canonical_reduction on an author without citations. Kept separate so
/// callers can report the trivial-reduction outcome distinctly.
class UncitedAuthorError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Bad command-line usage: unknown index or axiom names, malformed flags.
class UsageError : public Error {
public:
    using Error::Error;
};

/// A size guard tripped (dense oracle, concave index, --max-papers).
class SizeGuardError : public Error {
public:
    using Error::Error;
};

using AuthorIdx = std::uint32_t;
using PaperIdx = std::uint32_t;
inline constexpr std::uint32_t kNoIdx = 0xffffffffu;

inline constexpr const char* kVersion = "1.0.0";

} // namespace biblio
