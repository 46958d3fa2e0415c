#pragma once

#include <cstdint>
#include <utility>

#include "biblio/database.hpp"

namespace biblio {

struct GeneratorParams {
    std::uint32_t n_authors = 10;
    std::pair<std::uint32_t, std::uint32_t> papers_per_author{1, 3}; // inclusive
    std::pair<std::uint32_t, std::uint32_t> refs_per_paper{1, 3};    // inclusive
    std::uint32_t n_fields = 1;
    std::uint64_t seed = 0;
};

/// Deterministic synthetic database. Authors are split into n_fields
/// groups and references are drawn from other authors of the same
/// group, so the result satisfies the domain conditions and has at
/// least n_fields citation-disjoint components. A repair pass gives
/// every author at least one outgoing reference. Identical parameters
/// give identical databases.
///
/// Throws DomainError for infeasible parameters (a field with fewer
/// than two authors, zero papers per author, an empty range).
Database generate_random_db(const GeneratorParams& params);

} // namespace biblio
