#pragma once

#include <string_view>
#include <vector>

#include "biblio/database.hpp"

namespace biblio {

/// Small canonical databases used by the axiom checks and the tests.
/// Known names: impossibility-d, impossibility-d2, lemma1-aux,
/// lemma1-aux2, mutual-pair, chain-3. Throws DomainError on anything else.
Database fixture(std::string_view name);

std::vector<std::string_view> fixture_names();

} // namespace biblio
