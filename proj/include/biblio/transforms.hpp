#pragma once

#include <map>
#include <string>
#include <vector>

#include "biblio/database.hpp"

namespace biblio {

/// Union of two databases with disjoint author and paper id sets.
/// Throws DatabaseError naming the first colliding id.
Database disjoint_union(const Database& d, const Database& d2);

/// Returns d plus the single edge (cited, citing). The edge must be
/// absent. With strict=true (the default), cited and citing may not
/// belong to the same portfolio.
Database add_reference(const Database& d, const std::string& cited,
                       const std::string& citing, bool strict = true);

/// Splits the uncited paper q: q keeps the references in part1, a new
/// paper new_id owned by the same author receives the rest. part1 must
/// be a subset of q's reference list. An empty part (either side) is
/// allowed unless strict_nonempty is set.
Database split_paper(const Database& d, const std::string& q,
                     const std::vector<std::string>& part1,
                     const std::string& new_id, bool strict_nonempty = false);

/// Citation permutation: new reference list of every paper q is the old
/// reference list of sigma(q). sigma must be a permutation of the paper
/// set mapping every portfolio onto itself; papers absent from the map
/// are fixed points.
Database permute_citations(const Database& d,
                           const std::map<std::string, std::string>& sigma);

/// Replaces the author-to-paper assignment. new_portfolio must
/// partition the same paper set; the author set may grow or shrink.
/// The result must satisfy the domain conditions.
Database reassign_papers(
    const Database& d,
    const std::map<std::string, std::vector<std::string>>& new_portfolio);

/// Isomorphic copy under the given id bijections.
Database relabel(const Database& d, const Relabeling& r);

struct EraseResult {
    Database db;
    std::vector<std::string> erased_authors; // in removal order
};

/// Repeatedly removes authors all of whose references stay inside their
/// own portfolio (including authors with no references at all), with
/// their papers and incident edges, until a fixpoint. Throws
/// DomainError("no eligible authors") when nothing remains.
EraseResult erase_self_only_authors(const Database& d);

} // namespace biblio
