#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "biblio/citation_matrix.hpp"
#include "biblio/database.hpp"

namespace biblio {

/// Histogram of an author's per-paper citation counts: counts[k] papers
/// received exactly k citations.
struct CitationMultiset {
    std::map<int, int> counts;
    std::string owner;

    int paper_total() const;
};

CitationMultiset citation_multiset(const Database& d, const std::string& author);

/// Largest h such that at least h papers have at least h citations.
int h_index(const CitationMultiset& m);

/// Square root of the sum of squared citation counts.
double euclidean_index(const CitationMultiset& m);

/// Each citing paper contributes 1/R_q to every cited paper.
double fractional_count(const Database& d, const std::string& author);

/// Fractional count with the citing author's paper count divided out;
/// sums to the number of authors over any domain member.
double comparable_direct_index(const Database& d, const std::string& author);

/// Total citations received by papers citing the author's papers; a
/// paper citing two of her papers is counted twice.
double comprehensive_index(const Database& d, const std::string& author);

/// Collapses d to the canonical two-author database that preserves the
/// target author's citation multiset: she keeps her papers and their
/// citation counts, a counterpart author owns one single-reference
/// paper per received citation, and the smallest paper of the target
/// cites the counterpart's smallest paper to stay inside the domain.
/// Throws UncitedAuthorError when the author has no citations at all.
Database canonical_reduction(const Database& d, const std::string& author);

/// A named influence index with a batch evaluator over all authors.
struct IndexDescriptor {
    enum class Kind { counting_scheme, non_counting };

    std::string name;
    Kind kind = Kind::non_counting;
    bool integer_valued = false;
    std::function<std::map<std::string, double>(const Database&)> evaluate;

    double evaluate_one(const Database& d, const std::string& author) const;
};

/// The five indices showing the characterization axioms independent:
/// each satisfies all axioms except the one in its name.
std::vector<IndexDescriptor> independence_indices();

/// Full registry: h, euclid, fractional, comparable-direct,
/// comprehensive, influence (at the given parameters) and the five
/// independence indices. Names are unique.
std::vector<IndexDescriptor> builtin_indices(const InfluenceParams& params);

const IndexDescriptor* find_index(std::span<const IndexDescriptor> registry,
                                  std::string_view name);

} // namespace biblio
