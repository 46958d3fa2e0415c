#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biblio/citation_matrix.hpp"
#include "biblio/database.hpp"

namespace biblio {

enum class IndexMode { base, weighted, noself };

std::string_view index_mode_name(IndexMode mode);
IndexMode parse_index_mode(std::string_view name);

/// Exogenous weights for the extended index variants: per-paper
/// contribution shares (each paper's shares sum to 1; the default gives
/// the full share to the portfolio owner) and per-author debt weights
/// (default all ones). The concave exponent belongs to the alternative
/// index and is unrelated to the debt weights despite the shared symbol
/// in common notation.
struct WeightScheme {
    std::map<std::string, std::map<std::string, double>> paper_shares;
    std::map<std::string, double> author_weights;
    std::optional<double> concave_exponent;

    void validate(const Database& d, double share_tolerance = 1e-9) const;
};

struct AuthorInfluenceResult {
    std::map<std::string, double> per_author;  // I values
    std::map<std::string, double> normalizers; // P', P'' or P''' per author
    IndexMode mode = IndexMode::base;
    InfluenceParams params;
    /// Certified tolerance on sum(I) = A: per-paper tail bounds summed.
    double sum_tolerance = 0.0;
    std::vector<std::string> erased_authors; // noself mode only
};

/// P'_b = sum over b's papers of the total exerted influence sigma(q).
/// Total on any database; zero values signal input outside the domain
/// and are rejected by the index computations.
std::map<std::string, double> normalizer_p_prime(const Database& d,
                                                 const InfluenceParams& params);

/// P''_b (weighted) or P'''_b (weighted minus own-share backflow).
std::map<std::string, double> weighted_normalizers(const Database& d,
                                                   const InfluenceParams& params,
                                                   const WeightScheme& weights,
                                                   IndexMode mode);

/// AI(a,b): influence exerted by a on b, normalized so each author
/// receives a total of one. Base mode.
double bilateral_author_influence(const Database& d, const InfluenceParams& params,
                                  const std::string& a, const std::string& b);

/// The influence index I(a) = sum_b alpha_b AI(a,b) in the requested
/// mode, computed with two global vector fixpoints (plus per-author
/// self-correction fixpoints in noself mode) rather than the full
/// author-by-author influence matrix.
AuthorInfluenceResult influence_index(const Database& d,
                                      const InfluenceParams& params,
                                      const WeightScheme& weights = {},
                                      IndexMode mode = IndexMode::base);

/// Alternative index with a concave column aggregator; exponent 1
/// reduces to the base index with unit author weights. Needs the full
/// bilateral matrix column by column, so it is guarded to 5000 authors.
std::map<std::string, double> concave_index(const Database& d,
                                            const InfluenceParams& params,
                                            double exponent);

} // namespace biblio
