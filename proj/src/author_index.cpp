#include "biblio/author_index.hpp"

#include <algorithm>
#include <cmath>

#include "biblio/transforms.hpp"

namespace biblio {

std::string_view index_mode_name(IndexMode mode) {
    switch (mode) {
    case IndexMode::base:
        return "base";
    case IndexMode::weighted:
        return "weighted";
    case IndexMode::noself:
        return "noself";
    }
    return "?";
}

IndexMode parse_index_mode(std::string_view name) {
    if (name == "base")
        return IndexMode::base;
    if (name == "weighted")
        return IndexMode::weighted;
    if (name == "noself")
        return IndexMode::noself;
    throw UsageError("unknown mode '" + std::string(name) +
                     "' (expected base, weighted or noself)");
}

void WeightScheme::validate(const Database& d, double share_tolerance) const {
    for (const auto& [paper, shares] : paper_shares) {
        if (!d.find_paper(paper))
            throw DomainError("shares name unknown paper '" + paper + "'");
        double sum = 0.0;
        for (const auto& [author, share] : shares) {
            if (!d.find_author(author))
                throw DomainError("shares of paper '" + paper +
                                  "' name unknown author '" + author + "'");
            if (share < 0.0)
                throw DomainError("share of '" + author + "' on '" + paper +
                                  "' is negative");
            sum += share;
        }
        if (std::abs(sum - 1.0) > share_tolerance)
            throw DomainError("shares of paper '" + paper + "' sum to " +
                              std::to_string(sum) + " instead of 1");
    }
    for (const auto& [author, weight] : author_weights) {
        if (!d.find_author(author))
            throw DomainError("author weight names unknown author '" + author + "'");
        if (weight < 0.0)
            throw DomainError("author weight of '" + author + "' is negative");
    }
    if (concave_exponent && (*concave_exponent < 0.0 || *concave_exponent > 1.0))
        throw DomainError("concave exponent must lie in [0, 1]");
}

namespace {

// Dense, index-based view of a WeightScheme: per paper the (author,
// share) pairs, per author the debt weight alpha.
struct Compiled {
    std::vector<std::size_t> off; // per paper
    std::vector<std::pair<AuthorIdx, double>> entries;
    std::vector<double> alpha;

    // papers carrying a share of the given author, as a seed vector
    void author_share_seed(AuthorIdx a, std::vector<double>& seed) const {
        std::fill(seed.begin(), seed.end(), 0.0);
        for (PaperIdx q = 0; q + 1 < off.size(); ++q)
            for (std::size_t i = off[q]; i < off[q + 1]; ++i)
                if (entries[i].first == a)
                    seed[q] = entries[i].second;
    }
};

Compiled compile(const Database& d, const WeightScheme& w) {
    Compiled c;
    c.off.assign(d.paper_count() + 1, 0);
    c.entries.reserve(d.paper_count());
    for (PaperIdx p = 0; p < d.paper_count(); ++p) {
        const auto it = w.paper_shares.find(d.paper_id(p));
        if (it == w.paper_shares.end()) {
            c.entries.emplace_back(d.owner(p), 1.0);
        } else {
            for (const auto& [author, share] : it->second)
                if (share != 0.0)
                    c.entries.emplace_back(d.author_at(author), share);
        }
        c.off[p + 1] = c.entries.size();
    }
    c.alpha.assign(d.author_count(), 1.0);
    for (const auto& [author, weight] : w.author_weights)
        c.alpha[d.author_at(author)] = weight;
    return c;
}

std::vector<double> p_prime_vec(const Database& d, const std::vector<double>& sigma) {
    std::vector<double> norm(d.author_count(), 0.0);
    for (PaperIdx q = 0; q < d.paper_count(); ++q)
        norm[d.owner(q)] += sigma[q];
    return norm;
}

// P''_b = sum_q w_q^b sigma(q)
std::vector<double> p_second_vec(const Database& d, const Compiled& c,
                                 const std::vector<double>& sigma) {
    std::vector<double> norm(d.author_count(), 0.0);
    for (PaperIdx q = 0; q < d.paper_count(); ++q)
        for (std::size_t i = c.off[q]; i < c.off[q + 1]; ++i)
            norm[c.entries[i].first] += c.entries[i].second * sigma[q];
    return norm;
}

// S_b = sum_{p,q} w_p^b w_q^b PI(p,q): the influence an author's shares
// exert back on her own shares. One fixpoint per share-holding author;
// computed once per batch and reused for P''' and the diagonal removal.
std::vector<double> self_terms(const Database& d, const CitationMatrix& m,
                               const InfluenceParams& params, const Compiled& c) {
    std::vector<double> self(d.author_count(), 0.0);
    std::vector<double> seed(d.paper_count());
    for (AuthorIdx b = 0; b < d.author_count(); ++b) {
        c.author_share_seed(b, seed);
        if (std::all_of(seed.begin(), seed.end(),
                        [](double x) { return x == 0.0; }))
            continue;
        const std::vector<double> pulled = discounted_influence(m, params, seed);
        double acc = 0.0;
        for (PaperIdx p = 0; p < d.paper_count(); ++p)
            if (seed[p] != 0.0)
                acc += seed[p] * pulled[p];
        self[b] = acc;
    }
    return self;
}

std::map<std::string, double> to_author_map(const Database& d,
                                            const std::vector<double>& values) {
    std::map<std::string, double> out;
    for (AuthorIdx a = 0; a < d.author_count(); ++a)
        out[d.author_id(a)] = values[a];
    return out;
}

void require_positive(const Database& d, const std::vector<double>& norm,
                      std::string_view label) {
    for (AuthorIdx a = 0; a < d.author_count(); ++a)
        if (!(norm[a] > 0.0))
            throw DomainError("normalizer " + std::string(label) + " of author '" +
                              d.author_id(a) +
                              "' is not positive; the database lies outside "
                              "the supported domain");
}

} // namespace

std::map<std::string, double> normalizer_p_prime(const Database& d,
                                                 const InfluenceParams& params) {
    const CitationMatrix m = CitationMatrix::build(d);
    return to_author_map(d, p_prime_vec(d, exerted_totals_vec(m, params)));
}

std::map<std::string, double> weighted_normalizers(const Database& d,
                                                   const InfluenceParams& params,
                                                   const WeightScheme& weights,
                                                   IndexMode mode) {
    if (mode == IndexMode::base)
        return normalizer_p_prime(d, params);
    weights.validate(d);
    const Compiled c = compile(d, weights);
    const CitationMatrix m = CitationMatrix::build(d);
    const std::vector<double> sigma = exerted_totals_vec(m, params);
    std::vector<double> norm = p_second_vec(d, c, sigma);
    if (mode == IndexMode::noself) {
        const std::vector<double> self = self_terms(d, m, params, c);
        for (AuthorIdx a = 0; a < d.author_count(); ++a)
            norm[a] -= self[a];
    }
    return to_author_map(d, norm);
}

double bilateral_author_influence(const Database& d, const InfluenceParams& params,
                                  const std::string& a, const std::string& b) {
    const AuthorIdx ai = d.author_at(a);
    const AuthorIdx bi = d.author_at(b);
    const CitationMatrix m = CitationMatrix::build(d);
    const std::vector<double> sigma = exerted_totals_vec(m, params);
    const std::vector<double> norm = p_prime_vec(d, sigma);
    if (!(norm[bi] > 0.0))
        throw DomainError("normalizer P' of author '" + b + "' is not positive");

    std::vector<double> seed(d.paper_count(), 0.0);
    for (PaperIdx q : d.portfolio(bi))
        seed[q] = 1.0;
    const std::vector<double> pulled = discounted_influence(m, params, seed);
    double total = 0.0;
    for (PaperIdx p : d.portfolio(ai))
        total += pulled[p];
    return total / norm[bi];
}

AuthorInfluenceResult influence_index(const Database& d,
                                      const InfluenceParams& params,
                                      const WeightScheme& weights,
                                      IndexMode mode) {
    params.validate();

    AuthorInfluenceResult result;
    result.mode = mode;
    result.params = params;

    std::optional<Database> reduced; // noself erasure result, when used
    const Database* db = &d;
    WeightScheme effective = weights;
    if (mode == IndexMode::noself) {
        EraseResult er = erase_self_only_authors(d);
        reduced.emplace(std::move(er.db));
        result.erased_authors = std::move(er.erased_authors);
        db = &*reduced;
        if (!result.erased_authors.empty()) {
            // Weights of erased papers go away with them; a surviving
            // paper crediting an erased author has nowhere to put that
            // share, which we treat as malformed input.
            for (auto it = effective.paper_shares.begin();
                 it != effective.paper_shares.end();) {
                if (!db->find_paper(it->first)) {
                    it = effective.paper_shares.erase(it);
                    continue;
                }
                for (const auto& [author, share] : it->second)
                    if (share != 0.0 && !db->find_author(author))
                        throw DomainError("share of erased author '" + author +
                                          "' on surviving paper '" + it->first +
                                          "'");
                ++it;
            }
            for (auto it = effective.author_weights.begin();
                 it != effective.author_weights.end();)
                it = db->find_author(it->first)
                         ? std::next(it)
                         : effective.author_weights.erase(it);
        }
    }
    effective.validate(*db);

    const Compiled c = compile(*db, effective);
    const CitationMatrix m = CitationMatrix::build(*db);
    const std::vector<double> sigma = exerted_totals_vec(m, params);

    std::vector<double> norm;
    std::vector<double> self;
    std::string_view label = "P'";
    switch (mode) {
    case IndexMode::base:
        norm = p_prime_vec(*db, sigma);
        break;
    case IndexMode::weighted:
        norm = p_second_vec(*db, c, sigma);
        label = "P''";
        break;
    case IndexMode::noself:
        norm = p_second_vec(*db, c, sigma);
        self = self_terms(*db, m, params, c);
        for (AuthorIdx a = 0; a < db->author_count(); ++a)
            norm[a] -= self[a];
        label = "P'''";
        break;
    }
    require_positive(*db, norm, label);

    // Paper debt weights pulled back through the discounted series:
    // w(q) = sum_b alpha_b w_q^b / norm_b, then I(a) collects the
    // a-shares of y = PI_delta w.
    std::vector<double> w(db->paper_count(), 0.0);
    for (PaperIdx q = 0; q < db->paper_count(); ++q)
        for (std::size_t i = c.off[q]; i < c.off[q + 1]; ++i) {
            const auto& [author, share] = c.entries[i];
            w[q] += c.alpha[author] * share / norm[author];
        }
    const std::vector<double> y = discounted_influence(m, params, w);

    std::vector<double> index(db->author_count(), 0.0);
    for (PaperIdx p = 0; p < db->paper_count(); ++p)
        for (std::size_t i = c.off[p]; i < c.off[p + 1]; ++i)
            index[c.entries[i].first] += c.entries[i].second * y[p];

    if (mode == IndexMode::noself) {
        // AI(a,a) = 0: remove each author's diagonal term.
        for (AuthorIdx a = 0; a < db->author_count(); ++a)
            index[a] -= c.alpha[a] * self[a] / norm[a];
    }

    result.per_author = to_author_map(*db, index);
    result.normalizers = to_author_map(*db, norm);
    result.sum_tolerance = params.tolerance * static_cast<double>(db->author_count());
    return result;
}

std::map<std::string, double> concave_index(const Database& d,
                                            const InfluenceParams& params,
                                            double exponent) {
    if (exponent < 0.0 || exponent > 1.0)
        throw DomainError("concave exponent must lie in [0, 1]");
    if (d.author_count() > 5000)
        throw SizeGuardError("concave index limited to 5000 authors, got " +
                             std::to_string(d.author_count()));

    const CitationMatrix m = CitationMatrix::build(d);
    const std::vector<double> sigma = exerted_totals_vec(m, params);
    const std::vector<double> norm = p_prime_vec(d, sigma);
    require_positive(d, norm, "P'");

    // x^exponent with the convention 0^0 = 0: only authors actually
    // exerting influence share in a column.
    auto powz = [exponent](double x) {
        if (!(x > 0.0))
            return 0.0;
        return exponent == 0.0 ? 1.0 : std::pow(x, exponent);
    };

    std::vector<double> index(d.author_count(), 0.0);
    std::vector<double> seed(d.paper_count());
    std::vector<double> column(d.author_count());
    for (AuthorIdx b = 0; b < d.author_count(); ++b) {
        std::fill(seed.begin(), seed.end(), 0.0);
        for (PaperIdx q : d.portfolio(b))
            seed[q] = 1.0;
        const std::vector<double> pulled = discounted_influence(m, params, seed);
        std::fill(column.begin(), column.end(), 0.0);
        for (PaperIdx p = 0; p < d.paper_count(); ++p)
            column[d.owner(p)] += pulled[p];
        double denom = 0.0;
        for (AuthorIdx a = 0; a < d.author_count(); ++a) {
            column[a] = powz(column[a] / norm[b]);
            denom += column[a];
        }
        if (!(denom > 0.0))
            throw DomainError("no author exerts influence on '" + d.author_id(b) +
                              "'; the database lies outside the supported domain");
        for (AuthorIdx a = 0; a < d.author_count(); ++a)
            index[a] += column[a] / denom;
    }
    return to_author_map(d, index);
}

} // namespace biblio
