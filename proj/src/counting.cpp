#include "biblio/counting.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "biblio/author_index.hpp"

namespace biblio {

int CitationMultiset::paper_total() const {
    int total = 0;
    for (const auto& [k, n] : counts)
        total += n;
    return total;
}

CitationMultiset citation_multiset(const Database& d, const std::string& author) {
    const AuthorIdx a = d.author_at(author);
    CitationMultiset m;
    m.owner = author;
    for (PaperIdx p : d.portfolio(a))
        ++m.counts[static_cast<int>(d.citation_count(p))];
    return m;
}

int h_index(const CitationMultiset& m) {
    std::vector<int> counts;
    for (const auto& [k, n] : m.counts)
        counts.insert(counts.end(), static_cast<std::size_t>(n), k);
    std::sort(counts.rbegin(), counts.rend());
    int h = 0;
    while (h < static_cast<int>(counts.size()) && counts[h] >= h + 1)
        ++h;
    return h;
}

double euclidean_index(const CitationMultiset& m) {
    double sum = 0.0;
    for (const auto& [k, n] : m.counts)
        sum += static_cast<double>(n) * static_cast<double>(k) * static_cast<double>(k);
    return std::sqrt(sum);
}

double fractional_count(const Database& d, const std::string& author) {
    const AuthorIdx a = d.author_at(author);
    double total = 0.0;
    for (PaperIdx p : d.portfolio(a))
        for (PaperIdx q : d.citations_of(p))
            total += 1.0 / static_cast<double>(d.reference_count(q));
    return total;
}

double comparable_direct_index(const Database& d, const std::string& author) {
    const AuthorIdx a = d.author_at(author);
    double total = 0.0;
    for (PaperIdx p : d.portfolio(a))
        for (PaperIdx q : d.citations_of(p)) {
            const double papers =
                static_cast<double>(d.portfolio(d.owner(q)).size());
            total += 1.0 / (papers * static_cast<double>(d.reference_count(q)));
        }
    return total;
}

double comprehensive_index(const Database& d, const std::string& author) {
    const AuthorIdx a = d.author_at(author);
    double total = 0.0;
    for (PaperIdx p : d.portfolio(a))
        for (PaperIdx q : d.citations_of(p))
            total += static_cast<double>(d.citation_count(q));
    return total;
}

Database canonical_reduction(const Database& d, const std::string& author) {
    const AuthorIdx a = d.author_at(author);
    const auto papers = d.portfolio(a);

    std::size_t total_citations = 0;
    for (PaperIdx p : papers)
        total_citations += d.citation_count(p);
    if (total_citations == 0)
        throw UncitedAuthorError("author '" + author +
                                 "' has no citations; the canonical two-author "
                                 "form is undefined");

    // Fresh ids for the counterpart's papers: lengthen the prefix until
    // nothing in the retained id set can collide.
    std::string prefix = "c";
    for (bool clash = true; clash;) {
        clash = false;
        for (PaperIdx p : papers)
            if (d.paper_id(p).starts_with(prefix)) {
                clash = true;
                prefix += "c";
                break;
            }
    }
    int width = 1;
    for (std::size_t n = total_citations; n >= 10; n /= 10)
        ++width;
    auto counter_paper = [&](std::size_t i) {
        std::string digits = std::to_string(i + 1);
        return prefix +
               std::string(static_cast<std::size_t>(width) - digits.size(), '0') +
               digits;
    };

    const std::string counterpart = author + "_citers";
    Database::AuthorRecord mine{author, {}};
    Database::AuthorRecord theirs{counterpart, {}};
    std::vector<Database::EdgeRecord> edges;

    std::size_t next = 0;
    for (PaperIdx p : papers) {
        mine.papers.push_back(d.paper_id(p));
        for (std::size_t i = 0; i < d.citation_count(p); ++i) {
            theirs.papers.push_back(counter_paper(next));
            edges.push_back({d.paper_id(p), counter_paper(next)});
            ++next;
        }
    }
    // Domain repair: one reference from the target into the counterpart.
    edges.push_back({counter_paper(0), mine.papers.front()});

    return Database::make({mine, theirs}, edges);
}

double IndexDescriptor::evaluate_one(const Database& d,
                                     const std::string& author) const {
    const auto scores = evaluate(d);
    const auto it = scores.find(author);
    if (it == scores.end())
        throw DatabaseError("unknown author '" + author + "'");
    return it->second;
}

namespace {

template <class PerAuthor>
std::map<std::string, double> batch(const Database& d, PerAuthor fn) {
    std::map<std::string, double> out;
    for (AuthorIdx a = 0; a < d.author_count(); ++a)
        out[d.author_id(a)] = fn(d, a);
    return out;
}

// citations received by a, over total references of the other authors
double separability_violator(const Database& d, AuthorIdx a) {
    double cites = 0.0;
    for (PaperIdx p : d.portfolio(a))
        cites += static_cast<double>(d.citation_count(p));
    double other_refs = 0.0;
    for (PaperIdx q = 0; q < d.paper_count(); ++q)
        if (d.owner(q) != a)
            other_refs += static_cast<double>(d.reference_count(q));
    if (!(other_refs > 0.0))
        throw DomainError(
            "authors other than '" + d.author_id(a) +
            "' have no references; the ratio index is undefined here");
    return cites / other_refs;
}

double own_reference_count(const Database& d, AuthorIdx a) {
    std::size_t refs = 0;
    for (PaperIdx q : d.portfolio(a))
        refs += d.reference_count(q);
    return static_cast<double>(refs);
}

// citations of the papers citing a, excluding those issued by a herself
double citing_papers_outside_citations(const Database& d, AuthorIdx a) {
    std::set<PaperIdx> citers;
    for (PaperIdx p : d.portfolio(a))
        for (PaperIdx q : d.citations_of(p))
            citers.insert(q);
    double total = 0.0;
    for (PaperIdx q : citers)
        for (PaperIdx r : d.citations_of(q))
            if (d.owner(r) != a)
                total += 1.0;
    return total;
}

double distinct_citing_authors(const Database& d, AuthorIdx a) {
    std::set<AuthorIdx> who;
    for (PaperIdx p : d.portfolio(a))
        for (PaperIdx q : d.citations_of(p))
            who.insert(d.owner(q));
    return static_cast<double>(who.size());
}

} // namespace

std::vector<IndexDescriptor> independence_indices() {
    std::vector<IndexDescriptor> out;
    out.push_back({"indep-separability", IndexDescriptor::Kind::non_counting, false,
                   [](const Database& d) { return batch(d, separability_violator); }});
    out.push_back({"indep-reference-independence",
                   IndexDescriptor::Kind::non_counting, true,
                   [](const Database& d) { return batch(d, own_reference_count); }});
    out.push_back({"indep-splitting", IndexDescriptor::Kind::non_counting, false,
                   [](const Database& d) {
                       return batch(d, [](const Database& db, AuthorIdx a) {
                           return fractional_count(db, db.author_id(a));
                       });
                   }});
    out.push_back({"indep-citation-anonymity", IndexDescriptor::Kind::non_counting,
                   true, [](const Database& d) {
                       return batch(d, citing_papers_outside_citations);
                   }});
    out.push_back({"indep-author-anonymity", IndexDescriptor::Kind::non_counting,
                   true,
                   [](const Database& d) { return batch(d, distinct_citing_authors); }});
    return out;
}

std::vector<IndexDescriptor> builtin_indices(const InfluenceParams& params) {
    std::vector<IndexDescriptor> out;
    out.push_back({"h", IndexDescriptor::Kind::counting_scheme, true,
                   [](const Database& d) {
                       return batch(d, [](const Database& db, AuthorIdx a) {
                           return static_cast<double>(
                               h_index(citation_multiset(db, db.author_id(a))));
                       });
                   }});
    out.push_back({"euclid", IndexDescriptor::Kind::counting_scheme, false,
                   [](const Database& d) {
                       return batch(d, [](const Database& db, AuthorIdx a) {
                           return euclidean_index(
                               citation_multiset(db, db.author_id(a)));
                       });
                   }});
    out.push_back({"fractional", IndexDescriptor::Kind::non_counting, false,
                   [](const Database& d) {
                       return batch(d, [](const Database& db, AuthorIdx a) {
                           return fractional_count(db, db.author_id(a));
                       });
                   }});
    out.push_back({"comparable-direct", IndexDescriptor::Kind::non_counting, false,
                   [](const Database& d) {
                       return batch(d, [](const Database& db, AuthorIdx a) {
                           return comparable_direct_index(db, db.author_id(a));
                       });
                   }});
    out.push_back({"comprehensive", IndexDescriptor::Kind::non_counting, false,
                   [](const Database& d) {
                       return batch(d, [](const Database& db, AuthorIdx a) {
                           return comprehensive_index(db, db.author_id(a));
                       });
                   }});
    out.push_back({"influence", IndexDescriptor::Kind::non_counting, false,
                   [params](const Database& d) {
                       return influence_index(d, params).per_author;
                   }});
    for (auto& idx : independence_indices())
        out.push_back(std::move(idx));
    return out;
}

const IndexDescriptor* find_index(std::span<const IndexDescriptor> registry,
                                  std::string_view name) {
    for (const auto& idx : registry)
        if (idx.name == name)
            return &idx;
    return nullptr;
}

} // namespace biblio
