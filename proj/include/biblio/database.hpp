#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "biblio/types.hpp"

namespace biblio {

/// One citation link: `citing` cites `cited`.
struct Edge {
    PaperIdx cited;
    PaperIdx citing;
    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A bibliographic database: a set of authors, the partition of papers
/// into per-author portfolios, and the citation relation.
///
/// Ids are opaque strings; the canonical order is lexicographic and all
/// dense indices (AuthorIdx, PaperIdx) refer to it. Instances are
/// immutable after construction: every transformation returns a new
/// database, so values can be shared freely across threads.
class Database {
public:
    struct AuthorRecord {
        std::string id;
        std::vector<std::string> papers;
    };
    struct EdgeRecord {
        std::string cited;
        std::string citing;
    };

    /// Builds a database and checks structural well-formedness: unique
    /// author ids, no paper listed twice under one author, edge
    /// endpoints known, no duplicate edges, no edge (p,p). A paper
    /// listed under several authors is kept by the lexicographically
    /// smallest of them and recorded in portfolio_overlaps() for
    /// validate_domain to report.
    static Database make(const std::vector<AuthorRecord>& authors,
                         const std::vector<EdgeRecord>& edges);

    std::size_t author_count() const { return author_ids_.size(); }
    std::size_t paper_count() const { return paper_ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const std::string& author_id(AuthorIdx a) const { return author_ids_[a]; }
    const std::string& paper_id(PaperIdx p) const { return paper_ids_[p]; }
    const std::vector<std::string>& author_ids() const { return author_ids_; }
    const std::vector<std::string>& paper_ids() const { return paper_ids_; }

    std::optional<AuthorIdx> find_author(std::string_view id) const;
    std::optional<PaperIdx> find_paper(std::string_view id) const;
    AuthorIdx author_at(std::string_view id) const; // throws DatabaseError
    PaperIdx paper_at(std::string_view id) const;   // throws DatabaseError

    AuthorIdx owner(PaperIdx p) const { return owner_[p]; }
    std::span<const PaperIdx> portfolio(AuthorIdx a) const;

    /// Papers cited by q (the reference list R_q).
    std::span<const PaperIdx> references_of(PaperIdx q) const;
    /// Papers citing p (the citation list C_p).
    std::span<const PaperIdx> citations_of(PaperIdx p) const;
    std::size_t reference_count(PaperIdx q) const { return references_of(q).size(); }
    std::size_t citation_count(PaperIdx p) const { return citations_of(p).size(); }

    bool has_edge(PaperIdx cited, PaperIdx citing) const;
    /// All edges, sorted by (cited, citing).
    const std::vector<Edge>& edges() const { return edges_; }

    const std::vector<std::pair<std::string, std::vector<std::string>>>&
    portfolio_overlaps() const {
        return overlaps_;
    }

    /// Round-trips the database back into constructor records (sorted,
    /// canonical). Used by transformations and serialization.
    std::vector<AuthorRecord> author_records() const;
    std::vector<EdgeRecord> edge_records() const;

    bool operator==(const Database& other) const;

    /// The empty database (no authors, no papers, no citations).
    Database() = default;

private:
    std::vector<std::string> author_ids_; // sorted
    std::vector<std::string> paper_ids_;  // sorted
    std::vector<AuthorIdx> owner_;        // per paper

    // CSR adjacency, all index lists sorted ascending.
    std::vector<std::size_t> portfolio_off_;
    std::vector<PaperIdx> portfolio_papers_;
    std::vector<std::size_t> ref_off_;
    std::vector<PaperIdx> ref_papers_;
    std::vector<std::size_t> cite_off_;
    std::vector<PaperIdx> cite_papers_;

    std::vector<Edge> edges_;
    std::vector<std::pair<std::string, std::vector<std::string>>> overlaps_;
};

enum class DomainRule {
    overlapping_portfolios,
    self_citation,
    no_external_reference,
};

std::string_view domain_rule_name(DomainRule rule);

struct DomainViolation {
    DomainRule rule;
    std::vector<std::string> ids; // witnesses: offending author/paper ids
};

/// Result of checking the three domain conditions: single-authored
/// papers, no same-portfolio citation, every author cites another
/// author. valid iff violations is empty.
struct DomainReport {
    bool valid = true;
    std::vector<DomainViolation> violations;

    std::string to_string() const;
};

/// Pure check of the domain conditions; violations are data, not errors.
DomainReport validate_domain(const Database& d);

/// A pair of id bijections. Keys absent from a map are renamed to
/// themselves.
struct Relabeling {
    std::vector<std::pair<std::string, std::string>> author_map;
    std::vector<std::pair<std::string, std::string>> paper_map;
};

struct FieldComponent {
    std::vector<std::string> authors; // sorted
    std::vector<std::string> papers;  // sorted
};

/// Partition of the authors into citation-disjoint groups, ordered by
/// smallest author id. No citation edge crosses two components.
struct FieldPartition {
    std::vector<FieldComponent> components;

    /// component index per author, aligned with d's author order
    std::vector<std::size_t> component_of_author;
};

FieldPartition field_components(const Database& d);

} // namespace biblio
