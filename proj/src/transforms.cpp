#include "biblio/transforms.hpp"

#include <algorithm>
#include <set>

namespace biblio {

Database disjoint_union(const Database& d, const Database& d2) {
    for (const auto& id : d2.author_ids())
        if (d.find_author(id))
            throw DatabaseError("author id '" + id + "' present in both databases");
    for (const auto& id : d2.paper_ids())
        if (d.find_paper(id))
            throw DatabaseError("paper id '" + id + "' present in both databases");

    auto authors = d.author_records();
    auto more = d2.author_records();
    authors.insert(authors.end(), more.begin(), more.end());
    auto edges = d.edge_records();
    auto more_edges = d2.edge_records();
    edges.insert(edges.end(), more_edges.begin(), more_edges.end());
    return Database::make(authors, edges);
}

Database add_reference(const Database& d, const std::string& cited,
                       const std::string& citing, bool strict) {
    const PaperIdx p = d.paper_at(cited);
    const PaperIdx q = d.paper_at(citing);
    if (p == q)
        throw DatabaseError("paper '" + cited + "' cannot cite itself");
    if (d.has_edge(p, q))
        throw DatabaseError("citation pair (cited='" + cited + "', citing='" +
                            citing + "') already present");
    if (strict && d.owner(p) == d.owner(q))
        throw DomainError("reference from '" + citing + "' to '" + cited +
                          "' stays inside the portfolio of author '" +
                          d.author_id(d.owner(p)) + "'");

    auto edges = d.edge_records();
    edges.push_back({cited, citing});
    return Database::make(d.author_records(), edges);
}

Database split_paper(const Database& d, const std::string& q,
                     const std::vector<std::string>& part1,
                     const std::string& new_id, bool strict_nonempty) {
    const PaperIdx qi = d.paper_at(q);
    if (d.citation_count(qi) != 0)
        throw DomainError("paper '" + q + "' has citations and cannot be split");
    if (d.find_paper(new_id))
        throw DatabaseError("paper id '" + new_id + "' already exists");

    std::set<PaperIdx> keep;
    for (const auto& r : part1) {
        const PaperIdx ri = d.paper_at(r);
        if (!d.has_edge(ri, qi))
            throw DomainError("paper '" + r + "' is not a reference of '" + q + "'");
        keep.insert(ri);
    }
    const auto refs = d.references_of(qi);
    if (strict_nonempty && (keep.empty() || keep.size() == refs.size()))
        throw DomainError("strict split requires both reference parts nonempty");

    auto authors = d.author_records();
    const auto& owner_id = d.author_id(d.owner(qi));
    for (auto& a : authors)
        if (a.id == owner_id)
            a.papers.push_back(new_id);

    std::vector<Database::EdgeRecord> edges;
    for (const auto& e : d.edges()) {
        if (e.citing == qi && !keep.count(e.cited))
            edges.push_back({d.paper_id(e.cited), new_id});
        else
            edges.push_back({d.paper_id(e.cited), d.paper_id(e.citing)});
    }
    return Database::make(authors, edges);
}

Database permute_citations(const Database& d,
                           const std::map<std::string, std::string>& sigma) {
    const auto n = d.paper_count();
    std::vector<PaperIdx> perm(n);
    for (std::size_t p = 0; p < n; ++p)
        perm[p] = static_cast<PaperIdx>(p);
    for (const auto& [from, to] : sigma)
        perm[d.paper_at(from)] = d.paper_at(to);

    std::vector<bool> hit(n, false);
    for (std::size_t p = 0; p < n; ++p) {
        if (hit[perm[p]])
            throw DomainError("sigma is not a permutation: '" +
                              d.paper_id(perm[p]) + "' has two preimages");
        hit[perm[p]] = true;
        if (d.owner(perm[p]) != d.owner(static_cast<PaperIdx>(p)))
            throw DomainError("sigma maps '" + d.paper_id(static_cast<PaperIdx>(p)) +
                              "' outside its author's portfolio");
    }

    // n'(p, q) = n(p, sigma(q)): q inherits sigma(q)'s reference list.
    std::vector<Database::EdgeRecord> edges;
    edges.reserve(d.edge_count());
    for (std::size_t q = 0; q < n; ++q)
        for (PaperIdx r : d.references_of(perm[q]))
            edges.push_back({d.paper_id(r), d.paper_id(static_cast<PaperIdx>(q))});
    return Database::make(d.author_records(), edges);
}

Database reassign_papers(
    const Database& d,
    const std::map<std::string, std::vector<std::string>>& new_portfolio) {
    std::set<std::string> assigned;
    std::vector<Database::AuthorRecord> authors;
    for (const auto& [author, papers] : new_portfolio) {
        authors.push_back({author, papers});
        for (const auto& p : papers) {
            if (!d.find_paper(p))
                throw DomainError("reassignment names unknown paper '" + p + "'");
            if (!assigned.insert(p).second)
                throw DomainError("reassignment is not a partition: paper '" + p +
                                  "' assigned twice");
        }
    }
    if (assigned.size() != d.paper_count())
        throw DomainError("reassignment is not a partition: " +
                          std::to_string(d.paper_count() - assigned.size()) +
                          " paper(s) unassigned");

    Database out = Database::make(authors, d.edge_records());
    const DomainReport report = validate_domain(out);
    if (!report.valid)
        throw DomainError("reassignment leaves the domain:\n" + report.to_string());
    return out;
}

namespace {

std::string rename(const std::vector<std::pair<std::string, std::string>>& map,
                   const std::string& id) {
    for (const auto& [from, to] : map)
        if (from == id)
            return to;
    return id;
}

} // namespace

Database relabel(const Database& d, const Relabeling& r) {
    for (const auto& [from, to] : r.author_map)
        if (!d.find_author(from))
            throw DomainError("relabeling names unknown author '" + from + "'");
    for (const auto& [from, to] : r.paper_map)
        if (!d.find_paper(from))
            throw DomainError("relabeling names unknown paper '" + from + "'");

    std::set<std::string> author_targets, paper_targets;
    auto authors = d.author_records();
    for (auto& a : authors) {
        a.id = rename(r.author_map, a.id);
        if (!author_targets.insert(a.id).second)
            throw DomainError("author relabeling is not injective at '" + a.id + "'");
        for (auto& p : a.papers)
            p = rename(r.paper_map, p);
    }
    for (const auto& id : d.paper_ids())
        if (!paper_targets.insert(rename(r.paper_map, id)).second)
            throw DomainError("paper relabeling is not injective at '" +
                              rename(r.paper_map, id) + "'");

    auto edges = d.edge_records();
    for (auto& e : edges) {
        e.cited = rename(r.paper_map, e.cited);
        e.citing = rename(r.paper_map, e.citing);
    }
    return Database::make(authors, edges);
}

EraseResult erase_self_only_authors(const Database& d) {
    EraseResult result{d, {}};
    for (;;) {
        const Database& cur = result.db;
        std::vector<std::string> doomed;
        for (AuthorIdx a = 0; a < cur.author_count(); ++a) {
            bool external = false;
            for (PaperIdx q : cur.portfolio(a)) {
                for (PaperIdx p : cur.references_of(q))
                    if (cur.owner(p) != a) {
                        external = true;
                        break;
                    }
                if (external)
                    break;
            }
            if (!external)
                doomed.push_back(cur.author_id(a));
        }
        if (doomed.empty())
            return result;
        if (doomed.size() == cur.author_count())
            throw DomainError("no eligible authors");

        std::set<std::string> gone(doomed.begin(), doomed.end());
        std::set<std::string> dead_papers;
        std::vector<Database::AuthorRecord> authors;
        for (const auto& rec : cur.author_records()) {
            if (gone.count(rec.id))
                dead_papers.insert(rec.papers.begin(), rec.papers.end());
            else
                authors.push_back(rec);
        }
        std::vector<Database::EdgeRecord> edges;
        for (const auto& e : cur.edge_records())
            if (!dead_papers.count(e.cited) && !dead_papers.count(e.citing))
                edges.push_back(e);

        result.db = Database::make(authors, edges);
        result.erased_authors.insert(result.erased_authors.end(), doomed.begin(),
                                     doomed.end());
    }
}

} // namespace biblio
