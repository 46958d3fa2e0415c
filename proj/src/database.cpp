#include "biblio/database.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace biblio {

namespace {

std::optional<std::uint32_t> index_in_sorted(const std::vector<std::string>& ids,
                                             std::string_view id) {
    auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id)
        return std::nullopt;
    return static_cast<std::uint32_t>(it - ids.begin());
}

} // namespace

Database Database::make(const std::vector<AuthorRecord>& authors,
                        const std::vector<EdgeRecord>& edges) {
    Database d;

    d.author_ids_.reserve(authors.size());
    for (const auto& a : authors)
        d.author_ids_.push_back(a.id);
    std::sort(d.author_ids_.begin(), d.author_ids_.end());
    for (std::size_t i = 1; i < d.author_ids_.size(); ++i)
        if (d.author_ids_[i] == d.author_ids_[i - 1])
            throw DatabaseError("duplicate author id '" + d.author_ids_[i] + "'");

    // (paper, listing author) pairs; the smallest author keeps an
    // overlapping paper, the remaining listings become overlap records.
    std::vector<std::pair<std::string, std::string>> listings;
    for (const auto& a : authors) {
        std::set<std::string_view> seen;
        for (const auto& p : a.papers) {
            if (!seen.insert(p).second)
                throw DatabaseError("paper '" + p + "' listed twice under author '" +
                                    a.id + "'");
            listings.emplace_back(p, a.id);
        }
    }
    std::sort(listings.begin(), listings.end());

    std::map<std::string, std::vector<std::string>> overlap_map;
    std::vector<std::string> owner_by_paper; // aligned with paper_ids_
    for (std::size_t i = 0; i < listings.size();) {
        std::size_t j = i;
        while (j < listings.size() && listings[j].first == listings[i].first)
            ++j;
        d.paper_ids_.push_back(listings[i].first);
        owner_by_paper.push_back(listings[i].second);
        if (j - i > 1) {
            auto& extra = overlap_map[listings[i].first];
            for (std::size_t k = i; k < j; ++k)
                extra.push_back(listings[k].second);
        }
        i = j;
    }
    for (auto& [paper, who] : overlap_map)
        d.overlaps_.emplace_back(paper, std::move(who));

    const auto num_papers = static_cast<std::uint32_t>(d.paper_ids_.size());
    d.owner_.resize(num_papers);
    for (std::uint32_t p = 0; p < num_papers; ++p)
        d.owner_[p] = *index_in_sorted(d.author_ids_, owner_by_paper[p]);

    d.edges_.reserve(edges.size());
    for (const auto& e : edges) {
        auto cited = index_in_sorted(d.paper_ids_, e.cited);
        if (!cited)
            throw DatabaseError("citation references unknown paper '" + e.cited + "'");
        auto citing = index_in_sorted(d.paper_ids_, e.citing);
        if (!citing)
            throw DatabaseError("citation references unknown paper '" + e.citing + "'");
        if (*cited == *citing)
            throw DatabaseError("paper '" + e.cited + "' cannot cite itself");
        d.edges_.push_back({*cited, *citing});
    }
    std::sort(d.edges_.begin(), d.edges_.end());
    for (std::size_t i = 1; i < d.edges_.size(); ++i)
        if (d.edges_[i] == d.edges_[i - 1])
            throw DatabaseError("duplicate citation pair (cited='" +
                                d.paper_ids_[d.edges_[i].cited] + "', citing='" +
                                d.paper_ids_[d.edges_[i].citing] + "')");

    // CSR structures
    const auto num_authors = d.author_ids_.size();
    d.portfolio_off_.assign(num_authors + 1, 0);
    for (std::uint32_t p = 0; p < num_papers; ++p)
        ++d.portfolio_off_[d.owner_[p] + 1];
    for (std::size_t a = 0; a < num_authors; ++a)
        d.portfolio_off_[a + 1] += d.portfolio_off_[a];
    d.portfolio_papers_.resize(num_papers);
    {
        std::vector<std::size_t> cursor(d.portfolio_off_.begin(),
                                        d.portfolio_off_.end() - 1);
        for (std::uint32_t p = 0; p < num_papers; ++p)
            d.portfolio_papers_[cursor[d.owner_[p]]++] = p;
    }

    auto build_csr = [&](bool by_citing, std::vector<std::size_t>& off,
                         std::vector<PaperIdx>& items) {
        off.assign(num_papers + 1, 0);
        for (const auto& e : d.edges_)
            ++off[(by_citing ? e.citing : e.cited) + 1];
        for (std::size_t p = 0; p < num_papers; ++p)
            off[p + 1] += off[p];
        items.resize(d.edges_.size());
        std::vector<std::size_t> cursor(off.begin(), off.end() - 1);
        for (const auto& e : d.edges_) {
            if (by_citing)
                items[cursor[e.citing]++] = e.cited;
            else
                items[cursor[e.cited]++] = e.citing;
        }
        for (std::size_t p = 0; p < num_papers; ++p)
            std::sort(items.begin() + static_cast<std::ptrdiff_t>(off[p]),
                      items.begin() + static_cast<std::ptrdiff_t>(off[p + 1]));
    };
    build_csr(true, d.ref_off_, d.ref_papers_);
    build_csr(false, d.cite_off_, d.cite_papers_);

    return d;
}

std::optional<AuthorIdx> Database::find_author(std::string_view id) const {
    return index_in_sorted(author_ids_, id);
}

std::optional<PaperIdx> Database::find_paper(std::string_view id) const {
    return index_in_sorted(paper_ids_, id);
}

AuthorIdx Database::author_at(std::string_view id) const {
    auto a = find_author(id);
    if (!a)
        throw DatabaseError("unknown author '" + std::string(id) + "'");
    return *a;
}

PaperIdx Database::paper_at(std::string_view id) const {
    auto p = find_paper(id);
    if (!p)
        throw DatabaseError("unknown paper '" + std::string(id) + "'");
    return *p;
}

std::span<const PaperIdx> Database::portfolio(AuthorIdx a) const {
    return {portfolio_papers_.data() + portfolio_off_[a],
            portfolio_off_[a + 1] - portfolio_off_[a]};
}

std::span<const PaperIdx> Database::references_of(PaperIdx q) const {
    return {ref_papers_.data() + ref_off_[q], ref_off_[q + 1] - ref_off_[q]};
}

std::span<const PaperIdx> Database::citations_of(PaperIdx p) const {
    return {cite_papers_.data() + cite_off_[p], cite_off_[p + 1] - cite_off_[p]};
}

bool Database::has_edge(PaperIdx cited, PaperIdx citing) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{cited, citing});
}

std::vector<Database::AuthorRecord> Database::author_records() const {
    std::vector<AuthorRecord> out(author_ids_.size());
    for (std::size_t a = 0; a < author_ids_.size(); ++a) {
        out[a].id = author_ids_[a];
        for (PaperIdx p : portfolio(static_cast<AuthorIdx>(a)))
            out[a].papers.push_back(paper_ids_[p]);
    }
    return out;
}

std::vector<Database::EdgeRecord> Database::edge_records() const {
    std::vector<EdgeRecord> out;
    out.reserve(edges_.size());
    for (const auto& e : edges_)
        out.push_back({paper_ids_[e.cited], paper_ids_[e.citing]});
    return out;
}

bool Database::operator==(const Database& other) const {
    return author_ids_ == other.author_ids_ && paper_ids_ == other.paper_ids_ &&
           owner_ == other.owner_ && edges_ == other.edges_;
}

std::string_view domain_rule_name(DomainRule rule) {
    switch (rule) {
    case DomainRule::overlapping_portfolios:
        return "overlapping-portfolios";
    case DomainRule::self_citation:
        return "self-citation";
    case DomainRule::no_external_reference:
        return "no-external-reference";
    }
    return "?";
}

std::string DomainReport::to_string() const {
    std::ostringstream os;
    os << (valid ? "valid" : "invalid") << "\n";
    for (const auto& v : violations) {
        os << "  " << domain_rule_name(v.rule) << ":";
        for (const auto& id : v.ids)
            os << " " << id;
        os << "\n";
    }
    return os.str();
}

DomainReport validate_domain(const Database& d) {
    DomainReport report;

    for (const auto& [paper, who] : d.portfolio_overlaps()) {
        DomainViolation v{DomainRule::overlapping_portfolios, {paper}};
        v.ids.insert(v.ids.end(), who.begin(), who.end());
        report.violations.push_back(std::move(v));
    }

    for (const auto& e : d.edges()) {
        if (d.owner(e.cited) == d.owner(e.citing)) {
            report.violations.push_back(
                {DomainRule::self_citation,
                 {d.author_id(d.owner(e.cited)), d.paper_id(e.cited),
                  d.paper_id(e.citing)}});
        }
    }

    for (AuthorIdx a = 0; a < d.author_count(); ++a) {
        bool external = false;
        for (PaperIdx q : d.portfolio(a)) {
            for (PaperIdx p : d.references_of(q)) {
                if (d.owner(p) != a) {
                    external = true;
                    break;
                }
            }
            if (external)
                break;
        }
        if (!external)
            report.violations.push_back(
                {DomainRule::no_external_reference, {d.author_id(a)}});
    }

    report.valid = report.violations.empty();
    return report;
}

namespace {

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        for (std::size_t i = 0; i < n; ++i)
            parent_[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x != y)
            parent_[std::max(x, y)] = std::min(x, y);
    }

private:
    std::vector<std::size_t> parent_;
};

} // namespace

FieldPartition field_components(const Database& d) {
    UnionFind uf(d.author_count());
    for (const auto& e : d.edges())
        uf.unite(d.owner(e.cited), d.owner(e.citing));

    // Roots are minima of their classes, so ordering components by root
    // index is ordering by smallest author id.
    std::vector<std::size_t> root(d.author_count());
    std::vector<std::size_t> roots;
    for (std::size_t a = 0; a < d.author_count(); ++a) {
        root[a] = uf.find(a);
        if (root[a] == a)
            roots.push_back(a);
    }

    FieldPartition part;
    part.components.resize(roots.size());
    part.component_of_author.resize(d.author_count());
    std::vector<std::size_t> comp_of_root(d.author_count());
    for (std::size_t i = 0; i < roots.size(); ++i)
        comp_of_root[roots[i]] = i;

    for (std::size_t a = 0; a < d.author_count(); ++a) {
        const std::size_t c = comp_of_root[root[a]];
        part.component_of_author[a] = c;
        part.components[c].authors.push_back(d.author_id(static_cast<AuthorIdx>(a)));
        for (PaperIdx p : d.portfolio(static_cast<AuthorIdx>(a)))
            part.components[c].papers.push_back(d.paper_id(p));
    }
    for (auto& c : part.components)
        std::sort(c.papers.begin(), c.papers.end());
    return part;
}

} // namespace biblio
