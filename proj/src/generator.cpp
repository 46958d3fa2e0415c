#include "biblio/generator.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "biblio/rng.hpp"

namespace biblio {

namespace {

std::string padded(char prefix, std::uint64_t value, int width) {
    std::string digits = std::to_string(value);
    std::string out(1, prefix);
    out.append(static_cast<std::size_t>(std::max(0, width - static_cast<int>(digits.size()))), '0');
    out += digits;
    return out;
}

int digits_for(std::uint64_t n) {
    int w = 1;
    while (n >= 10) {
        n /= 10;
        ++w;
    }
    return w;
}

} // namespace

Database generate_random_db(const GeneratorParams& params) {
    if (params.n_fields == 0)
        throw DomainError("generator needs at least one field");
    if (params.papers_per_author.first < 1)
        throw DomainError("generator needs at least one paper per author");
    if (params.papers_per_author.first > params.papers_per_author.second ||
        params.refs_per_paper.first > params.refs_per_paper.second)
        throw DomainError("generator range has lo > hi");
    if (params.n_authors < 2 * params.n_fields)
        throw DomainError("each field needs at least two authors (" +
                          std::to_string(params.n_authors) + " authors for " +
                          std::to_string(params.n_fields) + " fields)");

    Rng rng(params.seed);
    const std::uint32_t n = params.n_authors;
    const std::uint32_t k = params.n_fields;

    // Contiguous balanced field blocks; papers are issued in author
    // order, so each field's papers form one contiguous index range.
    std::vector<std::uint32_t> field_of(n);
    for (std::uint32_t i = 0; i < n; ++i)
        field_of[i] = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(i) * k) / n);

    std::vector<std::uint32_t> paper_count(n);
    std::uint64_t total_papers = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
        paper_count[i] = static_cast<std::uint32_t>(rng.in_range(
            params.papers_per_author.first, params.papers_per_author.second));
        total_papers += paper_count[i];
    }

    std::vector<std::uint64_t> paper_begin(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i)
        paper_begin[i + 1] = paper_begin[i] + paper_count[i];
    std::vector<std::uint64_t> field_begin(k + 1, total_papers);
    field_begin[0] = 0;
    for (std::uint32_t i = 1; i < n; ++i)
        if (field_of[i] != field_of[i - 1])
            field_begin[field_of[i]] = paper_begin[i];

    const int aw = digits_for(n);
    const int pw = digits_for(std::max<std::uint64_t>(total_papers, 1));
    auto paper_name = [&](std::uint64_t g) { return padded('p', g + 1, pw); };

    std::vector<Database::AuthorRecord> authors(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        authors[i].id = padded('a', i + 1, aw);
        for (std::uint64_t g = paper_begin[i]; g < paper_begin[i + 1]; ++g)
            authors[i].papers.push_back(paper_name(g));
    }

    std::vector<Database::EdgeRecord> edges;
    edges.reserve(total_papers * params.refs_per_paper.second);

    for (std::uint32_t i = 0; i < n; ++i) {
        const std::uint32_t f = field_of[i];
        const std::uint64_t flo = field_begin[f];
        const std::uint64_t fhi = field_begin[f + 1];
        const std::uint64_t own_lo = paper_begin[i];
        const std::uint64_t own_hi = paper_begin[i + 1];
        const std::uint64_t pool = (fhi - flo) - (own_hi - own_lo);

        // Uniform over the field's papers minus the author's own block.
        auto draw_target = [&]() {
            const std::uint64_t u = rng.below(pool);
            const std::uint64_t before_own = own_lo - flo;
            return u < before_own ? flo + u : own_hi + (u - before_own);
        };

        bool author_has_ref = false;
        for (std::uint64_t g = own_lo; g < own_hi; ++g) {
            std::uint64_t want = rng.in_range(params.refs_per_paper.first,
                                              params.refs_per_paper.second);
            want = std::min<std::uint64_t>(want, pool);
            std::set<std::uint64_t> targets;
            if (want * 2 > pool) {
                std::vector<std::uint64_t> all;
                all.reserve(pool);
                for (std::uint64_t t = flo; t < fhi; ++t)
                    if (t < own_lo || t >= own_hi)
                        all.push_back(t);
                rng.shuffle(all);
                targets.insert(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(want));
            } else {
                while (targets.size() < want)
                    targets.insert(draw_target());
            }
            for (std::uint64_t t : targets)
                edges.push_back({paper_name(t), paper_name(g)});
            author_has_ref = author_has_ref || !targets.empty();
        }

        // Repair: the domain requires every author to cite another
        // author; give a reference to her first paper if none was drawn.
        if (!author_has_ref)
            edges.push_back({paper_name(draw_target()), paper_name(own_lo)});
    }

    return Database::make(authors, edges);
}

} // namespace biblio
