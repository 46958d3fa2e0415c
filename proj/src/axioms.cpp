#include "biblio/axioms.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "biblio/fixtures.hpp"
#include "biblio/rng.hpp"
#include "biblio/transforms.hpp"

namespace biblio {

std::string_view axiom_name(Axiom axiom) {
    switch (axiom) {
    case Axiom::separability:
        return "separability";
    case Axiom::reference_independence:
        return "reference-independence";
    case Axiom::splitting:
        return "splitting";
    case Axiom::citation_anonymity:
        return "citation-anonymity";
    case Axiom::author_anonymity:
        return "author-anonymity";
    case Axiom::neutrality:
        return "neutrality";
    case Axiom::field_comparability:
        return "field-comparability";
    case Axiom::null_author:
        return "null-author";
    }
    return "?";
}

Axiom parse_axiom(std::string_view name) {
    for (Axiom axiom : all_axioms())
        if (axiom_name(axiom) == name)
            return axiom;
    throw UsageError("unknown axiom '" + std::string(name) + "'");
}

std::vector<Axiom> all_axioms() {
    return {Axiom::separability,      Axiom::reference_independence,
            Axiom::splitting,         Axiom::citation_anonymity,
            Axiom::author_anonymity,  Axiom::neutrality,
            Axiom::field_comparability, Axiom::null_author};
}

namespace {

bool scores_differ(const IndexDescriptor& index, double before, double after) {
    if (index.integer_valued)
        return before != after;
    return std::abs(before - after) > kScoreTolerance;
}

// Evaluates before/after and hunts for a moved protected author.
// The renaming maps a protected author's id in d to her id in d2.
AxiomVerdict compare_protected(const IndexDescriptor& index, Axiom axiom,
                               const Database& d, const Database& d2,
                               const std::vector<std::pair<std::string, std::string>>& protected_authors,
                               const std::string& description) {
    AxiomVerdict verdict;
    verdict.axiom = axiom;
    verdict.trials = 1;
    const auto before = index.evaluate(d);
    const auto after = index.evaluate(d2);
    for (const auto& [old_id, new_id] : protected_authors) {
        const double b = before.at(old_id);
        const double a = after.at(new_id);
        if (scores_differ(index, b, a)) {
            verdict.outcome = AxiomVerdict::Outcome::violated;
            verdict.witness = AxiomWitness{d, description, old_id, b, a};
            return verdict;
        }
    }
    return verdict;
}

std::vector<std::pair<std::string, std::string>> identity_protected(
    const std::vector<std::string>& ids) {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& id : ids)
        out.emplace_back(id, id);
    return out;
}

} // namespace

AxiomVerdict check_axiom(const IndexDescriptor& index, Axiom axiom,
                         const Database& d, const AxiomArgs& args) {
    switch (axiom) {
    case Axiom::separability: {
        if (!args.companion)
            throw DomainError("separability needs a companion database");
        const Database joined = disjoint_union(d, *args.companion);
        return compare_protected(index, axiom, d, joined,
                                 identity_protected(d.author_ids()),
                                 "disjoint union with a second database");
    }
    case Axiom::reference_independence: {
        if (!args.edge)
            throw DomainError("reference-independence needs an edge");
        const auto& [cited, citing] = *args.edge;
        const Database changed = add_reference(d, cited, citing);
        const std::string who = d.author_id(d.owner(d.paper_at(citing)));
        return compare_protected(index, axiom, d, changed, {{who, who}},
                                 "add reference (cited=" + cited +
                                     ", citing=" + citing + ")");
    }
    case Axiom::splitting: {
        if (!args.split)
            throw DomainError("splitting needs a split description");
        const Database changed =
            split_paper(d, args.split->paper, args.split->part1, args.split->new_id);
        return compare_protected(index, axiom, d, changed,
                                 identity_protected(d.author_ids()),
                                 "split paper " + args.split->paper);
    }
    case Axiom::citation_anonymity: {
        if (!args.sigma)
            throw DomainError("citation-anonymity needs a permutation");
        const Database changed = permute_citations(d, *args.sigma);
        std::ostringstream desc;
        desc << "permute citations:";
        for (const auto& [from, to] : *args.sigma)
            desc << " " << from << "->" << to;
        return compare_protected(index, axiom, d, changed,
                                 identity_protected(d.author_ids()), desc.str());
    }
    case Axiom::author_anonymity: {
        if (!args.portfolio)
            throw DomainError("author-anonymity needs a reassignment");
        const Database changed = reassign_papers(d, *args.portfolio);
        // protected: authors present on both sides with identical portfolios
        std::vector<std::pair<std::string, std::string>> kept;
        for (const auto& rec : d.author_records()) {
            const auto it = args.portfolio->find(rec.id);
            if (it == args.portfolio->end())
                continue;
            auto sorted = it->second;
            std::sort(sorted.begin(), sorted.end());
            if (sorted == rec.papers)
                kept.emplace_back(rec.id, rec.id);
        }
        return compare_protected(index, axiom, d, changed, kept,
                                 "reassign papers of the other authors");
    }
    case Axiom::neutrality: {
        if (!args.relabeling)
            throw DomainError("neutrality needs a relabeling");
        const Database changed = relabel(d, *args.relabeling);
        std::vector<std::pair<std::string, std::string>> renamed;
        for (const auto& id : d.author_ids()) {
            std::string to = id;
            for (const auto& [from, target] : args.relabeling->author_map)
                if (from == id)
                    to = target;
            renamed.emplace_back(id, to);
        }
        return compare_protected(index, axiom, d, changed, renamed,
                                 "relabel authors and papers");
    }
    case Axiom::field_comparability:
        return check_field_comparability(index, d);
    case Axiom::null_author:
        return check_null_author(index, d);
    }
    throw DomainError("unhandled axiom");
}

AxiomVerdict check_field_comparability(const IndexDescriptor& index,
                                       const Database& d) {
    AxiomVerdict verdict;
    verdict.axiom = Axiom::field_comparability;
    verdict.trials = 1;

    const FieldPartition part = field_components(d);
    const std::size_t c = part.components.size();
    if (c < 2) {
        verdict.note = "vacuous: single component";
        return verdict;
    }
    if (c > 20)
        throw SizeGuardError("field comparability bipartition scan limited to "
                             "20 components, got " +
                             std::to_string(c));

    const auto scores = index.evaluate(d);
    std::vector<double> sum(c, 0.0);
    std::vector<double> size(c, 0.0);
    for (std::size_t i = 0; i < c; ++i) {
        size[i] = static_cast<double>(part.components[i].authors.size());
        for (const auto& id : part.components[i].authors)
            sum[i] += scores.at(id);
    }

    double worst = 0.0;
    std::uint64_t worst_mask = 0;
    double worst_m1 = 0.0, worst_m2 = 0.0;
    for (std::uint64_t mask = 1; mask + 1 < (std::uint64_t{1} << c); ++mask) {
        double s1 = 0.0, n1 = 0.0, s2 = 0.0, n2 = 0.0;
        for (std::size_t i = 0; i < c; ++i) {
            if (mask & (std::uint64_t{1} << i)) {
                s1 += sum[i];
                n1 += size[i];
            } else {
                s2 += sum[i];
                n2 += size[i];
            }
        }
        const double gap = std::abs(s1 / n1 - s2 / n2);
        if (gap > worst) {
            worst = gap;
            worst_mask = mask;
            worst_m1 = s1 / n1;
            worst_m2 = s2 / n2;
        }
    }

    if (worst > kScoreTolerance) {
        std::ostringstream desc;
        desc << "bipartition of components {";
        bool first = true;
        for (std::size_t i = 0; i < c; ++i)
            if (worst_mask & (std::uint64_t{1} << i)) {
                desc << (first ? "" : ",") << i;
                first = false;
            }
        desc << "} against the rest; group means differ";
        verdict.outcome = AxiomVerdict::Outcome::violated;
        verdict.witness = AxiomWitness{d, desc.str(), "", worst_m1, worst_m2};
    }
    return verdict;
}

AxiomVerdict check_null_author(const IndexDescriptor& index, const Database& d) {
    AxiomVerdict verdict;
    verdict.axiom = Axiom::null_author;
    verdict.trials = 1;

    const auto scores = index.evaluate(d);
    for (AuthorIdx a = 0; a < d.author_count(); ++a) {
        bool cited = false;
        for (PaperIdx p : d.portfolio(a))
            if (d.citation_count(p) > 0) {
                cited = true;
                break;
            }
        const double score = scores.at(d.author_id(a));
        const bool positive = index.integer_valued ? score > 0.0 : score > 1e-12;
        if (positive != cited) {
            verdict.outcome = AxiomVerdict::Outcome::violated;
            verdict.witness = AxiomWitness{
                d,
                cited ? "author is cited but scores zero"
                      : "author is uncited but scores positive",
                d.author_id(a), score, cited ? 1.0 : 0.0};
            return verdict;
        }
    }
    return verdict;
}

ImpossibilityReport demonstrate_impossibility(const IndexDescriptor& index) {
    ImpossibilityReport report;
    report.index = index.name;

    const Database d = fixture("impossibility-d");
    const Database d2 = fixture("impossibility-d2");

    report.null_author_ok =
        !check_null_author(index, d).violated() && !check_null_author(index, d2).violated();

    const AxiomVerdict fc1 = check_field_comparability(index, d);
    const AxiomVerdict fc2 = check_field_comparability(index, d2);
    report.field_comparability_ok = !fc1.violated() && !fc2.violated();

    for (const Database* db : {&d, &d2}) {
        const FieldPartition part = field_components(*db);
        const auto scores = index.evaluate(*db);
        auto& means = db == &d ? report.means_d : report.means_d2;
        for (const auto& comp : part.components) {
            double sum = 0.0;
            for (const auto& id : comp.authors)
                sum += scores.at(id);
            means.push_back(sum / static_cast<double>(comp.authors.size()));
        }
    }

    AxiomArgs args;
    std::map<std::string, std::vector<std::string>> portfolio;
    for (const auto& rec : d2.author_records())
        portfolio[rec.id] = rec.papers;
    args.portfolio = portfolio;
    report.author_anonymity_ok =
        !check_axiom(index, Axiom::author_anonymity, d, args).violated();

    if (!report.null_author_ok)
        report.failed.push_back("null-author");
    if (!report.author_anonymity_ok)
        report.failed.push_back("author-anonymity");
    if (!report.field_comparability_ok)
        report.failed.push_back("field-comparability");
    return report;
}

namespace {

// Random legal transformations for the witness search. Each builder
// returns false when the database offers no legal move of its kind.

bool random_companion(Rng& rng, const Database& d, AxiomArgs& args) {
    GeneratorParams params;
    params.n_authors = static_cast<std::uint32_t>(rng.in_range(2, 4));
    params.papers_per_author = {1, 2};
    params.refs_per_paper = {1, 2};
    params.n_fields = 1;
    params.seed = rng.next();
    Database companion = generate_random_db(params);
    std::string prefix = "u_";
    for (int attempt = 0; attempt < 8; ++attempt) {
        Relabeling r;
        for (const auto& id : companion.author_ids())
            r.author_map.emplace_back(id, prefix + id);
        for (const auto& id : companion.paper_ids())
            r.paper_map.emplace_back(id, prefix + id);
        Database renamed = relabel(companion, r);
        bool clash = false;
        for (const auto& id : renamed.author_ids())
            clash = clash || d.find_author(id).has_value();
        for (const auto& id : renamed.paper_ids())
            clash = clash || d.find_paper(id).has_value();
        if (!clash) {
            args.companion = std::move(renamed);
            return true;
        }
        prefix += "u";
    }
    return false;
}

bool random_reference(Rng& rng, const Database& d, AxiomArgs& args) {
    for (int attempt = 0; attempt < 40; ++attempt) {
        const PaperIdx citing = static_cast<PaperIdx>(rng.below(d.paper_count()));
        const PaperIdx cited = static_cast<PaperIdx>(rng.below(d.paper_count()));
        if (cited == citing || d.owner(cited) == d.owner(citing))
            continue;
        if (d.has_edge(cited, citing))
            continue;
        args.edge = {d.paper_id(cited), d.paper_id(citing)};
        return true;
    }
    return false;
}

bool random_split(Rng& rng, const Database& d, AxiomArgs& args) {
    std::vector<PaperIdx> candidates;
    for (PaperIdx q = 0; q < d.paper_count(); ++q)
        if (d.citation_count(q) == 0 && d.reference_count(q) >= 2)
            candidates.push_back(q);
    if (candidates.empty())
        return false;
    const PaperIdx q = rng.pick(candidates);
    const auto refs = d.references_of(q);
    // a random proper nonempty subset
    std::vector<std::string> part;
    for (;;) {
        part.clear();
        for (PaperIdx r : refs)
            if (rng.below(2) == 0)
                part.push_back(d.paper_id(r));
        if (!part.empty() && part.size() < refs.size())
            break;
    }
    std::string new_id = "s_" + d.paper_id(q);
    while (d.find_paper(new_id))
        new_id = "s" + new_id;
    args.split = AxiomArgs::Split{d.paper_id(q), part, new_id};
    return true;
}

bool random_sigma(Rng& rng, const Database& d, AxiomArgs& args) {
    std::vector<AuthorIdx> rich;
    for (AuthorIdx a = 0; a < d.author_count(); ++a)
        if (d.portfolio(a).size() >= 2)
            rich.push_back(a);
    if (rich.empty())
        return false;
    const AuthorIdx a = rng.pick(rich);
    const auto papers = d.portfolio(a);
    std::vector<PaperIdx> image(papers.begin(), papers.end());
    for (int attempt = 0; attempt < 20; ++attempt) {
        rng.shuffle(image);
        if (!std::equal(papers.begin(), papers.end(), image.begin()))
            break;
    }
    if (std::equal(papers.begin(), papers.end(), image.begin()))
        return false;
    std::map<std::string, std::string> sigma;
    for (std::size_t i = 0; i < image.size(); ++i)
        sigma[d.paper_id(papers[i])] = d.paper_id(image[i]);
    args.sigma = std::move(sigma);
    return true;
}

bool random_reassignment(Rng& rng, const Database& d, AxiomArgs& args) {
    if (d.author_count() < 2)
        return false;
    for (int attempt = 0; attempt < 40; ++attempt) {
        std::vector<AuthorIdx> donors;
        for (AuthorIdx a = 0; a < d.author_count(); ++a)
            if (d.portfolio(a).size() >= 2)
                donors.push_back(a);
        if (donors.empty())
            return false;
        const AuthorIdx donor = rng.pick(donors);
        AuthorIdx recipient = static_cast<AuthorIdx>(rng.below(d.author_count()));
        if (recipient == donor)
            continue;
        const auto papers = d.portfolio(donor);
        const PaperIdx moved = papers[rng.below(papers.size())];

        std::map<std::string, std::vector<std::string>> portfolio;
        for (const auto& rec : d.author_records())
            portfolio[rec.id] = rec.papers;
        auto& from = portfolio[d.author_id(donor)];
        from.erase(std::find(from.begin(), from.end(), d.paper_id(moved)));
        portfolio[d.author_id(recipient)].push_back(d.paper_id(moved));
        try {
            reassign_papers(d, portfolio);
        } catch (const DomainError&) {
            continue; // the move left the domain; try another
        }
        args.portfolio = std::move(portfolio);
        return true;
    }
    return false;
}

bool random_relabeling(Rng& rng, const Database& d, AxiomArgs& args) {
    Relabeling r;
    std::vector<std::string> authors = d.author_ids();
    std::vector<std::string> papers = d.paper_ids();
    if (rng.below(2) == 0) {
        // shuffle names within the existing id sets
        std::vector<std::string> ashuf = authors, pshuf = papers;
        rng.shuffle(ashuf);
        rng.shuffle(pshuf);
        for (std::size_t i = 0; i < authors.size(); ++i)
            r.author_map.emplace_back(authors[i], ashuf[i]);
        for (std::size_t i = 0; i < papers.size(); ++i)
            r.paper_map.emplace_back(papers[i], pshuf[i]);
    } else {
        // fresh names
        for (const auto& id : authors)
            r.author_map.emplace_back(id, "n_" + id);
        for (const auto& id : papers)
            r.paper_map.emplace_back(id, "n_" + id);
    }
    args.relabeling = std::move(r);
    return true;
}

} // namespace

AxiomVerdict find_violation(const IndexDescriptor& index, Axiom axiom,
                            const GeneratorParams& gen, std::uint64_t seed,
                            int budget, const std::optional<Database>& fixed) {
    budget = std::max(budget, 1);
    Rng rng(seed);

    AxiomVerdict verdict;
    verdict.axiom = axiom;
    verdict.seed = seed;

    for (int trial = 1; trial <= budget; ++trial) {
        verdict.trials = trial;

        std::optional<Database> generated;
        if (!fixed) {
            GeneratorParams params = gen;
            params.seed = rng.next();
            generated = generate_random_db(params);
        }
        const Database& d = fixed ? *fixed : *generated;

        if (axiom == Axiom::field_comparability || axiom == Axiom::null_author) {
            AxiomVerdict one = axiom == Axiom::field_comparability
                                   ? check_field_comparability(index, d)
                                   : check_null_author(index, d);
            if (one.violated()) {
                one.trials = trial;
                one.seed = seed;
                return one;
            }
            if (fixed) {
                // the check is deterministic per database; nothing new
                // can come from repeating it
                one.trials = trial;
                one.seed = seed;
                return one;
            }
            continue;
        }

        AxiomArgs args;
        bool built = false;
        switch (axiom) {
        case Axiom::separability:
            built = random_companion(rng, d, args);
            break;
        case Axiom::reference_independence:
            built = random_reference(rng, d, args);
            break;
        case Axiom::splitting:
            built = random_split(rng, d, args);
            break;
        case Axiom::citation_anonymity:
            built = random_sigma(rng, d, args);
            break;
        case Axiom::author_anonymity:
            built = random_reassignment(rng, d, args);
            break;
        case Axiom::neutrality:
            built = random_relabeling(rng, d, args);
            break;
        default:
            break;
        }
        if (!built)
            continue; // no legal move of this kind; the trial still counts

        AxiomVerdict one = check_axiom(index, axiom, d, args);
        if (one.violated()) {
            one.trials = trial;
            one.seed = seed;
            if (one.witness)
                one.witness->transformation += " (trial " + std::to_string(trial) + ")";
            return one;
        }
    }

    verdict.trials = budget;
    return verdict;
}

} // namespace biblio
