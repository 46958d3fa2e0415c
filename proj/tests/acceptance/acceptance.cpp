// Acceptance suite: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <sys/resource.h>
#include <vector>

#include "biblio/aggregators.hpp"
#include "biblio/author_index.hpp"
#include "biblio/axioms.hpp"
#include "biblio/counting.hpp"
#include "biblio/fixtures.hpp"
#include "biblio/generator.hpp"
#include "biblio/rng.hpp"
#include "biblio/transforms.hpp"

using namespace biblio;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool passed,
            const std::string& detail) {
    std::printf("[%2d] %s  %s%s%s\n", number, passed ? "PASS" : "FAIL",
                name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
    if (!passed)
        ++failures;
}

double sum_values(const std::map<std::string, double>& m) {
    double s = 0.0;
    for (const auto& [k, v] : m)
        s += v;
    return s;
}

GeneratorParams random_db_params(Rng& rng, std::uint32_t max_authors,
                                 std::uint32_t max_papers_per_author) {
    GeneratorParams gp;
    gp.n_authors = static_cast<std::uint32_t>(rng.in_range(4, max_authors));
    gp.papers_per_author = {1, static_cast<std::uint32_t>(
                                   rng.in_range(1, max_papers_per_author))};
    gp.refs_per_paper = {1, static_cast<std::uint32_t>(rng.in_range(1, 4))};
    gp.n_fields = static_cast<std::uint32_t>(rng.in_range(1, 3));
    if (gp.n_authors < 2 * gp.n_fields)
        gp.n_fields = 1;
    gp.seed = rng.next();
    return gp;
}

// criterion 1: sum of influence equals the author count
void criterion_global_identity() {
    const auto start = std::chrono::steady_clock::now();
    Rng rng(1001);
    double worst = 0.0;
    bool ok = true;
    for (int i = 0; i < 100; ++i) {
        const Database d = generate_random_db(random_db_params(rng, 50, 6));
        const double a = static_cast<double>(d.author_count());
        for (const double delta : {0.0, 0.3, 0.5, 0.9}) {
            const auto result = influence_index(d, {delta, 1e-10, std::nullopt});
            const double gap = std::abs(sum_values(result.per_author) - a);
            worst = std::max(worst, gap / a);
            ok = ok && gap <= 1e-8 * a;
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    ok = ok && secs < 30.0;
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "100 databases x 4 deltas, worst relative gap %.2e, %.1fs",
                  worst, secs);
    report(1, "global identity sum(I) = A", ok, detail);
}

// criterion 2: per-component means equal one
void criterion_field_comparability() {
    Rng rng(1002);
    const InfluenceParams params{0.5, 1e-10, std::nullopt};
    const auto registry = builtin_indices(params);
    const IndexDescriptor* influence = find_index(registry, "influence");
    bool ok = true;
    double worst = 0.0;
    int multi = 0;
    for (int i = 0; i < 40 || multi < 15; ++i) {
        if (i > 200)
            break;
        GeneratorParams gp = random_db_params(rng, 30, 4);
        gp.n_fields = static_cast<std::uint32_t>(rng.in_range(2, 4));
        if (gp.n_authors < 2 * gp.n_fields)
            gp.n_authors = 2 * gp.n_fields;
        const Database d = generate_random_db(gp);
        const FieldPartition part = field_components(d);
        if (part.components.size() < 2)
            continue;
        ++multi;
        const auto result = influence_index(d, params);
        for (const auto& comp : part.components) {
            double sum = 0.0;
            for (const auto& id : comp.authors)
                sum += result.per_author.at(id);
            const double mean = sum / static_cast<double>(comp.authors.size());
            worst = std::max(worst, std::abs(mean - 1.0));
            ok = ok && std::abs(mean - 1.0) <= 1e-8;
        }
        ok = ok && !check_field_comparability(*influence, d).violated();
    }
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "%d multi-component databases, worst |mean-1| = %.2e", multi,
                  worst);
    report(2, "field comparability of the influence index", ok, detail);
}

// criterion 3: closed forms on the fixtures
void criterion_closed_forms() {
    bool ok = true;
    double worst = 0.0;
    const Database pair = fixture("mutual-pair");
    const Database chain = fixture("chain-3");
    for (int i = 1; i <= 9; ++i) {
        const double delta = 0.1 * i;
        const InfluenceParams params{delta, 1e-12, std::nullopt};

        const double pi = pi_delta_pair(pair, params, "pa", "pb");
        const double ai = bilateral_author_influence(pair, params, "a", "b");
        const auto result = influence_index(pair, params);
        const auto sigma = exerted_totals(chain, params);

        const double expect = 1.0 / (1.0 + delta);
        for (const double gap :
             {std::abs(pi - expect), std::abs(ai - expect),
              std::abs(result.per_author.at("a") - 1.0),
              std::abs(result.per_author.at("b") - 1.0),
              std::abs(sigma.at("r") - (1.0 - delta * delta))}) {
            worst = std::max(worst, gap);
            ok = ok && gap <= 1e-10;
        }

        // independent dense confirmation of the pairwise closed form
        const DenseMatrix oracle =
            dense_oracle_pi(pair, delta, params.truncation_order());
        const double dense_gap =
            std::abs(oracle.at(pair.paper_at("pa"), pair.paper_at("pb")) - expect);
        worst = std::max(worst, dense_gap - 1e-10);
        ok = ok && dense_gap <= 2e-10;
    }
    char detail[64];
    std::snprintf(detail, sizeof detail, "worst gap %.2e", worst);
    report(3, "closed forms on mutual pair and chain", ok, detail);
}

// criterion 4: sparse/dense equivalence
void criterion_sparse_dense() {
    Rng rng(1004);
    const InfluenceParams params{0.5, 1e-10, std::nullopt};
    const int order = params.truncation_order();
    const double bound = params.tolerance + std::pow(params.delta, order);
    bool ok = true;
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        GeneratorParams gp = random_db_params(rng, 12, 4);
        const Database d = generate_random_db(gp);
        if (d.paper_count() > 100)
            continue;
        const CitationMatrix m = direct_influence_matrix(d);
        const DenseMatrix oracle = dense_oracle_pi(d, params.delta, order);

        // a handful of pairs per database
        for (int s = 0; s < 12; ++s) {
            const PaperIdx p = static_cast<PaperIdx>(rng.below(d.paper_count()));
            const PaperIdx q = static_cast<PaperIdx>(rng.below(d.paper_count()));
            const double gap =
                std::abs(pi_delta_pair(m, params, p, q) - oracle.at(p, q));
            worst = std::max(worst, gap);
            ok = ok && gap <= bound;
        }

        // influence index against a dense recomputation
        const auto result = influence_index(d, params);
        std::vector<double> sigma(d.paper_count(), 0.0);
        for (PaperIdx q = 0; q < d.paper_count(); ++q)
            for (PaperIdx p = 0; p < d.paper_count(); ++p)
                sigma[q] += oracle.at(p, q);
        std::vector<double> norm(d.author_count(), 0.0);
        for (PaperIdx q = 0; q < d.paper_count(); ++q)
            norm[d.owner(q)] += sigma[q];
        for (AuthorIdx a = 0; a < d.author_count(); ++a) {
            double value = 0.0;
            for (PaperIdx p : d.portfolio(a))
                for (PaperIdx q = 0; q < d.paper_count(); ++q)
                    value += oracle.at(p, q) / norm[d.owner(q)];
            const double gap = std::abs(value - result.per_author.at(d.author_id(a)));
            worst = std::max(worst, gap);
            ok = ok && gap <= bound;
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "50 databases, worst pairwise gap %.2e",
                  worst);
    report(4, "sparse path matches the dense oracle", ok, detail);
}

// criterion 5: counting schemes depend only on the citation multiset
void criterion_multiset_dependence() {
    Rng rng(1005);
    const auto registry = builtin_indices({0.5, 1e-10, std::nullopt});
    const IndexDescriptor* schemes[] = {find_index(registry, "h"),
                                        find_index(registry, "euclid")};
    bool ok = true;

    // canonical reduction invariance
    for (int i = 0; i < 20; ++i) {
        const Database d = generate_random_db(random_db_params(rng, 10, 4));
        for (const auto& id : d.author_ids()) {
            Database reduced = [&]() -> Database {
                try {
                    return canonical_reduction(d, id);
                } catch (const UncitedAuthorError&) {
                    return d; // trivial outcome: nothing to compare
                }
            }();
            for (const IndexDescriptor* scheme : schemes) {
                const double before = scheme->evaluate_one(d, id);
                const double after = scheme->evaluate_one(reduced, id);
                ok = ok && std::abs(before - after) <=
                               (scheme->integer_valued ? 0.0 : 1e-12);
            }
        }
    }

    // random citation-anonymity and author-anonymity transformations
    int transformations = 0;
    for (int i = 0; transformations < 200 && i < 2000; ++i) {
        const Database d = generate_random_db(random_db_params(rng, 10, 4));
        for (const Axiom axiom :
             {Axiom::citation_anonymity, Axiom::author_anonymity}) {
            const std::uint64_t seed = rng.next();
            for (const IndexDescriptor* scheme : schemes) {
                const AxiomVerdict verdict =
                    find_violation(*scheme, axiom, GeneratorParams{}, seed, 1, d);
                ok = ok && !verdict.violated();
            }
            ++transformations;
        }
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "%d random transformations checked",
                  transformations);
    report(5, "h and euclid are citation-counting schemes", ok, detail);
}

// criterion 6: the five independence indices
void criterion_independence() {
    bool ok = true;
    std::string detail;
    const GeneratorParams gp = [] {
        GeneratorParams p;
        p.n_authors = 6;
        p.papers_per_author = {1, 3};
        p.refs_per_paper = {1, 3};
        p.n_fields = 1;
        return p;
    }();

    const std::pair<const char*, Axiom> designated[] = {
        {"indep-separability", Axiom::separability},
        {"indep-reference-independence", Axiom::reference_independence},
        {"indep-splitting", Axiom::splitting},
        {"indep-citation-anonymity", Axiom::citation_anonymity},
        {"indep-author-anonymity", Axiom::author_anonymity},
    };
    const Axiom five[] = {Axiom::separability, Axiom::reference_independence,
                          Axiom::splitting, Axiom::citation_anonymity,
                          Axiom::author_anonymity};

    const auto indices = independence_indices();
    for (const auto& [name, violated_axiom] : designated) {
        const IndexDescriptor* index = find_index(indices, name);
        for (const Axiom axiom : five) {
            const AxiomVerdict verdict = find_violation(
                *index, axiom, gp, 2024, axiom == violated_axiom ? 500 : 200);
            const bool expect_witness = axiom == violated_axiom;
            if (verdict.violated() != expect_witness) {
                ok = false;
                detail += std::string(name) + "/" + std::string(axiom_name(axiom)) +
                          (expect_witness ? " found no witness; " : " violated; ");
            }
        }
    }
    report(6, "axiom independence suite", ok, detail);
}

// criterion 7: the impossibility demonstration
void criterion_impossibility() {
    const auto registry = builtin_indices({0.5, 1e-10, std::nullopt});
    bool ok = true;
    std::string detail;
    for (const auto& index : registry) {
        const ImpossibilityReport rep = demonstrate_impossibility(index);
        if (!rep.any_failed()) {
            ok = false;
            detail += index.name + " fails nothing; ";
        }
        if (index.name == "influence") {
            ok = ok && !rep.author_anonymity_ok && rep.null_author_ok &&
                 rep.field_comparability_ok;
            for (const auto& means : {rep.means_d, rep.means_d2})
                for (const double mean : means)
                    ok = ok && std::abs(mean - 1.0) <= 1e-9;
        }
    }
    report(7, "impossibility demonstration over the registry", ok, detail);
}

// criterion 8: replayable witnesses for the influence index
void criterion_influence_witnesses() {
    const auto registry = builtin_indices({0.5, 1e-10, std::nullopt});
    const IndexDescriptor* influence = find_index(registry, "influence");
    GeneratorParams gp;
    gp.n_authors = 6;
    gp.papers_per_author = {1, 3};
    gp.refs_per_paper = {1, 3};
    bool ok = true;
    std::string detail;
    for (const Axiom axiom : {Axiom::splitting, Axiom::citation_anonymity,
                              Axiom::author_anonymity}) {
        const AxiomVerdict v1 = find_violation(*influence, axiom, gp, 404, 500);
        const AxiomVerdict v2 = find_violation(*influence, axiom, gp, 404, 500);
        if (!v1.violated()) {
            ok = false;
            detail += std::string(axiom_name(axiom)) + " no witness in 500; ";
            continue;
        }
        const bool same = v1.trials == v2.trials && v2.violated() &&
                          v1.witness->transformation == v2.witness->transformation &&
                          v1.witness->author == v2.witness->author &&
                          v1.witness->database == v2.witness->database;
        if (!same) {
            ok = false;
            detail += std::string(axiom_name(axiom)) + " not replayable; ";
        } else {
            detail += std::string(axiom_name(axiom)) + " at trial " +
                      std::to_string(v1.trials) + "; ";
        }
    }
    report(8, "influence violation witnesses (delta=0.5)", ok, detail);
}

// criterion 9: the doubled-citations two-field bias
void criterion_two_field_bias() {
    const Database d = Database::make(
        {{"f1x", {"X"}},
         {"f1y", {"Y"}},
         {"f1z", {"Z1", "Z2", "Z3", "Z4", "Z5"}},
         {"f2x", {"x"}},
         {"f2y", {"y"}},
         {"f2z", {"z1", "z2"}}},
        {{"y", "x"}, {"x", "y"}, {"y", "z1"}, {"y", "z2"},
         {"Y", "X"}, {"X", "Y"}, {"X", "Z1"}, {"Y", "Z1"},
         {"Y", "Z2"}, {"Y", "Z3"}, {"Y", "Z4"}, {"Y", "Z5"}});

    const FieldPartition part = field_components(d);
    bool ok = part.components.size() == 2 && validate_domain(d).valid;

    auto component_means = [&](const std::map<std::string, double>& scores) {
        std::vector<double> means;
        for (const auto& comp : part.components) {
            double sum = 0.0;
            for (const auto& id : comp.authors)
                sum += scores.at(id);
            means.push_back(sum / static_cast<double>(comp.authors.size()));
        }
        return means;
    };

    const InfluenceParams params{0.5, 1e-10, std::nullopt};
    const auto registry = builtin_indices(params);

    const auto euclid_means =
        component_means(find_index(registry, "euclid")->evaluate(d));
    const double ratio = euclid_means[0] / euclid_means[1];
    ok = ok && std::abs(ratio - 2.0) <= 1e-12;

    for (const char* name : {"comparable-direct", "influence"}) {
        const auto means = component_means(find_index(registry, name)->evaluate(d));
        ok = ok && std::abs(means[0] / means[1] - 1.0) <= 1e-9;
    }
    char detail[96];
    std::snprintf(detail, sizeof detail,
                  "euclid ratio %.12f, others within 1e-9 of 1", ratio);
    report(9, "two-field bias of euclid, none for influence", ok, detail);
}

// criterion 10: the weighted, noself and concave variants
void criterion_variants() {
    Rng rng(1010);
    bool ok = true;
    double worst = 0.0;

    for (int i = 0; i < 10; ++i) {
        const Database d = generate_random_db(random_db_params(rng, 12, 3));
        const double a = static_cast<double>(d.author_count());
        const InfluenceParams params{0.5, 1e-10, std::nullopt};

        // half-half shares with the next author
        WeightScheme w;
        for (PaperIdx p = 0; p < d.paper_count(); ++p) {
            const auto& owner = d.author_id(d.owner(p));
            const auto& buddy = d.author_id(
                (d.owner(p) + 1) % static_cast<AuthorIdx>(d.author_count()));
            w.paper_shares[d.paper_id(p)] = {{owner, 0.5}, {buddy, 0.5}};
        }
        const auto weighted = influence_index(d, params, w, IndexMode::weighted);
        worst = std::max(worst, std::abs(sum_values(weighted.per_author) - a));
        ok = ok && std::abs(sum_values(weighted.per_author) - a) <= 1e-8;

        // noself on a database with self-citations
        Database selfish = d;
        for (AuthorIdx author = 0; author < d.author_count(); ++author) {
            const auto papers = d.portfolio(author);
            if (papers.size() >= 2 &&
                !d.has_edge(papers[0], papers[1])) {
                selfish = add_reference(d, d.paper_id(papers[0]),
                                        d.paper_id(papers[1]), false);
                break;
            }
        }
        const auto noself = influence_index(selfish, params, {}, IndexMode::noself);
        const double a2 = static_cast<double>(noself.per_author.size());
        worst = std::max(worst, std::abs(sum_values(noself.per_author) - a2));
        ok = ok && std::abs(sum_values(noself.per_author) - a2) <= 1e-8;

        // concave alternative
        const auto base = influence_index(d, params);
        for (const double exponent : {0.0, 0.5, 1.0}) {
            const auto alt = concave_index(d, params, exponent);
            worst = std::max(worst, std::abs(sum_values(alt) - a));
            ok = ok && std::abs(sum_values(alt) - a) <= 1e-8;
            if (exponent == 1.0)
                for (const auto& [author, value] : base.per_author)
                    ok = ok && std::abs(alt.at(author) - value) <= 1e-9;
        }
    }
    char detail[64];
    std::snprintf(detail, sizeof detail, "worst identity gap %.2e", worst);
    report(10, "weighted, noself and concave variants keep sum(I) = A", ok,
           detail);
}

// criterion 11: aggregation-function properties
void criterion_aggregators() {
    Rng rng(1011);
    std::vector<AggregatorSample> samples(1000);
    for (auto& s : samples) {
        const std::size_t len = rng.in_range(1, 15);
        for (std::size_t i = 0; i < len; ++i)
            s.prefix.push_back(rng.unit());
    }
    const AggregatorPropertyReport finite = check_aggregator_properties(
        AggregatorKind::finite_sum, 1.7, 0.0, samples, 31);
    const AggregatorPropertyReport discounted = check_aggregator_properties(
        AggregatorKind::discounted_sum, 1.7, 0.55, samples, 37);
    bool ok = finite.all_passed() && discounted.all_passed();
    bool saw_long_run = false;
    double worst = 0.0;
    for (const auto& rep : {finite, discounted})
        for (const auto& p : rep.properties) {
            worst = std::max(worst, p.max_deviation);
            saw_long_run = saw_long_run || p.property == "long-run";
        }
    ok = ok && saw_long_run;
    char detail[96];
    std::snprintf(detail, sizeof detail,
                  "1000 samples; worst identity deviation %.2e", worst);
    report(11, "aggregator properties and long-run witnesses", ok, detail);
}

// criterion 12: the large-database performance target
void criterion_performance() {
    GeneratorParams gp;
    gp.n_authors = 10000;
    gp.papers_per_author = {10, 10};
    gp.refs_per_paper = {10, 10};
    gp.n_fields = 1;
    gp.seed = 99;

    const auto start = std::chrono::steady_clock::now();
    const Database d = generate_random_db(gp);
    const auto result = influence_index(d, {0.5, 1e-10, std::nullopt});
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();

    struct rusage usage{};
    getrusage(RUSAGE_SELF, &usage);
    const double peak_gb =
        static_cast<double>(usage.ru_maxrss) / (1024.0 * 1024.0);

    const double gap = std::abs(sum_values(result.per_author) -
                                static_cast<double>(d.author_count()));
    const bool ok = d.paper_count() == 100000 && d.edge_count() == 1000000 &&
                    secs < 60.0 && peak_gb < 2.0 && gap <= 1e-8 * 10000;
    char detail[128];
    std::snprintf(detail, sizeof detail,
                  "%zu papers, %zu edges, %.1fs, peak %.2f GiB, identity gap %.1e",
                  d.paper_count(), d.edge_count(), secs, peak_gb, gap);
    report(12, "100k papers / 1M edges under 60s and 2GB", ok, detail);
}

} // namespace

int main() {
    criterion_global_identity();
    criterion_field_comparability();
    criterion_closed_forms();
    criterion_sparse_dense();
    criterion_multiset_dependence();
    criterion_independence();
    criterion_impossibility();
    criterion_influence_witnesses();
    criterion_two_field_bias();
    criterion_variants();
    criterion_aggregators();
    criterion_performance();

    if (failures) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
