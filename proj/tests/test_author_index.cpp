#include "doctest.h"

#include <cmath>

#include "biblio/author_index.hpp"
#include "biblio/fixtures.hpp"
#include "biblio/generator.hpp"
#include "biblio/transforms.hpp"

using namespace biblio;

namespace {

InfluenceParams tight(double delta) { return {delta, 1e-12, std::nullopt}; }

double sum_values(const std::map<std::string, double>& m) {
    double s = 0.0;
    for (const auto& [k, v] : m)
        s += v;
    return s;
}

} // namespace

TEST_CASE("P' on the mutual pair is one per author") {
    for (const double delta : {0.1, 0.5, 0.9}) {
        const auto norm = normalizer_p_prime(fixture("mutual-pair"), tight(delta));
        CHECK(norm.at("a") == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(norm.at("b") == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("P' on the relaxed chain equals the exerted totals") {
    for (const double delta : {0.1, 0.5, 0.9}) {
        const auto norm = normalizer_p_prime(fixture("chain-3"), tight(delta));
        CHECK(norm.at("c") == doctest::Approx(1.0 - delta * delta).epsilon(1e-10));
        CHECK(norm.at("b") == doctest::Approx(1.0 - delta).epsilon(1e-10));
        CHECK(norm.at("a") == 0.0); // zero signals the domain exit
    }
}

TEST_CASE("P' never exceeds the paper count") {
    GeneratorParams gp;
    gp.n_authors = 15;
    gp.papers_per_author = {1, 4};
    gp.refs_per_paper = {1, 3};
    gp.seed = 5;
    const Database d = generate_random_db(gp);
    const auto norm = normalizer_p_prime(d, tight(0.5));
    for (AuthorIdx a = 0; a < d.author_count(); ++a) {
        const double value = norm.at(d.author_id(a));
        CHECK(value > 0.0);
        CHECK(value <= static_cast<double>(d.portfolio(a).size()) + 1e-10);
    }
}

TEST_CASE("bilateral influence closed forms on the mutual pair") {
    const Database d = fixture("mutual-pair");
    for (const double delta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        CHECK(bilateral_author_influence(d, tight(delta), "a", "b") ==
              doctest::Approx(1.0 / (1.0 + delta)).epsilon(1e-10));
        CHECK(bilateral_author_influence(d, tight(delta), "a", "a") ==
              doctest::Approx(delta / (1.0 + delta)).epsilon(1e-10));
    }
}

TEST_CASE("bilateral influence columns sum to one") {
    GeneratorParams gp;
    gp.n_authors = 8;
    gp.papers_per_author = {1, 3};
    gp.refs_per_paper = {1, 3};
    gp.seed = 17;
    const Database d = generate_random_db(gp);
    const InfluenceParams params = tight(0.5);
    for (const auto& b : d.author_ids()) {
        double column = 0.0;
        for (const auto& a : d.author_ids())
            column += bilateral_author_influence(d, params, a, b);
        CHECK(column == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("bilateral influence vanishes across fields") {
    const Database d = fixture("impossibility-d");
    CHECK(bilateral_author_influence(d, tight(0.5), "a", "x") == 0.0);
    CHECK(bilateral_author_influence(d, tight(0.5), "x", "a") == 0.0);
}

TEST_CASE("influence index of the mutual pair is one each") {
    const Database d = fixture("mutual-pair");
    for (const double delta : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        const auto result = influence_index(d, tight(delta));
        CHECK(result.per_author.at("a") == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(result.per_author.at("b") == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("total influence equals the author count") {
    GeneratorParams gp;
    gp.n_authors = 30;
    gp.papers_per_author = {1, 5};
    gp.refs_per_paper = {1, 4};
    gp.n_fields = 2;
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        gp.seed = seed;
        const Database d = generate_random_db(gp);
        for (const double delta : {0.0, 0.3, 0.5, 0.9}) {
            const auto result = influence_index(d, {delta, 1e-10, std::nullopt});
            CHECK(sum_values(result.per_author) ==
                  doctest::Approx(static_cast<double>(d.author_count()))
                      .epsilon(1e-9));
        }
    }
}

TEST_CASE("per-component influence sums to the component size") {
    const Database d = fixture("impossibility-d");
    const auto result = influence_index(d, tight(0.5));
    const FieldPartition part = field_components(d);
    for (const auto& comp : part.components) {
        double sum = 0.0;
        for (const auto& id : comp.authors)
            sum += result.per_author.at(id);
        CHECK(sum == doctest::Approx(static_cast<double>(comp.authors.size()))
                         .epsilon(1e-9));
    }
}

TEST_CASE("base mode rejects databases with zero normalizers") {
    CHECK_THROWS_AS(influence_index(fixture("chain-3"), tight(0.5)), DomainError);
}

TEST_CASE("weighted normalizers degenerate to P' without shares") {
    const Database d = fixture("impossibility-d");
    const auto p1 = normalizer_p_prime(d, tight(0.5));
    const auto p2 = weighted_normalizers(d, tight(0.5), {}, IndexMode::weighted);
    for (const auto& [author, value] : p1)
        CHECK(p2.at(author) == doctest::Approx(value).epsilon(1e-12));
}

TEST_CASE("noself normalizer on the mutual pair") {
    const Database d = fixture("mutual-pair");
    for (const double delta : {0.1, 0.5, 0.9}) {
        const auto norm =
            weighted_normalizers(d, tight(delta), {}, IndexMode::noself);
        // P''' = 1 - delta/(1+delta) = 1/(1+delta)
        CHECK(norm.at("a") ==
              doctest::Approx(1.0 / (1.0 + delta)).epsilon(1e-10));
    }
}

TEST_CASE("equal shares split P'' equally") {
    const Database d = fixture("mutual-pair");
    WeightScheme w;
    w.paper_shares["pa"] = {{"a", 0.5}, {"b", 0.5}};
    w.paper_shares["pb"] = {{"a", 0.5}, {"b", 0.5}};
    const auto norm = weighted_normalizers(d, tight(0.5), w, IndexMode::weighted);
    CHECK(norm.at("a") == doctest::Approx(norm.at("b")).epsilon(1e-12));
    CHECK(norm.at("a") == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("weighted mode keeps the global identity") {
    GeneratorParams gp;
    gp.n_authors = 10;
    gp.papers_per_author = {1, 3};
    gp.refs_per_paper = {1, 3};
    gp.seed = 23;
    const Database d = generate_random_db(gp);

    // split every paper half-and-half with the author's successor
    WeightScheme w;
    for (PaperIdx p = 0; p < d.paper_count(); ++p) {
        const auto& owner = d.author_id(d.owner(p));
        const auto& buddy =
            d.author_id((d.owner(p) + 1) % static_cast<AuthorIdx>(d.author_count()));
        w.paper_shares[d.paper_id(p)] = {{owner, 0.5}, {buddy, 0.5}};
    }
    const auto result = influence_index(d, tight(0.5), w, IndexMode::weighted);
    CHECK(sum_values(result.per_author) ==
          doctest::Approx(static_cast<double>(d.author_count())).epsilon(1e-9));
}

TEST_CASE("noself mode zeroes the diagonal and keeps the identity") {
    const Database d = fixture("mutual-pair");
    for (const double delta : {0.1, 0.5, 0.9}) {
        const auto result = influence_index(d, tight(delta), {}, IndexMode::noself);
        CHECK(result.per_author.at("a") == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(result.per_author.at("b") == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(sum_values(result.per_author) == doctest::Approx(2.0).epsilon(1e-9));
    }
}

TEST_CASE("noself mode erases self-only authors first") {
    // s cites only herself; a and b cite each other and s
    const Database d = Database::make(
        {{"a", {"p"}}, {"b", {"q"}}, {"s", {"s1", "s2"}}},
        {{"q", "p"}, {"p", "q"}, {"s1", "s2"}, {"s1", "p"}});
    const auto result = influence_index(d, tight(0.5), {}, IndexMode::noself);
    CHECK(result.erased_authors == std::vector<std::string>{"s"});
    CHECK(result.per_author.count("s") == 0);
    CHECK(sum_values(result.per_author) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("noself mode tolerates self-citation edges") {
    // b's portfolio contains an internal citation; still in the relaxed
    // domain because b also cites a
    const Database d = Database::make(
        {{"a", {"p"}}, {"b", {"q1", "q2"}}},
        {{"q1", "p"}, {"p", "q1"}, {"q1", "q2"}, {"p", "q2"}});
    const auto result = influence_index(d, tight(0.5), {}, IndexMode::noself);
    CHECK(result.erased_authors.empty());
    CHECK(sum_values(result.per_author) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("a new reference leaves the index unchanged only in symmetric cases") {
    // Symmetric case: both of pa's possible flows return to a at the
    // same rate, so the extra reference changes nothing.
    const Database sym = Database::make(
        {{"a", {"pa"}}, {"b", {"pb"}}, {"c", {"pc"}}},
        {{"pb", "pa"}, {"pa", "pb"}, {"pa", "pc"}});
    const auto before_sym = influence_index(sym, tight(0.5));
    const auto after_sym =
        influence_index(add_reference(sym, "pc", "pa"), tight(0.5));
    CHECK(after_sym.per_author.at("a") ==
          doctest::Approx(before_sym.per_author.at("a")).epsilon(1e-10));
    CHECK(before_sym.per_author.at("a") == doctest::Approx(5.0 / 3.0).epsilon(1e-10));

    // Asymmetric case: a1's flow is split between a two-cycle and a
    // three-cycle with different return rates, so I(a) moves. Exact
    // values from solving the fixpoint by hand at delta = 1/2.
    const Database asym = Database::make(
        {{"a", {"a1", "a2"}}, {"b", {"b1"}}, {"c", {"c1"}}, {"e", {"c2"}}},
        {{"b1", "a1"}, {"a1", "b1"}, {"c1", "a2"}, {"c2", "c1"}, {"a2", "c2"}});
    REQUIRE(validate_domain(asym).valid);
    const auto before = influence_index(asym, tight(0.5));
    const auto after =
        influence_index(add_reference(asym, "c2", "a1"), tight(0.5));
    CHECK(before.per_author.at("a") ==
          doctest::Approx(37.0 / 21.0).epsilon(1e-10));
    CHECK(after.per_author.at("a") ==
          doctest::Approx(85.0 / 49.0).epsilon(1e-10));
    CHECK(std::abs(before.per_author.at("a") - after.per_author.at("a")) > 1e-3);
}

TEST_CASE("author weights scale the index linearly") {
    GeneratorParams gp;
    gp.n_authors = 8;
    gp.papers_per_author = {1, 3};
    gp.refs_per_paper = {1, 3};
    gp.seed = 29;
    const Database d = generate_random_db(gp);

    WeightScheme scaled;
    for (const auto& id : d.author_ids())
        scaled.author_weights[id] = 3.0;
    const auto base = influence_index(d, tight(0.5));
    const auto tripled = influence_index(d, tight(0.5), scaled);
    for (const auto& [author, value] : base.per_author)
        CHECK(tripled.per_author.at(author) ==
              doctest::Approx(3.0 * value).epsilon(1e-9));
}

TEST_CASE("concave index with exponent one equals the base index") {
    GeneratorParams gp;
    gp.n_authors = 9;
    gp.papers_per_author = {1, 3};
    gp.refs_per_paper = {1, 3};
    gp.seed = 31;
    const Database d = generate_random_db(gp);
    const auto base = influence_index(d, tight(0.5));
    const auto alt = concave_index(d, tight(0.5), 1.0);
    for (const auto& [author, value] : base.per_author)
        CHECK(alt.at(author) == doctest::Approx(value).epsilon(1e-9));
}

TEST_CASE("concave index keeps the global identity for every exponent") {
    GeneratorParams gp;
    gp.n_authors = 9;
    gp.papers_per_author = {1, 3};
    gp.refs_per_paper = {1, 3};
    gp.seed = 37;
    const Database d = generate_random_db(gp);
    for (const double exponent : {0.0, 0.5, 1.0}) {
        const auto alt = concave_index(d, tight(0.5), exponent);
        CHECK(sum_values(alt) ==
              doctest::Approx(static_cast<double>(d.author_count())).epsilon(1e-9));
    }
}

TEST_CASE("concave index matches a dense brute-force evaluation") {
    GeneratorParams gp;
    gp.n_authors = 6;
    gp.papers_per_author = {1, 3};
    gp.refs_per_paper = {1, 3};
    gp.seed = 59;
    const Database d = generate_random_db(gp);
    const std::size_t n = d.paper_count();
    const std::size_t a_count = d.author_count();
    const InfluenceParams params = tight(0.5);
    const double exponent = 0.5;

    const DenseMatrix pi = dense_oracle_pi(d, params.delta, params.truncation_order());
    std::vector<double> sigma(n, 0.0);
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t p = 0; p < n; ++p)
            sigma[q] += pi.at(p, q);
    std::vector<double> norm(a_count, 0.0);
    for (PaperIdx q = 0; q < n; ++q)
        norm[d.owner(q)] += sigma[q];

    std::vector<std::vector<double>> ai(a_count, std::vector<double>(a_count, 0.0));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q)
            ai[d.owner(static_cast<PaperIdx>(p))]
              [d.owner(static_cast<PaperIdx>(q))] +=
                pi.at(p, q) / norm[d.owner(static_cast<PaperIdx>(q))];

    const auto got = concave_index(d, params, exponent);
    for (AuthorIdx a = 0; a < a_count; ++a) {
        double expected = 0.0;
        for (AuthorIdx b = 0; b < a_count; ++b) {
            double denom = 0.0;
            for (AuthorIdx c = 0; c < a_count; ++c)
                if (ai[c][b] > 0.0)
                    denom += std::pow(ai[c][b], exponent);
            if (ai[a][b] > 0.0)
                expected += std::pow(ai[a][b], exponent) / denom;
        }
        CHECK(got.at(d.author_id(a)) == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("concave index exponent zero spreads columns evenly") {
    const Database d = fixture("mutual-pair");
    const auto alt = concave_index(d, tight(0.5), 0.0);
    // both AI entries of each column are positive, so each author gets
    // half of each of the two columns
    CHECK(alt.at("a") == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(alt.at("b") == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(concave_index(d, tight(0.5), 1.5), DomainError);
}

TEST_CASE("weighted and noself modes match a dense brute-force evaluation") {
    GeneratorParams gp;
    gp.n_authors = 7;
    gp.papers_per_author = {1, 3};
    gp.refs_per_paper = {1, 3};
    gp.seed = 53;
    const Database d = generate_random_db(gp);
    const std::size_t n = d.paper_count();
    const std::size_t a_count = d.author_count();

    // two-author shares (2/3, 1/3) with the next author, alpha ramp
    WeightScheme w;
    for (PaperIdx p = 0; p < n; ++p) {
        const auto& owner = d.author_id(d.owner(p));
        const auto& buddy =
            d.author_id((d.owner(p) + 1) % static_cast<AuthorIdx>(a_count));
        w.paper_shares[d.paper_id(p)] = {{owner, 2.0 / 3.0}, {buddy, 1.0 / 3.0}};
    }
    for (AuthorIdx a = 0; a < a_count; ++a)
        w.author_weights[d.author_id(a)] = 1.0 + 0.25 * a;

    const InfluenceParams params = tight(0.5);
    const DenseMatrix pi = dense_oracle_pi(d, params.delta, params.truncation_order());

    // dense share matrix: omega[p][a]
    std::vector<std::vector<double>> omega(n, std::vector<double>(a_count, 0.0));
    for (PaperIdx p = 0; p < n; ++p)
        for (const auto& [author, share] : w.paper_shares.at(d.paper_id(p)))
            omega[p][*d.find_author(author)] = share;

    std::vector<double> sigma(n, 0.0);
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t p = 0; p < n; ++p)
            sigma[q] += pi.at(p, q);

    // bilateral mass T[a][b] = sum_{p,q} omega_p^a omega_q^b PI(p,q)
    std::vector<std::vector<double>> mass(a_count, std::vector<double>(a_count, 0.0));
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = 0; q < n; ++q) {
            const double v = pi.at(p, q);
            if (v == 0.0)
                continue;
            for (AuthorIdx a = 0; a < a_count; ++a) {
                if (omega[p][a] == 0.0)
                    continue;
                for (AuthorIdx b = 0; b < a_count; ++b)
                    if (omega[q][b] != 0.0)
                        mass[a][b] += omega[p][a] * omega[q][b] * v;
            }
        }

    std::vector<double> p2(a_count, 0.0); // P''
    for (std::size_t q = 0; q < n; ++q)
        for (AuthorIdx b = 0; b < a_count; ++b)
            p2[b] += omega[q][b] * sigma[q];

    const auto weighted = influence_index(d, params, w, IndexMode::weighted);
    const auto noself = influence_index(d, params, w, IndexMode::noself);
    for (AuthorIdx a = 0; a < a_count; ++a) {
        double iw = 0.0, ins = 0.0;
        for (AuthorIdx b = 0; b < a_count; ++b) {
            const double alpha = 1.0 + 0.25 * b;
            iw += alpha * mass[a][b] / p2[b];
            if (b != a)
                ins += alpha * mass[a][b] / (p2[b] - mass[b][b]);
        }
        CHECK(weighted.per_author.at(d.author_id(a)) ==
              doctest::Approx(iw).epsilon(1e-9));
        CHECK(noself.per_author.at(d.author_id(a)) ==
              doctest::Approx(ins).epsilon(1e-9));
    }
}

TEST_CASE("concave index refuses oversized author sets") {
    GeneratorParams gp;
    gp.n_authors = 5010;
    gp.papers_per_author = {1, 1};
    gp.refs_per_paper = {1, 1};
    gp.seed = 3;
    const Database d = generate_random_db(gp);
    CHECK_THROWS_AS(concave_index(d, tight(0.5), 0.5), SizeGuardError);
}

TEST_CASE("weight validation") {
    const Database d = fixture("mutual-pair");
    WeightScheme bad;
    bad.paper_shares["pa"] = {{"a", 0.6}, {"b", 0.5}};
    CHECK_THROWS_AS(bad.validate(d), DomainError);
    WeightScheme unknown;
    unknown.paper_shares["nope"] = {{"a", 1.0}};
    CHECK_THROWS_AS(unknown.validate(d), DomainError);
    WeightScheme negative;
    negative.paper_shares["pa"] = {{"a", 1.5}, {"b", -0.5}};
    CHECK_THROWS_AS(negative.validate(d), DomainError);
    WeightScheme fine;
    fine.paper_shares["pa"] = {{"a", 0.5}, {"b", 0.5}};
    CHECK_NOTHROW(fine.validate(d));
}
