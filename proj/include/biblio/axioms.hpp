#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "biblio/counting.hpp"
#include "biblio/database.hpp"
#include "biblio/generator.hpp"

namespace biblio {

enum class Axiom {
    separability,
    reference_independence,
    splitting,
    citation_anonymity,
    author_anonymity,
    neutrality,
    field_comparability,
    null_author,
};

std::string_view axiom_name(Axiom axiom);
Axiom parse_axiom(std::string_view name);
std::vector<Axiom> all_axioms();

/// Score comparison tolerance for real-valued indices; integer-valued
/// indices are compared exactly.
inline constexpr double kScoreTolerance = 1e-9;

struct AxiomWitness {
    Database database;          // the database the transformation was applied to
    std::string transformation; // human-readable description
    std::string author;         // whose score moved (empty for mean checks)
    double before = 0.0;
    double after = 0.0;
};

struct AxiomVerdict {
    Axiom axiom = Axiom::separability;
    enum class Outcome { holds_on_sample, violated } outcome = Outcome::holds_on_sample;
    std::optional<AxiomWitness> witness;
    int trials = 0;
    std::uint64_t seed = 0;
    std::string note;

    bool violated() const { return outcome == Outcome::violated; }
};

/// Arguments for one concrete transformation; which fields are needed
/// depends on the axiom.
struct AxiomArgs {
    std::optional<Database> companion;                       // separability
    std::optional<std::pair<std::string, std::string>> edge; // (cited, citing)
    struct Split {
        std::string paper;
        std::vector<std::string> part1;
        std::string new_id;
    };
    std::optional<Split> split;
    std::optional<std::map<std::string, std::string>> sigma;
    std::optional<std::map<std::string, std::vector<std::string>>> portfolio;
    std::optional<Relabeling> relabeling;
};

/// Applies the axiom's transformation and compares the scores of every
/// protected author before and after.
AxiomVerdict check_axiom(const IndexDescriptor& index, Axiom axiom,
                         const Database& d, const AxiomArgs& args);

/// Compares group means over every bipartition of the citation-disjoint
/// components and reports the worst one. A single component makes the
/// axiom vacuous, which the verdict notes.
AxiomVerdict check_field_comparability(const IndexDescriptor& index,
                                       const Database& d);

/// Checks score > 0 iff the author has a cited paper, for every author.
AxiomVerdict check_null_author(const IndexDescriptor& index, const Database& d);

/// The constructive impossibility run: evaluates Null Author, Field
/// Comparability and Author Anonymity on the two proof databases. For
/// any index at least one of the three must fail.
struct ImpossibilityReport {
    std::string index;
    bool null_author_ok = false;
    bool field_comparability_ok = false;
    bool author_anonymity_ok = false;
    std::vector<std::string> failed;
    // component means of the two fixtures, in component order
    std::vector<double> means_d;
    std::vector<double> means_d2;

    bool any_failed() const { return !failed.empty(); }
};

ImpossibilityReport demonstrate_impossibility(const IndexDescriptor& index);

/// Randomized witness search: samples databases (or reuses `fixed`) and
/// legal transformations for the axiom; returns the first witness or
/// holds-on-sample. Fully reproducible from the seed; a budget below 1
/// is raised to 1.
AxiomVerdict find_violation(const IndexDescriptor& index, Axiom axiom,
                            const GeneratorParams& gen, std::uint64_t seed,
                            int budget,
                            const std::optional<Database>& fixed = std::nullopt);

} // namespace biblio
