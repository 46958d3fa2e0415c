#include "biblio/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "biblio/aggregators.hpp"
#include "biblio/author_index.hpp"
#include "biblio/axioms.hpp"
#include "biblio/counting.hpp"
#include "biblio/fixtures.hpp"
#include "biblio/generator.hpp"
#include "biblio/io.hpp"
#include "biblio/transforms.hpp"

namespace biblio {

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DatabaseError("cannot write '" + path + "'");
    out << content;
}

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(csv);
    while (std::getline(is, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::pair<std::uint32_t, std::uint32_t> parse_range(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const auto v = static_cast<std::uint32_t>(std::stoul(text));
            return {v, v};
        }
        return {static_cast<std::uint32_t>(std::stoul(text.substr(0, colon))),
                static_cast<std::uint32_t>(std::stoul(text.substr(colon + 1)))};
    } catch (const std::exception&) {
        throw UsageError("cannot parse range '" + text + "' (expected N or LO:HI)");
    }
}

struct CommonIo {
    std::string input;
    std::string output = "-";
    std::string format = "csv";
    std::size_t max_papers = 1000000;
};

ParsedDatabase load_guarded(const CommonIo& io) {
    ParsedDatabase parsed = parse_database(io.input);
    if (parsed.db.paper_count() > io.max_papers)
        throw SizeGuardError("input has " + std::to_string(parsed.db.paper_count()) +
                             " papers, --max-papers is " +
                             std::to_string(io.max_papers));
    return parsed;
}

InfluenceParams usage_checked_params(double delta, double tolerance) {
    const InfluenceParams params{delta, tolerance, std::nullopt};
    try {
        params.validate();
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
    return params;
}

// exits with the rendered report when the database fails the mode's checks
void require_domain(const Database& db, IndexMode mode) {
    const DomainReport report = validate_domain(db);
    if (report.valid)
        return;
    if (mode == IndexMode::noself) {
        // self-citations and missing external references are handled by
        // the erase step; overlapping portfolios are not
        const bool only_relaxable = std::all_of(
            report.violations.begin(), report.violations.end(),
            [](const DomainViolation& v) {
                return v.rule != DomainRule::overlapping_portfolios;
            });
        if (only_relaxable)
            return;
    }
    throw DomainError("database is outside the supported domain:\n" +
                      report.to_string());
}

std::string describe_component(const FieldPartition& part, const Database& db,
                               const std::string& author) {
    const auto idx = db.find_author(author);
    if (!idx)
        return "";
    return std::to_string(part.component_of_author[*idx]);
}

int cmd_compute(const CommonIo& io, double delta, double tolerance,
                const std::string& mode_name, bool alpha_from_activity) {
    const IndexMode mode = parse_index_mode(mode_name);
    const InfluenceParams params = usage_checked_params(delta, tolerance);
    ParsedDatabase parsed = load_guarded(io);
    require_domain(parsed.db, mode);

    WeightScheme weights = parsed.weights;
    if (alpha_from_activity)
        weights.author_weights = parsed.activity;

    const AuthorInfluenceResult result =
        influence_index(parsed.db, params, weights, mode);

    // components refer to the database the scores were computed on
    const Database* scored = &parsed.db;
    std::optional<Database> reduced;
    if (mode == IndexMode::noself) {
        reduced = erase_self_only_authors(parsed.db).db;
        scored = &*reduced;
    }
    const FieldPartition part = field_components(*scored);

    double sum = 0.0;
    for (const auto& [author, value] : result.per_author)
        sum += value;

    Report report;
    report.meta = {{"version", kVersion},
                   {"command", "compute"},
                   {"input", io.input},
                   {"delta", format_double17(delta)},
                   {"tolerance", format_double17(tolerance)},
                   {"mode", std::string(index_mode_name(mode))},
                   {"alpha", alpha_from_activity ? "activity" : "ones"},
                   {"authors", std::to_string(result.per_author.size())},
                   {"sum_influence", format_value12(sum)},
                   {"sum_tolerance", format_double17(result.sum_tolerance)}};
    if (!result.erased_authors.empty()) {
        std::string erased;
        for (const auto& id : result.erased_authors)
            erased += (erased.empty() ? "" : ";") + id;
        report.meta.emplace_back("erased_authors", erased);
    }
    report.columns = {"author", "influence", "normalizer", "component"};
    for (const auto& [author, value] : result.per_author)
        report.rows.push_back({author, format_value12(value),
                               format_value12(result.normalizers.at(author)),
                               describe_component(part, *scored, author)});

    std::ostringstream os;
    write_report(os, report, parse_report_format(io.format));
    write_output(io.output, os.str());
    return 0;
}

int cmd_compare(const CommonIo& io, const std::string& indices_csv, double delta,
                double tolerance) {
    const InfluenceParams params = usage_checked_params(delta, tolerance);
    ParsedDatabase parsed = load_guarded(io);
    require_domain(parsed.db, IndexMode::base);

    const auto registry = builtin_indices(params);
    std::vector<const IndexDescriptor*> picked;
    for (const auto& name : split_list(indices_csv)) {
        const IndexDescriptor* idx = find_index(registry, name);
        if (!idx) {
            std::string known;
            for (const auto& r : registry)
                known += (known.empty() ? "" : ", ") + r.name;
            throw UsageError("unknown index '" + name + "'; registry: " + known);
        }
        picked.push_back(idx);
    }
    if (picked.empty())
        throw UsageError("--indices needs at least one index name");

    const FieldPartition part = field_components(parsed.db);

    std::vector<std::map<std::string, double>> scores;
    scores.reserve(picked.size());
    for (const auto* idx : picked)
        scores.push_back(idx->evaluate(parsed.db));

    // descending rank, ties broken by author id
    std::vector<std::map<std::string, int>> ranks(picked.size());
    for (std::size_t i = 0; i < picked.size(); ++i) {
        std::vector<std::string> order = parsed.db.author_ids();
        std::stable_sort(order.begin(), order.end(),
                         [&](const std::string& x, const std::string& y) {
                             return scores[i].at(x) > scores[i].at(y);
                         });
        for (std::size_t r = 0; r < order.size(); ++r)
            ranks[i][order[r]] = static_cast<int>(r + 1);
    }

    Report report;
    report.meta = {{"version", kVersion},
                   {"command", "compare"},
                   {"input", io.input},
                   {"delta", format_double17(delta)},
                   {"tolerance", format_double17(tolerance)}};
    for (std::size_t i = 0; i < picked.size(); ++i)
        for (std::size_t j = i + 1; j < picked.size(); ++j) {
            long footrule = 0;
            for (const auto& id : parsed.db.author_ids())
                footrule += std::abs(ranks[i].at(id) - ranks[j].at(id));
            report.meta.emplace_back(
                "footrule_" + picked[i]->name + "_" + picked[j]->name,
                std::to_string(footrule));
        }
    for (std::size_t i = 0; i < picked.size(); ++i) {
        std::string sums;
        for (const auto& comp : part.components) {
            double total = 0.0;
            for (const auto& id : comp.authors)
                total += scores[i].at(id);
            sums += (sums.empty() ? "" : ";") + format_value12(total);
        }
        report.meta.emplace_back("component_sums_" + picked[i]->name, sums);
    }

    report.columns = {"author"};
    for (const auto* idx : picked) {
        report.columns.push_back(idx->name);
        report.columns.push_back("rank_" + idx->name);
    }
    report.columns.push_back("component");
    for (const auto& id : parsed.db.author_ids()) {
        std::vector<std::string> row{id};
        for (std::size_t i = 0; i < picked.size(); ++i) {
            row.push_back(format_value12(scores[i].at(id)));
            row.push_back(std::to_string(ranks[i].at(id)));
        }
        row.push_back(describe_component(part, parsed.db, id));
        report.rows.push_back(std::move(row));
    }

    std::ostringstream os;
    write_report(os, report, parse_report_format(io.format));
    write_output(io.output, os.str());
    return 0;
}

std::string witness_json(const AxiomVerdict& verdict) {
    const AxiomWitness& w = *verdict.witness;
    std::ostringstream os;
    os << "{\"axiom\": \"" << axiom_name(verdict.axiom) << "\", \"transformation\": \""
       << json_escape(w.transformation) << "\", \"author\": \""
       << json_escape(w.author) << "\", \"before\": " << format_double17(w.before)
       << ", \"after\": " << format_double17(w.after) << ", \"database\": "
       << emit_database(w.database) << "}";
    return os.str();
}

int cmd_axioms(const CommonIo& io, const std::string& index_name,
               const std::string& axioms_csv, std::uint64_t seed, int trials,
               double delta, double tolerance, std::uint32_t gen_authors,
               const std::string& gen_papers, const std::string& gen_refs,
               std::uint32_t gen_fields) {
    const InfluenceParams params = usage_checked_params(delta, tolerance);

    GeneratorParams gen;
    gen.n_authors = gen_authors;
    gen.papers_per_author = parse_range(gen_papers);
    gen.refs_per_paper = parse_range(gen_refs);
    gen.n_fields = gen_fields;

    std::optional<Database> fixed;
    std::string source;
    if (!io.input.empty()) {
        fixed = load_guarded(io).db;
        source = io.input;
    } else {
        source = "generator";
    }

    const auto registry = builtin_indices(params);
    const IndexDescriptor* index = find_index(registry, index_name);
    if (!index) {
        std::string known;
        for (const auto& r : registry)
            known += (known.empty() ? "" : ", ") + r.name;
        throw UsageError("unknown index '" + index_name + "'; registry: " + known);
    }

    std::vector<Axiom> axioms;
    if (axioms_csv == "all") {
        axioms = all_axioms();
    } else {
        for (const auto& name : split_list(axioms_csv))
            axioms.push_back(parse_axiom(name));
    }
    if (axioms.empty())
        throw UsageError("--axioms needs at least one axiom name");

    Report report;
    report.meta = {{"version", kVersion},
                   {"command", "axioms"},
                   {"source", source},
                   {"index", index->name},
                   {"seed", std::to_string(seed)},
                   {"trials", std::to_string(trials)},
                   {"delta", format_double17(delta)},
                   {"tolerance", format_double17(tolerance)}};
    report.columns = {"axiom", "outcome", "trials", "witness_author",
                      "before", "after", "note"};

    std::string witnesses;
    for (const Axiom axiom : axioms) {
        const AxiomVerdict verdict =
            find_violation(*index, axiom, gen, seed, trials, fixed);
        std::vector<std::string> row{std::string(axiom_name(axiom)),
                                     verdict.violated() ? "violated"
                                                        : "holds-on-sample",
                                     std::to_string(verdict.trials)};
        if (verdict.witness) {
            row.push_back(verdict.witness->author);
            row.push_back(format_value12(verdict.witness->before));
            row.push_back(format_value12(verdict.witness->after));
            witnesses += (witnesses.empty() ? "" : ",\n    ") + witness_json(verdict);
        } else {
            row.insert(row.end(), {"", "", ""});
        }
        row.push_back(verdict.note);
        report.rows.push_back(std::move(row));
    }
    if (!witnesses.empty())
        report.json_blobs.emplace_back("witnesses", "[\n    " + witnesses + "\n  ]");

    std::ostringstream os;
    write_report(os, report, parse_report_format(io.format));
    write_output(io.output, os.str());
    return 0;
}

int cmd_generate(const std::string& output, std::uint32_t authors,
                 const std::string& papers, const std::string& refs,
                 std::uint32_t fields, std::uint64_t seed) {
    GeneratorParams params;
    params.n_authors = authors;
    params.papers_per_author = parse_range(papers);
    params.refs_per_paper = parse_range(refs);
    params.n_fields = fields;
    params.seed = seed;
    write_output(output, emit_database(generate_random_db(params)));
    return 0;
}

int cmd_reduce(const CommonIo& io, const std::string& author) {
    ParsedDatabase parsed = load_guarded(io);
    const Database reduced = canonical_reduction(parsed.db, author);
    write_output(io.output, emit_database(reduced));
    return 0;
}

int cmd_validate(const CommonIo& io) {
    ParsedDatabase parsed = load_guarded(io);
    const DomainReport report = validate_domain(parsed.db);
    std::cout << report.to_string();
    return report.valid ? 0 : 1;
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"delta-discounted influence indices over bibliographic databases"};
    app.require_subcommand(1);

    CommonIo io;
    double delta = 0.5;
    double tolerance = 1e-10;
    std::string mode = "base";
    bool alpha_from_activity = false;

    auto add_io = [&](CLI::App* cmd, bool needs_input) {
        auto* opt = cmd->add_option("--input,-i", io.input,
                                    "input database file ('-' for stdin)");
        if (needs_input)
            opt->required();
        cmd->add_option("--output,-o", io.output, "output file ('-' for stdout)");
        cmd->add_option("--format", io.format, "report format: csv or json");
        cmd->add_option("--max-papers", io.max_papers,
                        "size guard for expensive paths");
    };

    CLI::App* compute = app.add_subcommand("compute", "compute the influence index");
    add_io(compute, true);
    compute->add_option("--delta", delta, "discount factor in [0,1)");
    compute->add_option("--tol", tolerance, "series truncation tolerance");
    compute->add_option("--mode", mode, "base, weighted or noself");
    compute->add_flag("--alpha-from-activity", alpha_from_activity,
                      "derive author weights from the activity field");

    std::string indices;
    CLI::App* compare = app.add_subcommand("compare", "tabulate several indices");
    add_io(compare, true);
    compare->add_option("--indices", indices, "comma-separated index names")
        ->required();
    compare->add_option("--delta", delta, "discount factor for influence");
    compare->add_option("--tol", tolerance, "series truncation tolerance");

    std::string index_name;
    std::string axioms_list = "all";
    std::uint64_t seed = 0;
    int trials = 200;
    std::uint32_t gen_authors = 8;
    std::string gen_papers = "1:3";
    std::string gen_refs = "1:3";
    std::uint32_t gen_fields = 1;
    CLI::App* axioms = app.add_subcommand("axioms", "run metamorphic axiom checks");
    add_io(axioms, false);
    axioms->add_option("--index", index_name, "index under test")->required();
    axioms->add_option("--axioms", axioms_list,
                       "comma-separated axiom names or 'all'");
    axioms->add_option("--seed", seed, "search seed");
    axioms->add_option("--trials", trials, "trial budget per axiom");
    axioms->add_option("--delta", delta, "discount factor for influence");
    axioms->add_option("--tol", tolerance, "series truncation tolerance");
    axioms->add_option("--gen-authors", gen_authors, "generator: author count");
    axioms->add_option("--gen-papers", gen_papers, "generator: papers per author");
    axioms->add_option("--gen-refs", gen_refs, "generator: references per paper");
    axioms->add_option("--gen-fields", gen_fields, "generator: field count");

    std::uint32_t authors = 10;
    std::string papers = "1:3";
    std::string refs = "1:3";
    std::uint32_t fields = 1;
    std::string gen_output = "-";
    CLI::App* generate = app.add_subcommand("generate", "emit a synthetic database");
    generate->add_option("--authors", authors, "author count")->required();
    generate->add_option("--papers", papers, "papers per author (N or LO:HI)");
    generate->add_option("--refs", refs, "references per paper (N or LO:HI)");
    generate->add_option("--fields", fields, "field count");
    generate->add_option("--seed", seed, "generator seed");
    generate->add_option("--output,-o", gen_output, "output file ('-' for stdout)");

    std::string author;
    CLI::App* reduce =
        app.add_subcommand("reduce", "canonical two-author reduction");
    add_io(reduce, true);
    reduce->add_option("--author", author, "target author id")->required();

    CLI::App* validate = app.add_subcommand("validate", "check domain membership");
    add_io(validate, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed())
            return cmd_compute(io, delta, tolerance, mode, alpha_from_activity);
        if (compare->parsed())
            return cmd_compare(io, indices, delta, tolerance);
        if (axioms->parsed())
            return cmd_axioms(io, index_name, axioms_list, seed, trials, delta,
                              tolerance, gen_authors, gen_papers, gen_refs,
                              gen_fields);
        if (generate->parsed())
            return cmd_generate(gen_output, authors, papers, refs, fields, seed);
        if (reduce->parsed())
            return cmd_reduce(io, author);
        if (validate->parsed())
            return cmd_validate(io);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SizeGuardError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

} // namespace biblio
