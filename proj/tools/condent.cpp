// Command-line front end: feasibility checks, bound queries, and evidence
// comparisons over knowledge-base files.

#include "condent/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Bounds on conditional probabilities entailed by a knowledge base of conditional assessments"};
    app.require_subcommand(1);

    condent::cli::Options opt;
    std::uint32_t oracle_n = 0;
    auto add_flags = [&](CLI::App* sub) {
        sub->add_flag("--json", opt.json, "Emit JSON instead of text");
        sub->add_flag("--exact", opt.exact, "Use exact rational arithmetic");
        sub->add_option("--oracle", oracle_n, "Also run the grid oracle at resolution 1/N")->check(CLI::PositiveNumber);
        sub->add_option("--seed", opt.seed, "Seed for the sampling fallback of the oracle");
    };

    std::string kb_path, query_text, extra_text;
    int law_vars = 2;

    auto* check = app.add_subcommand("check", "Decide whether the assessments admit a probability model");
    check->add_option("kb", kb_path, "Knowledge-base file")->required();
    add_flags(check);

    auto* query = app.add_subcommand("query", "Tight bounds on a query P(f1 | f2)");
    query->add_option("kb", kb_path, "Knowledge-base file")->required();
    query->add_option("query", query_text, "Query, e.g. 'P(f | b & p)'")->required();
    add_flags(query);

    auto* compare = app.add_subcommand("compare", "Bounds before and after conjoining extra evidence");
    compare->add_option("kb", kb_path, "Knowledge-base file")->required();
    compare->add_option("query", query_text, "Base query, e.g. 'P(f | b)'")->required();
    compare->add_option("evidence", extra_text, "Formula conjoined to the query antecedent")->required();
    add_flags(compare);

    auto* laws = app.add_subcommand("laws", "Exhaustively check conditional-event algebra laws on a small ring");
    laws->add_option("-k,--vars", law_vars, "Number of variables (1 or 2)")->check(CLI::Range(1, 2));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : condent::cli::kUsage;
    }
    if (oracle_n > 0) opt.oracle_resolution = oracle_n;

    if (*check) return condent::cli::cmd_check(kb_path, opt, std::cout, std::cerr);
    if (*query) return condent::cli::cmd_query(kb_path, query_text, opt, std::cout, std::cerr);
    if (*compare) return condent::cli::cmd_compare(kb_path, query_text, extra_text, opt, std::cout, std::cerr);
    return condent::cli::cmd_laws(law_vars, std::cout, std::cerr);
}
