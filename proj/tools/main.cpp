#include <CLI11.hpp>
#include <iostream>

#include "markhash/cli.hpp"

int main(int argc, char** argv) {
    using namespace markhash::cli;

    CLI::App app{"content identity for marker-varying graphs"};
    app.require_subcommand(1);

    DedupOptions dedup;
    auto* cmd_d = app.add_subcommand("dedup", "deduplicate a graph collection");
    cmd_d->add_option("file", dedup.input_path, "graph file")->required();
    cmd_d->add_option("-o,--output", dedup.output_path, "write the report here (default stdout)");
    cmd_d->add_flag("--json", dedup.json, "emit a JSON report instead of TSV");
    cmd_d->add_option("--threads", dedup.threads, "summarize with this many workers")
        ->check(CLI::PositiveNumber);

    std::string equal_a, equal_b;
    auto* cmd_e = app.add_subcommand("equal", "compare two single-graph files");
    cmd_e->add_option("a", equal_a, "first graph file")->required();
    cmd_e->add_option("b", equal_b, "second graph file")->required();

    SimulateOptions sim;
    auto* cmd_s = app.add_subcommand("simulate", "generate a descent-simulated collection");
    cmd_s->add_option("--pop", sim.params.population, "founding population size")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_s->add_option("--gens", sim.params.generations, "generations to breed")->required();
    cmd_s->add_option("--realizations", sim.params.realizations, "independent descents")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_s->add_option("--rate", sim.params.recomb_rate, "crossover rate per base")
        ->required()
        ->check(CLI::NonNegativeNumber);
    cmd_s->add_option("--len", sim.params.chrom_length, "chromosome length in bases")
        ->required()
        ->check(CLI::PositiveNumber);
    cmd_s->add_option("--seed", sim.params.seed, "random seed");
    cmd_s->add_option("-o,--output", sim.output_path, "output graph file")->required();

    std::string data_dir = "data";
    auto* cmd_t = app.add_subcommand("selftest", "run built-in correctness checks");
    cmd_t->add_option("--data", data_dir, "directory holding the golden vector files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (cmd_d->parsed()) return cmd_dedup(dedup, std::cout, std::cerr);
        if (cmd_e->parsed()) return cmd_equal(equal_a, equal_b, std::cout, std::cerr);
        if (cmd_s->parsed()) return cmd_simulate(sim, std::cout, std::cerr);
        if (cmd_t->parsed()) return cmd_selftest(data_dir, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
