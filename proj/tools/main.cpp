#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mud/algorithms.hpp"
#include "mud/dfa_file.hpp"
#include "mud/error.hpp"
#include "mud/eval.hpp"
#include "mud/formats.hpp"
#include "mud/rng.hpp"
#include "mud/separations.hpp"
#include "mud/simulator.hpp"
#include "mud/suites.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitEval = 3;

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) mud::fail(mud::Errc::parse, "cannot open input file '" + path + "'");
    return in;
}

mud::ComputationTree make_tree(const std::string& kind, std::size_t n,
                               std::uint64_t seed) {
    if (kind == "left-deep") return mud::left_deep(n);
    if (kind == "balanced") return mud::balanced(n);
    if (kind == "random") return mud::random_tree(n, mud::derive_seed(seed, 0x7ee5));
    mud::fail(mud::Errc::parse, "unknown tree kind '" + kind + "'");
}

void print_metrics(const mud::ExecMetrics& m) {
    std::cout << "max_message_bits=" << m.max_message_bits << "\n"
              << "tree_depth=" << m.tree_depth << "\n"
              << "aggregate_calls=" << m.aggregate_calls << "\n";
}

struct RunOptions {
    std::string algorithm;
    std::string input_path;
    std::string tree = "balanced";
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::size_t copies = mud::kSetParityDefaultCopies;
    std::size_t width = mud::kF2DefaultWidth;
    std::optional<std::size_t> n;  // setparity bucket count
};

mud::EvalResult run_mud(const mud::MudSpec& spec, const std::vector<mud::Symbol>& input,
                        const RunOptions& opt) {
    auto tree = make_tree(opt.tree, input.size(), opt.seed);
    return opt.workers > 1 ? mud::eval_parallel(spec, tree, input, opt.workers)
                           : mud::eval_mud(spec, tree, input);
}

int cmd_run(const RunOptions& opt) {
    auto in = open_input(opt.input_path);
    mud::EvalResult result;

    if (opt.algorithm == "span" || opt.algorithm == "sumsq" || opt.algorithm == "l2" ||
        opt.algorithm == "minwise" || opt.algorithm == "f2") {
        auto input = mud::parse_int_symbols(in);
        mud::MudSpec spec;
        if (opt.algorithm == "span") spec = mud::span_mud();
        else if (opt.algorithm == "sumsq") spec = mud::sum_squares_mud();
        else if (opt.algorithm == "l2") spec = mud::l2_mud();
        else if (opt.algorithm == "minwise") spec = mud::minwise_sample_mud(opt.seed);
        else spec = mud::f2_sketch_mud(opt.width, opt.seed);
        result = run_mud(spec, input, opt);
    } else if (opt.algorithm == "setparity") {
        auto input = mud::parse_setparity_records(in);
        std::size_t n = 1;
        if (opt.n) {
            n = *opt.n;
        } else {
            for (const auto& r : input) {
                n = std::max(n, static_cast<std::size_t>(r.field(0)) + 1);
            }
        }
        result = run_mud(mud::setparity_mud(n, opt.copies, opt.seed), input, opt);
    } else if (opt.algorithm == "symindex") {
        auto input = mud::parse_symindex_records(in);
        if (input.empty()) mud::fail(mud::Errc::empty_input, "no records in input");
        std::size_t n = opt.n ? *opt.n : input.size() / 2;
        result = mud::eval_stream(mud::symmetric_index_stream(n), input);
    } else {
        mud::fail(mud::Errc::parse, "unknown algorithm '" + opt.algorithm + "'");
    }

    std::cout << "output=" << result.output.str() << "\n";
    print_metrics(result.metrics);
    return 0;
}

struct SimulateOptions {
    std::string dfa_path;
    std::string input_path;
    std::string tree = "balanced";
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

int cmd_simulate(const SimulateOptions& opt) {
    mud::TableDFA dfa = mud::parse_dfa_file(opt.dfa_path);
    auto in = open_input(opt.input_path);
    auto input = mud::parse_dfa_word(in, dfa);
    if (input.size() != dfa.n) {
        mud::fail(mud::Errc::leaf_mismatch,
                  "input has " + std::to_string(input.size()) +
                      " symbols but the dfa expects " + std::to_string(dfa.n));
    }

    auto tree = make_tree(opt.tree, input.size(), opt.seed);
    mud::MudSpec compiled = mud::mud_from_stream(dfa);
    mud::EvalResult mud_result =
        opt.workers > 1 ? mud::eval_parallel(compiled, tree, input, opt.workers)
                        : mud::eval_mud(compiled, tree, input);
    mud::EvalResult stream_result = mud::eval_stream(mud::stream_spec_of_dfa(dfa), input);

    auto token = [&dfa](const mud::Symbol& s) {
        return dfa.alphabet[static_cast<std::size_t>(s.scalar())];
    };
    std::cout << "mud_output=" << token(mud_result.output) << "\n"
              << "stream_output=" << token(stream_result.output) << "\n"
              << "match="
              << (mud_result.output == stream_result.output ? "MATCH" : "MISMATCH")
              << "\n";
    print_metrics(mud_result.metrics);
    return 0;
}

struct VerifyOptions {
    std::string suite;
    std::size_t trials = 50;
    std::size_t max_n = 5;
    std::size_t dfas = 20;
    std::size_t n = 6;
    unsigned m = 6;
    std::size_t runs = 1000;
    std::size_t copies = mud::kSetParityDefaultCopies;
    std::size_t random_pairs = 1000;
    std::size_t random_n = 10;
    std::uint64_t seed = 0;
};

int cmd_verify(const VerifyOptions& opt) {
    mud::suites::SuiteReport report;
    if (opt.suite == "invariance") {
        report = mud::suites::invariance(opt.trials, opt.seed);
    } else if (opt.suite == "simulator-oracle") {
        report = mud::suites::simulator_oracle(opt.max_n, opt.dfas, opt.seed);
    } else if (opt.suite == "bias") {
        report = mud::suites::bias(opt.n, opt.m);
    } else if (opt.suite == "setparity-error") {
        report = mud::suites::setparity_error(opt.runs, 64, opt.copies, opt.seed);
    } else if (opt.suite == "reductions") {
        report = mud::suites::reductions(opt.max_n, opt.random_pairs, opt.random_n,
                                         opt.seed);
    } else {
        mud::fail(mud::Errc::parse, "unknown suite '" + opt.suite + "'");
    }
    for (const auto& line : report.lines) {
        std::cout << (line.pass ? "PASS " : "FAIL ") << line.name;
        if (!line.detail.empty()) std::cout << ": " << line.detail;
        std::cout << "\n";
    }
    std::cout << "suite=" << report.suite << "\n"
              << "result=" << (report.pass ? "PASS" : "FAIL") << "\n";
    return report.pass ? 0 : 1;
}

void write_instance(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) mud::fail(mud::Errc::parse, "cannot write '" + out_path + "'");
    out << text;
}

int cmd_gen_setparity_eq(const std::string& x, const std::string& y,
                         const std::string& out_path) {
    mud::EqReduction red = mud::eq_reduction(x, y);
    write_instance(mud::format_setparity_records(red.merged()), out_path);
    std::cerr << "answer=" << (x == y ? 1 : 0) << "\n";
    return 0;
}

int cmd_gen_symindex(std::size_t n, std::uint64_t seed, const std::string& out_path) {
    mud::SymIndexInstance inst = mud::symmetric_index_gen(n, seed);
    write_instance(mud::format_symindex_records(inst.records), out_path);
    std::cerr << "answer=" << inst.answer << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"mud computations over aggregation trees"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "evaluate a library algorithm over a tree");
    run->add_option("algorithm", run_opt.algorithm,
                    "one of span, sumsq, l2, minwise, setparity, symindex, f2")
        ->required();
    run->add_option("input", run_opt.input_path, "input file")->required();
    run->add_option("--tree", run_opt.tree, "left-deep, balanced or random");
    run->add_option("--seed", run_opt.seed, "shared public random seed");
    run->add_option("--workers", run_opt.workers, "parallel evaluation hint");
    run->add_option("--copies", run_opt.copies, "setparity parity copies");
    run->add_option("--width", run_opt.width, "f2 sketch width");
    std::size_t run_n = 0;
    auto* run_n_opt = run->add_option("--n", run_n, "setparity bucket count");

    SimulateOptions sim_opt;
    auto* sim = app.add_subcommand(
        "simulate", "compile a streaming table to mud and run both routes");
    sim->add_option("dfa", sim_opt.dfa_path, "dfa spec file")->required();
    sim->add_option("input", sim_opt.input_path, "input word file")->required();
    sim->add_option("--tree", sim_opt.tree, "left-deep, balanced or random");
    sim->add_option("--seed", sim_opt.seed, "tree sampling seed");
    sim->add_option("--workers", sim_opt.workers, "parallel evaluation hint");

    VerifyOptions ver_opt;
    auto* ver = app.add_subcommand("verify", "run a property suite");
    ver->add_option("suite", ver_opt.suite,
                    "invariance, simulator-oracle, bias, setparity-error or reductions")
        ->required();
    ver->add_option("--trials", ver_opt.trials, "random trees per invariance case");
    ver->add_option("--max-n", ver_opt.max_n, "max input length for oracle sweeps");
    ver->add_option("--dfas", ver_opt.dfas, "random tables to check");
    ver->add_option("--n", ver_opt.n, "bias: variable count");
    ver->add_option("--m", ver_opt.m, "bias: field degree");
    ver->add_option("--runs", ver_opt.runs, "setparity-error runs per side");
    ver->add_option("--copies", ver_opt.copies, "setparity parity copies");
    ver->add_option("--random", ver_opt.random_pairs, "reductions: random pairs");
    ver->add_option("--random-n", ver_opt.random_n, "reductions: random pair length");
    ver->add_option("--seed", ver_opt.seed, "suite seed");

    auto* gen = app.add_subcommand("gen", "generate instance files");
    gen->require_subcommand(1);
    std::string gen_x, gen_y, gen_out;
    auto* gen_eq = gen->add_subcommand("setparity-eq",
                                       "string-equality instance as setparity records");
    gen_eq->add_option("--x", gen_x, "first bit-string")->required();
    gen_eq->add_option("--y", gen_y, "second bit-string")->required();
    gen_eq->add_option("-o,--out", gen_out, "output file (default stdout)");
    std::size_t gen_n = 8;
    std::uint64_t gen_seed = 0;
    auto* gen_si = gen->add_subcommand("symindex", "random promise instance");
    gen_si->add_option("--n", gen_n, "string length");
    gen_si->add_option("--seed", gen_seed, "generator seed");
    gen_si->add_option("-o,--out", gen_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitParse;
    }

    // gen runs no evaluation, so any failure there is a parameter problem
    const bool params_only = gen->parsed();
    try {
        if (*run) {
            if (*run_n_opt) run_opt.n = run_n;
            return cmd_run(run_opt);
        }
        if (*sim) return cmd_simulate(sim_opt);
        if (*ver) return cmd_verify(ver_opt);
        if (*gen_eq) return cmd_gen_setparity_eq(gen_x, gen_y, gen_out);
        if (*gen_si) return cmd_gen_symindex(gen_n, gen_seed, gen_out);
    } catch (const mud::Error& e) {
        std::cerr << "error: " << e.what();
        if (e.node() >= 0) std::cerr << " (at tree node " << e.node() << ")";
        std::cerr << "\n";
        return (e.code() == mud::Errc::parse || params_only) ? kExitParse : kExitEval;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitEval;
    }
    return 0;
}
