#include "hclab/errors.hpp"
#include "hclab/experiment.hpp"
#include "hclab/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace {

constexpr int exit_parse = 2;
constexpr int exit_runtime = 3;

unsigned threads_from_env()
{
    const char* env = std::getenv("HCLAB_THREADS");
    if (!env || !*env)
        return 1;
    try {
        const long v = std::stol(env);
        return v > 0 ? static_cast<unsigned>(v) : 1;
    } catch (const std::exception&) {
        std::cerr << "hclab: ignoring malformed HCLAB_THREADS='" << env << "'\n";
        return 1;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"hclab: equidistribution statistics and hypercyclicity necessary-condition tests"};
    app.require_subcommand(1);

    std::string spec_path;
    std::string out_dir = ".";
    unsigned threads = 0;
    std::string group_name;
    long long element = -1;

    const std::vector<std::pair<std::string, std::string>> tasks = {
        {"equidist", "sup-deviation and Weyl-bound sweeps (equidist.csv)"},
        {"reps", "fixed-irrep multiplicities (reps.json)"},
        {"hctest", "verdict report for a weighted translation (verdict.json, scan_trace.csv)"},
        {"padic", "U/L tables and p-adic verdict (padic.json, padic_ul.csv)"},
        {"all", "every task the spec supports"},
        {"validate", "print diagnostics for a spec and exit"},
    };
    for (const auto& [name, help] : tasks) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--spec", spec_path, "experiment file (JSON)");
        if (name == "validate")
            continue;
        sub->add_option("--out-dir", out_dir, "output directory");
        sub->add_option("--threads", threads, "worker threads (default: HCLAB_THREADS or 1)");
        if (name == "reps") {
            sub->add_option("--group", group_name, "finite group name, used when no --spec is given");
            sub->add_option("--element", element, "restrict to one element index");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : exit_parse;
    }
    const std::string task = app.get_subcommands().front()->get_name();

    nlohmann::json spec;
    if (!spec_path.empty()) {
        std::ifstream in(spec_path);
        if (!in) {
            std::cerr << "hclab: cannot read " << spec_path << "\n";
            return exit_parse;
        }
        try {
            spec = nlohmann::json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            std::cerr << "hclab: " << spec_path << ": " << e.what() << "\n";
            return exit_parse;
        }
    } else if (task == "reps" && !group_name.empty()) {
        spec = {{"schema", 1}, {"task", "reps"}, {"group", {{"group", "finite"}, {"name", group_name}}}};
        if (element >= 0)
            spec["element"] = element;
    } else {
        std::cerr << "hclab: --spec is required\n";
        return exit_parse;
    }
    if (task == "reps" && element >= 0 && !spec.contains("element"))
        spec["element"] = element;

    const std::string effective = task == "validate" ? "" : task;
    const auto diags = hclab::validate(spec, effective);
    if (task == "validate") {
        for (const auto& d : diags)
            std::cout << d << "\n";
        if (diags.empty())
            std::cout << "ok\n";
        return diags.empty() ? 0 : exit_parse;
    }
    if (!diags.empty()) {
        for (const auto& d : diags)
            std::cerr << "hclab: " << d << "\n";
        return exit_parse;
    }

    hclab::set_thread_count(threads ? threads : threads_from_env());
    try {
        const hclab::ExperimentPlan plan = hclab::make_plan(spec, effective);
        for (const auto& path : hclab::run(plan, out_dir))
            std::cout << path.string() << "\n";
    } catch (const hclab::ParseError& e) {
        std::cerr << "hclab: " << e.what() << "\n";
        return exit_parse;
    } catch (const std::exception& e) {
        std::cerr << "hclab: " << e.what() << "\n";
        return exit_runtime;
    }
    return 0;
}
