// runs the numbered acceptance criteria and prints one line each
#include "sqf/acceptance.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <stdexcept>

int main(int argc, char** argv) {
    sqf::AcceptanceOptions opt;
    CLI::App app{"acceptance criteria"};
    app.add_flag("--quick", opt.quick, "smaller problem sizes");
    app.add_flag("--long", opt.long_run, "include the slow extras");
    app.add_option("--seed", opt.seed);
    app.add_option("--threads", opt.threads);
    app.add_option("--only", opt.only, "criterion ids to run");
    CLI11_PARSE(app, argc, argv);

    int failed = 0;
    try {
        sqf::run_acceptance(opt, [&](const sqf::CriterionResult& r) {
            std::cout << sqf::format_line(r) << std::endl;
            failed += !r.pass;
        });
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    std::cout << (failed ? "FAILED " + std::to_string(failed) + " criteria" : "all criteria passed") << "\n";
    return failed ? 1 : 0;
}
