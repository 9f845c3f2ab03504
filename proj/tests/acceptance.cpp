// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.
#include <iostream>

#include <CLI11.hpp>

#include "air/testing/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    air::testing::AcceptanceOptions opt;
    opt.seed = air::testing::seed_from_env();
    app.add_option("--seed", opt.seed, "random seed (default: AIR_SEED or built-in)");
    app.add_option("--air", opt.air_binary, "path to the air CLI for the determinism check");
    app.add_option("--data", opt.data_dir, "sample data directory");
    CLI11_PARSE(app, argc, argv);

    std::cout << "seed " << opt.seed << std::endl;
    auto results = air::testing::run_acceptance(opt, [](const air::testing::CriterionResult& r) {
        std::cout << air::testing::format_line(r) << std::endl;
    });
    std::size_t passed = 0;
    for (const auto& r : results) passed += r.passed;
    std::cout << passed << "/" << results.size() << " criteria passed" << std::endl;
    return passed == results.size() ? 0 : 1;
}
