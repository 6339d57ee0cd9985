#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "artin/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"deterministic checker for finite local algebras over F_p"};
    std::string file;
    artin::RunFlags flags;
    app.add_option("file", file, "instance file to execute")->required();
    app.add_option("--seed", flags.seed, "seed for sampled checks and sweeps");
    app.add_option("--trials", flags.trials, "trial count for sampled checks");
    app.add_option("--mode", flags.mode, "default torsion-freeness mode")
        ->check(CLI::IsMember({"exhaustive", "sampled"}));
    app.add_flag("--timing", flags.timing, "append time_ms lines to every report");
    app.add_flag("--unsafe-raise-caps", flags.raise_caps,
                 "raise the p/dim/n input caps to the hard implementation limits");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return artin::run_instance_file(file, flags, std::cout, std::cerr);
}
