#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "json.hpp"

int main(int argc, char** argv) {
    CLI::App app{"SISI vaccination and reinfection model: thresholds, equilibria, stability, simulation, sensitivity"};
    app.require_subcommand(1);

    sisi::cli::Options opt;
    std::string out_dir = ".";
    for (std::string_view name : sisi::cli::kCommands) {
        CLI::App* sub = app.add_subcommand(std::string(name));
        sub->add_option("--out", out_dir, "Directory for CSV artifacts")->capture_default_str();
        if (name == "reproduce-paper") {
            sub->description("Regenerate every figure and table target into a timestamped subdirectory of --out");
            continue;
        }
        sub->add_option("--config", opt.config, "Scenario file (key = value lines)")->check(CLI::ExistingFile);
        sub->add_option("--beta", opt.beta, "Override the transmission rate");
        sub->add_option("--upsilon", opt.upsilon, "Override the vaccinated share");
        sub->add_flag("--dump-config", opt.dump_config, "Print the resolved scenario and exit");
        if (name == "bifurcation") {
            sub->add_option("--lo", opt.r0_lo, "Lower end of the R0 grid")->capture_default_str();
            sub->add_option("--hi", opt.r0_hi, "Upper end of the R0 grid")->capture_default_str();
            sub->add_option("--points", opt.points, "Number of grid points")->capture_default_str();
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        const nlohmann::json rec{{"status", "error"}, {"kind", "usage"}, {"exit_code", 2}, {"message", e.what()}};
        std::cerr << rec.dump() << '\n';
        return 2;
    }

    opt.out = out_dir;
    const std::string name = app.get_subcommands().front()->get_name();
    return sisi::cli::run_command(name, opt, std::cout, std::cerr);
}
