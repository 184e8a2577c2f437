#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gframe/config.hpp"
#include "gframe/errors.hpp"

namespace {

std::string read_all(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw gframe::ValidationError("config", "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Verification calculus for group-generated Schauder frames and finite "
                 "Gabor-Schauder frames"};

    std::string config_path;
    double tolerance = 0.0;
    bool tolerance_set = false;
    uint64_t seed = 0;
    bool seed_set = false;
    std::string output = "text";
    bool verify_adjoint = false;
    bool list = false;

    app.add_option("config", config_path, "job config path, or '-' for stdin");
    app.add_option("--tolerance", tolerance, "residual tolerance override")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { tolerance_set = true; });
    app.add_option("--seed", seed, "random seed override")
        ->each([&](const std::string&) { seed_set = true; });
    app.add_option("--output", output, "report format")
        ->check(CLI::IsMember({"text", "machine"}));
    app.add_flag("--verify-adjoint-by-matrices", verify_adjoint,
                 "cross-check the adjoint lattice by explicit matrix commutation");
    app.add_flag("--list-commands", list, "list available commands and exit");

    CLI11_PARSE(app, argc, argv);

    if (list) {
        for (const std::string& name : gframe::list_commands()) std::cout << name << "\n";
        return 0;
    }
    if (config_path.empty()) {
        std::cerr << "error: missing config path (use '-' for stdin)\n";
        return 2;
    }

    try {
        gframe::JobConfig cfg = gframe::parse_config(read_all(config_path));
        if (tolerance_set) {
            cfg.tolerance = tolerance;
            cfg.tolerance_overridden = true;
        }
        if (seed_set) cfg.seed = seed;
        cfg.verify_adjoint_by_matrices = verify_adjoint;

        const std::vector<gframe::VerificationReport> reports = gframe::run_command(cfg);

        if (output == "machine") {
            std::cout << gframe::to_machine(reports);
        } else {
            for (size_t i = 0; i < reports.size(); ++i) {
                if (i) std::cout << "\n";
                std::cout << gframe::to_text(reports[i]);
            }
        }

        for (const auto& rep : reports)
            if (!rep.passed()) return 1;
        return 0;
    } catch (const gframe::ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gframe::ValidationError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const gframe::UnknownCommandError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
