#include <exception>
#include <iostream>

#include <CLI11.hpp>

#include "spmkit/errors.hpp"

#include "commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spmkit: graph-robustness defenses against self-propagating malware"};
    app.require_subcommand(1);

    spmkit::cli::register_stats(app);
    spmkit::cli::register_defend(app);
    spmkit::cli::register_simulate(app);
    spmkit::cli::register_sweep(app);
    spmkit::cli::register_fit(app);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return spmkit::cli::kExitConfig;
    } catch (const spmkit::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return spmkit::cli::kExitConfig;
    } catch (const spmkit::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return spmkit::cli::kExitIo;
    } catch (const spmkit::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return spmkit::cli::kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return spmkit::cli::kExitOk;
}
