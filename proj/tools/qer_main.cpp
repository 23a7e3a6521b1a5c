#include <cmath>
#include <cstdio>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qer/json_io.hpp"
#include "qer/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

std::string format_value(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string format_short(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%g", value);
    return buffer;
}

qer::CodeSystem resolve_code(const std::string& selector) {
    if (selector.rfind("file:", 0) == 0) {
        return qer::read_code_json(selector.substr(5));
    }
    return qer::builtin_code_system(selector);
}

std::set<std::string> parse_recovery_list(const std::string& list) {
    std::set<std::string> names;
    std::istringstream stream(list);
    std::string token;
    while (std::getline(stream, token, ',')) {
        if (token.empty()) {
            continue;
        }
        if (token != "optimal" && token != "qec" && token != "none") {
            throw std::invalid_argument("unknown recovery '" + token +
                                        "', expected optimal, qec or none");
        }
        names.insert(token);
    }
    if (names.empty()) {
        throw std::invalid_argument("recovery list is empty");
    }
    return names;
}

struct SolveArgs {
    std::string code;
    double gamma = 0.0;
    double tol = 1e-8;
    int max_iterations = 200;
    std::string method = "optimal";
    std::string out;
};

int run_solve(const SolveArgs& args) {
    const qer::CodeSystem system = resolve_code(args.code);
    const qer::RecoveryMethod method = qer::recovery_method_from_string(args.method);

    qer::RecoveryResult result;
    result.gamma = args.gamma;
    result.method = method;
    switch (method) {
        case qer::RecoveryMethod::Optimal: {
            qer::SdpOptions options;
            options.tol = args.tol;
            options.max_iterations = args.max_iterations;
            result = qer::optimal_recovery(system.enc, qer::physical_noise(system, args.gamma),
                                           options);
            result.gamma = args.gamma;
            break;
        }
        case qer::RecoveryMethod::Qec: {
            if (!system.stabilizer.has_value()) {
                throw std::invalid_argument("qec recovery requires a stabilizer code");
            }
            result.kraus = qer::stabilizer_qec_recovery(*system.stabilizer, system.enc);
            break;
        }
        case qer::RecoveryMethod::DecodeOnly: {
            result.kraus = qer::decode_only_recovery(system.enc);
            break;
        }
        case qer::RecoveryMethod::None: {
            result.kraus = qer::KrausChannel{2, 2, {qer::Mat::Identity(2, 2)}};
            break;
        }
    }
    if (method == qer::RecoveryMethod::None) {
        result.recovery = qer::kraus_to_choi(result.kraus);
        result.fidelity = qer::no_recovery_baseline(args.gamma);
    } else if (method != qer::RecoveryMethod::Optimal) {
        result.recovery = qer::kraus_to_choi(result.kraus);
        result.fidelity = qer::recovery_fidelity(system, args.gamma, result.kraus);
    }

    std::cout << "code=" << system.id << " method=" << qer::to_string(method)
              << " gamma=" << format_short(args.gamma)
              << " fidelity=" << format_value(result.fidelity);
    if (result.certificate.has_value()) {
        std::cout << " dual_gap=" << format_value(result.certificate->gap)
                  << " iterations=" << result.certificate->iterations;
    }
    std::cout << "\n";

    if (!args.out.empty()) {
        qer::write_solution_json(args.out, result);
    }
    return kExitOk;
}

struct SweepArgs {
    std::string code;
    double gamma_start = 0.0;
    double gamma_stop = 0.5;
    int steps = 26;
    std::string recoveries = "optimal,qec,none";
    bool recoveries_given = false;
    int jobs = 1;
    double tol = 1e-8;
    int max_iterations = 200;
    std::string out;
    std::string plot;
};

int run_sweep_command(const SweepArgs& args) {
    qer::SweepConfig config;
    config.code = resolve_code(args.code);
    config.gammas = qer::uniform_grid(args.gamma_start, args.gamma_stop, args.steps);
    config.tol = args.tol;
    config.max_iterations = args.max_iterations;
    config.jobs = args.jobs;

    const std::set<std::string> names = parse_recovery_list(args.recoveries);
    config.with_optimal = names.count("optimal") > 0;
    config.with_qec = names.count("qec") > 0;
    config.with_none = names.count("none") > 0;
    if (config.with_qec && !config.code.stabilizer.has_value()) {
        if (args.recoveries_given) {
            throw std::invalid_argument("qec recovery requires a stabilizer code");
        }
        config.with_qec = false;
    }
    if (!args.plot.empty() && args.out.empty()) {
        throw std::invalid_argument("--plot requires --out so the script has a data file");
    }

    const std::vector<qer::SweepRecord> records = qer::run_sweep(config);
    if (config.with_optimal) {
        bool any_converged = false;
        for (const qer::SweepRecord& record : records) {
            any_converged = any_converged || std::isfinite(record.f_optimal);
        }
        if (!any_converged) {
            std::cerr << "error: solver failed at every grid point\n";
            return kExitSolver;
        }
    }

    if (args.out.empty()) {
        std::cout << qer::sweep_to_csv(records);
    } else {
        qer::write_sweep_csv(args.out, records);
        std::cout << "wrote " << records.size() << " records to " << args.out << "\n";
    }
    if (!args.plot.empty()) {
        qer::write_plot_script(args.plot, args.out);
        std::cout << "wrote plot script to " << args.plot << "\n";
    }
    return kExitOk;
}

struct FitArgs {
    std::string in;
    std::string column = "f_optimal";
    double max_gamma = 0.01;
};

int run_fit(const FitArgs& args) {
    const qer::CsvTable table = qer::read_csv(args.in);
    std::size_t gamma_index = table.header.size();
    std::size_t value_index = table.header.size();
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (table.header[i] == "gamma") {
            gamma_index = i;
        }
        if (table.header[i] == args.column) {
            value_index = i;
        }
    }
    if (gamma_index == table.header.size()) {
        throw std::invalid_argument("input has no gamma column");
    }
    if (value_index == table.header.size()) {
        throw std::invalid_argument("input has no column named '" + args.column + "'");
    }

    std::vector<std::pair<double, double>> points;
    for (const std::vector<double>& row : table.rows) {
        const double gamma = row[gamma_index];
        const double value = row[value_index];
        if (gamma > 0.0 && gamma <= args.max_gamma && std::isfinite(value)) {
            points.emplace_back(gamma, value);
        }
    }
    const qer::FitResult fit = qer::fit_quadratic_coefficient(points);
    std::cout << "column=" << args.column << " points=" << points.size()
              << " max_gamma=" << format_short(args.max_gamma) << " c2=" << format_value(fit.c2)
              << " c3=" << format_value(fit.c3) << " residual=" << format_value(fit.residual)
              << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"channel-adapted recovery optimization for quantum error correcting codes"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    CLI::App* solve_cmd = app.add_subcommand("solve", "compute one recovery at a fixed gamma");
    solve_cmd->add_option("--code", solve_args.code, "five-qubit, leung4 or file:PATH")
        ->required();
    solve_cmd->add_option("--gamma", solve_args.gamma, "damping probability")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    solve_cmd->add_option("--tol", solve_args.tol, "solver tolerance")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--max-iterations", solve_args.max_iterations, "solver iteration cap")
        ->check(CLI::PositiveNumber);
    solve_cmd->add_option("--method", solve_args.method,
                          "optimal, qec, decode-only or none (default optimal)");
    solve_cmd->add_option("--out", solve_args.out, "write the solution as JSON to this path");

    SweepArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate recoveries over a gamma grid");
    sweep_cmd->add_option("--code", sweep_args.code, "five-qubit, leung4 or file:PATH")
        ->required();
    sweep_cmd->add_option("--gamma-start", sweep_args.gamma_start, "first grid point")
        ->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--gamma-stop", sweep_args.gamma_stop, "last grid point")
        ->check(CLI::Range(0.0, 1.0));
    sweep_cmd->add_option("--steps", sweep_args.steps, "number of grid points")
        ->check(CLI::PositiveNumber);
    CLI::Option* recoveries_option = sweep_cmd->add_option(
        "--recoveries", sweep_args.recoveries, "comma list from optimal, qec, none");
    sweep_cmd->add_option("--jobs", sweep_args.jobs, "concurrent grid points")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--tol", sweep_args.tol, "solver tolerance")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--max-iterations", sweep_args.max_iterations, "solver iteration cap")
        ->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--out", sweep_args.out, "write records as CSV to this path");
    sweep_cmd->add_option("--plot", sweep_args.plot, "write a gnuplot script to this path");

    FitArgs fit_args;
    CLI::App* fit_cmd = app.add_subcommand("fit", "fit the small-gamma quadratic coefficient");
    fit_cmd->add_option("--in", fit_args.in, "sweep CSV to read")->required();
    fit_cmd->add_option("--column", fit_args.column, "fidelity column to fit");
    fit_cmd->add_option("--max-gamma", fit_args.max_gamma, "largest gamma used in the fit")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? kExitOk : kExitConfig;
    }
    sweep_args.recoveries_given = recoveries_option->count() > 0;

    try {
        if (solve_cmd->parsed()) {
            return run_solve(solve_args);
        }
        if (sweep_cmd->parsed()) {
            return run_sweep_command(sweep_args);
        }
        return run_fit(fit_args);
    } catch (const qer::SdpConvergenceError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitSolver;
    } catch (const qer::IoError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitIo;
    } catch (const std::invalid_argument& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return kExitSolver;
    }
}
