#include "qer/sweep.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "qer/fidelity.hpp"

namespace qer {

std::vector<double> uniform_grid(double start, double stop, int steps) {
    if (steps < 1) {
        throw std::invalid_argument("uniform_grid: step count must be positive");
    }
    if (steps == 1) {
        return {start};
    }
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        grid.push_back(start + (stop - start) * static_cast<double>(i) /
                                   static_cast<double>(steps - 1));
    }
    return grid;
}

KrausChannel physical_noise(const CodeSystem& code, double gamma) {
    return tensor_power(amplitude_damping(gamma), code.n_qubits);
}

double recovery_fidelity(const CodeSystem& code, double gamma, const KrausChannel& recovery) {
    const KrausChannel spread = spreading_transform(physical_noise(code, gamma), code.enc);
    const DensityOperator rho = maximally_mixed(code.enc.dim_source);
    return entanglement_fidelity(rho, compose_choi(kraus_to_choi(recovery), spread));
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
    for (double gamma : config.gammas) {
        if (!(gamma >= 0.0 && gamma <= 1.0)) {
            throw std::invalid_argument("run_sweep: gammas must lie in [0, 1]");
        }
    }
    if (config.with_qec && !config.code.stabilizer.has_value()) {
        throw std::invalid_argument("run_sweep: qec recovery requires a stabilizer code");
    }
    if (config.jobs < 1) {
        throw std::invalid_argument("run_sweep: job count must be positive");
    }

    std::optional<KrausChannel> qec_recovery;
    if (config.with_qec) {
        qec_recovery = stabilizer_qec_recovery(*config.code.stabilizer, config.code.enc);
    }

    std::vector<SweepRecord> records(config.gammas.size());
    const auto evaluate_point = [&](std::size_t index) {
        const double gamma = config.gammas[index];
        SweepRecord& record = records[index];
        record.gamma = gamma;
        const auto started = std::chrono::steady_clock::now();

        if (config.with_optimal) {
            SdpOptions options;
            options.tol = config.tol;
            options.max_iterations = config.max_iterations;
            try {
                RecoveryResult result = optimal_recovery(config.code.enc,
                                                         physical_noise(config.code, gamma),
                                                         options);
                record.f_optimal = result.fidelity;
                record.gap = result.certificate->gap;
                record.iterations = result.certificate->iterations;
            } catch (const SdpConvergenceError&) {
                record.f_optimal = std::numeric_limits<double>::quiet_NaN();
                record.gap = std::numeric_limits<double>::quiet_NaN();
                record.iterations = config.max_iterations;
            }
        }
        if (config.with_qec) {
            record.f_qec = recovery_fidelity(config.code, gamma, *qec_recovery);
        }
        if (config.with_none) {
            record.f_none = no_recovery_baseline(gamma);
        }

        record.wall_time =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    };

    const std::size_t total = config.gammas.size();
    if (config.jobs == 1 || total <= 1) {
        for (std::size_t i = 0; i < total; ++i) {
            evaluate_point(i);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        const std::size_t worker_count =
            std::min<std::size_t>(static_cast<std::size_t>(config.jobs), total);
        std::vector<std::thread> workers;
        workers.reserve(worker_count);
        for (std::size_t w = 0; w < worker_count; ++w) {
            workers.emplace_back([&]() {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= total) {
                        return;
                    }
                    try {
                        evaluate_point(i);
                    } catch (...) {
                        const std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) {
                            failure = std::current_exception();
                        }
                        next.store(total);
                        return;
                    }
                }
            });
        }
        for (std::thread& worker : workers) {
            worker.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    return records;
}

}  // namespace qer
