#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "qer/fidelity.hpp"
#include "qer/sdp.hpp"
#include "test_support.hpp"

using namespace qer;

namespace {

SdpProblem random_problem(std::mt19937_64& rng, Eigen::Index dim_out, Eigen::Index dim_in) {
    SdpProblem problem;
    problem.dim_out = dim_out;
    problem.dim_in = dim_in;
    problem.cost = testing::random_psd(rng, dim_out * dim_in);
    return problem;
}

void check_certificate(const SdpSolution& solution, const SdpProblem& problem, double tol) {
    CHECK(solution.gap <= tol * std::max(1.0, std::abs(solution.primal_value)));
    CHECK(solution.residuals.tp <= 1e-8);
    CHECK(solution.residuals.psd <= 1e-9);
    CHECK(solution.trace.back().dual_residual <= 1e-8);
    const double recomputed = (problem.cost * solution.x.x).trace().real();
    CHECK(std::abs(recomputed - solution.primal_value) < 1e-10);
}

}  // namespace

TEST_CASE("scalar problem saturates the trace constraint") {
    SdpProblem problem;
    problem.dim_out = 1;
    problem.dim_in = 1;
    problem.cost = Mat::Constant(1, 1, 3.7);
    const SdpSolution solution = solve(problem);
    CHECK(solution.primal_value == doctest::Approx(3.7).epsilon(1e-8));
    CHECK(std::abs(solution.x.x(0, 0) - Complex(1.0, 0.0)) < 1e-7);
    check_certificate(solution, problem, 1e-8);
}

TEST_CASE("pure output problem maximizes the largest eigenvalue") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 10; ++trial) {
        SdpProblem problem;
        problem.dim_out = 3;
        problem.dim_in = 1;
        problem.cost = testing::random_hermitian(rng, 3);
        const SdpSolution solution = solve(problem);
        const double lambda_max = eig_hermitian(problem.cost).values(0);
        CHECK(solution.primal_value == doctest::Approx(lambda_max).epsilon(1e-7));
        check_certificate(solution, problem, 1e-8);
    }
}

TEST_CASE("identity channel data matrix reaches fidelity one") {
    const DensityOperator rho = maximally_mixed(2);
    const KrausChannel identity = make_kraus_channel({Mat::Identity(2, 2)});
    SdpProblem problem;
    problem.dim_out = 2;
    problem.dim_in = 2;
    problem.cost = data_matrix(rho, identity);
    const SdpSolution solution = solve(problem);
    CHECK(solution.primal_value == doctest::Approx(1.0).epsilon(1e-8));
    check_certificate(solution, problem, 1e-8);
    const CptpReport report = is_cptp(solution.x, 1e-7);
    CHECK(report.cp);
    CHECK(report.tp);
}

TEST_CASE("random problems return consistent certified solutions") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 8; ++trial) {
        const SdpProblem problem = random_problem(rng, 2 + trial % 2, 2);
        const SdpSolution loose = solve(problem, SdpOptions{1e-7, 200, nullptr});
        const SdpSolution tight = solve(problem, SdpOptions{1e-10, 200, nullptr});
        CHECK(std::abs(loose.primal_value - tight.primal_value) <
              1e-6 * std::max(1.0, std::abs(tight.primal_value)));
        check_certificate(tight, problem, 1e-10);
        const HermitianEig eig = eig_hermitian(tight.x.x);
        CHECK(eig.values.minCoeff() > -1e-9);
    }
}

TEST_CASE("weak duality holds along the whole iterate trace") {
    std::mt19937_64 rng(79);
    const SdpProblem problem = random_problem(rng, 3, 2);
    const SdpSolution solution = solve(problem);
    for (const SdpIterate& iterate : solution.trace) {
        CHECK(iterate.dual + 1e-6 * std::max(1.0, std::abs(iterate.dual)) >= iterate.primal);
    }
    CHECK(solution.trace.front().gap > solution.trace.back().gap);
}

TEST_CASE("dual value upper bounds the primal at the optimum") {
    std::mt19937_64 rng(83);
    const SdpProblem problem = random_problem(rng, 2, 3);
    const SdpSolution solution = solve(problem);
    CHECK(solution.dual_value >= solution.primal_value - 1e-7);
    CHECK(solution.dual_value - solution.primal_value == doctest::Approx(solution.gap));
}

TEST_CASE("iteration cap raises with the best iterate attached") {
    std::mt19937_64 rng(89);
    const SdpProblem problem = random_problem(rng, 3, 2);
    try {
        solve(problem, SdpOptions{1e-8, 1, nullptr});
        FAIL("expected the solver to give up after one iteration");
    } catch (const SdpConvergenceError& error) {
        CHECK(error.best.trace.size() >= 1);
        CHECK(error.best.iterations <= 1);
        CHECK(std::string(error.what()).find("iteration") != std::string::npos);
    }
}

TEST_CASE("trace stream reports one line per iteration") {
    std::mt19937_64 rng(97);
    const SdpProblem problem = random_problem(rng, 2, 2);
    std::ostringstream stream;
    SdpOptions options;
    options.trace_stream = &stream;
    const SdpSolution solution = solve(problem, options);
    const std::string text = stream.str();
    CHECK(text.find("iter 0") != std::string::npos);
    CHECK(text.find("gap") != std::string::npos);
    std::size_t lines = 0;
    for (char c : text) {
        lines += c == '\n' ? 1 : 0;
    }
    CHECK(lines == solution.trace.size());
}

TEST_CASE("rank deficient cost matrices converge cleanly") {
    Vec ket = Vec::Zero(4);
    ket(0) = 1.0;
    ket(3) = 1.0;
    SdpProblem problem;
    problem.dim_out = 2;
    problem.dim_in = 2;
    problem.cost = 0.25 * ket * ket.adjoint();
    const SdpSolution solution = solve(problem);
    CHECK(solution.primal_value == doctest::Approx(1.0).epsilon(1e-7));
    check_certificate(solution, problem, 1e-8);
}

TEST_CASE("solver rejects malformed problems") {
    SdpProblem problem;
    problem.dim_out = 2;
    problem.dim_in = 2;
    problem.cost = Mat::Identity(3, 3);
    CHECK_THROWS_AS(solve(problem), std::invalid_argument);
    problem.cost = Mat::Zero(4, 4);
    problem.cost(0, 1) = 1.0;
    CHECK_THROWS_AS(solve(problem), std::invalid_argument);
}
