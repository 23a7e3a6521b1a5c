#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qer/fidelity.hpp"
#include "qer/recovery.hpp"
#include "qer/sweep.hpp"

namespace py = pybind11;
using namespace qer;

namespace {

struct PyRecovery {
    std::string code;
    std::string method;
    double gamma = 0.0;
    double fidelity = 0.0;
    double dual_gap = 0.0;
    int iterations = 0;
    Mat choi;
    std::vector<Mat> kraus;
};

PyRecovery solve_optimal(const std::string& code, double gamma, double tol,
                         int max_iterations) {
    const CodeSystem system = builtin_code_system(code);
    SdpOptions options;
    options.tol = tol;
    options.max_iterations = max_iterations;
    const RecoveryResult result =
        optimal_recovery(system.enc, physical_noise(system, gamma), options);

    PyRecovery out;
    out.code = code;
    out.method = to_string(result.method);
    out.gamma = gamma;
    out.fidelity = result.fidelity;
    out.dual_gap = result.certificate->gap;
    out.iterations = result.certificate->iterations;
    out.choi = result.recovery.x;
    for (const Mat& element : result.kraus.elements) {
        out.kraus.push_back(element);
    }
    return out;
}

double py_qec_fidelity(const std::string& code, double gamma) {
    const CodeSystem system = builtin_code_system(code);
    if (!system.stabilizer.has_value()) {
        throw std::invalid_argument("code '" + code + "' has no syndrome recovery");
    }
    return recovery_fidelity(system, gamma,
                             stabilizer_qec_recovery(*system.stabilizer, system.enc));
}

double py_decode_only_fidelity(const std::string& code, double gamma) {
    const CodeSystem system = builtin_code_system(code);
    return recovery_fidelity(system, gamma, decode_only_recovery(system.enc));
}

Mat py_code_isometry(const std::string& code) {
    return builtin_code_system(code).enc.u;
}

std::vector<Mat> py_amplitude_damping(double gamma) {
    return amplitude_damping(gamma).elements;
}

double py_entanglement_fidelity(const Mat& rho, const std::vector<Mat>& kraus) {
    return entanglement_fidelity(make_density(rho), make_kraus_channel(kraus));
}

Mat py_kraus_to_choi(const std::vector<Mat>& kraus) {
    return kraus_to_choi(make_kraus_channel(kraus)).x;
}

std::vector<Mat> py_choi_to_kraus(const Mat& choi, Eigen::Index dim_in,
                                  Eigen::Index dim_out) {
    if (choi.rows() != dim_in * dim_out || choi.cols() != choi.rows()) {
        throw std::invalid_argument("choi matrix side must equal dim_in * dim_out");
    }
    return choi_to_kraus(ChoiOperator{dim_in, dim_out, choi}).elements;
}

}  // namespace

PYBIND11_MODULE(_qer, m) {
    m.doc() = "channel-adapted recovery optimization for quantum error correcting codes";

    py::class_<PyRecovery>(m, "Recovery")
        .def_readonly("code", &PyRecovery::code)
        .def_readonly("method", &PyRecovery::method)
        .def_readonly("gamma", &PyRecovery::gamma)
        .def_readonly("fidelity", &PyRecovery::fidelity)
        .def_readonly("dual_gap", &PyRecovery::dual_gap)
        .def_readonly("iterations", &PyRecovery::iterations)
        .def_readonly("choi", &PyRecovery::choi)
        .def_readonly("kraus", &PyRecovery::kraus)
        .def("__repr__", [](const PyRecovery& r) {
            return "<Recovery code=" + r.code + " gamma=" + std::to_string(r.gamma) +
                   " fidelity=" + std::to_string(r.fidelity) + ">";
        });

    m.def("optimal_recovery", &solve_optimal, py::arg("code"), py::arg("gamma"),
          py::arg("tol") = 1e-8, py::arg("max_iterations") = 200,
          "Solve for the fidelity-maximizing recovery of a built-in code under "
          "amplitude damping.");
    m.def("qec_fidelity", &py_qec_fidelity, py::arg("code"), py::arg("gamma"),
          "Entanglement fidelity of the projective syndrome recovery.");
    m.def("decode_only_fidelity", &py_decode_only_fidelity, py::arg("code"), py::arg("gamma"),
          "Entanglement fidelity of bare decoding without correction.");
    m.def("baseline_fidelity", &no_recovery_baseline, py::arg("gamma"),
          "Entanglement fidelity of one unencoded qubit under amplitude damping.");
    m.def("code_isometry", &py_code_isometry, py::arg("code"),
          "Encoding isometry of a built-in code.");
    m.def("amplitude_damping_kraus", &py_amplitude_damping, py::arg("gamma"),
          "Operator elements of the single-qubit amplitude damping channel.");
    m.def("entanglement_fidelity", &py_entanglement_fidelity, py::arg("rho"), py::arg("kraus"),
          "Entanglement fidelity of a channel given by operator elements.");
    m.def("kraus_to_choi", &py_kraus_to_choi, py::arg("kraus"),
          "Choi operator of a channel, output factor first.");
    m.def("choi_to_kraus", &py_choi_to_kraus, py::arg("choi"), py::arg("dim_in"),
          py::arg("dim_out"), "Operator elements extracted from a Choi operator.");
}
