#include "qer/codes.hpp"

#include <cmath>
#include <stdexcept>

namespace qer {

namespace {

Mat single_pauli(char letter) {
    Mat m = Mat::Zero(2, 2);
    switch (letter) {
        case 'I':
            m(0, 0) = 1.0;
            m(1, 1) = 1.0;
            break;
        case 'X':
            m(0, 1) = 1.0;
            m(1, 0) = 1.0;
            break;
        case 'Y':
            m(0, 1) = Complex(0.0, -1.0);
            m(1, 0) = Complex(0.0, 1.0);
            break;
        case 'Z':
            m(0, 0) = 1.0;
            m(1, 1) = -1.0;
            break;
        default:
            throw std::invalid_argument("pauli_matrix: invalid letter, expected I, X, Y or Z");
    }
    return m;
}

void fix_column_phase(Mat& u, Eigen::Index col) {
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        const Complex amp = u(i, col);
        if (std::abs(amp) > 1e-8) {
            u.col(col) *= std::conj(amp) / std::abs(amp);
            return;
        }
    }
    throw std::runtime_error("logical_states: logical state has no significant amplitude");
}

void check_isometry(const CodeIsometry& enc, const std::string& what) {
    const Mat gram = enc.u.adjoint() * enc.u;
    if (max_abs(gram - Mat::Identity(enc.dim_source, enc.dim_source)) > 1e-12) {
        throw std::invalid_argument(what + ": encoding map is not an isometry");
    }
}

}  // namespace

Mat pauli_matrix(const PauliString& p) {
    if (p.letters.empty()) {
        throw std::invalid_argument("pauli_matrix: string must have at least one letter");
    }
    Mat m = single_pauli(p.letters.front());
    for (std::size_t q = 1; q < p.letters.size(); ++q) {
        m = kron(m, single_pauli(p.letters[q]));
    }
    return m;
}

bool pauli_anticommute(const PauliString& a, const PauliString& b) {
    if (a.letters.size() != b.letters.size()) {
        throw std::invalid_argument("pauli_anticommute: strings must have equal length");
    }
    int differing = 0;
    for (std::size_t q = 0; q < a.letters.size(); ++q) {
        const char la = a.letters[q];
        const char lb = b.letters[q];
        if (la != 'I' && lb != 'I' && la != lb) {
            ++differing;
        }
    }
    return differing % 2 == 1;
}

StabilizerCode five_qubit_code() {
    StabilizerCode code;
    code.n = 5;
    code.generators = {PauliString{"XZZXI"}, PauliString{"IXZZX"}, PauliString{"XIXZZ"},
                       PauliString{"ZXIXZ"}};
    code.logical_z = PauliString{"ZZZZZ"};
    code.logical_x = PauliString{"XXXXX"};
    return code;
}

CodeIsometry logical_states(const StabilizerCode& code) {
    if (code.generators.empty()) {
        throw std::invalid_argument("logical_states: code has no generators");
    }
    for (std::size_t a = 0; a < code.generators.size(); ++a) {
        for (std::size_t b = a + 1; b < code.generators.size(); ++b) {
            if (pauli_anticommute(code.generators[a], code.generators[b])) {
                throw std::invalid_argument("logical_states: generators do not commute");
            }
        }
        if (pauli_anticommute(code.generators[a], code.logical_z)) {
            throw std::invalid_argument("logical_states: logical Z must commute with generators");
        }
    }

    const Eigen::Index dim = Eigen::Index{1} << code.n;
    Mat projector = Mat::Identity(dim, dim);
    for (const PauliString& g : code.generators) {
        projector = projector * (0.5 * (Mat::Identity(dim, dim) + pauli_matrix(g)));
    }
    projector = hermitize(projector);

    HermitianEig eig = eig_hermitian(projector);
    Eigen::Index codespace_dim = 0;
    while (codespace_dim < eig.values.size() && eig.values(codespace_dim) > 0.5) {
        ++codespace_dim;
    }
    if (codespace_dim != 2) {
        throw std::invalid_argument("logical_states: codespace dimension must be two");
    }

    const Mat basis = eig.vectors.leftCols(2);
    const Mat z_restricted = hermitize(basis.adjoint() * pauli_matrix(code.logical_z) * basis);
    HermitianEig z_eig = eig_hermitian(z_restricted);
    if (std::abs(z_eig.values(0) - 1.0) > 1e-10 || std::abs(z_eig.values(1) + 1.0) > 1e-10) {
        throw std::runtime_error("logical_states: logical Z does not split the codespace");
    }

    Mat u = basis * z_eig.vectors;
    fix_column_phase(u, 0);
    fix_column_phase(u, 1);

    CodeIsometry enc{2, dim, u, "stabilizer code on " + std::to_string(code.n) + " qubits"};
    check_isometry(enc, "logical_states");
    for (const PauliString& g : code.generators) {
        if (max_abs(pauli_matrix(g) * enc.u - enc.u) > 1e-10) {
            throw std::runtime_error("logical_states: extracted states are not stabilized");
        }
    }
    return enc;
}

CodeIsometry leung4_code() {
    const double amp = 1.0 / std::sqrt(2.0);
    Mat u = Mat::Zero(16, 2);
    u(0, 0) = amp;
    u(15, 0) = amp;
    u(3, 1) = amp;
    u(12, 1) = amp;
    return CodeIsometry{2, 16, u, "four-qubit amplitude damping code"};
}

KrausChannel spreading_transform(const KrausChannel& noise, const CodeIsometry& enc) {
    if (noise.dim_in != noise.dim_out || noise.dim_in != enc.dim_code) {
        throw std::invalid_argument("spreading_transform: noise must act on the code space");
    }
    std::vector<Mat> elements;
    elements.reserve(noise.elements.size());
    for (const Mat& e : noise.elements) {
        elements.push_back(e * enc.u);
    }
    return KrausChannel{enc.dim_source, enc.dim_code, std::move(elements)};
}

CodeSystem code_system_from_stabilizer(const std::string& id, const StabilizerCode& code) {
    CodeSystem system;
    system.id = id;
    system.enc = logical_states(code);
    system.stabilizer = code;
    system.n_qubits = code.n;
    return system;
}

CodeSystem code_system_from_isometry(const std::string& id, const CodeIsometry& enc) {
    check_isometry(enc, "code_system_from_isometry");
    Eigen::Index dim = enc.dim_code;
    int n = 0;
    while (dim > 1 && dim % 2 == 0) {
        dim /= 2;
        ++n;
    }
    if (dim != 1 || n < 1) {
        throw std::invalid_argument("code_system_from_isometry: code dimension must be a power of two");
    }
    CodeSystem system;
    system.id = id;
    system.enc = enc;
    system.n_qubits = n;
    return system;
}

CodeSystem builtin_code_system(const std::string& name) {
    if (name == "five-qubit") {
        return code_system_from_stabilizer(name, five_qubit_code());
    }
    if (name == "leung4") {
        return code_system_from_isometry(name, leung4_code());
    }
    throw std::invalid_argument("unknown code '" + name + "', expected five-qubit or leung4");
}

}  // namespace qer
