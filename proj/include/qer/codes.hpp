#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qer/channel.hpp"
#include "qer/linalg.hpp"

namespace qer {

// Tensor product of single-qubit Pauli operators; the leftmost letter acts on
// qubit 1, the most significant bit of the computational-basis index.
struct PauliString {
    std::string letters;
};

struct StabilizerCode {
    int n = 0;
    std::vector<PauliString> generators;
    PauliString logical_z;
    PauliString logical_x;
};

// Encoding isometry u (dim_code x dim_source) with u^dagger u = I; u u^dagger
// is the code projector.
struct CodeIsometry {
    Eigen::Index dim_source = 0;
    Eigen::Index dim_code = 0;
    Mat u;
    std::string description;
};

// A code ready for the recovery pipelines: the isometry plus, when the code
// was given by generators, the stabilizer structure needed for syndrome
// decoding.
struct CodeSystem {
    std::string id;
    CodeIsometry enc;
    std::optional<StabilizerCode> stabilizer;
    int n_qubits = 0;
};

Mat pauli_matrix(const PauliString& p);
bool pauli_anticommute(const PauliString& a, const PauliString& b);
StabilizerCode five_qubit_code();
CodeIsometry logical_states(const StabilizerCode& code);
CodeIsometry leung4_code();
KrausChannel spreading_transform(const KrausChannel& noise, const CodeIsometry& enc);

CodeSystem code_system_from_stabilizer(const std::string& id, const StabilizerCode& code);
CodeSystem code_system_from_isometry(const std::string& id, const CodeIsometry& enc);
CodeSystem builtin_code_system(const std::string& name);

}  // namespace qer
