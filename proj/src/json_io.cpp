#include "qer/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qer {

namespace {

using nlohmann::json;

std::string format_field(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

json matrix_to_json(const Mat& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw IoError("expected a complex entry of the form [re, im]");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

Mat matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw IoError("expected a non-empty nested array of matrix rows");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    if (cols < 1) {
        throw IoError("matrix rows must be non-empty");
    }
    Mat m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (static_cast<Eigen::Index>(j[static_cast<std::size_t>(i)].size()) != cols) {
            throw IoError("matrix rows must have equal length");
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            m(i, k) = complex_from_json(j[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
        }
    }
    return m;
}

json parse_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    json j;
    try {
        stream >> j;
    } catch (const json::parse_error& error) {
        throw IoError("cannot parse '" + path.string() + "': " + error.what());
    }
    return j;
}

}  // namespace

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path temp = path;
    temp += ".tmp";
    {
        std::ofstream stream(temp, std::ios::binary | std::ios::trunc);
        if (!stream) {
            throw IoError("cannot open '" + temp.string() + "' for writing");
        }
        stream << content;
        stream.flush();
        if (!stream) {
            throw IoError("write to '" + temp.string() + "' failed");
        }
    }
    std::error_code code;
    std::filesystem::rename(temp, path, code);
    if (code) {
        throw IoError("cannot rename '" + temp.string() + "' to '" + path.string() + "': " +
                      code.message());
    }
}

KrausChannel read_channel_json(const std::filesystem::path& path) {
    const json j = parse_file(path);
    if (!j.contains("dim_in") || !j.contains("dim_out") || !j.contains("kraus")) {
        throw IoError("channel file must contain dim_in, dim_out and kraus");
    }
    const auto dim_in = j["dim_in"].get<Eigen::Index>();
    const auto dim_out = j["dim_out"].get<Eigen::Index>();
    if (dim_in < 1 || dim_out < 1) {
        throw IoError("channel dimensions must be positive");
    }
    std::vector<Mat> elements;
    for (const json& entry : j["kraus"]) {
        Mat e = matrix_from_json(entry);
        if (e.rows() != dim_out || e.cols() != dim_in) {
            throw IoError("kraus element shape must be dim_out x dim_in");
        }
        elements.push_back(std::move(e));
    }
    if (elements.empty()) {
        throw IoError("channel file lists no kraus elements");
    }
    return KrausChannel{dim_in, dim_out, std::move(elements)};
}

void write_channel_json(const std::filesystem::path& path, const KrausChannel& channel) {
    json j;
    j["dim_in"] = channel.dim_in;
    j["dim_out"] = channel.dim_out;
    json kraus = json::array();
    for (const Mat& e : channel.elements) {
        kraus.push_back(matrix_to_json(e));
    }
    j["kraus"] = std::move(kraus);
    write_text_atomic(path, j.dump(2) + "\n");
}

CodeSystem read_code_json(const std::filesystem::path& path) {
    const json j = parse_file(path);
    const std::string id = "file:" + path.string();
    if (j.contains("isometry")) {
        Mat u = matrix_from_json(j["isometry"]);
        return code_system_from_isometry(id, CodeIsometry{u.cols(), u.rows(), u, id});
    }
    if (j.contains("n") && j.contains("generators") && j.contains("logical_z")) {
        StabilizerCode code;
        code.n = j["n"].get<int>();
        if (code.n < 1) {
            throw IoError("code file has a non-positive qubit count");
        }
        for (const json& g : j["generators"]) {
            code.generators.push_back(PauliString{g.get<std::string>()});
        }
        code.logical_z = PauliString{j["logical_z"].get<std::string>()};
        code.logical_x = PauliString{j.value("logical_x", std::string())};
        const std::size_t width = static_cast<std::size_t>(code.n);
        for (const PauliString& g : code.generators) {
            if (g.letters.size() != width) {
                throw IoError("generator length must equal the qubit count");
            }
        }
        if (code.logical_z.letters.size() != width) {
            throw IoError("logical_z length must equal the qubit count");
        }
        return code_system_from_stabilizer(id, code);
    }
    throw IoError("code file must contain either an isometry or generators with logical_z");
}

std::string solution_to_json(const RecoveryResult& result) {
    json j;
    j["gamma"] = result.gamma;
    j["method"] = to_string(result.method);
    j["fidelity"] = result.fidelity;
    j["choi"] = matrix_to_json(result.recovery.x);
    json kraus = json::array();
    for (const Mat& e : result.kraus.elements) {
        kraus.push_back(matrix_to_json(e));
    }
    j["kraus"] = std::move(kraus);
    j["dual_gap"] = result.certificate ? result.certificate->gap : 0.0;
    return j.dump(2) + "\n";
}

void write_solution_json(const std::filesystem::path& path, const RecoveryResult& result) {
    write_text_atomic(path, solution_to_json(result));
}

std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream out;
    out << "gamma,f_optimal,f_qec,f_none,gap,iterations,wall_time\n";
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (const SweepRecord& record : records) {
        out << format_field(record.gamma) << ',' << format_field(record.f_optimal) << ','
            << format_field(record.f_qec.value_or(nan)) << ',' << format_field(record.f_none)
            << ',' << format_field(record.gap) << ',' << record.iterations << ','
            << format_field(record.wall_time) << '\n';
    }
    return out.str();
}

void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records) {
    write_text_atomic(path, sweep_to_csv(records));
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    CsvTable table;
    std::string line;
    if (!std::getline(stream, line)) {
        throw IoError("'" + path.string() + "' is empty");
    }
    std::istringstream header(line);
    std::string field;
    while (std::getline(header, field, ',')) {
        table.header.push_back(field);
    }
    while (std::getline(stream, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream row_stream(line);
        std::vector<double> row;
        while (std::getline(row_stream, field, ',')) {
            try {
                row.push_back(std::stod(field));
            } catch (const std::exception&) {
                throw IoError("'" + path.string() + "' has a non-numeric field: " + field);
            }
        }
        if (row.size() != table.header.size()) {
            throw IoError("'" + path.string() + "' has a row of unexpected width");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_plot_script(const std::filesystem::path& path, const std::string& csv_path) {
    std::ostringstream out;
    out << "# gnuplot script; render with: gnuplot -persist " << path.filename().string() << "\n"
        << "set datafile separator \",\"\n"
        << "set xlabel \"gamma\"\n"
        << "set ylabel \"entanglement fidelity\"\n"
        << "set key left bottom\n"
        << "plot \"" << csv_path << "\" skip 1 using 1:2 with linespoints title \"optimal\", \\\n"
        << "     \"" << csv_path << "\" skip 1 using 1:3 with linespoints title \"qec\", \\\n"
        << "     \"" << csv_path << "\" skip 1 using 1:4 with linespoints title \"none\"\n";
    write_text_atomic(path, out.str());
}

}  // namespace qer
