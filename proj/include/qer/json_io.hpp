#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "qer/channel.hpp"
#include "qer/codes.hpp"
#include "qer/recovery.hpp"
#include "qer/sweep.hpp"

namespace qer {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

// All writers go through a temporary file in the target directory followed by
// a rename, so readers never observe a partial file.
void write_text_atomic(const std::filesystem::path& path, const std::string& content);

KrausChannel read_channel_json(const std::filesystem::path& path);
void write_channel_json(const std::filesystem::path& path, const KrausChannel& channel);

CodeSystem read_code_json(const std::filesystem::path& path);

void write_solution_json(const std::filesystem::path& path, const RecoveryResult& result);
std::string solution_to_json(const RecoveryResult& result);

std::string sweep_to_csv(const std::vector<SweepRecord>& records);
void write_sweep_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records);
CsvTable read_csv(const std::filesystem::path& path);

void write_plot_script(const std::filesystem::path& path, const std::string& csv_path);

}  // namespace qer
