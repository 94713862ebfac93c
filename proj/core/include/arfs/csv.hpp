#pragma once

#include <filesystem>
#include <string>

#include "arfs/dataset.hpp"

namespace arfs {

/// Reads a numeric, comma-separated file with a mandatory header row.
/// Features keep header order with the target column removed.
Dataset load_csv(const std::filesystem::path& path, const std::string& target_column = "y",
                 Task task = Task::classification);

/// Writes features in order followed by the target column.
void write_csv(const Dataset& ds, const std::filesystem::path& path,
               const std::string& target_column = "y");

} // namespace arfs
