#pragma once

#include <string>
#include <vector>

#include "scld/types.hpp"

namespace scld {

// Headerless CSV, rows = features, columns = samples, '.' decimal point.
DenseMatrix read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const DenseMatrix& m);

// One integer label per line, one line per sample.
std::vector<int> read_labels_file(const std::string& path);
void write_labels_file(const std::string& path, const std::vector<int>& labels);

// Writes to a sibling temp file, then renames over the target.
void atomic_write_text(const std::string& path, const std::string& contents);

}  // namespace scld
