// CSV emission with fixed 17-significant-digit formatting and atomic file
// replacement (write to a temporary, then rename), so identical inputs
// yield byte-identical artifacts.
#ifndef CORRPERF_CSV_HPP
#define CORRPERF_CSV_HPP

#include <string>
#include <vector>

#include "corrperf/channel.hpp"

namespace corrperf {

// Shortest representation carrying 17 significant digits ("%.17g").
std::string format_double(double value);

// Writes header + rows; every cell formatted by format_double.
void write_csv_atomic(const std::string& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

// Writes arbitrary text content atomically (used for run manifests).
void write_text_atomic(const std::string& path, const std::string& content);

// Chi diagonal as CSV with columns pauli_string,e_pp_real.
void export_chi_diagonal_csv(const ChiMatrix& chi, const std::string& path);

}  // namespace corrperf

#endif  // CORRPERF_CSV_HPP
