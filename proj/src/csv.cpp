#include "corrperf/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace corrperf {

std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

namespace {

void atomic_replace(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.flush())
            throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

}  // namespace

void write_csv_atomic(const std::string& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::string content;
    for (size_t c = 0; c < header.size(); ++c) {
        if (c) content += ',';
        content += header[c];
    }
    content += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::invalid_argument("write_csv_atomic: ragged row");
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) content += ',';
            content += format_double(row[c]);
        }
        content += '\n';
    }
    atomic_replace(path, content);
}

void write_text_atomic(const std::string& path, const std::string& content) {
    atomic_replace(path, content);
}

void export_chi_diagonal_csv(const ChiMatrix& chi, const std::string& path) {
    std::string content = "pauli_string,e_pp_real\n";
    const std::uint64_t count = chi.dim();
    for (std::uint64_t p = 0; p < count; ++p) {
        content += PauliString::from_index(chi.n(), p).str();
        content += ',';
        content += format_double(chi.diagonal(p).real());
        content += '\n';
    }
    atomic_replace(path, content);
}

}  // namespace corrperf
