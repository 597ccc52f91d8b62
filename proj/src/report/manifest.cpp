#include "qlab/report/manifest.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "qlab/core/errors.hpp"
#include "qlab/core/numeric.hpp"

namespace qlab::report {

RunManifest::RunManifest(std::string subcommand) {
    entries_.emplace_back("toolkit_version", kToolkitVersion);
    entries_.emplace_back("subcommand", std::move(subcommand));
}

void RunManifest::set(const std::string& key, const std::string& value) {
    entries_.emplace_back(key, value);
}

void RunManifest::set(const std::string& key, double value) {
    entries_.emplace_back(key, core::repr_double(value));
}

void RunManifest::set(const std::string& key, std::uint64_t value) {
    entries_.emplace_back(key, std::to_string(value));
}

void RunManifest::add_input(const std::filesystem::path& file) {
    entries_.emplace_back("input." + file.filename().string(), file_digest_hex(file));
}

void RunManifest::add_rejection(const std::string& symbol, const std::string& reason) {
    entries_.emplace_back("rejected." + symbol, reason);
}

std::string RunManifest::render() const {
    std::ostringstream out;
    for (const auto& [key, value] : entries_) {
        out << key << '=' << value << '\n';
    }
    return out.str();
}

void RunManifest::write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::MissingFile, "cannot write " + path.string());
    }
    out << render();
}

std::string file_digest_hex(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::MissingFile, file.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string bytes = buffer.str();
    char hex[32];
    std::snprintf(hex, sizeof(hex), "%016llx",
                  static_cast<unsigned long long>(core::fnv1a64(bytes)));
    return hex;
}

} // namespace qlab::report
