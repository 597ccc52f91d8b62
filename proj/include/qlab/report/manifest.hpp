#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace qlab::report {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Plain key=value run record. Contains no timestamps or absolute-path-derived
/// values beyond what the caller passes, so identical runs write identical
/// manifests.
class RunManifest {
public:
    explicit RunManifest(std::string subcommand);

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, std::uint64_t value);
    void add_input(const std::filesystem::path& file); // records path + content digest
    void add_rejection(const std::string& symbol, const std::string& reason);

    void write(const std::filesystem::path& path) const;
    std::string render() const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

std::string file_digest_hex(const std::filesystem::path& file);

} // namespace qlab::report
