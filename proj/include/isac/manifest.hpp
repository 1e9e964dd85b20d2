// manifest.hpp - run manifest with content hashes of every emitted file
#pragma once

#include "isac/io.hpp"

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <string>
#include <vector>

namespace isac::io {

inline constexpr const char* kToolVersion = "0.1.0";

inline std::string sha256_hex(const std::string& bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw Error("sha256: digest failed");
    }
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += hex[digest[i] >> 4];
        out += hex[digest[i] & 0xf];
    }
    return out;
}

inline std::string utc_timestamp(std::chrono::system_clock::time_point t = std::chrono::system_clock::now()) {
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class RunManifest {
public:
    RunManifest(std::string command, json config)
        : command_(std::move(command)), config_(std::move(config)), started_(utc_timestamp()) {}

    /// Hashes the file as it is on disk now.
    void add_file(const std::filesystem::path& path, const std::filesystem::path& relative_to) {
        const std::string bytes = read_text(path);
        files_.push_back(json{{"path", std::filesystem::relative(path, relative_to).generic_string()},
                              {"bytes", bytes.size()},
                              {"sha256", sha256_hex(bytes)}});
    }

    void set_seeds(json seeds) { seeds_ = std::move(seeds); }

    json to_json() const {
        return json{{"tool", "isac-af"},
                    {"version", kToolVersion},
                    {"command", command_},
                    {"started_utc", started_},
                    {"finished_utc", utc_timestamp()},
                    {"config", config_},
                    {"seeds", seeds_},
                    {"files", files_}};
    }

    void write(const std::filesystem::path& path) const { write_text(path, dump(to_json())); }

private:
    std::string command_;
    json config_;
    std::string started_;
    json seeds_ = json::object();
    json files_ = json::array();
};

}  // namespace isac::io
