#include "ytf/report.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace ytf::report {

namespace {

// Compact SHA-1; input sizes here are small (configs and reports).
struct Sha1 {
    uint32_t h[5] = {0x67452301, 0xEFCDAB89, 0x98BADCFE, 0x10325476, 0xC3D2E1F0};
    std::array<uint8_t, 64> block{};
    size_t block_len = 0;
    uint64_t total = 0;

    static uint32_t rol(uint32_t x, int s) { return (x << s) | (x >> (32 - s)); }

    void process() {
        uint32_t w[80];
        for (int i = 0; i < 16; ++i)
            w[i] = (block[4 * i] << 24) | (block[4 * i + 1] << 16) | (block[4 * i + 2] << 8) |
                   block[4 * i + 3];
        for (int i = 16; i < 80; ++i) w[i] = rol(w[i - 3] ^ w[i - 8] ^ w[i - 14] ^ w[i - 16], 1);
        uint32_t a = h[0], b = h[1], c = h[2], d = h[3], e = h[4];
        for (int i = 0; i < 80; ++i) {
            uint32_t f, k;
            if (i < 20) {
                f = (b & c) | (~b & d);
                k = 0x5A827999;
            } else if (i < 40) {
                f = b ^ c ^ d;
                k = 0x6ED9EBA1;
            } else if (i < 60) {
                f = (b & c) | (b & d) | (c & d);
                k = 0x8F1BBCDC;
            } else {
                f = b ^ c ^ d;
                k = 0xCA62C1D6;
            }
            uint32_t tmp = rol(a, 5) + f + e + k + w[i];
            e = d;
            d = c;
            c = rol(b, 30);
            b = a;
            a = tmp;
        }
        h[0] += a;
        h[1] += b;
        h[2] += c;
        h[3] += d;
        h[4] += e;
        block_len = 0;
    }

    void update(const uint8_t* data, size_t len) {
        total += len;
        for (size_t i = 0; i < len; ++i) {
            block[block_len++] = data[i];
            if (block_len == 64) process();
        }
    }

    std::string hex() {
        uint64_t bits = total * 8;
        uint8_t pad = 0x80;
        update(&pad, 1);
        uint8_t zero = 0;
        while (block_len != 56) update(&zero, 1);
        for (int i = 7; i >= 0; --i) {
            uint8_t b = static_cast<uint8_t>(bits >> (8 * i));
            update(&b, 1);
        }
        static const char* digits = "0123456789abcdef";
        std::string out;
        for (uint32_t word : h)
            for (int i = 3; i >= 0; --i) {
                uint8_t byte = static_cast<uint8_t>(word >> (8 * i));
                out += digits[byte >> 4];
                out += digits[byte & 15];
            }
        return out;
    }
};

}  // namespace

std::string content_hash(const std::string& content) {
    Sha1 sha;
    std::string header = "blob " + std::to_string(content.size());
    sha.update(reinterpret_cast<const uint8_t*>(header.data()), header.size() + 1);  // incl NUL
    sha.update(reinterpret_cast<const uint8_t*>(content.data()), content.size());
    return sha.hex();
}

nlohmann::ordered_json tolerances_json() {
    nlohmann::ordered_json j;
    j["version"] = Tolerances::version;
    j["bubble_identity_rel"] = Tolerances::bubble_identity_rel;
    j["bubble_fd_rel"] = Tolerances::bubble_fd_rel;
    j["sphere_constant_abs"] = Tolerances::sphere_constant_abs;
    j["hemisphere_identity_rel"] = Tolerances::hemisphere_identity_rel;
    j["weak_orthogonality_rel"] = Tolerances::weak_orthogonality_rel;
    j["margin_budget_factor"] = Tolerances::margin_budget_factor;
    j["slope_flux_scaling_tol"] = Tolerances::slope_flux_scaling_tol;
    j["slope_flat_calibration_tol"] = Tolerances::slope_flat_calibration_tol;
    j["strong_residual_slack"] = Tolerances::strong_residual_slack;
    return j;
}

nlohmann::ordered_json wrap_report(const nlohmann::ordered_json& resolved_config,
                                   const nlohmann::ordered_json& payload) {
    nlohmann::ordered_json j;
    j["config"] = resolved_config;
    j["config_hash"] = content_hash(resolved_config.dump());
    j["tolerances"] = tolerances_json();
    j["result"] = payload;
    std::time_t now = std::time(nullptr);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    j["timestamp"] = buf;  // excluded from comparisons
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace ytf::report
