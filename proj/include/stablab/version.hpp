#ifndef STABLAB_VERSION_HPP
#define STABLAB_VERSION_HPP

#include <cstdint>
#include <string>

namespace stablab {

inline constexpr const char* kVersion = "0.1.0";

/// FNV-1a over a canonical serialization; used to fingerprint manifold
/// presentations in reports.
inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 15; i >= 0; --i) {
        buf[i] = digits[h & 0xf];
        h >>= 4;
    }
    buf[16] = '\0';
    return std::string(buf);
}

}  // namespace stablab

#endif
