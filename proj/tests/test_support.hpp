#pragma once

// Independent reference implementations shared by the test suites. None of
// these call into the code paths they are used to check.

#include "bagen/types.hpp"

#include <cstdint>
#include <vector>

namespace bagen::test {

// Bit-at-a-time reflected CRC32-C, no inversion.
inline std::uint32_t crc32c_bitwise(std::uint32_t crc, std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
        crc ^= static_cast<std::uint32_t>((word >> (8 * byte)) & 0xFF);
        for (int k = 0; k < 8; ++k) crc = (crc >> 1) ^ ((crc & 1U) ? 0x82F63B78U : 0U);
    }
    return crc;
}

inline std::vector<NodeId> triangle_seed() { return {0, 1, 1, 2, 2, 0}; }

inline std::vector<NodeId> ring_seed(NodeId k) {
    std::vector<NodeId> e;
    for (NodeId v = 0; v < k; ++v) {
        e.push_back(v);
        e.push_back((v + 1) % k);
    }
    return e;
}

inline std::vector<NodeId> complete_seed(NodeId k) {
    std::vector<NodeId> e;
    for (NodeId u = 0; u < k; ++u)
        for (NodeId v = u + 1; v < k; ++v) {
            e.push_back(u);
            e.push_back(v);
        }
    return e;
}

} // namespace bagen::test
