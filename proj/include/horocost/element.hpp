#pragma once

#include <cstdint>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace horocost {

// A group element is its canonical payload: reduced letter sequence for free
// groups, a single index for finite groups, a length-prefixed concatenation
// for products. Equality and hashing are payload-only, so dedup during ball
// BFS is a hash-set lookup.
struct Element {
    std::vector<std::int32_t> payload;

    bool operator==(const Element&) const = default;
    auto operator<=>(const Element&) const = default;
};

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (std::int32_t v : e.payload) {
            h ^= static_cast<std::uint64_t>(static_cast<std::uint32_t>(v));
            h *= 0x100000001b3ull;
        }
        return static_cast<std::size_t>(h);
    }
};

}  // namespace horocost
