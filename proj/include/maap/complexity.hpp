#pragma once

#include <cstdint>

#include "maap/ir.hpp"

namespace maap {

// The (d, w, s) ledger of a program. d bounds the hidden depth of the
// compiled network, w its width and s its size; compiled statistics are
// asserted to stay at or below (d + 1, w, s).
struct Complexity {
    std::uint64_t d = 0;
    std::uint64_t w = 0;
    std::uint64_t s = 0;

    friend bool operator==(const Complexity&, const Complexity&) = default;
};

Complexity complexity(const Instruction& ins);
Complexity complexity(const MaapProgram& p);

}  // namespace maap
