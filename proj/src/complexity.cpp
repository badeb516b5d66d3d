#include "maap/complexity.hpp"

#include <algorithm>
#include <bit>

namespace maap {

static std::uint64_t ceil_log2(std::uint64_t k) {
    if (k <= 1) return 0;
    return std::bit_width(k - 1);
}

Complexity complexity(const Instruction& ins) {
    Complexity c;
    switch (ins.kind) {
        case InstrKind::Affine:
            return c;  // affine assignments come for free
        case InstrKind::Max:
        case InstrKind::Min: {
            const std::uint64_t k = ins.exprs.size();
            return {ceil_log2(k), 2 * k, 4 * k};
        }
        case InstrKind::Seq:
        case InstrKind::ForDo:
            for (const auto& b : ins.children) {
                Complexity bc = complexity(b);
                c.d += bc.d;
                c.w = std::max(c.w, bc.w);
                c.s += bc.s;
            }
            return c;
        case InstrKind::Par:
        case InstrKind::ForDoPar:
            for (const auto& b : ins.children) {
                Complexity bc = complexity(b);
                c.d = std::max(c.d, bc.d);
                c.w += bc.w;
                c.s += bc.s;
            }
            return c;
    }
    return c;
}

Complexity complexity(const MaapProgram& p) { return complexity(p.body); }

}  // namespace maap
