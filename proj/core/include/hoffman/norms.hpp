#pragma once

#include <span>
#include <string>
#include <string_view>

namespace hoffman {

enum class NormTag { L1, L2, LInf };

/// dual(L1) = LInf, dual(LInf) = L1, dual(L2) = L2.
constexpr NormTag dual(NormTag n) noexcept {
    switch (n) {
        case NormTag::L1: return NormTag::LInf;
        case NormTag::LInf: return NormTag::L1;
        case NormTag::L2: break;
    }
    return NormTag::L2;
}

constexpr bool is_polyhedral(NormTag n) noexcept { return n != NormTag::L2; }

double norm(NormTag n, std::span<const double> v);

/// "l1", "l2", "linf"
std::string_view to_string(NormTag n) noexcept;
NormTag parse_norm(std::string_view s);

}  // namespace hoffman
