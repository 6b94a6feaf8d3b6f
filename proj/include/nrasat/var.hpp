#pragma once

#include <cstdint>
#include <functional>

namespace nrasat {

/// Dense index of an arithmetic variable.
using ArithVar = std::uint32_t;
/// Dense index of a boolean variable.
using BoolVar = std::uint32_t;

inline constexpr std::uint32_t kNullIndex = 0xffffffffu;

enum class VarKind : std::uint8_t { boolean, arithmetic };

/// A solver variable: kind + dense per-kind index.
struct Var {
    VarKind kind = VarKind::boolean;
    std::uint32_t index = kNullIndex;

    static Var boolean(BoolVar b) { return {VarKind::boolean, b}; }
    static Var arith(ArithVar v) { return {VarKind::arithmetic, v}; }
    bool is_bool() const { return kind == VarKind::boolean; }
    bool is_arith() const { return kind == VarKind::arithmetic; }
    bool is_null() const { return index == kNullIndex; }

    friend bool operator==(const Var& a, const Var& b) {
        return a.kind == b.kind && a.index == b.index;
    }
    friend bool operator!=(const Var& a, const Var& b) { return !(a == b); }
    friend bool operator<(const Var& a, const Var& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        return a.index < b.index;
    }
};

struct VarHash {
    std::size_t operator()(const Var& v) const {
        return (static_cast<std::size_t>(v.kind) << 32) ^ v.index;
    }
};

}  // namespace nrasat
