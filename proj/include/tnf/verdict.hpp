#pragma once

#include "scalar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tnf {

enum class VerdictKind { Proven, Refuted, Undetermined };

inline const char* verdict_name(VerdictKind k) {
    switch (k) {
    case VerdictKind::Proven: return "Proven";
    case VerdictKind::Refuted: return "Refuted";
    case VerdictKind::Undetermined: return "Undetermined";
    }
    return "?";
}

/**
 * A failing instance, in domain coordinates. For associativity lhs/rhs are
 * T(T(x,y),z) and T(x,T(y,z)); a neutral-element witness has x = 1 and
 * compares T(1,y) with y (z unused).
 */
template <class S>
struct Witness {
    S x, y, z;
    S lhs, rhs;
    bool neutral = false;

    std::string str() const {
        if (neutral)
            return "T(1," + to_string(y) + ") = " + to_string(lhs) + " != " + to_string(rhs);
        return "(" + to_string(x) + "," + to_string(y) + "," + to_string(z) + "): T(T(x,y),z) = " +
               to_string(lhs) + ", T(x,T(y,z)) = " + to_string(rhs);
    }

    bool operator<(const Witness& o) const {
        if (x != o.x) return x < o.x;
        if (y != o.y) return y < o.y;
        return z < o.z;
    }
};

template <class S>
struct Verdict {
    VerdictKind kind = VerdictKind::Undetermined;
    std::vector<std::string> trace;
    std::optional<Witness<S>> witness;
    std::size_t probes = 0;
    std::string note;

    bool proven() const { return kind == VerdictKind::Proven; }
    bool refuted() const { return kind == VerdictKind::Refuted; }
    bool undetermined() const { return kind == VerdictKind::Undetermined; }

    void log(std::string line) { trace.push_back(std::move(line)); }
};

enum class ClassKind { TM, OrdinallyIrreducible, NonTrivialOrdinalSum, NotAssociative, Undetermined };

inline const char* class_name(ClassKind k) {
    switch (k) {
    case ClassKind::TM: return "TM";
    case ClassKind::OrdinallyIrreducible: return "OrdinallyIrreducible";
    case ClassKind::NonTrivialOrdinalSum: return "NonTrivialOrdinalSum";
    case ClassKind::NotAssociative: return "NotAssociative";
    case ClassKind::Undetermined: return "Undetermined";
    }
    return "?";
}

} // namespace tnf
