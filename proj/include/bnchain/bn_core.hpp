#pragma once

// Brill-Noether numerology: rho, Serre duality, the triangular (k, j)
// decomposition of a codimension and the closed-form bound on the total grid
// distance of doubled indices in a rectangle.

#include <cstdint>
#include <string>

#include "bnchain/errors.hpp"

namespace bnchain {

using Int = std::int64_t;

namespace checked {

inline Int add(Int a, Int b) {
    Int out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("integer overflow in addition");
    }
    return out;
}

inline Int sub(Int a, Int b) {
    Int out = 0;
    if (__builtin_sub_overflow(a, b, &out)) {
        throw std::overflow_error("integer overflow in subtraction");
    }
    return out;
}

inline Int mul(Int a, Int b) {
    Int out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("integer overflow in multiplication");
    }
    return out;
}

} // namespace checked

/// Genus, dimension and degree of a g^r_d.  Well-formed means g >= 2,
/// r >= 1, d >= 1 and a rectangle with at least one row (g - d + r >= 1).
struct BnParams {
    Int g = 2;
    Int r = 1;
    Int d = 1;

    static BnParams make(Int g, Int r, Int d) {
        if (g < 2) throw OutOfRangeError("genus must be >= 2, got " + std::to_string(g));
        if (r < 1) throw OutOfRangeError("dimension r must be >= 1, got " + std::to_string(r));
        if (d < 1) throw OutOfRangeError("degree d must be >= 1, got " + std::to_string(d));
        BnParams p{g, r, d};
        if (p.beta() < 1) {
            throw OutOfRangeError("g - d + r must be >= 1, got " + std::to_string(p.beta()));
        }
        return p;
    }

    /// Column count of the rectangle (one column per section).
    [[nodiscard]] Int alpha() const { return checked::add(r, 1); }
    /// Row count of the rectangle.
    [[nodiscard]] Int beta() const { return checked::add(checked::sub(g, d), r); }

    friend bool operator==(const BnParams&, const BnParams&) = default;
};

[[nodiscard]] inline std::string to_string(const BnParams& p) {
    return "(g=" + std::to_string(p.g) + ", r=" + std::to_string(p.r) + ", d=" + std::to_string(p.d) + ")";
}

/// g - (r+1)(g-d+r).
[[nodiscard]] inline Int rho(const BnParams& p) {
    return checked::sub(p.g, checked::mul(p.alpha(), p.beta()));
}

/// -rho when rho < 0, else 0.
[[nodiscard]] inline Int codimension(const BnParams& p) {
    const Int value = rho(p);
    return value < 0 ? -value : 0;
}

/// (g, g-d+r-1, 2g-2-d).  Throws when the dual degree or dimension is < 1.
[[nodiscard]] inline BnParams serre_dual(const BnParams& p) {
    const Int dual_d = checked::sub(checked::sub(checked::mul(2, p.g), 2), p.d);
    const Int dual_r = checked::sub(p.beta(), 1);
    if (dual_d < 1) {
        throw OutOfRangeError("Serre dual degree 2g-2-d = " + std::to_string(dual_d) + " is < 1 for " +
                              to_string(p));
    }
    if (dual_r < 1) {
        throw OutOfRangeError("Serre dual dimension g-d+r-1 = " + std::to_string(dual_r) + " is < 1 for " +
                              to_string(p));
    }
    return BnParams::make(p.g, dual_r, dual_d);
}

/// Parameters in the alpha <= beta orientation, with a record of whether the
/// Serre dual had to be taken to get there.
struct OrientedParams {
    BnParams params;
    bool dualized = false;
};

[[nodiscard]] inline OrientedParams canonical(const BnParams& p) {
    if (p.alpha() <= p.beta()) return {p, false};
    return {serre_dual(p), true};
}

struct TriangularDecomposition {
    Int e = 0;
    Int k = 0;
    Int j = 0;

    friend bool operator==(const TriangularDecomposition&, const TriangularDecomposition&) = default;
};

/// The unique k, j with k(k+1)/2 <= e < (k+1)(k+2)/2 and j = e - k(k+1)/2.
[[nodiscard]] inline TriangularDecomposition kj_decompose(Int e) {
    if (e < 0) throw OutOfRangeError("codimension e must be >= 0, got " + std::to_string(e));
    Int k = 0;
    while (checked::mul(k + 1, k + 2) / 2 <= e) ++k;
    return {e, k, e - k * (k + 1) / 2};
}

/// Largest e for which the optimal-separation bound and construction apply to
/// an alpha x beta rectangle (alpha <= beta).  e = 0 is always admissible.
[[nodiscard]] inline Int max_separable_codimension(Int alpha, Int beta) {
    if (alpha < 1 || alpha > beta) {
        throw OutOfRangeError("rectangle must satisfy 1 <= alpha <= beta, got alpha=" + std::to_string(alpha) +
                              " beta=" + std::to_string(beta));
    }
    const Int limit = alpha < beta ? checked::mul(alpha + 2, alpha - 1) / 2
                                   : checked::sub(checked::mul(alpha, alpha), 2) / 2;
    return limit < 0 ? 0 : limit;
}

[[nodiscard]] inline bool in_separation_range(Int alpha, Int beta, Int e) {
    if (alpha < 1 || alpha > beta || e < 0) return false;
    return e <= max_separable_codimension(alpha, beta);
}

inline void require_separation_range(Int alpha, Int beta, Int e) {
    if (alpha < 1 || alpha > beta) {
        throw OutOfRangeError("rectangle must satisfy 1 <= alpha <= beta, got alpha=" + std::to_string(alpha) +
                              " beta=" + std::to_string(beta));
    }
    if (e < 0) throw OutOfRangeError("e must be >= 0, got " + std::to_string(e));
    if (e > max_separable_codimension(alpha, beta)) {
        const std::string which = alpha < beta ? "e <= (alpha+2)(alpha-1)/2" : "e <= (alpha^2-2)/2";
        throw OutOfRangeError("violated bound " + which + ": alpha=" + std::to_string(alpha) +
                              " beta=" + std::to_string(beta) + " e=" + std::to_string(e) + " (limit " +
                              std::to_string(max_separable_codimension(alpha, beta)) + ")");
    }
}

/// Maximum over admissible fillings of the summed grid distance between the
/// two occurrences of each of e doubled indices:
///   e(alpha+beta-2) - 2((k^3-k)/3 + jk).
[[nodiscard]] inline Int max_distance_bound(Int alpha, Int beta, Int e) {
    require_separation_range(alpha, beta, e);
    const auto [ee, k, j] = kj_decompose(e);
    const Int perimeter_term = checked::mul(e, checked::sub(checked::add(alpha, beta), 2));
    const Int corner_loss = checked::add((checked::mul(checked::mul(k, k), k) - k) / 3, checked::mul(j, k));
    return checked::sub(perimeter_term, checked::mul(2, corner_loss));
}

/// Which existence statements cover e = alpha*beta - g.
struct RangeReport {
    Int alpha = 0;
    Int beta = 0;
    Int g = 0;
    Int e = 0;
    bool staircase = false;   // alpha*beta/2 + 1 <= g <= alpha*beta
    bool separation = false;  // e within the optimal-separation bound
    bool petri = false;       // 0 < e <= g - 2
};

[[nodiscard]] inline RangeReport existence_ranges(Int alpha, Int beta, Int g) {
    RangeReport out;
    out.alpha = alpha;
    out.beta = beta;
    out.g = g;
    const Int cells = checked::mul(alpha, beta);
    out.e = checked::sub(cells, g);
    out.staircase = alpha >= 1 && alpha <= beta && checked::mul(2, g) >= cells + 2 && g <= cells;
    out.separation = in_separation_range(alpha, beta, out.e);
    out.petri = out.e > 0 && out.e <= g - 2;
    return out;
}

} // namespace bnchain
