#pragma once

// Refined limit linear series on a chain of elliptic curves E_1..E_g, with
// E_i glued at Q_i to P_{i+1}.  Component i carries a line bundle L_i of
// degree d and sections whose vanishing orders are u[i][j] at P_i and
// v[i][j] at Q_i for slot j = 0..r.  A filling determines the series and vice
// versa: index i in column j+1 means L_i = O(u P_i + v Q_i) with u + v = d.

#include <optional>
#include <string>
#include <vector>

#include "bnchain/bn_core.hpp"
#include "bnchain/errors.hpp"
#include "bnchain/tableau.hpp"

namespace bnchain {

struct LineBundleDescriptor {
    enum class Kind { Generic, Special };

    Kind kind = Kind::Generic;
    Int a = 0; // multiplicity of P (Special only)
    Int b = 0; // multiplicity of Q (Special only)
    Int degree = 0;

    static LineBundleDescriptor generic(Int degree) { return {Kind::Generic, 0, 0, degree}; }
    static LineBundleDescriptor special(Int a, Int b) {
        if (a < 0 || b < 0) throw MalformedInputError("special bundle needs a, b >= 0");
        return {Kind::Special, a, b, checked::add(a, b)};
    }

    [[nodiscard]] bool is_special() const { return kind == Kind::Special; }

    friend bool operator==(const LineBundleDescriptor&, const LineBundleDescriptor&) = default;
};

[[nodiscard]] inline std::string to_string(const LineBundleDescriptor& L) {
    if (!L.is_special()) return "generic";
    return "O(" + std::to_string(L.a) + "P+" + std::to_string(L.b) + "Q)";
}

/// Whether O(aP + bQ) is the bundle Special(L.a, L.b), given that P - Q has
/// the stated order (if any).
[[nodiscard]] inline bool same_special_bundle(const LineBundleDescriptor& L, Int a, Int b, std::optional<int> torsion) {
    if (!L.is_special() || L.a + L.b != a + b) return false;
    if (L.a == a) return true;
    return torsion && (a - L.a) % *torsion == 0;
}

struct LimitSeriesTable {
    BnParams p;
    ChainSpec chain;
    std::vector<std::vector<Int>> u; // u[i-1][j]
    std::vector<std::vector<Int>> v; // v[i-1][j]
    std::vector<LineBundleDescriptor> bundles; // bundles[i-1]

    [[nodiscard]] Int u_at(int i, int j) const { return u.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j)); }
    [[nodiscard]] Int v_at(int i, int j) const { return v.at(static_cast<std::size_t>(i - 1)).at(static_cast<std::size_t>(j)); }

    friend bool operator==(const LimitSeriesTable&, const LimitSeriesTable&) = default;
};

/// Constraints on one component: u_k + v_k <= d; equality
/// forces L = O(u_k P + v_k Q); two equalities force P - Q to be torsion of
/// order dividing the gap.
[[nodiscard]] inline ValidationReport elliptic_component_check(const std::vector<Int>& u_row,
                                                               const std::vector<Int>& v_row, Int d,
                                                               const LineBundleDescriptor& bundle,
                                                               std::optional<int> torsion) {
    ValidationReport report;
    if (u_row.size() != v_row.size()) {
        report.add(ViolationKind::ShapeMismatch, "u and v rows differ in length");
        return report;
    }
    std::vector<std::size_t> full;
    for (std::size_t k = 0; k < u_row.size(); ++k) {
        if (k > 0 && u_row[k] <= u_row[k - 1]) report.add(ViolationKind::SequenceOrder, "u not strictly increasing at slot " + std::to_string(k));
        if (k > 0 && v_row[k] >= v_row[k - 1]) report.add(ViolationKind::SequenceOrder, "v not strictly decreasing at slot " + std::to_string(k));
        const Int sum = u_row[k] + v_row[k];
        if (sum > d) {
            report.add(ViolationKind::SumExceedsDegree,
                       "slot " + std::to_string(k) + ": u+v = " + std::to_string(sum) + " > d = " + std::to_string(d));
        } else if (sum == d) {
            full.push_back(k);
            if (!same_special_bundle(bundle, u_row[k], v_row[k], torsion)) {
                report.add(ViolationKind::BundleMismatch,
                           "slot " + std::to_string(k) + " has u+v = d but the bundle " + to_string(bundle) +
                               " is not O(" + std::to_string(u_row[k]) + "P+" + std::to_string(v_row[k]) + "Q)");
            }
        }
    }
    for (std::size_t n = 1; n < full.size(); ++n) {
        const Int gap = u_row[full[n]] - u_row[full[n - 1]];
        if (!torsion) {
            report.add(ViolationKind::MissingTorsion,
                       "slots " + std::to_string(full[n - 1]) + " and " + std::to_string(full[n]) +
                           " both have full sum but P-Q is not torsion");
        } else if (gap % *torsion != 0) {
            report.add(ViolationKind::TorsionDivisibility,
                       "torsion order " + std::to_string(*torsion) + " does not divide gap " + std::to_string(gap));
        }
    }
    return report;
}

namespace detail {

inline void require_shape(const Filling& f, const BnParams& p, const ChainSpec& chain) {
    if (f.alpha() != p.alpha() || f.beta() != p.beta() || f.g() != p.g || chain.g() != p.g) {
        throw MalformedInputError("filling shape " + std::to_string(f.alpha()) + "x" + std::to_string(f.beta()) +
                                  " with g=" + std::to_string(f.g()) + " does not match " + to_string(p) + " (expected " +
                                  std::to_string(p.alpha()) + "x" + std::to_string(p.beta()) + ")");
    }
}

} // namespace detail

/// u[i][j] = j + i - 1 - #{a < i in column j+1}, v[i][j] = d - u[i+1][j]
/// (the same formula at i = g+1 gives v[g][j] = r - j).  L_i is Special at the
/// orders of the left-most column holding i, Generic if i is unused.
[[nodiscard]] inline LimitSeriesTable filling_to_series(const Filling& f, const BnParams& p, const ChainSpec& chain) {
    detail::require_shape(f, p, chain);
    if (const auto report = validate_positive(f, chain); !report.valid()) {
        throw MalformedInputError("filling is not admissible on this chain: " + report.violations.front().message);
    }
    const int g = static_cast<int>(p.g);
    const int slots = static_cast<int>(p.alpha());

    // column_of[i] lists the slots holding index i, ascending
    std::vector<std::vector<int>> column_of(static_cast<std::size_t>(g + 2));
    for (int col = 1; col <= f.alpha(); ++col) {
        for (int row = 1; row <= f.beta(); ++row) column_of[static_cast<std::size_t>(f.at(row, col))].push_back(col - 1);
    }

    // uu[i][j] for i = 1..g+1
    std::vector<std::vector<Int>> uu(static_cast<std::size_t>(g + 2), std::vector<Int>(static_cast<std::size_t>(slots)));
    std::vector<Int> below(static_cast<std::size_t>(slots), 0);
    for (int i = 1; i <= g + 1; ++i) {
        for (int j = 0; j < slots; ++j) uu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = j + i - 1 - below[static_cast<std::size_t>(j)];
        if (i <= g) {
            for (int j : column_of[static_cast<std::size_t>(i)]) ++below[static_cast<std::size_t>(j)];
        }
    }

    LimitSeriesTable t{p, chain, {}, {}, {}};
    for (int i = 1; i <= g; ++i) {
        std::vector<Int> urow(static_cast<std::size_t>(slots)), vrow(static_cast<std::size_t>(slots));
        for (int j = 0; j < slots; ++j) {
            urow[static_cast<std::size_t>(j)] = uu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            vrow[static_cast<std::size_t>(j)] = p.d - uu[static_cast<std::size_t>(i + 1)][static_cast<std::size_t>(j)];
        }
        const auto& cols = column_of[static_cast<std::size_t>(i)];
        LineBundleDescriptor L = LineBundleDescriptor::generic(p.d);
        if (!cols.empty()) {
            const auto j0 = static_cast<std::size_t>(cols.front());
            L = LineBundleDescriptor::special(urow[j0], vrow[j0]);
            for (std::size_t n = 1; n < cols.size(); ++n) {
                const auto jn = static_cast<std::size_t>(cols[n]);
                if (!same_special_bundle(L, urow[jn], vrow[jn], chain.order(i))) {
                    throw InternalError("component " + std::to_string(i) + ": orders at slots " + std::to_string(j0) +
                                        " and " + std::to_string(jn) + " are not identified by the torsion order");
                }
            }
        }
        t.u.push_back(std::move(urow));
        t.v.push_back(std::move(vrow));
        t.bundles.push_back(L);
    }
    return t;
}

/// Boundary vanishing, strict sequences, refinedness, u+v in {d-1, d} and the
/// per-component elliptic constraints.
[[nodiscard]] inline ValidationReport check_series_invariants(const LimitSeriesTable& t) {
    ValidationReport report;
    const int g = static_cast<int>(t.p.g);
    const auto slots = static_cast<std::size_t>(t.p.alpha());
    const Int d = t.p.d;
    const Int r = t.p.r;
    if (t.u.size() != static_cast<std::size_t>(g) || t.v.size() != static_cast<std::size_t>(g) ||
        t.bundles.size() != static_cast<std::size_t>(g) || t.chain.g() != g) {
        report.add(ViolationKind::ShapeMismatch, "table does not have g rows");
        return report;
    }
    for (int i = 1; i <= g; ++i) {
        const auto& urow = t.u[static_cast<std::size_t>(i - 1)];
        const auto& vrow = t.v[static_cast<std::size_t>(i - 1)];
        if (urow.size() != slots || vrow.size() != slots) {
            report.add(ViolationKind::ShapeMismatch, "component " + std::to_string(i) + " does not have r+1 slots");
            return report;
        }
    }
    for (std::size_t j = 0; j < slots; ++j) {
        if (t.u.front()[j] != static_cast<Int>(j)) {
            report.add(ViolationKind::BoundaryVanishing, "u[1][" + std::to_string(j) + "] must be " + std::to_string(j));
        }
        if (t.v.back()[j] != r - static_cast<Int>(j)) {
            report.add(ViolationKind::BoundaryVanishing,
                       "v[g][" + std::to_string(j) + "] must be " + std::to_string(r - static_cast<Int>(j)));
        }
    }
    for (int i = 1; i <= g; ++i) {
        const auto& urow = t.u[static_cast<std::size_t>(i - 1)];
        const auto& vrow = t.v[static_cast<std::size_t>(i - 1)];
        for (std::size_t j = 0; j < slots; ++j) {
            const Int sum = urow[j] + vrow[j];
            if (sum != d && sum != d - 1) {
                report.add(ViolationKind::SumExceedsDegree,
                           "component " + std::to_string(i) + " slot " + std::to_string(j) + ": u+v = " +
                               std::to_string(sum) + " not in {d-1, d}");
            }
            if (i < g && t.u[static_cast<std::size_t>(i)][j] + vrow[j] != d) {
                report.add(ViolationKind::Refinedness,
                           "u[" + std::to_string(i + 1) + "][" + std::to_string(j) + "] + v[" + std::to_string(i) +
                               "][" + std::to_string(j) + "] != d");
            }
        }
        auto local = elliptic_component_check(urow, vrow, d, t.bundles[static_cast<std::size_t>(i - 1)], t.chain.order(i));
        for (auto& violation : local.violations) {
            violation.message = "component " + std::to_string(i) + ": " + violation.message;
            report.violations.push_back(std::move(violation));
        }
        bool any_full = false;
        for (std::size_t j = 0; j < slots; ++j) any_full = any_full || urow[j] + vrow[j] == d;
        if (!any_full && t.bundles[static_cast<std::size_t>(i - 1)].is_special()) {
            report.add(ViolationKind::BundleMismatch,
                       "component " + std::to_string(i) + " has a special bundle but no slot with u+v = d");
        }
    }
    return report;
}

/// Inverse of filling_to_series: index i goes to the first empty box of
/// column j+1 for every slot j with u[i][j] + v[i][j] = d.
[[nodiscard]] inline Filling series_to_filling(const LimitSeriesTable& t) {
    const int g = static_cast<int>(t.p.g);
    const int alpha = static_cast<int>(t.p.alpha());
    const int beta = static_cast<int>(t.p.beta());
    if (t.u.size() != static_cast<std::size_t>(g) || t.v.size() != static_cast<std::size_t>(g)) {
        throw MalformedInputError("inconsistent table: expected " + std::to_string(g) + " components");
    }
    std::vector<int> cells(static_cast<std::size_t>(alpha * beta), 0);
    std::vector<int> height(static_cast<std::size_t>(alpha), 0);
    for (int i = 1; i <= g; ++i) {
        for (int j = 0; j < alpha; ++j) {
            if (t.u_at(i, j) + t.v_at(i, j) != t.p.d) continue;
            auto& h = height[static_cast<std::size_t>(j)];
            if (h == beta) {
                throw MalformedInputError("inconsistent table: column " + std::to_string(j + 1) +
                                          " overflows at component " + std::to_string(i));
            }
            cells[static_cast<std::size_t>(h * alpha + j)] = i;
            ++h;
        }
    }
    for (int j = 0; j < alpha; ++j) {
        if (height[static_cast<std::size_t>(j)] != beta) {
            throw MalformedInputError("inconsistent table: column " + std::to_string(j + 1) + " received " +
                                      std::to_string(height[static_cast<std::size_t>(j)]) + " of " +
                                      std::to_string(beta) + " indices");
        }
    }
    Filling f(alpha, beta, g, std::move(cells));
    if (const auto report = validate_positive(f, t.chain); !report.valid()) {
        throw MalformedInputError("inconsistent table: recovered filling is not admissible: " +
                                  report.violations.front().message);
    }
    return f;
}

} // namespace bnchain
