#pragma once

// Explicit fillings: the optimal-separation construction (doubled indices as
// far apart as the bound allows) and the staircase construction covering
// alpha*beta/2 + 1 <= g <= alpha*beta.
//
// Both work from a SpotLayout: column c reserves its bottom a_c boxes
// (c = 1..alpha-1) and its top b_c boxes (c = 2..alpha).  Doubled indices sit
// exactly on reserved boxes, one occurrence top-right and one bottom-left, so
// the distance sum depends only on the layout.

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "bnchain/bn_core.hpp"
#include "bnchain/errors.hpp"
#include "bnchain/tableau.hpp"

namespace bnchain {

enum class LayoutSource { Separation, Staircase };

struct SpotLayout {
    LayoutSource source = LayoutSource::Separation;
    int alpha = 0;
    int beta = 0;
    int e = 0;
    int t = 0;
    int l = 0;
    std::vector<int> eps; // eps_1..eps_{alpha-1}
    std::vector<int> a;   // a_1..a_{alpha-1}: reserved bottom rows of column i
    std::vector<int> b;   // b_2..b_alpha: reserved top rows of column i

    [[nodiscard]] int a_col(int col) const { return col >= 1 && col < alpha ? a[static_cast<std::size_t>(col - 1)] : 0; }
    [[nodiscard]] int b_col(int col) const { return col >= 2 && col <= alpha ? b[static_cast<std::size_t>(col - 2)] : 0; }

    [[nodiscard]] bool bottom_left(const Cell& c) const { return c.row > beta - a_col(c.col); }
    [[nodiscard]] bool top_right(const Cell& c) const { return c.row <= b_col(c.col); }

    /// Every reserved box, row-major.
    [[nodiscard]] std::vector<Cell> reserved_cells() const {
        std::vector<Cell> out;
        for (int row = 1; row <= beta; ++row) {
            for (int col = 1; col <= alpha; ++col) {
                if (bottom_left({row, col}) || top_right({row, col})) out.push_back({row, col});
            }
        }
        return out;
    }
};

/// Failed layout invariants, empty when the layout is sound.
[[nodiscard]] inline std::vector<std::string> layout_problems(const SpotLayout& s) {
    std::vector<std::string> out;
    const auto n = static_cast<std::size_t>(std::max(0, s.alpha - 1));
    if (s.a.size() != n || s.b.size() != n) {
        out.push_back("layout vectors must have alpha-1 entries");
        return out;
    }
    int sum_a = 0, sum_b = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sum_a += s.a[i];
        sum_b += s.b[i];
        if (s.a[i] < 0 || s.b[i] < 0) out.push_back("negative reservation");
        if (i > 0 && s.a[i] > s.a[i - 1]) out.push_back("a not non-increasing at a_" + std::to_string(i + 1));
        if (i > 0 && s.b[i] < s.b[i - 1]) out.push_back("b not non-decreasing at b_" + std::to_string(i + 2));
    }
    if (sum_a != s.e) out.push_back("sum of a is " + std::to_string(sum_a) + ", expected e=" + std::to_string(s.e));
    if (sum_b != s.e) out.push_back("sum of b is " + std::to_string(sum_b) + ", expected e=" + std::to_string(s.e));
    if (n > 0) {
        if (s.a.front() > s.beta - 1) out.push_back("a_1 exceeds beta-1");
        if (s.b.back() > s.beta - 1) out.push_back("b_alpha exceeds beta-1");
    }
    for (int col = 2; col < s.alpha; ++col) {
        if (s.a_col(col) + s.b_col(col) > s.beta) {
            out.push_back("column " + std::to_string(col) + " reservations overlap (a+b > beta)");
        }
    }
    return out;
}

/// Reserved spots of the optimal-separation construction: all spots up to
/// distance k, plus j of those at distance k+1 taken in the largest columns
/// (alternating diagonal when alpha = beta and k = alpha-1).
[[nodiscard]] inline SpotLayout separation_layout(int alpha, int beta, int e) {
    require_separation_range(alpha, beta, e);
    const auto [ee, kk, jj] = kj_decompose(e);
    const int k = static_cast<int>(kk);
    const int j = static_cast<int>(jj);
    SpotLayout s;
    s.source = LayoutSource::Separation;
    s.alpha = alpha;
    s.beta = beta;
    s.e = e;
    const auto n = static_cast<std::size_t>(alpha - 1);
    s.eps.assign(n, 0);
    s.a.assign(n, 0);
    s.b.assign(n, 0);
    for (int c = 1; c <= alpha - 1; ++c) s.a[static_cast<std::size_t>(c - 1)] = std::max(0, k - c + 1);
    for (int c = 2; c <= alpha; ++c) s.b[static_cast<std::size_t>(c - 2)] = std::max(0, k - alpha + c);
    if (j > 0) {
        if (alpha == beta && k == alpha - 1) {
            for (int step = 1; step <= j; ++step) {
                ++s.a[static_cast<std::size_t>(alpha - 2 * step - 1)];
                ++s.b[static_cast<std::size_t>(alpha - 2 * step + 1 - 2)];
                s.eps[static_cast<std::size_t>(alpha - 2 * step - 1)] = 1;
            }
        } else {
            const int bl_hi = std::min(k + 1, alpha - 1);
            const int tr_lo = std::max(2, alpha - k);
            for (int step = 0; step < j; ++step) {
                ++s.a[static_cast<std::size_t>(bl_hi - step - 1)];
                ++s.b[static_cast<std::size_t>(alpha - step - 2)];
                if (alpha - step < tr_lo || bl_hi - step < 1) throw InternalError("separation layout ran out of spots");
            }
        }
    }
    if (const auto problems = layout_problems(s); !problems.empty()) {
        throw InternalError("separation layout for (" + std::to_string(alpha) + "," + std::to_string(beta) + "," +
                            std::to_string(e) + "): " + problems.front());
    }
    return s;
}

namespace detail {

inline void require_staircase_range(int alpha, int beta, int g) {
    if (alpha < 2 || alpha > beta) {
        throw OutOfRangeError("staircase needs 2 <= alpha <= beta, got alpha=" + std::to_string(alpha) +
                              " beta=" + std::to_string(beta));
    }
    const Int cells = static_cast<Int>(alpha) * beta;
    if (2 * static_cast<Int>(g) < cells + 2 || g > cells) {
        throw OutOfRangeError("staircase needs alpha*beta/2 + 1 <= g <= alpha*beta, got g=" + std::to_string(g) +
                              " for a " + std::to_string(alpha) + "x" + std::to_string(beta) + " rectangle");
    }
}

} // namespace detail

/// Reserved spots of the staircase construction.  Falls back to the
/// separation layout whenever that one applies.
[[nodiscard]] inline SpotLayout staircase_layout(int alpha, int beta, int g) {
    detail::require_staircase_range(alpha, beta, g);
    const int e = alpha * beta - g;
    if (in_separation_range(alpha, beta, e)) return separation_layout(alpha, beta, e);

    // here alpha < beta and e > (alpha+2)(alpha-1)/2
    const int tri = alpha * (alpha - 1) / 2;
    const int t0 = (beta - alpha + 1) / 2;
    SpotLayout s;
    s.source = LayoutSource::Staircase;
    s.alpha = alpha;
    s.beta = beta;
    s.e = e;
    const auto n = static_cast<std::size_t>(alpha - 1);
    s.eps.assign(n, 0);
    auto eps = [&](int i) -> int& { return s.eps[static_cast<std::size_t>(i - 1)]; };

    if (e <= tri + t0 * (alpha - 1)) {
        int t = 0;
        while (tri + (t + 1) * (alpha - 1) <= e) ++t;
        const int j = e - (alpha + 2 * t) * (alpha - 1) / 2;
        s.t = t;
        s.l = 0;
        for (int i = alpha - j; i <= alpha - 1; ++i) eps(i) = 1;
    } else {
        s.t = t0;
        const int base = (alpha + 2 * t0) * (alpha - 1) / 2;
        if ((beta - alpha) % 2 == 0) {
            const int j = std::min(e - base, (alpha - 1) / 2);
            for (int step = 1; step <= j; ++step) eps(alpha - 2 * step) = 1;
        }
        int sum_eps = 0;
        for (int bit : s.eps) sum_eps += bit;
        s.l = e - base - sum_eps;
        if (s.l < 0) {
            throw OutOfRangeError("staircase overflow l=" + std::to_string(s.l) + " is negative for (" +
                                  std::to_string(alpha) + "," + std::to_string(beta) + "," + std::to_string(g) + ")");
        }
    }

    s.a.assign(n, 0);
    s.b.assign(n, 0);
    for (int i = 1; i <= alpha - 1; ++i) s.a[static_cast<std::size_t>(i - 1)] = alpha - i + s.t + eps(i);
    s.a[0] += s.l;
    for (int i = 2; i <= alpha; ++i) s.b[static_cast<std::size_t>(i - 2)] = i - 1 + s.t + eps(i - 1);
    s.b[n - 1] += s.l;

    if (const auto problems = layout_problems(s); !problems.empty()) {
        throw OutOfRangeError("staircase layout for (" + std::to_string(alpha) + "," + std::to_string(beta) + "," +
                              std::to_string(g) + ") is inconsistent: " + problems.front());
    }
    return s;
}

namespace detail {

/// Places indices 1, 2, ... in order.  A fresh index goes to the top-most
/// addable free box; when none exists, one index is doubled on the left-most
/// addable top-right box and the right-most addable bottom-left box below and
/// to its left.  Backtracks (remembering dead shapes) if that ever stalls.
class LayoutFiller {
public:
    explicit LayoutFiller(const SpotLayout& layout)
        : s_(layout), heights_(static_cast<std::size_t>(layout.alpha), 0),
          cells_(static_cast<std::size_t>(layout.alpha * layout.beta), 0) {}

    Filling run() {
        if (!descend(1)) {
            throw InternalError("no filling realizes the reserved layout for alpha=" + std::to_string(s_.alpha) +
                                " beta=" + std::to_string(s_.beta) + " e=" + std::to_string(s_.e));
        }
        return Filling(s_.alpha, s_.beta, s_.alpha * s_.beta - s_.e, cells_);
    }

private:
    Cell corner(int col) const { return {heights_[static_cast<std::size_t>(col - 1)] + 1, col}; }

    bool addable(int col) const {
        const int h = heights_[static_cast<std::size_t>(col - 1)];
        return h < s_.beta && (col == 1 || heights_[static_cast<std::size_t>(col - 2)] > h);
    }

    void put(const Cell& c, int index) {
        cells_[static_cast<std::size_t>((c.row - 1) * s_.alpha + (c.col - 1))] = index;
        ++heights_[static_cast<std::size_t>(c.col - 1)];
    }
    void take(const Cell& c) {
        cells_[static_cast<std::size_t>((c.row - 1) * s_.alpha + (c.col - 1))] = 0;
        --heights_[static_cast<std::size_t>(c.col - 1)];
    }

    bool descend(int index) {
        if (placed_ == s_.alpha * s_.beta) return true;
        if (dead_.count(heights_) != 0) return false;

        std::vector<Cell> free, top_right, bottom_left;
        for (int col = 1; col <= s_.alpha; ++col) {
            if (!addable(col)) continue;
            const Cell c = corner(col);
            if (s_.top_right(c)) {
                top_right.push_back(c);
            } else if (s_.bottom_left(c)) {
                bottom_left.push_back(c);
            } else {
                free.push_back(c);
            }
        }
        std::sort(free.begin(), free.end());
        for (const Cell& c : free) {
            put(c, index);
            ++placed_;
            if (descend(index + 1)) return true;
            --placed_;
            take(c);
        }
        // top_right is in increasing column order; scan bottom_left from the right
        for (const Cell& upper : top_right) {
            for (auto it = bottom_left.rbegin(); it != bottom_left.rend(); ++it) {
                const Cell& lower = *it;
                if (lower.col >= upper.col || lower.row <= upper.row) continue;
                put(upper, index);
                put(lower, index);
                placed_ += 2;
                if (descend(index + 1)) return true;
                placed_ -= 2;
                take(lower);
                take(upper);
            }
        }
        dead_.insert(heights_);
        return false;
    }

    const SpotLayout& s_;
    std::vector<int> heights_;
    std::vector<int> cells_;
    int placed_ = 0;
    std::set<std::vector<int>> dead_;
};

inline void check_layout_filling(const Filling& f, const SpotLayout& layout, const char* what) {
    const auto fail = [&](const std::string& why) {
        throw InternalError(std::string(what) + " self-check failed: " + why);
    };
    const auto occ = occurrences(f);
    if (static_cast<int>(occ.size()) != f.g() || occ.begin()->first != 1 || occ.rbegin()->first != f.g()) {
        fail("indices do not cover 1.." + std::to_string(f.g()));
    }
    std::set<Cell> doubled;
    for (const auto& [index, cells] : occ) {
        if (cells.size() > 2) fail("index " + std::to_string(index) + " used more than twice");
        if (cells.size() == 2) doubled.insert(cells.begin(), cells.end());
    }
    const auto reserved = layout.reserved_cells();
    if (doubled != std::set<Cell>(reserved.begin(), reserved.end())) fail("doubled boxes differ from reserved boxes");
    if (!validate_positive(f, minimal_torsion_chain(f)).valid()) fail("output is not admissible");
}

} // namespace detail

/// Fills the rectangle around a layout.
[[nodiscard]] inline Filling fill_layout(const SpotLayout& layout) {
    detail::LayoutFiller filler(layout);
    Filling f = filler.run();
    detail::check_layout_filling(f, layout, "layout filling");
    return f;
}

/// A filling with numbers 1..alpha*beta-e, exactly e of them doubled, whose
/// distance sum equals max_distance_bound(alpha, beta, e).
[[nodiscard]] inline Filling optimal_separation_filling(int alpha, int beta, int e) {
    require_separation_range(alpha, beta, e);
    if (alpha == 1) {
        std::vector<int> cells(static_cast<std::size_t>(beta));
        for (int i = 0; i < beta; ++i) cells[static_cast<std::size_t>(i)] = i + 1;
        return Filling(1, beta, beta, std::move(cells));
    }
    const SpotLayout layout = separation_layout(alpha, beta, e);
    Filling f = fill_layout(layout);
    if (grid_distance_sum(f) != max_distance_bound(alpha, beta, e)) {
        throw InternalError("separation filling misses the distance bound for (" + std::to_string(alpha) + "," +
                            std::to_string(beta) + "," + std::to_string(e) + ")");
    }
    return f;
}

/// A filling using every index 1..g, with alpha*beta-g of them doubled on the
/// staircase layout's reserved boxes.
[[nodiscard]] inline Filling staircase_filling(int alpha, int beta, int g) {
    const SpotLayout layout = staircase_layout(alpha, beta, g);
    Filling f = fill_layout(layout);
    detail::check_layout_filling(f, layout, "staircase filling");
    return f;
}

} // namespace bnchain
