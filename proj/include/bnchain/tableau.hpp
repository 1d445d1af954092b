#pragma once

// Admissible rectangle fillings.
//
// Coordinates are 1-based: row 1 is the top row and column 1 the leftmost
// column.  Column c carries the section with vanishing slot j = c - 1.
// A positive filling assigns one index in 1..g to every box, strictly
// increasing along rows and down columns; an index may sit in several boxes
// only on a torsion-decorated component whose order divides the grid
// distance between consecutive occurrences.

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bnchain/bn_core.hpp"
#include "bnchain/errors.hpp"

namespace bnchain {

struct Cell {
    int row = 0;
    int col = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
    friend auto operator<=>(const Cell&, const Cell&) = default;
};

[[nodiscard]] inline std::string to_string(const Cell& c) {
    return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

[[nodiscard]] inline int grid_distance(const Cell& a, const Cell& b) {
    return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

/// A total assignment of indices to the boxes of an alpha x beta rectangle
/// (alpha columns, beta rows).  Structural checks only; admissibility is the
/// job of validate_positive.
class Filling {
public:
    Filling(int alpha, int beta, int g, std::vector<int> row_major)
        : alpha_(alpha), beta_(beta), g_(g), cells_(std::move(row_major)) {
        if (alpha < 1 || beta < 1) {
            throw MalformedInputError("filling needs alpha >= 1 and beta >= 1, got alpha=" +
                                      std::to_string(alpha) + " beta=" + std::to_string(beta));
        }
        if (g < 1) throw MalformedInputError("filling index universe g must be >= 1");
        if (cells_.size() != static_cast<std::size_t>(alpha) * static_cast<std::size_t>(beta)) {
            throw MalformedInputError("filling has " + std::to_string(cells_.size()) + " cells, expected " +
                                      std::to_string(alpha * beta));
        }
    }

    /// Rows listed top to bottom.
    static Filling from_rows(int g, const std::vector<std::vector<int>>& rows) {
        if (rows.empty()) throw MalformedInputError("filling needs at least one row");
        const int alpha = static_cast<int>(rows.front().size());
        std::vector<int> flat;
        for (const auto& row : rows) {
            if (static_cast<int>(row.size()) != alpha) throw MalformedInputError("ragged rows in filling");
            flat.insert(flat.end(), row.begin(), row.end());
        }
        return Filling(alpha, static_cast<int>(rows.size()), g, std::move(flat));
    }

    [[nodiscard]] int alpha() const { return alpha_; }
    [[nodiscard]] int beta() const { return beta_; }
    [[nodiscard]] int g() const { return g_; }
    [[nodiscard]] int size() const { return alpha_ * beta_; }
    [[nodiscard]] const std::vector<int>& row_major() const { return cells_; }

    [[nodiscard]] int at(int row, int col) const {
        if (row < 1 || row > beta_ || col < 1 || col > alpha_) {
            throw OutOfRangeError("cell " + to_string(Cell{row, col}) + " outside " + std::to_string(alpha_) +
                                  "x" + std::to_string(beta_) + " rectangle");
        }
        return cells_[static_cast<std::size_t>((row - 1) * alpha_ + (col - 1))];
    }
    [[nodiscard]] int at(const Cell& c) const { return at(c.row, c.col); }

    friend bool operator==(const Filling&, const Filling&) = default;

private:
    int alpha_;
    int beta_;
    int g_;
    std::vector<int> cells_;
};

/// A chain of g elliptic components; `special` maps a component to the order
/// l >= 2 of P - Q on it.  Every other component is generic.
class ChainSpec {
public:
    ChainSpec() = default;
    explicit ChainSpec(int g, std::map<int, int> special = {}) : g_(g), special_(std::move(special)) {
        if (g < 1) throw MalformedInputError("chain needs g >= 1");
        for (const auto& [component, order] : special_) {
            if (component < 1 || component > g) {
                throw MalformedInputError("special component " + std::to_string(component) + " outside 1.." +
                                          std::to_string(g));
            }
            if (order < 2) {
                throw MalformedInputError("torsion order on component " + std::to_string(component) +
                                          " must be >= 2, got " + std::to_string(order));
            }
        }
    }

    [[nodiscard]] int g() const { return g_; }
    [[nodiscard]] const std::map<int, int>& special() const { return special_; }
    [[nodiscard]] std::optional<int> order(int component) const {
        const auto it = special_.find(component);
        if (it == special_.end()) return std::nullopt;
        return it->second;
    }

    friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

private:
    int g_ = 1;
    std::map<int, int> special_;
};

enum class ViolationKind {
    ShapeMismatch,
    IndexOutOfRange,
    RowOrder,
    ColumnOrder,
    RepeatAtGenericComponent,
    TorsionDivisibility,
    DuplicateInBox,
    WeightNotBinary,
    WeightRowOrder,
    WeightColumnOrder,
    BoundaryWeight,
    SequenceOrder,
    SumExceedsDegree,
    BundleMismatch,
    MissingTorsion,
    Refinedness,
    BoundaryVanishing,
};

[[nodiscard]] inline const char* kind_name(ViolationKind kind) {
    switch (kind) {
    case ViolationKind::ShapeMismatch: return "shape_mismatch";
    case ViolationKind::IndexOutOfRange: return "index_out_of_range";
    case ViolationKind::RowOrder: return "row_order";
    case ViolationKind::ColumnOrder: return "column_order";
    case ViolationKind::RepeatAtGenericComponent: return "repeat_at_generic_component";
    case ViolationKind::TorsionDivisibility: return "torsion_divisibility";
    case ViolationKind::DuplicateInBox: return "duplicate_in_box";
    case ViolationKind::WeightNotBinary: return "weight_not_binary";
    case ViolationKind::WeightRowOrder: return "weight_row_order";
    case ViolationKind::WeightColumnOrder: return "weight_column_order";
    case ViolationKind::BoundaryWeight: return "boundary_weight";
    case ViolationKind::SequenceOrder: return "sequence_order";
    case ViolationKind::SumExceedsDegree: return "sum_exceeds_degree";
    case ViolationKind::BundleMismatch: return "bundle_mismatch";
    case ViolationKind::MissingTorsion: return "missing_torsion";
    case ViolationKind::Refinedness: return "refinedness";
    case ViolationKind::BoundaryVanishing: return "boundary_vanishing";
    }
    return "unknown";
}

struct Violation {
    ViolationKind kind;
    std::string message;
    std::vector<Cell> cells;
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool valid() const { return violations.empty(); }
    [[nodiscard]] bool has(ViolationKind kind) const {
        return std::any_of(violations.begin(), violations.end(),
                           [kind](const Violation& v) { return v.kind == kind; });
    }
    void add(ViolationKind kind, std::string message, std::vector<Cell> cells = {}) {
        violations.push_back({kind, std::move(message), std::move(cells)});
    }
};

/// Cells of every index, each list sorted by row.
[[nodiscard]] inline std::map<int, std::vector<Cell>> occurrences(const Filling& f) {
    std::map<int, std::vector<Cell>> out;
    for (int row = 1; row <= f.beta(); ++row) {
        for (int col = 1; col <= f.alpha(); ++col) out[f.at(row, col)].push_back({row, col});
    }
    return out;
}

struct RepeatRecord {
    int index = 0;
    std::vector<Cell> occurrences;   // sorted by row
    std::vector<int> pair_distances; // between consecutive occurrences
};

[[nodiscard]] inline std::vector<RepeatRecord> repeats(const Filling& f) {
    std::vector<RepeatRecord> out;
    for (auto& [index, cells] : occurrences(f)) {
        if (cells.size() < 2) continue;
        RepeatRecord rec{index, cells, {}};
        for (std::size_t n = 1; n < cells.size(); ++n) rec.pair_distances.push_back(grid_distance(cells[n - 1], cells[n]));
        out.push_back(std::move(rec));
    }
    return out;
}

namespace detail {

inline void check_repeat_torsion(ValidationReport& report, const ChainSpec& chain, int index,
                                 const std::vector<Cell>& cells, const char* what) {
    if (cells.size() < 2) return;
    const auto order = chain.order(index);
    if (!order) {
        report.add(ViolationKind::RepeatAtGenericComponent,
                   std::string(what) + " index " + std::to_string(index) + " repeats but component " +
                       std::to_string(index) + " is generic",
                   cells);
        return;
    }
    for (std::size_t n = 1; n < cells.size(); ++n) {
        const int dist = grid_distance(cells[n - 1], cells[n]);
        if (dist % *order != 0) {
            report.add(ViolationKind::TorsionDivisibility,
                       "index " + std::to_string(index) + ": torsion order " + std::to_string(*order) +
                           " does not divide grid distance " + std::to_string(dist),
                       {cells[n - 1], cells[n]});
        }
    }
}

} // namespace detail

/// Every violation of strict monotonicity, index range and the torsion rule
/// for repeated indices (tested against the grid distance |drow| + |dcol| of
/// each consecutive pair of occurrences).
[[nodiscard]] inline ValidationReport validate_positive(const Filling& f, const ChainSpec& chain) {
    ValidationReport report;
    if (chain.g() != f.g()) {
        report.add(ViolationKind::ShapeMismatch,
                   "chain has g=" + std::to_string(chain.g()) + " but filling has g=" + std::to_string(f.g()));
    }
    for (int row = 1; row <= f.beta(); ++row) {
        for (int col = 1; col <= f.alpha(); ++col) {
            const int v = f.at(row, col);
            if (v < 1 || v > f.g()) {
                report.add(ViolationKind::IndexOutOfRange,
                           "index " + std::to_string(v) + " outside 1.." + std::to_string(f.g()), {{row, col}});
            }
            if (col > 1 && f.at(row, col - 1) >= v) {
                report.add(ViolationKind::RowOrder, "row " + std::to_string(row) + " not strictly increasing",
                           {{row, col - 1}, {row, col}});
            }
            if (row > 1 && f.at(row - 1, col) >= v) {
                report.add(ViolationKind::ColumnOrder, "column " + std::to_string(col) + " not strictly increasing",
                           {{row - 1, col}, {row, col}});
            }
        }
    }
    for (const auto& [index, cells] : occurrences(f)) detail::check_repeat_torsion(report, chain, index, cells, "positive");
    return report;
}

/// Swap rows and columns: box (row, col) moves to (col, row).
[[nodiscard]] inline Filling transpose(const Filling& f) {
    std::vector<int> out(static_cast<std::size_t>(f.size()));
    for (int row = 1; row <= f.beta(); ++row) {
        for (int col = 1; col <= f.alpha(); ++col) {
            // new rectangle has f.beta() columns and f.alpha() rows
            out[static_cast<std::size_t>((col - 1) * f.beta() + (row - 1))] = f.at(row, col);
        }
    }
    return Filling(f.beta(), f.alpha(), f.g(), std::move(out));
}

/// Sum over doubled indices of the grid distance between their two boxes.
[[nodiscard]] inline Int grid_distance_sum(const Filling& f) {
    Int total = 0;
    for (const auto& rec : repeats(f)) {
        if (rec.occurrences.size() > 2) {
            throw OutOfRangeError("unsupported multiplicity: index " + std::to_string(rec.index) + " appears " +
                                  std::to_string(rec.occurrences.size()) + " times");
        }
        total += rec.pair_distances.front();
    }
    return total;
}

/// Weakest decoration under which f is admissible: every repeated index gets
/// the gcd of its consecutive occurrence distances as torsion order.
[[nodiscard]] inline ChainSpec minimal_torsion_chain(const Filling& f) {
    std::map<int, int> special;
    for (const auto& rec : repeats(f)) {
        int order = 0;
        for (int dist : rec.pair_distances) order = std::gcd(order, dist);
        if (order <= 1) {
            throw OutOfRangeError("impossible filling: index " + std::to_string(rec.index) +
                                  " has occurrences at grid distance " + std::to_string(order));
        }
        special[rec.index] = order;
    }
    return ChainSpec(f.g(), std::move(special));
}

// ---------------------------------------------------------------------------
// Weighted fillings

struct WeightedEntry {
    int index = 0;
    int weight = 1; // +1 or -1

    friend bool operator==(const WeightedEntry&, const WeightedEntry&) = default;
};

/// Signed-weight filling of the vertical strip over an alpha x beta
/// rectangle.  Rows outside 1..beta are allowed; boxes are keyed by cell and
/// hold their entries sorted by index.
class WeightedFilling {
public:
    WeightedFilling(int alpha, int beta, int g) : alpha_(alpha), beta_(beta), g_(g) {
        if (alpha < 1 || beta < 0 || g < 1) {
            throw MalformedInputError("weighted filling needs alpha >= 1, beta >= 0, g >= 1");
        }
    }

    /// Embeds a positive filling with every entry at weight +1.
    static WeightedFilling from_positive(const Filling& f) {
        WeightedFilling w(f.alpha(), f.beta(), f.g());
        for (int row = 1; row <= f.beta(); ++row) {
            for (int col = 1; col <= f.alpha(); ++col) w.add(row, col, f.at(row, col), +1);
        }
        return w;
    }

    void add(int row, int col, int index, int weight) {
        if (col < 1 || col > alpha_) throw MalformedInputError("weighted entry column " + std::to_string(col) + " outside strip");
        if (index < 1 || index > g_) throw MalformedInputError("weighted entry index " + std::to_string(index) + " outside 1..g");
        if (weight != 1 && weight != -1) throw MalformedInputError("weight must be +1 or -1");
        auto& box = boxes_[Cell{row, col}];
        const auto pos = std::upper_bound(box.begin(), box.end(), index,
                                          [](int idx, const WeightedEntry& e) { return idx < e.index; });
        box.insert(pos, WeightedEntry{index, weight});
    }

    /// Removes one entry; returns false when absent.
    bool remove(int row, int col, int index) {
        const auto it = boxes_.find(Cell{row, col});
        if (it == boxes_.end()) return false;
        auto& box = it->second;
        const auto pos = std::find_if(box.begin(), box.end(), [index](const WeightedEntry& e) { return e.index == index; });
        if (pos == box.end()) return false;
        box.erase(pos);
        if (box.empty()) boxes_.erase(it);
        return true;
    }

    [[nodiscard]] int alpha() const { return alpha_; }
    [[nodiscard]] int beta() const { return beta_; }
    [[nodiscard]] int g() const { return g_; }
    [[nodiscard]] const std::map<Cell, std::vector<WeightedEntry>>& boxes() const { return boxes_; }

    [[nodiscard]] const std::vector<WeightedEntry>& entries(int row, int col) const {
        static const std::vector<WeightedEntry> empty;
        const auto it = boxes_.find(Cell{row, col});
        return it == boxes_.end() ? empty : it->second;
    }

    /// 0-weight (1 above the rectangle, else 0) plus the weights of entries
    /// with index <= i.
    [[nodiscard]] int i_weight(int row, int col, int i) const {
        int w = row < 1 ? 1 : 0;
        for (const auto& e : entries(row, col)) {
            if (e.index > i) break;
            w += e.weight;
        }
        return w;
    }

    friend bool operator==(const WeightedFilling&, const WeightedFilling&) = default;

private:
    int alpha_;
    int beta_;
    int g_;
    std::map<Cell, std::vector<WeightedEntry>> boxes_;
};

[[nodiscard]] inline ValidationReport validate_weighted(const WeightedFilling& w, const ChainSpec& chain) {
    ValidationReport report;
    if (chain.g() != w.g()) {
        report.add(ViolationKind::ShapeMismatch,
                   "chain has g=" + std::to_string(chain.g()) + " but filling has g=" + std::to_string(w.g()));
    }
    int top = 1;
    int bottom = w.beta();
    for (const auto& [cell, box] : w.boxes()) {
        top = std::min(top, cell.row);
        bottom = std::max(bottom, cell.row);
    }
    --top;
    ++bottom;

    // (b) one occurrence of a number per box; collect positive occurrences for (a)
    std::map<int, std::vector<Cell>> positive;
    for (const auto& [cell, box] : w.boxes()) {
        for (std::size_t n = 0; n < box.size(); ++n) {
            if (n > 0 && box[n - 1].index == box[n].index) {
                report.add(ViolationKind::DuplicateInBox,
                           "number " + std::to_string(box[n].index) + " occurs twice in one box", {cell});
            }
            if (box[n].weight > 0) positive[box[n].index].push_back(cell);
        }
    }
    // (a)
    for (auto& [index, cells] : positive) {
        std::sort(cells.begin(), cells.end());
        detail::check_repeat_torsion(report, chain, index, cells, "positive-weight");
    }
    // (c)-(f)
    for (int row = top; row <= bottom; ++row) {
        for (int col = 1; col <= w.alpha(); ++col) {
            bool binary = true, right = true, below = true;
            for (int i = 0; i <= w.g(); ++i) {
                const int here = w.i_weight(row, col, i);
                if (binary && here != 0 && here != 1) {
                    report.add(ViolationKind::WeightNotBinary,
                               std::to_string(i) + "-weight is " + std::to_string(here), {{row, col}});
                    binary = false;
                }
                if (right && col < w.alpha() && here < w.i_weight(row, col + 1, i)) {
                    report.add(ViolationKind::WeightRowOrder,
                               std::to_string(i) + "-weight increases to the right", {{row, col}, {row, col + 1}});
                    right = false;
                }
                if (below && row < bottom && here < w.i_weight(row + 1, col, i)) {
                    report.add(ViolationKind::WeightColumnOrder,
                               std::to_string(i) + "-weight increases downward", {{row, col}, {row + 1, col}});
                    below = false;
                }
            }
            const int expected = row <= w.beta() ? 1 : 0;
            if (w.i_weight(row, col, w.g()) != expected) {
                report.add(ViolationKind::BoundaryWeight,
                           "g-weight must be " + std::to_string(expected) + (row <= w.beta() ? " inside or above" : " below") +
                               " the rectangle",
                           {{row, col}});
            }
        }
    }
    return report;
}

/// Keeps, in every rectangle box, the last index carrying weight +1.
[[nodiscard]] inline Filling reduce_to_positive(const WeightedFilling& w) {
    if (w.beta() < 1) throw MalformedInputError("cannot reduce a weighted filling with an empty rectangle");
    std::vector<int> cells;
    cells.reserve(static_cast<std::size_t>(w.alpha() * w.beta()));
    for (int row = 1; row <= w.beta(); ++row) {
        for (int col = 1; col <= w.alpha(); ++col) {
            const auto& box = w.entries(row, col);
            const auto last = std::find_if(box.rbegin(), box.rend(), [](const WeightedEntry& e) { return e.weight > 0; });
            if (last == box.rend()) {
                throw MalformedInputError("box " + to_string(Cell{row, col}) + " has no positive entry");
            }
            cells.push_back(last->index);
        }
    }
    return Filling(w.alpha(), w.beta(), w.g(), std::move(cells));
}

// ---------------------------------------------------------------------------
// Brute-force enumeration

inline constexpr Int kDefaultEnumerationBudget = 30;

namespace detail {

template <class Visitor>
class FillingSearch {
public:
    FillingSearch(int alpha, int beta, const ChainSpec& chain, Visitor& visit)
        : alpha_(alpha), beta_(beta), g_(chain.g()), chain_(chain), visit_(visit),
          cells_(static_cast<std::size_t>(alpha * beta), 0), count_(static_cast<std::size_t>(g_ + 1), 0),
          last_(static_cast<std::size_t>(g_ + 1)), cap_(std::min(alpha, beta)) {
        slack_ = cap_ * static_cast<int>(chain.special().size());
        unused_generic_ = g_ - static_cast<int>(chain.special().size());
    }

    void run() { descend(0); }

private:
    bool descend(int pos) {
        if (pos == alpha_ * beta_) {
            return visit_(Filling(alpha_, beta_, g_, cells_));
        }
        const int row = pos / alpha_ + 1;
        const int col = pos % alpha_ + 1;
        const int left = col > 1 ? cells_[static_cast<std::size_t>(pos - 1)] : 0;
        const int up = row > 1 ? cells_[static_cast<std::size_t>(pos - alpha_)] : 0;
        const int lo = std::max(left, up) + 1;
        const int hi = g_ - (alpha_ - col) - (beta_ - row);
        const int remaining_after = alpha_ * beta_ - pos - 1;
        for (int v = lo; v <= hi; ++v) {
            const auto order = chain_.order(v);
            const auto vi = static_cast<std::size_t>(v);
            if (count_[vi] > 0) {
                if (!order || count_[vi] >= cap_) continue;
                const Cell prev = last_[vi];
                if (grid_distance(prev, Cell{row, col}) % *order != 0) continue;
            }
            // capacity after placing v
            const int generic_after = unused_generic_ - (!order && count_[vi] == 0 ? 1 : 0);
            const int slack_after = slack_ - (order ? 1 : 0);
            if (remaining_after > generic_after + slack_after) continue;

            const Cell saved = last_[vi];
            cells_[static_cast<std::size_t>(pos)] = v;
            ++count_[vi];
            last_[vi] = Cell{row, col};
            const int generic_before = unused_generic_;
            const int slack_before = slack_;
            unused_generic_ = generic_after;
            slack_ = slack_after;
            const bool keep_going = descend(pos + 1);
            unused_generic_ = generic_before;
            slack_ = slack_before;
            last_[vi] = saved;
            --count_[vi];
            if (!keep_going) return false;
        }
        return true;
    }

    int alpha_;
    int beta_;
    int g_;
    const ChainSpec& chain_;
    Visitor& visit_;
    std::vector<int> cells_;
    std::vector<int> count_;
    std::vector<Cell> last_;
    int cap_;
    int slack_ = 0;
    int unused_generic_ = 0;
};

} // namespace detail

/// Calls visit(const Filling&) for every admissible positive filling of the
/// alpha x beta rectangle on the given chain, in lexicographic row-major
/// order.  visit returns false to stop early.
template <class Visitor>
void for_each_filling(int alpha, int beta, const ChainSpec& chain, Visitor&& visit,
                      Int budget = kDefaultEnumerationBudget) {
    if (alpha < 1 || beta < 1) throw OutOfRangeError("enumeration needs alpha, beta >= 1");
    if (static_cast<Int>(alpha) * beta > budget) {
        throw BudgetExceededError("enumeration of a " + std::to_string(alpha) + "x" + std::to_string(beta) +
                                  " rectangle exceeds the budget of " + std::to_string(budget) + " cells");
    }
    detail::FillingSearch<std::remove_reference_t<Visitor>> search(alpha, beta, chain, visit);
    search.run();
}

template <class Visitor>
void for_each_filling(const BnParams& p, const ChainSpec& chain, Visitor&& visit,
                      Int budget = kDefaultEnumerationBudget) {
    if (chain.g() != p.g) throw MalformedInputError("chain g does not match parameters");
    for_each_filling(static_cast<int>(p.alpha()), static_cast<int>(p.beta()), chain, std::forward<Visitor>(visit),
                     budget);
}

/// All fillings (up to `limit`) as a vector.
[[nodiscard]] inline std::vector<Filling> enumerate_fillings(const BnParams& p, const ChainSpec& chain,
                                                             Int budget = kDefaultEnumerationBudget,
                                                             std::size_t limit = std::numeric_limits<std::size_t>::max()) {
    std::vector<Filling> out;
    for_each_filling(
        p, chain,
        [&](const Filling& f) {
            out.push_back(f);
            return out.size() < limit;
        },
        budget);
    return out;
}

// ---------------------------------------------------------------------------
// Exhaustive optimum over all fillings via the lattice of shapes

/// Maximum summed grid distance over all admissible fillings of the
/// alpha x beta rectangle in which exactly e indices appear twice and the
/// rest once, or nullopt if no such filling exists.  A filling is a chain of
/// Young diagrams that grows by one box or by two addable corners (a doubled
/// index) per step, so a dynamic program over diagrams covers every filling.
[[nodiscard]] inline std::optional<Int> max_distance_exhaustive(int alpha, int beta, int e) {
    if (alpha < 1 || beta < 1 || e < 0) throw OutOfRangeError("exhaustive optimum needs alpha, beta >= 1, e >= 0");
    using Shape = std::vector<int>; // column heights, non-increasing
    constexpr Int kNone = std::numeric_limits<Int>::min();
    const int total = alpha * beta;
    if (2 * e > total) return std::nullopt;

    std::vector<std::map<Shape, std::vector<Int>>> layers(static_cast<std::size_t>(total + 1));
    layers[0][Shape(static_cast<std::size_t>(alpha), 0)] = std::vector<Int>(static_cast<std::size_t>(e + 1), kNone);
    layers[0].begin()->second[0] = 0;

    auto relax = [&](const Shape& shape, int size, int doubles, Int value) {
        auto& slot = layers[static_cast<std::size_t>(size)][shape];
        if (slot.empty()) slot.assign(static_cast<std::size_t>(e + 1), kNone);
        auto& best = slot[static_cast<std::size_t>(doubles)];
        best = std::max(best, value);
    };

    for (int size = 0; size < total; ++size) {
        for (const auto& [shape, best] : layers[static_cast<std::size_t>(size)]) {
            std::vector<int> corners;
            for (int c = 0; c < alpha; ++c) {
                const auto ci = static_cast<std::size_t>(c);
                if (shape[ci] < beta && (c == 0 || shape[ci - 1] > shape[ci])) corners.push_back(c);
            }
            for (int doubles = 0; doubles <= e; ++doubles) {
                const Int value = best[static_cast<std::size_t>(doubles)];
                if (value == kNone) continue;
                for (std::size_t a = 0; a < corners.size(); ++a) {
                    Shape next = shape;
                    ++next[static_cast<std::size_t>(corners[a])];
                    relax(next, size + 1, doubles, value);
                    if (doubles == e) continue;
                    for (std::size_t b = a + 1; b < corners.size(); ++b) {
                        Shape both = next;
                        ++both[static_cast<std::size_t>(corners[b])];
                        const Cell lower{shape[static_cast<std::size_t>(corners[a])] + 1, corners[a] + 1};
                        const Cell upper{shape[static_cast<std::size_t>(corners[b])] + 1, corners[b] + 1};
                        relax(both, size + 2, doubles + 1, value + grid_distance(lower, upper));
                    }
                }
            }
        }
    }
    const auto& full = layers[static_cast<std::size_t>(total)];
    if (full.empty()) return std::nullopt;
    const Int value = full.begin()->second[static_cast<std::size_t>(e)];
    if (value == kNone) return std::nullopt;
    return value;
}

} // namespace bnchain
