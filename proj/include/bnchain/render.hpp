#pragma once

// Fixed-width text grids.  A doubled index is printed as "5*(3,1)": the star
// marks the repeat and the cell in parentheses is the partner occurrence.

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "bnchain/series.hpp"
#include "bnchain/tableau.hpp"

namespace bnchain {

[[nodiscard]] inline std::string render_ascii(const Filling& f) {
    const auto occ = occurrences(f);
    std::vector<std::string> labels;
    std::size_t width = 1;
    for (int row = 1; row <= f.beta(); ++row) {
        for (int col = 1; col <= f.alpha(); ++col) {
            const int index = f.at(row, col);
            std::string label = std::to_string(index);
            const auto it = occ.find(index);
            if (it != occ.end() && it->second.size() > 1) {
                label += '*';
                for (const Cell& other : it->second) {
                    if (other != Cell{row, col}) label += to_string(other);
                }
            }
            width = std::max(width, label.size());
            labels.push_back(std::move(label));
        }
    }
    std::string rule = "+";
    for (int col = 1; col <= f.alpha(); ++col) rule += std::string(width + 2, '-') + "+";
    std::ostringstream out;
    out << rule << '\n';
    for (int row = 0; row < f.beta(); ++row) {
        out << '|';
        for (int col = 0; col < f.alpha(); ++col) {
            const auto& label = labels[static_cast<std::size_t>(row * f.alpha() + col)];
            out << ' ' << label << std::string(width - label.size(), ' ') << " |";
        }
        out << '\n' << rule << '\n';
    }
    return out.str();
}

[[nodiscard]] inline std::string render_ascii(const LimitSeriesTable& t) {
    std::ostringstream out;
    out << "g=" << t.p.g << " r=" << t.p.r << " d=" << t.p.d << '\n';
    for (std::size_t i = 0; i < t.u.size(); ++i) {
        out << "E" << (i + 1) << ":";
        for (std::size_t j = 0; j < t.u[i].size(); ++j) out << " (" << t.u[i][j] << "," << t.v[i][j] << ")";
        out << "  L=" << to_string(t.bundles[i]);
        if (const auto l = t.chain.order(static_cast<int>(i + 1))) out << " torsion " << *l;
        out << '\n';
    }
    return out.str();
}

} // namespace bnchain
