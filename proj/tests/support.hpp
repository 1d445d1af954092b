#pragma once

#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "bnchain/bnchain.hpp"

namespace support {

inline std::string slurp(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open " + path);
    return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

inline bnchain::Filling fixture_filling(const std::string& name) {
    return bnchain::io::filling_from_json(bnchain::io::parse(slurp(fixture_path(name)), name.c_str()));
}

inline bnchain::WeightedFilling fixture_weighted(const std::string& name) {
    return bnchain::io::weighted_from_json(bnchain::io::parse(slurp(fixture_path(name)), name.c_str()));
}

inline bnchain::ChainSpec fixture_chain(const std::string& name) {
    return bnchain::io::chain_from_json(bnchain::io::parse(slurp(fixture_path(name)), name.c_str()));
}

struct GoldenCase {
    std::string name;
    int expected = 0;
    std::vector<std::string> args;
};

/// Cases listed in golden/cases.txt, with {fixtures} expanded.
inline std::vector<GoldenCase> golden_cases() {
    std::vector<GoldenCase> out;
    std::istringstream lines(slurp(std::string(GOLDEN_DIR) + "/cases.txt"));
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line.front() == '#') continue;
        std::istringstream words(line);
        GoldenCase c;
        words >> c.name >> c.expected;
        std::string word;
        while (words >> word) {
            const auto at = word.find("{fixtures}");
            if (at != std::string::npos) word.replace(at, 10, FIXTURE_DIR);
            c.args.push_back(word);
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline std::string golden_output(const std::string& name) { return slurp(std::string(GOLDEN_DIR) + "/" + name + ".out"); }

/// Paper figure fixtures by file name.
inline const std::vector<std::string>& figure_fixtures() {
    static const std::vector<std::string> names = {
        "torsion_pair_2x4_g10.json",  "separation_5x6_e7.json", "separation_5x6_e12.json",
        "separation_5x5_e11.json",    "staircase_4x8_g21.json", "staircase_4x8_g17.json",
        "staircase_5x7_g19.json",     "corner_square_5x5_g15.json"};
    return names;
}

/// Adds cancelling pairs to a positive filling while keeping the weights
/// monotone: inside the rectangle a (+y, -z) pair between the box's
/// neighbours and its own entry, in the row above the last column a (-y, +z)
/// pair below that column's top entry, in the row below the first column a
/// (+y, -z) pair above that column's bottom entry.  Pairs may still collide,
/// so the result is not always admissible.
template <class Rng>
bnchain::WeightedFilling decorate_with_cancelling_pairs(const bnchain::Filling& f, Rng& rng, int pairs) {
    auto w = bnchain::WeightedFilling::from_positive(f);
    auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
    for (int n = 0; n < pairs; ++n) {
        const int row = pick(0, f.beta() + 1);
        int col = pick(1, f.alpha());
        int lo = 1, hi = f.g();
        if (row < 1) {
            col = f.alpha();
            hi = f.at(1, col);
        } else if (row > f.beta()) {
            col = 1;
            lo = f.at(f.beta(), col) + 1;
        } else {
            const int left = col > 1 ? f.at(row, col - 1) : 0;
            const int up = row > 1 ? f.at(row - 1, col) : 0;
            lo = std::max(left, up) + 1;
            hi = f.at(row, col) - 1;
        }
        if (hi - lo < 1) continue;
        const int y = pick(lo, hi - 1);
        const int z = pick(y + 1, hi);
        bool clash = false;
        for (const auto& e : w.entries(row, col)) clash = clash || e.index == y || e.index == z;
        if (clash) continue;
        w.add(row, col, y, row < 1 ? -1 : 1);
        w.add(row, col, z, row < 1 ? 1 : -1);
    }
    return w;
}

} // namespace support
