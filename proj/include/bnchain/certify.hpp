#pragma once

// Certificates built on fillings.  Every inequality a certificate relies on
// is kept as a CheckRecord so the document can be re-audited without
// recomputation.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bnchain/bn_core.hpp"
#include "bnchain/construct.hpp"
#include "bnchain/errors.hpp"
#include "bnchain/series.hpp"
#include "bnchain/tableau.hpp"

namespace bnchain {

struct CheckRecord {
    std::string label;
    Int lhs = 0;
    std::string relation; // one of "==", "<=", "<", ">=", ">", "!="
    Int rhs = 0;
    bool holds = false;
};

[[nodiscard]] inline bool evaluate_relation(Int lhs, const std::string& relation, Int rhs) {
    if (relation == "==") return lhs == rhs;
    if (relation == "!=") return lhs != rhs;
    if (relation == "<=") return lhs <= rhs;
    if (relation == "<") return lhs < rhs;
    if (relation == ">=") return lhs >= rhs;
    if (relation == ">") return lhs > rhs;
    throw MalformedInputError("unknown relation '" + relation + "'");
}

inline bool record(std::vector<CheckRecord>& checks, std::string label, Int lhs, const std::string& relation, Int rhs) {
    const bool holds = evaluate_relation(lhs, relation, rhs);
    checks.push_back({std::move(label), lhs, relation, rhs, holds});
    return holds;
}

/// Records a check and throws CertificateError when it fails.
inline void require_check(std::vector<CheckRecord>& checks, std::string label, Int lhs, const std::string& relation,
                          Int rhs) {
    if (!record(checks, label, lhs, relation, rhs)) {
        throw CertificateError("certificate check failed: " + label + ": " + std::to_string(lhs) + " " + relation +
                               " " + std::to_string(rhs) + " is false");
    }
}

// ---------------------------------------------------------------------------
// Petri

struct PetriProduct {
    int i = 0; // column of f: section s_i
    int j = 0; // row of f = column of the transpose: section t_j
    int k = 0; // concentration component

    friend bool operator==(const PetriProduct&, const PetriProduct&) = default;
};

struct PetriCertificate {
    Filling f;
    BnParams p;
    ChainSpec chain;
    std::vector<PetriProduct> products;
    bool dual_checked = false;
    std::vector<CheckRecord> checks;
};

/// One product s_i t_j per distinct index k of f, taken at the upper
/// occurrence of k.  Distinct k means each product concentrates on its own
/// component, which is what independence needs.
[[nodiscard]] inline PetriCertificate petri_certificate(const Filling& f, const BnParams& p, const ChainSpec& chain) {
    const LimitSeriesTable series = filling_to_series(f, p, chain); // checks shape and admissibility
    const auto occ = occurrences(f);
    if (static_cast<Int>(occ.size()) != p.g) {
        throw CertificateError("only " + std::to_string(occ.size()) + " distinct indices appear, need g=" +
                               std::to_string(p.g));
    }
    PetriCertificate cert{f, p, chain, {}, false, {}};
    for (const auto& [index, cells] : occ) {
        const Cell& c = cells.front();
        cert.products.push_back({c.col, c.row, index});
    }

    std::optional<LimitSeriesTable> dual;
    std::optional<BnParams> dual_params;
    try {
        dual_params = serre_dual(p);
    } catch (const OutOfRangeError&) {
        dual_params.reset();
    }
    if (dual_params) {
        dual = filling_to_series(transpose(f), *dual_params, chain);
        cert.dual_checked = true;
    }

    auto& checks = cert.checks;
    require_check(checks, "number of products equals g", static_cast<Int>(cert.products.size()), "==", p.g);
    std::set<int> ks;
    for (const auto& prod : cert.products) ks.insert(prod.k);
    require_check(checks, "distinct concentration components", static_cast<Int>(ks.size()), "==", p.g);
    const Int canonical_degree = 2 * p.g - 2 - p.d;
    for (const auto& prod : cert.products) {
        const std::string tag = "s" + std::to_string(prod.i) + "t" + std::to_string(prod.j) + "@" + std::to_string(prod.k);
        require_check(checks, tag + ": index at (row j, col i)", f.at(prod.j, prod.i), "==", prod.k);
        require_check(checks, tag + ": ord_P + ord_Q of s_i on E_k",
                      series.u_at(prod.k, prod.i - 1) + series.v_at(prod.k, prod.i - 1), "==", p.d);
        if (dual) {
            require_check(checks, tag + ": ord_P + ord_Q of t_j on E_k",
                          dual->u_at(prod.k, prod.j - 1) + dual->v_at(prod.k, prod.j - 1), "==", canonical_degree);
        }
    }
    return cert;
}

/// The counting identity sum_i (beta - a_i) + beta = g for a filling built on
/// a layout: column i contributes its boxes outside the bottom-left
/// reservation and the last column contributes all of its boxes.
inline void check_petri_layout_counts(PetriCertificate& cert, const SpotLayout& layout) {
    std::map<int, Int> per_column;
    for (const auto& prod : cert.products) ++per_column[prod.i];
    Int total = layout.beta;
    for (int col = 1; col < layout.alpha; ++col) {
        require_check(cert.checks, "products in column " + std::to_string(col), per_column[col], "==",
                      layout.beta - layout.a_col(col));
        total += layout.beta - layout.a_col(col);
    }
    require_check(cert.checks, "products in column " + std::to_string(layout.alpha), per_column[layout.alpha], "==",
                  layout.beta);
    require_check(cert.checks, "sum (beta - a_i) + beta equals g", total, "==", cert.p.g);
}

// ---------------------------------------------------------------------------
// Maximal rank for quadrics

struct ProductOrders {
    int i = 0;
    int j = 0;
    Int ord_p = 0;
    Int ord_q = 0;
};

struct MaxRankStep {
    int k = 0;
    int a = 0;
    int t = 0;
    std::pair<int, int> eliminated; // (t, a+1)
    Int ord_p = 0;
    Int ord_q = 0;
    Int p_threshold = 0;
    Int q_threshold = 0;
    std::vector<ProductOrders> rejected;
};

struct MaxRankCertificate {
    int r = 0;
    Int g = 0;
    Int d = 0;
    Filling f;
    std::vector<Int> degree_distribution;
    std::vector<MaxRankStep> steps;
    std::vector<std::string> table_divergences; // product-table disagreements, expected empty
    std::vector<CheckRecord> checks;
    std::string extensions_note;
};

namespace detail {

struct Triangle {
    int a = 0;
    int t = 0;
};

/// k = a(a+1)/2 + t with 1 <= t <= a+1.
inline Triangle triangle_of(int k) {
    int a = 0;
    while ((a + 1) * (a + 2) / 2 < k) ++a;
    return {a, k - a * (a + 1) / 2};
}

inline Int maxrank_ord_p(int i, int k, Triangle tr) {
    const int c = i < tr.t ? tr.a + 1 : i <= tr.a ? tr.a : i == tr.a + 1 ? tr.t - 1 : 0;
    return i - 2 + k - c;
}

inline Int maxrank_ord_q(int i, int k, Int d, Triangle tr) {
    const int c = i <= tr.t ? tr.a + 1 : i <= tr.a ? tr.a : i == tr.a + 1 ? tr.t : 0;
    return d - i + 1 - k + c;
}

/// The displayed product table for ord_Q(s_i s_j); nullopt where it is silent.
inline std::optional<Int> maxrank_table_q(int i, int j, int k, Int d, Triangle tr) {
    const int a = tr.a, t = tr.t;
    const Int base = 2 * d - 2 * k + 2 - i - j;
    if (i <= t && j > a + 1) return base + a + 1;
    if (t < i && i <= a && j == a + 1) return base + a + t;
    if (t < i && i <= a && j > a + 1) return base + a;
    if (i == a + 1 && j == a + 1 && t < a + 1) return base + 2 * t;
    if (i == a + 1 && j > a + 1) return base + t;
    if (i > a + 1 && j > a + 1) return base;
    return std::nullopt;
}

} // namespace detail

/// The (r+1)x(r+1) square filled along its corners: index
/// k = a(a+1)/2 + t sits at (row t, col a+1) and (row a+1, col t).
[[nodiscard]] inline Filling triangular_corner_filling(int r) {
    if (r < 1) throw OutOfRangeError("r must be >= 1");
    const int n = r + 1;
    const int g = n * (n + 1) / 2;
    std::vector<int> cells(static_cast<std::size_t>(n * n), 0);
    for (int k = 1; k <= g; ++k) {
        const auto tr = detail::triangle_of(k);
        cells[static_cast<std::size_t>((tr.t - 1) * n + tr.a)] = k;
        cells[static_cast<std::size_t>(tr.a * n + (tr.t - 1))] = k;
    }
    return Filling(n, n, g, std::move(cells));
}

[[nodiscard]] inline MaxRankCertificate maxrank_m2_certificate(int r) {
    if (r < 1) throw OutOfRangeError("maximal rank certificate needs r >= 1, got " + std::to_string(r));
    const int n = r + 1;
    const int g = n * (n + 1) / 2;
    const Int d = g - 1;
    const BnParams p = BnParams::make(g, r, d);

    MaxRankCertificate cert{r, g, d, triangular_corner_filling(r), {}, {}, {}, {}, {}};
    auto& checks = cert.checks;
    const Filling& f = cert.f;
    require_check(checks, "codimension equals r(r+1)/2", codimension(p), "==", static_cast<Int>(r) * (r + 1) / 2);
    require_check(checks, "corner filling equals the optimal separation filling",
                  f == optimal_separation_filling(n, n, r * (r + 1) / 2) ? 1 : 0, "==", 1);

    const ChainSpec chain = minimal_torsion_chain(f);
    const LimitSeriesTable series = filling_to_series(f, p, chain);

    // degrees 1, 2, ..., 2, 1 on C_1..C_g
    cert.degree_distribution.assign(static_cast<std::size_t>(g), 2);
    cert.degree_distribution.front() = 1;
    cert.degree_distribution.back() = 2 * d - 1 - 2 * (g - 2);
    require_check(checks, "degree on C_g", cert.degree_distribution.back(), "==", 1);
    Int total_degree = 0;
    for (Int deg : cert.degree_distribution) total_degree += deg;
    require_check(checks, "total degree equals 2d", total_degree, "==", 2 * d);

    std::set<std::pair<int, int>> eliminated;
    Int before = 0;
    for (int k = 1; k <= g; ++k) {
        const auto tr = detail::triangle_of(k);
        const Int after = 2 * d - before - cert.degree_distribution[static_cast<std::size_t>(k - 1)];
        const std::string at = "k=" + std::to_string(k);

        // section orders: piecewise formulas against the series translation
        std::vector<Int> op(static_cast<std::size_t>(n + 1)), oq(static_cast<std::size_t>(n + 1));
        for (int i = 1; i <= n; ++i) {
            op[static_cast<std::size_t>(i)] = detail::maxrank_ord_p(i, k, tr);
            oq[static_cast<std::size_t>(i)] = detail::maxrank_ord_q(i, k, d, tr);
            require_check(checks, at + ": ord_P s" + std::to_string(i), op[static_cast<std::size_t>(i)], "==",
                          series.u_at(k, i - 1));
            require_check(checks, at + ": ord_Q s" + std::to_string(i), oq[static_cast<std::size_t>(i)], "==",
                          series.v_at(k, i - 1));
        }

        MaxRankStep step;
        step.k = k;
        step.a = tr.a;
        step.t = tr.t;
        step.eliminated = {tr.t, tr.a + 1};
        step.p_threshold = before;
        step.q_threshold = after;
        const auto ti = static_cast<std::size_t>(tr.t), ai = static_cast<std::size_t>(tr.a + 1);
        step.ord_p = op[ti] + op[ai];
        step.ord_q = oq[ti] + oq[ai];
        if (k > 1 && k < g) {
            require_check(checks, at + ": P threshold", before, "==", 2 * k - 3);
            require_check(checks, at + ": Q threshold", after, "==", 2 * d - 2 * k + 1);
        }
        require_check(checks, at + ": survivor ord_P", step.ord_p, "==", 2 * k - 2);
        require_check(checks, at + ": survivor ord_Q", step.ord_q, "==", 2 * d - 2 * k + 2);
        require_check(checks, at + ": survivor meets P threshold", step.ord_p, ">=", before);
        require_check(checks, at + ": survivor meets Q threshold", step.ord_q, ">=", after);

        for (int i = 1; i <= n; ++i) {
            for (int j = i; j <= n; ++j) {
                if (eliminated.count({i, j}) != 0 || std::pair{i, j} == step.eliminated) continue;
                const Int pp = op[static_cast<std::size_t>(i)] + op[static_cast<std::size_t>(j)];
                const Int qq = oq[static_cast<std::size_t>(i)] + oq[static_cast<std::size_t>(j)];
                const std::string pair = "s" + std::to_string(i) + "s" + std::to_string(j);
                require_check(checks, at + ": " + pair + " misses Q threshold", qq, "<", after);
                if (const auto table = detail::maxrank_table_q(i, j, k, d, tr); !table || *table != qq) {
                    cert.table_divergences.push_back(at + ": " + pair + " table " +
                                                     (table ? std::to_string(*table) : std::string("silent")) +
                                                     " vs derived " + std::to_string(qq));
                }
                step.rejected.push_back({i, j, pp, qq});
            }
        }
        if (!eliminated.insert(step.eliminated).second) {
            throw CertificateError(at + ": pair (" + std::to_string(tr.t) + "," + std::to_string(tr.a + 1) +
                                   ") eliminated twice");
        }
        cert.steps.push_back(std::move(step));
        before += cert.degree_distribution[static_cast<std::size_t>(k - 1)];
    }
    require_check(checks, "eliminated pairs cover all i <= j", static_cast<Int>(eliminated.size()), "==",
                  static_cast<Int>(n) * (n + 1) / 2);
    cert.extensions_note =
        "smaller codimension and non-square rectangles are covered by proof text (specialization), not recomputed";
    return cert;
}

// ---------------------------------------------------------------------------
// Distinctness of loci of equal codimension

enum class Verdict { Distinct, SameParameters, SerreDualPair, Inconclusive };

[[nodiscard]] inline const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::Distinct: return "Distinct";
    case Verdict::SameParameters: return "SameParameters";
    case Verdict::SerreDualPair: return "SerreDualPair";
    case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Unknown";
}

struct HypothesisReport {
    BnParams input;
    BnParams oriented; // alpha <= beta
    bool dualized = false;
    Int alpha = 0;
    Int beta = 0;
    Int e = 0;
    bool square = false;
    Int theorem_limit = 0; // (r+3)r/2 or (r^2-2r-1)/2
    Int lemma_limit = 0;   // (alpha+2)(alpha-1)/2 or (alpha^2-2)/2
    bool holds = false;
    bool limits_disagree = false;
};

struct DistinctnessVerdict {
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Int> A1;
    std::optional<Int> bound2;
    std::vector<HypothesisReport> hypotheses;
    std::string reason;
    std::string note;
    std::vector<CheckRecord> checks;
};

[[nodiscard]] inline HypothesisReport distinctness_hypothesis(const BnParams& p) {
    HypothesisReport h;
    h.input = p;
    const auto o = canonical(p);
    h.oriented = o.params;
    h.dualized = o.dualized;
    h.alpha = o.params.alpha();
    h.beta = o.params.beta();
    h.e = codimension(p);
    h.square = h.alpha == h.beta;
    const Int r = o.params.r;
    if (h.square) {
        // floor division toward -infinity keeps small r honest
        const Int num = r * r - 2 * r - 1;
        h.theorem_limit = num >= 0 ? num / 2 : -((-num + 1) / 2);
        h.lemma_limit = (h.alpha * h.alpha - 2) / 2;
    } else {
        h.theorem_limit = (r + 3) * r / 2;
        h.lemma_limit = (h.alpha + 2) * (h.alpha - 1) / 2;
    }
    h.holds = h.e <= h.theorem_limit;
    h.limits_disagree = h.theorem_limit != h.lemma_limit;
    return h;
}

[[nodiscard]] inline DistinctnessVerdict distinctness_check(const BnParams& p1, const BnParams& p2) {
    for (const BnParams* p : {&p1, &p2}) {
        if (rho(*p) >= 0) throw OutOfRangeError("distinctness needs rho < 0, got rho=" + std::to_string(rho(*p)) + " for " + to_string(*p));
    }
    DistinctnessVerdict out;
    out.note = "distance sums use e(alpha+beta-2); the form e(g+2r-d-2) differs by the constant e, which cancels "
               "when e1 = e2";
    if (p1.g != p2.g) {
        out.reason = "loci lie over different genera";
        return out;
    }
    if (p1.r == p2.r && p1.d == p2.d) {
        out.verdict = Verdict::SameParameters;
        out.reason = "(r, d) pairs coincide";
        return out;
    }
    bool dual_pair = false;
    try {
        dual_pair = serre_dual(p1) == p2;
    } catch (const OutOfRangeError&) {
        dual_pair = false;
    }
    if (dual_pair) {
        out.verdict = Verdict::SerreDualPair;
        out.reason = "the loci are Serre dual, hence equal";
        return out;
    }
    const Int e1 = codimension(p1), e2 = codimension(p2);
    out.hypotheses = {distinctness_hypothesis(p1), distinctness_hypothesis(p2)};
    if (e1 != e2) {
        out.reason = "codimensions differ (" + std::to_string(e1) + " vs " + std::to_string(e2) + ")";
        return out;
    }
    for (std::size_t n = 0; n < 2; ++n) {
        const auto& h = out.hypotheses[n];
        if (!h.holds) {
            out.reason = "locus " + std::to_string(n + 1) + " fails " +
                         std::string(h.square ? "e <= (r^2-2r-1)/2" : "e <= (r+3)r/2") + " (e=" + std::to_string(h.e) +
                         ", limit " + std::to_string(h.theorem_limit) + ")";
            return out;
        }
    }
    const auto& h1 = out.hypotheses[0];
    const auto& h2 = out.hypotheses[1];
    const Int per1 = h1.alpha + h1.beta, per2 = h2.alpha + h2.beta;
    if (per1 == per2) {
        out.reason = "rectangles have equal perimeter";
        return out;
    }
    const auto& big = per1 > per2 ? h1 : h2;
    const auto& small = per1 > per2 ? h2 : h1;
    out.A1 = max_distance_bound(big.alpha, big.beta, big.e);
    out.bound2 = max_distance_bound(small.alpha, small.beta, small.e);
    const Filling witness = optimal_separation_filling(static_cast<int>(big.alpha), static_cast<int>(big.beta),
                                                       static_cast<int>(big.e));
    record(out.checks, "A1 attained by an explicit filling", grid_distance_sum(witness), "==", *out.A1);
    const bool separated = record(out.checks, "bound on the smaller rectangle below A1", *out.bound2, "<", *out.A1);
    if (separated) {
        out.verdict = Verdict::Distinct;
        out.reason = "a chain realizing distance sum A1 admits no filling of the smaller-perimeter rectangle";
    } else {
        out.reason = "bound2 >= A1";
    }
    return out;
}

struct EnumerationConfirmation {
    bool confirmed = false;
    ChainSpec chain;
    std::optional<Filling> counterexample;
};

/// Builds the optimal chain for the larger-perimeter locus and checks by
/// enumeration that the other locus has no filling on it.
[[nodiscard]] inline EnumerationConfirmation confirm_distinct_by_enumeration(const BnParams& p1, const BnParams& p2,
                                                                             Int budget = kDefaultEnumerationBudget) {
    const auto h1 = distinctness_hypothesis(p1);
    const auto h2 = distinctness_hypothesis(p2);
    const bool first_big = h1.alpha + h1.beta > h2.alpha + h2.beta;
    const auto& big = first_big ? h1 : h2;
    const auto& small = first_big ? h2 : h1;
    const Filling witness = optimal_separation_filling(static_cast<int>(big.alpha), static_cast<int>(big.beta),
                                                       static_cast<int>(big.e));
    EnumerationConfirmation out{false, minimal_torsion_chain(witness), std::nullopt};
    for_each_filling(
        small.oriented, out.chain,
        [&](const Filling& f) {
            out.counterexample = f;
            return false;
        },
        budget);
    out.confirmed = !out.counterexample.has_value();
    return out;
}

// ---------------------------------------------------------------------------
// Inclusion screening

enum class InclusionStatus { KnownInclusion, OpenCandidate, ExcludedByCitedWork };

[[nodiscard]] inline const char* status_name(InclusionStatus s) {
    switch (s) {
    case InclusionStatus::KnownInclusion: return "KnownInclusion";
    case InclusionStatus::OpenCandidate: return "OpenCandidate";
    case InclusionStatus::ExcludedByCitedWork: return "ExcludedByCitedWork";
    }
    return "Unknown";
}

struct InclusionCandidate {
    int family = 0; // t
    int alpha1 = 0;
    BnParams smaller; // codimension 2
    BnParams larger;  // codimension 1, r = alpha1
    BnParams larger_oriented;
    InclusionStatus status = InclusionStatus::OpenCandidate;
    std::vector<CheckRecord> checks;
};

/// Checks the defining system of a potential inclusion of M^{r1}_{g,d1}
/// (codimension 2) in M^{r2}_{g,d2} (codimension 1).  Returns true when all
/// records hold.
inline bool verify_inclusion_system(const BnParams& p1, const BnParams& p2, std::vector<CheckRecord>& checks) {
    const Int a1 = p1.alpha(), b1 = p1.beta(), a2 = p2.alpha(), b2 = p2.beta();
    bool ok = record(checks, "same genus", p1.g, "==", p2.g);
    ok = record(checks, "rho of the smaller locus", rho(p1), "==", -2) && ok;
    ok = record(checks, "rho of the larger locus", rho(p2), "==", -1) && ok;
    ok = record(checks, "alpha1*beta1 = alpha2*beta2 + 1", a1 * b1, "==", a2 * b2 + 1) && ok;
    ok = record(checks, "alpha1 + beta1 <= alpha2 + beta2 + 1", a1 + b1, "<=", a2 + b2 + 1) && ok;
    ok = record(checks, "alpha2 = alpha1 + 1", a2, "==", a1 + 1) && ok;
    return ok;
}

/// Solutions of alpha1*beta1 - (alpha1+1)*beta2 = 1 on the boundary of the
/// inequalities, beta1 = 2 alpha1 + 1 - t(alpha1+1), beta2 = 2 alpha1 - 1 -
/// t alpha1, with degree > 1.  A candidate is listed when both loci have
/// oriented dimension r <= alpha_max.
[[nodiscard]] inline std::vector<InclusionCandidate> inclusion_candidates(int alpha_max) {
    if (alpha_max < 2) throw OutOfRangeError("alpha_max must be >= 2, got " + std::to_string(alpha_max));
    std::vector<InclusionCandidate> out;
    for (int t = 0;; ++t) {
        bool any_alpha = false;
        for (int alpha1 = 2; alpha1 <= alpha_max + 1; ++alpha1) {
            const Int beta1 = 2 * alpha1 + 1 - static_cast<Int>(t) * (alpha1 + 1);
            const Int beta2 = 2 * alpha1 - 1 - static_cast<Int>(t) * alpha1;
            if (beta1 < 1 || beta2 < 1) continue;
            any_alpha = true;
            const Int g = alpha1 * beta1 - 2;
            const Int r1 = alpha1 - 1, r2 = alpha1;
            const Int d1 = g - beta1 + r1, d2 = g - beta2 + r2;
            if (g < 2 || d1 <= 1 || d2 <= 1) continue;
            InclusionCandidate c;
            c.family = t;
            c.alpha1 = alpha1;
            c.smaller = BnParams::make(g, r1, d1);
            c.larger = BnParams::make(g, r2, d2);
            c.larger_oriented = canonical(c.larger).params;
            const Int top_r = std::max(canonical(c.smaller).params.r, c.larger_oriented.r);
            if (top_r > alpha_max) continue;
            if (!verify_inclusion_system(c.smaller, c.larger, c.checks)) {
                throw InternalError("generated inclusion candidate fails its defining system");
            }
            if ((t == 0 && alpha1 == 2) || (t == 1 && alpha1 == 3)) {
                c.status = InclusionStatus::KnownInclusion;
            } else if (alpha1 <= 3) {
                c.status = InclusionStatus::ExcludedByCitedWork;
            } else {
                c.status = InclusionStatus::OpenCandidate;
            }
            out.push_back(std::move(c));
        }
        if (!any_alpha) break;
    }
    return out;
}

} // namespace bnchain
