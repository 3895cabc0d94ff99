#pragma once

// JSON and TSV emitters for the CLI.  All output is deterministic: ordered
// keys, sorted lists, no whitespace variation.

#include <string>

#include <json.hpp>

#include "k3fm/heegner.hpp"

namespace k3fm {

using ordered_json = nlohmann::ordered_json;

inline ordered_json gram_to_json(const IMat& g) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < g.cols(); ++j) row.push_back(g(i, j));
        rows.push_back(row);
    }
    return rows;
}

inline ordered_json group_json(Int d) {
    std::vector<GroupElement> elems = group_elements(d);
    ordered_json reps = ordered_json::array();
    for (const GroupElement& g : elems) reps.push_back(g.rep);
    return ordered_json{{"d", d}, {"order", elems.size()}, {"reps", reps}};
}

inline ordered_json fm_count_json(Int d) {
    return ordered_json{{"d", d}, {"fm_count", fm_partner_count(d)}};
}

inline ordered_json factorizations_json(Int d) {
    ordered_json pairs = ordered_json::array();
    ordered_json table = ordered_json::array();
    for (const CoprimePair& p : coprime_factorizations(d)) {
        pairs.push_back({p.r, p.s});
        table.push_back(ordered_json{{"pair", {p.r, p.s}},
                                     {"rep", mukai_group_element(d, p).rep}});
    }
    return ordered_json{{"d", d}, {"pairs", pairs}, {"table", table}};
}

inline ordered_json fixed_divisors_json(const FixedLocusReport& r) {
    ordered_json entries = ordered_json::array();
    for (const auto& [g, list] : r.entries) {
        ordered_json fixed = ordered_json::array();
        for (const HeegnerInvariant& inv : list)
            fixed.push_back(ordered_json{{"n", inv.norm}, {"div", inv.div}, {"t", inv.t}});
        entries.push_back(ordered_json{{"rep", g.rep}, {"fixed", fixed}});
    }
    return ordered_json{{"d", r.d}, {"entries", entries}};
}

inline ordered_json cubic_json(Int two_d) {
    return ordered_json{{"two_d", two_d}, {"admissible", cubic_admissible(two_d)}};
}

inline ordered_json ns_gram_json(Int d, const ReflectiveCandidate& c, const IMat& gram) {
    return ordered_json{{"d", d},
                        {"alpha", c.k_coeff},
                        {"m", c.content},
                        {"jsq", c.unim_square},
                        {"gram", gram_to_json(gram)}};
}

inline ordered_json scan_row_json(Int d, const FixedLocusReport& report) {
    ordered_json classes = ordered_json::array();
    for (const auto& [g, list] : report.entries)
        for (const HeegnerInvariant& inv : list)
            classes.push_back(ordered_json{
                {"rep", g.rep}, {"n", inv.norm}, {"div", inv.div}, {"t", inv.t}});
    return ordered_json{{"d", d},
                        {"group_order", group_elements(d).size()},
                        {"fm_count", fm_partner_count(d)},
                        {"n_fixed_classes", report.total_classes()},
                        {"classes", classes},
                        {"cubic_admissible", cubic_admissible(2 * d)}};
}

inline std::string scan_row_tsv(Int d, const FixedLocusReport& report) {
    std::string cls;
    for (const auto& [g, list] : report.entries)
        for (const HeegnerInvariant& inv : list) {
            if (!cls.empty()) cls += ';';
            cls += std::to_string(inv.norm) + ':' + std::to_string(inv.div) +
                   ':' + std::to_string(inv.t);
        }
    if (cls.empty()) cls = "-";
    std::string row = std::to_string(d);
    row += '\t' + std::to_string(group_elements(d).size());
    row += '\t' + std::to_string(fm_partner_count(d));
    row += '\t' + std::to_string(report.total_classes());
    row += '\t' + cls;
    row += '\t' + std::string(cubic_admissible(2 * d) ? "yes" : "no");
    return row;
}

}  // namespace k3fm
