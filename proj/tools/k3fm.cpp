#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "k3fm/serialize.hpp"

namespace {

using namespace k3fm;

void print_json(const ordered_json& j) { std::cout << j.dump() << "\n"; }

std::string class_str(const FixedClass& c) {
    return "rep=" + std::to_string(c.g.rep) + " n=" + std::to_string(c.inv.norm) +
           " div=" + std::to_string(c.inv.div) + " t=" + std::to_string(c.inv.t);
}

// side-by-side diff of two sorted class lists, written to stderr
void report_mismatch(const char* left_name, const std::vector<FixedClass>& left,
                     const char* right_name, const std::vector<FixedClass>& right) {
    for (const FixedClass& c : left)
        if (!std::binary_search(right.begin(), right.end(), c))
            std::cerr << "only in " << left_name << ": " << class_str(c) << "\n";
    for (const FixedClass& c : right)
        if (!std::binary_search(left.begin(), left.end(), c))
            std::cerr << "only in " << right_name << ": " << class_str(c) << "\n";
}

int run_fixed_divisors(Int d, bool oracle, Int bound) {
    FixedLocusReport report = classify_fixed_divisors(d);
    if (oracle) {
        if (bound <= 0) bound = 2 * d;
        std::vector<FixedClass> fast = classes_of(report);
        std::vector<FixedClass> slow = brute_force_classify(d, bound);
        std::vector<FixedClass> slow2 = brute_force_classify(d, 2 * bound);
        if (fast != slow || fast != slow2) {
            if (fast != slow) report_mismatch("classifier", fast, "search", slow);
            if (fast != slow2) report_mismatch("classifier", fast, "wider search", slow2);
            return 1;
        }
    }
    print_json(fixed_divisors_json(report));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic for degree-2d K3 moduli: the multiplier group, "
                 "Mukai partner counts, and Heegner divisors fixed by reflections"};
    app.require_subcommand(1);

    Int d = 1, d_hi = 1, two_d = 2, alpha = 0, m = 1, jsq = 0, bound = 0;
    bool oracle = false;
    std::string format = "json";
    int rc = 0;

    auto* grp = app.add_subcommand("group", "multiplier group of degree 2d");
    grp->add_option("d", d, "half degree, positive")->required()->check(CLI::PositiveNumber);
    grp->callback([&] { print_json(group_json(d)); });

    auto* fmc = app.add_subcommand("fm-count", "number of Fourier-Mukai partners");
    fmc->add_option("d", d, "half degree, positive")->required()->check(CLI::PositiveNumber);
    fmc->callback([&] { print_json(fm_count_json(d)); });

    auto* fac = app.add_subcommand("factorizations",
                                   "coprime factorizations of d and their group elements");
    fac->add_option("d", d, "half degree, positive")->required()->check(CLI::PositiveNumber);
    fac->callback([&] { print_json(factorizations_json(d)); });

    auto* fix = app.add_subcommand("fixed-divisors",
                                   "Heegner divisor classes fixed per nontrivial element");
    fix->add_option("d", d, "half degree, positive")->required()->check(CLI::PositiveNumber);
    auto* ofl = fix->add_flag("--oracle", oracle, "cross-check against the bounded vector search");
    fix->add_option("--bound", bound, "search box radius, default 2d")
        ->check(CLI::PositiveNumber)
        ->needs(ofl);
    fix->callback([&] { rc = run_fixed_divisors(d, oracle, bound); });

    auto* cub = app.add_subcommand("cubic", "can the polarization degree arise on a cubic fourfold");
    cub->add_option("two_d", two_d, "polarization degree 2d, positive even")
        ->required()
        ->check(CLI::PositiveNumber);
    cub->callback([&] { print_json(cubic_json(two_d)); });

    auto* nsg = app.add_subcommand("ns-gram",
                                   "generic Neron-Severi Gram along a fixed divisor");
    nsg->add_option("d", d, "half degree, positive")->required()->check(CLI::PositiveNumber);
    nsg->add_option("--alpha", alpha, "coefficient on the polarization dual")->required();
    nsg->add_option("--m", m, "content of the unimodular part")->required();
    nsg->add_option("--jsq", jsq, "square of the primitive part")->required();
    nsg->callback([&] {
        ReflectiveCandidate cand{alpha, m, jsq};
        print_json(ns_gram_json(d, cand, generic_ns_gram(d, cand)));
    });

    auto* scn = app.add_subcommand("scan", "summary rows for a range of half degrees");
    scn->add_option("d1", d, "first half degree")->required()->check(CLI::PositiveNumber);
    scn->add_option("d2", d_hi, "last half degree")->required()->check(CLI::PositiveNumber);
    scn->add_option("--format", format, "json or tsv")
        ->check(CLI::IsMember({"json", "tsv"}));
    scn->callback([&] {
        if (d_hi < d) throw std::invalid_argument("scan range is empty");
        if (format == "tsv")
            std::cout << "d\tgroup_order\tfm_count\tn_fixed_classes\tclasses\tcubic\n";
        for (Int dd = d; dd <= d_hi; ++dd) {
            FixedLocusReport report = classify_fixed_divisors(dd);
            if (format == "tsv")
                std::cout << scan_row_tsv(dd, report) << "\n";
            else
                print_json(scan_row_json(dd, report));
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
