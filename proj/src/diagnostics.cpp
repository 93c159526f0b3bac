#include "altproj/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace altproj {

namespace {

double ell_lower(const SubspaceSystem& system) {
    return inclination_bounds(configuration_constant(system), system.size()).lower;
}

}  // namespace

const BoundEntry* BoundReport::find(const std::string& name) const {
    for (const auto& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

bool BoundReport::all_satisfied() const {
    return std::all_of(entries.begin(), entries.end(), [](const BoundEntry& e) { return e.satisfied; });
}

BoundEntry make_entry(std::string name, std::vector<double> measured, std::vector<double> bound,
                      double tol) {
    if (measured.size() != bound.size()) throw InvalidArgument("make_entry: series length mismatch");
    BoundEntry e;
    e.name = std::move(name);
    e.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < measured.size(); ++i) e.margin = std::min(e.margin, bound[i] - measured[i]);
    e.measured = std::move(measured);
    e.bound = std::move(bound);
    e.satisfied = e.margin >= -tol;
    return e;
}

BoundEntry kw_check(const SubspaceSystem& system, std::size_t n_max) {
    if (system.size() != 2) throw InvalidArgument("kw_check: needs exactly two subspaces");
    const double c = friedrichs_number(system);
    auto trace = operator_error_norms(system, n_max);
    std::vector<double> predicted;
    double worst = 0.0;
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        predicted.push_back(std::pow(c, 2.0 * static_cast<double>(trace.steps[i]) - 1.0));
        worst = std::max(worst, std::abs(trace.errors[i] - predicted.back()));
    }
    BoundEntry e;
    e.name = "KW";
    e.measured = std::move(trace.errors);
    e.bound = std::move(predicted);
    e.margin = -worst;
    e.satisfied = e.margin >= -system.tolerance().check_tol;
    e.note = "equality; margin is minus the largest deviation";
    return e;
}

BoundEntry cor_main_check(const SubspaceSystem& system, std::size_t n_max) {
    if (system.degenerate()) throw InvalidArgument("cor_main_check: degenerate system");
    const double c = friedrichs_number(system);
    const double n = static_cast<double>(system.size());
    const double base = 1.0 - std::pow((1.0 - c) / (4.0 * n), 2.0);
    auto trace = operator_error_norms(system, n_max);
    std::vector<double> bound;
    for (auto step : trace.steps) bound.push_back(std::pow(base, static_cast<double>(step) / 2.0));
    return make_entry("corMain", std::move(trace.errors), std::move(bound), system.tolerance().check_tol);
}

BoundEntry dehu_check(const SubspaceSystem& system, std::size_t n_max) {
    const Matrix table = pairwise_dixmier_reduced(system);
    const auto n = static_cast<Index>(system.size());
    double chain = 1.0;
    for (Index i = 0; i + 1 < n; ++i) chain *= table(i, i + 1);
    const double closing = table(0, n - 1);
    auto trace = operator_error_norms(system, n_max);
    std::vector<double> bound;
    for (auto step : trace.steps) {
        const double s = static_cast<double>(step);
        bound.push_back(std::pow(closing, s - 1.0) * std::pow(chain, s));
    }
    auto e = make_entry("DeHu", std::move(trace.errors), std::move(bound), system.tolerance().check_tol);
    const bool uninformative = std::all_of(e.bound.begin(), e.bound.end(),
                                           [](double b) { return b >= 1.0 - 1e-12; });
    if (uninformative) e.note = "uninformative: every consecutive reduced Dixmier number is 1";
    return e;
}

std::vector<BoundEntry> estimc_check(const SubspaceSystem& system) {
    const double c = friedrichs_number(system);
    const auto prefix = prefix_friedrichs(system);
    const double n = static_cast<double>(system.size());
    double prod1 = 1.0;
    double prod2 = 1.0;
    for (double cj : prefix) {
        prod1 *= std::pow(1.0 - std::sqrt((cj + 1.0) / 2.0), 2.0);
        prod2 *= std::pow(1.0 - cj, 2.0);
    }
    const double b1 = 1.0 - prod1 / (n - 1.0);
    const double b2 = 1.0 - prod2 / ((n - 1.0) * std::pow(4.0, n - 1.0));
    const double tol = system.tolerance().check_tol;
    auto first = make_entry("estimC", {c}, {b1}, tol);
    auto second = make_entry("estimC2", {c}, {b2}, tol);
    // 1 - sqrt((c+1)/2) >= (1-c)/4 only, so with 4^{N-1} the second bound can
    // fall below the first; it is still checked against c directly.
    if (b1 > b2 + tol) second.note = "tighter than estimC; the chain needs 16^{N-1} to hold";
    return {first, second};
}

BoundEntry eq_norm_check(const SubspaceSystem& system) {
    const double ell = ell_lower(system);
    const double n = static_cast<double>(system.size());
    const double measured = operator_norm(cyclic_operator(system) - system.intersection_projector());
    auto e = make_entry("eqNorm", {measured}, {std::sqrt(std::max(0.0, 1.0 - ell * ell / (n * n)))},
                        system.tolerance().check_tol);
    e.note = "inclination replaced by its lower bound 1 - sqrt(kappa)";
    return e;
}

std::vector<BoundEntry> eq_qua_check(const SubspaceSystem& system, const InclinationEstimate& incl) {
    const double gamma = reduced_min_modulus(system);
    const double n = static_cast<double>(system.size());
    const double tol = system.tolerance().check_tol;
    const double ell = incl.lower;
    auto lower = make_entry("eqQuaLower", {ell * ell / (2.0 * n * n)}, {gamma}, tol);
    lower.note = "measured is l^2/(2N^2) with l = 1 - sqrt(kappa); bound is gamma";
    auto upper = make_entry("eqQuaUpper", {gamma}, {(std::pow(2.0, n) - 1.0) * incl.estimate}, tol);
    upper.note = "inclination replaced by the optimizer value, an upper bound";
    return {lower, upper};
}

BoundEntry remark_check(const SubspaceSystem& system,
                        const std::vector<std::vector<std::size_t>>& index_lists) {
    const double ell = ell_lower(system);
    std::vector<double> measured, bound;
    for (const auto& list : index_lists) {
        const double k = static_cast<double>(list.size());
        measured.push_back(random_product_norm(system, list));
        bound.push_back(std::sqrt(std::max(0.0, 1.0 - ell * ell / (k * k))));
    }
    auto e = make_entry("remarkK", std::move(measured), std::move(bound), system.tolerance().check_tol);
    e.note = "one value per covering index list; l = 1 - sqrt(kappa)";
    return e;
}

std::vector<std::vector<std::size_t>> covering_index_lists(std::size_t n, std::size_t random_count,
                                                           std::uint64_t seed) {
    std::vector<std::size_t> cyclic(n);
    std::iota(cyclic.begin(), cyclic.end(), std::size_t{0});
    std::vector<std::vector<std::size_t>> lists{cyclic, {cyclic.rbegin(), cyclic.rend()}};
    auto doubled = cyclic;
    doubled.insert(doubled.end(), cyclic.begin(), cyclic.end());
    lists.push_back(doubled);

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> length(n, 2 * n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t r = 0; r < random_count; ++r) {
        const std::size_t k = length(rng);
        // a shuffled permutation guarantees coverage; the remaining slots are free
        std::vector<std::size_t> list = cyclic;
        std::shuffle(list.begin(), list.end(), rng);
        while (list.size() < k) list.push_back(pick(rng));
        std::shuffle(list.begin(), list.end(), rng);
        lists.push_back(std::move(list));
    }
    return lists;
}

DichotomyVerdict dichotomy_report(const SubspaceSystem& system, const InclinationBudget& budget) {
    if (system.degenerate()) throw InvalidArgument("dichotomy_report: degenerate system");
    DichotomyVerdict v;
    v.kappa = configuration_constant(system);
    v.c = friedrichs_number(system);
    v.cyclic_error_norm = operator_norm(cyclic_operator(system) - system.intersection_projector());
    v.min_modulus = reduced_min_modulus(system);
    v.inclination = inclination(system, budget);
    v.margin = 1.0 - v.c;
    v.near_asc = v.margin < near_asc_margin;
    v.consistent = v.c < 1.0 && v.cyclic_error_norm < 1.0 && v.min_modulus > 0.0;
    v.note = "finite dimension: sums are closed and convergence is always quick and uniform; "
             "arbitrarily slow convergence needs c -> 1 along a family of systems";
    if (v.near_asc) v.note += "; near-ASC: 1 - c < " + std::to_string(near_asc_margin);
    return v;
}

BoundReport bound_report(const SubspaceSystem& system, std::size_t n_max, const InclinationBudget& budget) {
    BoundReport report;
    report.degenerate = system.degenerate();
    if (system.size() == 2) report.entries.push_back(kw_check(system, n_max));
    if (!report.degenerate) report.entries.push_back(cor_main_check(system, n_max));
    report.entries.push_back(dehu_check(system, n_max));
    for (auto& e : estimc_check(system)) report.entries.push_back(std::move(e));
    if (!report.degenerate) {
        report.entries.push_back(eq_norm_check(system));
        const auto incl = inclination(system, budget);
        for (auto& e : eq_qua_check(system, incl)) report.entries.push_back(std::move(e));
        report.entries.push_back(remark_check(system, covering_index_lists(system.size(), 10, budget.seed)));
    }
    return report;
}

}  // namespace altproj
