#include "altproj/angles.hpp"
#include "altproj/corpus.hpp"
#include "altproj/dynamics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace altproj;

TEST_CASE("index schedules") {
    const auto cyc = IndexSchedule::cyclic(3).take(7);
    CHECK(cyc == std::vector<std::size_t>{0, 1, 2, 0, 1, 2, 0});

    const auto ex = IndexSchedule::explicit_list(3, {2, 0}).take(5);
    CHECK(ex == std::vector<std::size_t>{2, 0, 2, 0, 2});
    CHECK_THROWS_AS(IndexSchedule::explicit_list(3, {}), InvalidArgument);
    CHECK_THROWS_AS(IndexSchedule::explicit_list(3, {3}), InvalidArgument);

    const auto r1 = IndexSchedule::random(4, 9).take(200);
    CHECK(r1 == IndexSchedule::random(4, 9).take(200));
    CHECK(r1 != IndexSchedule::random(4, 10).take(200));
    for (auto i : r1) CHECK(i < 4);

    for (std::size_t w : {4, 5, 7}) {
        const auto r = IndexSchedule::random(4, 3, w).take(300);
        for (std::size_t s = 0; s + w <= r.size(); ++s) {
            const std::set<std::size_t> seen(r.begin() + static_cast<long>(s), r.begin() + static_cast<long>(s + w));
            CHECK(seen.size() == 4);
        }
    }
    CHECK_THROWS_AS(IndexSchedule::random(4, 1, 3), InvalidArgument);
    CHECK_THROWS_AS(IndexSchedule::cyclic(0), InvalidArgument);
}

TEST_CASE("cyclic and product operators") {
    const auto orth = corpus::two_lines(M_PI / 2);
    CHECK(cyclic_operator(orth).norm() <= 1e-15);

    const auto s = Subspace::from_orthonormal(Matrix::Identity(3, 2));
    const SubspaceSystem same({s, s});
    CHECK((cyclic_operator(same) - same.projector_matrix(0)).norm() <= 1e-14);

    const auto ex = corpus::example3(12);
    const Matrix t = cyclic_operator(ex);
    CHECK((t - ex.projector_matrix(2) * ex.projector_matrix(1) * ex.projector_matrix(0)).norm() <= 1e-14);
    CHECK(operator_norm(t) < 1.0);
    CHECK((product_operator(ex, {0, 1, 2}) - t).norm() <= 1e-14);
    CHECK_THROWS_AS(product_operator(ex, {}), InvalidArgument);
    CHECK_THROWS_AS(product_operator(ex, {3}), InvalidArgument);
}

TEST_CASE("iterate_vector") {
    const auto ex = corpus::example3(12);
    CHECK_THROWS_AS(iterate_vector(ex, Vector::Ones(5), IndexSchedule::cyclic(3), 3), InvalidArgument);
    CHECK_THROWS_AS(iterate_vector(ex, Vector::Ones(12), IndexSchedule::cyclic(2), 3), InvalidArgument);

    // x0 in M is a fixed point
    const auto core = corpus::common_core(6, {3, 4}, 1, 4);
    const Vector x_in_m = core.intersection().basis().col(0);
    const auto fixed = iterate_vector(core, x_in_m, IndexSchedule::cyclic(2), 20);
    for (double e : fixed.errors) CHECK(e <= 1e-12);

    // two lines at 60 degrees: |(P2 P1)^n e1| = cos^{2n-1}, the operator rate itself
    const auto tl = corpus::two_lines(M_PI / 3);
    const auto tr = iterate_vector(tl, Vector::Unit(2, 0), IndexSchedule::cyclic(2), 10);
    const auto orth_start = iterate_vector(tl, Vector::Unit(2, 1), IndexSchedule::cyclic(2), 10);
    for (std::size_t n = 1; n <= 10; ++n) {
        const double envelope = std::pow(0.5, 2.0 * static_cast<double>(n) - 1.0);
        CHECK(tr.errors[n - 1] == doctest::Approx(envelope).epsilon(1e-10));
        CHECK(orth_start.errors[n - 1] <= envelope + 1e-12);
    }

    std::mt19937_64 rng(1);
    const Vector x0 = oracle::gaussian_vector(12, rng);
    const auto rnd = iterate_vector(ex, x0, IndexSchedule::random(3, 2, 3), 500);
    CHECK(rnd.errors.back() <= 1e-6);
    CHECK(rnd.steps.size() == 500);

    const auto ops = operator_error_norms(ex, 30);
    const auto cyc = iterate_vector(ex, x0, IndexSchedule::cyclic(3), 30);
    for (std::size_t i = 0; i < 30; ++i) {
        CHECK(cyc.errors[i] <= ops.errors[i] * x0.norm() + 1e-8);
        if (i > 0) CHECK(cyc.errors[i] <= cyc.errors[i - 1] + 1e-8);
    }
}

TEST_CASE("operator error norms") {
    for (double th : {0.3, 0.9, M_PI / 3}) {
        const auto ops = operator_error_norms(corpus::two_lines(th), 12);
        for (std::size_t n = 1; n <= 12; ++n)
            CHECK(std::abs(ops.errors[n - 1] - std::pow(std::cos(th), 2.0 * n - 1)) <= 1e-8);
    }
    CHECK(operator_error_norms(corpus::coordinate_axes(3), 3).errors.front() <= 1e-14);

    const auto ex = corpus::example3(12);
    const auto ops = operator_error_norms(ex, 300);
    for (std::size_t n = 1; n <= 300; ++n)
        CHECK(ops.errors[n - 1] <= std::pow(1 - std::pow(0.5 / 12, 2), n / 2.0) + 1e-9);

    std::vector<SubspaceSystem> systems = oracle::random_triples();
    for (auto& s : oracle::core_systems()) systems.push_back(std::move(s));
    for (const auto& sys : systems) {
        const auto e = operator_error_norms(sys, 60);
        for (std::size_t i = 1; i < e.errors.size(); ++i) CHECK(e.errors[i] <= e.errors[i - 1] + 1e-10);
    }
}

TEST_CASE("reduced minimum modulus") {
    CHECK(reduced_min_modulus(corpus::coordinate_axes(3)) == doctest::Approx(1.0).epsilon(1e-12));
    const auto s = Subspace::from_orthonormal(Matrix::Identity(3, 1));
    CHECK(reduced_min_modulus(SubspaceSystem({s, s})) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(reduced_min_modulus(SubspaceSystem({Subspace::full(2), Subspace::full(2)})),
                    UndefinedQuantity);
    const auto tl = corpus::two_lines(M_PI / 3);
    const Matrix ia = Matrix::Identity(2, 2) - cyclic_operator(tl);
    CHECK(std::abs(reduced_min_modulus(tl) - oracle::circle_min(ia)) <= 1e-6);
}

TEST_CASE("random product norms") {
    const auto ex = corpus::example3(12);
    const double once = random_product_norm(ex, {0, 1, 2});
    CHECK(once == doctest::Approx(operator_norm(cyclic_operator(ex) - ex.intersection_projector())));
    CHECK(random_product_norm(ex, {0, 1, 2, 0, 1, 2}) <= once + 1e-8);

    const auto s = Subspace::from_orthonormal(Matrix::Identity(3, 1));
    const SubspaceSystem same({s, s});
    CHECK(random_product_norm(same, {1}) <= 1e-14);

    for (const auto& sys : oracle::random_triples())
        CHECK(random_product_norm(sys, {2, 0, 1, 1}) <= 1 + 1e-8);
}

TEST_CASE("projection chain inequality per vector") {
    std::mt19937_64 rng(8);
    auto systems = oracle::random_triples();
    systems.push_back(corpus::example3(12));
    for (const auto& sys : systems) {
        const Vector x = oracle::gaussian_vector(sys.ambient_dim(), rng);
        const Vector limit = sys.intersection_projector() * x;
        Vector prev = x - limit;
        const double tail = ((cyclic_operator(sys) * x) - limit).squaredNorm();
        Vector run = x;
        for (std::size_t j = 0; j < sys.size(); ++j) {
            run = sys.projector_matrix(j) * run;
            const Vector u = run - limit;
            CHECK((prev - u).squaredNorm() <= prev.squaredNorm() - tail + 1e-8);
            prev = u;
        }
    }
}

TEST_CASE("slow sequences") {
    const auto p = SlowSequence::power(0.5);
    CHECK(p(1) == doctest::Approx(1 / std::sqrt(3.0)));
    CHECK(SlowSequence::log_decay()(2) == doctest::Approx(1 / std::log(4.0)));
    CHECK_THROWS_AS(SlowSequence::power(0.0), InvalidArgument);
    CHECK_THROWS_AS((void)p(0), InvalidArgument);

    const auto list = SlowSequence::explicit_values({0.5, 0.4, 0.4});
    CHECK(list.values(3).size() == 3);
    CHECK_THROWS_AS((void)list.values(4), InvalidArgument);
    CHECK_THROWS_AS((void)SlowSequence::explicit_values({0.1, 0.2}).values(2), InvalidArgument);
    CHECK_THROWS_AS((void)SlowSequence::explicit_values({-0.1}).values(1), InvalidArgument);
}

TEST_CASE("slow vector probe") {
    const auto seq = SlowSequence::power(0.5);
    const auto angles = corpus::inverse_k_angles(60);
    const auto res = slow_vector_probe(angles, seq, 100);
    REQUIRE(res.success);
    CHECK(res.achieved_horizon == 100);
    CHECK(res.norm <= res.norm_budget);
    const auto sys = corpus::tilted_pairs(angles);
    const auto tr = iterate_vector(sys, res.x, IndexSchedule::cyclic(2), 100);
    for (std::size_t n = 1; n <= 100; ++n) CHECK(tr.errors[n - 1] >= seq(n));

    const auto fail = slow_vector_probe(corpus::inverse_k_angles(1), SlowSequence::log_decay(), 100);
    CHECK_FALSE(fail.success);
    CHECK(fail.achieved_horizon < 100);

    const auto zeros = slow_vector_probe({0.5}, SlowSequence::explicit_values(std::vector<double>(10, 0.0)), 10);
    CHECK(zeros.success);

    CHECK_THROWS_AS(slow_vector_probe(angles, seq, 0), InvalidArgument);
    CHECK_THROWS_AS(slow_vector_probe({}, seq, 10), InvalidArgument);
    CHECK_THROWS_AS(slow_vector_probe({2.0}, seq, 10), InvalidArgument);
}
