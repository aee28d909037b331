#include "qmz/coefficients.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

#include "qmz/errors.hpp"
#include "qmz/kernel.hpp"
#include "qmz/types.hpp"

using namespace qmz;

namespace {

double rel(Cplx got, Cplx want) { return std::abs(got - want) / std::abs(want); }

// t uniform in a box, rejected while any t+i (i < n-1) sits near the real lattice
Cplx safe_t(std::mt19937_64& eng, int n, const QParam& q) {
    std::uniform_real_distribution<double> re(-2.0, 2.0), im(-1.5, 1.5);
    for (;;) {
        const Cplx t(re(eng), im(eng));
        bool ok = true;
        for (int i = 0; i <= n - 2; ++i)
            if (std::abs(q_pole_factor(t, i, q)) < 0.05) ok = false;
        if (ok) return t;
    }
}

}  // namespace

TEST_CASE("partition enumeration without unit parts") {
    CHECK(partitions_no_ones(0).empty());
    CHECK(partitions_no_ones(1).empty());
    const int counts[] = {1, 1, 2, 2, 4, 4, 7};  // i = 2..8
    for (int i = 2; i <= 8; ++i)
        CHECK(partitions_no_ones(i).size() == static_cast<std::size_t>(counts[i - 2]));

    for (const auto& p : partitions_no_ones(7)) {
        CHECK(p.total() == 7);
        for (std::size_t a = 1; a < p.parts.size(); ++a) CHECK(p.parts[a - 1] >= p.parts[a]);
        for (int part : p.parts) CHECK(part >= 2);
    }

    const Partition even{{2, 2}};
    CHECK(even.all_parts_equal());
    const Partition mixed{{3, 2}};
    CHECK_FALSE(mixed.all_parts_equal());
}

TEST_CASE("two-sided block sum composes forward and reversed orderings") {
    const QParam q(0.6);
    const Cplx t(0.4, -0.8);
    SUBCASE("equal parts collapse to one ordering") {
        const Partition p{{2, 2}};
        CHECK(rel(u_sum(p, t, 6, q), arrangement_sum({2, 2}, t, 6, q)) < 1e-14);
    }
    SUBCASE("unequal parts add the reversal") {
        const Partition p{{3, 2}};
        const Cplx both = arrangement_sum({3, 2}, t, 6, q) + arrangement_sum({2, 3}, t, 6, q);
        CHECK(rel(u_sum(p, t, 6, q), both) < 1e-14);
    }
}

TEST_CASE("pinned coefficient values") {
    const QParam q(0.5);
    CHECK(rel(L_n(2, Cplx(1, 0), q), Cplx(1.0, 0.0)) < 1e-14);
    CHECK(rel(L_n(3, Cplx(1, 0), q), Cplx(5.0 / 6.0, 0.0)) < 1e-14);
    CHECK(rel(hessenberg_det(3, Cplx(1, 0), q), Cplx(5.0 / 3.0, 0.0)) < 1e-14);

    const QParam q2(0.55);
    const Cplx want(0.55363812703451973939, -0.34543803674845834493);
    CHECK(rel(L_n(5, Cplx(0.7, 0.2), q2), want) < 1e-13);

    const QParam q3(0.7);
    const Cplx d16(182.08477877518434792, -25.222440376690725781);
    CHECK(rel(hessenberg_det(6, Cplx(0.3, 1.1), q3), d16) < 1e-13);
}

TEST_CASE("determinant equals prefactor times partition sum") {
    std::mt19937_64 eng(20240817);
    std::uniform_real_distribution<double> qd(0.25, 0.65);
    for (int trial = 0; trial < 25; ++trial) {
        const QParam q(qd(eng));
        const int n = 2 + static_cast<int>(eng() % 8);  // 2..9
        const Cplx t = safe_t(eng, n, q);
        const Cplx det = hessenberg_det(n, t, q);
        const Cplx fac = rising_factorial(t, n - 1) * L_n(n, t, q);
        CHECK(rel(det, fac) < 1e-11);
        if (n <= 7) CHECK(rel(det, permutation_det(n, t, q)) < 1e-11);
    }
}

TEST_CASE("restricted permutation expansion is an oracle only up to nine") {
    CHECK_THROWS_AS(permutation_det(10, Cplx(0.5, 0.5), QParam(0.5)), argument_error);
}

TEST_CASE("coefficient table mirrors the scalar functions") {
    const QParam q(0.45);
    const Cplx t(0.9, 0.6);
    const CoeffTable table(t, 6, q);
    CHECK(table.base_t() == t);
    CHECK(table.n_max() == 6);
    for (int n = 1; n <= 6; ++n) CHECK(rel(table.L(n), L_n(n, t, q)) < 1e-13);
    for (int i = 0; i <= 4; ++i)
        CHECK(rel(table.inv_q(i), 1.0 / q_pole_factor(t, i, q)) < 1e-13);
    CHECK_THROWS_AS(table.L(0), argument_error);
    CHECK_THROWS_AS(table.L(7), argument_error);
    CHECK_THROWS_AS(table.inv_q(5), argument_error);
}

TEST_CASE("near-singular base points refuse loudly") {
    const QParam q(0.5);
    // q_0(t) = 0 at t = 0
    CHECK_THROWS_AS(L_n(3, Cplx(0.0, 0.0), q), singular_coefficient);
    // q_2(t) = 0 at t = -2
    CHECK_THROWS_AS(L_n(4, Cplx(-2.0, 0.0), q), singular_coefficient);
    try {
        L_n(4, Cplx(-2.0, 0.0), q);
    } catch (const singular_coefficient& e) {
        CHECK(e.index == 2);
    }
}
