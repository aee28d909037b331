#include "qmz/kernel.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>

#include "qmz/errors.hpp"
#include "qmz/types.hpp"

using namespace qmz;

TEST_CASE("q parameter accepts (0,1) and rejects the rest") {
    const QParam q(0.5);
    CHECK(q.q == 0.5);
    CHECK(q.log_q == doctest::Approx(std::log(0.5)).epsilon(1e-15));

    CHECK_THROWS_AS(QParam(0.0), domain_error);
    CHECK_THROWS_AS(QParam(1.0), domain_error);
    CHECK_THROWS_AS(QParam(-0.3), domain_error);
    CHECK_THROWS_AS(QParam(1.7), domain_error);
    CHECK_THROWS_AS(QParam(std::numeric_limits<double>::quiet_NaN()), domain_error);
}

TEST_CASE("q-bracket matches the geometric sum") {
    const QParam q(0.5);
    CHECK(q_bracket(1, q) == doctest::Approx(1.0));
    CHECK(q_bracket(2, q) == doctest::Approx(1.5));
    CHECK(q_bracket(3, q) == doctest::Approx(1.75));
    // [k] -> 1/(1-q) as k grows
    CHECK(q_bracket(200, q) == doctest::Approx(2.0).epsilon(1e-15));

    const QParam q2(0.3);
    double acc = 0.0;
    for (int k = 1; k <= 12; ++k) {
        acc += std::pow(0.3, k - 1);
        CHECK(q_bracket(k, q2) == doctest::Approx(acc).epsilon(1e-14));
    }
}

TEST_CASE("real-base complex power agrees with exp(s log b)") {
    const Cplx s(1.3, -0.7);
    const Cplx direct = cpow_real_base(2.5, s);
    const Cplx ref = std::exp(s * std::log(2.5));
    CHECK(std::abs(direct - ref) <= 1e-15 * std::abs(ref));
    CHECK(cpow_real_base(3.0, Cplx(0.0, 0.0)) == Cplx(1.0, 0.0));
    CHECK(std::abs(cpow_real_base(4.0, Cplx(0.5, 0.0)) - Cplx(2.0, 0.0)) < 1e-15);
}

TEST_CASE("rising factorial recursion and special values") {
    CHECK(rising_factorial(Cplx(2.7, 0.4), 0) == Cplx(1.0, 0.0));
    const Cplx s(1.2, -0.3);
    Cplx prod(1.0, 0.0);
    for (int k = 0; k < 8; ++k) {
        CHECK(std::abs(rising_factorial(s, k) - prod) <= 1e-13 * std::abs(prod));
        prod *= s + static_cast<double>(k);
    }
    // (1)_k = k!
    CHECK(std::abs(rising_factorial(Cplx(1.0, 0.0), 6) - Cplx(720.0, 0.0)) < 1e-10);
    // (-3)_5 hits zero at the factor s+3
    CHECK(std::abs(rising_factorial(Cplx(-3.0, 0.0), 5)) == 0.0);
}

TEST_CASE("pole factor vanishes exactly on the lattice") {
    const QParam q(0.5);
    // q_i(t) = q^{-(t+i)} - 1 = 0 iff t+i in (2 pi i/log q) Z
    CHECK(std::abs(q_pole_factor(Cplx(0.0, 0.0), 0, q)) == 0.0);
    CHECK(std::abs(q_pole_factor(Cplx(-2.0, 0.0), 2, q)) == 0.0);
    const double period = 2.0 * 3.14159265358979323846 / q.log_q;
    CHECK(std::abs(q_pole_factor(Cplx(0.0, period), 0, q)) < 1e-12);
    CHECK(std::abs(q_pole_factor(Cplx(0.5, 0.0), 0, q)) > 0.1);
    // q_0(1) = 1/q - 1
    CHECK(std::abs(q_pole_factor(Cplx(1.0, 0.0), 0, q) - Cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("factorial is exact in range and infinite past it") {
    CHECK(factorial(0) == 1.0);
    CHECK(factorial(5) == 120.0);
    CHECK(factorial(10) == 3628800.0);
    CHECK(factorial(170) < std::numeric_limits<double>::infinity());
    CHECK(factorial(171) == std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(factorial(-1), argument_error);
    CHECK_THROWS_AS(rising_factorial(Cplx(1.0, 0.0), -2), argument_error);
}

TEST_CASE("partial sums and their minimum real part") {
    const ArgVector s = {Cplx(2.0, 1.0), Cplx(-1.5, 0.0), Cplx(0.25, -2.0)};
    CHECK(partial_sum(s, 1) == Cplx(2.0, 1.0));
    CHECK(partial_sum(s, 2) == Cplx(0.5, 1.0));
    CHECK(partial_sum(s, 3) == Cplx(0.75, -1.0));
    CHECK(min_partial_re(s) == doctest::Approx(0.5));
}

TEST_CASE("model names are stable strings") {
    CHECK(std::string(model_name(Model::SZ)) == "sz");
    CHECK(std::string(model_name(Model::SZ_STAR)) == "sz_star");
    CHECK(std::string(model_name(Model::BZ)) == "bz");
    CHECK(std::string(model_name(Model::FQ_GENERAL)) == "fq");
}
