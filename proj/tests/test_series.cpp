#include "qmz/series.hpp"

#include <doctest.h>

#include <cmath>

#include "qmz/errors.hpp"
#include "qmz/types.hpp"

using namespace qmz;

namespace {

// 40-digit reference values, brute-forced over the simplex with mpmath
constexpr double kZ2 = 0.28433468408604914917;       // sz (2), q=0.5
constexpr double kZ21 = 0.018377072403755094269;     // sz (2,1), q=0.5
constexpr double kZ3 = 0.13003586359018909751;       // sz (3), q=0.5
constexpr double kBz = 0.056100355255948799203;      // bz (2.5,2.2), q=0.6
constexpr double kStar = 0.044879713382589052686;    // star (2,1.5), q=0.4
constexpr double kFq = 0.18367262499328399409;       // f_q (1.5,-0.5);(0.8,0.4), q=0.35
constexpr double kDepth3 = 0.080226774715934861988;  // sz (0.8,0.6,0.4), q=0.45

double rel(Cplx got, double want) { return std::abs(got - Cplx(want, 0.0)) / std::abs(want); }

}  // namespace

TEST_CASE("convergence domains per model") {
    // strict model: every partial real part positive
    CHECK(in_domain(Model::SZ, {Cplx(2, 0)}));
    CHECK(in_domain(Model::SZ, {Cplx(2, 0), Cplx(-1.5, 0)}));
    CHECK_FALSE(in_domain(Model::SZ, {Cplx(2, 0), Cplx(-2.5, 0)}));
    CHECK_FALSE(in_domain(Model::SZ, {Cplx(0, 3)}));
    CHECK(in_domain(Model::SZ_STAR, {Cplx(0.1, -4), Cplx(0.2, 0)}));
    // bz: partial j must exceed j
    CHECK(in_domain(Model::BZ, {Cplx(1.5, 0), Cplx(0.6, 0)}));
    CHECK_FALSE(in_domain(Model::BZ, {Cplx(1.5, 0), Cplx(0.4, 0)}));
    CHECK_FALSE(in_domain(Model::BZ, {Cplx(1.0, 0)}));
    // fq: the exponent vector governs, not s
    const ArgVector s = {Cplx(-3, 0), Cplx(5, 0)};
    const ArgVector t_good = {Cplx(1, 0), Cplx(-0.5, 0)};
    const ArgVector t_bad = {Cplx(1, 0), Cplx(-1.5, 0)};
    CHECK(in_domain(Model::FQ_GENERAL, s, &t_good));
    CHECK_FALSE(in_domain(Model::FQ_GENERAL, s, &t_bad));
}

TEST_CASE("direct series reproduces reference values") {
    const SumBudget tight{20000, 1e-13};
    SUBCASE("depth 1") {
        const EvalResult r = eval_series(Model::SZ, {Cplx(2, 0)}, QParam(0.5), tight);
        CHECK(r.converged);
        CHECK(rel(r.value, kZ2) < 1e-12);
        CHECK(std::abs(r.value - Cplx(kZ2, 0.0)) <= 10 * r.err_est + 1e-15);
    }
    SUBCASE("depth 2") {
        const EvalResult r = eval_series(Model::SZ, {Cplx(2, 0), Cplx(1, 0)}, QParam(0.5), tight);
        CHECK(r.converged);
        CHECK(rel(r.value, kZ21) < 1e-11);
    }
    SUBCASE("depth 3") {
        const EvalResult r = eval_series(Model::SZ, {Cplx(0.8, 0), Cplx(0.6, 0), Cplx(0.4, 0)},
                                         QParam(0.45), tight);
        CHECK(r.converged);
        CHECK(rel(r.value, kDepth3) < 1e-10);
    }
    SUBCASE("bz numerators shift the exponent by one") {
        const EvalResult r =
            eval_series(Model::BZ, {Cplx(2.5, 0), Cplx(2.2, 0)}, QParam(0.6), tight);
        CHECK(r.converged);
        CHECK(rel(r.value, kBz) < 1e-11);
    }
    SUBCASE("weak simplex") {
        const EvalResult r =
            eval_series(Model::SZ_STAR, {Cplx(2, 0), Cplx(1.5, 0)}, QParam(0.4), tight);
        CHECK(r.converged);
        CHECK(rel(r.value, kStar) < 1e-11);
    }
    SUBCASE("complex argument") {
        const EvalResult r = eval_series(Model::SZ, {Cplx(1.2, 0.7)}, QParam(0.5), tight);
        CHECK(r.converged);
        const Cplx want(0.38680101324467835876, -0.36516288102560656451);
        CHECK(std::abs(r.value - want) / std::abs(want) < 1e-12);
    }
}

TEST_CASE("general exponent evaluation") {
    const SumBudget tight{20000, 1e-13};
    SUBCASE("pinned rational point") {
        const ArgVector zero2 = {Cplx(0, 0), Cplx(0, 0)};
        const ArgVector ones = {Cplx(1, 0), Cplx(1, 0)};
        const EvalResult r = eval_f_q(zero2, ones, QParam(0.5), tight);
        CHECK(r.converged);
        CHECK(rel(r.value, 1.0 / 3.0) < 1e-12);
    }
    SUBCASE("mixed signs, domain set by t alone") {
        const ArgVector s = {Cplx(1.5, 0), Cplx(-0.5, 0)};
        const ArgVector t = {Cplx(0.8, 0), Cplx(0.4, 0)};
        const EvalResult r = eval_f_q(s, t, QParam(0.35), tight);
        CHECK(r.converged);
        CHECK(rel(r.value, kFq) < 1e-11);
    }
    SUBCASE("specializations recover the named models") {
        const ArgVector s = {Cplx(1.7, 0.2), Cplx(0.9, -0.1)};
        const QParam q(0.5);
        const EvalResult sz = eval_series(Model::SZ, s, q, tight);
        const EvalResult via_fq = eval_f_q(s, s, q, tight);
        CHECK(std::abs(sz.value - via_fq.value) < 1e-13 * std::abs(sz.value) + 1e-16);

        ArgVector s_bz = {Cplx(2.3, 0), Cplx(1.4, 0)};
        ArgVector t_bz = s_bz;
        for (auto& c : t_bz) c -= 1.0;
        const EvalResult bz = eval_series(Model::BZ, s_bz, q, tight);
        const EvalResult via_fq2 = eval_f_q(s_bz, t_bz, q, tight);
        CHECK(std::abs(bz.value - via_fq2.value) < 1e-13 * std::abs(bz.value) + 1e-16);
    }
}

TEST_CASE("weak and strict sums split by the diagonal") {
    // z*(s1,s2) = z(s1,s2) + z(s1+s2): the k1 = k2 diagonal collapses
    const SumBudget tight{20000, 1e-13};
    const QParam q(0.5);
    const Cplx s1(1.6, 0.3), s2(1.1, -0.2);
    const Cplx star = eval_series(Model::SZ_STAR, {s1, s2}, q, tight).value;
    const Cplx strict = eval_series(Model::SZ, {s1, s2}, q, tight).value;
    const Cplx diag = eval_series(Model::SZ, {s1 + s2}, q, tight).value;
    CHECK(std::abs(star - (strict + diag)) < 1e-12 * std::abs(star));
}

TEST_CASE("out-of-domain evaluation refuses") {
    CHECK_THROWS_AS(eval_series(Model::SZ, {Cplx(-1, 0)}, QParam(0.5)), domain_error);
    CHECK_THROWS_AS(eval_series(Model::BZ, {Cplx(1.5, 0), Cplx(0.4, 0)}, QParam(0.6)),
                    domain_error);
    const ArgVector s = {Cplx(2, 0)};
    const ArgVector t = {Cplx(-0.2, 0)};
    CHECK_THROWS_AS(eval_f_q(s, t, QParam(0.5)), domain_error);
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS(eval_series(Model::SZ, {}, QParam(0.5)), argument_error);
    const double nan = std::nan("");
    CHECK_THROWS_AS(eval_series(Model::SZ, {Cplx(nan, 0)}, QParam(0.5)), argument_error);
    const ArgVector s2 = {Cplx(1, 0), Cplx(1, 0)};
    const ArgVector t1 = {Cplx(1, 0)};
    CHECK_THROWS_AS(eval_f_q(s2, t1, QParam(0.5)), argument_error);
}

TEST_CASE("exhausted budget reports instead of lying") {
    const SumBudget tiny{3, 1e-13};
    const EvalResult r = eval_series(Model::SZ, {Cplx(0.05, 0)}, QParam(0.9), tiny);
    CHECK_FALSE(r.converged);
    CHECK(r.terms_used <= 3);
    CHECK(r.err_est > 0.0);
}
