#include "qmz/kernel.hpp"

#include <cmath>

#include "qmz/errors.hpp"

namespace qmz {

QParam::QParam(double q_) : q(q_), log_q(0.0) {
    if (!(q_ > 0.0) || !(q_ < 1.0) || !std::isfinite(q_))
        throw domain_error("q must lie strictly inside (0,1)");
    log_q = std::log(q_);
}

bool is_finite(Cplx z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

Cplx partial_sum(const ArgVector& s, int j) {
    Cplx acc = 0.0;
    for (int i = 0; i < j; ++i) acc += s[static_cast<size_t>(i)];
    return acc;
}

double min_partial_re(const ArgVector& s) {
    double acc = 0.0, best = 0.0;
    bool first = true;
    for (const Cplx& v : s) {
        acc += v.real();
        if (first || acc < best) best = acc;
        first = false;
    }
    return best;
}

const char* model_name(Model m) {
    switch (m) {
        case Model::SZ: return "sz";
        case Model::SZ_STAR: return "sz_star";
        case Model::BZ: return "bz";
        case Model::FQ_GENERAL: return "fq";
    }
    return "?";
}

double q_bracket(long k, const QParam& q) {
    if (k < 1) throw domain_error("q_bracket requires k >= 1");
    return (1.0 - std::pow(q.q, static_cast<double>(k))) / (1.0 - q.q);
}

Cplx cpow_real_base(double b, Cplx s) {
    if (!(b > 0.0) || !std::isfinite(b))
        throw domain_error("cpow_real_base requires a positive real base");
    const double lb = std::log(b);
    const double mag = std::exp(s.real() * lb);
    const double ang = s.imag() * lb;
    if (ang == 0.0) return {mag, 0.0};  // keep real inputs exactly real
    return {mag * std::cos(ang), mag * std::sin(ang)};
}

Cplx rising_factorial(Cplx s, int k) {
    if (k < 0) throw argument_error("rising_factorial requires k >= 0");
    Cplx p = 1.0;
    for (int j = 0; j < k; ++j) p *= s + static_cast<double>(j);
    return p;
}

Cplx q_pole_factor(Cplx t, int i, const QParam& q) {
    return cpow_real_base(q.q, -(t + static_cast<double>(i))) - 1.0;
}

double factorial(int n) {
    if (n < 0) throw argument_error("factorial requires n >= 0");
    double p = 1.0;
    for (int j = 2; j <= n; ++j) p *= j;
    return p;
}

}  // namespace qmz
