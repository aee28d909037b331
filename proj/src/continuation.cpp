#include "qmz/continuation.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "qmz/coefficients.hpp"
#include "qmz/errors.hpp"
#include "qmz/kernel.hpp"
#include "qmz/matrices.hpp"
#include "qmz/poles.hpp"

namespace qmz {

namespace {

constexpr double kPoleGuard = 1e-8;
// inside the convergence domain with at least this margin, recursion bottoms out
// on the direct series
constexpr double kDirectMargin = 0.25;
// each truncated tail leaves a geometric remainder on the order of its per-term
// cutoff, and the triangular solve can multiply those remainders by a few
// hundred near the bottom of the strip; the cutoff therefore sits three
// decades and change under tail_tol so the delivered value moves by well under tail_tol
// when K changes
constexpr double kTailSlack = 4096.0;

struct Ctx {
    const QParam& q;
    const ContinuationPlan& plan;
    std::unordered_map<std::string, Cplx> memo;
    double err_acc = 0.0;
    long terms_acc = 0;
    int K_top = 0;
    int max_depth_seen = 0;
    long nodes = 0;
};

std::string memo_key(const ArgVector& s, const Ctx& ctx) {
    // args rounded at 1e-12, plus q and the driving tolerance
    std::string key = std::to_string(s.size());
    char buf[64];
    for (const Cplx& v : s) {
        std::snprintf(buf, sizeof buf, "|%lld,%lld",
                      static_cast<long long>(std::llround(v.real() * 1e12)),
                      static_cast<long long>(std::llround(v.imag() * 1e12)));
        key += buf;
    }
    std::snprintf(buf, sizeof buf, "|%.17g|%.17g", ctx.q.q, ctx.plan.tail_tol);
    key += buf;
    return key;
}

int pick_K(const ArgVector& s, const Ctx& ctx) {
    const double mp = min_partial_re(s);
    const int auto_K = std::max(1, static_cast<int>(std::ceil(1.5 - mp)));
    if (ctx.plan.K <= 0) return auto_K;
    if (!(static_cast<double>(ctx.plan.K) > 1.0 - mp))
        throw argument_error("continue_eval: K too small for this point (need K > 1 - min Re partial)");
    return ctx.plan.K;
}

void refuse_near_pole(const ArgVector& s, const QParam& q) {
    Cplx partial = 0.0;
    for (int j = 1; j <= static_cast<int>(s.size()); ++j) {
        partial += s[static_cast<size_t>(j) - 1];
        int k;
        long m;
        if (sz_lattice_distance(partial, q, k, m) < kPoleGuard)
            throw pole_proximity({j, k, m}, "continue_eval: within 1e-8 of a pole hyperplane");
    }
}

Cplx direct_series(const ArgVector& s, Ctx& ctx) {
    const EvalResult r = eval_series(Model::SZ, s, ctx.q, ctx.plan.series);
    if (!r.converged)
        throw budget_error("continue_eval: direct series failed to converge within budget");
    ctx.err_acc += r.err_est;
    ctx.terms_acc += r.terms_used;
    return r.value;
}

Cplx continue_rec(const ArgVector& s, Ctx& ctx, int depth);

// z(head + offset, rest...) where the tuple may be in domain already
Cplx inner_value(ArgVector v, Ctx& ctx, int depth) {
    if (depth > ctx.plan.max_depth)
        throw budget_error("continue_eval: recursion guard tripped");
    if (min_partial_re(v) > kDirectMargin) return direct_series(v, ctx);
    return continue_rec(v, ctx, depth);
}

Cplx depth1_solve(Cplx s, Ctx& ctx, int K) {
    // row i (1-based): sum_{n>=i} M_{i,n}(s) z(s+n-1) = 1/q_0(s+i-1); the tail
    // n > K is in domain since Re(s)+K > 1
    std::vector<Cplx> zcache;  // zcache[u] = z(s+K+u), shared across row tails
    auto zeta_tail = [&](long n) -> Cplx {
        const size_t u = static_cast<size_t>(n) - static_cast<size_t>(K) - 1;
        while (zcache.size() <= u)
            zcache.push_back(
                direct_series({s + static_cast<double>(K) + static_cast<double>(zcache.size())}, ctx));
        return zcache[u];
    };
    std::vector<Cplx> b(static_cast<size_t>(K));
    for (int i = 1; i <= K; ++i) {
        const Cplx si = s + static_cast<double>(i) - 1.0;
        const Cplx q0 = q_pole_factor(si, 0, ctx.q);
        if (std::abs(q0) < kSingularQTol)
            throw singular_coefficient(i - 1, "continue_eval: singular diagonal in depth-1 solve");
        Cplx tail = 0.0;
        int quiet = 0;
        long n;
        for (n = K + 1; n <= K + ctx.plan.tail_max_terms; ++n) {
            const Cplx coef = M_first_row(static_cast<int>(n) - i + 1, si, ctx.q);
            const Cplx term = coef * zeta_tail(n);
            tail += term;
            quiet = (std::abs(term) * kTailSlack < ctx.plan.tail_tol) ? quiet + 1 : 0;
            if (quiet >= 3) break;
        }
        if (quiet < 3) throw budget_error("continue_eval: depth-1 tail did not settle");
        b[static_cast<size_t>(i) - 1] = 1.0 / q0 - tail;
        ctx.err_acc += ctx.plan.tail_tol;
    }
    std::vector<Cplx> x(static_cast<size_t>(K));
    for (int i = K; i >= 1; --i) {
        Cplx acc = b[static_cast<size_t>(i) - 1];
        const Cplx si = s + static_cast<double>(i) - 1.0;
        for (int n = i + 1; n <= K; ++n)
            acc -= M_first_row(n - i + 1, si, ctx.q) * x[static_cast<size_t>(n) - 1];
        x[static_cast<size_t>(i) - 1] = acc;
    }
    return x[0];
}

Cplx depth_r_block(const ArgVector& s, Ctx& ctx, int depth, int K) {
    const Cplx s1 = s[0];
    const CoeffTable table(s1, K, ctx.q);

    ArgVector dropped;  // (s1+s2+i-1, s3, ..., s_r) skeleton
    dropped.reserve(s.size() - 1);
    dropped.push_back(s1 + s[1]);
    for (size_t i = 2; i < s.size(); ++i) dropped.push_back(s[i]);

    Cplx main = 0.0;
    for (int i = 1; i <= K; ++i) {
        ArgVector v = dropped;
        v[0] = s1 + s[1] + static_cast<double>(i) - 1.0;
        main += H_entry(table, i, ctx.q) * inner_value(std::move(v), ctx, depth + 1);
    }

    // xi tail: depth r, first argument pushed past K
    Cplx xi = 0.0;
    {
        int quiet = 0;
        long n;
        for (n = 1; n <= ctx.plan.tail_max_terms; ++n) {
            ArgVector v = s;
            v[0] = s1 + static_cast<double>(K) + static_cast<double>(n) - 1.0;
            const Cplx term =
                R_tail_first_row(table, static_cast<int>(n), K, ctx.q) * direct_series(v, ctx);
            xi += term;
            quiet = (std::abs(term) * kTailSlack < ctx.plan.tail_tol) ? quiet + 1 : 0;
            if (quiet >= 3) break;
        }
        if (quiet < 3) throw budget_error("continue_eval: xi tail did not settle");
        ctx.err_acc += ctx.plan.tail_tol;
    }

    // eta tail: depth r-1, merged argument pushed past K
    Cplx eta = 0.0;
    {
        int quiet = 0;
        long n;
        for (n = 1; n <= ctx.plan.tail_max_terms; ++n) {
            ArgVector v = dropped;
            v[0] = s1 + s[1] + static_cast<double>(K) + static_cast<double>(n) - 1.0;
            const Cplx term =
                R_tail_first_row(table, static_cast<int>(n), K, ctx.q) * direct_series(v, ctx);
            eta += term;
            quiet = (std::abs(term) * kTailSlack < ctx.plan.tail_tol) ? quiet + 1 : 0;
            if (quiet >= 3) break;
        }
        if (quiet < 3) throw budget_error("continue_eval: eta tail did not settle");
        ctx.err_acc += ctx.plan.tail_tol;
    }

    return main + xi + eta;
}

Cplx continue_rec(const ArgVector& s, Ctx& ctx, int depth) {
    if (depth > ctx.plan.max_depth) throw budget_error("continue_eval: recursion guard tripped");
    refuse_near_pole(s, ctx.q);
    const std::string key = memo_key(s, ctx);
    if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;

    const int K = pick_K(s, ctx);
    if (depth == 0) ctx.K_top = K;
    if (depth > ctx.max_depth_seen) ctx.max_depth_seen = depth;
    ++ctx.nodes;
    const Cplx value =
        (s.size() == 1) ? depth1_solve(s[0], ctx, K) : depth_r_block(s, ctx, depth, K);
    ctx.memo.emplace(key, value);
    return value;
}

}  // namespace

ContinuationResult continue_eval(const ArgVector& s, const QParam& q,
                                 const ContinuationPlan& plan) {
    if (s.empty()) throw argument_error("continue_eval: empty argument vector");
    for (const Cplx& v : s)
        if (!is_finite(v)) throw argument_error("continue_eval: non-finite component");
    if (!(plan.tail_tol > 0.0)) throw argument_error("continue_eval: tail_tol must be positive");
    if (plan.tail_max_terms < 4) throw argument_error("continue_eval: tail_max_terms too small");

    Ctx ctx{q, plan, {}, 0.0, 0, 0, 0, 0};
    const Cplx value = continue_rec(s, ctx, 0);
    ContinuationResult out;
    out.value = value;
    out.err_est = ctx.err_acc;
    out.terms_used = ctx.terms_acc;
    out.converged = true;
    out.K_used = ctx.K_top;
    out.max_depth = ctx.max_depth_seen;
    out.nodes = ctx.nodes;
    return out;
}

}  // namespace qmz
