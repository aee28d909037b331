// qmz: JSON-speaking front end for the q-multiple zeta library.
//
// Exit codes: 0 success, 1 verification-suite failure, 2 domain or usage
// error, 3 iteration budget exhausted, 4 pole proximity.  Every failure
// prints a single {"error": ...} JSON object on stdout; `continue` failures
// near the pole lattice attach the offending hyperplane.

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmz/argtext.hpp"
#include "qmz/cache.hpp"
#include "qmz/coefficients.hpp"
#include "qmz/continuation.hpp"
#include "qmz/errors.hpp"
#include "qmz/kernel.hpp"
#include "qmz/matrices.hpp"
#include "qmz/poles.hpp"
#include "qmz/residues.hpp"
#include "qmz/series.hpp"
#include "qmz/types.hpp"

namespace {

using ordered_json = nlohmann::ordered_json;
using namespace qmz;

void emit(const ordered_json& doc) { std::cout << doc.dump() << "\n"; }

ordered_json jcplx(Cplx z) {
    ordered_json j;
    j["re"] = z.real();
    j["im"] = z.imag();
    return j;
}

// plain number when exactly real, {re,im} otherwise
ordered_json jnumber(Cplx z) {
    if (z.imag() == 0.0) return ordered_json(z.real());
    return jcplx(z);
}

ordered_json jhyperplane(const HyperplaneId& hp) {
    ordered_json j;
    j["j"] = hp.j;
    j["k"] = hp.k;
    j["m"] = hp.lattice_m;
    return j;
}

int fail(int code, const std::string& message) {
    ordered_json doc;
    doc["error"] = message;
    emit(doc);
    return code;
}

Model parse_model(const std::string& name) {
    if (name == "sz") return Model::SZ;
    if (name == "star") return Model::SZ_STAR;
    if (name == "bz") return Model::BZ;
    if (name == "fq") return Model::FQ_GENERAL;
    throw argument_error("unknown model \"" + name + "\"");
}

// engine bits mapped to [0,1) directly so results do not depend on the
// platform's distribution implementation
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double range(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

Cplx random_off_lattice(Rng& rng, const QParam& q, double re_lo, double re_hi, double im_lo,
                        double im_hi, double min_dist) {
    for (;;) {
        const Cplx t(rng.range(re_lo, re_hi), rng.range(im_lo, im_hi));
        int k;
        long m;
        if (sz_lattice_distance(t, q, k, m) >= min_dist) return t;
    }
}

ArgVector sample_in_domain(Model model, int depth, Rng& rng) {
    for (;;) {
        ArgVector s;
        for (int j = 0; j < depth; ++j) {
            const double lo = (model == Model::BZ) ? 1.1 : (j == 0 ? 0.3 : -0.4);
            const double hi = (model == Model::BZ) ? 2.2 : 1.8;
            s.emplace_back(rng.range(lo, hi), rng.range(-0.5, 0.5));
        }
        if (in_domain(model, s)) return s;
    }
}

double rel_diff(Cplx a, Cplx b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

struct CaseSink {
    ordered_json cases = ordered_json::array();
    int passed = 0;
    int failed = 0;

    void add(const std::string& name, bool pass, double residual) {
        ordered_json c;
        c["name"] = name;
        c["pass"] = pass;
        c["residual"] = residual;
        cases.push_back(c);
        (pass ? passed : failed) += 1;
    }
};

void suite_translation(int samples, Rng& rng, CaseSink& sink) {
    struct Cfg {
        Model model;
        int depth;
        const char* tag;
    };
    const Cfg cfgs[] = {{Model::SZ, 1, "sz-d1"},
                        {Model::SZ, 2, "sz-d2"},
                        {Model::SZ, 3, "sz-d3"},
                        {Model::BZ, 2, "bz-d2"},
                        {Model::SZ_STAR, 2, "star-d2"}};
    const SumBudget budget{10000, 1e-12};
    for (const Cfg& cfg : cfgs) {
        for (int i = 0; i < samples; ++i) {
            const QParam q(rng.range(0.3, 0.7));
            const ArgVector s = sample_in_domain(cfg.model, cfg.depth, rng);
            const TranslationCheck chk = check_translation(cfg.model, s, q, 60, budget);
            sink.add(std::string("translation-") + cfg.tag + "-" + std::to_string(i),
                     chk.residual <= 1e-8, chk.residual);
        }
    }
}

void suite_inverse(int samples, Rng& rng, CaseSink& sink) {
    // q stays below 0.65: closed-inverse entries grow roughly like q^{K^2} powers
    // of 1/(q^j - 1), and past q ~ 0.7 they reach 1e6 at K = 12, where entry
    // rounding alone exceeds the 1e-10 product gate.
    for (int i = 0; i < samples; ++i) {
        const QParam q(rng.range(0.2, 0.65));
        const Cplx t = random_off_lattice(rng, q, -2.5, 2.5, -2.0, 2.0, 0.05);
        const int K = 2 + i % 11;
        const double prod_dev = verify_inverse(t, K, q);

        const TriBlock m = build_block(BlockKind::M, t, K, 0, q);
        const TriBlock closed = build_block(BlockKind::M_INV, t, K, 0, q);
        const TriBlock back = invert_block_backsub(m);
        double route_dev = 0.0;
        for (int r = 0; r < K; ++r)
            for (int c = 0; c < K; ++c)
                route_dev = std::max(route_dev, std::abs(closed.at(r, c) - back.at(r, c)));

        const double residual = std::max(prod_dev, route_dev);
        sink.add("inverse-K" + std::to_string(K) + "-" + std::to_string(i), residual <= 1e-10,
                 residual);
    }
}

void suite_residue(CaseSink& sink) {
    // five-node grid: the deeper n = 2 points carry large regular parts, so the
    // default three nodes leave a visible h^3 term
    const std::vector<double> h_fine = {1e-2, 5e-3, 2.5e-3, 1.25e-3, 6.25e-4};
    const double qs[] = {0.3, 0.5, 0.7};
    const std::vector<ArgVector> trailings = {{Cplx(3.0, 0.0)}, {Cplx(2.5, 0.0), Cplx(2.0, 0.0)}};
    for (double qv : qs) {
        const QParam q(qv);
        for (size_t ti = 0; ti < trailings.size(); ++ti) {
            for (int n = 0; n <= 2; ++n) {
                const ResidueResult closed = residue_h1(n, trailings[ti], q);
                ArgVector point;
                point.emplace_back(-static_cast<double>(n), 0.0);
                for (const Cplx& v : trailings[ti]) point.push_back(v);
                const Cplx limit = numeric_residue(HyperplaneId{1, n, 0}, point, q, h_fine);
                const double residual = rel_diff(closed.value, limit);
                sink.add("residue-h1-n" + std::to_string(n) + "-q" + format_real(qv) + "-t" +
                             std::to_string(ti),
                         residual <= 1e-4, residual);
            }
        }
    }

    {
        const QParam q(0.5);
        const ResidueResult closed = residue_h1(0, {}, q);
        const double exact = -1.0 / q.log_q;
        const double res_closed = std::abs(closed.value - exact) / std::abs(exact);
        sink.add("residue-depth1-closed", res_closed <= 1e-6, res_closed);
        const Cplx limit = numeric_residue(HyperplaneId{1, 0, 0}, {Cplx(0.0, 0.0)}, q);
        const double res_limit = std::abs(limit - exact) / std::abs(exact);
        sink.add("residue-depth1-limit", res_limit <= 1e-4, res_limit);
    }

    {
        const QParam q(0.5);
        const ArgVector p20 = {Cplx(1.3, 0.0), Cplx(-1.3, 0.0), Cplx(3.0, 0.0)};
        const ResidueResult c20 = residue_hjk(2, 0, p20, q, 5);
        const Cplx l20 = numeric_residue(HyperplaneId{2, 0, 0}, p20, q, h_fine);
        const double r20 = rel_diff(c20.value, l20);
        sink.add("residue-hjk-j2-k0", r20 <= 1e-3, r20);

        const ArgVector p21 = {Cplx(0.7, 0.0), Cplx(-1.7, 0.0), Cplx(3.0, 0.0)};
        const ResidueResult c21 = residue_hjk(2, 1, p21, q, 5);
        const Cplx l21 = numeric_residue(HyperplaneId{2, 1, 0}, p21, q, h_fine);
        const double r21 = rel_diff(c21.value, l21);
        sink.add("residue-hjk-j2-k1", r21 <= 1e-3, r21);
    }
}

void suite_coeff(int samples, Rng& rng, CaseSink& sink) {
    for (int i = 0; i < samples; ++i) {
        const int n = 2 + i % 7;  // 2..8
        const QParam q(rng.range(0.2, 0.8));
        const Cplx t = random_off_lattice(rng, q, -2.5, 2.5, -2.0, 2.0, 0.05);
        const Cplx hd = hessenberg_det(n, t, q);
        const Cplx pf = rising_factorial(t, n - 1) * L_n(n, t, q);
        double residual = rel_diff(hd, pf);
        if (n <= 7) {
            const Cplx pd = permutation_det(n, t, q);
            residual = std::max(residual, rel_diff(hd, pd));
        }
        sink.add("coeff-n" + std::to_string(n) + "-" + std::to_string(i), residual <= 1e-9,
                 residual);
    }
}

int run_check(const std::string& suite, int samples, std::uint64_t seed) {
    Rng rng(seed);
    CaseSink sink;
    if (suite == "translation" || suite == "all") suite_translation(samples, rng, sink);
    if (suite == "inverse" || suite == "all") suite_inverse(samples, rng, sink);
    if (suite == "residue" || suite == "all") suite_residue(sink);
    if (suite == "coeff" || suite == "all") suite_coeff(samples, rng, sink);

    ordered_json doc;
    doc["suite"] = suite;
    doc["cases"] = sink.cases;
    doc["passed"] = sink.passed;
    doc["failed"] = sink.failed;
    emit(doc);
    return sink.failed == 0 ? 0 : 1;
}

struct EvalOpts {
    std::string model = "sz";
    double q = 0.0;
    std::vector<std::string> args;
    std::string t;
    double tol = 1e-12;
    long max_terms = 10000;
    std::string output = "json";
    std::string cache_path;
};

int run_eval(const EvalOpts& opt) {
    const Model model = parse_model(opt.model);
    const QParam q(opt.q);
    const SumBudget budget{opt.max_terms, opt.tol};

    std::vector<ArgVector> points;
    for (const std::string& text : opt.args) points.push_back(parse_arg_vector(text));
    if (points.empty()) throw argument_error("eval: at least one --args point required");

    ArgVector t_vec;
    if (model == Model::FQ_GENERAL) {
        if (opt.t.empty()) throw argument_error("eval: --model fq requires --t");
        t_vec = parse_arg_vector(opt.t);
    } else if (!opt.t.empty()) {
        throw argument_error("eval: --t only applies to --model fq");
    }

    std::string cache_path = opt.cache_path;
    if (const char* env = std::getenv("QMZ_CACHE"); env && *env) cache_path = env;
    std::optional<ValueCache> cache;
    if (!cache_path.empty() && model != Model::FQ_GENERAL) cache.emplace(cache_path);

    struct Row {
        ArgVector point;
        EvalResult result;
    };
    std::vector<Row> rows;
    for (const ArgVector& point : points) {
        EvalResult res;
        bool from_cache = false;
        std::string key;
        if (cache) {
            key = ValueCache::make_key(model, opt.q, point, opt.tol);
            if (const auto hit = cache->lookup(key)) {
                res.value = hit->value;
                res.err_est = hit->err_est;
                res.terms_used = hit->terms;
                res.converged = hit->converged;
                from_cache = true;
            }
        }
        if (!from_cache) {
            res = (model == Model::FQ_GENERAL) ? eval_f_q(point, t_vec, q, budget)
                                               : eval_series(model, point, q, budget);
            if (cache && res.converged) {
                CacheEntry entry;
                entry.value = res.value;
                entry.err_est = res.err_est;
                entry.terms = res.terms_used;
                entry.converged = res.converged;
                cache->store(key, entry);
            }
        }
        if (!res.converged)
            throw budget_error("eval: series did not converge within " +
                               std::to_string(opt.max_terms) + " outer terms");
        rows.push_back({point, res});
    }

    if (opt.output == "csv") {
        const size_t depth = rows.front().point.size();
        for (const Row& row : rows)
            if (row.point.size() != depth)
                throw argument_error("eval: csv sweep points must share one depth");
        std::string header;
        for (size_t j = 1; j <= depth; ++j) {
            header += "re(s" + std::to_string(j) + "),im(s" + std::to_string(j) + "),";
        }
        header += "re(value),im(value),err_est";
        std::cout << header << "\n";
        for (const Row& row : rows) {
            std::string line;
            for (const Cplx& c : row.point) {
                line += format_real(c.real());
                line += ',';
                line += format_real(c.imag());
                line += ',';
            }
            line += format_real(row.result.value.real());
            line += ',';
            line += format_real(row.result.value.imag());
            line += ',';
            line += format_real(row.result.err_est);
            std::cout << line << "\n";
        }
        return 0;
    }

    if (rows.size() != 1) throw argument_error("eval: json output takes exactly one --args point");
    const EvalResult& res = rows.front().result;
    ordered_json doc;
    doc["value"] = jcplx(res.value);
    doc["err_est"] = res.err_est;
    doc["terms"] = res.terms_used;
    doc["converged"] = res.converged;
    emit(doc);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-analogue multiple zeta evaluator"};
    app.require_subcommand(1);

    EvalOpts eval_opt;
    CLI::App* eval_cmd = app.add_subcommand("eval", "direct series evaluation on the domain");
    eval_cmd->add_option("--model", eval_opt.model, "sz | star | bz | fq")
        ->check(CLI::IsMember({"sz", "star", "bz", "fq"}));
    eval_cmd->add_option("--q", eval_opt.q, "q in (0,1)")->required();
    eval_cmd->add_option("--args", eval_opt.args, "complex components \"a,b+ci,...\" (repeat for csv sweeps)")
        ->required();
    eval_cmd->add_option("--t", eval_opt.t, "exponent shifts for --model fq");
    eval_cmd->add_option("--tol", eval_opt.tol, "series tail tolerance");
    eval_cmd->add_option("--max-terms", eval_opt.max_terms, "outer index budget");
    eval_cmd->add_option("--output", eval_opt.output, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    eval_cmd->add_option("--cache-path", eval_opt.cache_path,
                         "JSON-lines value cache (QMZ_CACHE env overrides)");

    struct {
        double q = 0.0;
        std::string args;
        int K = 0;
        double tail_tol = 1e-10;
        long tail_max_terms = 4000;
        double tol = 1e-12;
        long max_terms = 10000;
    } cont_opt;
    CLI::App* cont_cmd = app.add_subcommand("continue", "analytic continuation (strict model)");
    cont_cmd->add_option("--q", cont_opt.q)->required();
    cont_cmd->add_option("--args", cont_opt.args)->required();
    cont_cmd->add_option("--K", cont_opt.K, "translation block size (0 = auto)");
    cont_cmd->add_option("--tail-tol", cont_opt.tail_tol, "tail stop threshold");
    cont_cmd->add_option("--tail-max-terms", cont_opt.tail_max_terms);
    cont_cmd->add_option("--tol", cont_opt.tol, "direct-series tolerance");
    cont_cmd->add_option("--max-terms", cont_opt.max_terms, "direct-series outer budget");

    struct {
        double q = 0.0;
        int n = -1;
        std::string trailing;
        int j = 1;
        int k = 0;
        long m = 0;
        std::string point;
        int K = 6;
        bool numeric = false;
    } res_opt;
    CLI::App* res_cmd = app.add_subcommand("residue", "residue along a pole hyperplane");
    res_cmd->add_option("--q", res_opt.q)->required();
    res_cmd->add_option("--n", res_opt.n, "s_1 = -n hyperplane (closed form, depth head)");
    res_cmd->add_option("--trailing", res_opt.trailing, "fixed arguments s_2,...,s_r");
    res_cmd->add_option("--j", res_opt.j, "partial-sum index of the hyperplane");
    res_cmd->add_option("--k", res_opt.k, "hyperplane shift: s_1+...+s_j = -k");
    res_cmd->add_option("--m", res_opt.m, "lattice sheet (numeric oracle only)");
    res_cmd->add_option("--point", res_opt.point, "full argument vector on the hyperplane");
    res_cmd->add_option("--K", res_opt.K, "H-block truncation size (j >= 2 closed form)");
    res_cmd->add_flag("--numeric", res_opt.numeric, "limit-oracle instead of closed form");

    struct {
        std::string model = "sz";
        double q = 0.0;
        std::string args;
        double tol = 1e-10;
    } poles_opt;
    CLI::App* poles_cmd = app.add_subcommand("poles", "pole hyperplanes through a point");
    poles_cmd->add_option("--model", poles_opt.model, "sz | star | bz")
        ->check(CLI::IsMember({"sz", "star", "bz"}));
    poles_cmd->add_option("--q", poles_opt.q)->required();
    poles_cmd->add_option("--args", poles_opt.args)->required();
    poles_cmd->add_option("--tol", poles_opt.tol, "lattice distance threshold");

    struct {
        int n = 0;
        std::string t;
        double q = 0.0;
    } coeff_opt;
    CLI::App* coeff_cmd = app.add_subcommand("coeff", "partition-sum coefficient L_n(t)");
    coeff_cmd->add_option("--n", coeff_opt.n)->required()->check(CLI::PositiveNumber);
    coeff_cmd->add_option("--t", coeff_opt.t)->required();
    coeff_cmd->add_option("--q", coeff_opt.q)->required();

    struct {
        std::string which = "M";
        std::string t;
        int K = 0;
        double q = 0.0;
    } mat_opt;
    CLI::App* mat_cmd = app.add_subcommand("matrix", "K x K translation-matrix block");
    mat_cmd->add_option("--which", mat_opt.which, "M | N | Minv | H")
        ->check(CLI::IsMember({"M", "N", "Minv", "H"}));
    mat_cmd->add_option("--t", mat_opt.t)->required();
    mat_cmd->add_option("--K", mat_opt.K)->required()->check(CLI::PositiveNumber);
    mat_cmd->add_option("--q", mat_opt.q)->required();

    struct {
        std::string suite;
        int samples = 20;
        std::uint64_t seed = 0;
    } check_opt;
    CLI::App* check_cmd = app.add_subcommand("check", "built-in verification suites");
    check_cmd->add_option("--suite", check_opt.suite, "translation | inverse | residue | coeff | all")
        ->required()
        ->check(CLI::IsMember({"translation", "inverse", "residue", "coeff", "all"}));
    check_cmd->add_option("--samples", check_opt.samples)->check(CLI::PositiveNumber);
    check_cmd->add_option("--seed", check_opt.seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        return fail(2, std::string("usage: ") + e.what());
    }

    try {
        if (app.got_subcommand(eval_cmd)) return run_eval(eval_opt);

        if (app.got_subcommand(cont_cmd)) {
            const QParam q(cont_opt.q);
            const ArgVector s = parse_arg_vector(cont_opt.args);
            ContinuationPlan plan;
            plan.K = cont_opt.K;
            plan.tail_tol = cont_opt.tail_tol;
            plan.tail_max_terms = cont_opt.tail_max_terms;
            plan.series = SumBudget{cont_opt.max_terms, cont_opt.tol};
            const ContinuationResult res = continue_eval(s, q, plan);
            ordered_json doc;
            doc["value"] = jcplx(res.value);
            doc["err_est"] = res.err_est;
            doc["K"] = res.K_used;
            doc["max_depth"] = res.max_depth;
            doc["nodes"] = res.nodes;
            doc["terms"] = res.terms_used;
            emit(doc);
            return 0;
        }

        if (app.got_subcommand(res_cmd)) {
            const QParam q(res_opt.q);
            ResidueResult out;
            if (res_opt.numeric) {
                if (res_opt.point.empty())
                    throw argument_error("residue --numeric requires --point");
                const HyperplaneId hp{res_opt.j, res_opt.k, res_opt.m};
                out.value = numeric_residue(hp, parse_arg_vector(res_opt.point), q);
                out.hyperplane = hp;
                out.method = "numeric_limit";
            } else if (res_opt.j >= 2) {
                if (res_opt.point.empty())
                    throw argument_error("residue with --j >= 2 requires --point");
                out = residue_hjk(res_opt.j, res_opt.k, parse_arg_vector(res_opt.point), q,
                                  res_opt.K);
            } else {
                if (res_opt.n < 0)
                    throw argument_error("residue: give --n (with optional --trailing), "
                                         "--j >= 2 with --point, or --numeric");
                const ArgVector trailing =
                    res_opt.trailing.empty() ? ArgVector{} : parse_arg_vector(res_opt.trailing);
                out = residue_h1(res_opt.n, trailing, q);
            }
            ordered_json doc;
            doc["value"] = jcplx(out.value);
            doc["hyperplane"] = jhyperplane(out.hyperplane);
            doc["method"] = out.method;
            emit(doc);
            return 0;
        }

        if (app.got_subcommand(poles_cmd)) {
            const QParam q(poles_opt.q);
            const ArgVector s = parse_arg_vector(poles_opt.args);
            const auto locus = pole_locus(parse_model(poles_opt.model), s, q, poles_opt.tol);
            ordered_json doc;
            doc["hyperplanes"] = ordered_json::array();
            for (const HyperplaneId& hp : locus) doc["hyperplanes"].push_back(jhyperplane(hp));
            emit(doc);
            return 0;
        }

        if (app.got_subcommand(coeff_cmd)) {
            const QParam q(coeff_opt.q);
            const Cplx t = parse_complex(coeff_opt.t);
            ordered_json doc;
            doc["L_n"] = jnumber(L_n(coeff_opt.n, t, q));
            emit(doc);
            return 0;
        }

        if (app.got_subcommand(mat_cmd)) {
            const QParam q(mat_opt.q);
            const Cplx t = parse_complex(mat_opt.t);
            BlockKind kind = BlockKind::M;
            if (mat_opt.which == "N") kind = BlockKind::N;
            else if (mat_opt.which == "Minv") kind = BlockKind::M_INV;
            else if (mat_opt.which == "H") kind = BlockKind::H;
            const TriBlock block = build_block(kind, t, mat_opt.K, 0, q);
            ordered_json entries = ordered_json::array();
            for (int r = 0; r < mat_opt.K; ++r) {
                ordered_json row = ordered_json::array();
                for (int c = 0; c < mat_opt.K; ++c) row.push_back(jnumber(block.at(r, c)));
                entries.push_back(row);
            }
            ordered_json doc;
            doc["which"] = mat_opt.which;
            doc["K"] = mat_opt.K;
            doc["entries"] = entries;
            emit(doc);
            return 0;
        }

        if (app.got_subcommand(check_cmd))
            return run_check(check_opt.suite, check_opt.samples, check_opt.seed);
    } catch (const pole_proximity& e) {
        ordered_json doc;
        doc["error"] = e.what();
        doc["hyperplane"] = jhyperplane(e.hyperplane);
        emit(doc);
        return 4;
    } catch (const budget_error& e) {
        return fail(3, e.what());
    } catch (const singular_coefficient& e) {
        ordered_json doc;
        doc["error"] = e.what();
        doc["index"] = e.index;
        emit(doc);
        return 2;
    } catch (const domain_error& e) {
        return fail(2, e.what());
    } catch (const argument_error& e) {
        return fail(2, e.what());
    } catch (const error& e) {
        return fail(2, e.what());
    }
    return fail(2, "no subcommand");
}
