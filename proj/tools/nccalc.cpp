// nccalc: command-line front end for nc rational expressions, their
// difference-differential calculus, power expansions, nilpotent evaluation,
// matrix-identity checks, and convergence-radius estimators.
//
// JSON in on stdin, JSON out on stdout, diagnostics on stderr.
// Exit codes: 0 success, 1 parse/usage error, 2 domain error,
// 3 precondition failure.

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <string>

#include "freenc/freenc.hpp"

namespace {

using freenc::Cplx;
using freenc::Json;
using freenc::Rational;
using freenc::Word;

Json read_stdin_json() {
    Json j;
    try {
        std::cin >> j;
    } catch (const std::exception& e) {
        throw freenc::ParseError(0, {"JSON"}, std::string("stdin is not valid JSON: ") + e.what());
    }
    return j;
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

struct EvalOptions {
    std::string expr;
    int d = 1;
    std::string field = "rational";
};

template <class K>
int run_eval(const EvalOptions& opt) {
    auto ast = freenc::parse<K>(opt.expr, opt.d);
    freenc::MatTuple<K> x = freenc::mattuple_from_json<K>(read_stdin_json());
    if (x.d() != opt.d) throw freenc::ArgumentError("input tuple d does not match --d");
    freenc::Matrix<K> value = freenc::eval_expr<K>(ast, x);
    Json out;
    out["field"] = freenc::ScalarTraits<K>::field_name();
    out["n"] = value.rows();
    out["matrix"] = freenc::matrix_to_json(value);
    emit(out);
    return 0;
}

struct DdiffOptions {
    std::string expr;
    int d = 1;
    std::string field = "rational";
    int order = -1;
    std::string word;
};

template <class K>
int run_ddiff(const DdiffOptions& opt) {
    auto ast = freenc::parse<K>(opt.expr, opt.d);
    freenc::NcFunction<K> f = freenc::as_ncfunction<K>(ast, opt.d);
    Json in = read_stdin_json();
    std::vector<freenc::MatTuple<K>> xs;
    for (const auto& t : in.at("Xs")) xs.push_back(freenc::mattuple_from_json<K>(t));
    Json out;
    out["field"] = freenc::ScalarTraits<K>::field_name();
    if (!opt.word.empty()) {
        Word w = Word::parse(opt.word, opt.d);
        std::vector<freenc::Matrix<K>> as;
        for (const auto& m : in.at("As")) as.push_back(freenc::matrix_from_json<K>(m));
        freenc::Matrix<K> block = freenc::delta_R_word<K>(f, w, xs, as);
        out["word"] = w.str();
        out["operator_word"] = w.transpose().str();
        out["note"] = "transposed-word: the block is the operator indexed by operator_word";
        out["block"] = freenc::matrix_to_json(block);
    } else {
        int order = opt.order < 0 ? 1 : opt.order;
        if (order == 0) {
            if (xs.size() != 1) throw freenc::ArgumentError("order 0 takes exactly one point");
            out["block"] = freenc::matrix_to_json(f(xs[0]));
            out["order"] = 0;
        } else {
            std::vector<freenc::RectTuple<K>> zs;
            for (const auto& t : in.at("Zs")) zs.push_back(freenc::recttuple_from_json<K>(t));
            if (static_cast<int>(zs.size()) != order)
                throw freenc::ArgumentError("--order must match the number of directions");
            freenc::Matrix<K> block = freenc::delta_R_higher<K>(f, xs, zs);
            out["order"] = order;
            out["block"] = freenc::matrix_to_json(block);
        }
    }
    emit(out);
    return 0;
}

struct ExpandOptions {
    std::string expr;
    int d = 1;
    std::string field = "rational";
    int max_deg = 2;
};

template <class K>
int run_expand(const ExpandOptions& opt) {
    auto ast = freenc::parse<K>(opt.expr, opt.d);
    freenc::NcFunction<K> f = freenc::as_ncfunction<K>(ast, opt.d);
    freenc::MatTuple<K> y = freenc::mattuple_from_json<K>(read_stdin_json());
    if (y.d() != opt.d) throw freenc::ArgumentError("center tuple d does not match --d");
    freenc::TTSeries<K> series = freenc::tt_expand(f, y, opt.max_deg);
    if (series.s > 1) freenc::verify_conditions(series);
    emit(freenc::ttseries_to_json(series));
    return 0;
}

struct SumOptions {
    std::string field = "rational";
    int n = -1;
    bool nilpotent = false;
};

template <class K>
int run_sum(const SumOptions& opt) {
    Json in = read_stdin_json();
    freenc::TTSeries<K> series = freenc::ttseries_from_json<K>(in.at("series"));
    freenc::MatTuple<K> x = freenc::mattuple_from_json<K>(in.at("X"));
    freenc::Matrix<K> value = opt.nilpotent ? freenc::eval_nilpotent(series, x)
                                            : freenc::series_partial_sum(series, x, opt.n);
    Json out;
    out["field"] = freenc::ScalarTraits<K>::field_name();
    out["n"] = value.rows();
    out["matrix"] = freenc::matrix_to_json(value);
    emit(out);
    return 0;
}

freenc::CoeffRule parse_rule(const std::string& spec, int d) {
    if (spec == "geometric") return freenc::CoeffRule::geometric(d);
    if (spec == "zero") return freenc::CoeffRule::zero(d);
    if (spec.rfind("single:", 0) == 0)
        return freenc::CoeffRule::single_letter(d, std::stoi(spec.substr(7)));
    if (spec.rfind("wordpow:", 0) == 0)
        return freenc::CoeffRule::word_power(d, Word::parse(spec.substr(8), d));
    throw freenc::ArgumentError("unknown rule \"" + spec +
                                "\" (expected geometric|zero|single:<j>|wordpow:<word>)");
}

struct RadiusOptions {
    std::string estimator = "mu";
    std::string rule = "geometric";
    int d = 1;
    std::vector<double> r;
    int L = 32;
    int m = 1;
    int samples = 50;
    std::vector<int> window;
    std::uint64_t seed = 1;
    double tol = 1e-9;
};

int run_radius(const RadiusOptions& opt) {
    freenc::ConvergenceReport report;
    report.seed = opt.seed;
    if (opt.estimator == "spectral") {
        freenc::MatTuple<Cplx> z = freenc::mattuple_from_json<Cplx>(read_stdin_json());
        report.estimator = "spectral_radius";
        report.input = "matrix of size " + std::to_string(z.n());
        report.estimate = freenc::spectral_radius(z[0], opt.tol);
        emit(freenc::report_to_json(report));
        return 0;
    }
    freenc::TailWindow window = freenc::TailWindow::for_top(opt.L);
    if (!opt.window.empty()) {
        if (opt.window.size() != 2) throw freenc::ArgumentError("--window takes lo,hi");
        window = freenc::TailWindow{opt.window[0], opt.window[1]};
    } else if (opt.L < 8) {
        throw freenc::ArgumentError("--L must be >= 8 (or pass an explicit --window)");
    }
    freenc::CoeffRule rule = parse_rule(opt.rule, opt.d);
    report.input = "rule " + opt.rule + ", d = " + std::to_string(opt.d);
    if (opt.estimator == "rho-point") {
        freenc::MatTuple<Cplx> z = freenc::mattuple_from_json<Cplx>(read_stdin_json());
        freenc::rho_point(rule, z, window, &report);
        report.input += ", point of size " + std::to_string(z.n());
    } else if (opt.estimator == "rho-m") {
        freenc::rho_m(rule, opt.m, opt.samples, window, opt.seed, &report);
    } else if (opt.estimator == "mu") {
        if (static_cast<int>(opt.r.size()) != opt.d)
            throw freenc::ArgumentError("--r must list one radius per letter");
        freenc::mu_r(rule, opt.r, window, &report);
    } else if (opt.estimator == "mu-diamond") {
        if (static_cast<int>(opt.r.size()) != opt.d)
            throw freenc::ArgumentError("--r must list one radius per letter");
        freenc::mu_diamond(rule, opt.r, window, &report);
    } else {
        throw freenc::ArgumentError("unknown estimator \"" + opt.estimator + "\"");
    }
    emit(freenc::report_to_json(report));
    return 0;
}

struct IdentityOptions {
    int n = 2;
    int trials = 20;
    std::uint64_t seed = 1;
};

int run_identity(const IdentityOptions& opt) {
    if (opt.n < 1) throw freenc::ArgumentError("--n must be >= 1");
    if (opt.trials < 1) throw freenc::ArgumentError("--trials must be >= 1");
    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<int> entry(-2, 2);
    auto random_pair = [&](int size) {
        freenc::MatTuple<Rational> x(2, size);
        for (int j = 0; j < 2; ++j)
            for (int a = 0; a < size; ++a)
                for (int b = 0; b < size; ++b) x[j](a, b) = Rational(entry(rng));
        return x;
    };
    freenc::NcPolynomial<Rational> p = freenc::standard_identity<Rational>(opt.n);
    bool vanishing = true;
    for (int t = 0; t < opt.trials && vanishing; ++t)
        vanishing = p.eval(random_pair(opt.n)).is_zero();
    bool witness = false;
    int witness_trials = 0;
    for (; witness_trials < 64 && !witness;) {
        ++witness_trials;
        witness = !p.eval(random_pair(opt.n + 1)).is_zero();
    }
    Json out;
    out["n"] = opt.n;
    out["degree"] = (opt.n + 1) * (opt.n + 2) / 2;
    out["trials"] = opt.trials;
    out["vanishing"] = vanishing;
    out["witness_found"] = witness;
    out["witness_trials"] = witness_trials;
    out["seed"] = opt.seed;
    emit(out);
    return 0;
}

template <class Fn>
int guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const freenc::ParseError& e) {
        std::cerr << "parse error: " << e.what();
        if (!e.expected().empty()) {
            std::cerr << " (expected";
            for (const auto& t : e.expected()) std::cerr << " " << t;
            std::cerr << ")";
        }
        std::cerr << "\n";
        return 1;
    } catch (const freenc::DomainError& e) {
        std::cerr << "domain error: " << e.what();
        if (e.span().end > e.span().begin)
            std::cerr << " [span " << e.span().begin << ".." << e.span().end << ")";
        std::cerr << "\n";
        return 2;
    } catch (const freenc::PreconditionError& e) {
        std::cerr << "precondition failure: " << e.what() << "\n";
        return 3;
    } catch (const freenc::LookupError& e) {
        std::cerr << "precondition failure: " << e.what() << "\n";
        return 3;
    } catch (const freenc::ArgumentError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nc function calculus over matrix tuples"};
    app.require_subcommand(1);

    EvalOptions eval_opt;
    auto* eval_cmd = app.add_subcommand("eval", "evaluate an expression on a tuple from stdin");
    eval_cmd->add_option("--expr", eval_opt.expr, "expression text")->required();
    eval_cmd->add_option("--d", eval_opt.d, "number of letters")->required();
    eval_cmd->add_option("--field", eval_opt.field, "rational|complex");

    DdiffOptions ddiff_opt;
    auto* ddiff_cmd =
        app.add_subcommand("ddiff", "difference-differential block from points/directions on stdin");
    ddiff_cmd->add_option("--expr", ddiff_opt.expr, "expression text")->required();
    ddiff_cmd->add_option("--d", ddiff_opt.d, "number of letters")->required();
    ddiff_cmd->add_option("--field", ddiff_opt.field, "rational|complex");
    ddiff_cmd->add_option("--order", ddiff_opt.order, "operator order (default 1)");
    ddiff_cmd->add_option("--word", ddiff_opt.word, "word form g1.g2 for the partial operator");

    ExpandOptions expand_opt;
    auto* expand_cmd = app.add_subcommand("expand", "power expansion at a center from stdin");
    expand_cmd->add_option("--expr", expand_opt.expr, "expression text")->required();
    expand_cmd->add_option("--d", expand_opt.d, "number of letters")->required();
    expand_cmd->add_option("--field", expand_opt.field, "rational|complex");
    expand_cmd->add_option("--max-deg", expand_opt.max_deg, "expansion degree")->required();

    SumOptions sum_opt;
    auto* sum_cmd = app.add_subcommand("sum", "partial sum of a series at a point (stdin: {series, X})");
    sum_cmd->add_option("--field", sum_opt.field, "rational|complex");
    sum_cmd->add_option("--N", sum_opt.n, "sum words of length <= N");
    sum_cmd->add_flag("--nilpotent", sum_opt.nilpotent, "exact evaluation on a nilpotent point");

    RadiusOptions radius_opt;
    auto* radius_cmd = app.add_subcommand("radius", "convergence estimators");
    radius_cmd->add_option("--estimator", radius_opt.estimator,
                           "rho-point|rho-m|mu|mu-diamond|spectral");
    radius_cmd->add_option("--rule", radius_opt.rule, "geometric|zero|single:<j>|wordpow:<word>");
    radius_cmd->add_option("--d", radius_opt.d, "number of letters");
    radius_cmd->add_option("--r", radius_opt.r, "radii, one per letter")->delimiter(',');
    radius_cmd->add_option("--L", radius_opt.L, "tail window top");
    radius_cmd->add_option("--m", radius_opt.m, "matrix size for rho-m");
    radius_cmd->add_option("--samples", radius_opt.samples, "sample count for rho-m");
    radius_cmd->add_option("--window", radius_opt.window, "explicit tail window lo,hi")
        ->delimiter(',');
    radius_cmd->add_option("--seed", radius_opt.seed, "rng seed");
    radius_cmd->add_option("--tol", radius_opt.tol, "tolerance for spectral");

    IdentityOptions id_opt;
    auto* id_cmd = app.add_subcommand("identity", "vanishing/witness run for the identity family");
    id_cmd->add_option("--n", id_opt.n, "matrix size the identity vanishes on")->required();
    id_cmd->add_option("--trials", id_opt.trials, "vanishing trials");
    id_cmd->add_option("--seed", id_opt.seed, "rng seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    auto dispatch_field = [&](const std::string& field, auto&& rational_fn, auto&& complex_fn) {
        if (field == "rational") return guarded(rational_fn);
        if (field == "complex") return guarded(complex_fn);
        std::cerr << "usage error: unknown field \"" << field << "\"\n";
        return 1;
    };

    if (eval_cmd->parsed())
        return dispatch_field(
            eval_opt.field, [&] { return run_eval<Rational>(eval_opt); },
            [&] { return run_eval<Cplx>(eval_opt); });
    if (ddiff_cmd->parsed())
        return dispatch_field(
            ddiff_opt.field, [&] { return run_ddiff<Rational>(ddiff_opt); },
            [&] { return run_ddiff<Cplx>(ddiff_opt); });
    if (expand_cmd->parsed())
        return dispatch_field(
            expand_opt.field, [&] { return run_expand<Rational>(expand_opt); },
            [&] { return run_expand<Cplx>(expand_opt); });
    if (sum_cmd->parsed()) {
        if (!sum_opt.nilpotent && sum_opt.n < 0) {
            std::cerr << "usage error: sum needs --N or --nilpotent\n";
            return 1;
        }
        return dispatch_field(
            sum_opt.field, [&] { return run_sum<Rational>(sum_opt); },
            [&] { return run_sum<Cplx>(sum_opt); });
    }
    if (radius_cmd->parsed()) return guarded([&] { return run_radius(radius_opt); });
    if (id_cmd->parsed()) return guarded([&] { return run_identity(id_opt); });
    return 1;
}
