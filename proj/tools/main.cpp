// Command-line front end: condition reports for matrices from files, seeded
// ensemble sampling, and the Monte Carlo experiments with CSV output.
//
// Exit codes: 0 success, 2 usage or parse error, 3 vacuous experiment
// (structurally singular pattern).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparsecond/sparsecond.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace sparsecond;

json cond_value_json(const CondValue& v) {
    switch (v.tag()) {
        case CondTag::finite: return {{"tag", "finite"}, {"value", v.value()}};
        case CondTag::zero: return {{"tag", "zero"}};
        default: return {{"tag", "infinite"}};
    }
}

// Writes to the path, or stdout when the path is empty.
void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file '" + out_path + "'");
    f << payload;
}

struct CondArgs {
    std::string matrix_path;
    std::string rhs_path;
    bool bounds = false;
    bool json_out = true;
    std::string out_path;
};

int run_cond(const CondArgs& args) {
    const Matrix a = matrix_from_file(args.matrix_path);
    std::optional<std::vector<double>> b;
    if (!args.rhs_path.empty()) {
        b = vector_from_file(args.rhs_path);
        if (b->size() != static_cast<std::size_t>(a.n()))
            throw std::invalid_argument("right-hand side length does not match matrix");
    }
    if (args.bounds && a.n() > 64)
        throw std::invalid_argument("--bounds is limited to n <= 64");

    json out;
    out["n"] = a.n();
    try {
        const CondReport r = build_cond_report(a, b ? &*b : nullptr);
        out["cond_det"] = cond_value_json(r.det_cond);
        out["cond_inv"] = cond_value_json(r.inv.value);
        out["cond_inv_argmax"] = {r.inv.k + 1, r.inv.l + 1};
        out["mixed_inv"] = cond_value_json(r.inv_mixed);
        if (r.has_solve) {
            out["cond_solve"] = cond_value_json(r.solve.value);
            out["cond_solve_argmax"] = r.solve.k + 1;
            out["mixed_solve"] = cond_value_json(r.solve_mixed);
        }
        if (args.bounds) {
            json tbl = json::array();
            for (int k = 0; k < a.n(); ++k) {
                json row = json::array();
                for (int l = 0; l < a.n(); ++l)
                    row.push_back(cond_value_json(cond_inv_bound(a, k, l)));
                tbl.push_back(row);
            }
            out["cond_inv_bounds"] = tbl;
            if (b) {
                json sb = json::array();
                for (int k = 0; k < a.n(); ++k)
                    sb.push_back(cond_value_json(cond_solve_bound(a, *b, k)));
                out["cond_solve_bounds"] = sb;
            }
        }
    } catch (const singular_error&) {
        // Singular input: the determinant condition is still well defined;
        // everything that needs the inverse is reported as infinite.
        out["cond_det"] = cond_value_json(cond_det(a));
        out["cond_inv"] = cond_value_json(CondValue::infinite());
        out["cond_inv_argmax"] = nullptr;
        out["mixed_inv"] = cond_value_json(CondValue::infinite());
        if (b) {
            out["cond_solve"] = cond_value_json(CondValue::infinite());
            out["cond_solve_argmax"] = nullptr;
            out["mixed_solve"] = cond_value_json(CondValue::infinite());
        }
    }
    emit(args.out_path, out.dump(2) + "\n");
    return 0;
}

ExpTarget parse_target(const std::string& s) {
    if (s == "det") return ExpTarget::det;
    if (s == "inv") return ExpTarget::inv;
    if (s == "solve") return ExpTarget::solve;
    throw std::invalid_argument("--which must be det, inv or solve");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"componentwise condition numbers of sparse matrices"};
    app.require_subcommand(1);

    // --- cond ---------------------------------------------------------
    CondArgs cond_args;
    CLI::App* cond = app.add_subcommand(
        "cond", "condition report (JSON) for a matrix file, optionally with a rhs");
    cond->add_option("matrix", cond_args.matrix_path, "matrix file")->required();
    cond->add_option("rhs", cond_args.rhs_path, "vector file with the right-hand side");
    cond->add_flag("--bounds", cond_args.bounds,
                   "add determinant-sum bound tables (n <= 64)");
    cond->add_flag("--json", cond_args.json_out, "emit JSON (the default and only format)");
    cond->add_option("--out", cond_args.out_path, "output path (default stdout)");

    // --- sample -------------------------------------------------------
    std::string sample_pattern = "dense";
    int sample_n = 0;
    std::uint64_t sample_seed = 0, sample_trial = 0;
    std::string sample_out;
    CLI::App* sample = app.add_subcommand("sample", "write one seeded Gaussian sample");
    sample->add_option("--pattern", sample_pattern,
                       "dense|lower|upper|tridiag|band:K|file:PATH")->required();
    sample->add_option("--n", sample_n, "dimension (ignored for file: patterns)");
    sample->add_option("--seed", sample_seed, "master seed (default 0)");
    sample->add_option("--trial", sample_trial, "trial index (default 0)");
    sample->add_option("--out", sample_out, "output path (default stdout)");

    // --- exp ----------------------------------------------------------
    CLI::App* exp = app.add_subcommand("exp", "Monte Carlo experiments (CSV output)");
    exp->require_subcommand(1);

    std::string which = "det";
    std::string pattern_spec = "lower";
    int exp_n = 10;
    std::vector<int> sizes;
    std::uint64_t seed = 0;
    int threads = 1;
    double base = 2.0;
    std::vector<double> t_grid;
    std::vector<double> p_vec, q_vec;
    std::string out_path;

    auto add_common = [&](CLI::App* c, std::uint64_t& trials_var) {
        c->add_option("--trials", trials_var, "trial count");
        c->add_option("--seed", seed, "master seed (default 0)");
        c->add_option("--threads", threads, "worker threads (default 1)");
        c->add_option("--out", out_path, "output path (default stdout)");
    };

    std::uint64_t tail_trials = 10000;
    CLI::App* tail = exp->add_subcommand("tail", "tail frequencies vs the theorem bound");
    tail->add_option("--which", which, "det|inv|solve")->required();
    tail->add_option("--pattern", pattern_spec, "pattern spec (default lower)");
    tail->add_option("--n", exp_n, "dimension (default 10)");
    tail->add_option("--t", t_grid, "t grid (default 1e5,1e6,1e7)")->delimiter(',');
    add_common(tail, tail_trials);

    std::uint64_t explog_trials = 10000;
    CLI::App* explog = exp->add_subcommand("explog", "mean log_plus(cond) vs its bound");
    explog->add_option("--which", which, "det|inv|solve")->required();
    explog->add_option("--pattern", pattern_spec, "pattern spec (default lower)");
    explog->add_option("--sizes", sizes, "dimensions, one row each (default 10,20,40)")
        ->delimiter(',');
    explog->add_option("--base", base, "logarithm base (default 2)");
    add_common(explog, explog_trials);

    std::uint64_t stail_trials = 100000;
    CLI::App* stail = exp->add_subcommand("stail", "tail of |x'p / x'q| for Gaussian x");
    stail->add_option("--p", p_vec, "vector p (comma separated)")->delimiter(',')->required();
    stail->add_option("--q", q_vec, "vector q (comma separated)")->delimiter(',')->required();
    stail->add_option("--t", t_grid, "t grid, entries >= 2 (default 2,4,8,16)")->delimiter(',');
    add_common(stail, stail_trials);

    std::uint64_t slope_trials = 200;
    CLI::App* slope = exp->add_subcommand(
        "slope", "regression of mean log2 cond against log2 n (lower triangular)");
    slope->add_option("--which", which, "inv_comp|inv_mixed")->required();
    slope->add_option("--sizes", sizes, "sizes (default 10,20,40,80,160,320)")->delimiter(',');
    add_common(slope, slope_trials);

    std::uint64_t kappa_trials = 50;
    CLI::App* kappa = exp->add_subcommand(
        "kappa", "normwise condition growth of lower-triangular samples");
    kappa->add_option("--sizes", sizes, "sizes (default 16,32,64,128,256)")->delimiter(',');
    add_common(kappa, kappa_trials);

    std::uint64_t accuracy_trials = 1000;
    int accuracy_n = 100;
    CLI::App* accuracy = exp->add_subcommand(
        "accuracy", "substitution forward error vs the condition predictor");
    accuracy->add_option("--n", accuracy_n, "dimension (default 100)");
    add_common(accuracy, accuracy_trials);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (cond->parsed()) return run_cond(cond_args);

        if (sample->parsed()) {
            const PatternPtr p = parse_pattern_spec(sample_pattern, sample_n);
            const Matrix m = sample_matrix(p, SeedSpec{sample_seed, sample_trial});
            std::ostringstream os;
            write_matrix(os, m);
            emit(sample_out, os.str());
            return 0;
        }

        std::ostringstream os;
        if (tail->parsed()) {
            if (t_grid.empty()) t_grid = {1e5, 1e6, 1e7};
            const PatternPtr p = parse_pattern_spec(pattern_spec, exp_n);
            write_tail_csv(os, tail_experiment(parse_target(which), p, tail_trials, t_grid,
                                               seed, threads));
        } else if (explog->parsed()) {
            if (sizes.empty()) sizes = {10, 20, 40};
            std::vector<ExpLogRow> rows;
            std::uint64_t flagged = 0;
            if (pattern_spec.rfind("file:", 0) == 0) {
                rows.push_back(expected_log_experiment(
                    parse_target(which), parse_pattern_spec(pattern_spec, 0), explog_trials,
                    base, seed, threads));
            } else {
                for (int n : sizes)
                    rows.push_back(expected_log_experiment(
                        parse_target(which), parse_pattern_spec(pattern_spec, n),
                        explog_trials, base, seed, threads));
            }
            for (const ExpLogRow& r : rows) flagged += r.near_singular + r.nonfinite;
            if (flagged > 0)
                std::cerr << "note: " << flagged
                          << " near-singular/singular trials excluded from means\n";
            write_explog_csv(os, rows);
        } else if (stail->parsed()) {
            if (t_grid.empty()) t_grid = {2, 4, 8, 16};
            write_stail_csv(os, stail_experiment(p_vec, q_vec, stail_trials, t_grid, seed,
                                                 threads));
        } else if (slope->parsed()) {
            if (sizes.empty()) sizes = {10, 20, 40, 80, 160, 320};
            SlopeTarget target;
            if (which == "inv_comp") target = SlopeTarget::inv_comp;
            else if (which == "inv_mixed") target = SlopeTarget::inv_mixed;
            else throw std::invalid_argument("--which must be inv_comp or inv_mixed");
            const SlopeData data = slope_data(sizes, slope_trials, seed, threads);
            const auto& points = target == SlopeTarget::inv_comp ? data.comp : data.mixed;
            write_slope_csv(os, points, fit_slope(points));
        } else if (kappa->parsed()) {
            if (sizes.empty()) sizes = {16, 32, 64, 128, 256};
            write_kappa_csv(os, kappa_experiment(sizes, kappa_trials, seed, threads));
        } else if (accuracy->parsed()) {
            write_accuracy_csv(os,
                               accuracy_experiment(accuracy_n, accuracy_trials, seed, threads));
        }
        emit(out_path, os.str());
        return 0;
    } catch (const vacuous_pattern_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const file_parse_error& e) {
        std::cerr << "error: line " << e.line() << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
