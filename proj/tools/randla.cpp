// Command-line front end: seeded solve / low-rank / probe runs and the named
// experiment presets, reported as table, csv, or json.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "randla/block_ge.hpp"
#include "randla/lowrank.hpp"
#include "randla/matrix_io.hpp"
#include "randla/norm_stats.hpp"
#include "randla/preprocess.hpp"
#include "randla/testbed/presets.hpp"

namespace {

using namespace randla;
using namespace randla::testbed;

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw IoError("cannot write " + out_path);
    f << text;
}

std::vector<std::size_t> parse_split(const std::string& s, std::size_t n) {
    if (s.empty()) return balanced_split(n);
    std::vector<std::size_t> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        const std::size_t comma = s.find(',', pos);
        const std::size_t end = comma == std::string::npos ? s.size() : comma;
        out.push_back(std::stoull(s.substr(pos, end - pos)));
        pos = end + 1;
    }
    return out;
}

struct SolveOptions {
    std::string matrix = "hardblock";
    std::size_t n = 64;
    std::string method = "genp";
    std::string split;
    std::string pre = "none";
    std::string post = "none";
    std::size_t refine = 0;
    std::uint64_t seed = 0;
    std::size_t trials = 100;
    std::string format = "table";
    std::string out;
};

template <ScalarField T>
std::vector<double> solve_trial(const Matrix<T>& a, const std::vector<T>& b, const SolveOptions& opt,
                                const MultiplierSpec& pre, const MultiplierSpec& post) {
    if (opt.method == "gepp") {
        const LuFactors<T> f = gepp_factor(a);
        auto out = iterative_refine<T>(a, f, b, std::vector<T>(b.size(), T{}), opt.refine + 1);
        out.residual_history.erase(out.residual_history.begin());
        return out.residual_history;
    }
    if (opt.method == "block") {
        const auto pre_side = SideMultiplier<T>::make(pre, a.rows());
        const auto post_side = SideMultiplier<T>::make(post, a.rows());
        const Matrix<T> product = pre_side.left_multiply(post_side.right_multiply(a));
        const auto factors = block_ge_factor(product, parse_split(opt.split, a.rows()));
        auto solver = [&](const std::vector<T>& r) {
            return post_side.apply_vec(block_solve(factors, pre_side.apply_vec(r)));
        };
        auto out = iterative_refine<T>(a, solver, b, std::vector<T>(b.size(), T{}), opt.refine + 1);
        out.residual_history.erase(out.residual_history.begin());
        return out.residual_history;
    }
    return preprocess_solve(a, b, pre, post, opt.refine).residual_history;
}

int run_solve(const SolveOptions& opt) {
    const MultiplierSpec pre = parse_multiplier_token(opt.pre);
    const MultiplierSpec post = parse_multiplier_token(opt.post);
    if (opt.method == "gepp" &&
        (pre.kind != MultiplierKind::None || post.kind != MultiplierKind::None))
        throw IoError("pivoted baseline takes no multipliers");

    std::optional<AnyMatrix> fixed;
    std::size_t n = opt.n;
    if (opt.matrix == "dft") {
        fixed = gen_dft_input(n);
    } else if (opt.matrix != "hardblock") {
        std::string path = opt.matrix;
        if (path.rfind("fixture:", 0) == 0) path = path.substr(8);
        fixed = read_matrix_file(path);
        n = std::visit([](const auto& m) { return m.rows(); }, *fixed);
    }

    const bool complex_path =
        multiplier_is_complex(pre) || multiplier_is_complex(post) ||
        (fixed && std::holds_alternative<ComplexMatrix>(*fixed));

    ExperimentConfig cfg;
    cfg.label = "solve/" + opt.matrix + "/" + opt.method + "/n=" + std::to_string(n);
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    for (std::size_t s = 0; s <= opt.refine; ++s)
        cfg.metric_names.push_back("residual_iter" + std::to_string(s));
    cfg.multiplier_token = opt.post;
    cfg.refine_steps = opt.refine;
    cfg.dimension = n;
    cfg.run_trial = [&, complex_path](std::uint64_t ts, std::size_t) {
        MultiplierSpec pre_t = pre, post_t = post;
        pre_t.seed = derive_seed(ts, 4);
        post_t.seed = derive_seed(ts, 3);
        const std::vector<double> b = gen_gaussian_vector(n, derive_seed(ts, 2));
        std::vector<double> history;
        if (complex_path) {
            ComplexMatrix a = fixed ? std::visit([](const auto& m) { return to_complex(m); }, *fixed)
                                    : to_complex(gen_hard_block(n, derive_seed(ts, 1)));
            history = solve_trial(a, to_complex(b), opt, pre_t, post_t);
        } else {
            RealMatrix a = fixed ? std::get<RealMatrix>(*fixed) : gen_hard_block(n, derive_seed(ts, 1));
            history = solve_trial(a, b, opt, pre_t, post_t);
        }
        while (history.size() < opt.refine + 1) history.push_back(history.back());
        return std::optional<std::vector<double>>(std::move(history));
    };

    const ExperimentReport report = run_experiment(cfg);
    write_output(emit_report(report, parse_format(opt.format)), opt.out);
    return 0;
}

struct LowrankOptions {
    std::size_t n = 64;
    std::size_t rank = 8;
    std::size_t oversample = 0;
    std::size_t power = 0;
    std::string multiplier = "gaussian";
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::string format = "table";
    std::string out;
};

int run_lowrank(const LowrankOptions& opt) {
    const MultiplierSpec base = parse_multiplier_token(opt.multiplier);
    ExperimentConfig cfg;
    cfg.label = "lowrank/n=" + std::to_string(opt.n) + "/r=" + std::to_string(opt.rank);
    cfg.trials = opt.trials;
    cfg.seed = opt.seed;
    cfg.metric_names = {"rn1", "rn2", "delta_plus", "delta_plus_prime", "ratio_rn1", "ratio_rn2"};
    cfg.multiplier_token = opt.multiplier;
    cfg.dimension = opt.n;
    cfg.run_trial = [&](std::uint64_t ts, std::size_t) {
        const LowRankInstance inst = gen_lownumrank(opt.n, opt.rank, derive_seed(ts, 1));
        MultiplierSpec spec = base;
        spec.seed = derive_seed(ts, 2);
        spec.rows = opt.n;
        spec.cols = opt.rank + opt.oversample;
        SubspaceResiduals rn;
        BoundReport rep;
        if (multiplier_is_complex(spec)) {
            const ComplexMatrix ac = to_complex(inst.a);
            const auto result = range_find(ac, opt.rank, opt.oversample, spec, opt.power);
            rn = subspace_residual(ac, result, to_complex(inst.truth));
            rep = error_bounds_from_parts(to_complex(inst.truth.right), inst.singulars,
                                          materialize<Complex>(spec), opt.rank);
        } else {
            const auto result = range_find(inst.a, opt.rank, opt.oversample, spec, opt.power);
            rn = subspace_residual(inst.a, result, inst.truth);
            rep = error_bounds_from_parts(inst.truth.right, inst.singulars, materialize<double>(spec),
                                          opt.rank);
        }
        return std::optional<std::vector<double>>(
            std::vector<double>{rn.rn1, rn.rn2, rep.delta_plus, rep.delta_plus_prime,
                                rn.rn1 / rep.delta_plus, rn.rn2 / rep.delta_plus_prime});
    };
    const ExperimentReport report = run_experiment(cfg);
    write_output(emit_report(report, parse_format(opt.format)), opt.out);
    return 0;
}

struct ProbeOptions {
    std::string multiplier = "gaussian";
    std::size_t rows = 64;
    std::size_t cols = 64;
    std::size_t trials = 100;
    std::uint64_t seed = 0;
    std::string format = "table";
    std::string out;
};

int run_probe(const ProbeOptions& opt) {
    MultiplierSpec spec = parse_multiplier_token(opt.multiplier);
    spec.rows = opt.rows;
    spec.cols = opt.cols;
    spec.seed = opt.seed;
    const RandomNormStats stats = probe_norm_stats(spec, opt.trials);
    ExperimentReport report;
    report.label = "probe/" + opt.multiplier + "/" + std::to_string(opt.rows) + "x" + std::to_string(opt.cols);
    report.trials = opt.trials;
    report.seed = opt.seed;
    report.multiplier = opt.multiplier;
    report.dimension = opt.rows;
    report.columns = {{"norm", stats.norm, {}}, {"pinv_norm", stats.pinv_norm, {}}, {"cond", stats.cond, {}}};
    write_output(emit_report(report, parse_format(opt.format)), opt.out);
    return 0;
}

struct ExperimentOptions {
    std::string preset;
    std::uint64_t seed = 0;
    std::size_t trials = 100;
    bool full = false;
    bool check = false;
    std::string format = "table";
    std::string out;
};

int run_preset(const ExperimentOptions& opt) {
    const Preset& preset = find_preset(opt.preset);
    const std::vector<ExperimentReport> reports = preset.run(opt.seed, opt.trials, opt.full);
    write_output(emit_reports(reports, parse_format(opt.format)), opt.out);
    if (!opt.check) return 0;
    if (!preset.check) {
        std::cerr << opt.preset << ": no checks defined\n";
        return 0;
    }
    bool all_ok = true;
    for (const CheckResult& c : preset.check(reports)) {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << opt.preset << ": " << c.description << "\n";
        all_ok = all_ok && c.passed;
    }
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomized multiplicative preprocessing workbench"};
    app.require_subcommand(1);

    SolveOptions sopt;
    CLI::App* solve = app.add_subcommand("solve", "linear solves with optional random multipliers");
    solve->add_option("--matrix", sopt.matrix, "hardblock | dft | fixture:<path>");
    solve->add_option("--n", sopt.n, "dimension for generated matrices");
    solve->add_option("--method", sopt.method, "genp | gepp | block")
        ->check(CLI::IsMember({"genp", "gepp", "block"}));
    solve->add_option("--split", sopt.split, "comma-separated block sizes for --method block");
    solve->add_option("--pre", sopt.pre, "left multiplier token");
    solve->add_option("--post", sopt.post, "right multiplier token");
    solve->add_option("--refine", sopt.refine, "iterative refinement steps");
    solve->add_option("--seed", sopt.seed, "base seed");
    solve->add_option("--trials", sopt.trials, "trial count");
    solve->add_option("--format", sopt.format, "table | csv | json");
    solve->add_option("--out", sopt.out, "output path (stdout when absent)");

    LowrankOptions lopt;
    CLI::App* lowrank = app.add_subcommand("lowrank", "randomized low-rank approximation runs");
    lowrank->add_option("--n", lopt.n, "dimension");
    lowrank->add_option("--rank", lopt.rank, "target rank");
    lowrank->add_option("--oversample", lopt.oversample, "extra sketch columns");
    lowrank->add_option("--power", lopt.power, "power transform steps");
    lowrank->add_option("--multiplier", lopt.multiplier, "sketch multiplier token");
    lowrank->add_option("--trials", lopt.trials, "trial count");
    lowrank->add_option("--seed", lopt.seed, "base seed");
    lowrank->add_option("--format", lopt.format, "table | csv | json");
    lowrank->add_option("--out", lopt.out, "output path");

    ProbeOptions popt;
    CLI::App* probe = app.add_subcommand("probe", "norm and condition statistics of multiplier families");
    probe->add_option("--multiplier", popt.multiplier, "multiplier token");
    probe->add_option("--rows", popt.rows, "sample rows");
    probe->add_option("--cols", popt.cols, "sample cols");
    probe->add_option("--trials", popt.trials, "trial count");
    probe->add_option("--seed", popt.seed, "base seed");
    probe->add_option("--format", popt.format, "table | csv | json");
    probe->add_option("--out", popt.out, "output path");

    ExperimentOptions eopt;
    CLI::App* experiment = app.add_subcommand("experiment", "named experiment presets");
    std::vector<std::string> names;
    for (const auto& p : randla::testbed::presets()) names.push_back(p.name);
    experiment->add_option("--preset", eopt.preset, "preset name")
        ->required()
        ->check(CLI::IsMember(names));
    experiment->add_option("--seed", eopt.seed, "base seed");
    experiment->add_option("--trials", eopt.trials, "trials per dimension");
    experiment->add_flag("--full", eopt.full, "include the large dimensions");
    experiment->add_flag("--check", eopt.check, "evaluate acceptance thresholds; exit 2 on violation");
    experiment->add_option("--format", eopt.format, "table | csv | json");
    experiment->add_option("--out", eopt.out, "output path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return run_solve(sopt);
        if (*lowrank) return run_lowrank(lopt);
        if (*probe) return run_probe(popt);
        if (*experiment) return run_preset(eopt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
