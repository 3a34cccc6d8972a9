#pragma once

#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "randla/lowrank.hpp"
#include "randla/preprocess.hpp"
#include "randla/testbed/experiment.hpp"
#include "randla/testbed/inputs.hpp"

namespace randla::testbed {

// Named experiment presets behind the CLI. Each sweeps its dimensions, emits
// one report per dimension, and carries the pass/fail thresholds that --check
// evaluates.

struct CheckResult {
    std::string description;
    bool passed = false;
};

struct Preset {
    std::string name;
    std::string summary;
    std::function<std::vector<ExperimentReport>(std::uint64_t seed, std::size_t trials, bool full)> run;
    std::function<std::vector<CheckResult>(const std::vector<ExperimentReport>&)> check;
};

namespace detail {

inline std::vector<std::size_t> solve_dims(bool full) {
    return full ? std::vector<std::size_t>{64, 128, 256, 512, 1024} : std::vector<std::size_t>{64, 128, 256};
}

inline std::vector<std::size_t> lowrank_dims(bool full) {
    return full ? std::vector<std::size_t>{64, 128, 256, 512} : std::vector<std::size_t>{64, 128};
}

inline const ExperimentReport* report_at(const std::vector<ExperimentReport>& rs, std::size_t dim) {
    for (const auto& r : rs)
        if (r.dimension == dim) return &r;
    return nullptr;
}

inline std::string fmt_g3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

inline double fraction_below(const std::vector<double>& values, std::size_t trials, double threshold) {
    std::size_t hits = 0;
    for (double v : values) hits += (v <= threshold) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(trials);
}

// mean/max threshold check on one column of the report at one dimension
inline CheckResult check_stat(const std::vector<ExperimentReport>& rs, std::size_t dim,
                              const std::string& column, bool use_max, double threshold) {
    CheckResult c;
    c.description = std::string(use_max ? "max " : "mean ") + column + " <= " + fmt_g3(threshold) +
                    " at n=" + std::to_string(dim);
    const ExperimentReport* r = report_at(rs, dim);
    if (!r) return c;
    const auto& col = r->column(column);
    if (col.values.empty()) return c;
    c.passed = (use_max ? col.stats.max : col.stats.mean) <= threshold;
    return c;
}

// fraction-of-trials check: value <= threshold in at least `quota` of trials
// (failed trials count against the quota)
inline CheckResult check_fraction(const std::vector<ExperimentReport>& rs, std::size_t dim,
                                  const std::string& column, double threshold, double quota) {
    CheckResult c;
    c.description = column + " <= " + fmt_g3(threshold) + " in >= " + fmt_g3(100.0 * quota) +
                    "% of trials at n=" + std::to_string(dim);
    const ExperimentReport* r = report_at(rs, dim);
    if (!r) return c;
    const auto& col = r->column(column);
    c.passed = fraction_below(col.values, r->trials, threshold) >= quota;
    return c;
}

// preprocessed unpivoted solve on freshly drawn hard-block inputs; one report
// column per refinement stage
inline std::vector<ExperimentReport> run_hardblock_preprocessed(const std::string& label,
                                                                const MultiplierSpec& post_base,
                                                                std::uint64_t seed, std::size_t trials,
                                                                bool full, std::size_t refine) {
    std::vector<ExperimentReport> out;
    for (std::size_t n : solve_dims(full)) {
        ExperimentConfig cfg;
        cfg.label = label + "/n=" + std::to_string(n);
        cfg.trials = trials;
        cfg.seed = seed;
        for (std::size_t s = 0; s <= refine; ++s)
            cfg.metric_names.push_back("residual_iter" + std::to_string(s));
        cfg.multiplier_token = format_multiplier_token(post_base);
        cfg.refine_steps = refine;
        cfg.dimension = n;
        const bool complex_path = multiplier_is_complex(post_base);
        cfg.run_trial = [n, post_base, refine, complex_path](std::uint64_t ts, std::size_t) {
            const RealMatrix a = gen_hard_block(n, derive_seed(ts, 1));
            const std::vector<double> b = gen_gaussian_vector(n, derive_seed(ts, 2));
            MultiplierSpec post = post_base;
            post.seed = derive_seed(ts, 3);
            const MultiplierSpec none;
            std::vector<double> history;
            if (complex_path)
                history = preprocess_solve(to_complex(a), to_complex(b), none, post, refine).residual_history;
            else
                history = preprocess_solve(a, b, none, post, refine).residual_history;
            while (history.size() < refine + 1) history.push_back(history.back());
            return std::optional<std::vector<double>>(std::move(history));
        };
        out.push_back(run_experiment(cfg));
    }
    return out;
}

// residuals of the zero-oversampling range finder on the known-rank inputs;
// rn1 measures the basis, rn2 the rank-r approximation, each against its
// deterministic bound
inline std::vector<ExperimentReport> run_lowrank_preset(const std::string& label,
                                                        const MultiplierSpec& spec_base, bool basis_metric,
                                                        std::uint64_t seed, std::size_t trials, bool full,
                                                        std::size_t r = 8) {
    std::vector<ExperimentReport> out;
    for (std::size_t n : lowrank_dims(full)) {
        ExperimentConfig cfg;
        cfg.label = label + "/n=" + std::to_string(n);
        cfg.trials = trials;
        cfg.seed = seed;
        cfg.metric_names = basis_metric ? std::vector<std::string>{"rn1", "ratio_rn1"}
                                        : std::vector<std::string>{"rn2", "ratio_rn2"};
        cfg.multiplier_token = format_multiplier_token(spec_base);
        cfg.dimension = n;
        const bool complex_path = multiplier_is_complex(spec_base);
        cfg.run_trial = [n, r, spec_base, basis_metric, complex_path](std::uint64_t ts, std::size_t) {
            const LowRankInstance inst = gen_lownumrank(n, r, derive_seed(ts, 1));
            MultiplierSpec spec = spec_base;
            spec.seed = derive_seed(ts, 2);
            spec.rows = n;
            spec.cols = r;
            double rn, bound;
            if (complex_path) {
                const ComplexMatrix ac = to_complex(inst.a);
                const auto result = range_find(ac, r, 0, spec, 0);
                const BoundReport rep = error_bounds_from_parts(to_complex(inst.truth.right),
                                                                inst.singulars, materialize<Complex>(spec), r);
                if (basis_metric) {
                    rn = basis_residual(result, to_complex(inst.truth));
                    bound = rep.delta_plus;
                } else {
                    rn = approximation_residual(ac, result);
                    bound = rep.delta_plus_prime;
                }
            } else {
                const auto result = range_find(inst.a, r, 0, spec, 0);
                const BoundReport rep =
                    error_bounds_from_parts(inst.truth.right, inst.singulars, materialize<double>(spec), r);
                if (basis_metric) {
                    rn = basis_residual(result, inst.truth);
                    bound = rep.delta_plus;
                } else {
                    rn = approximation_residual(inst.a, result);
                    bound = rep.delta_plus_prime;
                }
            }
            return std::optional<std::vector<double>>({rn, rn / bound});
        };
        out.push_back(run_experiment(cfg));
    }
    return out;
}

}  // namespace detail

inline const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = [] {
        std::vector<Preset> ps;
        const MultiplierSpec gaussian{MultiplierKind::Gaussian};
        const MultiplierSpec real_circ{MultiplierKind::RealCirculant};
        const MultiplierSpec unit_circ{MultiplierKind::UnitaryCirculant};
        MultiplierSpec toep_real{MultiplierKind::ToeplitzBlock};
        toep_real.variant = ToeplitzVariant::Real;
        MultiplierSpec toep_unit{MultiplierKind::ToeplitzBlock};
        toep_unit.variant = ToeplitzVariant::Unitary;

        // pivoted elimination baseline on the hard-block inputs
        ps.push_back(Preset{
            "table2", "pivoted elimination baseline on hard-block inputs",
            [](std::uint64_t seed, std::size_t trials, bool full) {
                std::vector<ExperimentReport> out;
                for (std::size_t n : detail::solve_dims(full)) {
                    ExperimentConfig cfg;
                    cfg.label = "table2/n=" + std::to_string(n);
                    cfg.trials = trials;
                    cfg.seed = seed;
                    cfg.metric_names = {"residual"};
                    cfg.dimension = n;
                    cfg.run_trial = [n](std::uint64_t ts, std::size_t) {
                        const RealMatrix a = gen_hard_block(n, derive_seed(ts, 1));
                        const std::vector<double> b = gen_gaussian_vector(n, derive_seed(ts, 2));
                        const std::vector<double> x = solve_gepp(a, b);
                        return std::optional<std::vector<double>>(
                            std::vector<double>{relative_residual(a, x, b)});
                    };
                    out.push_back(run_experiment(cfg));
                }
                return out;
            },
            [](const std::vector<ExperimentReport>& rs) {
                return std::vector<CheckResult>{detail::check_stat(rs, 64, "residual", false, 1e-11)};
            }});

        ps.push_back(Preset{"table3", "unpivoted elimination with Gaussian multipliers on hard-block inputs",
                            [gaussian](std::uint64_t seed, std::size_t trials, bool full) {
                                return detail::run_hardblock_preprocessed("table3", gaussian, seed, trials,
                                                                          full, 1);
                            },
                            [](const std::vector<ExperimentReport>& rs) {
                                return std::vector<CheckResult>{
                                    detail::check_stat(rs, 64, "residual_iter0", true, 1e-4),
                                    detail::check_stat(rs, 64, "residual_iter0", false, 1e-6),
                                    detail::check_stat(rs, 64, "residual_iter1", false, 1e-11),
                                    detail::check_stat(rs, 128, "residual_iter1", false, 1e-11)};
                            }});

        ps.push_back(Preset{"table4", "unpivoted elimination with real circulant multipliers",
                            [real_circ](std::uint64_t seed, std::size_t trials, bool full) {
                                return detail::run_hardblock_preprocessed("table4", real_circ, seed, trials,
                                                                          full, 1);
                            },
                            [](const std::vector<ExperimentReport>& rs) {
                                return std::vector<CheckResult>{
                                    detail::check_stat(rs, 64, "residual_iter0", false, 1e-8)};
                            }});

        ps.push_back(Preset{"table5", "unpivoted elimination with unitary circulant multipliers",
                            [unit_circ](std::uint64_t seed, std::size_t trials, bool full) {
                                return detail::run_hardblock_preprocessed("table5", unit_circ, seed, trials,
                                                                          full, 1);
                            },
                            [](const std::vector<ExperimentReport>& rs) {
                                return std::vector<CheckResult>{
                                    detail::check_stat(rs, 64, "residual_iter0", false, 1e-8)};
                            }});

        // unpivoted elimination on the transform matrix, Gaussian rescue
        ps.push_back(Preset{
            "table5a", "unpivoted elimination with Gaussian multipliers on the DFT matrix",
            [gaussian](std::uint64_t seed, std::size_t trials, bool full) {
                std::vector<ExperimentReport> out;
                for (std::size_t n : detail::solve_dims(full)) {
                    ExperimentConfig cfg;
                    cfg.label = "table5a/n=" + std::to_string(n);
                    cfg.trials = trials;
                    cfg.seed = seed;
                    cfg.metric_names = {"residual_iter0", "residual_iter1"};
                    cfg.multiplier_token = "gaussian";
                    cfg.refine_steps = 1;
                    cfg.dimension = n;
                    auto a = std::make_shared<ComplexMatrix>(gen_dft_input(n));
                    cfg.run_trial = [a, n, gaussian](std::uint64_t ts, std::size_t) {
                        const std::vector<Complex> b = to_complex(gen_gaussian_vector(n, derive_seed(ts, 2)));
                        MultiplierSpec post = gaussian;
                        post.seed = derive_seed(ts, 3);
                        const MultiplierSpec none;
                        auto history = preprocess_solve(*a, b, none, post, 1).residual_history;
                        while (history.size() < 2) history.push_back(history.back());
                        return std::optional<std::vector<double>>(std::move(history));
                    };
                    out.push_back(run_experiment(cfg));
                }
                return out;
            },
            [](const std::vector<ExperimentReport>& rs) {
                return std::vector<CheckResult>{detail::check_fraction(rs, 256, "residual_iter0", 1e-4, 0.95)};
            }});

        ps.push_back(Preset{"table6", "basis residual rn1, Gaussian sketch, no oversampling",
                            [gaussian](std::uint64_t seed, std::size_t trials, bool full) {
                                return detail::run_lowrank_preset("table6", gaussian, true, seed, trials, full);
                            },
                            [](const std::vector<ExperimentReport>& rs) {
                                return std::vector<CheckResult>{
                                    detail::check_fraction(rs, 64, "ratio_rn1", 1.01, 0.99)};
                            }});

        ps.push_back(Preset{"table7", "approximation residual rn2, Gaussian sketch, no oversampling",
                            [gaussian](std::uint64_t seed, std::size_t trials, bool full) {
                                return detail::run_lowrank_preset("table7", gaussian, false, seed, trials, full);
                            },
                            [](const std::vector<ExperimentReport>& rs) {
                                return std::vector<CheckResult>{
                                    detail::check_stat(rs, 64, "rn2", false, 1e-6),
                                    detail::check_stat(rs, 64, "ratio_rn2", false, 0.1),
                                    detail::check_fraction(rs, 64, "ratio_rn2", 1.0, 0.99)};
                            }});

        ps.push_back(Preset{"table8", "approximation residual rn2, real Toeplitz sketch",
                            [toep_real](std::uint64_t seed, std::size_t trials, bool full) {
                                return detail::run_lowrank_preset("table8", toep_real, false, seed, trials, full);
                            },
                            [](const std::vector<ExperimentReport>& rs) {
                                return std::vector<CheckResult>{
                                    detail::check_stat(rs, 64, "rn2", false, 1e-6),
                                    detail::check_fraction(rs, 64, "ratio_rn2", 1.0, 0.99)};
                            }});

        ps.push_back(Preset{"table9", "approximation residual rn2, unitary Toeplitz sketch",
                            [toep_unit](std::uint64_t seed, std::size_t trials, bool full) {
                                return detail::run_lowrank_preset("table9", toep_unit, false, seed, trials, full);
                            },
                            [](const std::vector<ExperimentReport>& rs) {
                                return std::vector<CheckResult>{
                                    detail::check_stat(rs, 64, "rn2", false, 1e-6),
                                    detail::check_fraction(rs, 64, "ratio_rn2", 1.0, 0.99)};
                            }});

        ps.push_back(Preset{"table10", "basis residual rn1, real Toeplitz sketch",
                            [toep_real](std::uint64_t seed, std::size_t trials, bool full) {
                                return detail::run_lowrank_preset("table10", toep_real, true, seed, trials, full);
                            },
                            [](const std::vector<ExperimentReport>& rs) {
                                return std::vector<CheckResult>{
                                    detail::check_fraction(rs, 64, "ratio_rn1", 1.01, 0.99)};
                            }});

        ps.push_back(Preset{"table11", "basis residual rn1, unitary Toeplitz sketch",
                            [toep_unit](std::uint64_t seed, std::size_t trials, bool full) {
                                return detail::run_lowrank_preset("table11", toep_unit, true, seed, trials, full);
                            },
                            [](const std::vector<ExperimentReport>& rs) {
                                return std::vector<CheckResult>{
                                    detail::check_fraction(rs, 64, "ratio_rn1", 1.01, 0.99)};
                            }});

        // a-posteriori residual estimator coverage
        ps.push_back(Preset{
            "table12", "a-posteriori residual estimator against the true residual",
            [](std::uint64_t seed, std::size_t trials, bool full) {
                std::vector<ExperimentReport> out;
                for (std::size_t n : detail::lowrank_dims(full)) {
                    ExperimentConfig cfg;
                    cfg.label = "table12/n=" + std::to_string(n);
                    cfg.trials = trials;
                    cfg.seed = seed;
                    cfg.metric_names = {"estimate", "true_rn2", "covered"};
                    cfg.multiplier_token = "gaussian";
                    cfg.dimension = n;
                    cfg.run_trial = [n](std::uint64_t ts, std::size_t) {
                        const std::size_t r = 8;
                        const LowRankInstance inst = gen_lownumrank(n, r, derive_seed(ts, 1));
                        MultiplierSpec spec{MultiplierKind::Gaussian};
                        spec.seed = derive_seed(ts, 2);
                        const auto result = range_find(inst.a, r, 0, spec, 0);
                        const double truth = approximation_residual(inst.a, result);
                        const double est = posterior_estimate(inst.a, result, 5, derive_seed(ts, 3));
                        return std::optional<std::vector<double>>(
                            {est, truth, est >= truth ? 1.0 : 0.0});
                    };
                    out.push_back(run_experiment(cfg));
                }
                return out;
            },
            [](const std::vector<ExperimentReport>& rs) {
                CheckResult c;
                c.description = "estimate covers the true residual in >= 99% of trials at n=64";
                if (const ExperimentReport* r = detail::report_at(rs, 64))
                    c.passed = r->column("covered").stats.mean >= 0.99;
                return std::vector<CheckResult>{c};
            }});

        // conditioning of the rank-side product against the sketch's own block
        ps.push_back(Preset{
            "table13", "inverse-norm ratio of T_r^H H against the leading block of H",
            [](std::uint64_t seed, std::size_t trials, bool full) {
                std::vector<ExperimentReport> out;
                for (std::size_t n : detail::lowrank_dims(full)) {
                    ExperimentConfig cfg;
                    cfg.label = "table13/n=" + std::to_string(n);
                    cfg.trials = trials;
                    cfg.seed = seed;
                    cfg.metric_names = {"inv_norm_ratio"};
                    cfg.multiplier_token = "gaussian";
                    cfg.dimension = n;
                    cfg.run_trial = [n](std::uint64_t ts, std::size_t) {
                        const std::size_t r = 8;
                        const LowRankInstance inst = gen_lownumrank(n, r, derive_seed(ts, 1));
                        const RealMatrix h = gen_gaussian(n, r, derive_seed(ts, 2));
                        const double num = 1.0 / svd_values(matmul(inst.truth.right.transpose(), h)).back();
                        const double den = 1.0 / svd_values(h.leading_block(r, r)).back();
                        return std::optional<std::vector<double>>(std::vector<double>{num / den});
                    };
                    out.push_back(run_experiment(cfg));
                }
                return out;
            },
            nullptr});

        // sampled-transform sketch at the width its guarantee prescribes
        ps.push_back(Preset{
            "table14", "sampled-transform sketch residual against its guarantee",
            [](std::uint64_t seed, std::size_t trials, bool full) {
                std::vector<ExperimentReport> out;
                const std::vector<std::size_t> dims =
                    full ? std::vector<std::size_t>{64, 128, 256, 1024} : std::vector<std::size_t>{64, 128};
                for (std::size_t n : dims) {
                    for (SketchVariant variant : {SketchVariant::Srft, SketchVariant::CirculantPermutation}) {
                        ExperimentConfig cfg;
                        const char* vname = variant == SketchVariant::Srft ? "srft" : "circperm";
                        cfg.label = std::string("table14/") + vname + "/n=" + std::to_string(n);
                        cfg.trials = trials;
                        cfg.seed = seed;
                        cfg.metric_names = {"residual", "bound", "within"};
                        cfg.multiplier_token = vname;
                        cfg.dimension = n;
                        cfg.run_trial = [n, variant](std::uint64_t ts, std::size_t) {
                            const std::size_t r = 8;
                            const LowRankInstance inst = gen_lownumrank(n, r, derive_seed(ts, 1));
                            const auto res =
                                srft_sketch_check(inst.a, r, derive_seed(ts, 2), variant, inst.singulars[r]);
                            return std::optional<std::vector<double>>(
                                {res.residual, res.bound, res.residual <= res.bound ? 1.0 : 0.0});
                        };
                        out.push_back(run_experiment(cfg));
                    }
                }
                return out;
            },
            [](const std::vector<ExperimentReport>& rs) {
                std::vector<CheckResult> cs;
                for (const auto& r : rs) {
                    CheckResult c;
                    c.description = r.label + ": residual under the guarantee in >= 99% of trials";
                    c.passed = !r.column("within").values.empty() && r.column("within").stats.mean >= 0.99;
                    cs.push_back(c);
                }
                return cs;
            }});

        return ps;
    }();
    return all;
}

inline const Preset& find_preset(const std::string& name) {
    for (const auto& p : presets())
        if (p.name == name) return p;
    throw IoError("unknown preset: " + name);
}

}  // namespace randla::testbed
