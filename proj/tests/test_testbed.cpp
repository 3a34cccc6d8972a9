#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "randla/lu.hpp"
#include "randla/norms.hpp"
#include "randla/preprocess.hpp"
#include "randla/testbed/experiment.hpp"
#include "randla/testbed/inputs.hpp"
#include "randla/testbed/presets.hpp"
#include "randla/testbed/report.hpp"

using namespace randla;
using namespace randla::testbed;

TEST_CASE("hard block input carries its designed spectrum") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const RealMatrix a = gen_hard_block(64, seed);
        const auto sv = svd_values(a.leading_block(32, 32));
        std::size_t tiny = 0, near_one = 0;
        for (double s : sv) {
            if (s < 1e-12) ++tiny;
            if (std::abs(s - 1.0) < 1e-6) ++near_one;
        }
        CHECK(tiny == 4);
        CHECK(near_one == 28);
        for (auto [r0, c0] : {std::pair<std::size_t, std::size_t>{0, 32}, {32, 0}, {32, 32}}) {
            const double nrm = spectral_norm(a.block(r0, c0, 32, 32));
            CHECK(nrm >= 0.5);
            CHECK(nrm <= 2.0);
        }
    }
    CHECK_THROWS_AS(gen_hard_block(7, 1), DimensionError);
}

TEST_CASE("hard block inverse norms stay in the observed band") {
    for (int t = 0; t < 100; ++t) {
        const RealMatrix a = gen_hard_block(64, derive_seed(10, t));
        const double inv_norm = pseudo_inverse_norm(a);
        CHECK(inv_norm >= 1e1);
        CHECK(inv_norm <= 1e7);
    }
}

TEST_CASE("unpivoted elimination fails on the hard block input") {
    std::size_t failed = 0;
    const std::size_t trials = 100;
    for (std::size_t t = 0; t < trials; ++t) {
        const RealMatrix a = gen_hard_block(64, derive_seed(20, t));
        const std::vector<double> b = gen_gaussian_vector(64, derive_seed(21, t));
        try {
            const auto f = genp_factor(a);
            if (relative_residual(a, lu_solve(f, b), b) > 1e-3) ++failed;
        } catch (const ZeroPivotError&) {
            ++failed;
        }
    }
    CHECK(failed >= 90);
}

TEST_CASE("transform input: pivoted solve succeeds, unpivoted fails") {
    const ComplexMatrix a = gen_dft_input(256);
    const std::vector<Complex> b = to_complex(gen_gaussian_vector(256, 31));
    CHECK(relative_residual(a, lu_solve(gepp_factor(a), b), b) <= 1e-13);
    try {
        const auto f = genp_factor(a);
        CHECK(relative_residual(a, lu_solve(f, b), b) >= 1e-2);
    } catch (const ZeroPivotError&) {
        CHECK(true);
    }
    CHECK_THROWS_AS(gen_dft_input(100), DimensionError);
}

TEST_CASE("transform input has a numerically rank-one leading corner") {
    const ComplexMatrix a = gen_dft_input(512);
    const auto sv = svd_values(a.leading_block(2, 2));
    const double tol = 2.0 * std::sin(std::numbers::pi / 512.0) * 2.0;
    CHECK(sv[1] <= tol);
    CHECK(sv[0] > 1.0);
}

TEST_CASE("known-rank instance is what it claims to be") {
    const LowRankInstance inst = gen_lownumrank(64, 8, 41);
    CHECK(inst.singulars[7] == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
    CHECK(inst.singulars[8] == 1e-10);
    CHECK(spectral_norm(inst.a) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(condition_number(inst.a) == doctest::Approx(1e10).epsilon(0.01));
    const auto sv = svd_values(inst.a);
    for (std::size_t j = 0; j < 64; ++j) CHECK(std::abs(sv[j] - inst.singulars[j]) <= 1e-12);
    const RealMatrix back = inst.truth.reconstruct();
    CHECK(spectral_norm(inst.a - back) == doctest::Approx(1e-10).epsilon(1e-3));
}

TEST_CASE("single-trial experiments have degenerate statistics") {
    ExperimentConfig cfg;
    cfg.label = "unit/single";
    cfg.trials = 1;
    cfg.seed = 5;
    cfg.metric_names = {"value"};
    cfg.run_trial = [](std::uint64_t ts, std::size_t) {
        return std::optional<std::vector<double>>(std::vector<double>{static_cast<double>(ts % 97)});
    };
    const ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.columns[0].stats.mean == rep.columns[0].stats.max);
    CHECK(rep.columns[0].stats.mean == rep.columns[0].stats.min);
    CHECK(rep.columns[0].stats.std == 0.0);
}

TEST_CASE("pivoted baseline experiment meets the reference accuracy") {
    ExperimentConfig cfg;
    cfg.label = "unit/gepp-hard";
    cfg.trials = 100;
    cfg.seed = 7;
    cfg.metric_names = {"residual"};
    cfg.dimension = 64;
    cfg.run_trial = [](std::uint64_t ts, std::size_t) {
        const RealMatrix a = gen_hard_block(64, derive_seed(ts, 1));
        const std::vector<double> b = gen_gaussian_vector(64, derive_seed(ts, 2));
        return std::optional<std::vector<double>>(
            std::vector<double>{relative_residual(a, solve_gepp(a, b), b)});
    };
    const ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.failures == 0);
    CHECK(rep.columns[0].stats.mean <= 1e-11);
}

TEST_CASE("preprocessed experiment at n = 128 refines to the reference accuracy") {
    ExperimentConfig cfg;
    cfg.label = "unit/gaussian-hard-128";
    cfg.trials = 100;
    cfg.seed = 8;
    cfg.metric_names = {"refined_residual"};
    cfg.dimension = 128;
    cfg.run_trial = [](std::uint64_t ts, std::size_t) {
        const RealMatrix a = gen_hard_block(128, derive_seed(ts, 1));
        const std::vector<double> b = gen_gaussian_vector(128, derive_seed(ts, 2));
        MultiplierSpec post{MultiplierKind::Gaussian};
        post.seed = derive_seed(ts, 3);
        const auto out = preprocess_solve(a, b, MultiplierSpec{}, post, 1);
        return std::optional<std::vector<double>>(std::vector<double>{out.residual_history.back()});
    };
    const ExperimentReport rep = run_experiment(cfg);
    CHECK(rep.columns[0].stats.mean <= 1e-11);
}

TEST_CASE("experiments are reproducible and account for failures") {
    ExperimentConfig cfg;
    cfg.label = "unit/flaky";
    cfg.trials = 40;
    cfg.seed = 11;
    cfg.metric_names = {"value"};
    cfg.run_trial = [](std::uint64_t ts, std::size_t t) -> std::optional<std::vector<double>> {
        if (t % 5 == 0) throw SingularMatrixError("synthetic failure");
        return std::vector<double>{static_cast<double>(ts % 1000)};
    };
    const ExperimentReport a = run_experiment(cfg);
    const ExperimentReport b = run_experiment(cfg);
    CHECK(a.failures == 8);
    CHECK(a.columns[0].values.size() + a.failures == a.trials);
    CHECK(report_to_json(a).dump() == report_to_json(b).dump());
    CHECK(a.columns[0].stats.min <= a.columns[0].stats.mean);
    CHECK(a.columns[0].stats.mean <= a.columns[0].stats.max);
}

TEST_CASE("report emission formats") {
    ExperimentReport rep;
    rep.label = "unit/demo";
    rep.trials = 1;
    rep.seed = 3;
    rep.dimension = 4;
    rep.columns.push_back({"metric", summarize({0.5}), {0.5}});

    const std::string csv = emit_csv(rep);
    CHECK(csv.find("label,trials,stat,mean,max,min,std\n") == 0);
    CHECK(csv.find("unit/demo,1,metric,0.5,0.5,0.5,0\n") != std::string::npos);
    CHECK(csv.find("unit/demo,1,failures,0,0,0,0\n") != std::string::npos);

    const std::string table = emit_table(rep);
    CHECK(table.find("unit/demo") != std::string::npos);
    CHECK(table.find("5.000e-01") != std::string::npos);

    const ExperimentReport back = report_from_json(report_to_json(rep));
    CHECK(report_to_json(back).dump() == report_to_json(rep).dump());

    CHECK_THROWS_AS(parse_format("yaml"), IoError);
}

TEST_CASE("golden emission for a fixed seed run") {
    ExperimentConfig cfg;
    cfg.label = "unit/golden";
    cfg.trials = 3;
    cfg.seed = 12345;
    cfg.metric_names = {"draw"};
    cfg.run_trial = [](std::uint64_t ts, std::size_t) {
        RngStream rng(ts);
        return std::optional<std::vector<double>>(std::vector<double>{rng.next_double()});
    };
    const std::string csv = emit_csv(run_experiment(cfg));
    const std::string expected =
        "label,trials,stat,mean,max,min,std\n"
        "unit/golden,3,draw,0.27212314401380694,0.58099988541126291,0.063155289723205499,"
        "0.22290071872626696\n"
        "unit/golden,3,failures,0,0,0,0\n";
    CHECK(csv == expected);
}

TEST_CASE("presets exist and run at a reduced scale") {
    CHECK_THROWS_AS(find_preset("table99"), IoError);
    for (const char* name : {"table2", "table3", "table4", "table5", "table5a", "table6", "table7",
                             "table8", "table9", "table10", "table11", "table12", "table13", "table14"}) {
        CHECK(find_preset(name).name == name);
    }
    // smoke-run the cheapest preset end to end with few trials
    const Preset& p = find_preset("table2");
    const auto reports = p.run(99, 5, false);
    CHECK(reports.size() == 3);
    CHECK(reports[0].dimension == 64);
    CHECK(reports[0].trials == 5);
    const auto checks = p.check(reports);
    CHECK(!checks.empty());
}
