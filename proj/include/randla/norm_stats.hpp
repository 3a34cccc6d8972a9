#pragma once

#include <vector>

#include "randla/multipliers.hpp"
#include "randla/parallel.hpp"
#include "randla/stats.hpp"
#include "randla/svd.hpp"

namespace randla {

// Monte-Carlo condition statistics of a multiplier family: spectral norm,
// pseudo-inverse norm and condition number per sample, aggregated over trials.
struct RandomNormStats {
    MultiplierSpec family;
    std::size_t samples = 0;
    StatSummary norm;       // sigma_1
    StatSummary pinv_norm;  // 1 / sigma_min
    StatSummary cond;       // sigma_1 / sigma_min
};

// Trial t samples the family with the derived seed (spec.seed, t), so probes
// reproduce bit-identically and may fan out across threads. Exactly singular
// samples surface as infinities in the pseudo-inverse and condition columns.
inline RandomNormStats probe_norm_stats(const MultiplierSpec& spec, std::size_t trials) {
    if (trials < 1) throw DimensionError("probe_norm_stats: trials must be >= 1");
    std::vector<double> norms(trials), pinvs(trials), conds(trials);
    parallel_for_index(trials, [&](std::size_t t) {
        MultiplierSpec draw = spec;
        draw.seed = derive_seed(spec.seed, t);
        std::vector<double> sv;
        if (multiplier_is_complex(draw))
            sv = svd_values(materialize<Complex>(draw));
        else
            sv = svd_values(materialize<double>(draw));
        norms[t] = sv.front();
        pinvs[t] = 1.0 / sv.back();
        conds[t] = sv.front() / sv.back();
    });
    RandomNormStats out{spec, trials, summarize(norms), summarize(pinvs), summarize(conds)};
    return out;
}

}  // namespace randla
