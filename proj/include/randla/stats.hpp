#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace randla {

// mean/max/min plus population standard deviation (divide by the count, not
// count - 1), computed in a stable two-pass sweep
struct StatSummary {
    double mean = 0.0;
    double max = 0.0;
    double min = 0.0;
    double std = 0.0;
};

inline StatSummary summarize(const std::vector<double>& values) {
    if (values.empty()) throw std::invalid_argument("summarize: no values");
    StatSummary s;
    s.min = s.max = values.front();
    double sum = 0.0;
    for (double v : values) {
        sum += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.mean = sum / static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(var / static_cast<double>(values.size()));
    return s;
}

}  // namespace randla
