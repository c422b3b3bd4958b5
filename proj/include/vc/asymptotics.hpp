#pragma once

#include <string>
#include <vector>

#include "vc/state_sum.hpp"

namespace vc {

enum class SeriesMethod { Oracle, Reduced, Full };
SeriesMethod parse_method(const std::string& s);
const char* method_name(SeriesMethod m);

struct Sample {
    int N = 0;
    cplx value;          // zero when only the log is known
    double log_abs = 0;  // log |<K>_N|
};

struct Series {
    std::vector<Sample> samples;
    bool truncated = false;  // stopped at the budget
    std::string note;
};

// <K>_N for N in [n_min, n_max].  Oracle is the closed form for the figure-eight.
Series invariant_series(const KnotDiagram& d, int n_min, int n_max, SeriesMethod method,
                        const StateSumOptions& opt = {}, int threads = 1);

enum class GrowthModel { Linear, LogCorrected };
GrowthModel parse_model(const std::string& s);
const char* model_name(GrowthModel m);

// log|<K>_N| ~ a N + b log N + c  (b = 0 for the linear model); vol = 2 pi a
struct GrowthFit {
    GrowthModel model = GrowthModel::LogCorrected;
    int n_lo = 0, n_hi = 0, used = 0;
    double slope = 0, log_coef = 0, intercept = 0;
    double volume = 0;
    double half_width = 0;  // two standard errors of the volume
    double rms = 0;
};

// window_start < 0 picks the upper half of the samples
GrowthFit fit_growth(const std::vector<Sample>& samples, GrowthModel model, int window_start = -1);

}  // namespace vc
