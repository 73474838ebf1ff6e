/*
   Copyright 2026 The etherscope Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <etherscope/chain/model.hpp>
#include <etherscope/ingest/raw_bundle.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace etherscope::gas {

// Gas-price aggregate of one non-empty block. The mean is kept as the exact
// rational price_sum / tx_count.
struct GasPricePoint {
    uint64_t block_number{0};
    Wei price_sum;
    Wei median;  // lower middle for even counts
    Wei min;
    Wei max;
    uint32_t tx_count{0};

    [[nodiscard]] double mean() const;
    // Exact decimal with `digits` fractional digits, rounded half to even.
    [[nodiscard]] std::string mean_decimal(int digits = 6) const;

    friend bool operator==(const GasPricePoint&, const GasPricePoint&) = default;
};

struct GasPriceSeries {
    std::vector<GasPricePoint> points;  // strictly increasing block_number

    friend bool operator==(const GasPriceSeries&, const GasPriceSeries&) = default;
};

enum class Field { kMean, kMedian, kMin, kMax };

Field parse_field(std::string_view name);
std::string_view to_string(Field f) noexcept;

// Empty blocks yield nothing.
std::optional<GasPricePoint> block_gas_stats(const Block& block);

// Shards the stream across `workers` threads and merges in block order.
GasPriceSeries per_block_gas_stats(std::span<const ingest::RawBundle> bundles, unsigned workers = 1);

// Points with from <= block_number <= to.
GasPriceSeries slice(const GasPriceSeries& series, uint64_t from, uint64_t to);

std::vector<double> field_values(const GasPriceSeries& series, Field field);

struct SeriesValue {
    uint64_t block_number{0};
    double value{0};

    friend bool operator==(const SeriesValue&, const SeriesValue&) = default;
};

// Trailing mean over `window` consecutive points; the first window-1 points
// produce no output. Throws kInvalidWindow for window 0.
std::vector<SeriesValue> moving_average(const GasPriceSeries& series, uint32_t window, Field field);

// Least-squares slope of ln(value) against block number: the per-block
// log-rate of an exponential trend. Needs two distinct blocks and positive values.
double log_trend_slope(std::span<const SeriesValue> values);

// r(k) = sum_t (x_t - m)(x_{t+k} - m) / sum_t (x_t - m)^2 over the whole slice.
// Throws kConstantSeries for zero variance.
double autocorrelation(std::span<const double> x, uint32_t lag);

struct PeriodicityResult {
    uint32_t best_lag{0};
    double autocorrelation{0};
    std::vector<std::pair<uint32_t, double>> correlogram;  // lags min_lag..max_lag
};

// Dominant lag: argmax of r(k) over [min_lag, max_lag], ties to the smaller
// lag. Requires 1 <= min_lag <= max_lag and x.size() >= 2 * max_lag.
PeriodicityResult detect_periodicity(std::span<const double> x, uint32_t min_lag, uint32_t max_lag);

// CSV exports: fixed 6 fractional digits, byte-deterministic.
void export_series(const GasPriceSeries& series, const std::filesystem::path& path);
void export_correlogram(const PeriodicityResult& result, const std::filesystem::path& path);
void export_moving_average(std::span<const SeriesValue> values, const std::filesystem::path& path);

// "%.6f"-style rendering shared by the exports.
std::string format_fixed6(double v);

}  // namespace etherscope::gas
