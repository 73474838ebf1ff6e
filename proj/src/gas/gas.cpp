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

#include <etherscope/error.hpp>
#include <etherscope/gas/gas.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

namespace etherscope::gas {

namespace fs = std::filesystem;

double GasPricePoint::mean() const {
    // Integer part exactly, remainder as a fraction, so huge sums keep precision.
    const U256 count = tx_count;
    const U256 q = price_sum.value() / count;
    const U256 r = price_sum.value() % count;
    return q.convert_to<double>() + r.convert_to<double>() / static_cast<double>(tx_count);
}

std::string GasPricePoint::mean_decimal(int digits) const {
    using U512 = boost::multiprecision::uint512_t;
    U512 scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    const U512 count = tx_count;
    const U512 scaled = U512(price_sum.value()) * scale;
    U512 q = scaled / count;
    const U512 r = scaled % count;
    const U512 twice = r * 2;
    if (twice > count || (twice == count && (q & 1) != 0)) ++q;

    std::string s = q.str();
    if (digits == 0) return s;
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    return s;
}

Field parse_field(std::string_view name) {
    if (name == "mean") return Field::kMean;
    if (name == "median") return Field::kMedian;
    if (name == "min") return Field::kMin;
    if (name == "max") return Field::kMax;
    throw Error(Errc::kInvalidConfig, "unknown gas field '" + std::string(name) + "'");
}

std::string_view to_string(Field f) noexcept {
    switch (f) {
        case Field::kMean: return "mean";
        case Field::kMedian: return "median";
        case Field::kMin: return "min";
        case Field::kMax: return "max";
    }
    return "mean";
}

std::optional<GasPricePoint> block_gas_stats(const Block& block) {
    if (block.transactions.empty()) return std::nullopt;
    std::vector<Wei> prices;
    prices.reserve(block.transactions.size());
    GasPricePoint p;
    p.block_number = block.number;
    for (const auto& tx : block.transactions) {
        prices.push_back(tx.gas_price);
        p.price_sum += tx.gas_price;
    }
    std::sort(prices.begin(), prices.end());
    p.tx_count = static_cast<uint32_t>(prices.size());
    p.min = prices.front();
    p.max = prices.back();
    p.median = prices[(prices.size() - 1) / 2];
    return p;
}

GasPriceSeries per_block_gas_stats(std::span<const ingest::RawBundle> bundles, unsigned workers) {
    const std::size_t n = bundles.size();
    const std::size_t w_count = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
    std::vector<std::vector<GasPricePoint>> parts(w_count);
    auto run = [&](std::size_t w) {
        for (std::size_t i = n * w / w_count; i < n * (w + 1) / w_count; ++i) {
            if (auto p = block_gas_stats(bundles[i].block)) parts[w].push_back(std::move(*p));
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < w_count; ++w) pool.emplace_back(run, w);
    run(0);
    for (auto& t : pool) t.join();

    GasPriceSeries out;
    for (auto& part : parts) {
        for (auto& p : part) out.points.push_back(std::move(p));
    }
    return out;
}

GasPriceSeries slice(const GasPriceSeries& series, uint64_t from, uint64_t to) {
    GasPriceSeries out;
    for (const auto& p : series.points) {
        if (p.block_number >= from && p.block_number <= to) out.points.push_back(p);
    }
    return out;
}

namespace {

double field_value(const GasPricePoint& p, Field f) {
    switch (f) {
        case Field::kMean: return p.mean();
        case Field::kMedian: return p.median.to_double();
        case Field::kMin: return p.min.to_double();
        case Field::kMax: return p.max.to_double();
    }
    return p.mean();
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
    return out;
}

void finish(std::ofstream& out, const fs::path& path) {
    out.flush();
    if (!out) throw Error(Errc::kIoError, "write failed: " + path.string());
}

}  // namespace

std::vector<double> field_values(const GasPriceSeries& series, Field field) {
    std::vector<double> out;
    out.reserve(series.points.size());
    for (const auto& p : series.points) out.push_back(field_value(p, field));
    return out;
}

std::vector<SeriesValue> moving_average(const GasPriceSeries& series, uint32_t window, Field field) {
    if (window == 0) throw Error(Errc::kInvalidWindow, "window must be at least 1");
    const auto values = field_values(series, field);
    std::vector<SeriesValue> out;
    if (values.size() < window) return out;
    out.reserve(values.size() - window + 1);
    for (std::size_t end = window; end <= values.size(); ++end) {
        // Summed afresh per window so results never depend on earlier windows.
        double sum = 0;
        for (std::size_t i = end - window; i < end; ++i) sum += values[i];
        out.push_back({series.points[end - 1].block_number, sum / window});
    }
    return out;
}

double log_trend_slope(std::span<const SeriesValue> values) {
    if (values.size() < 2) throw Error(Errc::kEmptyInput, "trend fit needs at least two points");
    const double x0 = static_cast<double>(values.front().block_number);
    double sx = 0, sy = 0;
    for (const auto& v : values) {
        if (!(v.value > 0)) throw Error(Errc::kNonFiniteFeature, "log trend needs positive values");
        sx += static_cast<double>(v.block_number) - x0;
        sy += std::log(v.value);
    }
    const double n = static_cast<double>(values.size());
    const double mx = sx / n, my = sy / n;
    double sxy = 0, sxx = 0;
    for (const auto& v : values) {
        const double dx = static_cast<double>(v.block_number) - x0 - mx;
        sxy += dx * (std::log(v.value) - my);
        sxx += dx * dx;
    }
    if (sxx == 0) throw Error(Errc::kConstantSeries, "trend fit needs distinct blocks");
    return sxy / sxx;
}

namespace {

std::vector<double> centered(std::span<const double> x, double& denom) {
    double mean = 0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    std::vector<double> d(x.size());
    denom = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        d[i] = x[i] - mean;
        denom += d[i] * d[i];
    }
    return d;
}

double lagged(const std::vector<double>& d, double denom, uint32_t lag) {
    double num = 0;
    for (std::size_t t = 0; t + lag < d.size(); ++t) num += d[t] * d[t + lag];
    return num / denom;
}

}  // namespace

double autocorrelation(std::span<const double> x, uint32_t lag) {
    if (x.empty()) throw Error(Errc::kSliceTooShort, "empty series");
    double denom = 0;
    auto d = centered(x, denom);
    if (denom == 0) throw Error(Errc::kConstantSeries, "zero variance");
    return lagged(d, denom, lag);
}

PeriodicityResult detect_periodicity(std::span<const double> x, uint32_t min_lag, uint32_t max_lag) {
    if (min_lag < 1 || min_lag > max_lag) {
        throw Error(Errc::kInvalidRange,
                    "lag range [" + std::to_string(min_lag) + ", " + std::to_string(max_lag) + "] is invalid");
    }
    if (x.size() < 2ull * max_lag) {
        throw Error(Errc::kSliceTooShort, "slice of " + std::to_string(x.size()) + " points is shorter than 2 x " +
                                              std::to_string(max_lag));
    }
    double denom = 0;
    auto d = centered(x, denom);
    if (denom == 0) throw Error(Errc::kConstantSeries, "zero variance");

    PeriodicityResult out;
    out.correlogram.reserve(max_lag - min_lag + 1);
    for (uint32_t k = min_lag; k <= max_lag; ++k) {
        double r = lagged(d, denom, k);
        out.correlogram.emplace_back(k, r);
        if (k == min_lag || r > out.autocorrelation) {
            out.best_lag = k;
            out.autocorrelation = r;
        }
    }
    return out;
}

std::string format_fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    std::string s(buf);
    if (s == "-0.000000") s = "0.000000";
    return s;
}

void export_series(const GasPriceSeries& series, const fs::path& path) {
    auto out = open_output(path);
    out << "block_number,mean,median,min,max,tx_count\n";
    for (const auto& p : series.points) {
        out << p.block_number << ',' << p.mean_decimal(6) << ',' << p.median.to_string() << ',' << p.min.to_string()
            << ',' << p.max.to_string() << ',' << p.tx_count << '\n';
    }
    finish(out, path);
}

void export_correlogram(const PeriodicityResult& result, const fs::path& path) {
    auto out = open_output(path);
    out << "lag,r\n";
    for (const auto& [lag, r] : result.correlogram) out << lag << ',' << format_fixed6(r) << '\n';
    finish(out, path);
}

void export_moving_average(std::span<const SeriesValue> values, const fs::path& path) {
    auto out = open_output(path);
    out << "block_number,value\n";
    for (const auto& v : values) out << v.block_number << ',' << format_fixed6(v.value) << '\n';
    finish(out, path);
}

}  // namespace etherscope::gas
