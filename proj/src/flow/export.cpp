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
#include <etherscope/flow/flowgraph.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace etherscope::flow {

namespace {

constexpr double kWidth = 800;
constexpr double kHeight = 480;
constexpr double kLeft = 70;
constexpr double kRight = 30;
constexpr double kTop = 40;
constexpr double kBottom = 60;
constexpr int kTicks = 5;

std::string fmt2(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

double radius_for(const Wei& amount) {
    const double ether = amount.to_double() / 1e18;
    return std::clamp(kRadiusPerSqrtEther * std::sqrt(ether), kMinRadius, kMaxRadius);
}

void write_csv(const FlowGraph& fg, std::ostream& out) {
    out << "timestamp,block_number,kind,counterparty,amount,cumulative_participants\n";
    for (std::size_t i = 0; i < fg.events.size(); ++i) {
        const auto& e = fg.events[i];
        out << e.timestamp << ',' << e.block_number << ',' << to_string(e.kind) << ',' << e.counterparty.hex() << ','
            << e.amount.to_string() << ',' << fg.participants_at_event[i] << '\n';
    }
}

void write_svg(const FlowGraph& fg, std::ostream& out) {
    uint64_t t_min = 0, t_max = 1;
    if (!fg.events.empty()) {
        t_min = fg.events.front().timestamp;
        t_max = fg.events.back().timestamp;
        for (const auto& e : fg.events) {
            t_min = std::min(t_min, e.timestamp);
            t_max = std::max(t_max, e.timestamp);
        }
        if (t_max == t_min) t_max = t_min + 1;
    }
    const uint32_t p_max = std::max<uint32_t>(1, fg.participants_at_event.empty() ? 1 : fg.participants_at_event.back());
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto x_of = [&](uint64_t t) { return kLeft + plot_w * static_cast<double>(t - t_min) / static_cast<double>(t_max - t_min); };
    auto y_of = [&](double p) { return kTop + plot_h * (1.0 - p / p_max); };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << fmt2(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
        << "font-size=\"14\">Ether flow of " << fg.contract.hex() << "</text>\n";

    // Axes and ticks.
    out << "<g stroke=\"black\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << fmt2(kLeft) << "\" y1=\"" << fmt2(kTop + plot_h) << "\" x2=\"" << fmt2(kLeft + plot_w)
        << "\" y2=\"" << fmt2(kTop + plot_h) << "\"/>\n";
    out << "<line x1=\"" << fmt2(kLeft) << "\" y1=\"" << fmt2(kTop) << "\" x2=\"" << fmt2(kLeft) << "\" y2=\""
        << fmt2(kTop + plot_h) << "\"/>\n";
    out << "</g>\n";
    out << "<g font-family=\"sans-serif\" font-size=\"10\">\n";
    for (int i = 0; i <= kTicks; ++i) {
        const double frac = static_cast<double>(i) / kTicks;
        const double x = kLeft + plot_w * frac;
        const auto t = t_min + static_cast<uint64_t>(std::llround(frac * static_cast<double>(t_max - t_min)));
        out << "<text x=\"" << fmt2(x) << "\" y=\"" << fmt2(kTop + plot_h + 16) << "\" text-anchor=\"middle\">" << t
            << "</text>\n";
        const double p = p_max * frac;
        out << "<text x=\"" << fmt2(kLeft - 6) << "\" y=\"" << fmt2(y_of(p) + 3) << "\" text-anchor=\"end\">"
            << fmt2(p) << "</text>\n";
    }
    out << "<text x=\"" << fmt2(kLeft + plot_w / 2) << "\" y=\"" << fmt2(kHeight - 14)
        << "\" text-anchor=\"middle\">timestamp</text>\n";
    out << "<text x=\"16\" y=\"" << fmt2(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
        << fmt2(kTop + plot_h / 2) << ")\">participants</text>\n";
    out << "</g>\n";

    // Legend uses squares so the circle count equals the event count.
    out << "<g font-family=\"sans-serif\" font-size=\"10\">\n";
    out << "<rect x=\"" << fmt2(kWidth - 170) << "\" y=\"" << fmt2(kTop) << "\" width=\"8\" height=\"8\" fill=\""
        << kInvestmentColor << "\"/>\n";
    out << "<text x=\"" << fmt2(kWidth - 158) << "\" y=\"" << fmt2(kTop + 8) << "\">investment</text>\n";
    out << "<rect x=\"" << fmt2(kWidth - 90) << "\" y=\"" << fmt2(kTop) << "\" width=\"8\" height=\"8\" fill=\""
        << kPaymentColor << "\"/>\n";
    out << "<text x=\"" << fmt2(kWidth - 78) << "\" y=\"" << fmt2(kTop + 8) << "\">payment</text>\n";
    out << "</g>\n";

    out << "<g fill-opacity=\"0.5\">\n";
    for (std::size_t i = 0; i < fg.events.size(); ++i) {
        const auto& e = fg.events[i];
        const auto color = e.kind == FlowKind::kInvestment ? kInvestmentColor : kPaymentColor;
        out << "<circle cx=\"" << fmt2(x_of(e.timestamp)) << "\" cy=\"" << fmt2(y_of(fg.participants_at_event[i]))
            << "\" r=\"" << fmt2(radius_for(e.amount)) << "\" fill=\"" << color << "\"/>\n";
    }
    out << "</g>\n</svg>\n";
}

}  // namespace

void export_flow_graph(const FlowGraph& fg, const std::filesystem::path& path, ExportFormat format) {
    std::ostringstream buf;
    if (format == ExportFormat::kCsv) {
        write_csv(fg, buf);
    } else {
        write_svg(fg, buf);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
    out << buf.str();
    out.flush();
    if (!out) throw Error(Errc::kIoError, "write failed: " + path.string());
}

}  // namespace etherscope::flow
