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
#include <etherscope/ponzi/features.hpp>
#include <etherscope/ponzi/gini.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace etherscope::ponzi {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string> kFlowFeatureNames = {
    "n_investment",    "n_payment",        "payment_investment_ratio", "total_in",
    "total_out",       "payout_rate",      "paid_participant_rate",    "gini_investments",
    "participant_count", "lifetime_blocks", "max_payment_share",        "balance",
};

double ratio(const Wei& num, const Wei& den) { return den.is_zero() ? 0.0 : num.to_double() / den.to_double(); }

std::string real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

}  // namespace

std::vector<double> FeatureVector::to_dense() const {
    std::vector<double> v = {
        static_cast<double>(n_investment),
        static_cast<double>(n_payment),
        payment_investment_ratio,
        total_in.to_double(),
        total_out.to_double(),
        payout_rate,
        paid_participant_rate,
        gini_investments,
        static_cast<double>(participant_count),
        static_cast<double>(lifetime_blocks),
        max_payment_share,
        balance.convert_to<double>(),
    };
    v.insert(v.end(), opcode_freq.begin(), opcode_freq.end());
    return v;
}

std::vector<std::string> feature_names(const OpcodeTable& table) {
    std::vector<std::string> names = kFlowFeatureNames;
    for (const auto& op : table.entries()) names.push_back("op_" + op.name);
    names.push_back("op_" + std::string(kInvalidBucket));
    return names;
}

FeatureVector extract_features(const flow::FlowGraph& fg, ByteView code, const OpcodeTable& table) {
    using flow::FlowKind;
    FeatureVector f;
    const auto summary = flow::flow_summary(fg);
    f.n_investment = summary.n_investment;
    f.n_payment = summary.n_payment;
    f.payment_investment_ratio =
        static_cast<double>(f.n_payment) / static_cast<double>(std::max<uint64_t>(f.n_investment, 1));
    f.total_in = summary.total_in;
    f.total_out = summary.total_out;
    f.payout_rate = ratio(f.total_out, f.total_in);
    f.participant_count = summary.participant_count;
    f.lifetime_blocks = summary.lifetime_blocks;

    std::map<Address, std::size_t> first_investment;
    std::set<Address> paid;
    std::vector<Wei> investments;
    Wei largest_payment;
    for (std::size_t i = 0; i < fg.events.size(); ++i) {
        const auto& e = fg.events[i];
        if (e.kind == FlowKind::kInvestment) {
            first_investment.emplace(e.counterparty, i);
            investments.push_back(e.amount);
        } else {
            if (auto it = first_investment.find(e.counterparty); it != first_investment.end() && i > it->second) {
                paid.insert(e.counterparty);
            }
            largest_payment = std::max(largest_payment, e.amount);
        }
    }
    if (!first_investment.empty()) {
        f.paid_participant_rate = static_cast<double>(paid.size()) / static_cast<double>(first_investment.size());
    }
    if (!investments.empty()) f.gini_investments = gini(investments);
    f.max_payment_share = ratio(largest_payment, f.total_out);
    f.balance = I256(f.total_in.value()) - I256(f.total_out.value());
    f.opcode_freq = opcode_frequencies(disassemble(code, table), table);
    return f;
}

void write_features_csv(const fs::path& path, const std::vector<std::pair<Address, FeatureVector>>& rows) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
    out << "contract";
    for (const auto& n : feature_names()) out << ',' << n;
    out << '\n';
    for (const auto& [contract, f] : rows) {
        out << contract.hex() << ',' << f.n_investment << ',' << f.n_payment << ',' << real(f.payment_investment_ratio)
            << ',' << f.total_in.to_string() << ',' << f.total_out.to_string() << ',' << real(f.payout_rate) << ','
            << real(f.paid_participant_rate) << ',' << real(f.gini_investments) << ',' << f.participant_count << ','
            << f.lifetime_blocks << ',' << real(f.max_payment_share) << ',' << to_decimal(f.balance);
        for (double v : f.opcode_freq) out << ',' << real(v);
        out << '\n';
    }
    out.flush();
    if (!out) throw Error(Errc::kIoError, "write failed: " + path.string());
}

FeatureTable read_features_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
    FeatureTable t;
    std::string line;
    if (!std::getline(in, line)) throw Error(Errc::kParseError, path.string() + ": missing header");
    auto header = split_csv(line);
    if (header.empty() || header[0] != "contract") {
        throw Error(Errc::kParseError, path.string() + ": first column must be 'contract'");
    }
    t.names.assign(header.begin() + 1, header.end());
    uint64_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv(line);
        auto where = path.string() + ":" + std::to_string(line_no) + ": ";
        if (cells.size() != header.size()) throw Error(Errc::kParseError, where + "wrong column count");
        try {
            t.contracts.push_back(parse_address(cells[0]));
        } catch (const Error& e) {
            throw Error(Errc::kParseError, where + e.what());
        }
        std::vector<double> row;
        row.reserve(cells.size() - 1);
        for (std::size_t i = 1; i < cells.size(); ++i) {
            char* end = nullptr;
            double v = std::strtod(cells[i].c_str(), &end);
            if (cells[i].empty() || end != cells[i].c_str() + cells[i].size()) {
                throw Error(Errc::kParseError, where + "column '" + header[i] + "' is not a number");
            }
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

std::string_view to_string(Label l) noexcept { return l == Label::kPonzi ? "ponzi" : "normal"; }

Label parse_label(std::string_view text) {
    if (text == "ponzi") return Label::kPonzi;
    if (text == "normal") return Label::kNormal;
    throw Error(Errc::kParseError, "unknown label '" + std::string(text) + "'");
}

void write_labels_csv(const fs::path& path, const std::map<Address, Label>& labels) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::kIoError, "cannot write " + path.string());
    out << "contract_address,label\n";
    for (const auto& [a, l] : labels) out << a.hex() << ',' << to_string(l) << '\n';
    out.flush();
    if (!out) throw Error(Errc::kIoError, "write failed: " + path.string());
}

std::map<Address, Label> read_labels_csv(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::kIoError, "cannot open " + path.string());
    std::map<Address, Label> out;
    std::string line;
    uint64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || (line_no == 1 && line.starts_with("contract_address"))) continue;
        auto cells = split_csv(line);
        auto where = path.string() + ":" + std::to_string(line_no) + ": ";
        if (cells.size() != 2) throw Error(Errc::kParseError, where + "expected contract_address,label");
        try {
            out[parse_address(cells[0])] = parse_label(cells[1]);
        } catch (const Error& e) {
            throw Error(Errc::kParseError, where + e.what());
        }
    }
    return out;
}

}  // namespace etherscope::ponzi
