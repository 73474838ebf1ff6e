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

#include <etherscope/cli/commands.hpp>
#include <etherscope/derive/csv.hpp>
#include <etherscope/derive/derive.hpp>
#include <etherscope/error.hpp>
#include <etherscope/flow/flowgraph.hpp>
#include <etherscope/gas/gas.hpp>
#include <etherscope/ingest/reader.hpp>
#include <etherscope/ingest/validate.hpp>
#include <etherscope/ponzi/features.hpp>
#include <etherscope/ponzi/model.hpp>
#include <etherscope/synth/generator.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>

namespace etherscope::cli {

namespace fs = std::filesystem;

namespace {

// Raised for bad argument combinations found after parsing; maps to exit 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fixed6(double v) { return gas::format_fixed6(v); }

struct Common {
    uint64_t seed{1};
    unsigned workers{1};
    std::optional<uint64_t> from;
    std::optional<uint64_t> to;
};

void require_dir(const fs::path& p, const std::string& what) {
    if (!fs::is_directory(p)) throw UsageError(what + " '" + p.string() + "' is not a directory");
}

void require_file(const fs::path& p, const std::string& what) {
    if (!fs::is_regular_file(p)) throw UsageError(what + " '" + p.string() + "' does not exist");
}

void check_range(const Common& c) {
    if (c.from && c.to && *c.from > *c.to) throw UsageError("--from is greater than --to");
    if (c.workers == 0) throw UsageError("--workers must be at least 1");
}

ingest::Corpus load_corpus(const fs::path& dir, const Common& c) {
    auto corpus = ingest::read_raw(dir);
    if (!c.from && !c.to) return corpus;
    std::erase_if(corpus, [&](const ingest::RawBundle& b) {
        return (c.from && b.block.number < *c.from) || (c.to && b.block.number > *c.to);
    });
    return corpus;
}

void ensure_parent(const fs::path& file) {
    if (file.has_parent_path()) fs::create_directories(file.parent_path());
}

// ---------------------------------------------------------------------------

struct SynthArgs {
    fs::path out;
    synth::GenConfig config;
    std::string gas_base;
    std::string block_reward;
};

int cmd_synth(SynthArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    a.config.seed = c.seed;
    if (!a.gas_base.empty()) a.config.gas.base = parse_wei(a.gas_base);
    if (!a.block_reward.empty()) a.config.block_reward = parse_wei(a.block_reward);
    try {
        synth::validate_config(a.config);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const auto truth = synth::generate(a.config, a.out);
    err << "wrote " << a.out.string() << "\n";
    out << "blocks=" << a.config.n_blocks << " transactions=" << truth.tx_count
        << " contracts=" << truth.contracts.size() << " token_transfers=" << truth.token_transfers.size()
        << " malformed_logs=" << truth.malformed_logs.size() << "\n";
    return kExitOk;
}

int cmd_validate(const fs::path& input, const Common& c, std::ostream& out, std::ostream& err) {
    require_dir(input, "--input");
    const auto corpus = load_corpus(input, c);
    const auto report = ingest::validate_chain(corpus);
    for (const auto& d : report.defects) {
        out << d.block_number << '\t' << ingest::to_string(d.code) << '\t' << d.detail << '\n';
    }
    err << corpus.size() << " blocks, " << report.defects.size() << " defects\n";
    return report.ok ? kExitOk : kExitDefects;
}

int cmd_derive(const fs::path& input, const fs::path& dir, const Common& c, std::ostream& out, std::ostream& err) {
    require_dir(input, "--input");
    const auto corpus = load_corpus(input, c);
    const auto summary = derive::derive_to_directory(corpus, dir, {c.workers});
    out << "dataset,rows\n";
    for (std::size_t i = 0; i < summary.rows.size(); ++i) out << derive::kDatasetFiles[i] << ',' << summary.rows[i] << '\n';
    out << derive::kDefectsFile << ',' << summary.defects << '\n';
    err << "wrote " << dir.string() << "\n";
    return kExitOk;
}

struct GasArgs {
    fs::path input;
    fs::path out;
    uint32_t window{24};
    uint32_t min_lag{2};
    uint32_t max_lag{200};
    std::string field{"mean"};
};

int cmd_gas(const GasArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    require_dir(a.input, "--input");
    gas::Field field;
    try {
        field = gas::parse_field(a.field);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    if (a.window == 0) throw UsageError("--window must be positive");
    if (a.min_lag < 1 || a.min_lag > a.max_lag) throw UsageError("need 1 <= --min-lag <= --max-lag");

    const auto corpus = load_corpus(a.input, c);
    const auto series = gas::per_block_gas_stats(corpus, c.workers);
    const auto values = gas::field_values(series, field);
    const auto result = gas::detect_periodicity(values, a.min_lag, a.max_lag);
    const auto ma = gas::moving_average(series, a.window, field);

    fs::create_directories(a.out);
    gas::export_series(series, a.out / "gas_series.csv");
    gas::export_correlogram(result, a.out / "gas_correlogram.csv");
    gas::export_moving_average(ma, a.out / "gas_moving_average.csv");
    out << "best_lag=" << result.best_lag << "\n";
    out << "autocorrelation=" << fixed6(result.autocorrelation) << "\n";
    if (ma.size() >= 2) out << "log_trend_slope=" << real(gas::log_trend_slope(ma)) << "\n";
    err << "wrote " << a.out.string() << "\n";
    return kExitOk;
}

struct FlowArgs {
    fs::path input;
    std::string contract;
    std::string format{"csv"};
    fs::path out;
};

int cmd_flow(const FlowArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    require_dir(a.input, "--input");
    Address contract;
    flow::ExportFormat format;
    try {
        contract = parse_address(a.contract);
        format = flow::parse_export_format(a.format);
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    const auto corpus = load_corpus(a.input, c);
    const auto fg = flow::build_flow_graph(contract, corpus);
    ensure_parent(a.out);
    flow::export_flow_graph(fg, a.out, format);
    const auto s = flow::flow_summary(fg);
    out << "investments=" << s.n_investment << " payments=" << s.n_payment
        << " participants=" << s.participant_count << "\n";
    err << "wrote " << a.out.string() << "\n";
    return kExitOk;
}

int cmd_features(const fs::path& input, const fs::path& path, const Common& c, std::ostream& out,
                 std::ostream& err) {
    require_dir(input, "--input");
    const auto corpus = load_corpus(input, c);
    const auto contracts = derive::derive_contract_info(corpus);
    std::vector<Address> addresses;
    for (const auto& ci : contracts) addresses.push_back(ci.contract_address);
    const auto graphs = flow::build_flow_graphs(addresses, corpus);

    std::vector<std::pair<Address, ponzi::FeatureVector>> rows;
    for (const auto& ci : contracts) {
        rows.emplace_back(ci.contract_address, ponzi::extract_features(graphs.at(ci.contract_address), ci.code));
    }
    ensure_parent(path);
    ponzi::write_features_csv(path, rows);
    out << "contracts=" << rows.size() << " features=" << ponzi::feature_names().size() << "\n";
    err << "wrote " << path.string() << "\n";
    return kExitOk;
}

void check_layout(const std::vector<std::string>& names, const std::vector<std::string>& expected) {
    if (names != expected) {
        throw Error(Errc::kDimensionMismatch, "feature columns do not match layout " +
                                                  std::string(ponzi::kFeatureLayoutVersion));
    }
}

struct TrainArgs {
    fs::path features;
    fs::path labels;
    fs::path model;
    ponzi::Hyperparams hp;
    uint32_t cv_folds{0};
};

int cmd_train(TrainArgs& a, const Common& c, std::ostream& out, std::ostream& err) {
    require_file(a.features, "--features");
    require_file(a.labels, "--labels");
    if (a.cv_folds == 1) throw UsageError("--cv-folds must be 0 or at least 2");
    a.hp.seed = c.seed;

    const auto table = ponzi::read_features_csv(a.features);
    check_layout(table.names, ponzi::feature_names());
    const auto labels = ponzi::read_labels_csv(a.labels);
    ponzi::Matrix x;
    std::vector<ponzi::Label> y;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        auto it = labels.find(table.contracts[i]);
        if (it == labels.end()) continue;
        x.push_back(table.rows[i]);
        y.push_back(it->second);
    }
    if (x.empty()) throw Error(Errc::kEmptySet, "no feature row has a label");

    const auto result = ponzi::train(x, y, a.hp, table.names);
    ensure_parent(a.model);
    ponzi::save_model(result.model, a.model);
    out << "examples=" << x.size() << "\n";
    out << "final_loss=" << real(result.loss_history.back()) << "\n";
    if (a.cv_folds >= 2) {
        const auto e = ponzi::cross_validate(x, y, a.cv_folds, a.hp, c.seed);
        out << "cv_precision=" << fixed6(e.precision) << "\n";
        out << "cv_recall=" << fixed6(e.recall) << "\n";
        out << "cv_f1=" << fixed6(e.f1) << "\n";
    }
    err << "wrote " << a.model.string() << "\n";
    return kExitOk;
}

struct ClassifyArgs {
    fs::path model;
    fs::path features;
    fs::path out;
    fs::path labels;
};

int cmd_classify(const ClassifyArgs& a, std::ostream& out, std::ostream& err) {
    require_file(a.model, "--model");
    require_file(a.features, "--features");
    if (!a.labels.empty()) require_file(a.labels, "--labels");

    const auto model = ponzi::load_model(a.model);
    const auto table = ponzi::read_features_csv(a.features);
    check_layout(table.names, model.feature_names);

    ensure_parent(a.out);
    std::ofstream csv(a.out, std::ios::binary | std::ios::trunc);
    if (!csv) throw Error(Errc::kIoError, "cannot write " + a.out.string());
    csv << "contract_address,probability,label\n";
    std::vector<ponzi::Label> predicted;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto p = ponzi::predict(model, table.rows[i]);
        predicted.push_back(p.label);
        csv << table.contracts[i].hex() << ',' << real(p.probability) << ',' << ponzi::to_string(p.label) << '\n';
    }
    csv.flush();
    if (!csv) throw Error(Errc::kIoError, "write failed: " + a.out.string());

    out << "contracts=" << table.rows.size() << "\n";
    if (!a.labels.empty()) {
        const auto labels = ponzi::read_labels_csv(a.labels);
        std::vector<ponzi::Label> truth, guess;
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            auto it = labels.find(table.contracts[i]);
            if (it == labels.end()) continue;
            truth.push_back(it->second);
            guess.push_back(predicted[i]);
        }
        const auto e = ponzi::evaluate_predictions(truth, guess);
        out << "precision=" << fixed6(e.precision) << "\n";
        out << "recall=" << fixed6(e.recall) << "\n";
        out << "f1=" << fixed6(e.f1) << "\n";
    }
    err << "wrote " << a.out.string() << "\n";
    return kExitOk;
}

CLI::Option* path_option(CLI::App* app, const std::string& name, fs::path& target, const std::string& help,
                         const std::string& env = {}) {
    auto* o = app->add_option(name, target, help);
    if (!env.empty()) o->envname(env);
    return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"etherscope: Ethereum chain ETL, gas analytics and Ponzi contract detection"};
    app.name("etherscope");
    app.set_config("--config", "", "key=value configuration file; [command] sections hold command flags");
    app.require_subcommand(1, 1);
    app.fallthrough();

    Common common;
    app.add_option("--seed", common.seed, "Random seed (synth, train)")->capture_default_str();
    app.add_option("--workers", common.workers, "Worker threads (derive, gas)")
        ->envname("ETHERSCOPE_WORKERS")
        ->capture_default_str();
    app.add_option("--from", common.from, "First block number to use");
    app.add_option("--to", common.to, "Last block number to use");

    // synth
    SynthArgs sa;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic raw corpus with ground truth");
    path_option(synth_cmd, "--out", sa.out, "Output directory", "ETHERSCOPE_OUT")->required();
    auto& g = sa.config;
    synth_cmd->add_option("--blocks", g.n_blocks, "Number of blocks")->capture_default_str();
    synth_cmd->add_option("--start-block", g.start_block, "First block number")->capture_default_str();
    synth_cmd->add_option("--wallets", g.wallets, "Externally owned accounts")->capture_default_str();
    synth_cmd->add_option("--miners", g.miners, "Miner pool size")->capture_default_str();
    synth_cmd->add_option("--ponzi", g.ponzi, "Ponzi contracts")->capture_default_str();
    synth_cmd->add_option("--lottery", g.lottery, "Lottery contracts")->capture_default_str();
    synth_cmd->add_option("--erc20", g.erc20_token, "ERC20 token contracts")->capture_default_str();
    synth_cmd->add_option("--erc721", g.erc721_token, "ERC721 token contracts")->capture_default_str();
    synth_cmd->add_option("--internal", g.internal_creations, "Contracts created by a factory")->capture_default_str();
    synth_cmd->add_option("--gas-base", sa.gas_base, "Gas price level at block 0, in wei (default 20000000000)");
    synth_cmd->add_option("--gas-decay", g.gas.decay_per_block, "Per-block gas price decay")->capture_default_str();
    synth_cmd->add_option("--gas-period", g.gas.period, "Gas price period in blocks")->capture_default_str();
    synth_cmd->add_option("--gas-amplitude", g.gas.amplitude, "Relative periodic amplitude")->capture_default_str();
    synth_cmd->add_option("--gas-noise", g.gas.noise, "Relative per-transaction noise")->capture_default_str();
    synth_cmd->add_option("--block-reward", sa.block_reward, "Block reward in wei (default 2 ether)");

    // validate
    fs::path validate_input;
    auto* validate_cmd = app.add_subcommand("validate", "Check chain structure; exit 1 when defects are found");
    path_option(validate_cmd, "--input", validate_input, "Raw corpus directory", "ETHERSCOPE_INPUT")->required();

    // derive
    fs::path derive_input, derive_out;
    auto* derive_cmd = app.add_subcommand("derive", "Write the six datasets as CSV");
    path_option(derive_cmd, "--input", derive_input, "Raw corpus directory", "ETHERSCOPE_INPUT")->required();
    path_option(derive_cmd, "--out", derive_out, "Dataset directory", "ETHERSCOPE_OUT")->required();

    // gas
    GasArgs ga;
    auto* gas_cmd = app.add_subcommand("gas", "Per-block gas price series, moving average and correlogram");
    path_option(gas_cmd, "--input", ga.input, "Raw corpus directory", "ETHERSCOPE_INPUT")->required();
    path_option(gas_cmd, "--out", ga.out, "Output directory", "ETHERSCOPE_OUT")->required();
    gas_cmd->add_option("--window", ga.window, "Moving-average window in blocks")->capture_default_str();
    gas_cmd->add_option("--min-lag", ga.min_lag, "Smallest lag scanned")->capture_default_str();
    gas_cmd->add_option("--max-lag", ga.max_lag, "Largest lag scanned")->capture_default_str();
    gas_cmd->add_option("--field", ga.field, "mean, median, min or max")->capture_default_str();

    // flow
    FlowArgs fa;
    auto* flow_cmd = app.add_subcommand("flow", "Export one contract's ether flow graph");
    path_option(flow_cmd, "--input", fa.input, "Raw corpus directory", "ETHERSCOPE_INPUT")->required();
    flow_cmd->add_option("--contract", fa.contract, "Contract address")->required();
    flow_cmd->add_option("--format", fa.format, "csv or svg")->capture_default_str();
    path_option(flow_cmd, "--out", fa.out, "Output file", "ETHERSCOPE_OUT")->required();

    // features
    fs::path features_input, features_out;
    auto* features_cmd = app.add_subcommand("features", "Feature vectors for every created contract");
    path_option(features_cmd, "--input", features_input, "Raw corpus directory", "ETHERSCOPE_INPUT")->required();
    path_option(features_cmd, "--out", features_out, "features.csv path", "ETHERSCOPE_OUT")->required();

    // train
    TrainArgs ta;
    auto* train_cmd = app.add_subcommand("train", "Fit the logistic-regression Ponzi classifier");
    path_option(train_cmd, "--features", ta.features, "features.csv", "ETHERSCOPE_FEATURES")->required();
    path_option(train_cmd, "--labels", ta.labels, "labels.csv", "ETHERSCOPE_LABELS")->required();
    path_option(train_cmd, "--model", ta.model, "Model output path", "ETHERSCOPE_MODEL")->required();
    train_cmd->add_option("--learning-rate", ta.hp.learning_rate, "Gradient step size")->capture_default_str();
    train_cmd->add_option("--l2", ta.hp.l2_lambda, "L2 penalty")->capture_default_str();
    train_cmd->add_option("--epochs", ta.hp.epochs, "Training epochs")->capture_default_str();
    train_cmd->add_option("--batch-size", ta.hp.batch_size, "Mini-batch size, 0 for full batch")->capture_default_str();
    train_cmd->add_option("--cv-folds", ta.cv_folds, "Also report stratified k-fold scores")->capture_default_str();

    // classify
    ClassifyArgs ca;
    auto* classify_cmd = app.add_subcommand("classify", "Score contracts with a trained model");
    path_option(classify_cmd, "--model", ca.model, "Model file", "ETHERSCOPE_MODEL")->required();
    path_option(classify_cmd, "--features", ca.features, "features.csv", "ETHERSCOPE_FEATURES")->required();
    path_option(classify_cmd, "--out", ca.out, "Predictions CSV", "ETHERSCOPE_OUT")->required();
    classify_cmd->add_option("--labels", ca.labels, "labels.csv; prints precision, recall and f1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << "etherscope: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        check_range(common);
        if (*synth_cmd) return cmd_synth(sa, common, out, err);
        if (*validate_cmd) return cmd_validate(validate_input, common, out, err);
        if (*derive_cmd) return cmd_derive(derive_input, derive_out, common, out, err);
        if (*gas_cmd) return cmd_gas(ga, common, out, err);
        if (*flow_cmd) return cmd_flow(fa, common, out, err);
        if (*features_cmd) return cmd_features(features_input, features_out, common, out, err);
        if (*train_cmd) return cmd_train(ta, common, out, err);
        if (*classify_cmd) return cmd_classify(ca, out, err);
    } catch (const UsageError& e) {
        err << "etherscope: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "etherscope: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace etherscope::cli
