#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpa/engine.hpp"
#include "qpa/io.hpp"
#include "qpa/protocol.hpp"
#include "qpa/rng.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
    f << content;
}

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        values.push_back(std::stod(item));
    }
    return values;
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> values;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        values.push_back(std::stoi(item));
    }
    return values;
}

int cmd_verify_tables(const std::string& out_path) {
    const qpa::TableVerification v = qpa::verify_output_table();
    std::string report;
    report += std::string(qpa::kToolVersion) + " table verification\n";
    int checks = 0, passed = 0;
    auto tally = [&](bool pass) {
        ++checks;
        if (pass) ++passed;
        return pass ? "PASS" : "FAIL";
    };
    for (const auto& e : v.entries) {
        report += "entry control=" + std::string(qpa::label_name(e.control)) +
                  " target=" + std::string(qpa::label_name(e.target)) +
                  " outcome=" + std::to_string(e.outcome) +
                  " expect=" + std::string(qpa::label_name(e.expected)) +
                  " dev=" + qpa::format_double(e.overlap_dev) + " " + tally(e.pass) + "\n";
    }
    for (const auto& b : v.branches) {
        report += "branch control=" + std::string(qpa::label_name(b.control)) +
                  " target=" + std::string(qpa::label_name(b.target)) +
                  " dev=" + qpa::format_double(b.p0_dev) + " " + tally(b.pass) + "\n";
    }
    for (const auto& m : v.marginals) {
        report += "marginal control=" + std::string(qpa::label_name(m.control)) +
                  " outcome=" + std::to_string(m.outcome) +
                  " dev=" + qpa::format_double(m.max_dev) + " " + tally(m.pass) + "\n";
    }
    for (int t = 0; t < 2; ++t) {
        report += "latin table-" + std::to_string(t) + " " + tally(v.latin_ok[t]) + "\n";
    }
    report += "summary " + std::to_string(passed) + "/" + std::to_string(checks) +
              " checks passed\n";
    write_output(out_path, report);
    return passed == checks ? kExitOk : kExitVerifyFail;
}

struct RunOptions {
    qpa::ProtocolConfig config;
    qpa::ChannelModel channel;
};

void apply_config_file(const std::string& path, RunOptions& opts) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open config file: " + path);
    ordered_json j = ordered_json::parse(f);
    for (const auto& [key, value] : j.items()) {
        if (key == "n_batch") opts.config.n_batch = value.get<std::size_t>();
        else if (key == "check_fraction") opts.config.check_fraction = value.get<double>();
        else if (key == "error_threshold") opts.config.error_threshold = value.get<double>();
        else if (key == "group_size_m") opts.config.group_size_m = value.get<std::size_t>();
        else if (key == "seed") opts.config.seed = value.get<std::uint64_t>();
        else if (key == "channel") opts.channel.kind = qpa::parse_channel_kind(value.get<std::string>());
        else if (key == "rate") opts.channel.rate = value.get<double>();
        else if (key == "message_hex") opts.config.message_bits = qpa::hex_to_bits(value.get<std::string>());
        else throw std::invalid_argument("unknown config key: " + key);
    }
}

std::string render_run(const RunOptions& opts, const qpa::ProtocolResult& result,
                       const std::string& format) {
    if (format == "json") {
        ordered_json doc{
            {"tool_version", qpa::kToolVersion},
            {"seed", opts.config.seed},
            {"config", qpa::config_to_json(opts.config, opts.channel)},
            {"result", qpa::result_to_json(result)},
        };
        return doc.dump(2) + "\n";
    }
    std::string out;
    out += "# tool_version=" + std::string(qpa::kToolVersion) + "\n";
    out += "# config=" + qpa::config_to_json(opts.config, opts.channel).dump() + "\n";
    out += qpa::result_csv_header() + "\n";
    out += qpa::result_csv_row(result) + "\n";
    return out;
}

std::string render_leakage(std::uint64_t seed, const qpa::LeakageEstimate& est,
                           const std::string& format) {
    if (format == "json") {
        ordered_json doc{
            {"tool_version", qpa::kToolVersion},
            {"seed", seed},
            {"config", ordered_json{{"r", est.r}, {"m", est.m}, {"trials", est.trials}, {"seed", seed}}},
            {"result", qpa::leakage_to_json(est)},
        };
        return doc.dump(2) + "\n";
    }
    std::string out;
    out += "# tool_version=" + std::string(qpa::kToolVersion) + "\n";
    out += "# config=r=" + qpa::format_double(est.r) + " m=" + std::to_string(est.m) +
           " trials=" + std::to_string(est.trials) + " seed=" + std::to_string(seed) + "\n";
    out += qpa::leakage_csv_header() + "\n";
    out += qpa::leakage_csv_row(est) + "\n";
    return out;
}

std::string render_sweep(std::uint64_t seed, const std::string& r_list, const std::string& m_list,
                         long trials, const std::vector<qpa::LeakageEstimate>& cells,
                         const std::string& format) {
    if (format == "json") {
        ordered_json cell_array = ordered_json::array();
        for (const auto& est : cells) cell_array.push_back(qpa::leakage_to_json(est));
        ordered_json doc{
            {"tool_version", qpa::kToolVersion},
            {"seed", seed},
            {"config", ordered_json{{"r_list", r_list}, {"m_list", m_list}, {"trials", trials}, {"seed", seed}}},
            {"cells", cell_array},
        };
        return doc.dump(2) + "\n";
    }
    std::string out;
    out += "# tool_version=" + std::string(qpa::kToolVersion) + "\n";
    out += "# config=r_list=" + r_list + " m_list=" + m_list +
           " trials=" + std::to_string(trials) + " seed=" + std::to_string(seed) + "\n";
    out += qpa::leakage_csv_header() + "\n";
    for (const auto& est : cells) out += qpa::leakage_csv_row(est) + "\n";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulator and verification harness for qubit-condensation "
                 "privacy amplification over BB84-style direct communication"};
    app.require_subcommand(1);

    std::string config_path;
    std::uint64_t seed = 1;
    std::string format = "json";
    std::string out_path;
    app.add_option("--config", config_path, "JSON config file")->capture_default_str();
    app.add_option("--seed", seed, "root seed")->capture_default_str();
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "output path (default: stdout)");

    auto* verify = app.add_subcommand("verify-tables", "check the output tables against the circuit");

    auto* run = app.add_subcommand("run", "execute the four-step protocol once");
    RunOptions opts;
    opts.config.n_batch = 10000;
    std::string channel_name = "ideal";
    std::string message_hex, message_file;
    std::size_t message_random = 0;
    run->add_option("--n-batch", opts.config.n_batch, "batch size N");
    run->add_option("--check-fraction", opts.config.check_fraction, "eavesdropping check fraction");
    run->add_option("--threshold", opts.config.error_threshold, "abort threshold on e");
    run->add_option("--group-size", opts.config.group_size_m, "qubits per condensation group m");
    run->add_option("--channel", channel_name, "channel model")
        ->check(CLI::IsMember({"ideal", "intercept", "depolarizing"}));
    run->add_option("--rate", opts.channel.rate, "channel rate");
    auto* mh = run->add_option("--message-hex", message_hex, "message as hex string");
    auto* mf = run->add_option("--message-file", message_file, "message as raw bytes");
    auto* mr = run->add_option("--message-random", message_random, "random message of n bits");
    mh->excludes(mf)->excludes(mr);
    mf->excludes(mr);

    auto* leakage = app.add_subcommand("leakage", "Monte Carlo estimate of the leakage probability");
    double leak_r = 0.25;
    int leak_m = 2;
    long leak_trials = 100000;
    leakage->add_option("--r", leak_r, "per-qubit knowledge probability")->required();
    leakage->add_option("--m", leak_m, "group size")->required();
    leakage->add_option("--trials", leak_trials, "Monte Carlo trials")->required();

    auto* sweep = app.add_subcommand("sweep", "leakage grid over r and m, one CSV row per cell");
    std::string r_list, m_list;
    long sweep_trials = 100000;
    sweep->add_option("--r-list", r_list, "comma-separated r values")->required();
    sweep->add_option("--m-list", m_list, "comma-separated m values")->required();
    sweep->add_option("--trials", sweep_trials, "trials per cell")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (verify->parsed()) {
            return cmd_verify_tables(out_path);
        }

        if (run->parsed()) {
            if (!config_path.empty()) {
                // Flag values override the config file.
                const RunOptions flags = opts;
                opts = RunOptions{};
                opts.config.n_batch = 10000;
                apply_config_file(config_path, opts);
                if (run->count("--n-batch") > 0) opts.config.n_batch = flags.config.n_batch;
                if (run->count("--check-fraction") > 0) opts.config.check_fraction = flags.config.check_fraction;
                if (run->count("--threshold") > 0) opts.config.error_threshold = flags.config.error_threshold;
                if (run->count("--group-size") > 0) opts.config.group_size_m = flags.config.group_size_m;
                if (run->count("--rate") > 0) opts.channel.rate = flags.channel.rate;
            }
            if (app.count("--seed") > 0 || config_path.empty()) opts.config.seed = seed;
            if (run->count("--channel") > 0 || config_path.empty()) {
                opts.channel.kind = qpa::parse_channel_kind(channel_name);
            }
            if (mh->count() > 0) opts.config.message_bits = qpa::hex_to_bits(message_hex);
            if (mf->count() > 0) {
                std::ifstream f(message_file, std::ios::binary);
                if (!f) throw std::invalid_argument("cannot open message file: " + message_file);
                std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                                std::istreambuf_iterator<char>());
                opts.config.message_bits = qpa::bytes_to_bits(bytes);
            }
            if (mr->count() > 0) {
                qpa::SeededRng rng(opts.config.seed, qpa::Stream::Message);
                opts.config.message_bits.resize(message_random);
                for (auto& bit : opts.config.message_bits) {
                    bit = static_cast<std::uint8_t>(rng.below(2));
                }
            }
            std::cerr << "running protocol: n_batch=" << opts.config.n_batch
                      << " channel=" << qpa::channel_kind_name(opts.channel.kind) << "\n";
            const qpa::ProtocolResult result = qpa::run_protocol(opts.config, opts.channel);
            write_output(out_path, render_run(opts, result, format));
            return kExitOk;
        }

        if (leakage->parsed()) {
            const qpa::LeakageEstimate est =
                qpa::leakage_monte_carlo(leak_r, leak_m, leak_trials, seed);
            write_output(out_path, render_leakage(seed, est, format));
            return kExitOk;
        }

        if (sweep->parsed()) {
            const std::vector<double> rs = parse_double_list(r_list);
            const std::vector<int> ms = parse_int_list(m_list);
            if (rs.empty() || ms.empty()) throw std::invalid_argument("sweep grid is empty");
            std::vector<qpa::LeakageEstimate> cells;
            std::uint64_t cell_index = 0;
            for (double r : rs) {
                for (int m : ms) {
                    const std::uint64_t cell_seed =
                        qpa::splitmix64(qpa::splitmix64(seed) + cell_index);
                    cells.push_back(qpa::leakage_monte_carlo(r, m, sweep_trials, cell_seed));
                    ++cell_index;
                }
            }
            const std::string fmt = (app.count("--format") > 0) ? format : "csv";
            write_output(out_path, render_sweep(seed, r_list, m_list, sweep_trials, cells, fmt));
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
