#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lumen/energy.hpp"
#include "lumen/scenario.hpp"
#include "lumen/simulation.hpp"

namespace {

// Exit codes: 0 ok, 1 usage, 2 scenario error, 3 golden mismatch, 4 I/O error.
constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_scenario = 2;
constexpr int exit_mismatch = 3;
constexpr int exit_io = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp);
        out << content;
        if (!out.flush()) throw IoError("write failed for " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string::size_type start = 0;
    while (start < text.size()) {
        const auto end = text.find('\n', start);
        if (end == std::string::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

/// Returns exit_ok on byte equality, otherwise reports the first divergence.
int verify_golden(const std::string& actual, const std::string& golden_path) {
    const std::string expected = read_file(golden_path);
    if (actual == expected) {
        std::cout << "golden: ok (" << golden_path << ")\n";
        return exit_ok;
    }
    const std::vector<std::string> got = split_lines(actual);
    const std::vector<std::string> want = split_lines(expected);
    const std::size_t common = std::min(got.size(), want.size());
    std::size_t line = 0;
    while (line < common && got[line] == want[line]) ++line;
    std::cerr << "golden mismatch at line " << line + 1 << " of " << golden_path << "\n";
    std::cerr << "  expected: " << (line < want.size() ? want[line] : "<end of file>") << "\n";
    std::cerr << "  actual:   " << (line < got.size() ? got[line] : "<end of file>") << "\n";
    return exit_mismatch;
}

std::string format_report_line(lumen::Policy policy, double energy_j, double baseline_j) {
    char buffer[160];
    std::snprintf(buffer, sizeof buffer, "policy=%s energy_j=%.6f savings_vs_always_on=%.4f",
                  lumen::to_string(policy).c_str(), energy_j,
                  lumen::savings(energy_j, baseline_j));
    return buffer;
}

double policy_energy(const lumen::Scenario& scenario, lumen::Policy policy) {
    switch (policy) {
        case lumen::Policy::always_on_full:
        case lumen::Policy::always_dim:
            return lumen::baseline_energy(scenario, scenario.power, policy);
        case lumen::Policy::mode_a:
        case lumen::Policy::mode_b: {
            lumen::Scenario variant = scenario;
            variant.config.mode =
                policy == lumen::Policy::mode_a ? lumen::Mode::a : lumen::Mode::b;
            return lumen::integrate_trace(lumen::run(variant), variant.power).total_joules();
        }
    }
    return 0.0;
}

int cmd_run(const std::string& scenario_path, const std::optional<std::string>& trace_path,
            bool energy_report, const std::optional<std::string>& golden_path) {
    const lumen::Scenario scenario = lumen::load_scenario(scenario_path);
    const lumen::Trace trace = lumen::run(scenario);
    const std::string text = lumen::format_trace(trace);

    if (trace_path) write_file_atomic(*trace_path, text);
    if (golden_path) {
        const int status = verify_golden(text, *golden_path);
        if (status != exit_ok) return status;
    }
    if (!trace_path && !golden_path && !energy_report) std::cout << text;

    if (energy_report) {
        const double baseline =
            lumen::baseline_energy(scenario, scenario.power, lumen::Policy::always_on_full);
        const lumen::Policy policy =
            scenario.config.mode == lumen::Mode::a ? lumen::Policy::mode_a : lumen::Policy::mode_b;
        const double smart = lumen::integrate_trace(trace, scenario.power).total_joules();
        std::cout << format_report_line(policy, smart, baseline) << "\n";
    }
    return exit_ok;
}

int cmd_compare(const std::string& scenario_path, const std::vector<std::string>& policy_names) {
    const lumen::Scenario scenario = lumen::load_scenario(scenario_path);

    std::vector<lumen::Policy> policies;
    if (policy_names.empty()) {
        policies = {lumen::Policy::mode_b, lumen::Policy::mode_a, lumen::Policy::always_dim,
                    lumen::Policy::always_on_full};
    } else {
        for (const std::string& name : policy_names) {
            if (name == "ModeA") policies.push_back(lumen::Policy::mode_a);
            else if (name == "ModeB") policies.push_back(lumen::Policy::mode_b);
            else if (name == "AlwaysOnFull") policies.push_back(lumen::Policy::always_on_full);
            else policies.push_back(lumen::Policy::always_dim);  // parse-time checked
        }
    }

    const double baseline =
        lumen::baseline_energy(scenario, scenario.power, lumen::Policy::always_on_full);
    for (lumen::Policy policy : policies)
        std::cout << format_report_line(policy, policy_energy(scenario, policy), baseline) << "\n";
    return exit_ok;
}

int cmd_gen_traffic(std::uint64_t seed, double rate, double duration, double speed,
                    double length) {
    const std::vector<lumen::Vehicle> vehicles =
        lumen::generate_traffic(seed, rate, duration, speed, length);
    for (const lumen::Vehicle& vehicle : vehicles) {
        char buffer[128];
        std::snprintf(buffer, sizeof buffer, "vehicle %.6f %g %g", vehicle.enter_time_s,
                      vehicle.speed_mps, vehicle.length_m);
        std::cout << buffer << "\n";
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Streetlight controller simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<std::string> trace_path;
    std::optional<std::string> golden_path;
    bool energy_report = false;

    CLI::App* run = app.add_subcommand("run", "Run a scenario and emit its trace");
    run->add_option("scenario", scenario_path, "scenario file")->required();
    run->add_option("--trace", trace_path, "write the trace here instead of stdout");
    run->add_flag("--energy", energy_report, "append an energy report line");
    run->add_option("--verify-golden", golden_path, "compare the trace against this fixture");

    std::string compare_scenario;
    std::vector<std::string> policy_names;
    CLI::App* compare = app.add_subcommand("compare", "Energy report across control policies");
    compare->add_option("scenario", compare_scenario, "scenario file")->required();
    compare->add_option("--policy", policy_names,
                        "policy to include (ModeA, ModeB, AlwaysOnFull, AlwaysDim); "
                        "default all")
        ->check(CLI::IsMember({"ModeA", "ModeB", "AlwaysOnFull", "AlwaysDim"}));

    std::uint64_t seed = 0;
    double rate = 60.0;
    double duration = 60.0;
    double speed = 1.0;
    double length = 0.3;
    CLI::App* gen = app.add_subcommand("gen-traffic", "Print seeded traffic as vehicle lines");
    gen->add_option("--seed", seed, "rng seed")->required();
    gen->add_option("--rate", rate, "arrivals per hour")->required();
    gen->add_option("--duration", duration, "horizon in seconds")->required();
    gen->add_option("--speed", speed, "vehicle speed m/s");
    gen->add_option("--length", length, "vehicle length m");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::ParseError& error) {
        std::cerr << error.what() << "\n";
        return exit_usage;
    }

    try {
        if (run->parsed()) return cmd_run(scenario_path, trace_path, energy_report, golden_path);
        if (compare->parsed()) return cmd_compare(compare_scenario, policy_names);
        return cmd_gen_traffic(seed, rate, duration, speed, length);
    } catch (const IoError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return exit_io;
    } catch (const lumen::Error& error) {
        std::cerr << "error: " << error.what() << "\n";
        return exit_scenario;
    }
}
