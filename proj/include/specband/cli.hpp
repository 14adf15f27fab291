#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "specband/config_io.hpp"
#include "specband/csvio.hpp"
#include "specband/errors.hpp"
#include "specband/experiment.hpp"
#include "specband/trace.hpp"
#include "specband/version.hpp"

namespace specband::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitIoError = 3;

namespace detail {

inline void write_metadata(std::ofstream& out, const ExperimentConfig& config) {
    out << "# specband " << kVersion << "\n";
    out << "# config_hash " << config_hash(config) << "\n";
    out << "# master_seed " << format_int(static_cast<std::int64_t>(config.master_seed)) << "\n";
}

inline void ensure_directory(const std::string& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec || !std::filesystem::is_directory(out_dir)) {
        throw IoError("cannot create output directory: " + out_dir);
    }
}

inline void write_trace_csv(const std::string& path, const ExperimentConfig& config,
                            const RunTrace& trace) {
    std::ofstream out = open_output(path);
    write_metadata(out, config);
    out << "t,arm,reward";
    for (std::size_t i = 0; i < trace.num_arms; ++i) out << ",pulls_" << i;
    for (std::size_t i = 0; i < trace.num_arms; ++i) out << ",mean_" << i;
    out << "\n";
    for (const auto& step : trace.steps) {
        out << format_int(step.t) << "," << step.arm << "," << format_double(step.reward);
        for (std::int64_t p : step.pulls) out << "," << format_int(p);
        for (double m : step.means) out << "," << format_double(m);
        out << "\n";
    }
}

inline void write_regret_csv(const std::string& path, const ExperimentConfig& config,
                             const EnsembleResult& result) {
    std::ofstream out = open_output(path);
    write_metadata(out, config);
    out << "t,mean_regret,std_regret\n";
    for (std::size_t t = 0; t < result.mean_regret.size(); ++t) {
        out << format_int(static_cast<std::int64_t>(t + 1)) << ","
            << format_double(result.mean_regret[t]) << "," << format_double(result.std_regret[t])
            << "\n";
    }
}

inline void write_spectrum_rows(std::ofstream& out, std::int64_t t,
                                const std::vector<double>& amplitude,
                                const std::vector<double>& frequency,
                                const std::vector<double>& energy) {
    for (std::size_t i = 0; i < energy.size(); ++i) {
        out << format_int(t) << "," << i << "," << format_double(amplitude[i]) << ","
            << format_double(frequency[i]) << "," << format_double(energy[i]) << "\n";
    }
}

inline void write_spectrum_csv(const std::string& path, const ExperimentConfig& config,
                               const EnsembleResult& result) {
    std::ofstream out = open_output(path);
    write_metadata(out, config);
    out << "t,arm,amplitude,frequency,energy\n";
    for (std::size_t j = 0; j < result.grid.size(); ++j) {
        write_spectrum_rows(out, result.grid[j], result.mean_amplitude[j],
                            result.mean_frequency[j], result.energy[j]);
    }
}

inline void write_spectrum_csv(const std::string& path, const ExperimentConfig& config,
                               const std::vector<SpectralSlice>& slices) {
    std::ofstream out = open_output(path);
    write_metadata(out, config);
    out << "t,arm,amplitude,frequency,energy\n";
    for (const auto& slice : slices) {
        write_spectrum_rows(out, slice.t, slice.amplitude, slice.frequency, slice.energy);
    }
}

inline void write_sweep_csv(const std::string& path, const ExperimentConfig& config,
                            const std::vector<SweepRow>& rows) {
    std::ofstream out = open_output(path);
    write_metadata(out, config);
    out << "# instance_hash " << instance_hash(config.instance) << "\n";
    out << "alpha,mean_regret,ci_half_width,v_of_T";
    for (std::size_t i = 0; i < config.instance.num_arms(); ++i) out << ",mean_pulls_" << i;
    out << "\n";
    for (const auto& row : rows) {
        out << format_double(row.alpha) << "," << format_double(row.mean_regret) << ","
            << format_double(row.ci_half_width) << "," << format_double(row.v_of_t);
        for (double p : row.mean_pulls) out << "," << format_double(p);
        out << "\n";
    }
}

inline void write_ensemble_json(const std::string& path, const ExperimentConfig& config,
                                const EnsembleResult& result) {
    nlohmann::json doc;
    doc["tool_version"] = kVersion;
    doc["config_hash"] = config_hash(config);
    doc["master_seed"] = config.master_seed;
    doc["config"] = config_to_json(config);
    nlohmann::json res;
    res["replications"] = result.replications;
    res["horizon"] = result.horizon;
    res["mean_final_regret"] = result.mean_final_regret;
    res["std_final_regret"] = result.std_final_regret;
    res["ci_half_width"] = result.ci_half_width;
    res["mean_pulls"] = result.mean_pulls;
    res["grid"] = result.grid;
    res["v_ensemble"] = result.v_ensemble;
    res["v_per_run"] = result.v_per_run;
    res["v_modes"] = {
        {"v_ensemble", "slice deviations of the Monte Carlo energy estimate, stride-weighted"},
        {"v_per_run", "exact per-step one-hot variation, averaged over replications"}};
    doc["results"] = std::move(res);
    std::ofstream out = open_output(path);
    out << doc.dump(2) << "\n";
}

inline std::filesystem::path join(const std::string& dir, const char* name) {
    return std::filesystem::path(dir) / name;
}

}  // namespace detail

// run: single trace (R = 1) or ensemble artifacts (R > 1).
inline int cmd_run(const std::string& config_path, const std::string& out_dir,
                   const RunOptions& options = {}) {
    try {
        const ExperimentConfig config = load_config_file(config_path);
        detail::ensure_directory(out_dir);
        if (config.replications == 1) {
            const RunTrace trace = run_single(config, 0);
            detail::write_trace_csv(detail::join(out_dir, "trace.csv").string(), config, trace);
        } else {
            const EnsembleResult result = run_ensemble(config, options);
            detail::write_ensemble_json(detail::join(out_dir, "ensemble.json").string(), config,
                                        result);
            detail::write_regret_csv(detail::join(out_dir, "regret.csv").string(), config, result);
            detail::write_spectrum_csv(detail::join(out_dir, "spectrum.csv").string(), config,
                                       result);
        }
        return kExitOk;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

// sweep: one ensemble row per exploration exponent, common random numbers.
inline int cmd_sweep(const std::string& config_path, const std::vector<double>& alphas,
                     const std::string& out_dir, const RunOptions& options = {}) {
    try {
        const ExperimentConfig config = load_config_file(config_path);
        detail::ensure_directory(out_dir);
        const std::vector<SweepRow> rows = sweep_alpha(config, alphas, options);
        detail::write_sweep_csv(detail::join(out_dir, "sweep.csv").string(), config, rows);
        return kExitOk;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

// spectrum: ensemble spectral slices at explicitly requested times.
inline int cmd_spectrum(const std::string& config_path, const std::vector<std::int64_t>& at,
                        const std::string& out_dir) {
    try {
        const ExperimentConfig config = load_config_file(config_path);
        detail::ensure_directory(out_dir);
        const std::vector<SpectralSlice> slices = spectrum_at(config, at);
        detail::write_spectrum_csv(detail::join(out_dir, "spectrum.csv").string(), config, slices);
        return kExitOk;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

namespace detail {

inline std::vector<double> parse_alpha_list(const std::string& text) {
    std::vector<double> alphas;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            const double value = std::stod(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            alphas.push_back(value);
        } catch (const std::exception&) {
            throw ConfigError("alphas: cannot parse '" + token + "' as a real number");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return alphas;
}

inline std::vector<std::int64_t> parse_time_list(const std::string& text) {
    std::vector<std::int64_t> times;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            const std::int64_t value = std::stoll(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            times.push_back(value);
        } catch (const std::exception&) {
            throw ConfigError("at: cannot parse '" + token + "' as a time step");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return times;
}

}  // namespace detail

}  // namespace specband::cli
