#pragma once

#include <string>
#include <vector>

#include "d2d/config.hpp"

namespace d2d {

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
    std::string body() const;  // header line + rows, no comments
};

std::string fmt_num(double x);  // %.10g
std::string fmt_int(long long x);

struct CommandOutput {
    std::string name;  // file name without directory
    Table table;
};

struct CommandResult {
    int exit_code = 0;
    std::vector<CommandOutput> outputs;
    std::string summary;  // human-readable, printed to stdout
    std::vector<std::string> warnings;
};

CommandResult cmd_mode_select(const ExperimentConfig& cfg);
CommandResult cmd_ec(const ExperimentConfig& cfg);
CommandResult cmd_sweep(const ExperimentConfig& cfg);
CommandResult cmd_optimize(const ExperimentConfig& cfg);
CommandResult cmd_validate(const ExperimentConfig& cfg);

CommandResult run_command(const std::string& name, const ExperimentConfig& cfg);

// Comment header: command line, one timestamp line, seed and the resolved config.
std::string file_header(const ExperimentConfig& cfg, const std::string& command_line);

// Writes every output under out_dir (created if missing); returns the paths written.
std::vector<std::string> write_outputs(const CommandResult& res, const ExperimentConfig& cfg,
                                       const std::string& out_dir, const std::string& command_line);

}  // namespace d2d
