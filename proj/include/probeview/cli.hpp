#ifndef PROBEVIEW_CLI_HPP
#define PROBEVIEW_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "probeview/types.hpp"

namespace probeview::cli {

enum class Command { Reduce, SweepPurity, SweepThermal, OracleCheck, ProfileOverlap };
enum class OutputFormat { Json, Csv };

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kValidationError = 2,
    kOracleDisagreement = 3,
    kTruncationError = 4,
    kIoError = 5,
};

class IoError : public Error {
public:
    using Error::Error;
};

struct RunConfig {
    Command command = Command::Reduce;
    /// JSON descriptor, or "@path" to read it from a file.
    std::string state;
    std::vector<double> q0sq;
    /// Temperature grid 1/(beta E) for sweep-thermal.
    std::vector<double> inv_beta_energy;
    Index cutoff = 64;
    double tol = 1e-10;
    OutputFormat format = OutputFormat::Json;
    std::string out = "-";
    std::uint64_t seed = 42;
    std::optional<Index> max_n;
    Index cases = 100;
    std::string profile;
    std::optional<std::vector<double>> region;
};

/// "x", "a,b,c", or the inclusive range "x:y:step".
std::vector<double> parse_grid(std::string_view text);

/// "lo:hi" as {lo, hi}.
std::vector<double> parse_interval(std::string_view text);

std::string_view command_name(Command c);

/// Throws ValidationError if the configuration is inconsistent.
void validate(const RunConfig& config);

/// Executes one command. Results go to `config.out` ("-" means `out`);
/// diagnostics go to `err`. Returns an ExitCode.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace probeview::cli

#endif  // PROBEVIEW_CLI_HPP
