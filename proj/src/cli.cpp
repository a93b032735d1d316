#include "probeview/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <variant>

#include "probeview/analysis.hpp"
#include "probeview/descriptor.hpp"
#include "probeview/oracle_suite.hpp"
#include "probeview/output.hpp"
#include "probeview/reduction.hpp"

namespace probeview::cli {

namespace {

double parse_number(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    double x = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x))
        throw ValidationError("not a number: \"" + std::string(s) + "\"");
    return x;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("error reading \"" + path + "\"");
    return buf.str();
}

std::string load_state(const std::string& spec) {
    if (spec.empty()) throw ValidationError("this command needs --state");
    if (spec.front() == '@') return read_file(spec.substr(1));
    return spec;
}

std::vector<ProfileSample<double>> read_profile(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<ProfileSample<double>> samples;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::vector<std::string> cols;
        for (std::string f; fields >> f;) cols.push_back(f);
        if (cols.empty()) continue;
        if (cols.size() != 2 && cols.size() != 3)
            throw ValidationError("profile line " + std::to_string(lineno) + ": expected 2 or 3 columns");
        try {
            ProfileSample<double> s;
            s.position = parse_number(cols[0]);
            s.value = {parse_number(cols[1]), cols.size() == 3 ? parse_number(cols[2]) : 0.0};
            samples.push_back(s);
        } catch (const ValidationError& e) {
            throw ValidationError("profile line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return samples;
}

double single_q0sq(const RunConfig& config) {
    if (config.q0sq.size() != 1) throw ValidationError("reduce needs exactly one --q0sq value");
    return config.q0sq.front();
}

void emit_reduce(std::ostream& os, const RunConfig& config, double q0sq, const ReductionReport<double>& report,
                 double rho_purity, double mean, double input_mean, double discarded,
                 const std::optional<StateFamily<double>>& closed_form) {
    const DensityMatrixd& rho = report.rho0;
    if (config.format == OutputFormat::Csv) {
        os << "field,i,j,re,im\n";
        for (Index i = 0; i < rho.rows(); ++i)
            for (Index j = 0; j < rho.cols(); ++j)
                os << "rho," << i << ',' << j << ',' << format_real(rho(i, j).real()) << ','
                   << format_real(rho(i, j).imag()) << '\n';
        const auto scalar = [&](const char* name, double x) {
            os << name << ",,," << format_real(x) << ",0\n";
        };
        scalar("q0sq", q0sq);
        scalar("purity", rho_purity);
        scalar("mean_occupation", mean);
        scalar("input_mean_occupation", input_mean);
        scalar("discarded_mass", discarded);
        scalar("series_terms_used", static_cast<double>(report.series_terms_used));
        scalar("tail_bound", report.tail_bound);
        if (closed_form) {
            if (const auto* c = std::get_if<CoherentState<double>>(&*closed_form))
                os << "closed_form_alpha,,," << format_real(c->alpha.real()) << ',' << format_real(c->alpha.imag())
                   << '\n';
            if (const auto* t = std::get_if<ThermalState<double>>(&*closed_form))
                scalar("closed_form_betaE", t->beta_energy());
        }
        return;
    }

    JsonWriter w(os);
    w.begin_object().key("command").value("reduce").key("q0sq").value(q0sq);
    w.key("dim").value(static_cast<std::int64_t>(rho.rows()));
    w.key("rho").begin_array();
    for (Index i = 0; i < rho.rows(); ++i) {
        w.begin_array();
        for (Index j = 0; j < rho.cols(); ++j)
            w.begin_array().value(rho(i, j).real()).value(rho(i, j).imag()).end_array();
        w.end_array();
    }
    w.end_array().key("diag").begin_array();
    for (Index i = 0; i < rho.rows(); ++i) w.value(rho(i, i).real());
    w.end_array();
    w.key("purity").value(rho_purity);
    w.key("mean_occupation").value(mean);
    w.key("input_mean_occupation").value(input_mean);
    w.key("discarded_mass").value(discarded);
    w.key("series_terms_used").value(static_cast<std::int64_t>(report.series_terms_used));
    w.key("tail_bound").value(report.tail_bound);
    if (closed_form) {
        w.key("closed_form");
        if (const auto* c = std::get_if<CoherentState<double>>(&*closed_form)) {
            w.begin_object().key("family").value("coherent").key("alpha").complex(c->alpha).end_object();
        } else if (const auto* t = std::get_if<ThermalState<double>>(&*closed_form)) {
            w.begin_object().key("family").value("thermal").key("betaE").value(t->beta_energy()).end_object();
        } else if (const auto* n = std::get_if<NumberState>(&*closed_form)) {
            w.begin_object().key("family").value("number").key("n").value(static_cast<std::int64_t>(n->n)).end_object();
        }
    }
    w.end_object();
}

void run_reduce(const RunConfig& config, std::ostream& os) {
    const TruncationPolicy<double> policy{config.cutoff, config.tol};
    const auto family = parse_state_descriptor(load_state(config.state), policy);
    const double q0sq = single_q0sq(config);
    const auto split = ModeSplit<double>::from_q0_squared(q0sq);
    const auto materialized = materialize(family, policy);

    ReductionReport<double> report;
    if (const auto* m = std::get_if<MixtureState<double>>(&family)) {
        report = reduce_mixed(*m, split, config.tol);
    } else if (materialized.is_pure()) {
        report = reduce_pure_general(std::get<FockVector<double>>(materialized.state), split, config.tol);
    } else {
        report = reduce_density_matrix(std::get<DensityMatrixd>(materialized.state), split);
    }
    const auto violations = validate_density_matrix(report.rho0, 1e-10);
    if (!violations.empty()) throw ConsistencyError("reduced state failed validation: " + describe(violations));

    std::optional<StateFamily<double>> closed_form;
    if (const auto* c = std::get_if<CoherentState<double>>(&family)) {
        closed_form = reduce_coherent(c->alpha, split);
    } else if (const auto* t = std::get_if<ThermalState<double>>(&family)) {
        if (split.is_empty())
            closed_form = NumberState{0};
        else
            closed_form = reduce_thermal(*t, split);
    }

    const DensityMatrixd input = materialized.density();
    emit_reduce(os, config, q0sq, report, purity(report.rho0), number_expectation(report.rho0),
                number_expectation(input), materialized.discarded_mass, closed_form);
}

std::vector<double> default_q0sq_grid() { return parse_grid("0:1:0.05"); }

void run_sweep_purity(const RunConfig& config, std::ostream& os) {
    const Index max_n = config.max_n.value_or(5);
    if (max_n < 1) throw ValidationError("sweep-purity needs --max-n >= 1");
    std::vector<Index> ns;
    for (Index n = 1; n <= max_n; ++n) ns.push_back(n);
    const auto sweep = purity_sweep<double>(ns, config.q0sq.empty() ? default_q0sq_grid() : config.q0sq);
    if (config.format == OutputFormat::Csv)
        write_sweep_csv(os, sweep);
    else
        write_sweep_json(os, sweep, "sweep-purity");
}

void run_sweep_thermal(const RunConfig& config, std::ostream& os) {
    std::vector<double> q0sq = config.q0sq;
    if (q0sq.empty()) q0sq = parse_grid("0.05:1:0.05");
    const std::vector<double> temps =
        config.inv_beta_energy.empty() ? parse_grid("0.1:10:0.1") : config.inv_beta_energy;
    std::vector<double> beta_energy;
    for (double t : temps) {
        if (!(t > 0)) throw ValidationError("--inv-betaE values must be positive");
        beta_energy.push_back(1.0 / t);
    }
    const auto sweep = thermal_sweep<double>(q0sq, beta_energy);
    if (config.format == OutputFormat::Csv)
        write_sweep_csv(os, sweep);
    else
        write_sweep_json(os, sweep, "sweep-thermal");
}

bool run_oracle_check(const RunConfig& config, std::ostream& os) {
    oracle::SuiteConfig suite;
    suite.seed = config.seed;
    suite.max_n = config.max_n.value_or(8);
    suite.random_cases = config.cases;
    suite.q0sq_grid = config.q0sq;
    const auto report = oracle::run_suite(suite);
    const double worst = report.max_abs_diff();
    const bool pass = worst < config.tol;

    if (config.format == OutputFormat::Csv) {
        os << "check,count,max_abs_diff\n";
        Index total = 0;
        for (const auto& c : report.checks) {
            os << c.name << ',' << c.count << ',' << format_real(c.max_abs_diff) << '\n';
            total += c.count;
        }
        os << "all," << total << ',' << format_real(worst) << '\n';
        return pass;
    }
    std::ostringstream summary;
    summary << "max_abs_diff " << (pass ? "< " : ">= ") << config.tol;
    JsonWriter w(os);
    w.begin_object().key("command").value("oracle-check");
    w.key("seed").value(static_cast<std::int64_t>(config.seed));
    w.key("max_n").value(static_cast<std::int64_t>(suite.max_n));
    w.key("cases").value(static_cast<std::int64_t>(suite.random_cases));
    w.key("tol").value(config.tol);
    w.key("checks").begin_array();
    for (const auto& c : report.checks)
        w.begin_object()
            .key("name")
            .value(c.name)
            .key("count")
            .value(static_cast<std::int64_t>(c.count))
            .key("max_abs_diff")
            .value(c.max_abs_diff)
            .end_object();
    w.end_array();
    w.key("max_abs_diff").value(worst).key("pass").value(pass).key("summary").value(summary.str());
    w.end_object();
    return pass;
}

void run_profile_overlap(const RunConfig& config, std::ostream& os) {
    if (config.profile.empty()) throw ValidationError("profile-overlap needs --profile");
    if (!config.region) throw ValidationError("profile-overlap needs --region lo:hi");
    const auto samples = read_profile(config.profile);
    const Interval<double> region{(*config.region)[0], (*config.region)[1]};
    const double q0sq = overlap_from_profile<double>(samples, region);
    if (config.format == OutputFormat::Csv) {
        os << "q0sq\n" << format_real(q0sq) << '\n';
        return;
    }
    JsonWriter w(os);
    w.begin_object().key("command").value("profile-overlap");
    w.key("samples").value(static_cast<std::int64_t>(samples.size()));
    w.key("region").begin_array().value(region.lo).value(region.hi).end_array();
    w.key("q0sq").value(q0sq).end_object();
}

}  // namespace

std::vector<double> parse_grid(std::string_view text) {
    if (text.find(':') != std::string_view::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw ValidationError("range must be x:y:step, got \"" + std::string(text) + "\"");
        const double lo = parse_number(parts[0]);
        const double hi = parse_number(parts[1]);
        const double step = parse_number(parts[2]);
        if (!(step > 0) || hi < lo) throw ValidationError("range needs step > 0 and x <= y");
        const double span = (hi - lo) / step;
        const auto intervals = static_cast<Index>(std::floor(span + 1e-9));
        if (intervals > 1000000) throw ValidationError("range has too many points");
        const bool exact = std::abs(span - static_cast<double>(intervals)) < 1e-9;
        std::vector<double> out;
        for (Index k = 0; k <= intervals; ++k) {
            // evenly divisible ranges interpolate so the endpoints come out exact
            out.push_back(exact && intervals > 0 ? lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(intervals)
                                                 : lo + static_cast<double>(k) * step);
        }
        return out;
    }
    std::vector<double> out;
    for (auto part : split(text, ',')) out.push_back(parse_number(part));
    return out;
}

std::vector<double> parse_interval(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw ValidationError("interval must be lo:hi, got \"" + std::string(text) + "\"");
    return {parse_number(parts[0]), parse_number(parts[1])};
}

std::string_view command_name(Command c) {
    switch (c) {
        case Command::Reduce: return "reduce";
        case Command::SweepPurity: return "sweep-purity";
        case Command::SweepThermal: return "sweep-thermal";
        case Command::OracleCheck: return "oracle-check";
        case Command::ProfileOverlap: return "profile-overlap";
    }
    return "unknown";
}

void validate(const RunConfig& config) {
    for (double q : config.q0sq)
        if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("--q0sq values must lie in [0, 1]");
    if (!(config.tol > 0.0 && config.tol <= 1e-2)) throw ValidationError("--tol must lie in (0, 1e-2]");
    if (config.cutoff < 1) throw ValidationError("--cutoff must be at least 1");
    if (config.max_n && *config.max_n < 0) throw ValidationError("--max-n must be nonnegative");
    if (config.cases < 0) throw ValidationError("--cases must be nonnegative");
    if (config.region && (config.region->size() != 2 || (*config.region)[0] > (*config.region)[1]))
        throw ValidationError("--region must be lo:hi with lo <= hi");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const auto fail = [&](int code, const char* kind, const std::exception& e) {
        err << "probeview " << command_name(config.command) << ": " << kind << ": " << e.what() << '\n';
        return code;
    };
    try {
        validate(config);
        std::ostringstream body;
        int code = kOk;
        switch (config.command) {
            case Command::Reduce: run_reduce(config, body); break;
            case Command::SweepPurity: run_sweep_purity(config, body); break;
            case Command::SweepThermal: run_sweep_thermal(config, body); break;
            case Command::OracleCheck:
                if (!run_oracle_check(config, body)) code = kOracleDisagreement;
                break;
            case Command::ProfileOverlap: run_profile_overlap(config, body); break;
        }
        if (config.out == "-") {
            out << body.str();
        } else {
            std::ofstream file(config.out, std::ios::binary);
            if (!file) throw IoError("cannot open \"" + config.out + "\" for writing");
            file << body.str();
            if (!file) throw IoError("error writing \"" + config.out + "\"");
        }
        if (code == kOracleDisagreement) err << "probeview oracle-check: oracle disagreement beyond tolerance\n";
        return code;
    } catch (const TruncationError& e) {
        return fail(kTruncationError, "truncation error", e);
    } catch (const VacuumLimit& e) {
        return fail(kValidationError, "vacuum limit", e);
    } catch (const ValidationError& e) {
        return fail(kValidationError, "validation error", e);
    } catch (const ConsistencyError& e) {
        return fail(kOracleDisagreement, "consistency error", e);
    } catch (const IoError& e) {
        return fail(kIoError, "i/o error", e);
    } catch (const std::exception& e) {
        return fail(kInternalError, "error", e);
    }
}

}  // namespace probeview::cli
