// hardylab — command-line front end.
//
// Exit codes: 0 success/pass, 1 mathematical check failed, 2 usage or
// parse error, 3 feasibility/resource error.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hardylab/errors.hpp"
#include "hardylab/forms.hpp"
#include "hardylab/optimality.hpp"
#include "hardylab/roots.hpp"
#include "hardylab/sequence.hpp"
#include "hardylab/spectral.hpp"
#include "hardylab/summation.hpp"
#include "hardylab/version.hpp"
#include "hardylab/weights.hpp"

namespace {

using hardylab::SummationMode;
using nlohmann::json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json make_envelope(const std::string& command, json parameters, json results,
                   const SummationMode& mode) {
    json envelope;
    envelope["command"] = command;
    envelope["parameters"] = std::move(parameters);
    envelope["results"] = std::move(results);
    envelope["mode"] = mode.describe();
    envelope["tool_version"] = hardylab::kVersion;
    return envelope;
}

void flatten_to_csv(const json& node, const std::string& prefix, std::string& out) {
    if (node.is_object()) {
        for (auto it = node.begin(); it != node.end(); ++it) {
            flatten_to_csv(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
        }
    } else if (node.is_array()) {
        std::size_t i = 0;
        for (const auto& item : node) {
            flatten_to_csv(item, prefix + "." + std::to_string(i++), out);
        }
    } else {
        out += prefix;
        out += ',';
        if (node.is_number_float()) {
            out += format_double(node.get<double>());
        } else {
            out += node.is_string() ? node.get<std::string>() : node.dump();
        }
        out += '\n';
    }
}

void emit(const json& envelope, const std::string& format) {
    if (format == "csv") {
        std::string out = "key,value\n";
        flatten_to_csv(envelope, "", out);
        std::cout << out;
    } else {
        std::cout << envelope.dump(2) << "\n";
    }
}

std::uint64_t support_cap_from_env() {
    const char* raw = std::getenv("HARDYLAB_SUPPORT_CAP");
    if (raw == nullptr) return hardylab::kDefaultSupportCap;
    char* end = nullptr;
    const unsigned long long value = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0' || value == 0) {
        throw hardylab::ValidationError(
            "HARDYLAB_SUPPORT_CAP must be a positive integer, got `" + std::string(raw) + "`");
    }
    return value;
}

struct PerturbSpec {
    std::uint64_t site = 0;
    double epsilon = 0.0;
};

PerturbSpec parse_perturb(const std::string& text) {
    const auto fail = [&]() -> hardylab::ValidationError {
        return hardylab::ValidationError("--perturb expects `site:epsilon`, got `" + text + "`");
    };
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw fail();
    PerturbSpec spec;
    try {
        std::size_t used = 0;
        spec.site = std::stoull(text.substr(0, colon), &used);
        if (used != colon) throw fail();
        spec.epsilon = std::stod(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) throw fail();
    } catch (const hardylab::ValidationError&) {
        throw;
    } catch (const std::exception&) {
        throw fail();
    }
    return spec;
}

hardylab::WeightKind resolve_kind(const std::string& name,
                                  const std::optional<PerturbSpec>& perturb) {
    hardylab::WeightVariant base = hardylab::WeightVariant::kpp;
    if (name == "classical") base = hardylab::WeightVariant::classical;
    if (perturb) {
        return hardylab::WeightKind::perturbed(base, perturb->site, perturb->epsilon);
    }
    return base == hardylab::WeightVariant::kpp ? hardylab::WeightKind::kpp()
                                                : hardylab::WeightKind::classical();
}

hardylab::Sequence builtin_or_file(const std::string& input, std::uint64_t cap) {
    using hardylab::Sequence;
    if (input == "e1") {
        return Sequence::from_pairs({{1, {1.0, 0.0}}});
    }
    const auto parse_count = [&](const std::string& text) {
        char* end = nullptr;
        const unsigned long long value = std::strtoull(text.c_str(), &end, 10);
        if (end == text.c_str() || *end != '\0' || value == 0) {
            throw hardylab::ValidationError("bad builtin parameter `" + text + "`");
        }
        return static_cast<std::uint64_t>(value);
    };
    if (input.rfind("step:", 0) == 0) {
        const std::uint64_t m = parse_count(input.substr(5));
        if (m > cap) throw hardylab::FeasibilityError("step:" + std::to_string(m) +
                                                      " exceeds the support cap");
        std::vector<Sequence::Entry> entries;
        entries.reserve(m);
        for (std::uint64_t n = 1; n <= m; ++n) entries.push_back({n, {1.0, 0.0}});
        return Sequence::from_pairs(std::move(entries));
    }
    if (input.rfind("sqrt:", 0) == 0) {
        const std::uint64_t m = parse_count(input.substr(5));
        if (m > cap) throw hardylab::FeasibilityError("sqrt:" + std::to_string(m) +
                                                      " exceeds the support cap");
        std::vector<Sequence::Entry> entries;
        entries.reserve(m);
        for (std::uint64_t n = 1; n <= m; ++n) {
            entries.push_back({n, {std::sqrt(static_cast<double>(n)), 0.0}});
        }
        return Sequence::from_pairs(std::move(entries));
    }
    if (input.rfind("probe:N=", 0) == 0) {
        return hardylab::regularized_ground_state(parse_count(input.substr(8)), cap);
    }
    return hardylab::parse_sequence_file(std::filesystem::path(input));
}

int run_weights(std::uint64_t from, std::uint64_t to, const std::string& kind_name,
                const std::optional<PerturbSpec>& perturb, const std::string& format,
                const SummationMode& mode) {
    if (from < 1 || from > to || to > 10'000'000ULL) {
        throw hardylab::ValidationError("weights range must satisfy 1 <= from <= to <= 10^7");
    }
    const hardylab::WeightKind kind = resolve_kind(kind_name, perturb);
    const hardylab::WeightTable table{kind};
    const bool with_value = kind.is_perturbed();

    if (format == "csv") {
        std::string header = "n,kpp,classical,gap,scaled_gap";
        if (with_value) header += ",perturbed";
        std::printf("%s\n", header.c_str());
        for (std::uint64_t n = from; n <= to; ++n) {
            const double gap = hardylab::weight_gap(n);
            const double nd = static_cast<double>(n);
            std::printf("%" PRIu64 ",%.17g,%.17g,%.17g,%.17g", n, hardylab::kpp_weight(n),
                        hardylab::classical_weight(n), gap, nd * nd * nd * nd * gap);
            if (with_value) std::printf(",%.17g", table.value(n));
            std::printf("\n");
        }
        return 0;
    }

    json rows = json::array();
    for (std::uint64_t n = from; n <= to; ++n) {
        const double gap = hardylab::weight_gap(n);
        const double nd = static_cast<double>(n);
        json row;
        row["n"] = n;
        row["kpp"] = hardylab::kpp_weight(n);
        row["classical"] = hardylab::classical_weight(n);
        row["gap"] = gap;
        row["scaled_gap"] = nd * nd * nd * nd * gap;
        if (with_value) row["perturbed"] = table.value(n);
        rows.push_back(std::move(row));
    }
    json parameters;
    parameters["from"] = from;
    parameters["to"] = to;
    parameters["kind"] = kind_name;
    if (perturb) {
        parameters["perturb_site"] = perturb->site;
        parameters["perturb_epsilon"] = perturb->epsilon;
    }
    emit(make_envelope("weights", std::move(parameters), json{{"rows", std::move(rows)}}, mode),
         "json");
    return 0;
}

int run_verify(const std::string& input, const std::string& format, const SummationMode& mode,
               std::uint64_t cap) {
    const hardylab::Sequence u = builtin_or_file(input, cap);
    json parameters;
    parameters["input"] = input;

    hardylab::FormReport report;
    bool pass = true;
    try {
        report = hardylab::identity_report(u, mode);
    } catch (const hardylab::IdentityViolation& violation) {
        report = violation.report;
        pass = false;
    }
    json results;
    results["dirichlet"] = report.dirichlet;
    results["weighted"] = report.weighted;
    results["remainder"] = report.remainder;
    results["residual"] = report.residual;
    results["tolerance"] = report.tolerance;
    results["support_size"] = report.support_size;
    results["pass"] = pass;
    emit(make_envelope("verify", std::move(parameters), std::move(results), mode), format);
    return pass ? 0 : 1;
}

int run_probe(std::uint64_t level, bool with_chain, const std::string& format,
              const SummationMode& mode, std::uint64_t cap) {
    const hardylab::ProbeResult probe = hardylab::probe_remainder(level, mode, cap);
    json parameters;
    parameters["N"] = level;
    json results;
    results["remainder"] = probe.remainder;
    results["remainder_sequence"] = probe.remainder_sequence;
    results["bound"] = probe.bound;
    results["margin"] = probe.margin;
    results["terms"] = probe.term_count;
    const bool pass = probe.remainder <= probe.bound;
    results["pass"] = pass;
    if (with_chain) {
        json chain = json::array();
        for (const auto& stage : probe.chain) {
            chain.push_back({{"label", stage.label}, {"value", stage.value}});
        }
        results["chain"] = std::move(chain);
    }
    emit(make_envelope("probe", std::move(parameters), std::move(results), mode), format);
    return pass ? 0 : 1;
}

int run_witness(std::uint64_t site, double epsilon, std::optional<std::uint64_t> level,
                const std::string& format, const SummationMode& mode, std::uint64_t cap) {
    const hardylab::WitnessResult witness =
        hardylab::find_witness(site, epsilon, mode, level, cap);
    json parameters;
    parameters["site"] = site;
    parameters["epsilon"] = epsilon;
    if (level) parameters["level"] = *level;
    json results;
    results["level"] = witness.level;
    results["perturbed_form"] = witness.perturbed_form;
    results["dirichlet"] = witness.dirichlet;
    results["margin"] = witness.margin;
    results["margin_identity"] = witness.margin_identity;
    results["remainder"] = witness.remainder;
    const bool violated = witness.margin > 0.0;
    results["verdict"] = violated
                             ? "inequality violated for w+eps*delta_k"
                             : "no violation detected at this level";
    emit(make_envelope("witness", std::move(parameters), std::move(results), mode), format);
    return violated ? 0 : 1;
}

int run_spectrum(std::uint64_t size, const std::string& kind_name,
                 const std::optional<PerturbSpec>& perturb, double tol,
                 const std::string& format, const SummationMode& mode) {
    if (size < 1 || size > 100'000ULL) {
        throw hardylab::ValidationError("spectrum size must satisfy 1 <= M <= 10^5");
    }
    const hardylab::WeightKind kind = resolve_kind(kind_name, perturb);
    const hardylab::TridiagonalForm form = hardylab::build_form(size, hardylab::WeightTable{kind});
    const double lambda_min = hardylab::smallest_eigenvalue(form, tol);
    const double residual = hardylab::factorization_residual(size);
    const bool psd = lambda_min >= -1e-10;

    json parameters;
    parameters["M"] = size;
    parameters["kind"] = kind_name;
    if (perturb) {
        parameters["perturb_site"] = perturb->site;
        parameters["perturb_epsilon"] = perturb->epsilon;
    }
    parameters["tol"] = tol;
    json results;
    results["smallest_eigenvalue"] = lambda_min;
    results["factorization_residual"] = residual;
    results["psd"] = psd;
    emit(make_envelope("spectrum", std::move(parameters), std::move(results), mode), format);
    if (!perturb && !psd) return 1;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for the improved discrete Hardy weight: identity "
                 "verification, optimality probes, violation witnesses and spectral checks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", hardylab::kVersion);

    std::string mode_name = "compensated";
    unsigned bits = 256;
    app.add_option("--mode", mode_name, "summation policy")
        ->check(CLI::IsMember({"naive", "compensated", "extended"}));
    app.add_option("--bits", bits, "precision for --mode extended (default 256)");

    auto* weights_cmd = app.add_subcommand("weights", "tabulate weight sequences and their gap");
    std::uint64_t from = 1, to = 1;
    std::string weights_kind = "kpp", weights_format = "csv", weights_perturb;
    weights_cmd->add_option("--from", from, "first index")->required();
    weights_cmd->add_option("--to", to, "last index")->required();
    weights_cmd->add_option("--kind", weights_kind)->check(CLI::IsMember({"kpp", "classical"}));
    weights_cmd->add_option("--perturb", weights_perturb, "site:epsilon single-site bump");
    weights_cmd->add_option("--format", weights_format)->check(CLI::IsMember({"csv", "json"}));

    auto* verify_cmd = app.add_subcommand("verify", "check the identity D = W + R on a sequence");
    std::string verify_input, verify_format = "json";
    verify_cmd
        ->add_option("input", verify_input,
                     "sequence file (`n,re,im` lines) or builtin: e1, step:M, sqrt:M, probe:N=K")
        ->required();
    verify_cmd->add_option("--format", verify_format)->check(CLI::IsMember({"csv", "json"}));

    auto* probe_cmd = app.add_subcommand("probe", "remainder of the regularized ground state");
    std::uint64_t probe_level = 0;
    bool probe_chain = false;
    std::string probe_format = "json";
    probe_cmd->add_option("N", probe_level, "cutoff level (>= 2)")->required();
    probe_cmd->add_flag("--chain", probe_chain, "include the five-stage bound chain");
    probe_cmd->add_option("--format", probe_format)->check(CLI::IsMember({"csv", "json"}));

    auto* witness_cmd = app.add_subcommand("witness", "violation witness for w + eps*delta_k");
    std::uint64_t witness_site = 0;
    double witness_epsilon = 0.0;
    std::uint64_t witness_level = 0;
    std::string witness_format = "json";
    witness_cmd->add_option("k", witness_site, "perturbation site (>= 1)")->required();
    witness_cmd->add_option("epsilon", witness_epsilon, "perturbation size (> 0)")->required();
    witness_cmd->add_option("--level", witness_level, "explicit cutoff level (must exceed k)");
    witness_cmd->add_option("--format", witness_format)->check(CLI::IsMember({"csv", "json"}));

    auto* spectrum_cmd =
        app.add_subcommand("spectrum", "smallest eigenvalue of the truncated form");
    std::uint64_t spectrum_size = 0;
    std::string spectrum_kind = "kpp", spectrum_format = "json", spectrum_perturb;
    double spectrum_tol = 1e-12;
    spectrum_cmd->add_option("M", spectrum_size, "matrix size (1..10^5)")->required();
    spectrum_cmd->add_option("--kind", spectrum_kind)->check(CLI::IsMember({"kpp", "classical"}));
    spectrum_cmd->add_option("--perturb", spectrum_perturb, "site:epsilon single-site bump");
    spectrum_cmd->add_option("--tol", spectrum_tol, "eigenvalue bisection tolerance");
    spectrum_cmd->add_option("--format", spectrum_format)->check(CLI::IsMember({"csv", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        SummationMode mode = SummationMode::compensated();
        if (mode_name == "naive") mode = SummationMode::naive();
        if (mode_name == "extended") mode = SummationMode::extended(bits);
        mode.validate();
        const std::uint64_t cap = support_cap_from_env();

        if (weights_cmd->parsed()) {
            std::optional<PerturbSpec> perturb;
            if (!weights_perturb.empty()) perturb = parse_perturb(weights_perturb);
            return run_weights(from, to, weights_kind, perturb, weights_format, mode);
        }
        if (verify_cmd->parsed()) {
            return run_verify(verify_input, verify_format, mode, cap);
        }
        if (probe_cmd->parsed()) {
            return run_probe(probe_level, probe_chain, probe_format, mode, cap);
        }
        if (witness_cmd->parsed()) {
            std::optional<std::uint64_t> level;
            if (witness_cmd->count("--level") > 0) level = witness_level;
            return run_witness(witness_site, witness_epsilon, level, witness_format, mode, cap);
        }
        if (spectrum_cmd->parsed()) {
            std::optional<PerturbSpec> perturb;
            if (!spectrum_perturb.empty()) perturb = parse_perturb(spectrum_perturb);
            return run_spectrum(spectrum_size, spectrum_kind, perturb, spectrum_tol,
                                spectrum_format, mode);
        }
    } catch (const hardylab::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hardylab::ConfigurationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const hardylab::FeasibilityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const hardylab::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
