#include "hybrid/cli.hpp"

#include "hybrid/engine.hpp"
#include "hybrid/errors.hpp"
#include "hybrid/io.hpp"
#include "hybrid/oracle.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace hybrid {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumeric = 3;

struct CliFailure {
    int code;
    std::string message;
};

LoadedConfig load_or_fail(const std::string& path) {
    try {
        return load_config_file(path);
    } catch (const ParseError& e) {
        throw CliFailure{kExitIo, e.what()};
    }
}

/// Full domain validation of a loaded config; returns findings (empty = ok).
std::vector<ValidationError> validate_all(const LoadedConfig& cfg) {
    std::vector<ValidationError> errs = validate(cfg.hybrid);
    if (cfg.bc.N() != cfg.hybrid.N())
        errs.push_back({"CountMismatch", "boundary condition has " + std::to_string(cfg.bc.N()) +
                                             " blocks for " + std::to_string(cfg.hybrid.N()) +
                                             " segment endpoints"});
    else if (cfg.bc.N() > 0) {
        try {
            check_blocks(cfg.bc);
            require_non_reducible(cfg.bc);
        } catch (const NotSelfAdjoint& e) {
            errs.push_back({"BadValue", e.what()});
        } catch (const Reducible& e) {
            errs.push_back({"BadValue", e.what()});
        }
    }
    return errs;
}

LoadedConfig load_valid_or_fail(const std::string& path) {
    LoadedConfig cfg = load_or_fail(path);
    std::vector<ValidationError> errs = validate_all(cfg);
    if (!errs.empty()) {
        std::string msg = "invalid config:";
        for (const auto& e : errs) msg += "\n  [" + e.code + "] " + e.message;
        throw CliFailure{kExitInvalid, msg};
    }
    return cfg;
}

void write_output(const std::string& text, const std::string& out_path, std::ostream& out) {
    if (out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw CliFailure{kExitIo, "cannot open output file: " + out_path};
    f << text;
}

std::string sci(const Real50& x) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(15) << x;
    return os.str();
}

int cmd_validate(const std::string& config_path, std::ostream& out) {
    LoadedConfig cfg = load_or_fail(config_path);
    std::vector<ValidationError> errs = validate_all(cfg);
    out << "{\n  \"schema_version\": " << kSchemaVersion << ",\n  \"status\": \""
        << (errs.empty() ? "ok" : "invalid") << "\",\n  \"errors\": [";
    for (std::size_t i = 0; i < errs.size(); ++i) {
        out << (i ? "," : "") << "\n    {\"code\": \"" << errs[i].code << "\", \"message\": \""
            << errs[i].message << "\"}";
    }
    out << (errs.empty() ? "]" : "\n  ]") << "\n}\n";
    return errs.empty() ? kExitOk : kExitInvalid;
}

int cmd_expand(const std::string& config_path, int order, int l_tail, const std::string& out_path,
               std::ostream& out) {
    LoadedConfig cfg = load_valid_or_fail(config_path);
    ExpansionResult result = assemble_trace(cfg.hybrid, cfg.bc, order);
    write_output(expansion_to_json(result, l_tail), out_path, out);
    return kExitOk;
}

int cmd_invert(const std::string& coeffs_path, const std::string& heat_path,
               const std::string& out_path, std::ostream& out) {
    std::ifstream f(coeffs_path, std::ios::binary);
    if (!f) throw CliFailure{kExitIo, "cannot open coefficients file: " + coeffs_path};
    std::ostringstream buf;
    buf << f.rdbuf();
    ExpansionResult series;
    try {
        series = expansion_from_json(buf.str());
    } catch (const ParseError& e) {
        throw CliFailure{kExitIo, e.what()};
    }
    LoadedConfig heat = load_or_fail(heat_path);
    InverseReport report = invert(series.series, heat.hybrid);
    write_output(inverse_report_to_json(report), out_path, out);
    return kExitOk;
}

int cmd_roundtrip(const std::string& config_path, int order, std::ostream& out) {
    LoadedConfig cfg = load_valid_or_fail(config_path);
    ExpansionResult fwd = assemble_trace(cfg.hybrid, cfg.bc, order);

    bool all_pass = true;
    auto line = [&](const std::string& stage, bool pass, const std::string& note) {
        all_pass = all_pass && pass;
        out << stage << ": " << (pass ? "pass" : "FAIL");
        if (!note.empty()) out << " (" << note << ")";
        out << "\n";
    };

    // Serialization must round trip bit-exactly.
    ExpansionResult back = expansion_from_json(expansion_to_json(fwd));
    line("serialization", back.series == fwd.series && back.sum_vol == fwd.sum_vol &&
                              back.sum_len == fwd.sum_len,
         "bit-exact");

    InverseReport rep = invert(back.series, cfg.hybrid);
    line("geometry", rep.sum_vol == fwd.sum_vol && rep.sum_len == fwd.sum_len &&
                         rep.n_segments == cfg.hybrid.n() && rep.sum_euler == fwd.sum_euler,
         "exact");

    if (cfg.hybrid.N() == 0) {
        out << "lambda stages: skipped (no segment endpoints)\n";
        out << "roundtrip: " << (all_pass ? "pass" : "FAIL") << "\n";
        return all_pass ? kExitOk : kExitNumeric;
    }

    // Reference lambdas from the boundary blocks (B = identity family).
    bool diag_family =
        std::all_of(cfg.bc.blocks.begin(), cfg.bc.blocks.end(),
                    [](const BCBlock& b) { return b.B == Mat2::identity(); });
    if (!diag_family) {
        out << "lambda stages: skipped (boundary is not in the diagonal lambda family)\n";
        out << "roundtrip: " << (all_pass ? "pass" : "FAIL") << "\n";
        return all_pass ? kExitOk : kExitNumeric;
    }

    struct Ref {
        Real50 seg, off, top;
    };
    std::vector<Ref> refs;
    for (const BCBlock& b : cfg.bc.blocks) {
        Complex50 off = eval_gq(b.A.b);
        refs.push_back({eval_gq(b.A.d).re, abs(off), eval_gq(b.A.a).re});
    }
    std::sort(refs.begin(), refs.end(), [](const Ref& a, const Ref& b) { return a.seg < b.seg; });

    auto stage_err = [&](const std::vector<Real50>& got, auto pick) {
        Real50 worst(0);
        for (std::size_t i = 0; i < refs.size(); ++i) {
            Real50 ref = pick(refs[i]);
            Real50 d = abs(Complex50{got[i] - ref});
            Real50 scale = (std::max)(Real50(1), abs(Complex50{ref}));
            worst = (std::max)(worst, Real50(d / scale));
        }
        return worst;
    };
    Real50 tol("1e-6");
    Real50 e1 = stage_err(rep.lambda_seg, [](const Ref& r) { return r.seg; });
    line("lambda_seg", e1 < tol, "max rel err " + sci(e1));
    Real50 e2 = stage_err(rep.lambda_off_abs, [](const Ref& r) { return r.off; });
    line("lambda_off", e2 < tol, "max rel err " + sci(e2));
    Real50 e3 = stage_err(rep.lambda_top, [](const Ref& r) { return r.top; });
    line("lambda_top", e3 < tol, "max rel err " + sci(e3));

    out << "roundtrip: " << (all_pass ? "pass" : "FAIL") << "\n";
    return all_pass ? kExitOk : kExitNumeric;
}

int cmd_oracle(const std::string& config_path, int order, const std::vector<double>& z_list,
               std::ostream& out) {
    LoadedConfig cfg = load_valid_or_fail(config_path);
    ExpansionResult result = assemble_trace(cfg.hybrid, cfg.bc, order);
    out << "z  series  oracle  abs_difference\n";
    for (double zd : z_list) {
        if (zd < 10) throw CliFailure{kExitInvalid, "oracle requires z >= 10"};
        Real50 z(zd);
        Real50 series = ps_eval(result.series, z).re;
        Real50 oracle = eval_thexpan(cfg.hybrid, cfg.bc, z, order + 2);
        out << zd << "  " << sci(series) << "  " << sci(oracle) << "  "
            << sci(abs(Complex50{series - oracle})) << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Pseudoasymptotic trace expansion toolkit for hybrid manifolds"};
    app.require_subcommand(1);

    std::string config_path, coeffs_path, heat_path, out_path;
    int order = 12;
    int l_tail = -1;
    std::vector<double> z_list = {50, 100};

    CLI::App* validate_cmd = app.add_subcommand("validate", "Check a config file");
    validate_cmd->add_option("config", config_path, "config file path")->required();

    CLI::App* expand_cmd = app.add_subcommand("expand", "Compute the trace expansion");
    expand_cmd->add_option("config", config_path, "config file path")->required();
    expand_cmd->add_option("--order", order, "truncation order in 1/z (default 12)");
    expand_cmd->add_option("--l-tail", l_tail, "attach 1/L tails of this order");
    expand_cmd->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* invert_cmd = app.add_subcommand("invert", "Recover data from an expansion file");
    invert_cmd->add_option("coeffs", coeffs_path, "serialized expansion file")->required();
    invert_cmd->add_option("--heat", heat_path, "config supplying the known heat data")
        ->required();
    invert_cmd->add_option("--out", out_path, "output file (default stdout)");

    CLI::App* roundtrip_cmd = app.add_subcommand("roundtrip", "Forward-then-inverse self check");
    roundtrip_cmd->add_option("config", config_path, "config file path")->required();
    roundtrip_cmd->add_option("--order", order, "truncation order in 1/z (default 12)");

    CLI::App* oracle_cmd = app.add_subcommand("oracle", "Series vs numeric oracle table");
    oracle_cmd->add_option("config", config_path, "config file path")->required();
    oracle_cmd->add_option("--order", order, "truncation order in 1/z (default 12)");
    oracle_cmd->add_option("--z", z_list, "evaluation points (default 50,100)")->delimiter(',');

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        err << (e.get_exit_code() == 0 ? "" : "error: ") << e.what() << "\n";
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        return kExitIo;
    }

    try {
        if (validate_cmd->parsed()) return cmd_validate(config_path, out);
        if (expand_cmd->parsed()) return cmd_expand(config_path, order, l_tail, out_path, out);
        if (invert_cmd->parsed()) return cmd_invert(coeffs_path, heat_path, out_path, out);
        if (roundtrip_cmd->parsed()) return cmd_roundtrip(config_path, order, out);
        if (oracle_cmd->parsed()) return cmd_oracle(config_path, order, z_list, out);
    } catch (const CliFailure& e) {
        err << "error: " << e.message << "\n";
        return e.code;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const MalformedSeries& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::domain_error& e) {
        // RepeatedRoots / ResidualTooLarge / IllConditioned / NegativeSquare /
        // CutoffTooSmall and other numeric domain failures.
        err << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    err << "error: no subcommand\n";
    return kExitIo;
}

}  // namespace hybrid
