// Command-line front end. All math goes through the C API; this file only
// handles flags, file IO and exit-code mapping (0 pass, 1 check failure,
// 2 unusable configuration or data).
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cmperiods/cmperiods.h"
#include "json.hpp"

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::string format;
    unsigned precision = 0;
};

int run_command(const std::string& command, const Options& opt) {
    std::ifstream in(opt.config_path);
    if (!in) {
        std::cerr << "error: cannot read config file \"" << opt.config_path << "\"\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    nlohmann::json cfg = nlohmann::json::parse(buf.str(), nullptr, /*allow_exceptions=*/false);
    if (cfg.is_discarded() || !cfg.is_object()) {
        std::cerr << "error: config file is not a JSON object\n";
        return 2;
    }
    cfg["command"] = command;
    if (opt.precision != 0) cfg["precision"] = opt.precision;
    if (!opt.format.empty()) cfg["output"]["format"] = opt.format;

    std::string out_path = opt.out_path;
    if (out_path.empty() && cfg.contains("output") && cfg["output"].is_object())
        out_path = cfg["output"].value("path", std::string());

    cmp_session* session = cmp_session_create(0);
    if (!session) {
        std::cerr << "error: could not create session\n";
        return 2;
    }
    char* report = nullptr;
    cmp_status st = cmp_run(session, cfg.dump().c_str(), &report);
    int rc = 2;
    if (st == CMP_OK || st == CMP_CHECK_FAILED) {
        if (out_path.empty()) {
            std::cout << report;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write report to \"" << out_path << "\"\n";
                cmp_string_free(report);
                cmp_session_destroy(session);
                return 2;
            }
            out << report;
        }
        rc = (st == CMP_OK) ? 0 : 1;
    } else {
        std::cerr << "error: " << cmp_session_last_error(session) << "\n";
    }
    cmp_string_free(report);
    cmp_session_destroy(session);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact and certified-precision toolkit for hypergeometric period and "
                 "regulator identities"};
    app.set_version_flag("--version", cmp_version());
    app.require_subcommand(1);

    Options opt;
    const struct {
        const char* name;
        const char* help;
    } commands[] = {
        {"validate", "check the exponent data and character index constraints"},
        {"period", "Gamma-product period, Hodge type and duality check"},
        {"regulator", "regulator decomposition with nonvanishing certificate"},
        {"orbit", "Galois orbit of the twisted exponent data"},
        {"monodromy", "symbolic local system plus ODE transport cross-check"},
        {"verify", "full residual battery for the configured data"},
    };
    for (const auto& c : commands) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        sub->add_option("--config", opt.config_path, "JSON run configuration file")
            ->required();
        sub->add_option("--precision", opt.precision,
                        "working precision in bits (overrides the config)");
        sub->add_option("--out", opt.out_path, "write the report to this file");
        sub->add_option("--format", opt.format, "report format")
            ->check(CLI::IsMember({"json", "csv"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    return run_command(app.get_subcommands().front()->get_name(), opt);
}
