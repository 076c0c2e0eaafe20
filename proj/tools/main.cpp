#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "ffgrowth/field.hpp"
#include "ffgrowth/harness.hpp"
#include "ffgrowth/rng.hpp"

namespace {

using namespace ffgrowth;

u64 parse_seed(const std::string& s) {
    u128 v = parse_decimal_u128(s);
    if (v > ~u64(0)) throw std::invalid_argument("seed out of range");
    return static_cast<u64>(v);
}

std::string output_name(const ExperimentConfig& cfg, const std::string& fmt) {
    return experiment_name(cfg.experiment) + "_" + family_name(cfg.family) +
           "_p" + std::to_string(cfg.p) + "_n" + std::to_string(cfg.n) + "_s" +
           std::to_string(cfg.seed) + "." + fmt;
}

void write_or_print(const std::string& payload, const std::string& out_dir,
                    const std::string& name) {
    if (out_dir.empty()) {
        std::cout << payload;
        return;
    }
    std::filesystem::create_directories(out_dir);
    std::filesystem::path path = std::filesystem::path(out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << payload;
    std::cout << "wrote " << path.string() << "\n";
}

int cmd_run(const std::string& config_path, const std::string& seed_str,
            const std::string& out_dir, const std::string& format) {
    ExperimentConfig cfg = load_config_file(config_path);
    if (!seed_str.empty()) cfg.seed = parse_seed(seed_str);
    RunResult res = run_experiment(cfg);
    std::string payload = format == "json" ? to_json(res) : to_csv(res);
    write_or_print(payload, out_dir, output_name(cfg, format));
    if (res.cert_failures > 0) {
        std::cerr << res.cert_failures << " row(s) with failing certificates\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const std::string& config_path, const std::string& seed_str) {
    ExperimentConfig cfg = load_config_file(config_path);
    if (!seed_str.empty()) cfg.seed = parse_seed(seed_str);
    VerifySummary sum = verify_suite(cfg);
    std::cout << "checks=" << sum.checks_run << " failures=" << sum.failures
              << " skipped=" << sum.skipped << "\n";
    for (const auto& d : sum.failure_details) std::cout << "FAIL " << d << "\n";
    return sum.failures > 0 ? 1 : 0;
}

int cmd_gen(const std::string& config_path, const std::string& seed_str,
            const std::string& out_dir, const std::string& format) {
    ExperimentConfig cfg = load_config_file(config_path);
    if (!seed_str.empty()) cfg.seed = parse_seed(seed_str);
    FieldCtx ctx = FieldCtx::make(cfg.p, cfg.n);

    // Emits exactly the set the first trial of `run` would use.
    SplitMix64 rng(trial_seed(cfg.seed, 0, 0));
    FSet A = generate_set(cfg.family, cfg.sizes.at(0), rng.next(), ctx,
                          cfg.exclude_zero);

    std::string payload;
    if (format == "json") {
        payload = "{\n  \"schema\": \"ffgrowth/1\",\n  \"p\": \"" +
                  std::to_string(cfg.p) + "\",\n  \"n\": \"" +
                  std::to_string(cfg.n) + "\",\n  \"family\": \"" +
                  family_name(cfg.family) + "\",\n  \"set\": [";
        for (size_t i = 0; i < A.elements().size(); ++i) {
            if (i) payload += ", ";
            payload += "\"" + std::to_string(A.elements()[i]) + "\"";
        }
        payload += "]\n}\n";
    } else {
        payload = "element\n";
        for (Elem e : A) payload += std::to_string(e) + "\n";
    }
    write_or_print(payload, out_dir,
                   "set_" + family_name(cfg.family) + "_p" +
                       std::to_string(cfg.p) + "_n" + std::to_string(cfg.n) +
                       "_s" + std::to_string(cfg.seed) + "." + format);
    return 0;
}

int cmd_field_info(u64 p, unsigned n) {
    FieldCtx ctx = FieldCtx::make(p, n);
    std::cout << "p = " << ctx.p() << "\n"
              << "n = " << ctx.n() << "\n"
              << "q = " << ctx.q() << "\n"
              << "modulus = " << ctx.modulus_str() << "\n"
              << "primitive_root = " << primitive_root(ctx) << "\n";
    std::cout << "subfields:";
    for (const auto& sd : list_subfields(ctx)) {
        std::cout << " degree " << sd.degree << " (size " << sd.size << ")";
    }
    std::cout << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact growth experiments in matrix groups over finite fields"};
    app.require_subcommand(1);

    std::string config_path, seed_str, out_dir, format = "csv";

    auto add_io = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("--config", config_path, "JSON config file")
            ->required();
        cmd->add_option("--seed", seed_str, "override the config seed");
        if (with_out) {
            cmd->add_option("--out", out_dir,
                            "output directory (default: stdout)");
            cmd->add_option("--format", format, "csv or json")
                ->check(CLI::IsMember({"csv", "json"}));
        }
    };

    CLI::App* run = app.add_subcommand("run", "run the configured experiment");
    add_io(run, true);
    CLI::App* verify =
        app.add_subcommand("verify", "run the certificate suite");
    add_io(verify, false);
    CLI::App* gen = app.add_subcommand("gen", "emit one generated set");
    add_io(gen, true);

    u64 fi_p = 0;
    unsigned fi_n = 1;
    CLI::App* finfo = app.add_subcommand("field-info", "describe a field");
    finfo->add_option("--p", fi_p, "characteristic")->required();
    finfo->add_option("--n", fi_n, "extension degree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // help is success, anything else is usage
    }

    try {
        if (run->parsed()) return cmd_run(config_path, seed_str, out_dir, format);
        if (verify->parsed()) return cmd_verify(config_path, seed_str);
        if (gen->parsed()) return cmd_gen(config_path, seed_str, out_dir, format);
        if (finfo->parsed()) return cmd_field_info(fi_p, fi_n);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
