#include "uff/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <thread>

#include "uff/acceptance.hpp"
#include "uff/frame_function.hpp"
#include "uff/json_io.hpp"
#include "uff/operator_frame.hpp"
#include "uff/reconstruct.hpp"
#include "uff/sampling.hpp"
#include "uff/uob.hpp"

namespace uff::cli {

namespace {

struct RunConfig {
    std::string command;
    std::uint64_t seed = 1;
    bool seed_given = false;
    int n = 0;
    int k = 0;
    int d = 1;
    bool k_given = false;
    bool d_given = false;
    int trials = 100;
    int samples = 25;
    double tolerance = 1e-9;
    int jobs = 1;
    std::string generator = "split";
    std::string kind = "prf";
    double c = 1.0;
    bool positive = false;
    std::vector<int> dims;
    std::vector<int> tail_dims;
    std::string family_path;
    std::string state_path;
    std::string input_path;
    std::string out_path;
    std::string tree_out_path;
};

// Everything that determines the run goes into the echo; --jobs stays out
// so reports are identical for any worker count.
Json config_echo(const RunConfig& cfg) {
    Json j{{"command", cfg.command}, {"seed", cfg.seed}, {"tolerance", cfg.tolerance}};
    if (cfg.n > 0) j["n"] = cfg.n;
    if (cfg.command.rfind("general", 0) == 0 || cfg.command == "reconstruct") {
        j["k"] = cfg.k;
        j["d"] = cfg.d;
    }
    if (!cfg.family_path.empty()) j["family"] = cfg.family_path;
    if (!cfg.state_path.empty()) j["state"] = cfg.state_path;
    if (!cfg.input_path.empty()) j["input"] = cfg.input_path;
    return j;
}

void emit(std::ostream& out, const std::string& line) {
    out << line << "\n";
}

// A family file may be bare or wrapped in a recovery report.
Json unwrap_family(Json j) {
    if (j.is_object() && j.contains("family") && !j.contains("families")) {
        return j["family"];
    }
    return j;
}

PhiFamily load_phi_family(const std::string& path) {
    return decode_phi_family(unwrap_family(load_json_file(path)), path);
}

OperatorPhiFamily load_operator_family(const std::string& path) {
    return decode_operator_phi_family(unwrap_family(load_json_file(path)), path);
}

// Deterministic fan-out: work item i always uses the same derived seed,
// so the reduced result does not depend on the worker count.
void parallel_for(int jobs, std::size_t count, const std::function<void(std::size_t)>& body) {
    if (jobs <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> workers;
    const int worker_count = std::min<int>(jobs, static_cast<int>(count));
    workers.reserve(static_cast<std::size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w) {
        workers.emplace_back([&] {
            while (true) {
                const std::size_t i = cursor.fetch_add(1);
                if (i >= count) return;
                body(i);
            }
        });
    }
    for (std::thread& t : workers) t.join();
}

std::vector<std::string> generator_list(const std::string& requested) {
    if (requested == "all") return {"product", "generic", "split"};
    if (requested == "product" || requested == "generic" || requested == "split") {
        return {requested};
    }
    throw InputError("--generator must be product, generic, split or all");
}

Uob make_uob(const std::string& generator, int n, const std::vector<int>& tail_dims,
             Rng& rng) {
    if (generator == "product") {
        std::vector<int> dims(static_cast<std::size_t>(n), 2);
        for (int t : tail_dims) dims.push_back(t);
        return generate_product_basis(dims, rng);
    }
    if (generator == "generic") return expand_tree(generate_generic(n, rng));
    return expand_tree(generate_split(n, tail_dims, rng));
}

int cmd_uob_gen(const RunConfig& cfg, std::ostream& out) {
    if (cfg.out_path.empty()) throw InputError("uob gen: --out is required");
    Rng rng(cfg.seed);
    Uob uob;
    SplitTree tree;
    bool have_tree = false;
    if (cfg.generator == "product") {
        if (cfg.dims.empty()) {
            std::vector<int> dims(static_cast<std::size_t>(cfg.n), 2);
            uob = generate_product_basis(dims, rng);
        } else {
            uob = generate_product_basis(cfg.dims, rng);
        }
    } else {
        if (cfg.n < 1) throw InputError("uob gen: --n must be at least 1");
        tree = cfg.generator == "generic" ? generate_generic(cfg.n, rng)
                                          : generate_split(cfg.n, cfg.tail_dims, rng);
        have_tree = true;
        uob = expand_tree(tree);
    }
    write_json_file(cfg.out_path, encode(uob));
    if (!cfg.tree_out_path.empty()) {
        if (!have_tree) throw InputError("uob gen: --tree-out needs a tree generator");
        write_json_file(cfg.tree_out_path, encode(tree));
    }
    emit(out, "wrote " + std::to_string(uob.states.size()) + " states to " + cfg.out_path);
    return kExitPass;
}

int cmd_uob_validate(const RunConfig& cfg, std::ostream& out) {
    const Uob uob = decode_uob(load_json_file(cfg.input_path), cfg.input_path);
    const UobValidationReport report = validate_uob(uob, cfg.tolerance);
    Json j{{"format", 1},
           {"config", config_echo(cfg)},
           {"expected_count", report.expected_count},
           {"actual_count", report.actual_count},
           {"count_ok", report.count_ok},
           {"norm_residuals", report.norm_residuals},
           {"max_norm_residual", report.max_norm_residual},
           {"max_off_diagonal", report.max_off_diagonal},
           {"orthogonal", report.orthogonal},
           {"tolerance", report.tolerance},
           {"pass", report.pass}};
    if (!cfg.out_path.empty()) write_json_file(cfg.out_path, j);
    emit(out, std::string(report.pass ? "pass" : "FAIL") + ": " +
                  std::to_string(report.actual_count) + "/" +
                  std::to_string(report.expected_count) + " states, max off-diagonal " +
                  std::to_string(report.max_off_diagonal));
    return report.pass ? kExitPass : kExitVerificationFailed;
}

int cmd_frame_gen_family(const RunConfig& cfg, std::ostream& out) {
    if (cfg.out_path.empty()) throw InputError("frame gen-family: --out is required");
    if (cfg.n < 1) throw InputError("frame gen-family: --n must be at least 1");
    PhiFamily family = [&] {
        if (cfg.kind == "prf") return PhiFamily::prf(cfg.n, cfg.seed, cfg.c);
        if (cfg.kind == "uniform") return PhiFamily::uniform(cfg.n);
        if (cfg.kind == "poly") {
            return PhiFamily::polynomial(cfg.n, PolynomialParams{0.25, 0.125, -0.125, 0.5},
                                         cfg.c);
        }
        throw InputError("frame gen-family: --kind must be prf, uniform or poly");
    }();
    write_json_file(cfg.out_path, encode(family));
    emit(out, "wrote " + cfg.kind + " family (n = " + std::to_string(cfg.n) + ") to " +
                  cfg.out_path);
    return kExitPass;
}

int cmd_frame_eval(const RunConfig& cfg, std::ostream& out) {
    const FrameFunction ff(load_phi_family(cfg.family_path));
    const ProductState state =
        decode_product_state(load_json_file(cfg.state_path), cfg.state_path);
    const double value = ff.evaluate(state);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    emit(out, buf);
    if (!cfg.out_path.empty()) {
        write_json_file(cfg.out_path,
                        Json{{"format", 1}, {"config", config_echo(cfg)}, {"value", value}});
    }
    return kExitPass;
}

int cmd_frame_verify(RunConfig cfg, std::ostream& out) {
    if (cfg.n < 1) throw InputError("frame verify: --n must be at least 1");
    const PhiFamily family = cfg.family_path.empty()
                                 ? PhiFamily::prf(cfg.n, derive_seed(cfg.seed, {10}), 1.0)
                                 : load_phi_family(cfg.family_path);
    if (family.n() != cfg.n) {
        throw InputError("frame verify: --n does not match the family arity");
    }
    const FrameFunction ff(family);
    const std::vector<std::string> generators = generator_list(cfg.generator);

    const std::size_t total = generators.size() * static_cast<std::size_t>(cfg.trials);
    std::vector<double> residuals(total, 0.0);
    std::atomic<bool> all_valid{true};
    std::mutex error_mutex;
    std::string first_error;
    parallel_for(cfg.jobs, total, [&](std::size_t i) {
        try {
            const std::size_t g = i / static_cast<std::size_t>(cfg.trials);
            const std::size_t t = i % static_cast<std::size_t>(cfg.trials);
            Rng rng(derive_seed(cfg.seed, {11, g, t}));
            const Uob uob = make_uob(generators[g], cfg.n, {}, rng);
            if (!validate_uob(uob, cfg.tolerance).pass) all_valid = false;
            double sum = 0.0;
            for (const ProductState& s : uob.states) sum += ff.evaluate(s);
            residuals[i] = std::abs(sum - ff.c());
        } catch (const Error& e) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (first_error.empty()) first_error = e.what();
        }
    });
    if (!first_error.empty()) throw InputError("frame verify: " + first_error);
    double max_residual = 0.0;
    for (double r : residuals) max_residual = std::max(max_residual, r);
    const bool pass = all_valid.load() && max_residual <= cfg.tolerance;

    Json j{{"format", 1},
           {"config", config_echo(cfg)},
           {"n", cfg.n},
           {"trials", cfg.trials},
           {"generator", cfg.generator},
           {"max_abs_residual", max_residual},
           {"c", ff.c()},
           {"tolerance", cfg.tolerance},
           {"pass", pass}};
    if (!cfg.out_path.empty()) write_json_file(cfg.out_path, j);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "max |sum - c| = %.3e over %zu bases (%s)", max_residual,
                  total, pass ? "pass" : "FAIL");
    emit(out, buf);
    return pass ? kExitPass : kExitVerificationFailed;
}

int cmd_frame_scan(const RunConfig& cfg, std::ostream& out) {
    const FrameFunction ff(load_phi_family(cfg.family_path));
    Rng rng(cfg.seed);
    const NonnegReport report = scan_nonneg(ff, static_cast<std::size_t>(cfg.trials), rng);
    Json j{{"format", 1},
           {"config", config_echo(cfg)},
           {"trials", report.trials},
           {"sampled", report.sampled},
           {"min_value", report.min_value},
           {"fraction_negative", report.fraction_negative},
           {"definition1_candidate", report.definition1_candidate}};
    if (report.argmin) j["argmin"] = encode(*report.argmin);
    if (!cfg.out_path.empty()) write_json_file(cfg.out_path, j);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "min value %.6g, %.2f%% negative, candidate=%s%s",
                  report.min_value, report.fraction_negative * 100.0,
                  report.definition1_candidate ? "yes" : "no",
                  report.sampled ? "" : " (unsampled)");
    emit(out, buf);
    return report.definition1_candidate ? kExitPass : kExitVerificationFailed;
}

int cmd_frame_recover(const RunConfig& cfg, std::ostream& out) {
    if (cfg.out_path.empty()) throw InputError("frame recover-phi: --out is required");
    const FrameFunction source(load_phi_family(cfg.family_path));
    const int n = source.n();
    if (cfg.n > 0 && cfg.n != n) {
        throw InputError("frame recover-phi: --n does not match the family arity");
    }
    Rng rng(cfg.seed);
    std::vector<ProductState> samples;
    samples.reserve(static_cast<std::size_t>(cfg.samples));
    for (int s = 0; s < cfg.samples; ++s) samples.push_back(random_canonical_state(rng, n));

    const FrameFunction recovered(recover_phi(
        [&](const ProductState& s) { return source.evaluate(s); }, n, samples));

    double max_residual = 0.0;
    for (const ProductState& z : samples) {
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            const ProductState state = apply_sigma_mask(z, SubsetMask(mask));
            max_residual = std::max(
                max_residual, std::abs(recovered.evaluate(state) - source.evaluate(state)));
        }
    }
    const bool pass = max_residual <= cfg.tolerance;
    write_json_file(cfg.out_path, Json{{"format", 1},
                                       {"config", config_echo(cfg)},
                                       {"round_trip_residual", max_residual},
                                       {"pass", pass},
                                       {"family", encode(recovered.family())}});
    char buf[120];
    std::snprintf(buf, sizeof(buf), "recovered %d-qubit family, round trip %.3e (%s)", n,
                  max_residual, pass ? "pass" : "FAIL");
    emit(out, buf);
    return pass ? kExitPass : kExitVerificationFailed;
}

int cmd_general_gen_family(const RunConfig& cfg, std::ostream& out) {
    if (cfg.out_path.empty()) throw InputError("general gen-family: --out is required");
    const OperatorPhiFamily family =
        OperatorPhiFamily::prf(cfg.k, cfg.d, cfg.seed, cfg.positive);
    write_json_file(cfg.out_path, encode(family));
    emit(out, "wrote operator family (k = " + std::to_string(cfg.k) +
                  ", d = " + std::to_string(cfg.d) + ") to " + cfg.out_path);
    return kExitPass;
}

int cmd_general_verify(RunConfig cfg, std::ostream& out) {
    const OperatorPhiFamily family =
        cfg.family_path.empty()
            ? OperatorPhiFamily::prf(cfg.k, cfg.d, derive_seed(cfg.seed, {20}), cfg.positive)
            : load_operator_family(cfg.family_path);
    if (!cfg.family_path.empty()) {
        if (cfg.k_given && cfg.k != family.qubit_count()) {
            throw InputError("general verify: --k does not match the family");
        }
        if (cfg.d_given && cfg.d != family.tail_dim()) {
            throw InputError("general verify: --d does not match the family");
        }
    }
    cfg.k = family.qubit_count();
    cfg.d = family.tail_dim();
    if (cfg.k < 1) throw InputError("general verify: k must be at least 1");

    const std::size_t total = static_cast<std::size_t>(cfg.trials);
    std::vector<double> residuals(total, 0.0);
    std::mutex error_mutex;
    std::string first_error;
    const std::vector<int> tail =
        family.tail_dim() == 1 ? std::vector<int>{} : std::vector<int>{family.tail_dim()};
    parallel_for(cfg.jobs, total, [&](std::size_t t) {
        try {
            Rng rng(derive_seed(cfg.seed, {21, t}));
            const Uob uob = expand_tree(generate_split(cfg.k, tail, rng));
            residuals[t] = verify_general(family, uob, cfg.tolerance).residual;
        } catch (const Error& e) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (first_error.empty()) first_error = e.what();
        }
    });
    if (!first_error.empty()) throw InputError("general verify: " + first_error);
    double max_residual = 0.0;
    for (double r : residuals) max_residual = std::max(max_residual, r);
    const bool pass = max_residual <= cfg.tolerance;

    Json j{{"format", 1},
           {"config", config_echo(cfg)},
           {"k", cfg.k},
           {"d", cfg.d},
           {"trials", cfg.trials},
           {"generator", "split"},
           {"max_abs_residual", max_residual},
           {"c", family.trace_at_omega()},
           {"tolerance", cfg.tolerance},
           {"pass", pass}};
    if (!cfg.out_path.empty()) write_json_file(cfg.out_path, j);
    char buf[160];
    std::snprintf(buf, sizeof(buf), "max |sum - tr phi(omega)| = %.3e over %zu bases (%s)",
                  max_residual, total, pass ? "pass" : "FAIL");
    emit(out, buf);
    return pass ? kExitPass : kExitVerificationFailed;
}

int cmd_reconstruct(RunConfig cfg, std::ostream& out) {
    if (cfg.out_path.empty()) throw InputError("reconstruct: --out is required");
    const OperatorPhiFamily source = load_operator_family(cfg.family_path);
    if (cfg.k_given && cfg.k != source.qubit_count()) {
        throw InputError("reconstruct: --k does not match the family");
    }
    if (cfg.d_given && cfg.d != source.tail_dim()) {
        throw InputError("reconstruct: --d does not match the family");
    }
    cfg.k = source.qubit_count();
    cfg.d = source.tail_dim();
    const GeneralOracle oracle = [&](const ProductState& z, const FactorState& u) {
        return evaluate_general(source, z, u);
    };
    Rng rng(cfg.seed);
    std::vector<ProductState> samples;
    if (cfg.k == 0) {
        samples.push_back(ProductState{});
    } else {
        samples.reserve(static_cast<std::size_t>(cfg.samples));
        for (int s = 0; s < cfg.samples; ++s) {
            samples.push_back(random_canonical_state(rng, cfg.k));
        }
    }
    const PhiReconstruction recon = reconstruct_phi_operators(oracle, cfg.k, cfg.d, samples);
    const bool pass = recon.max_roundtrip_residual <= cfg.tolerance;
    write_json_file(cfg.out_path,
                    Json{{"format", 1},
                         {"config", config_echo(cfg)},
                         {"round_trip_residual", recon.max_roundtrip_residual},
                         {"max_form_residual", recon.max_form_residual},
                         {"pass", pass},
                         {"family", encode(recon.family)}});
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "reconstructed k=%d d=%d family from %zu samples, round trip %.3e (%s)",
                  cfg.k, cfg.d, samples.size(), recon.max_roundtrip_residual,
                  pass ? "pass" : "FAIL");
    emit(out, buf);
    return pass ? kExitPass : kExitVerificationFailed;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
    const AcceptanceReport report = run_full_acceptance(cfg.seed);
    print_report(report, out);
    if (!cfg.out_path.empty()) {
        write_json_file(cfg.out_path, report_to_json(report));
    }
    return report.all_pass() ? kExitPass : kExitVerificationFailed;
}

} // namespace

std::uint64_t resolve_seed(bool seed_given, std::uint64_t seed_flag) {
    if (seed_given) return seed_flag;
    if (const char* env = std::getenv("UFF_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || (end != nullptr && *end != '\0')) {
            throw InputError("UFF_SEED: not an unsigned integer");
        }
        return static_cast<std::uint64_t>(v);
    }
    return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"unentangled frame function toolkit"};
    app.name("uff");

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--seed", cfg.seed, "seed for all randomness")
            ->each([&](const std::string&) { cfg.seed_given = true; });
        cmd->add_option("--tolerance", cfg.tolerance, "numeric tolerance");
        cmd->add_option("--out", cfg.out_path, "output file (JSON)");
    };

    CLI::App* uob_cmd = app.add_subcommand("uob", "generate and validate bases");
    uob_cmd->require_subcommand(1);
    CLI::App* uob_gen = uob_cmd->add_subcommand("gen", "generate a basis");
    uob_gen->add_option("--n", cfg.n, "qubit count");
    uob_gen->add_option("--dims", cfg.dims, "full signature (product generator)")
        ->delimiter(',');
    uob_gen->add_option("--tail-dims", cfg.tail_dims, "tail dimensions (split generator)")
        ->delimiter(',');
    uob_gen->add_option("--generator", cfg.generator, "product | generic | split");
    uob_gen->add_option("--tree-out", cfg.tree_out_path, "also write the split tree");
    add_common(uob_gen);
    uob_gen->callback([&] { cfg.command = "uob gen"; });

    CLI::App* uob_validate = uob_cmd->add_subcommand("validate", "validate a basis file");
    uob_validate->add_option("input", cfg.input_path, "basis file")->required();
    add_common(uob_validate);
    uob_validate->callback([&] { cfg.command = "uob validate"; });

    CLI::App* frame_cmd = app.add_subcommand("frame", "scalar frame functions");
    frame_cmd->require_subcommand(1);
    CLI::App* frame_gen = frame_cmd->add_subcommand("gen-family", "write a phi family file");
    frame_gen->add_option("--n", cfg.n, "qubit count");
    frame_gen->add_option("--kind", cfg.kind, "prf | uniform | poly");
    frame_gen->add_option("--c", cfg.c, "value of the full-set constant");
    add_common(frame_gen);
    frame_gen->callback([&] { cfg.command = "frame gen-family"; });

    CLI::App* frame_eval = frame_cmd->add_subcommand("eval", "evaluate at a state");
    frame_eval->add_option("--family", cfg.family_path, "phi family file")->required();
    frame_eval->add_option("--state", cfg.state_path, "product state file")->required();
    add_common(frame_eval);
    frame_eval->callback([&] { cfg.command = "frame eval"; });

    CLI::App* frame_verify = frame_cmd->add_subcommand("verify", "sum over generated bases");
    frame_verify->add_option("--family", cfg.family_path, "phi family file (seeded prf if absent)");
    frame_verify->add_option("--n", cfg.n, "qubit count");
    frame_verify->add_option("--trials", cfg.trials, "bases per generator");
    frame_verify->add_option("--generator", cfg.generator, "product | generic | split | all");
    frame_verify->add_option("--jobs", cfg.jobs, "worker threads");
    add_common(frame_verify);
    frame_verify->callback([&] {
        cfg.command = "frame verify";
        if (frame_verify->count("--generator") == 0) cfg.generator = "all";
    });

    CLI::App* frame_scan = frame_cmd->add_subcommand("scan-nonneg", "scan for negative values");
    frame_scan->add_option("--family", cfg.family_path, "phi family file")->required();
    frame_scan->add_option("--trials", cfg.trials, "sample count");
    add_common(frame_scan);
    frame_scan->callback([&] { cfg.command = "frame scan-nonneg"; });

    CLI::App* frame_recover = frame_cmd->add_subcommand("recover-phi", "rebuild phi data");
    frame_recover->add_option("--family", cfg.family_path, "oracle family file")->required();
    frame_recover->add_option("--n", cfg.n, "qubit count (must match the family)");
    frame_recover->add_option("--samples", cfg.samples, "canonical sample count");
    add_common(frame_recover);
    frame_recover->callback([&] { cfg.command = "frame recover-phi"; });

    CLI::App* general_cmd = app.add_subcommand("general", "operator-valued frame functions");
    general_cmd->require_subcommand(1);
    CLI::App* general_gen =
        general_cmd->add_subcommand("gen-family", "write an operator family file");
    general_gen->add_option("--k", cfg.k, "qubit count");
    general_gen->add_option("--d", cfg.d, "tail dimension (not 2)");
    general_gen->add_flag("--positive", cfg.positive, "positive semidefinite operators");
    add_common(general_gen);
    general_gen->callback([&] { cfg.command = "general gen-family"; });

    CLI::App* general_verify = general_cmd->add_subcommand("verify", "sum over mixed bases");
    general_verify->add_option("--family", cfg.family_path,
                               "operator family file (seeded prf if absent)");
    general_verify->add_option("--k", cfg.k, "qubit count");
    general_verify->add_option("--d", cfg.d, "tail dimension (not 2)");
    general_verify->add_option("--trials", cfg.trials, "bases to test");
    general_verify->add_option("--jobs", cfg.jobs, "worker threads");
    general_verify->add_flag("--positive", cfg.positive, "positive prf operators");
    add_common(general_verify);
    general_verify->callback([&] {
        cfg.command = "general verify";
        cfg.k_given = general_verify->count("--k") > 0;
        cfg.d_given = general_verify->count("--d") > 0;
    });

    CLI::App* reconstruct_cmd =
        app.add_subcommand("reconstruct", "recover operator data from a black box");
    reconstruct_cmd->add_option("--family", cfg.family_path, "oracle family file")->required();
    reconstruct_cmd->add_option("--k", cfg.k, "qubit count (must match the family)");
    reconstruct_cmd->add_option("--d", cfg.d, "tail dimension (must match the family)");
    reconstruct_cmd->add_option("--samples", cfg.samples, "canonical sample count");
    add_common(reconstruct_cmd);
    reconstruct_cmd->callback([&] {
        cfg.command = "reconstruct";
        cfg.k_given = reconstruct_cmd->count("--k") > 0;
        cfg.d_given = reconstruct_cmd->count("--d") > 0;
        // round-trip contract is 1e-8 unless the caller says otherwise
        if (reconstruct_cmd->count("--tolerance") == 0) cfg.tolerance = 1e-8;
    });

    CLI::App* selftest = app.add_subcommand("selftest", "run the acceptance suite");
    add_common(selftest);
    selftest->callback([&] { cfg.command = "selftest"; });

    app.require_subcommand(1);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitInputError;
    }

    try {
        cfg.seed = resolve_seed(cfg.seed_given, cfg.seed);
        if (cfg.command == "uob gen") return cmd_uob_gen(cfg, out);
        if (cfg.command == "uob validate") return cmd_uob_validate(cfg, out);
        if (cfg.command == "frame gen-family") return cmd_frame_gen_family(cfg, out);
        if (cfg.command == "frame eval") return cmd_frame_eval(cfg, out);
        if (cfg.command == "frame verify") return cmd_frame_verify(cfg, out);
        if (cfg.command == "frame scan-nonneg") return cmd_frame_scan(cfg, out);
        if (cfg.command == "frame recover-phi") return cmd_frame_recover(cfg, out);
        if (cfg.command == "general gen-family") return cmd_general_gen_family(cfg, out);
        if (cfg.command == "general verify") return cmd_general_verify(cfg, out);
        if (cfg.command == "reconstruct") return cmd_reconstruct(cfg, out);
        if (cfg.command == "selftest") return cmd_selftest(cfg, out);
        err << "uff: no subcommand selected\n";
        return kExitInputError;
    } catch (const Error& e) {
        err << "uff: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        err << "uff: unexpected error: " << e.what() << "\n";
        return kExitInputError;
    }
}

} // namespace uff::cli
