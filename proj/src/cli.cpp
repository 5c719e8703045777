#include "bhtv/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bhtv/error.hpp"
#include "bhtv/forward.hpp"
#include "bhtv/imgio.hpp"
#include "bhtv/quality.hpp"
#include "bhtv/solver.hpp"
#include "bhtv/synth.hpp"

namespace bhtv::cli {
namespace {

// Inpainting weights are tiny and the system is nearly singular inside the
// gap; four CG steps per outer iteration leave the gap almost untouched.
constexpr int kInpaintCgIters = 100;

struct SolverFlags {
    double alpha = 0.0;
    double beta = 0.0;
    double lambda = 1.0;
    int iters = 300;
    double tol = 1e-4;
    std::optional<int> cg_iters;
    double cg_tol = 1e-4;
    std::string fidelity = "l2";
    std::string reg = "iso";
    std::string splitting = "standard";
    std::uint64_t seed = 0;
    std::string input;
    std::string output;
    std::string trace;
    bool ascii = false;
};

struct Flags {
    SolverFlags solver;
    double sigma = 1.0;
    std::optional<int> radius;
    std::string mask;
    std::string ref;
    std::string test;
    std::string shape = "geometric";
    int width = 300;
    int height = 200;
    std::string noise = "none";
    double gap = 0.3;
    std::optional<int> row;
    std::string alpha_grid;
    std::string beta_grid;
};

std::string format(const char* fmt, double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    return buf;
}

void add_solver_flags(CLI::App* cmd, SolverFlags& f, bool needs_output) {
    cmd->add_option("--alpha", f.alpha, "first-order weight");
    cmd->add_option("--beta", f.beta, "second-order weight");
    cmd->add_option("--lambda", f.lambda, "split Bregman penalty")->capture_default_str();
    cmd->add_option("--iters", f.iters, "maximum outer iterations")->capture_default_str();
    cmd->add_option("--tol", f.tol, "relative residual stopping tolerance (0 disables)")->capture_default_str();
    cmd->add_option("--cg-iters", f.cg_iters, "CG steps per outer iteration");
    cmd->add_option("--cg-tol", f.cg_tol, "CG relative residual tolerance")->capture_default_str();
    cmd->add_option("--fidelity", f.fidelity)->check(CLI::IsMember({"l1", "l2"}))->capture_default_str();
    cmd->add_option("--reg", f.reg)->check(CLI::IsMember({"iso", "aniso"}))->capture_default_str();
    cmd->add_option("--splitting", f.splitting)
        ->check(CLI::IsMember({"standard", "alternative"}))
        ->capture_default_str();
    cmd->add_option("--seed", f.seed);
    cmd->add_option("--input", f.input, "input image (PGM/PPM)")->required();
    auto* out = cmd->add_option("--output", f.output);
    if (needs_output) out->required();
    cmd->add_option("--trace", f.trace, "CSV of per-iteration diagnostics");
    cmd->add_flag("--ascii", f.ascii, "write plain (P2/P3) instead of raw Netpbm");
}

SolverConfig make_config(const SolverFlags& f, int default_cg_iters) {
    SolverConfig cfg;
    cfg.alpha = f.alpha;
    cfg.beta = f.beta;
    cfg.lambda = f.lambda;
    cfg.max_outer = f.iters;
    cfg.residual_tol = f.tol;
    cfg.inner.max_cg_iters = f.cg_iters.value_or(default_cg_iters);
    cfg.inner.cg_tol = f.cg_tol;
    cfg.seed = f.seed;
    cfg.validate();
    return cfg;
}

SolverChoice make_choice(const SolverFlags& f) {
    SolverChoice c;
    c.fidelity = f.fidelity == "l1" ? Fidelity::L1 : Fidelity::L2;
    c.regularizer = f.reg == "aniso" ? Regularizer::Anisotropic : Regularizer::Isotropic;
    c.splitting = f.splitting == "alternative" ? Splitting::Alternative : Splitting::Standard;
    c.validate();
    return c;
}

std::string trace_csv(const std::vector<const SolverTrace*>& traces) {
    std::string s = "iter,rel_residual,gap1,gap2,energy\n";
    for (const SolverTrace* t : traces) {
        for (const IterationRecord& r : t->records) {
            s += std::to_string(r.iter);
            for (double v : {r.relative_residual, r.constraint_gap_1, r.constraint_gap_2, r.energy}) {
                s += ',';
                s += format("%.17g", v);
            }
            s += '\n';
        }
    }
    return s;
}

WriteOptions write_options(const SolverFlags& f) {
    WriteOptions o;
    o.encoding = f.ascii ? Encoding::Ascii : Encoding::Binary;
    return o;
}

// Shared driver of denoise, deblur and inpaint. Colour inputs are restored
// channel by channel.
int restore(const SolverFlags& f, const SolverConfig& cfg, const SolverChoice& choice, const Raster& input,
            const ForwardOp& op) {
    op.check_compatible(input.planes.front());
    auto solve_one = [&](const Image& plane) { return solve(plane, op, cfg, choice); };

    Raster result;
    std::vector<SolverTrace> traces;
    try {
        if (input.is_color()) {
            ColorSolveResult r = solve_rgb(color_planes(input), solve_one);
            result = color_raster(std::move(r.u));
            traces.assign(r.traces.begin(), r.traces.end());
        } else {
            SolveResult r = solve_one(input.planes.front());
            result = gray_raster(std::move(r.u));
            traces.push_back(std::move(r.trace));
        }
    } catch (const DivergenceError& e) {
        if (!f.trace.empty()) write_text(f.trace, trace_csv({&e.trace()}));
        throw;
    }

    write_image(f.output, result, write_options(f));
    if (!f.trace.empty()) {
        std::vector<const SolverTrace*> ptrs;
        for (const SolverTrace& t : traces) ptrs.push_back(&t);
        write_text(f.trace, trace_csv(ptrs));
    }
    return Ok;
}

NoiseSpec parse_noise(const std::string& text, std::uint64_t seed) {
    const auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    if (colon == std::string::npos) throw ParameterError("--noise expects gaussian:VAR or impulse:DENSITY");
    const std::string value = text.substr(colon + 1);
    std::size_t used = 0;
    double level = 0.0;
    try {
        level = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != value.size()) throw ParameterError("bad noise level '" + value + "'");
    if (kind == "gaussian") return NoiseSpec::gaussian(level, seed);
    if (kind == "impulse") return NoiseSpec::impulse(level, seed);
    throw ParameterError("unknown noise kind '" + kind + "'");
}

std::vector<double> parse_grid(const std::string& text, const char* name) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = std::min(text.find(',', start), text.size());
        const std::string tok = text.substr(start, comma - start);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != tok.size() || !std::isfinite(v) || v < 0.0) {
            throw ParameterError(std::string(name) + ": bad entry '" + tok + "'");
        }
        out.push_back(v);
        start = comma + 1;
    }
    return out;
}

unsigned sweep_workers(std::size_t cells) {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BHRESTORE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) {
            throw ParameterError("BHRESTORE_THREADS must be a positive integer");
        }
        n = static_cast<unsigned>(std::min<long>(v, 1024));
    }
    return static_cast<unsigned>(std::min<std::size_t>(n, cells));
}

int cmd_sweep(const Flags& fl, std::ostream& err) {
    const SolverFlags& f = fl.solver;
    const std::vector<double> alphas = parse_grid(fl.alpha_grid, "--alpha-grid");
    const std::vector<double> betas = parse_grid(fl.beta_grid, "--beta-grid");
    const SolverConfig base = make_config(f, InnerSolverConfig{}.max_cg_iters);
    const SolverChoice choice = make_choice(f);
    const unsigned workers = sweep_workers(alphas.size() * betas.size());

    const Image noisy = to_gray(read_image(f.input));
    const Image clean = to_gray(read_image(fl.ref));
    if (!noisy.same_shape(clean)) throw DimensionError("--input and --ref differ in shape");

    struct Cell {
        double ssim = std::nan("");
        double psnr = std::nan("");
    };
    const std::size_t cells = alphas.size() * betas.size();
    std::vector<Cell> results(cells);
    std::atomic<std::size_t> next{0};
    std::atomic<int> failures{0};
    auto work = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < cells;) {
            SolverConfig cfg = base;
            cfg.alpha = alphas[k / betas.size()];
            cfg.beta = betas[k % betas.size()];
            try {
                const Image u = solve(noisy, ForwardOp::identity(), cfg, choice).u;
                results[k] = {ssim(u, clean), psnr(u, clean)};
            } catch (const std::exception&) {
                ++failures;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    std::string csv = "alpha,beta,ssim,psnr\n";
    for (std::size_t k = 0; k < cells; ++k) {
        csv += format("%.10g", alphas[k / betas.size()]) + ',' + format("%.10g", betas[k % betas.size()]) + ',' +
               format("%.6f", results[k].ssim) + ',' + format("%.6f", results[k].psnr) + '\n';
    }
    write_text(f.output, csv);
    if (failures > 0) err << "warning: " << failures.load() << " of " << cells << " cells failed\n";
    return Ok;
}

int cmd_synth(const Flags& fl) {
    const SolverFlags& f = fl.solver;
    std::optional<NoiseSpec> noise;
    if (fl.noise != "none") noise = parse_noise(fl.noise, f.seed);

    Image img;
    std::optional<Image> mask;
    if (fl.shape == "geometric") {
        img = make_geometric(fl.height, fl.width);
    } else {
        StripeScene s = make_stripe(fl.height, fl.width, fl.shape == "stripe" ? StripeAngle::Deg0 : StripeAngle::Deg45,
                                    fl.gap);
        img = std::move(s.image);
        mask = std::move(s.mask);
    }
    if (noise) img = add_noise(img, *noise);

    write_image(f.output, gray_raster(std::move(img)), write_options(f));
    if (!fl.mask.empty()) {
        if (!mask) throw ParameterError("--mask is only produced for stripe shapes");
        write_image(fl.mask, gray_raster(std::move(*mask)), write_options(f));
    }
    return Ok;
}

int cmd_metrics(const Flags& fl, std::ostream& out) {
    const Image ref = to_gray(read_image(fl.ref));
    const Image test = to_gray(read_image(fl.test));
    if (!ref.same_shape(test)) throw DimensionError("--ref and --test differ in shape");
    out << "SSIM=" << format("%.6f", ssim(test, ref)) << " PSNR=" << format("%.6f", psnr(test, ref)) << '\n';
    return Ok;
}

int cmd_slice(const Flags& fl) {
    const Image img = to_gray(read_image(fl.solver.input));
    if (fl.row && (*fl.row < 1 || *fl.row > img.rows())) {
        throw ParameterError("--row must lie in 1.." + std::to_string(img.rows()));
    }
    export_slice(img, fl.row, fl.solver.output);
    return Ok;
}

int dispatch(CLI::App& app, Flags& fl, std::ostream& out, std::ostream& err) {
    const SolverFlags& f = fl.solver;
    if (app.got_subcommand("denoise")) {
        const SolverConfig cfg = make_config(f, InnerSolverConfig{}.max_cg_iters);
        const SolverChoice choice = make_choice(f);
        return restore(f, cfg, choice, read_image(f.input), ForwardOp::identity());
    }
    if (app.got_subcommand("deblur")) {
        const SolverConfig cfg = make_config(f, InnerSolverConfig{}.max_cg_iters);
        const SolverChoice choice = make_choice(f);
        if (!(std::isfinite(fl.sigma) && fl.sigma > 0.0)) throw ParameterError("--sigma must be positive");
        if (fl.radius && *fl.radius < 1) throw ParameterError("--radius must be positive");
        const ForwardOp op = ForwardOp::circular_blur(gaussian_kernel(fl.sigma, fl.radius));
        return restore(f, cfg, choice, read_image(f.input), op);
    }
    if (app.got_subcommand("inpaint")) {
        const SolverConfig cfg = make_config(f, kInpaintCgIters);
        const SolverChoice choice = make_choice(f);
        const Raster input = read_image(f.input);
        const ForwardOp op = ForwardOp::mask(threshold_mask(to_gray(read_image(fl.mask))));
        return restore(f, cfg, choice, input, op);
    }
    if (app.got_subcommand("metrics")) return cmd_metrics(fl, out);
    if (app.got_subcommand("synth")) return cmd_synth(fl);
    if (app.got_subcommand("slice")) return cmd_slice(fl);
    if (app.got_subcommand("sweep")) return cmd_sweep(fl, err);
    return Usage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"TV / bounded-Hessian image restoration by split Bregman", "bhrestore"};
    app.require_subcommand(1);
    Flags fl;
    SolverFlags& f = fl.solver;

    auto* denoise = app.add_subcommand("denoise", "remove Gaussian (l2) or impulse (l1) noise");
    add_solver_flags(denoise, f, true);

    auto* deblur = app.add_subcommand("deblur", "invert a circular Gaussian blur");
    add_solver_flags(deblur, f, true);
    deblur->add_option("--sigma", fl.sigma, "blur standard deviation")->capture_default_str();
    deblur->add_option("--radius", fl.radius, "kernel radius (default ceil(3 sigma))");

    auto* inpaint = app.add_subcommand("inpaint", "fill the pixels where the mask is dark");
    add_solver_flags(inpaint, f, true);
    inpaint->add_option("--mask", fl.mask, "mask image, bright = known pixel")->required();

    auto* metrics = app.add_subcommand("metrics", "print SSIM and PSNR of --test against --ref");
    metrics->add_option("--ref", fl.ref)->required();
    metrics->add_option("--test", fl.test)->required();

    auto* synth = app.add_subcommand("synth", "write a synthetic test image");
    synth->add_option("--shape", fl.shape)->check(CLI::IsMember({"geometric", "stripe", "stripe45"}));
    synth->add_option("--width", fl.width)->capture_default_str();
    synth->add_option("--height", fl.height)->capture_default_str();
    synth->add_option("--noise", fl.noise, "none, gaussian:VAR or impulse:DENSITY")->capture_default_str();
    synth->add_option("--gap", fl.gap, "stripe gap as a fraction of the width")->capture_default_str();
    synth->add_option("--mask", fl.mask, "also write the stripe's inpainting mask here");
    synth->add_option("--seed", f.seed);
    synth->add_option("--output", f.output)->required();
    synth->add_flag("--ascii", f.ascii);

    auto* slice = app.add_subcommand("slice", "export one image row as CSV");
    slice->add_option("--input", f.input)->required();
    slice->add_option("--row", fl.row, "1-based row (default: middle row)");
    slice->add_option("--output", f.output)->required();

    auto* sweep = app.add_subcommand("sweep", "SSIM/PSNR of denoising over an (alpha, beta) grid");
    add_solver_flags(sweep, f, true);
    sweep->add_option("--ref", fl.ref, "clean reference image")->required();
    sweep->add_option("--alpha-grid", fl.alpha_grid, "comma-separated alpha values")->required();
    sweep->add_option("--beta-grid", fl.beta_grid, "comma-separated beta values")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? Ok : Usage;
    }

    try {
        return dispatch(app, fl, out, err);
    } catch (const DivergenceError& e) {
        err << "error: " << e.what() << '\n';
        return Diverged;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return Usage;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << '\n';
        return Usage;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return Io;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return Io;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return Diverged;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace bhtv::cli
