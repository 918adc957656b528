// Command line front end: quantize, embed, extract, measure, sweep.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "stfmm/stfmm.hpp"

namespace {

using namespace stfmm;

struct RunConfig {
    std::string input;
    std::string output;
    std::string second;
    std::string text;
    std::string text_file;
    std::string charset_name = "printable95";
    int window = 0;  // 0 = derive from the charset
    bool lenient = false;
    std::vector<long long> sizes;
};

std::string format4(double v) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

void print_quality(std::ostream& os, const QualityReport& q) {
    os << "mse=" << format4(q.mse) << " psnr=" << format4(q.psnr) << '\n';
}

// The window edge is the stego key; when not given it falls back to the
// smallest edge whose windows hold the whole alphabet, and says so.
StegoParams resolve_params(const RunConfig& cfg) {
    const Charset& cs = charset_by_name(cfg.charset_name);
    if (cfg.window == 0) {
        StegoParams params(cs);
        std::cerr << "window=" << params.window << " (default for charset " << cs.name << ")\n";
        return params;
    }
    return {cfg.window, cs};
}

std::string read_message(const RunConfig& cfg, bool text_given) {
    if (text_given) return cfg.text;
    std::ifstream in(cfg.text_file, std::ios::binary);
    if (!in) throw IoError("cannot open " + cfg.text_file);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_fmm(const RunConfig& cfg) {
    const LoadedImage cover = load_image(cfg.input);
    save_image(fmm_image(cover.image), cfg.output, cover.format);
    return 0;
}

int run_embed(const RunConfig& cfg, bool text_given) {
    const std::string message = read_message(cfg, text_given);
    const LoadedImage cover = load_image(cfg.input);
    const StegoParams params = resolve_params(cfg);
    const EmbedResult result = embed_then_report(cover.image, message, params);
    save_image(result.stego, cfg.output, cover.format);
    print_quality(std::cerr, result.quality);
    return 0;
}

int run_extract(const RunConfig& cfg) {
    const LoadedImage stego = load_image(cfg.input);
    const StegoParams params = resolve_params(cfg);
    const ExtractReport report = extract_report(stego.image, params, cfg.lenient);
    for (const WindowRef& w : report.corrupt_windows)
        std::cerr << "warning: skipped corrupt window (row " << w.row << ", col " << w.col
                  << ")\n";
    std::cout.write(report.text.data(), static_cast<std::streamsize>(report.text.size()));
    std::cout.flush();
    return 0;
}

int run_capacity(const RunConfig& cfg) {
    const LoadedImage img = load_image(cfg.input);
    // capacity depends on the window alone; the charset only defaults it
    const int window = cfg.window != 0 ? cfg.window : resolve_params(cfg).window;
    std::cout << capacity(img.image, window) << '\n';
    return 0;
}

int run_psnr(const RunConfig& cfg) {
    const LoadedImage a = load_image(cfg.input);
    const LoadedImage b = load_image(cfg.second);
    print_quality(std::cout, psnr(a.image, b.image));
    return 0;
}

int run_sweep(const RunConfig& cfg) {
    const LoadedImage cover = load_image(cfg.input);
    const StegoParams params = resolve_params(cfg);
    const long long cap = capacity(cover.image, params.window);
    for (long long size : cfg.sizes)
        if (size > cap)
            throw CapacityError("payload of " + std::to_string(size) +
                                " characters exceeds capacity " + std::to_string(cap));
    for (long long size : cfg.sizes) {
        const std::string payload = pangram_payload(static_cast<std::size_t>(size),
                                                    params.charset);
        const EmbedResult result = embed_then_report(cover.image, payload, params);
        std::cout << size << ',' << format4(result.quality.psnr) << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Hide text in grayscale images as five-modulus residues"};
    app.require_subcommand(1);

    const auto add_key_options = [&cfg](CLI::App* cmd) {
        cmd->add_option("--window", cfg.window, "window edge k (the stego key)")
            ->check(CLI::Range(2, 16384));
        cmd->add_option("--charset", cfg.charset_name,
                        "printable95|lower26|ascii128|ascii256 (default printable95)");
    };

    CLI::App* cmd_fmm = app.add_subcommand("fmm", "Quantize an image to multiples of five");
    cmd_fmm->add_option("input", cfg.input, "source image (PGM or BMP)")->required();
    cmd_fmm->add_option("output", cfg.output, "quantized image")->required();

    CLI::App* cmd_embed = app.add_subcommand("embed", "Hide text inside a cover image");
    cmd_embed->add_option("cover", cfg.input, "cover image (PGM or BMP)")->required();
    cmd_embed->add_option("output", cfg.output, "stego image, written in the cover's format")
        ->required();
    CLI::Option* opt_text = cmd_embed->add_option("--text", cfg.text, "message text");
    CLI::Option* opt_text_file =
        cmd_embed->add_option("--text-file", cfg.text_file, "file whose bytes are the message");
    opt_text->excludes(opt_text_file);
    opt_text_file->excludes(opt_text);
    add_key_options(cmd_embed);

    CLI::App* cmd_extract = app.add_subcommand("extract", "Recover hidden text from a stego image");
    cmd_extract->add_option("stego", cfg.input, "stego image")->required();
    cmd_extract->add_flag("--lenient", cfg.lenient,
                          "skip corrupt windows with a warning instead of failing");
    add_key_options(cmd_extract);

    CLI::App* cmd_capacity = app.add_subcommand("capacity", "Print how many characters fit");
    cmd_capacity->add_option("image", cfg.input, "cover image")->required();
    add_key_options(cmd_capacity);

    CLI::App* cmd_psnr = app.add_subcommand("psnr", "Compare two images");
    cmd_psnr->add_option("original", cfg.input, "reference image")->required();
    cmd_psnr->add_option("processed", cfg.second, "image to compare")->required();

    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "Embed growing payloads and report psnr as CSV");
    cmd_sweep->add_option("cover", cfg.input, "cover image")->required();
    cmd_sweep->add_option("--sizes", cfg.sizes, "comma-separated payload sizes in bytes")
        ->required()
        ->delimiter(',')
        ->check(CLI::NonNegativeNumber);
    add_key_options(cmd_sweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (cmd_fmm->parsed()) return run_fmm(cfg);
        if (cmd_embed->parsed()) {
            if (opt_text->count() == 0 && opt_text_file->count() == 0)
                throw std::invalid_argument("embed needs --text or --text-file");
            return run_embed(cfg, opt_text->count() > 0);
        }
        if (cmd_extract->parsed()) return run_extract(cfg);
        if (cmd_capacity->parsed()) return run_capacity(cfg);
        if (cmd_psnr->parsed()) return run_psnr(cfg);
        if (cmd_sweep->parsed()) return run_sweep(cfg);
    } catch (const UnsupportedCharacterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const CorruptWindowError& e) {
        std::cerr << "error: " << e.what() << " (try --lenient to skip)\n";
        return 5;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
