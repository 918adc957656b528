// End-to-end checks through the command line binary and real files.
#include <catch2/catch.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "stfmm/stfmm.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace stfmm;

namespace {

struct TempDir {
    fs::path path;

    TempDir() {
        static int counter = 0;
        path = fs::temp_directory_path() /
               ("stfmm-cli-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliResult run_cli(const TempDir& dir, const std::string& args) {
    static int counter = 0;
    const fs::path out = dir.path / ("stdout." + std::to_string(counter));
    const fs::path err = dir.path / ("stderr." + std::to_string(counter));
    ++counter;
    const std::string cmd = std::string(STFMM_CLI_PATH) + " " + args + " >'" + out.string() +
                            "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    CliResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

std::string format4(double v) {
    if (std::isinf(v)) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

} // namespace

TEST_CASE("cli embed/extract round trip through pgm files") {
    TempDir dir;
    std::mt19937 rng(71);
    const GrayImage cover = testutil::random_image(rng, 60, 40);
    const fs::path cover_path = dir.path / "cover.pgm";
    const fs::path stego_path = dir.path / "stego.pgm";
    save_image(cover, cover_path, ImageFormat::pgm_binary);

    const std::string msg = "Round trips should be exact. 123!";
    const CliResult embed_run = run_cli(dir, "embed '" + cover_path.string() + "' '" +
                                                 stego_path.string() + "' --text '" + msg + "'");
    REQUIRE(embed_run.exit_code == 0);
    CHECK(embed_run.err.find("mse=") != std::string::npos);     // quality on stderr
    CHECK(embed_run.err.find("window=5") != std::string::npos); // default key echoed

    const CliResult extract_run = run_cli(dir, "extract '" + stego_path.string() + "'");
    REQUIRE(extract_run.exit_code == 0);
    CHECK(extract_run.out == msg);

    // file-level result equals the library-level result
    const GrayImage lib_stego = embed(cover, msg, StegoParams(printable95));
    CHECK(load_image(stego_path).image == lib_stego);
}

TEST_CASE("cli keeps the cover's format for the stego image") {
    TempDir dir;
    std::mt19937 rng(73);
    const GrayImage cover = testutil::random_image(rng, 30, 30);
    const fs::path cover_path = dir.path / "cover.bmp";
    const fs::path stego_path = dir.path / "stego.img";
    save_image(cover, cover_path, ImageFormat::bmp8);

    REQUIRE(run_cli(dir, "embed '" + cover_path.string() + "' '" + stego_path.string() +
                             "' --text 'bmp in, bmp out' --window 5")
                .exit_code == 0);
    const std::string magic = slurp(stego_path).substr(0, 2);
    CHECK(magic == "BM");
    const CliResult extracted = run_cli(dir, "extract '" + stego_path.string() + "' --window 5");
    CHECK(extracted.out == "bmp in, bmp out");
}

TEST_CASE("cli embed reads the message from a file, byte for byte") {
    TempDir dir;
    const GrayImage cover(40, 40, 200);
    const fs::path cover_path = dir.path / "cover.pgm";
    save_image(cover, cover_path, ImageFormat::pgm_binary);
    const fs::path msg_path = dir.path / "msg.txt";
    {
        std::ofstream out(msg_path, std::ios::binary);
        out << "no trailing newline";
    }
    const fs::path stego_path = dir.path / "stego.pgm";
    REQUIRE(run_cli(dir, "embed '" + cover_path.string() + "' '" + stego_path.string() +
                             "' --text-file '" + msg_path.string() + "'")
                .exit_code == 0);
    CHECK(run_cli(dir, "extract '" + stego_path.string() + "'").out == "no trailing newline");
}

TEST_CASE("cli fmm quantizes and preserves the format") {
    TempDir dir;
    std::mt19937 rng(79);
    const GrayImage img = testutil::random_image(rng, 13, 9);
    const fs::path in_path = dir.path / "in.pgm";
    const fs::path out_path = dir.path / "out.pgm";
    save_image(img, in_path, ImageFormat::pgm_ascii);

    REQUIRE(run_cli(dir, "fmm '" + in_path.string() + "' '" + out_path.string() + "'").exit_code ==
            0);
    const LoadedImage out = load_image(out_path);
    CHECK(out.format == ImageFormat::pgm_ascii);
    CHECK(out.image == fmm_image(img));
}

TEST_CASE("cli capacity prints the window count") {
    TempDir dir;
    const fs::path img_path = dir.path / "img.pgm";
    save_image(GrayImage(10, 10, 0), img_path, ImageFormat::pgm_binary);
    CHECK(run_cli(dir, "capacity '" + img_path.string() + "'").out == "4\n");
    CHECK(run_cli(dir, "capacity '" + img_path.string() + "' --window 3").out == "9\n");
    CHECK(run_cli(dir, "capacity '" + img_path.string() + "' --charset lower26").out == "9\n");
}

TEST_CASE("cli psnr output format") {
    TempDir dir;
    const GrayImage a(2, 2, 100);
    GrayImage b = a;
    b.at(1, 0) = 105;
    const fs::path pa = dir.path / "a.pgm";
    const fs::path pb = dir.path / "b.pgm";
    save_image(a, pa, ImageFormat::pgm_binary);
    save_image(b, pb, ImageFormat::pgm_binary);

    const CliResult diff = run_cli(dir, "psnr '" + pa.string() + "' '" + pb.string() + "'");
    REQUIRE(diff.exit_code == 0);
    CHECK(diff.out == "mse=6.2500 psnr=" + format4(psnr(a, b).psnr) + "\n");

    const CliResult same = run_cli(dir, "psnr '" + pa.string() + "' '" + pa.string() + "'");
    CHECK(same.out == "mse=0.0000 psnr=inf\n");
}

TEST_CASE("cli sweep emits one reproducible csv row per size") {
    TempDir dir;
    const GrayImage cover = testutil::synthetic_natural_cover(160, 160);  // capacity 1024
    const fs::path cover_path = dir.path / "cover.pgm";
    save_image(cover, cover_path, ImageFormat::pgm_binary);

    const std::string args = "sweep '" + cover_path.string() + "' --sizes 64,128,256,512,1024";
    const CliResult first = run_cli(dir, args);
    REQUIRE(first.exit_code == 0);
    const CliResult second = run_cli(dir, args);
    CHECK(first.out == second.out);

    std::istringstream rows(first.out);
    std::string line;
    std::vector<double> psnrs;
    std::vector<long> sizes;
    while (std::getline(rows, line)) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        sizes.push_back(std::stol(line.substr(0, comma)));
        psnrs.push_back(std::stod(line.substr(comma + 1)));
    }
    REQUIRE(sizes == std::vector<long>{64, 128, 256, 512, 1024});

    // rows match the library path exactly
    const StegoParams params(printable95);
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const EmbedResult r = embed_then_report(
            cover, pangram_payload(std::size_t(sizes[i]), printable95), params);
        CHECK(format4(psnrs[i]) == format4(r.quality.psnr));
    }

    // larger payloads should not improve quality (soft trend)
    for (std::size_t i = 1; i < psnrs.size(); ++i) CHECK(psnrs[i] <= psnrs[i - 1] + 1e-9);
}

TEST_CASE("cli exit codes") {
    TempDir dir;
    const fs::path img_path = dir.path / "img.pgm";
    save_image(GrayImage(10, 10, 100), img_path, ImageFormat::pgm_binary);
    const fs::path out_path = dir.path / "out.pgm";

    SECTION("usage errors exit 1") {
        CHECK(run_cli(dir, "").exit_code == 1);
        CHECK(run_cli(dir, "bogus").exit_code == 1);
        CHECK(run_cli(dir, "extract '" + img_path.string() + "' --charset nosuch").exit_code == 1);
        CHECK(run_cli(dir, "extract '" + img_path.string() + "' --window 1").exit_code == 1);
        // window too small for the alphabet
        CHECK(run_cli(dir, "extract '" + img_path.string() + "' --window 4").exit_code == 1);
        // embed without a message source
        CHECK(run_cli(dir, "embed '" + img_path.string() + "' '" + out_path.string() + "'")
                  .exit_code == 1);
    }

    SECTION("i/o and format errors exit 2") {
        CHECK(run_cli(dir, "extract '" + (dir.path / "missing.pgm").string() + "'").exit_code == 2);
        const fs::path junk = dir.path / "junk.pgm";
        {
            std::ofstream out(junk, std::ios::binary);
            out << "not an image";
        }
        CHECK(run_cli(dir, "extract '" + junk.string() + "'").exit_code == 2);
        const fs::path other = dir.path / "other.pgm";
        save_image(GrayImage(3, 3, 0), other, ImageFormat::pgm_binary);
        CHECK(run_cli(dir, "psnr '" + img_path.string() + "' '" + other.string() + "'").exit_code ==
              2);
    }

    SECTION("capacity exceeded exits 3") {
        const std::string long_text(5, 'x');  // capacity is 4
        CHECK(run_cli(dir, "embed '" + img_path.string() + "' '" + out_path.string() +
                               "' --text '" + long_text + "'")
                  .exit_code == 3);
        CHECK(run_cli(dir, "sweep '" + img_path.string() + "' --sizes 2,999999").exit_code == 3);
    }

    SECTION("unsupported characters exit 4") {
        CHECK(run_cli(dir, "embed '" + img_path.string() + "' '" + out_path.string() +
                               "' --text 'abc123' --charset lower26")
                  .exit_code == 4);
    }

    SECTION("corrupt stego exits 5, lenient downgrades to a warning") {
        GrayImage corrupt(10, 10, 100);
        corrupt.at(0, 0) = 101;
        corrupt.at(1, 1) = 102;
        const fs::path corrupt_path = dir.path / "corrupt.pgm";
        save_image(corrupt, corrupt_path, ImageFormat::pgm_binary);

        const CliResult strict = run_cli(dir, "extract '" + corrupt_path.string() + "'");
        CHECK(strict.exit_code == 5);

        const CliResult lenient =
            run_cli(dir, "extract '" + corrupt_path.string() + "' --lenient");
        CHECK(lenient.exit_code == 0);
        CHECK(lenient.out.empty());
        CHECK(lenient.err.find("warning: skipped corrupt window (row 0, col 0)") !=
              std::string::npos);
    }

    SECTION("help exits 0") {
        CHECK(run_cli(dir, "--help").exit_code == 0);
        CHECK(run_cli(dir, "embed --help").exit_code == 0);
    }
}
