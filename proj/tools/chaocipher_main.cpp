#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "chaocipher/analysis.hpp"
#include "chaocipher/arnold.hpp"
#include "chaocipher/cipher.hpp"
#include "chaocipher/errors.hpp"
#include "chaocipher/hyperchaos.hpp"
#include "chaocipher/image.hpp"
#include "chaocipher/keyfile.hpp"

namespace {

// Exit codes, stable and documented in README.md:
//   0 success, 1 usage, 2 invalid image, 3 invalid key, 4 non-square image,
//   5 trajectory divergence, 6 weak key (without --allow-weak-key),
//   7 dimension mismatch.
constexpr int kExitUsage = 1;
constexpr int kExitImage = 2;
constexpr int kExitKey = 3;
constexpr int kExitNonSquare = 4;
constexpr int kExitDivergence = 5;
constexpr int kExitWeakKey = 6;
constexpr int kExitDimensions = 7;

chaocipher::CipherKey resolve_key(const std::string& key_path) {
    std::string path = key_path;
    if (path.empty()) {
        if (const char* env = std::getenv("CHAOCIPHER_KEYFILE")) path = env;
    }
    if (path.empty())
        throw CLI::ValidationError(
            "key", "a key file is required (--key <path> or CHAOCIPHER_KEYFILE)");
    return chaocipher::load_key(path);
}

int enforce_key_policy(const chaocipher::CipherKey& key, bool allow_weak) {
    if (allow_weak) return 0;
    if (chaocipher::is_weak_key(key)) {
        std::cerr << "error: weak key: its keystream visits too few byte values; "
                     "pass --allow-weak-key to proceed anyway\n";
        return kExitWeakKey;
    }
    return 0;
}

void echo_params(const chaocipher::ArnoldParams& p) {
    std::cerr << "arnold parameters: a=" << p.a << " b=" << p.b << " c=" << p.c
              << " d=" << p.d << " n=" << p.n << "\n";
}

void require_square_input(const chaocipher::ColorImage& img) {
    if (!img.square())
        throw chaocipher::NonSquareError("the cipher requires a square image, got " +
                                         std::to_string(img.rows()) + "x" +
                                         std::to_string(img.cols()));
}

struct CryptOpts {
    std::string in, out, key;
    bool verbose = false;
    bool allow_weak = false;
    bool strip_alpha = false;
};

int run_encrypt(const CryptOpts& o) {
    const auto policy = o.strip_alpha ? chaocipher::AlphaPolicy::strip
                                      : chaocipher::AlphaPolicy::reject;
    const chaocipher::ColorImage plain = chaocipher::load_image(o.in, policy);
    require_square_input(plain);
    const chaocipher::CipherKey key = resolve_key(o.key);
    if (const int rc = enforce_key_policy(key, o.allow_weak)) return rc;

    const chaocipher::CipherText cipher = chaocipher::encrypt(plain, key);
    chaocipher::save_image(cipher.image, o.out);
    if (o.verbose) echo_params(chaocipher::derive_params(chaocipher::gray_value_sum(plain)));
    return 0;
}

int run_decrypt(const CryptOpts& o) {
    const auto policy = o.strip_alpha ? chaocipher::AlphaPolicy::strip
                                      : chaocipher::AlphaPolicy::reject;
    const chaocipher::ColorImage in = chaocipher::load_image(o.in, policy);
    require_square_input(in);
    const chaocipher::CipherKey key = resolve_key(o.key);
    if (const int rc = enforce_key_policy(key, o.allow_weak)) return rc;

    const chaocipher::ColorImage plain = chaocipher::decrypt(chaocipher::CipherText{in}, key);
    chaocipher::save_image(plain, o.out);
    // The recovered image has the same gray-value sum as the scrambled one,
    // so this echoes exactly the parameters decryption used.
    if (o.verbose) echo_params(chaocipher::derive_params(chaocipher::gray_value_sum(plain)));
    return 0;
}

struct AnalyzeOpts {
    std::string plain, cipher, key, out = "-";
    std::uint64_t seed = 0;
    std::size_t samples = chaocipher::kDefaultCorrelationSamples;
    bool verbose = false;
};

int run_analyze(const AnalyzeOpts& o) {
    const chaocipher::ColorImage plain = chaocipher::load_image(o.plain);
    const chaocipher::ColorImage cipher = chaocipher::load_image(o.cipher);
    std::optional<chaocipher::CipherKey> key;
    if (!o.key.empty() || std::getenv("CHAOCIPHER_KEYFILE") != nullptr)
        key = resolve_key(o.key);

    const chaocipher::MetricsReport report =
        chaocipher::analyze(plain, cipher, o.seed, key, o.samples);
    const std::string json = chaocipher::to_json(report);
    if (o.out == "-") {
        std::cout << json;
    } else {
        std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
        if (!f) throw chaocipher::ImageError("cannot write report: " + o.out);
        f << json;
        if (!f) throw chaocipher::ImageError("write failed: " + o.out);
    }
    if (o.verbose) std::cerr << chaocipher::render_table(report);
    return 0;
}

struct KeystreamOpts {
    std::string key, out = "-", format = "csv";
    std::int64_t length = 0;
    bool allow_weak = false;
};

int run_keystream(const KeystreamOpts& o) {
    if (o.length < 1) throw CLI::ValidationError("length", "--length must be at least 1");
    const chaocipher::CipherKey key = resolve_key(o.key);
    if (const int rc = enforce_key_policy(key, o.allow_weak)) return rc;

    const chaocipher::KeystreamPair ks =
        chaocipher::generate_keystreams(key.chaos, static_cast<std::size_t>(o.length));

    std::ofstream file;
    std::ostream* out = &std::cout;
    if (o.out != "-") {
        file.open(o.out, std::ios::binary | std::ios::trunc);
        if (!file) throw chaocipher::ImageError("cannot write keystream: " + o.out);
        out = &file;
    }
    if (o.format == "bin") {
        out->write(reinterpret_cast<const char*>(ks.k1.data()),
                   static_cast<std::streamsize>(ks.k1.size()));
        out->write(reinterpret_cast<const char*>(ks.k2.data()),
                   static_cast<std::streamsize>(ks.k2.size()));
    } else {
        for (std::size_t i = 0; i < ks.k1.size(); ++i)
            *out << i << ',' << static_cast<int>(ks.k1[i]) << ','
                 << static_cast<int>(ks.k2[i]) << '\n';
    }
    out->flush();
    if (!*out) throw chaocipher::ImageError("keystream write failed");
    return 0;
}

template <typename F>
int with_exit_codes(F&& f) {
    try {
        return f();
    } catch (const chaocipher::KeyError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitKey;
    } catch (const chaocipher::NonSquareError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNonSquare;
    } catch (const chaocipher::DivergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const chaocipher::DimensionMismatchError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDimensions;
    } catch (const chaocipher::ImageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitImage;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chaos-based color-image cipher: 3D Arnold scrambling + "
                 "hyper-chaotic CBC-XOR confusion"};
    app.require_subcommand(1);

    CryptOpts enc;
    CLI::App* enc_cmd = app.add_subcommand("encrypt", "Encrypt a square RGB image");
    enc_cmd->add_option("input", enc.in, "Plain image (PPM P6 or PNG)")->required();
    enc_cmd->add_option("output", enc.out, "Cipher image path (container from extension)")
        ->required();
    enc_cmd->add_option("--key,-k", enc.key, "Key file (JSON); falls back to CHAOCIPHER_KEYFILE");
    enc_cmd->add_flag("--verbose,-v", enc.verbose, "Echo derived Arnold parameters to stderr");
    enc_cmd->add_flag("--allow-weak-key", enc.allow_weak, "Skip the key-quality policy check");
    enc_cmd->add_flag("--strip-alpha", enc.strip_alpha, "Drop an alpha channel instead of rejecting");

    CryptOpts dec;
    CLI::App* dec_cmd = app.add_subcommand("decrypt", "Decrypt a cipher image");
    dec_cmd->add_option("input", dec.in, "Cipher image")->required();
    dec_cmd->add_option("output", dec.out, "Recovered image path")->required();
    dec_cmd->add_option("--key,-k", dec.key, "Key file (JSON); falls back to CHAOCIPHER_KEYFILE");
    dec_cmd->add_flag("--verbose,-v", dec.verbose, "Echo derived Arnold parameters to stderr");
    dec_cmd->add_flag("--allow-weak-key", dec.allow_weak, "Skip the key-quality policy check");
    dec_cmd->add_flag("--strip-alpha", dec.strip_alpha, "Drop an alpha channel instead of rejecting");

    AnalyzeOpts ana;
    CLI::App* ana_cmd = app.add_subcommand("analyze", "Statistical evaluation of a plain/cipher pair");
    ana_cmd->add_option("plain", ana.plain, "Plain image")->required();
    ana_cmd->add_option("cipher", ana.cipher, "Cipher image")->required();
    ana_cmd->add_option("--key,-k", ana.key,
                        "Key file: adds the key-sensitivity section (CHAOCIPHER_KEYFILE honored)");
    ana_cmd->add_option("--out,-o", ana.out, "Report path, '-' for stdout (default)");
    ana_cmd->add_option("--seed", ana.seed, "Correlation sampling seed (default 0)");
    ana_cmd->add_option("--samples", ana.samples, "Correlation pairs per direction (default 4096)");
    ana_cmd->add_flag("--verbose,-v", ana.verbose, "Also print a table to stderr");

    KeystreamOpts kso;
    CLI::App* ks_cmd = app.add_subcommand("keystream", "Export keystreams K1, K2 for external tests");
    ks_cmd->add_option("--key,-k", kso.key, "Key file (JSON); falls back to CHAOCIPHER_KEYFILE");
    ks_cmd->add_option("--length,-n", kso.length, "Bytes per stream")->required();
    ks_cmd->add_option("--format,-f", kso.format, "bin (K1 then K2) or csv (i,k1,k2 rows)")
        ->check(CLI::IsMember({"bin", "csv"}));
    ks_cmd->add_option("--out,-o", kso.out, "Output path, '-' for stdout (default)");
    ks_cmd->add_flag("--allow-weak-key", kso.allow_weak, "Skip the key-quality policy check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    if (enc_cmd->parsed()) return with_exit_codes([&] { return run_encrypt(enc); });
    if (dec_cmd->parsed()) return with_exit_codes([&] { return run_decrypt(dec); });
    if (ana_cmd->parsed()) return with_exit_codes([&] { return run_analyze(ana); });
    if (ks_cmd->parsed()) return with_exit_codes([&] { return run_keystream(kso); });
    return kExitUsage;
}
