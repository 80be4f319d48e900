#include "chaocipher/analysis.hpp"

#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "chaocipher/errors.hpp"
#include "chaocipher/kernels.hpp"

namespace chaocipher {

namespace {

// Unbiased draw in [0, bound) by rejection; pinned here (rather than
// uniform_int_distribution, whose mapping is implementation-defined) so a
// seed produces the same samples on every platform.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t threshold = -bound % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t r = rng();
        if (r >= threshold) return r % bound;
    }
}

void require_same_dims(const ColorImage& a, const ColorImage& b, const char* where) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatchError(std::string(where) + ": images are " +
                                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                     " vs " + std::to_string(b.rows()) + "x" +
                                     std::to_string(b.cols()));
}

}  // namespace

double chi_square(const Channel& ch) {
    if (ch.values.empty()) throw std::invalid_argument("chi_square: empty channel");
    const auto counts = histogram(ch);
    const double expected = static_cast<double>(ch.values.size()) / 256.0;
    double sum = 0.0;
    for (const std::uint64_t o : counts) {
        const double d = static_cast<double>(o) - expected;
        sum += d * d / expected;
    }
    return sum;
}

double shannon_entropy(const Channel& ch) {
    if (ch.values.empty()) throw std::invalid_argument("shannon_entropy: empty channel");
    const auto counts = histogram(ch);
    const double total = static_cast<double>(ch.values.size());
    double bits = 0.0;
    for (const std::uint64_t o : counts) {
        if (o == 0) continue;
        const double p = static_cast<double>(o) / total;
        bits -= p * std::log2(p);
    }
    return bits;
}

std::optional<double> adjacent_correlation(const ColorImage& img, Direction dir,
                                           std::size_t sample_count, std::uint64_t seed) {
    const bool step_x = dir == Direction::vertical || dir == Direction::diagonal;
    const bool step_y = dir == Direction::horizontal || dir == Direction::diagonal;
    const std::size_t x_range = step_x ? img.rows() - 1 : img.rows();
    const std::size_t y_range = step_y ? img.cols() - 1 : img.cols();
    if (img.pixel_count() == 0 || x_range == 0 || y_range == 0)
        throw std::invalid_argument("adjacent_correlation: image holds no pair in direction");
    if (sample_count == 0)
        throw std::invalid_argument("adjacent_correlation: sample_count must be positive");

    std::mt19937_64 rng(seed);
    double sp = 0, sq = 0, spp = 0, sqq = 0, spq = 0;
    for (std::size_t i = 0; i < sample_count; ++i) {
        const std::size_t x = bounded(rng, x_range);
        const std::size_t y = bounded(rng, y_range);
        const std::size_t z = bounded(rng, 3);
        const double p = img.at(x, y, z);
        const double q = img.at(x + (step_x ? 1 : 0), y + (step_y ? 1 : 0), z);
        sp += p;
        sq += q;
        spp += p * p;
        sqq += q * q;
        spq += p * q;
    }
    const double n = static_cast<double>(sample_count);
    const double var_p = n * spp - sp * sp;
    const double var_q = n * sqq - sq * sq;
    if (var_p <= 0.0 || var_q <= 0.0) return std::nullopt;
    return (n * spq - sp * sq) / std::sqrt(var_p * var_q);
}

double npcr(const ColorImage& a, const ColorImage& b, std::size_t z) {
    require_same_dims(a, b, "npcr");
    if (z > 2) throw std::invalid_argument("npcr: channel index out of range");
    if (a.pixel_count() == 0) throw std::invalid_argument("npcr: empty image");
    const Channel ca = extract_channel(a, z);
    const Channel cb = extract_channel(b, z);
    const std::uint64_t diff =
        kernels::active().count_diff(ca.values.data(), cb.values.data(), ca.values.size());
    return 100.0 * static_cast<double>(diff) / static_cast<double>(ca.values.size());
}

std::optional<double> key_sensitivity(const ColorImage& plain, const CipherKey& key,
                                      std::string_view component, double delta) {
    CipherKey shifted = key;
    if (component == "x0") shifted.chaos.x0 += delta;
    else if (component == "y0") shifted.chaos.y0 += delta;
    else if (component == "a1") shifted.chaos.a1 += delta;
    else if (component == "a2") shifted.chaos.a2 += delta;
    else if (component == "a3") shifted.chaos.a3 += delta;
    else if (component == "a4") shifted.chaos.a4 += delta;
    else if (component == "c0")
        shifted.c0 = static_cast<std::uint8_t>(static_cast<long long>(shifted.c0) +
                                               std::llround(delta));
    else
        throw std::invalid_argument("key_sensitivity: unknown component '" +
                                    std::string(component) + "'");
    try {
        const CipherText base = encrypt(plain, key);
        const CipherText bent = encrypt(plain, shifted);
        const auto& ba = base.image.bytes();
        const auto& bb = bent.image.bytes();
        const std::uint64_t diff = kernels::active().count_diff(ba.data(), bb.data(), ba.size());
        return 100.0 * static_cast<double>(diff) / static_cast<double>(ba.size());
    } catch (const DivergenceError&) {
        return std::nullopt;
    }
}

MetricsReport analyze(const ColorImage& plain, const ColorImage& cipher, std::uint64_t seed,
                      const std::optional<CipherKey>& key, std::size_t sample_count) {
    require_same_dims(plain, cipher, "analyze");
    MetricsReport report;
    for (std::size_t z = 0; z < 3; ++z) {
        const Channel ch = extract_channel(cipher, z);
        report.chi_square[z] = chi_square(ch);
        report.entropy[z] = shannon_entropy(ch);
        report.npcr[z] = npcr(plain, cipher, z);
    }
    report.correlation[0] = adjacent_correlation(cipher, Direction::horizontal, sample_count, seed);
    report.correlation[1] = adjacent_correlation(cipher, Direction::vertical, sample_count, seed);
    report.correlation[2] = adjacent_correlation(cipher, Direction::diagonal, sample_count, seed);
    if (key) {
        KeySensitivityReport ks;
        ks.x0 = key_sensitivity(plain, *key, "x0", 1e-14);
        ks.y0 = key_sensitivity(plain, *key, "y0", 1e-14);
        ks.a1 = key_sensitivity(plain, *key, "a1", 1e-14);
        ks.a2 = key_sensitivity(plain, *key, "a2", 1e-14);
        ks.a3 = key_sensitivity(plain, *key, "a3", 1e-14);
        ks.a4 = key_sensitivity(plain, *key, "a4", 1e-14);
        ks.c0 = key_sensitivity(plain, *key, "c0", 1.0);
        report.key_sensitivity = ks;
    }
    return report;
}

namespace {

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

std::string fmt(double v, int prec) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(prec) << v;
    return os.str();
}

std::string fmt(const std::optional<double>& v, int prec) {
    return v ? fmt(*v, prec) : std::string("undefined");
}

}  // namespace

std::string to_json(const MetricsReport& report) {
    nlohmann::ordered_json j;
    j["chi_square"]["r"] = report.chi_square[0];
    j["chi_square"]["g"] = report.chi_square[1];
    j["chi_square"]["b"] = report.chi_square[2];
    j["correlation"]["horizontal"] = opt_json(report.correlation[0]);
    j["correlation"]["vertical"] = opt_json(report.correlation[1]);
    j["correlation"]["diagonal"] = opt_json(report.correlation[2]);
    j["entropy"]["r"] = report.entropy[0];
    j["entropy"]["g"] = report.entropy[1];
    j["entropy"]["b"] = report.entropy[2];
    j["npcr"]["r"] = report.npcr[0];
    j["npcr"]["g"] = report.npcr[1];
    j["npcr"]["b"] = report.npcr[2];
    if (report.key_sensitivity) {
        const KeySensitivityReport& ks = *report.key_sensitivity;
        j["key_sensitivity"]["x0"] = opt_json(ks.x0);
        j["key_sensitivity"]["y0"] = opt_json(ks.y0);
        j["key_sensitivity"]["a1"] = opt_json(ks.a1);
        j["key_sensitivity"]["a2"] = opt_json(ks.a2);
        j["key_sensitivity"]["a3"] = opt_json(ks.a3);
        j["key_sensitivity"]["a4"] = opt_json(ks.a4);
        j["key_sensitivity"]["c0"] = opt_json(ks.c0);
    }
    return j.dump(2) + "\n";
}

std::string render_table(const MetricsReport& report) {
    std::ostringstream os;
    os << "metric                      R / horizontal   G / vertical     B / diagonal\n";
    os << "--------------------------  ---------------  ---------------  ---------------\n";
    os << std::left;
    os << std::setw(28) << "chi-square (cipher)";
    for (double v : report.chi_square) os << std::setw(17) << fmt(v, 2);
    os << "\n" << std::setw(28) << "correlation (cipher)";
    for (const auto& v : report.correlation) os << std::setw(17) << fmt(v, 6);
    os << "\n" << std::setw(28) << "entropy bits (cipher)";
    for (double v : report.entropy) os << std::setw(17) << fmt(v, 4);
    os << "\n" << std::setw(28) << "NPCR % (plain vs cipher)";
    for (double v : report.npcr) os << std::setw(17) << fmt(v, 2);
    os << "\n";
    if (report.key_sensitivity) {
        const KeySensitivityReport& ks = *report.key_sensitivity;
        os << "\nkey sensitivity (% bytes changed)\n";
        const std::pair<const char*, const std::optional<double>*> rows[] = {
            {"x0", &ks.x0}, {"y0", &ks.y0}, {"a1", &ks.a1}, {"a2", &ks.a2},
            {"a3", &ks.a3}, {"a4", &ks.a4}, {"c0", &ks.c0},
        };
        for (const auto& [label, value] : rows)
            os << "  " << std::setw(4) << label << fmt(*value, 2) << "\n";
    }
    return os.str();
}

}  // namespace chaocipher
