#include "chaocipher/keyfile.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "chaocipher/errors.hpp"

namespace chaocipher {

namespace {

using nlohmann::json;

double parse_real_text(const std::string& text, const std::string& field) {
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw KeyError("key field '" + field + "' is not a decimal real: \"" + text + "\"");
    if (!std::isfinite(v))
        throw KeyError("key field '" + field + "' is not finite: \"" + text + "\"");
    return v;
}

double read_real(const json& j, const std::string& field) {
    if (!j.contains(field)) throw KeyError("key file is missing field '" + field + "'");
    const json& v = j.at(field);
    if (v.is_string()) return parse_real_text(v.get<std::string>(), field);
    if (v.is_number()) {
        const double d = v.get<double>();
        if (!std::isfinite(d))
            throw KeyError("key field '" + field + "' is not finite");
        return d;
    }
    throw KeyError("key field '" + field + "' must be a decimal string or number");
}

std::uint8_t read_c0(const json& j) {
    if (!j.contains("c0")) throw KeyError("key file is missing field 'c0'");
    const json& v = j.at("c0");
    long long n = -1;
    if (v.is_number_integer()) {
        n = v.get<long long>();
    } else if (v.is_string()) {
        const std::string text = v.get<std::string>();
        const char* begin = text.c_str();
        char* end = nullptr;
        errno = 0;
        n = std::strtoll(begin, &end, 10);
        if (end == begin || *end != '\0' || errno == ERANGE)
            throw KeyError("key field 'c0' is not an integer: \"" + text + "\"");
    } else {
        throw KeyError("key field 'c0' must be an integer in [0, 255]");
    }
    if (n < 0 || n > 255)
        throw KeyError("key field 'c0' must be in [0, 255], got " + std::to_string(n));
    return static_cast<std::uint8_t>(n);
}

// Shortest decimal string that round-trips to the exact binary64 value.
std::string real_string(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

CipherKey parse_key(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw KeyError(std::string("key file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw KeyError("key file must be a flat JSON object");

    CipherKey key;
    key.chaos.x0 = read_real(j, "x0");
    key.chaos.y0 = read_real(j, "y0");
    key.chaos.a1 = read_real(j, "a1");
    key.chaos.a2 = read_real(j, "a2");
    key.chaos.a3 = read_real(j, "a3");
    key.chaos.a4 = read_real(j, "a4");
    key.c0 = read_c0(j);
    return key;
}

CipherKey load_key(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw KeyError("cannot open key file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_key(buf.str());
}

std::string format_key(const CipherKey& key) {
    nlohmann::ordered_json j;
    j["x0"] = real_string(key.chaos.x0);
    j["y0"] = real_string(key.chaos.y0);
    j["a1"] = real_string(key.chaos.a1);
    j["a2"] = real_string(key.chaos.a2);
    j["a3"] = real_string(key.chaos.a3);
    j["a4"] = real_string(key.chaos.a4);
    j["c0"] = static_cast<int>(key.c0);
    return j.dump(2) + "\n";
}

void save_key(const CipherKey& key, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw KeyError("cannot write key file: " + path.string());
    out << format_key(key);
    if (!out) throw KeyError("write failed: " + path.string());
}

}  // namespace chaocipher
