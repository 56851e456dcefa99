#include "smrel/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>

#include "smrel/util.hpp"

extern char** environ;

namespace smrel::config {

namespace {

long parse_long(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        long v = std::stol(value, &used);
        if (used != value.size()) fail_parse("trailing junk in " + key);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        fail_parse("expected an integer for " + key + ", got \"" + value + "\"");
    }
}

mpq_class parse_rational(const std::string& key, const std::string& value) {
    mpq_class q;
    if (q.set_str(value, 10) != 0)
        fail_parse("expected a rational for " + key + ", got \"" + value + "\"");
    q.canonicalize();
    return q;
}

std::string lowercased(std::string s) {
    for (char& ch : s) ch = (char)std::tolower((unsigned char)ch);
    return s;
}

}  // namespace

void validate(const Config& c) {
    if (c.precision_bits < 64)
        fail_domain("precision_bits must be at least 64");
    if (c.delta_max <= 0 || c.n_max <= 0 || c.N_max <= 0 || c.M_max <= 0 ||
        c.worker_count <= 0)
        fail_domain("all bounds must be positive");
    for (const auto& [name, v] : c.surrogate_constants)
        if (v <= 0)
            fail_domain("surrogate constant " + name + " must be positive");
}

mpq_class surrogate(const Config& c, const std::string& name) {
    auto it = c.surrogate_constants.find(name);
    return it == c.surrogate_constants.end() ? mpq_class(1) : it->second;
}

void apply_kv(Config& c, const std::string& key, const std::string& value) {
    if (key == "precision_bits") c.precision_bits = parse_long(key, value);
    else if (key == "delta_max") c.delta_max = parse_long(key, value);
    else if (key == "n_max") c.n_max = parse_long(key, value);
    else if (key == "level_max") c.N_max = parse_long(key, value);
    else if (key == "order_max") c.M_max = parse_long(key, value);
    else if (key == "worker_count") c.worker_count = parse_long(key, value);
    else if (key == "output_dir") c.output_dir = value;
    else if (key.rfind("surrogate.", 0) == 0) {
        std::string name = key.substr(10);
        if (name.empty()) fail_parse("surrogate key needs a name");
        c.surrogate_constants[name] = parse_rational(key, value);
    } else {
        fail_parse("unknown configuration key \"" + key + "\"");
    }
}

void apply_file(Config& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) fail_parse("cannot open config file " + path);
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos || line[b] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail_parse(path + ":" + std::to_string(lineno) +
                       ": expected KEY=VALUE");
        auto trim = [](std::string s) {
            size_t x = s.find_first_not_of(" \t\r");
            size_t y = s.find_last_not_of(" \t\r");
            return x == std::string::npos ? std::string()
                                          : s.substr(x, y - x + 1);
        };
        apply_kv(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void apply_env(Config& c) {
    static const std::map<std::string, std::string> direct = {
        {"SMREL_PRECISION_BITS", "precision_bits"},
        {"SMREL_DELTA_MAX", "delta_max"},
        {"SMREL_N_MAX", "n_max"},
        {"SMREL_LEVEL_MAX", "level_max"},
        {"SMREL_ORDER_MAX", "order_max"},
        {"SMREL_WORKER_COUNT", "worker_count"},
        {"SMREL_OUTPUT_DIR", "output_dir"},
    };
    for (const auto& [env, key] : direct)
        if (const char* v = std::getenv(env.c_str())) apply_kv(c, key, v);
    for (char** e = environ; e && *e; ++e) {
        std::string entry(*e);
        if (entry.rfind("SMREL_SURROGATE_", 0) != 0) continue;
        size_t eq = entry.find('=');
        if (eq == std::string::npos) continue;
        std::string name = lowercased(entry.substr(16, eq - 16));
        if (name.empty()) continue;
        apply_kv(c, "surrogate." + name, entry.substr(eq + 1));
    }
}

Config load(const std::vector<std::pair<std::string, std::string>>& flag_kv,
            const std::string& config_path) {
    Config c;
    std::string path = config_path;
    if (path.empty())
        if (const char* v = std::getenv("SMREL_CONFIG")) path = v;
    if (!path.empty()) apply_file(c, path);
    apply_env(c);
    for (const auto& [k, v] : flag_kv) apply_kv(c, k, v);
    validate(c);
    return c;
}

}  // namespace smrel::config
