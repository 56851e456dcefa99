#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace smrel::config {

/* Runtime knobs shared by the CLI and the C API.  Budgets size searches
 * and reports; none of them weakens a certificate (a tighter budget can
 * only turn an answer into "indeterminate" or a partial report).
 *
 * Sources, strongest first: explicit flags, then SMREL_* environment
 * variables, then a KEY=VALUE config file. */
struct Config {
    long precision_bits = 128;  /* working precision floor for numerics */
    long delta_max = 200;       /* discriminant magnitude bound */
    long n_max = 5;             /* tuple-size bound for dependence searches */
    long N_max = 10;            /* modular-equation level budget */
    long M_max = 12;            /* root-of-unity order budget */
    long worker_count = 1;      /* parallel candidate cap */
    std::string output_dir = ".";
    /* positive rationals scaling the heuristic search-sizing formulas;
     * absent names default to 1 */
    std::map<std::string, mpq_class> surrogate_constants;
};

/* fails domain unless precision_bits >= 64, every bound is positive, and
 * every surrogate constant is positive */
void validate(const Config& c);

/* surrogate constant by name, defaulting to 1 */
mpq_class surrogate(const Config& c, const std::string& name);

/* Recognized keys (file and flag layers use these spellings):
 *   precision_bits, delta_max, n_max, level_max (N_max), order_max (M_max),
 *   worker_count, output_dir, surrogate.<name>
 * Values are decimal integers, a path, or a rational "p/q".  Unknown keys
 * or unparsable values fail parse. */
void apply_kv(Config& c, const std::string& key, const std::string& value);

/* KEY=VALUE lines; blank lines and lines starting with '#' are skipped */
void apply_file(Config& c, const std::string& path);

/* SMREL_PRECISION_BITS, SMREL_DELTA_MAX, SMREL_N_MAX, SMREL_LEVEL_MAX,
 * SMREL_ORDER_MAX, SMREL_WORKER_COUNT, SMREL_OUTPUT_DIR, and
 * SMREL_SURROGATE_<NAME> (name lowercased) */
void apply_env(Config& c);

/* defaults <- config file (explicit path, else $SMREL_CONFIG if set)
 * <- environment <- flags; validated before returning */
Config load(const std::vector<std::pair<std::string, std::string>>& flag_kv,
            const std::string& config_path = "");

}  // namespace smrel::config
