#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "smrel/algnum.hpp"
#include "smrel/modpoly.hpp"
#include "smrel/relations.hpp"
#include "smrel/search.hpp"
#include "smrel/trees.hpp"

namespace smrel::serialize {

using json = nlohmann::json;
using algnum::AlgebraicNumber;

/* Report schema, version 1.  Top level is always
 *   { schema_version, kind, parameters, payload, verification }
 * Arbitrary-size integers are decimal strings; polynomial coefficient
 * lists run constant term first; embedding boxes carry round-trippable
 * midpoint strings plus their precision.  No timestamps and no binary
 * floats anywhere, so identical inputs serialize byte-identically. */

/* defining polynomial + isolating box; algnum_from_json reconstructs the
 * identical value */
json algnum_json(const AlgebraicNumber& a, Prec box_prec = 128);
AlgebraicNumber algnum_from_json(const json& j);

json certificate_json(
    const std::vector<AlgebraicNumber>& members,
    const relations::RelationCertificate& cert,
    const std::vector<std::pair<std::string, std::string>>& parameters);

struct ParsedCertificate {
    std::vector<AlgebraicNumber> members;
    std::vector<mpz_class> exponents;
    std::string mode;
    Prec numeric_precision = 0;
};
ParsedCertificate certificate_from_json(const json& j);

json witness_json(const std::vector<trees::GL2QElement>& gs,
                  const trees::SeparationWitness& w);

json complexity_json(const search::ComplexityReport& r);
json search_report_json(const search::SearchReport& rep);
json pair_report_json(const modpoly::PairSearchOutcome& o, long m_max,
                      long n_max);

/* Value designator: "p", "p/q", or "<disc>:<index>" for a conjugate of
 * the singular moduli of <disc>.  Fails parse on anything else. */
AlgebraicNumber parse_value_designator(const std::string& s);

/* "a,b,d" (upper triangular) or "m00,m01,m10,m11"; canonicalized */
trees::GL2QElement parse_tree_element(const std::string& csv);

/* Pure-query reports.  Each is a deterministic function of its parameters,
 * so verify_report re-runs the query and compares payloads. */
json query_discriminants_json(long bound);
json query_forms_json(long D);
json query_class_poly_json(long D);
json query_moduli_json(long D, Prec p);
json query_j_eval_json(const std::string& re, const std::string& im, Prec p);
json query_modpoly_json(long level);
json query_modpoly_eval_json(long level, const std::string& x,
                             const std::string& y);
json query_isogeny_json(long level_max, Prec max_precision,
                        const std::string& x, const std::string& y);
json query_tree_distance_json(long p, const std::string& g1,
                              const std::string& g2);

/* canonical byte form: sorted keys, two-space indent, trailing newline */
std::string canonical_text(const json& j);

/* writes canonical_text to <output_dir>/<fnv1a-hash>.json (content-
 * addressed); creates the directory if missing; returns the path */
std::string write_report(const json& j, const std::string& output_dir);

/* fails parse unless the file exists, parses, and is schema version 1 */
json read_report(const std::string& path);

/* Re-verification of a previously written report, by kind:
 * relation certificates re-run the relation check on reconstructed
 * members; search reports re-check every finding plus its complexity
 * aggregate; separation witnesses re-run the exact vanishing test per
 * index; modular-pair reports re-verify each pair in exact cyclotomic
 * arithmetic.  Returns true when every enclosed claim re-verifies. */
bool verify_report(const json& j);

}  // namespace smrel::serialize
