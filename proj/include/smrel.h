/* smrel — multiplicative-relation toolkit for singular moduli.
 *
 * C ABI over the C++ core: an opaque context carries configuration and the
 * last error message; every operation returns a status code and hands
 * results back as JSON text (schema_version 1) that the caller frees with
 * smrel_free_str.  All functions are safe to call from C.
 *
 * Thread-safety: contexts are independent; one context must not be used
 * from two threads at once. */

#ifndef SMREL_H
#define SMREL_H

#ifdef __cplusplus
extern "C" {
#endif

/* status codes */
#define SMREL_OK 0
#define SMREL_EDOMAIN 2        /* invalid argument / precondition broken */
#define SMREL_EPRECISION 3     /* precision ceiling hit before a decision */
#define SMREL_EBUDGET 4        /* search or recognition budget exhausted */
#define SMREL_EINDETERMINATE 5 /* neither provable nor refutable in budget */
#define SMREL_EPARSE 6         /* malformed input or report file */
#define SMREL_EINTERNAL 7      /* invariant violation inside the library */

typedef struct smrel_ctx smrel_ctx;

const char* smrel_version(void);

smrel_ctx* smrel_ctx_new(void);
void smrel_ctx_free(smrel_ctx* ctx);

/* message for the most recent failing call on this context; owned by the
 * context, valid until the next call */
const char* smrel_last_error(const smrel_ctx* ctx);

/* frees any string returned through a char** out parameter */
void smrel_free_str(char* s);

/* Configuration keys: precision_bits, delta_max, n_max, level_max,
 * order_max, worker_count, output_dir, surrogate.<name>.  Values are
 * decimal integers, a path, or a rational "p/q". */
int smrel_ctx_set(smrel_ctx* ctx, const char* key, const char* value);

/* folds in a KEY=VALUE config file (NULL: only $SMREL_CONFIG, if set) and
 * then SMREL_* environment overrides; explicit smrel_ctx_set calls made
 * afterwards win over both */
int smrel_ctx_load(smrel_ctx* ctx, const char* config_path);

/* Value designators accepted wherever a number is expected:
 *   "p" or "p/q"        an exact rational
 *   "<disc>:<index>"    conjugate <index> (0-based) of the singular moduli
 *                       of discriminant <disc>, e.g. "-23:0"            */

/* ---- class-field basics ------------------------------------------------ */

/* all discriminants 0 <= |D| <= bound with their class numbers */
int smrel_discriminants(smrel_ctx* ctx, long bound, char** out_json);

/* reduced binary quadratic forms of discriminant D */
int smrel_reduced_forms(smrel_ctx* ctx, long D, char** out_json);

/* Hilbert class polynomial of D, constant term first */
int smrel_class_poly(smrel_ctx* ctx, long D, char** out_json);

/* singular moduli of D: certified boxes, plus the exact integer when the
 * class number is 1 */
int smrel_singular_moduli(smrel_ctx* ctx, long D, char** out_json);

/* j(re + i*im) as a certified box at the configured precision */
int smrel_j_eval(smrel_ctx* ctx, const char* re, const char* im,
                 char** out_json);

/* ---- multiplicative relations ------------------------------------------ */

/* members: JSON array of value designators; exponent_bound: decimal string.
 * Emits a relation_certificate report; SMREL_EINDETERMINATE when neither a
 * relation nor its absence could be certified in budget. */
int smrel_relation_find(smrel_ctx* ctx, const char* members_json,
                        const char* exponent_bound, char** out_json);

/* re-verifies a written report of any kind; *out_ok = 1 when every claim
 * inside re-verifies */
int smrel_verify_report_file(smrel_ctx* ctx, const char* path, int* out_ok);

/* ---- modular polynomials and isogeny ----------------------------------- */

/* plain-text export of the level-n modular polynomial */
int smrel_modpoly_text(smrel_ctx* ctx, long level, char** out_text);

/* the same polynomial as a modular_polynomial report */
int smrel_modpoly_json(smrel_ctx* ctx, long level, char** out_json);

/* exact rational evaluation of the level-n modular polynomial */
int smrel_modpoly_eval(smrel_ctx* ctx, long level, const char* x,
                       const char* y, char** out_json);

/* minimal modular-equation level joining x and y within the configured
 * level budget; *out_level = 0 when none exists in budget */
int smrel_isogeny(smrel_ctx* ctx, const char* x, const char* y,
                  long* out_level);

/* ---- coset trees --------------------------------------------------------- */

/* elements are comma-separated integers: "a,b,d" (canonical upper-
 * triangular form) or "m00,m01,m10,m11" (any positive-determinant matrix) */
int smrel_tree_distance(smrel_ctx* ctx, long p, const char* g1,
                        const char* g2, long* out_distance);

/* elements_json: JSON array of element strings; emits a separation_witness
 * report whose vanishing pattern has exactly one hit */
int smrel_tree_separate(smrel_ctx* ctx, const char* elements_json,
                        char** out_json);

/* ---- searches ------------------------------------------------------------ */

/* minimal multiplicatively dependent tuples of singular moduli within the
 * configured delta_max/n_max; search_report JSON */
int smrel_search_singular_dependent(smrel_ctx* ctx, int rational_only,
                                    char** out_json);

/* sigma1 * sigma2 = 1 scan up to the configured delta_max; search_report */
int smrel_search_pair_product(smrel_ctx* ctx, char** out_json);

/* root-of-unity pairs joined by a modular equation, orders <= order_max,
 * levels <= level_max; modular_pair_report JSON */
int smrel_search_modular_pairs(smrel_ctx* ctx, char** out_json);

/* ---- complexity reports --------------------------------------------------- */

/* members: JSON array of designators recognized as singular moduli within
 * the configured delta_max; complexity_report JSON */
int smrel_complexity_tuple(smrel_ctx* ctx, const char* members_json,
                           char** out_json);

/* minimal modular-dependent complexity of a pair; JSON "null" when no
 * witness exists within the budgets */
int smrel_complexity_pair(smrel_ctx* ctx, const char* x, const char* y,
                          char** out_json);

/* triple verification; variant 2 = unity-anchored isogenous triple,
 * variant 4 = recognized-modulus triple; JSON "null" when the conditions
 * do not hold within the budgets */
int smrel_verify_triple(smrel_ctx* ctx, int variant, const char* x1,
                        const char* x2, const char* x3, char** out_json);

/* ---- persistence ----------------------------------------------------------- */

/* canonicalizes report_json and writes it content-addressed into the
 * configured output_dir; returns the file path */
int smrel_write_report(smrel_ctx* ctx, const char* report_json,
                       char** out_path);

#ifdef __cplusplus
}
#endif

#endif /* SMREL_H */
