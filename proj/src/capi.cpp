#include "smrel.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "smrel/config.hpp"
#include "smrel/modpoly.hpp"
#include "smrel/relations.hpp"
#include "smrel/search.hpp"
#include "smrel/serialize.hpp"
#include "smrel/trees.hpp"
#include "smrel/util.hpp"

struct smrel_ctx {
    smrel::config::Config cfg;
    std::string last_error;
};

namespace {

using smrel::Error;
using smrel::ErrorKind;
using smrel::algnum::AlgebraicNumber;
using json = smrel::serialize::json;

int code_of(ErrorKind k) {
    switch (k) {
        case ErrorKind::domain_error: return SMREL_EDOMAIN;
        case ErrorKind::precision_exhausted: return SMREL_EPRECISION;
        case ErrorKind::budget_exhausted: return SMREL_EBUDGET;
        case ErrorKind::indeterminate: return SMREL_EINDETERMINATE;
        case ErrorKind::parse_error: return SMREL_EPARSE;
        case ErrorKind::internal_error: return SMREL_EINTERNAL;
    }
    return SMREL_EINTERNAL;
}

char* dup_str(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <class F>
int guarded(smrel_ctx* ctx, F&& body) {
    if (!ctx) return SMREL_EDOMAIN;
    ctx->last_error.clear();
    try {
        body();
        return SMREL_OK;
    } catch (const Error& e) {
        ctx->last_error = e.what();
        return code_of(e.kind());
    } catch (const std::bad_alloc&) {
        ctx->last_error = "out of memory";
        return SMREL_EINTERNAL;
    } catch (const std::exception& e) {
        ctx->last_error = e.what();
        return SMREL_EINTERNAL;
    }
}

void hand_back(const std::string& text, char** out) {
    if (!out) smrel::fail_domain("null output pointer");
    *out = dup_str(text);
}

/* emit a report as canonical JSON text */
void hand_back_json(const json& j, char** out) {
    hand_back(smrel::serialize::canonical_text(j), out);
}

template <class T>
T* require_out(T* p) {
    if (!p) smrel::fail_domain("null output pointer");
    return p;
}

std::vector<AlgebraicNumber> members_of(const char* members_json) {
    if (!members_json) smrel::fail_parse("null members array");
    json arr;
    try {
        arr = json::parse(members_json);
    } catch (const std::exception& e) {
        smrel::fail_parse(std::string("bad members array: ") + e.what());
    }
    if (!arr.is_array() || arr.empty())
        smrel::fail_parse("members must be a nonempty JSON array");
    std::vector<AlgebraicNumber> out;
    for (const json& e : arr) {
        if (!e.is_string())
            smrel::fail_parse("members must be designator strings");
        out.push_back(
            smrel::serialize::parse_value_designator(e.get<std::string>()));
    }
    return out;
}

const char* require(const char* s, const char* what) {
    if (!s) smrel::fail_parse(std::string("null ") + what);
    return s;
}

smrel::Prec work_prec(const smrel_ctx* ctx) {
    return (smrel::Prec)ctx->cfg.precision_bits;
}

smrel::Prec max_prec(const smrel_ctx* ctx) {
    long p = ctx->cfg.precision_bits;
    return (smrel::Prec)(p < 4096 ? 4096 : p);
}

}  // namespace

extern "C" {

const char* smrel_version(void) { return "1.0.0"; }

smrel_ctx* smrel_ctx_new(void) {
    try {
        return new smrel_ctx();
    } catch (...) {
        return nullptr;
    }
}

void smrel_ctx_free(smrel_ctx* ctx) { delete ctx; }

const char* smrel_last_error(const smrel_ctx* ctx) {
    return ctx ? ctx->last_error.c_str() : "null context";
}

void smrel_free_str(char* s) { std::free(s); }

int smrel_ctx_set(smrel_ctx* ctx, const char* key, const char* value) {
    return guarded(ctx, [&] {
        smrel::config::Config next = ctx->cfg;
        smrel::config::apply_kv(next, require(key, "key"),
                                require(value, "value"));
        smrel::config::validate(next);
        ctx->cfg = std::move(next);
    });
}

int smrel_ctx_load(smrel_ctx* ctx, const char* config_path) {
    return guarded(ctx, [&] {
        ctx->cfg = smrel::config::load(
            {}, config_path ? std::string(config_path) : std::string());
    });
}

int smrel_discriminants(smrel_ctx* ctx, long bound, char** out_json) {
    return guarded(ctx, [&] {
        hand_back_json(smrel::serialize::query_discriminants_json(bound),
                       require_out(out_json));
    });
}

int smrel_reduced_forms(smrel_ctx* ctx, long D, char** out_json) {
    return guarded(ctx, [&] {
        hand_back_json(smrel::serialize::query_forms_json(D),
                       require_out(out_json));
    });
}

int smrel_class_poly(smrel_ctx* ctx, long D, char** out_json) {
    return guarded(ctx, [&] {
        hand_back_json(smrel::serialize::query_class_poly_json(D),
                       require_out(out_json));
    });
}

int smrel_singular_moduli(smrel_ctx* ctx, long D, char** out_json) {
    return guarded(ctx, [&] {
        hand_back_json(smrel::serialize::query_moduli_json(D, work_prec(ctx)),
                       require_out(out_json));
    });
}

int smrel_j_eval(smrel_ctx* ctx, const char* re, const char* im,
                 char** out_json) {
    return guarded(ctx, [&] {
        hand_back_json(smrel::serialize::query_j_eval_json(
                           require(re, "re"), require(im, "im"),
                           work_prec(ctx)),
                       require_out(out_json));
    });
}

int smrel_relation_find(smrel_ctx* ctx, const char* members_json,
                        const char* exponent_bound, char** out_json) {
    return guarded(ctx, [&] {
        require_out(out_json);
        std::vector<AlgebraicNumber> members = members_of(members_json);
        mpz_class bound;
        try {
            bound = mpz_class(require(exponent_bound, "exponent bound"));
        } catch (const std::exception&) {
            smrel::fail_parse("bad exponent bound");
        }
        if (bound < 1) smrel::fail_domain("exponent bound must be >= 1");
        smrel::relations::Options opt;
        opt.max_precision = max_prec(ctx);
        auto cert = smrel::relations::find_relation(members, bound, opt);
        if (!cert)
            smrel::fail_domain(
                "certified: no relation with exponents bounded by " +
                bound.get_str());
        json j = smrel::serialize::certificate_json(
            members, *cert,
            {{"members", members_json},
             {"exponent_bound", bound.get_str()},
             {"max_precision", std::to_string((long)opt.max_precision)}});
        hand_back_json(j, out_json);
    });
}

int smrel_verify_report_file(smrel_ctx* ctx, const char* path, int* out_ok) {
    return guarded(ctx, [&] {
        require_out(out_ok);
        json j = smrel::serialize::read_report(require(path, "path"));
        *out_ok = smrel::serialize::verify_report(j) ? 1 : 0;
    });
}

int smrel_modpoly_text(smrel_ctx* ctx, long level, char** out_text) {
    return guarded(ctx, [&] {
        const auto& f = smrel::modpoly::modular_polynomial(
            level, level < ctx->cfg.N_max ? ctx->cfg.N_max : level);
        hand_back(smrel::modpoly::to_text(f), require_out(out_text));
    });
}

int smrel_modpoly_json(smrel_ctx* ctx, long level, char** out_json) {
    return guarded(ctx, [&] {
        hand_back_json(smrel::serialize::query_modpoly_json(level),
                       require_out(out_json));
    });
}

int smrel_modpoly_eval(smrel_ctx* ctx, long level, const char* x,
                       const char* y, char** out_json) {
    return guarded(ctx, [&] {
        hand_back_json(smrel::serialize::query_modpoly_eval_json(
                           level, require(x, "x"), require(y, "y")),
                       require_out(out_json));
    });
}

int smrel_isogeny(smrel_ctx* ctx, const char* x, const char* y,
                  long* out_level) {
    return guarded(ctx, [&] {
        require_out(out_level);
        json j = smrel::serialize::query_isogeny_json(
            ctx->cfg.N_max, max_prec(ctx), require(x, "x"), require(y, "y"));
        *out_level = j.at("payload").at("level").get<long>();
    });
}

int smrel_tree_distance(smrel_ctx* ctx, long p, const char* g1,
                        const char* g2, long* out_distance) {
    return guarded(ctx, [&] {
        require_out(out_distance);
        json j = smrel::serialize::query_tree_distance_json(
            p, require(g1, "g1"), require(g2, "g2"));
        *out_distance = j.at("payload").at("distance").get<long>();
    });
}

int smrel_tree_separate(smrel_ctx* ctx, const char* elements_json,
                        char** out_json) {
    return guarded(ctx, [&] {
        require_out(out_json);
        json arr;
        try {
            arr = json::parse(require(elements_json, "elements"));
        } catch (const std::exception& e) {
            smrel::fail_parse(std::string("bad elements array: ") + e.what());
        }
        if (!arr.is_array() || arr.empty())
            smrel::fail_parse("elements must be a nonempty JSON array");
        std::vector<smrel::trees::GL2QElement> gs;
        for (const json& e : arr) {
            if (!e.is_string())
                smrel::fail_parse("elements must be \"a,b,d\" strings");
            gs.push_back(smrel::serialize::parse_tree_element(
                e.get<std::string>()));
        }
        smrel::trees::SeparationWitness w = smrel::trees::separate(gs);
        hand_back_json(smrel::serialize::witness_json(gs, w), out_json);
    });
}

int smrel_search_singular_dependent(smrel_ctx* ctx, int rational_only,
                                    char** out_json) {
    return guarded(ctx, [&] {
        require_out(out_json);
        smrel::search::SearchOptions opt;
        opt.delta_max = ctx->cfg.delta_max;
        opt.n_max = ctx->cfg.n_max;
        opt.rational_only = rational_only != 0;
        opt.max_precision = max_prec(ctx);
        smrel::search::SearchReport rep =
            smrel::search::singular_dependent_search(opt);
        hand_back_json(smrel::serialize::search_report_json(rep), out_json);
    });
}

int smrel_search_pair_product(smrel_ctx* ctx, char** out_json) {
    return guarded(ctx, [&] {
        require_out(out_json);
        smrel::search::SearchReport rep =
            smrel::search::pair_product_check(ctx->cfg.delta_max);
        hand_back_json(smrel::serialize::search_report_json(rep), out_json);
    });
}

int smrel_search_modular_pairs(smrel_ctx* ctx, char** out_json) {
    return guarded(ctx, [&] {
        require_out(out_json);
        smrel::modpoly::PairSearchOutcome o =
            smrel::modpoly::modular_pair_search(ctx->cfg.M_max,
                                                ctx->cfg.N_max);
        hand_back_json(smrel::serialize::pair_report_json(
                           o, ctx->cfg.M_max, ctx->cfg.N_max),
                       out_json);
    });
}

int smrel_complexity_tuple(smrel_ctx* ctx, const char* members_json,
                           char** out_json) {
    return guarded(ctx, [&] {
        require_out(out_json);
        std::vector<AlgebraicNumber> members = members_of(members_json);
        smrel::search::ComplexityReport r =
            smrel::search::complexity_of_tuple(members, ctx->cfg.delta_max);
        hand_back_json(smrel::serialize::complexity_json(r), out_json);
    });
}

int smrel_complexity_pair(smrel_ctx* ctx, const char* x, const char* y,
                          char** out_json) {
    return guarded(ctx, [&] {
        require_out(out_json);
        AlgebraicNumber ax =
            smrel::serialize::parse_value_designator(require(x, "x"));
        AlgebraicNumber ay =
            smrel::serialize::parse_value_designator(require(y, "y"));
        smrel::search::PairBudgets budgets;
        budgets.n_max = ctx->cfg.N_max;
        budgets.max_precision = max_prec(ctx);
        auto r = smrel::search::modular_dependent_complexity(ax, ay, budgets);
        if (!r) {
            hand_back("null\n", out_json);
            return;
        }
        hand_back_json(smrel::serialize::complexity_json(*r), out_json);
    });
}

int smrel_verify_triple(smrel_ctx* ctx, int variant, const char* x1,
                        const char* x2, const char* x3, char** out_json) {
    return guarded(ctx, [&] {
        require_out(out_json);
        AlgebraicNumber a1 =
            smrel::serialize::parse_value_designator(require(x1, "x1"));
        AlgebraicNumber a2 =
            smrel::serialize::parse_value_designator(require(x2, "x2"));
        AlgebraicNumber a3 =
            smrel::serialize::parse_value_designator(require(x3, "x3"));
        smrel::search::TripleBudgets budgets;
        budgets.n_max = ctx->cfg.N_max;
        budgets.disc_budget = ctx->cfg.delta_max;
        budgets.max_precision = max_prec(ctx);
        std::optional<smrel::search::ComplexityReport> r;
        if (variant == 2)
            r = smrel::search::verify_triple_8_2(a1, a2, a3, budgets);
        else if (variant == 4)
            r = smrel::search::verify_triple_8_4(a1, a2, a3, budgets);
        else
            smrel::fail_domain("variant must be 2 or 4");
        if (!r) {
            hand_back("null\n", out_json);
            return;
        }
        hand_back_json(smrel::serialize::complexity_json(*r), out_json);
    });
}

int smrel_write_report(smrel_ctx* ctx, const char* report_json,
                       char** out_path) {
    return guarded(ctx, [&] {
        require_out(out_path);
        json j;
        try {
            j = json::parse(require(report_json, "report"));
        } catch (const std::exception& e) {
            smrel::fail_parse(std::string("malformed report: ") + e.what());
        }
        hand_back(smrel::serialize::write_report(j, ctx->cfg.output_dir),
                  out_path);
    });
}

}  // extern "C"
