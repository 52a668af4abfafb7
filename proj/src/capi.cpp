#include "cmperiods/cmperiods.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "errors.hpp"
#include "report.hpp"

struct cmp_session {
    unsigned precision = 0;
    std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

cmp_status fail(cmp_session* s, cmp_status st, const std::string& msg) {
    if (s) s->last_error = msg;
    return st;
}

cmp_status status_of(const cmp::Error& e) {
    return e.code() == cmp::Err::Config ? CMP_CONFIG_ERROR : CMP_EVAL_ERROR;
}

}  // namespace

extern "C" {

const char* cmp_version(void) { return cmp::report::kVersion; }

cmp_session* cmp_session_create(unsigned precision) {
    auto* s = new (std::nothrow) cmp_session;
    if (s) s->precision = precision;
    return s;
}

void cmp_session_destroy(cmp_session* s) { delete s; }

const char* cmp_session_last_error(const cmp_session* s) {
    return s ? s->last_error.c_str() : "";
}

cmp_status cmp_run(cmp_session* s, const char* config_json, char** report_out) {
    if (report_out) *report_out = nullptr;
    if (!s || !config_json || !report_out)
        return fail(s, CMP_CONFIG_ERROR, "cmp_run requires a session, a config and an output slot");
    try {
        cmp::report::RunConfig cfg = cmp::report::parse_config(config_json);
        if (!cfg.precision_explicit && s->precision != 0) {
            if (s->precision < cmp::kMinPrec || s->precision > cmp::kMaxPrec)
                return fail(s, CMP_CONFIG_ERROR, "session precision out of range");
            cfg.precision = s->precision;
        }
        cmp::report::RunResult rr = cmp::report::run(cfg);
        *report_out = dup_string(rr.report);
        if (!*report_out) return fail(s, CMP_EVAL_ERROR, "out of memory");
        s->last_error.clear();
        return rr.exit_code == 0 ? CMP_OK : CMP_CHECK_FAILED;
    } catch (const cmp::Error& e) {
        return fail(s, status_of(e), std::string(cmp::err_name(e.code())) + ": " + e.what());
    } catch (const std::exception& e) {
        return fail(s, CMP_EVAL_ERROR, std::string("internal error: ") + e.what());
    }
}

cmp_status cmp_config_hash(cmp_session* s, const char* config_json, char** hash_out) {
    if (hash_out) *hash_out = nullptr;
    if (!s || !config_json || !hash_out)
        return fail(s, CMP_CONFIG_ERROR, "cmp_config_hash requires a session, a config and an output slot");
    try {
        cmp::report::RunConfig cfg = cmp::report::parse_config(config_json);
        if (!cfg.precision_explicit && s->precision != 0 && s->precision >= cmp::kMinPrec &&
            s->precision <= cmp::kMaxPrec)
            cfg.precision = s->precision;
        *hash_out = dup_string(cmp::report::config_hash_hex(cfg));
        if (!*hash_out) return fail(s, CMP_EVAL_ERROR, "out of memory");
        s->last_error.clear();
        return CMP_OK;
    } catch (const cmp::Error& e) {
        return fail(s, status_of(e), std::string(cmp::err_name(e.code())) + ": " + e.what());
    } catch (const std::exception& e) {
        return fail(s, CMP_EVAL_ERROR, std::string("internal error: ") + e.what());
    }
}

void cmp_string_free(char* p) { std::free(p); }

}  // extern "C"
