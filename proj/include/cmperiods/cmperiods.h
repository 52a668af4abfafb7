/* C interface to the period / regulator toolkit.
 *
 * All computation is driven by a JSON run configuration:
 *
 *   {
 *     "command": "verify",            // validate | period | regulator |
 *                                     // orbit | monodromy | verify
 *     "exponents": {"alpha": ["0", "0"], "beta": ["1/2", "1/2"]},
 *     "character": {"k": 1, "l": 3},
 *     "polynomial": {"p0": [], "p1": ["-1", "1"]},   // optional, default t-1
 *     "m": 1,                          // optional
 *     "precision": 256,                // optional, bits, 64..768
 *     "multiplier": "1",               // optional rational or {re, im}
 *     "constants": {"lambda1": {...}, "lambda2": {...}},  // optional
 *     "output": {"format": "json"}     // json | csv
 *   }
 *
 * Rationals are strings like "2/3" or "-1". Reports embed the hash of the
 * effective configuration and the working precision and contain no
 * timestamps: identical configurations produce identical bytes.
 */
#ifndef CMPERIODS_H
#define CMPERIODS_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cmp_status {
    CMP_OK = 0,           /* command ran, every check passed */
    CMP_CHECK_FAILED = 1, /* command ran, report contains failures */
    CMP_CONFIG_ERROR = 2, /* configuration malformed or out of range */
    CMP_EVAL_ERROR = 3    /* data rejected during evaluation (pole, reducible
                             system, exhausted search, ...) */
} cmp_status;

typedef struct cmp_session cmp_session;

/* Library version string, static storage. */
const char* cmp_version(void);

/* precision: default working precision in bits for configurations that do
 * not set one; 0 keeps the library default. Never fails. */
cmp_session* cmp_session_create(unsigned precision);
void cmp_session_destroy(cmp_session* s);

/* Message for the last CMP_CONFIG_ERROR / CMP_EVAL_ERROR on this session;
 * empty string if none. Owned by the session. */
const char* cmp_session_last_error(const cmp_session* s);

/* Executes the configured command. On CMP_OK / CMP_CHECK_FAILED a rendered
 * report (JSON or CSV per the config) is stored in *report_out; release it
 * with cmp_string_free. On error *report_out is set to NULL and details are
 * available via cmp_session_last_error. */
cmp_status cmp_run(cmp_session* s, const char* config_json, char** report_out);

/* Hash of the effective configuration, 16 lowercase hex digits; same rules
 * as the "config_hash" field of reports. */
cmp_status cmp_config_hash(cmp_session* s, const char* config_json, char** hash_out);

void cmp_string_free(char* p);

#ifdef __cplusplus
}
#endif

#endif /* CMPERIODS_H */
