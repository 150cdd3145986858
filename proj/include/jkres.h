#ifndef JKRES_H
#define JKRES_H

/* C interface to the exact residue library. All data crosses the boundary as
 * JSON text or opaque handles; every function returns a status code and the
 * thread-local jkres_last_error() carries the diagnostic for failures.
 *
 * Status codes:
 *   JKRES_OK        success
 *   JKRES_EPARSE    malformed input (JSON, schemas, class expressions)
 *   JKRES_EPRECOND  well-formed input violating an operation's precondition
 *   JKRES_EINTERNAL unexpected internal failure
 *
 * Strings returned through char** are NUL-terminated, heap-allocated, and
 * must be released with jkres_string_free.
 */

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define JKRES_OK 0
#define JKRES_EPARSE 2
#define JKRES_EPRECOND 3
#define JKRES_EINTERNAL 4

const char* jkres_version(void);

/* Thread-local description of the most recent failure in this thread. */
const char* jkres_last_error(void);

void jkres_string_free(char* s);

/* Perturbation-stream seed (env JKRES_SEED equivalent) and worker cap. */
void jkres_set_seed(uint64_t seed);
void jkres_set_threads(int threads);

/* ---- Fraction sums -------------------------------------------------- */

typedef struct jkres_fraction_sum jkres_fraction_sum;

int jkres_fraction_parse(const char* json, jkres_fraction_sum** out);
int jkres_fraction_dump(const jkres_fraction_sum* f, char** json_out);
int jkres_fraction_equal(const jkres_fraction_sum* a, const jkres_fraction_sum* b,
                         int* equal_out);
void jkres_fraction_free(jkres_fraction_sum* f);

/* ---- Residue operations --------------------------------------------- */

/* Jeffrey-Kirwan residue of the sum with respect to an ordered basis
 * (JSON: {"vectors": [[...]], "frame": optional}). */
int jkres_jk_res(const jkres_fraction_sum* f, const char* basis_json,
                 jkres_fraction_sum** result);

/* Equivariant residue along the first `split` coordinates. */
int jkres_eq_res(const jkres_fraction_sum* f, const char* basis_json, int split,
                 jkres_fraction_sum** result);

/* Localization drivers. `points_json`/`group_json` follow the fixed-point and
 * group schemas; mode is "abelian", "nonabelian" or "hyperkahler". The result
 * is {"value": <fraction sum>, "metadata": {...}} with the chamber direction
 * recorded when a perturbation was drawn. */
int jkres_integrate(const char* points_json, const char* group_json, const char* mode,
                    char** result_json);

/* ---- Hilbert scheme of n points on C^2 ------------------------------ */

/* `class_expr` uses identifiers C1..Cn and sigma, rational literals, and
 * + - * ^ with parentheses. `method` is "formula", "eqres" or "oracle". */
int jkres_hilb_integrate(const char* class_expr, int n, int N, const char* method,
                         char** result_json);
int jkres_hilb_kernel(const char* class_expr, int n, int N, int* member_out);
int jkres_hilb_rank(int n, int N, int degree_bound, int* rank_out);

/* Per-partition table {"(lam)": {"p": ["-1", ...], "b": {...}}}. */
int jkres_hilb_table(int n, int N, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* JKRES_H */
