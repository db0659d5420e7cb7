#ifndef DEPCHOICE_H
#define DEPCHOICE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DcStatus {
  DC_STATUS_OK = 0,
  DC_STATUS_NULL_POINTER = 1,
  DC_STATUS_INVALID_UTF8 = 2,
  DC_STATUS_PARSE = 3,
  DC_STATUS_VALIDATION = 4,
  DC_STATUS_CAP_EXCEEDED = 5,
  DC_STATUS_UNSATISFIABLE = 6,
  DC_STATUS_OUT_OF_RANGE = 7,
  DC_STATUS_OTHER = 8,
  DC_STATUS_PANIC = 9,
} DcStatus;

/**
 * Trace completion of an rdp, with Merkle digests.
 */
typedef struct DcBl DcBl;

/**
 * Lattice of reachable states of a repository.
 */
typedef struct DcRdp DcRdp;

/**
 * An ingested repository: completed structure, versions and conflicts.
 */
typedef struct DcRepo DcRepo;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copy of the last error message on this thread, or NULL if there is none.
 * Free with `dc_string_free`.
 */
char *dc_last_error(void);

/**
 * # Safety
 * `s` must be NULL or a string returned by this library and not yet freed.
 */
void dc_string_free(char *s);

/**
 * Parses, completes and validates a repository given as TOML text.
 *
 * # Safety
 * `toml` must be a NUL-terminated string; `out` must be writable.
 */
enum DcStatus dc_repo_parse(const char *toml, struct DcRepo **out);

/**
 * # Safety
 * `repo` must be NULL or a handle from `dc_repo_parse` not yet freed.
 */
void dc_repo_free(struct DcRepo *repo);

/**
 * Number of events left after completion.
 *
 * # Safety
 * `repo` must be a live handle; `out` must be writable.
 */
enum DcStatus dc_repo_event_count(const struct DcRepo *repo, size_t *out);

/**
 * # Safety
 * `repo` must be a live handle; `out` must be writable.
 */
enum DcStatus dc_rdp_build(const struct DcRepo *repo, size_t max_states, struct DcRdp **out);

/**
 * # Safety
 * `rdp` must be NULL or a handle from `dc_rdp_build` not yet freed.
 */
void dc_rdp_free(struct DcRdp *rdp);

/**
 * # Safety
 * `rdp` must be a live handle; `out` must be writable.
 */
enum DcStatus dc_rdp_len(const struct DcRdp *rdp, size_t *out);

/**
 * Label of element `index`, such as `{a,b}`. Free with `dc_string_free`.
 *
 * # Safety
 * `rdp` must be a live handle; `out` must be writable.
 */
enum DcStatus dc_rdp_element(const struct DcRdp *rdp, size_t index, char **out);

/**
 * Builds the trace completion of `rdp` with digests attached.
 *
 * # Safety
 * `rdp` must be a live handle; `out` must be writable.
 */
enum DcStatus dc_bl_build(const struct DcRdp *rdp, struct DcBl **out);

/**
 * # Safety
 * `bl` must be NULL or a handle from `dc_bl_build` not yet freed.
 */
void dc_bl_free(struct DcBl *bl);

/**
 * # Safety
 * `bl` must be a live handle; `out` must be writable.
 */
enum DcStatus dc_bl_len(const struct DcBl *bl, size_t *out);

/**
 * # Safety
 * `bl` must be a live handle; `out` must be writable.
 */
enum DcStatus dc_bl_trace_count(const struct DcBl *bl, size_t *out);

/**
 * Name of trace `index` (`a[b]`) and its digest as 64 hex digits.
 * Free both strings with `dc_string_free`.
 *
 * # Safety
 * `bl` must be a live handle; `name` and `digest` must be writable.
 */
enum DcStatus dc_bl_trace(const struct DcBl *bl, size_t index, char **name, char **digest);

/**
 * Fixed elements of the version nucleus on the completion, as a JSON array
 * of element labels. Free with `dc_string_free`.
 *
 * # Safety
 * All handles must be live and built from the same repository; `out` must be writable.
 */
enum DcStatus dc_version_fixpoints(const struct DcRepo *repo,
                                   const struct DcRdp *rdp,
                                   const struct DcBl *bl,
                                   char **out);

/**
 * Solves a problem given as TOML text; writes the solution as JSON.
 * Free with `dc_string_free`.
 *
 * # Safety
 * All handles must be live and built from the same repository; `problem`
 * must be a NUL-terminated string; `out` must be writable.
 */
enum DcStatus dc_solve(const struct DcRepo *repo,
                       const struct DcRdp *rdp,
                       const struct DcBl *bl,
                       const char *problem,
                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DEPCHOICE_H */
