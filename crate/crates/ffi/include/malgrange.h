#ifndef MALGRANGE_H
#define MALGRANGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes.
 */
typedef enum MgStatus {
  MG_STATUS_OK = 0,
  /**
   * The call ran but a verification it performed failed.
   */
  MG_STATUS_VERIFICATION_FAILED = 1,
  MG_STATUS_PARSE_ERROR = 2,
  MG_STATUS_INVALID_ARGUMENT = 3,
  MG_STATUS_INTERNAL = 4,
} MgStatus;

/**
 * A finitely presented module.
 */
typedef struct MgModule MgModule;

/**
 * A parsed session file.
 */
typedef struct MgSession MgSession;

/**
 * A linear system of equations over the operator ring.
 */
typedef struct MgSystem MgSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the
 * next call into the library from the same thread.
 */
const char *mg_last_error(void);

/**
 * Releases a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void mg_string_free(char *s);

/**
 * Parses session text.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum MgStatus mg_session_parse(const char *text, struct MgSession **out);

/**
 * # Safety
 * `s` must be null or a handle from [`mg_session_parse`].
 */
void mg_session_free(struct MgSession *s);

/**
 * Runs a command (`analyze`, `torsion`, `defect`, `hom`, `verify`, `gb`)
 * against a session and stores its report in `out`. With no names the
 * session's own statements decide the targets. A null session is allowed
 * for `verify`, which then runs the built-in suite. The report is written
 * even when the status is `VerificationFailed`.
 *
 * # Safety
 * `names` must point to `nnames` NUL-terminated strings; `out` must be
 * writable.
 */
enum MgStatus mg_session_run(const struct MgSession *session,
                             const char *command,
                             const char *const *names,
                             size_t nnames,
                             bool json,
                             char **out);

/**
 * Looks up a name bound in the session. Systems yield their module.
 *
 * # Safety
 * `session` must be a live handle; `name` a NUL-terminated string; `out`
 * writable.
 */
enum MgStatus mg_session_module(const struct MgSession *session,
                                const char *name,
                                struct MgModule **out);

/**
 * Looks up a system bound in the session.
 *
 * # Safety
 * As for [`mg_session_module`].
 */
enum MgStatus mg_session_system(const struct MgSession *session,
                                const char *name,
                                struct MgSystem **out);

/**
 * # Safety
 * `m` must be null or a module handle from this library.
 */
void mg_module_free(struct MgModule *m);

/**
 * Number of generators in the presentation.
 *
 * # Safety
 * `m` must be a live handle; `out` writable.
 */
enum MgStatus mg_module_ngens(const struct MgModule *m, size_t *out);

/**
 * Dimension over Q. `finite` is set to false when it is infinite, and `out`
 * is then left untouched.
 *
 * # Safety
 * `m` must be a live handle; `out` and `finite` writable.
 */
enum MgStatus mg_module_qdim(const struct MgModule *m, uint64_t *out, bool *finite);

/**
 * Torsion submodule.
 *
 * # Safety
 * `m` must be a live handle; `out` writable.
 */
enum MgStatus mg_module_torsion(const struct MgModule *m, struct MgModule **out);

/**
 * Whether the module presents zero.
 *
 * # Safety
 * `m` must be a live handle; `out` writable.
 */
enum MgStatus mg_module_is_zero(const struct MgModule *m, bool *out);

/**
 * Text form of the presentation.
 *
 * # Safety
 * `m` must be a live handle; `out` writable.
 */
enum MgStatus mg_module_to_string(const struct MgModule *m, char **out);

/**
 * # Safety
 * `s` must be null or a system handle from this library.
 */
void mg_system_free(struct MgSystem *s);

/**
 * Whether the system has no autonomous quantities.
 *
 * # Safety
 * `s` must be a live handle; `out` writable.
 */
enum MgStatus mg_system_is_controllable(const struct MgSystem *s, bool *out);

/**
 * Autonomy report as text. Returns `VerificationFailed` if the internal
 * defect check disagrees; the report is still written.
 *
 * # Safety
 * `s` must be a live handle; `out` writable.
 */
enum MgStatus mg_system_report(const struct MgSystem *s, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MALGRANGE_H */
