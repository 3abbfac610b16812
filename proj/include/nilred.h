/* nilred - exact classifier for 2-step nilpotent metric Lie algebras.
 *
 * C interface of the shared library. All functions are thread-compatible:
 * distinct sessions may be used concurrently, a single session must not be
 * shared between threads without external synchronization.
 */
#ifndef NILRED_H
#define NILRED_H

#include <stddef.h>

#ifndef NILRED_API
#define NILRED_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum nilred_status {
  NILRED_OK = 0,
  NILRED_ERR_PARSE = 1,      /* syntax error in an algebra spec */
  NILRED_ERR_VALIDATION = 2, /* bad dimensions, non-skew matrices, parameters */
  NILRED_ERR_INTERNAL = 3    /* everything else */
} nilred_status;

typedef enum nilred_mode { NILRED_MODE_EXACT = 0, NILRED_MODE_FLOAT = 1 } nilred_mode;

typedef enum nilred_format { NILRED_FORMAT_TEXT = 0, NILRED_FORMAT_JSON = 1 } nilred_format;

/* Analysis options plus the last error message. */
typedef struct nilred_session nilred_session;

/* An immutable parsed algebra. */
typedef struct nilred_algebra nilred_algebra;

NILRED_API const char* nilred_version(void);

NILRED_API nilred_session* nilred_session_new(void);
NILRED_API void nilred_session_free(nilred_session* session);

NILRED_API nilred_status nilred_session_set_mode(nilred_session* session, nilred_mode mode);
/* Zero threshold for float mode; default 1e-9. Must be positive. */
NILRED_API nilred_status nilred_session_set_tolerance(nilred_session* session, double tol);
/* When nonzero, classify reports also classify the reduced core of algebras
 * that split off a Euclidean factor. */
NILRED_API nilred_status nilred_session_set_classify_core(nilred_session* session, int enable);

/* Message of the most recent failure on this session; empty string if none.
 * Owned by the session, valid until the next call using the session. */
NILRED_API const char* nilred_session_last_error(const nilred_session* session);

/* Parses every `algebra <name> { ... }` block in `text`. On success writes
 * a malloc'd handle array to *out_algebras and its length to *out_count.
 * Free each handle with nilred_algebra_free and the array with
 * nilred_array_free. */
NILRED_API nilred_status nilred_parse(nilred_session* session, const char* text,
                           nilred_algebra*** out_algebras, size_t* out_count);

NILRED_API void nilred_algebra_free(nilred_algebra* algebra);
NILRED_API void nilred_array_free(nilred_algebra** algebras);

NILRED_API const char* nilred_algebra_name(const nilred_algebra* algebra);
NILRED_API size_t nilred_algebra_dim_v(const nilred_algebra* algebra);
NILRED_API size_t nilred_algebra_dim_z(const nilred_algebra* algebra);

/* Report builders. On success *out receives a NUL-terminated string to be
 * released with nilred_string_free. */
NILRED_API nilred_status nilred_classify(nilred_session* session, const nilred_algebra* algebra,
                              nilred_format format, char** out);
NILRED_API nilred_status nilred_compare(nilred_session* session, const nilred_algebra* left,
                             const nilred_algebra* right, nilred_format format,
                             char** out);
NILRED_API nilred_status nilred_export(nilred_session* session, const nilred_algebra* algebra,
                            nilred_format format, char** out);

/* Same reports over several algebras, emitted as one document. */
NILRED_API nilred_status nilred_classify_many(nilred_session* session,
                                   const nilred_algebra* const* algebras, size_t count,
                                   nilred_format format, char** out);
NILRED_API nilred_status nilred_export_many(nilred_session* session,
                                 const nilred_algebra* const* algebras, size_t count,
                                 nilred_format format, char** out);

/* Runs the built-in verification suite. Returns NILRED_OK when every
 * criterion passes, NILRED_ERR_INTERNAL when the suite ran but failed;
 * *out receives the report either way. */
NILRED_API nilred_status nilred_selftest(nilred_session* session, nilred_format format, char** out);

NILRED_API void nilred_string_free(char* str);

#ifdef __cplusplus
}
#endif

#endif /* NILRED_H */
