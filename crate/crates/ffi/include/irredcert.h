#ifndef IRREDCERT_H
#define IRREDCERT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum IrcStatus {
  IRC_STATUS_OK = 0,
  IRC_STATUS_NULL_POINTER = 1,
  IRC_STATUS_INVALID_UTF8 = 2,
  IRC_STATUS_PARSE_ERROR = 3,
  IRC_STATUS_NOT_PRIME = 4,
  IRC_STATUS_INVALID_ARGUMENT = 5,
  IRC_STATUS_PANIC = 6,
  IRC_STATUS_CERTIFICATE_MISMATCH = 7,
} IrcStatus;

typedef enum IrcDiscoveryMode {
  IRC_DISCOVERY_MODE_ENDPOINTS = 0,
  IRC_DISCOVERY_MODE_ALL_COEFFS = 1,
} IrcDiscoveryMode;

typedef enum IrcVerdict {
  IRC_VERDICT_IRREDUCIBLE = 0,
  IRC_VERDICT_INCONCLUSIVE = 1,
} IrcVerdict;

typedef enum IrcRule {
  IRC_RULE_NONE = 0,
  IRC_RULE_LINEAR = 1,
  IRC_RULE_EISENSTEIN = 2,
  IRC_RULE_DUMAS_SINGLE_PRIME = 3,
  IRC_RULE_THEOREM_B = 4,
  IRC_RULE_THEOREM_A = 5,
} IrcRule;

typedef enum IrcFactorKind {
  IRC_FACTOR_KIND_FACTORED = 0,
  IRC_FACTOR_KIND_IRREDUCIBLE = 1,
  IRC_FACTOR_KIND_LIMIT_EXCEEDED = 3,
} IrcFactorKind;

/**
 * Result of a check, with its evidence.
 */
typedef struct IrcCertificate IrcCertificate;

/**
 * Parsed integer polynomial.
 */
typedef struct IrcPoly IrcPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next call on the same thread.
 */
const char *irc_last_error(void);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be freed twice.
 */
void irc_string_free(char *s);

/**
 * Parses `"a0,a1,..."` or an expression such as `"x^2+2x+2"`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum IrcStatus irc_poly_parse(const char *text, struct IrcPoly **out);

/**
 * Builds a polynomial from `len` coefficients, constant term first.
 *
 * # Safety
 * `coeffs` must point to `len` values (or be null with `len == 0`); `out`
 * must be writable.
 */
enum IrcStatus irc_poly_from_coeffs(const int64_t *coeffs, size_t len, struct IrcPoly **out);

/**
 * # Safety
 * `poly` must come from this library and not be freed twice.
 */
void irc_poly_free(struct IrcPoly *poly);

/**
 * Degree, or -1 for the zero polynomial or a null handle.
 *
 * # Safety
 * `poly` must be a live handle or null.
 */
int64_t irc_poly_degree(const struct IrcPoly *poly);

/**
 * Expression form such as `x^2+2x+2`; null for a null handle.
 *
 * # Safety
 * `poly` must be a live handle or null.
 */
char *irc_poly_to_string(const struct IrcPoly *poly);

/**
 * Coefficient list `a0,a1,...`; null for a null handle.
 *
 * # Safety
 * `poly` must be a live handle or null.
 */
char *irc_poly_to_coeff_list(const struct IrcPoly *poly);

/**
 * Checks `poly` with the given primes. When `discover` is true, or no
 * primes are given, primes up to `bound` dividing the scanned
 * coefficients are added.
 *
 * # Safety
 * `poly` must be a live handle, `primes` must point to `n_primes` values
 * (or be null with `n_primes == 0`), and `out` must be writable.
 */
enum IrcStatus irc_check(const struct IrcPoly *poly,
                         const uint64_t *primes,
                         size_t n_primes,
                         bool discover,
                         uint64_t bound,
                         enum IrcDiscoveryMode mode,
                         struct IrcCertificate **out);

/**
 * # Safety
 * `cert` must come from this library and not be freed twice.
 */
void irc_certificate_free(struct IrcCertificate *cert);

/**
 * Inconclusive for a null handle.
 *
 * # Safety
 * `cert` must be a live handle or null.
 */
enum IrcVerdict irc_certificate_verdict(const struct IrcCertificate *cert);

/**
 * # Safety
 * `cert` must be a live handle or null.
 */
enum IrcRule irc_certificate_rule(const struct IrcCertificate *cert);

/**
 * 0 for a null handle.
 *
 * # Safety
 * `cert` must be a live handle or null.
 */
size_t irc_certificate_factor_degree_multiple(const struct IrcCertificate *cert);

/**
 * Certificate as pretty-printed JSON; null for a null handle.
 *
 * # Safety
 * `cert` must be a live handle or null.
 */
char *irc_certificate_to_json(const struct IrcCertificate *cert);

/**
 * Parses certificate JSON and re-verifies it against its own polynomial.
 * Returns `Ok` when the certificate is internally consistent.
 *
 * # Safety
 * `json` must be a NUL-terminated string.
 */
enum IrcStatus irc_certificate_recheck(const char *json);

/**
 * Newton polygon of `poly` at `prime`, as JSON, into `*out`.
 *
 * # Safety
 * `poly` must be a live handle and `out` writable.
 */
enum IrcStatus irc_polygon_json(const struct IrcPoly *poly, uint64_t prime, char **out);

/**
 * Factors `poly` with the default limits. `*kind` receives the outcome
 * and `*text` a rendering such as `(x+2)(x^2+2x+2)`.
 *
 * # Safety
 * `poly` must be a live handle; `kind` and `text` must be writable.
 */
enum IrcStatus irc_factorize(const struct IrcPoly *poly, enum IrcFactorKind *kind, char **text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IRREDCERT_H */
