#ifndef KLEINIAN_H
#define KLEINIAN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KlStatus {
  KL_STATUS_OK = 0,
  KL_STATUS_NULL_POINTER = 1,
  KL_STATUS_INVALID_ARGUMENT = 2,
  KL_STATUS_DEGENERATE = 3,
  KL_STATUS_NOT_APPLICABLE = 4,
  KL_STATUS_INTERNAL = 5,
} KlStatus;

typedef enum KlFamily {
  KL_FAMILY_POWER_OF_F = 0,
  KL_FAMILY_CONJUGATE_POWER = 1,
  KL_FAMILY_PRODUCT_POWER = 2,
  KL_FAMILY_COMMUTATOR_POWER = 3,
} KlFamily;

// Opaque result of [`kl_battery_run`].
typedef struct KlBattery KlBattery;

// Opaque principal character `(γ, β(f), β(g))`.
typedef struct KlCharacter KlCharacter;

typedef struct KlComplex {
  double re;
  double im;
} KlComplex;

// Row-major `[[a, b], [c, d]]`.
typedef struct KlMatrix {
  struct KlComplex a;
  struct KlComplex b;
  struct KlComplex c;
  struct KlComplex d;
} KlMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty if none. The
// pointer stays valid until the next failing call on the same thread.
const char *kl_last_error(void);

// Creates a character handle. Components must be finite.
//
// # Safety
// `out` must be null or point to writable storage for one pointer.
enum KlStatus kl_character_new(struct KlComplex gamma,
                               struct KlComplex beta_f,
                               struct KlComplex beta_g,
                               struct KlCharacter **out);

// Reads back the three components.
//
// # Safety
// `ch` must be a live handle or null; each out pointer must be null or writable.
enum KlStatus kl_character_components(const struct KlCharacter *ch,
                                      struct KlComplex *gamma,
                                      struct KlComplex *beta_f,
                                      struct KlComplex *beta_g);

// # Safety
// `ch` must be null or a handle from this library not yet freed.
void kl_character_free(struct KlCharacter *ch);

// Runs the inequality battery to `depth`. `f_order` is the known order of
// `f`: positive for finite, `0` for infinite, negative for unknown.
//
// # Safety
// `ch` must be a live handle; `out` must be writable.
enum KlStatus kl_battery_run(const struct KlCharacter *ch,
                             size_t depth,
                             int32_t f_order,
                             bool g_order2,
                             struct KlBattery **out);

// Verdict code: `0` passes, `2` unconditional violation, `3` conditional
// violation, `4` degenerate; `-1` for a null handle.
//
// # Safety
// `b` must be null or a live handle.
int32_t kl_battery_verdict(const struct KlBattery *b);

// Number of individual inequality reports.
//
// # Safety
// `b` must be null or a live handle.
size_t kl_battery_report_count(const struct KlBattery *b);

// The full report as JSON. Free the string with [`kl_string_free`].
//
// # Safety
// `b` must be a live handle; `out` must be writable.
enum KlStatus kl_battery_json(const struct KlBattery *b, char **out);

// # Safety
// `b` must be null or a handle from this library not yet freed.
void kl_battery_free(struct KlBattery *b);

// # Safety
// `s` must be null or a string returned by this library not yet freed.
void kl_string_free(char *s);

// Explicit matrices with the handle's character, plus the largest deviation
// of their recomputed character.
//
// # Safety
// `ch` must be a live handle; the out pointers must be writable.
enum KlStatus kl_realize(const struct KlCharacter *ch,
                         struct KlMatrix *f,
                         struct KlMatrix *g,
                         double *residual);

// Character of the `n`th subgroup of `family`, as a new handle.
//
// # Safety
// `ch` must be a live handle; `out` must be writable.
enum KlStatus kl_subgroup_character(const struct KlCharacter *ch,
                                    enum KlFamily family,
                                    size_t n,
                                    struct KlCharacter **out);

// Number of printed trace identities that fail exact comparison (0 when
// everything matches).
size_t kl_verify_identities(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KLEINIAN_H */
