#ifndef UNARY_FORMS_H
#define UNARY_FORMS_H

/* Generated by cbindgen from unary-forms-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Call outcome; anything but OK leaves a message for [`uf_last_error`].
typedef enum UfStatus {
  // Success.
  UF_STATUS_OK = 0,
  // A pointer argument was null or an output slot was missing.
  UF_STATUS_INVALID_ARGUMENT = 1,
  // Input failed validation (bad field data, parameters out of range).
  UF_STATUS_VALIDATION_FAILED = 2,
  // The computation itself could not complete.
  UF_STATUS_COMPUTE_FAILED = 3,
  // A panic was caught at the boundary.
  UF_STATUS_PANIC = 4,
} UfStatus;

// Opaque field handle: validated field data plus its log-unit lattice
// (absent for unit-rank-0 fields).
typedef struct UfField UfField;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Last error message of this thread, or null; free with `uf_string_free`.
char *uf_last_error(void);

// Frees a string returned by this library.
//
// # Safety
// `s` must be null or a pointer previously returned by this library and
// not yet freed.
void uf_string_free(char *s);

// Loads and validates a JSON field file.
//
// # Safety
// `path` must be a valid nul-terminated string and `out` a valid slot.
enum UfStatus uf_field_load(const char *path, struct UfField **out);

// Parses and validates a field file held in a JSON string.
//
// # Safety
// `json` must be a valid nul-terminated string and `out` a valid slot.
enum UfStatus uf_field_from_json(const char *json, struct UfField **out);

// Releases a field handle.
//
// # Safety
// `field` must be null or a live handle; it must not be used afterwards.
void uf_field_free(struct UfField *field);

// Reads the signature (r, s) of a field handle.
//
// # Safety
// `field` must be a live handle; `r_out` and `s_out` must be valid slots.
enum UfStatus uf_field_signature(const struct UfField *field, size_t *r_out, size_t *s_out);

// Standard regulator of the field's log-unit lattice.
//
// # Safety
// `field` must be a live handle; `out` must be a valid slot.
enum UfStatus uf_regulator(const struct UfField *field, double *out);

// Pisot-unit search; the result is returned as a JSON document.
//
// # Safety
// `field` must be a live handle; `out_json` must be a valid slot.
enum UfStatus uf_pisot_search_json(const struct UfField *field, double epsilon, char **out_json);

// Runs the reduction loop on the r+s coordinates at `a` (length `a_len`).
// `exponents` may be null (then `exponents_len` must be 0) to reduce with
// the Pisot search result.  Returns the certificate as JSON.
//
// # Safety
// `field` must be a live handle; `a` must point to `a_len` doubles;
// `exponents`, when non-null, must point to `exponents_len` values;
// `out_json` must be a valid slot.
enum UfStatus uf_reduce_json(const struct UfField *field,
                             const double *a,
                             size_t a_len,
                             double delta,
                             const int64_t *exponents,
                             size_t exponents_len,
                             char **out_json);

// Reduction plus the exact integer minimum and both output inequalities,
// as JSON.
//
// # Safety
// As for [`uf_reduce_json`], without the exponent arguments.
enum UfStatus uf_verify_json(const struct UfField *field,
                             const double *a,
                             size_t a_len,
                             double delta,
                             char **out_json);

// Facet-candidate enumeration inside the log t_K cube, as JSON.
//
// # Safety
// `field` must be a live handle; `out_json` must be a valid slot.
enum UfStatus uf_enumerate_facets_json(const struct UfField *field, char **out_json);

// Facet-count bound; `abstract_exponent` selects the variant exponent.
//
// # Safety
// `out` must be a valid slot.
enum UfStatus uf_facet_bound(size_t r,
                             size_t s,
                             double regulator,
                             bool abstract_exponent,
                             double *out);

// Volume of the central trace-zero section of the side-length cube.
//
// # Safety
// `out` must be a valid slot.
enum UfStatus uf_cube_slice_volume(double side, uint32_t n, double *out);

// n! volume + n.
//
// # Safety
// `out` must be a valid slot.
enum UfStatus uf_blichfeldt_bound(double volume, uint32_t n, double *out);

// Height bound for the shortest Pisot unit.
//
// # Safety
// `out` must be a valid slot.
enum UfStatus uf_pisot_height_bound(size_t r,
                                    size_t s,
                                    double regulator,
                                    uint8_t gamma,
                                    double epsilon,
                                    double *out);

// Fundamental unit of Q(sqrt(d)) as JSON {d, p, q, denom, norm, regulator};
// p and q are decimal strings since they outgrow any fixed width.
//
// # Safety
// `out_json` must be a valid slot.
enum UfStatus uf_pell_json(uint64_t d, char **out_json);

// Writes the field file of Q(sqrt(d)) to `path`.
//
// # Safety
// `path` must be a valid nul-terminated string.
enum UfStatus uf_gen_quadratic(uint64_t d, const char *path);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNARY_FORMS_H */
