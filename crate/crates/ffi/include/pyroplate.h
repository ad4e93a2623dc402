/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef PYROPLATE_H
#define PYROPLATE_H

#include <stddef.h>
#include <stdint.h>

// Plate normal: `PP_THICKNESS1` (x1) or `PP_THICKNESS3` (poling axis).
#define PP_THICKNESS1 0

#define PP_THICKNESS3 1

// Lower-face electric condition: charge (`PP_VARIANT_I`) or potential (`PP_VARIANT_II`).
#define PP_VARIANT_I 0

#define PP_VARIANT_II 1

#define PP_TARGET_TEMPERATURE 0

#define PP_TARGET_POTENTIAL 1

// Control data, numbered as in the JSON names
// Tbar, phibar, tbar1..3, ubar1..3, qbar, Dbar, phibar2.
#define PP_TBAR 0

#define PP_PHIBAR 1

#define PP_TBAR1 2

#define PP_TBAR2 3

#define PP_TBAR3 4

#define PP_UBAR1 5

#define PP_UBAR2 6

#define PP_UBAR3 7

#define PP_QBAR 8

#define PP_DBAR 9

#define PP_PHIBAR2 10

// Result code of every `pp_*` call.
typedef enum PpStatus {
  PP_STATUS_OK = 0,
  PP_STATUS_NULL_POINTER = 1,
  PP_STATUS_INVALID_UTF8 = 2,
  PP_STATUS_SCHEMA = 3,
  PP_STATUS_INVALID_ENUM = 4,
  PP_STATUS_SYMMETRY_VIOLATION = 10,
  PP_STATUS_NON_PHYSICAL = 11,
  PP_STATUS_DEGENERATE_CROSS_FLUX = 12,
  PP_STATUS_DEGENERATE_COUPLING = 13,
  PP_STATUS_SINGULAR_DENOMINATOR = 14,
  PP_STATUS_NON_FINITE_DATA = 15,
  PP_STATUS_OUT_OF_DOMAIN = 16,
  PP_STATUS_UNCONTROLLABLE = 17,
  PP_STATUS_INVALID_FREE_DATUM = 18,
  PP_STATUS_UNSUPPORTED_TARGET = 19,
  PP_STATUS_SINGULAR_SYSTEM = 20,
  PP_STATUS_GRID_TOO_COARSE = 21,
  PP_STATUS_SPEC_MISMATCH = 22,
  PP_STATUS_OUT_OF_SCHEDULE = 23,
  PP_STATUS_INVALID_INPUT = 24,
  PP_STATUS_PANIC = 99,
} PpStatus;

// Material coefficients.
typedef struct PpMaterial PpMaterial;

// Material, orientation, variant, half-thickness and boundary data.
typedef struct PpProblem PpProblem;

// A solved problem.
typedef struct PpSolution PpSolution;

// Full state at one thickness coordinate. Stresses in Voigt order.
typedef struct PpState {
  double x;
  double temperature;
  double potential;
  double displacement[3];
  double stress[6];
  double electric_displacement[3];
  double heat_flux[3];
} PpState;

// Scalars of the thickness-direction system.
typedef struct PpReduced {
  double stiffness;
  double piezo;
  double piezo_prime;
  double thermal_stress;
  double pyro;
  double permittivity;
  double conductivity;
  double cross_conductivity;
  double potential_gain;
  double coupling;
  double stiffened_modulus;
  double rate;
  double mechanical_drive;
} PpReduced;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// Valid until the next `pp_*` call on the same thread.
const char *pp_last_error_message(void);

// Static name of a status code, e.g. `"DegenerateCoupling"`; `"Unknown"`
// for codes outside the enumeration.
const char *pp_status_name(int32_t code);

const char *pp_version(void);

// Parses and validates material JSON.
enum PpStatus pp_material_from_json(const char *json, struct PpMaterial **result);

// The built-in illustrative PZT-class material.
enum PpStatus pp_material_sample(struct PpMaterial **result);

void pp_material_free(struct PpMaterial *material);

// Builds a problem. `data` points to ten values in the order Tbar, phibar,
// tbar1..3, ubar1..3, qbar, and Dbar (variant I) or phibar2 (variant II).
enum PpStatus pp_problem_new(const struct PpMaterial *material,
                             int32_t orientation_code,
                             int32_t variant_code,
                             double h,
                             const double *data,
                             struct PpProblem **result);

// Builds a problem from problem-file JSON (orientation, variant, h, data).
enum PpStatus pp_problem_from_json(const struct PpMaterial *material,
                                   const char *json,
                                   struct PpProblem **result);

void pp_problem_free(struct PpProblem *problem);

enum PpStatus pp_solve(const struct PpProblem *problem, struct PpSolution **result);

void pp_solution_free(struct PpSolution *solution);

// State at x, -h ≤ x ≤ h.
enum PpStatus pp_solution_state(const struct PpSolution *solution, double x, struct PpState *state);

// Temperature and potential on the lower face x = -h.
enum PpStatus pp_solution_lower_face(const struct PpSolution *solution,
                                     double *temperature,
                                     double *potential);

enum PpStatus pp_solution_reduced(const struct PpSolution *solution, struct PpReduced *reduced);

// Coefficients of the solution in the global coordinate:
// T = T1 e^{ax} + T2, φ = K T1 e^{ax} + F1 x + F2 and
// u_j = g_j T1 e^{ax}/a + U1_j x + U2_j, written as
// [T1, T2, F1, F2, U1_1, U2_1, U1_2, U2_2, U1_3, U2_3] into ten doubles.
// Fails with NonFiniteData when e^{ah} overflows.
enum PpStatus pp_solution_coefficients(const struct PpSolution *solution, double *coefficients);

// d(target field at x)/d(free datum).
enum PpStatus pp_sensitivity(const struct PpProblem *problem,
                             int32_t free,
                             int32_t target_field,
                             double x,
                             double *slope);

// Value of the free datum that puts the target field at `value` at x.
// `solution` may be null; otherwise it receives the re-solved problem.
enum PpStatus pp_control_invert(const struct PpProblem *problem,
                                int32_t free,
                                int32_t target_field,
                                double x,
                                double value,
                                double *datum_value,
                                struct PpSolution **solution);

// Finite-difference check on n/2 and n intervals (n even). Writes the
// normalized max error on the fine grid and the observed order.
enum PpStatus pp_verify(const struct PpProblem *problem,
                        uintptr_t n,
                        double *max_error,
                        double *order);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PYROPLATE_H */
